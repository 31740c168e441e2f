//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! Values of a Laurent polynomial with rational coefficients at a torus point
//! with rational coordinates live in `Q(zeta_M)`, where `M` is the common
//! denominator. Elements are held in the group ring `Q[Z/M]` (exponents added
//! mod `M`) and only brought to canonical form when compared; the reduction
//! `Q[Z/M] -> Q(zeta_M)` is a ring map, so products and sums may be formed
//! before reducing.
//!
//! Canonical form: `Q(zeta_M)` is the tensor product of `Q(zeta_q)` over the
//! prime powers `q = p^e` dividing `M`. In each factor the basis is
//! `zeta_q^x` with top base-`p` digit of `x` below `p - 1`, and
//! `zeta_q^{(p-1)p^{e-1} + r} = -sum_{c<p-1} zeta_q^{c p^{e-1} + r}`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Nonzero `(exponent, numerator)` pairs, strictly increasing in exponent.
type Terms = Vec<(u64, i128)>;

/// Largest order accumulated in a dense array.
const DENSE_MAX_ORDER: u64 = 1 << 21;

/// Sums coefficients by exponent, densely when the order is small enough and
/// the number of contributions is comparable to it.
enum Accumulator {
    Dense(Vec<i128>),
    Sparse(HashMap<u64, i128>),
}

impl Accumulator {
    fn new(order: u64, hint: usize) -> Self {
        if order <= DENSE_MAX_ORDER && hint as u64 >= order / 16 {
            Accumulator::Dense(vec![0; order as usize])
        } else {
            Accumulator::Sparse(HashMap::with_capacity(hint.min(1 << 20)))
        }
    }

    fn add(&mut self, e: u64, c: i128) -> Result<()> {
        let slot = match self {
            Accumulator::Dense(v) => &mut v[e as usize],
            Accumulator::Sparse(m) => m.entry(e).or_insert(0),
        };
        *slot = checked(slot.checked_add(c))?;
        Ok(())
    }

    fn finish(self) -> Terms {
        match self {
            Accumulator::Dense(v) => v
                .into_iter()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .map(|(e, c)| (e as u64, c))
                .collect(),
            Accumulator::Sparse(m) => {
                let mut v: Terms = m.into_iter().filter(|&(_, c)| c != 0).collect();
                v.sort_unstable();
                v
            }
        }
    }
}

/// An element of `Q(zeta_order)`, stored as `(1/den) * sum_x num[x] zeta^x`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u64,
    den: i128,
    terms: Terms,
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::ExactOverflow)
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

fn big_to_i128(x: &BigInt) -> Result<i128> {
    x.to_i128().ok_or(Error::ExactOverflow)
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            order: 1,
            den: 1,
            terms: Terms::new(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(n: i128) -> Self {
        Cyclotomic {
            order: 1,
            den: 1,
            terms: if n == 0 { Terms::new() } else { vec![(0, n)] },
        }
    }

    pub fn rational(q: &BigRational) -> Result<Self> {
        let mut out = Self::integer(big_to_i128(q.numer())?);
        out.den = big_to_i128(q.denom())?;
        out.normalize_sign();
        Ok(out)
    }

    /// `zeta_order^exponent`.
    pub fn root(order: u64, exponent: i64) -> Self {
        let order = order.max(1);
        Cyclotomic {
            order,
            den: 1,
            terms: vec![(exponent.rem_euclid(order as i64) as u64, 1)],
        }
    }

    /// `re + i im` with `i = zeta_4`.
    pub fn gaussian(re: &BigRational, im: &BigRational) -> Result<Self> {
        let real = Self::rational(re)?;
        if im.is_zero() {
            return Ok(real);
        }
        let imag = Self::rational(im)?.mul(&Self::root(4, 1))?;
        real.add(&imag)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn denominator(&self) -> i128 {
        self.den
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms `(exponent, numerator)` sorted by exponent.
    pub fn sorted_terms(&self) -> Vec<(u64, i128)> {
        self.terms.clone()
    }

    fn normalize_sign(&mut self) {
        if self.den < 0 {
            self.den = -self.den;
            for (_, c) in self.terms.iter_mut() {
                *c = -*c;
            }
        }
    }

    /// Re-express over `zeta_{new_order}`; `new_order` must be a multiple.
    pub fn lift(&self, new_order: u64) -> Self {
        debug_assert_eq!(new_order % self.order, 0);
        if new_order == self.order {
            return self.clone();
        }
        let step = new_order / self.order;
        Cyclotomic {
            order: new_order,
            den: self.den,
            terms: self.terms.iter().map(|&(e, c)| (e * step, c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let order = lcm_u64(self.order, other.order);
        let a = self.lift(order);
        let b = other.lift(order);
        let g = a.den.gcd(&b.den);
        let den = checked((a.den / g).checked_mul(b.den))?;
        let fa = den / a.den;
        let fb = den / b.den;
        let mut terms = Terms::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() || j < b.terms.len() {
            let next = match (a.terms.get(i), b.terms.get(j)) {
                (Some(&(ea, ca)), Some(&(eb, cb))) => match ea.cmp(&eb) {
                    Ordering::Less => {
                        i += 1;
                        (ea, checked(ca.checked_mul(fa))?)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (eb, checked(cb.checked_mul(fb))?)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (ea, checked(checked(ca.checked_mul(fa))?.checked_add(checked(cb.checked_mul(fb))?))?)
                    }
                },
                (Some(&(ea, ca)), None) => {
                    i += 1;
                    (ea, checked(ca.checked_mul(fa))?)
                }
                (None, Some(&(eb, cb))) => {
                    j += 1;
                    (eb, checked(cb.checked_mul(fb))?)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                terms.push(next);
            }
        }
        Ok(Cyclotomic { order, den, terms })
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for (_, c) in out.terms.iter_mut() {
            *c = -*c;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let order = lcm_u64(self.order, other.order);
        let a = self.lift(order);
        let b = other.lift(order);
        let den = checked(a.den.checked_mul(b.den))?;
        let mut acc = Accumulator::new(order, a.terms.len() * b.terms.len());
        for &(ea, ca) in &a.terms {
            for &(eb, cb) in &b.terms {
                acc.add((ea + eb) % order, checked(ca.checked_mul(cb))?)?;
            }
        }
        let mut out = Cyclotomic {
            order,
            den,
            terms: acc.finish(),
        };
        out.compact();
        Ok(out)
    }

    pub fn scale(&self, num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        let mut out = self.clone();
        out.den = checked(out.den.checked_mul(den))?;
        for (_, c) in out.terms.iter_mut() {
            *c = checked(c.checked_mul(num))?;
        }
        out.terms.retain(|&(_, c)| c != 0);
        out.normalize_sign();
        out.compact();
        Ok(out)
    }

    /// Divide numerators and denominator by their common gcd.
    fn compact(&mut self) {
        let mut g = self.den.unsigned_abs();
        for (_, c) in &self.terms {
            if g == 1 {
                return;
            }
            g = g.gcd(&c.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            self.den /= g;
            for (_, c) in self.terms.iter_mut() {
                *c /= g;
            }
        }
    }

    /// Canonical representative over the power basis of each prime-power factor.
    pub fn reduce(&self) -> Result<Self> {
        let basis = CanonicalBasis::new(self.order);
        let mut acc = Accumulator::new(self.order, self.terms.len());
        let mut scratch = Vec::new();
        for &(e, c) in &self.terms {
            basis.expand(e, &mut scratch);
            for &(x, sign) in &scratch {
                acc.add(x, if sign { c } else { checked(c.checked_neg())? })?;
            }
        }
        let mut out = Cyclotomic {
            order: self.order,
            den: self.den,
            terms: acc.finish(),
        };
        out.compact();
        Ok(out)
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.reduce()?.terms.is_empty())
    }

    pub fn exact_eq(&self, other: &Self) -> Result<bool> {
        self.sub(other)?.is_zero()
    }

    /// The value as a rational, when it is one.
    pub fn to_rational(&self) -> Result<Option<BigRational>> {
        let r = self.reduce()?;
        match r.terms.as_slice() {
            [] => Ok(Some(BigRational::zero())),
            [(0, num)] => Ok(Some(BigRational::new(BigInt::from(*num), BigInt::from(r.den)))),
            _ => Ok(None),
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        let m = self.order as f64;
        for &(e, c) in &self.terms {
            let angle = std::f64::consts::TAU * (e as f64) / m;
            acc += Complex64::from_polar(c as f64, angle);
        }
        acc / self.den as f64
    }
}

/// Prime-power decomposition of `M` with CRT idempotents.
struct CanonicalBasis {
    order: u64,
    factors: Vec<PrimePowerFactor>,
}

struct PrimePowerFactor {
    p: u64,
    q: u64,
    idempotent: u64,
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(m as i128));
    e.x.rem_euclid(m as i128) as u64
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl CanonicalBasis {
    fn new(order: u64) -> Self {
        let factors = factorize(order)
            .into_iter()
            .map(|(p, e)| {
                let q = p.pow(e);
                let rest = order / q;
                let idempotent = if rest == 1 {
                    1 % order
                } else {
                    mulmod(rest, mod_inverse(rest % q, q), order)
                };
                PrimePowerFactor { p, q, idempotent }
            })
            .collect();
        CanonicalBasis { order, factors }
    }

    /// Write `zeta^x` in the canonical basis as a signed sum of basis exponents.
    fn expand(&self, x: u64, out: &mut Vec<(u64, bool)>) {
        out.clear();
        out.push((0, true));
        if self.order == 1 {
            return;
        }
        for f in &self.factors {
            let step = f.q / f.p;
            let xi = x % f.q;
            if xi / step == f.p - 1 {
                let r = xi % step;
                let n = out.len();
                for c in (0..f.p - 1).rev() {
                    let add = mulmod(c * step + r, f.idempotent, self.order);
                    for k in 0..n {
                        let (e, sign) = out[k];
                        let item = ((e + add) % self.order, !sign);
                        if c == 0 {
                            out[k] = item;
                        } else {
                            out.push(item);
                        }
                    }
                }
            } else {
                let add = mulmod(xi, f.idempotent, self.order);
                for item in out.iter_mut() {
                    item.0 = (item.0 + add) % self.order;
                }
            }
        }
    }
}
