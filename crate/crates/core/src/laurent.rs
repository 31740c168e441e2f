//! Multivariate Laurent polynomials with exact Gaussian-rational coefficients.
//!
//! Used as the exact oracle for `|m|^2`, products `prod_j |m(beta^j z)|^2`,
//! and torus integrals (the integral of `z^v` over `T^d` is `[v = 0]`).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::cyclotomic::Cyclotomic;
use crate::dilation::rational_to_f64;
use crate::error::{Error, Result};

/// An exact complex rational `re + i im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        GaussRat {
            re: &self.re * q,
            im: &self.im * q,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Float modulus.
    pub fn modulus(&self) -> f64 {
        self.to_complex().norm()
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

pub type Exponent = Vec<i64>;

/// Default cap on the number of terms in any product.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;

/// Term cap, overridable through `SOLENOIDAL_TERM_CAP`.
pub fn term_cap() -> usize {
    std::env::var("SOLENOIDAL_TERM_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_TERM_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<Exponent, GaussRat>,
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: GaussRat) -> Self {
        Self::monomial(vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, GaussRat::one())
    }

    pub fn monomial(exp: Exponent, c: GaussRat) -> Self {
        let mut p = LaurentPoly::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, GaussRat)>) -> Result<Self> {
        let mut p = LaurentPoly::zero(dim);
        for (e, c) in terms {
            if e.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: e.len(),
                });
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponent, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(GaussRat::zero);
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i64]) -> GaussRat {
        self.terms.get(e).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Integral over the torus against Haar measure.
    pub fn constant_term(&self) -> GaussRat {
        self.coefficient(&vec![0; self.dim])
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), &GaussRat::zero().sub(c));
        }
        out
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = LaurentPoly::zero(self.dim);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &v.mul(c));
        }
        out
    }

    /// Product, failing once the result would exceed `cap` terms.
    pub fn mul_capped(&self, o: &Self, cap: usize) -> Result<Self> {
        let bound = self.terms.len().saturating_mul(o.terms.len());
        let mut acc: BTreeMap<Exponent, GaussRat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let slot = acc.entry(e).or_insert_with(GaussRat::zero);
                *slot = slot.add(&ca.mul(cb));
            }
            if acc.len() > cap {
                return Err(Error::TermCap { cap, needed: bound.max(acc.len()) });
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly {
            dim: self.dim,
            terms: acc,
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.mul_capped(o, term_cap())
    }

    /// `p(z_1^{k_1}, ..., z_d^{k_d})`: exponents scaled coordinatewise.
    pub fn dilate(&self, factors: &[i64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(factors).map(|(a, k)| a * k).collect(), c.clone()))
            .collect();
        LaurentPoly {
            dim: self.dim,
            terms,
        }
    }

    /// `conj(p(z))` on the torus: conjugated coefficients, negated exponents.
    pub fn conj_reflect(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().map(|a| -a).collect(), c.conj()))
            .collect();
        LaurentPoly {
            dim: self.dim,
            terms,
        }
    }

    /// Largest absolute exponent in any coordinate.
    pub fn max_abs_exponent(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().map(|a| a.abs()))
            .max()
            .unwrap_or(0)
    }

    /// Value at `z = e(t)`.
    pub fn eval(&self, t: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                let phase: f64 = e.iter().zip(t).map(|(&a, &x)| a as f64 * x).sum();
                c.to_complex() * Complex64::from_polar(1.0, std::f64::consts::TAU * frac_phase(phase))
            })
            .sum()
    }

    /// Exact value at `z = e(t)` for rational `t`, in `Q(zeta_M)`.
    pub fn eval_exact(&self, t: &[BigRational]) -> Result<Cyclotomic> {
        let mut order = BigInt::one();
        for x in t {
            order = order.lcm(x.denom());
        }
        let order_u = num_traits::ToPrimitive::to_u64(&order).ok_or(Error::ExactOverflow)?;
        let scaled: Vec<BigInt> = t.iter().map(|x| (x * BigRational::from_integer(order.clone())).to_integer()).collect();
        let mut acc = Cyclotomic::zero();
        for (e, c) in &self.terms {
            let mut exp = BigInt::zero();
            for (a, s) in e.iter().zip(&scaled) {
                exp += BigInt::from(*a) * s;
            }
            let exp = num_traits::ToPrimitive::to_i64(&exp.mod_floor(&order)).ok_or(Error::ExactOverflow)?;
            let term = Cyclotomic::gaussian(&c.re, &c.im)?.mul(&Cyclotomic::root(order_u, exp))?;
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

fn frac_phase(x: f64) -> f64 {
    x - x.floor()
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c}) z^{e:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::ratio;

    fn haar_sq() -> LaurentPoly {
        // |(1+z)/sqrt 2|^2 = 1 + (z + 1/z)/2
        LaurentPoly::from_terms(
            1,
            [
                (vec![-1], GaussRat::real(ratio(1, 2))),
                (vec![0], GaussRat::one()),
                (vec![1], GaussRat::real(ratio(1, 2))),
            ],
        )
        .unwrap()
    }

    #[test]
    fn dilation_scales_exponents() {
        let p = haar_sq().dilate(&[4]);
        assert_eq!(p.coefficient(&[4]), GaussRat::real(ratio(1, 2)));
        assert_eq!(p.coefficient(&[1]), GaussRat::zero());
    }

    #[test]
    fn product_constant_term() {
        // integral of |m(z)|^2 |m(z^2)|^2 = 1 for a QMF
        let p = haar_sq().mul(&haar_sq().dilate(&[2])).unwrap();
        assert_eq!(p.constant_term(), GaussRat::one());
        let shifted = p.mul(&LaurentPoly::monomial(vec![1], GaussRat::one())).unwrap();
        assert_eq!(shifted.constant_term(), GaussRat::real(ratio(3, 4)));
    }

    #[test]
    fn term_cap_is_enforced() {
        let p = haar_sq().mul(&haar_sq().dilate(&[3])).unwrap();
        assert!(matches!(p.mul_capped(&p, 4), Err(Error::TermCap { .. })));
    }

    #[test]
    fn exact_and_float_evaluation_agree() {
        let p = haar_sq().mul(&haar_sq().dilate(&[3])).unwrap();
        for (a, b) in [(1, 7), (2, 9), (5, 12)] {
            let exact = p.eval_exact(&[ratio(a, b)]).unwrap().to_complex();
            let float = p.eval(&[a as f64 / b as f64]);
            assert!((exact - float).norm() < 1e-12);
        }
        // value at t = 1/2 is exactly zero
        let v = haar_sq().eval_exact(&[ratio(1, 2)]).unwrap();
        assert!(v.is_zero().unwrap());
    }
}
