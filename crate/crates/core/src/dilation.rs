//! Diagonal dilations `A = diag(N_1, ..., N_d)`, their digit alphabets, and
//! the odometer group of A-adic digit sequences.
//!
//! Points of the odometer are [`DigitWord`]s: a finite prefix optionally
//! followed by a repeating period. A word without a period is read as having
//! an all-zero tail. Negative integers embed with an all-`(N_i - 1)` tail.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The diagonal dilation matrix, stored by its diagonal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DilationSpec {
    diag: Vec<u32>,
}

impl TryFrom<Vec<u32>> for DilationSpec {
    type Error = Error;
    fn try_from(diag: Vec<u32>) -> Result<Self> {
        DilationSpec::new(diag)
    }
}

impl From<DilationSpec> for Vec<u32> {
    fn from(spec: DilationSpec) -> Self {
        spec.diag
    }
}

/// One letter of the product alphabet `{0..N_1-1} x ... x {0..N_d-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Digit(pub Vec<u32>);

impl Digit {
    pub fn zero(dim: usize) -> Self {
        Digit(vec![0; dim])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

impl DilationSpec {
    pub fn new(diag: Vec<u32>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidDilation("dimension must be positive".into()));
        }
        if let Some(n) = diag.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidDilation(format!(
                "diagonal entries must be at least 2, got {n}"
            )));
        }
        Ok(DilationSpec { diag })
    }

    /// One-dimensional dilation by `n`.
    pub fn scalar(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[u32] {
        &self.diag
    }

    /// `N = det A`.
    pub fn det(&self) -> u64 {
        self.diag.iter().map(|&n| n as u64).product()
    }

    pub fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found,
            });
        }
        Ok(())
    }

    pub fn check_digit(&self, digit: &Digit) -> Result<()> {
        self.check_dim(digit.0.len())?;
        if digit.0.iter().zip(&self.diag).any(|(&a, &n)| a >= n) {
            return Err(Error::InvalidDigit {
                digit: digit.0.clone(),
                diag: self.diag.clone(),
            });
        }
        Ok(())
    }

    /// All `N` digits in lexicographic order.
    pub fn alphabet(&self) -> Vec<Digit> {
        let mut out = vec![Digit(Vec::with_capacity(self.dim()))];
        for &n in &self.diag {
            out = out
                .into_iter()
                .flat_map(|d| {
                    (0..n).map(move |a| {
                        let mut next = d.0.clone();
                        next.push(a);
                        Digit(next)
                    })
                })
                .collect();
        }
        out
    }

    /// The digit whose half-open cell `prod [k_i/N_i, (k_i+1)/N_i)` contains `t`.
    pub fn s_of_t(&self, t: &TorusPoint) -> Digit {
        let digits = match t.coords() {
            Coords::Exact(xs) => xs
                .iter()
                .zip(&self.diag)
                .map(|(x, &n)| {
                    let scaled = x * BigRational::from_integer(BigInt::from(n));
                    scaled.floor().to_integer().to_u32().unwrap_or(0).min(n - 1)
                })
                .collect(),
            Coords::Float(xs) => xs
                .iter()
                .zip(&self.diag)
                .map(|(x, &n)| ((x * n as f64).floor() as u32).min(n - 1))
                .collect(),
        };
        Digit(digits)
    }

    /// `sum_j A^j a_j` for a word without a nonzero periodic tail.
    pub fn word_to_integer(&self, word: &DigitWord) -> Result<Vec<BigInt>> {
        self.check_dim(word.dim())?;
        if word.has_nonzero_tail() {
            return Err(Error::PeriodicWord);
        }
        let mut acc = vec![BigInt::zero(); self.dim()];
        for (i, (&n, slot)) in self.diag.iter().zip(acc.iter_mut()).enumerate() {
            let mut place = BigInt::one();
            for digit in word.prefix() {
                *slot += &place * BigInt::from(digit.0[i]);
                place *= n;
            }
        }
        Ok(acc)
    }

    /// The A-adic word of an integer vector. Nonnegative coordinates get the
    /// ordinary expansion with a zero tail; negative coordinates get the
    /// complement expansion `N_i^depth + k_i` with an `N_i - 1` tail.
    pub fn integer_to_word(&self, k: &[i64], depth: usize) -> Result<DigitWord> {
        self.check_dim(k.len())?;
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(self.dim());
        let mut tail = Vec::with_capacity(self.dim());
        for (&ki, &n) in k.iter().zip(&self.diag) {
            let modulus = BigInt::from(n).pow(depth as u32);
            let mag = BigInt::from(ki).abs();
            let fits = if ki >= 0 { mag < modulus } else { mag <= modulus };
            if !fits {
                return Err(Error::InsufficientDepth { value: ki, depth });
            }
            let mut rest = if ki >= 0 {
                BigInt::from(ki)
            } else {
                &modulus + BigInt::from(ki)
            };
            let base = BigInt::from(n);
            let mut col = Vec::with_capacity(depth);
            for _ in 0..depth {
                let digit = (&rest % &base).to_u32().expect("digit below base");
                col.push(digit);
                rest /= &base;
            }
            columns.push(col);
            tail.push(if ki >= 0 { 0 } else { n - 1 });
        }
        let prefix = (0..depth)
            .map(|j| Digit(columns.iter().map(|c| c[j]).collect()))
            .collect();
        DigitWord::new(self, prefix, Some(vec![Digit(tail)]))
    }

    /// Odometer addition of the integer vector `v`, carrying to the right.
    /// Carries that run into a periodic tail are resolved exactly.
    pub fn odometer_add(&self, word: &DigitWord, v: &[i64]) -> Result<DigitWord> {
        self.check_dim(word.dim())?;
        self.check_dim(v.len())?;
        let dim = self.dim();
        let plen = word.period_len();
        let start = word.prefix().len();
        let mut carry: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut out: Vec<Digit> = Vec::new();
        let mut boundary_carry: Option<Vec<i128>> = None;
        let mut boundary_pos = 0usize;
        let mut j = 0usize;
        loop {
            if j >= start && (j - start) % plen == 0 {
                let small = carry.iter().all(|c| c.abs() <= 1);
                if small {
                    if carry.iter().all(|c| *c == 0) {
                        // Nothing left to carry: the rest of the word is unchanged.
                        let mut prefix = out;
                        let rest = word.prefix().get(j..).unwrap_or(&[]).to_vec();
                        prefix.extend(rest);
                        let period = word.period().map(|p| {
                            let shift = (j.saturating_sub(start)) % plen;
                            rotate(p, shift)
                        });
                        return DigitWord::new(self, prefix, period);
                    }
                    if boundary_carry.as_ref() == Some(&carry) {
                        let prefix = out[..boundary_pos].to_vec();
                        let period = out[boundary_pos..].to_vec();
                        return DigitWord::new(self, prefix, Some(period));
                    }
                    boundary_carry = Some(carry.clone());
                    boundary_pos = out.len();
                }
            }
            let mut digit = Vec::with_capacity(dim);
            for i in 0..dim {
                let n = self.diag[i] as i128;
                let total = word.digit_coord(j, i) as i128 + carry[i];
                digit.push(total.rem_euclid(n) as u32);
                carry[i] = total.div_euclid(n);
            }
            out.push(Digit(digit));
            j += 1;
        }
    }
}

fn rotate(period: &[Digit], shift: usize) -> Vec<Digit> {
    let mut p = period.to_vec();
    p.rotate_left(shift % period.len().max(1));
    p
}

/// A point of the odometer group: finite prefix plus optional repeating tail.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitWord {
    dim: usize,
    prefix: Vec<Digit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<Vec<Digit>>,
}

impl DigitWord {
    pub fn new(spec: &DilationSpec, prefix: Vec<Digit>, period: Option<Vec<Digit>>) -> Result<Self> {
        for d in prefix.iter().chain(period.iter().flatten()) {
            spec.check_digit(d)?;
        }
        if matches!(&period, Some(p) if p.is_empty()) {
            return Err(Error::InvalidArgument("period must be nonempty".into()));
        }
        Ok(DigitWord {
            dim: spec.dim(),
            prefix,
            period,
        })
    }

    pub fn finite(spec: &DilationSpec, prefix: Vec<Digit>) -> Result<Self> {
        Self::new(spec, prefix, None)
    }

    /// Convenience for `d = 1`: digits given as plain integers.
    pub fn from_scalars(spec: &DilationSpec, prefix: &[u32], period: Option<&[u32]>) -> Result<Self> {
        let wrap = |xs: &[u32]| xs.iter().map(|&a| Digit(vec![a])).collect::<Vec<_>>();
        Self::new(spec, wrap(prefix), period.map(wrap))
    }

    pub fn empty(spec: &DilationSpec) -> Self {
        DigitWord {
            dim: spec.dim(),
            prefix: Vec::new(),
            period: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prefix(&self) -> &[Digit] {
        &self.prefix
    }

    pub fn period(&self) -> Option<&[Digit]> {
        self.period.as_deref()
    }

    pub fn depth(&self) -> usize {
        self.prefix.len()
    }

    /// Length of the repeating tail, counting the implicit zero tail as 1.
    pub fn period_len(&self) -> usize {
        self.period.as_ref().map_or(1, |p| p.len())
    }

    pub fn has_nonzero_tail(&self) -> bool {
        self.period
            .as_ref()
            .is_some_and(|p| p.iter().any(|d| d.0.iter().any(|&a| a != 0)))
    }

    /// Coordinate `i` of digit `j` of the infinite word.
    pub fn digit_coord(&self, j: usize, i: usize) -> u32 {
        if j < self.prefix.len() {
            return self.prefix[j].0[i];
        }
        match &self.period {
            Some(p) => p[(j - self.prefix.len()) % p.len()].0[i],
            None => 0,
        }
    }

    pub fn digit(&self, j: usize) -> Digit {
        Digit((0..self.dim).map(|i| self.digit_coord(j, i)).collect())
    }

    /// The first `depth` digits as a finite word.
    pub fn truncate(&self, depth: usize) -> DigitWord {
        DigitWord {
            dim: self.dim,
            prefix: (0..depth).map(|j| self.digit(j)).collect(),
            period: None,
        }
    }

    /// `a_0 a_1 ...` becomes `a_1 a_2 ...`.
    pub fn shift_left(&self) -> Result<DigitWord> {
        if !self.prefix.is_empty() {
            return Ok(DigitWord {
                dim: self.dim,
                prefix: self.prefix[1..].to_vec(),
                period: self.period.clone(),
            });
        }
        match &self.period {
            Some(p) => Ok(DigitWord {
                dim: self.dim,
                prefix: Vec::new(),
                period: Some(rotate(p, 1)),
            }),
            None => Err(Error::EmptyWord),
        }
    }

    pub fn prepend(&self, digit: Digit) -> DigitWord {
        let mut prefix = Vec::with_capacity(self.prefix.len() + 1);
        prefix.push(digit);
        prefix.extend(self.prefix.iter().cloned());
        DigitWord {
            dim: self.dim,
            prefix,
            period: self.period.clone(),
        }
    }

    /// Equality as points of the odometer, ignoring how the tail is written.
    pub fn same_point(&self, other: &DigitWord) -> bool {
        if self.dim != other.dim {
            return false;
        }
        let n = self.prefix.len().max(other.prefix.len()) + lcm(self.period_len(), other.period_len());
        (0..n).all(|j| (0..self.dim).all(|i| self.digit_coord(j, i) == other.digit_coord(j, i)))
    }

    /// Whether the first `depth` digits agree.
    pub fn agrees_to(&self, other: &DigitWord, depth: usize) -> bool {
        (0..depth).all(|j| (0..self.dim).all(|i| self.digit_coord(j, i) == other.digit_coord(j, i)))
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.prefix.iter().map(|d| d.to_string()).collect();
        write!(f, "({}", parts.join(","))?;
        if let Some(p) = &self.period {
            let parts: Vec<String> = p.iter().map(|d| d.to_string()).collect();
            write!(f, "; period {}", parts.join(","))?;
        }
        write!(f, ")")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A vector of reals, either exact rationals or floats.
#[derive(Clone, Debug, PartialEq)]
pub enum Coords {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl Coords {
    pub fn len(&self) -> usize {
        match self {
            Coords::Exact(xs) => xs.len(),
            Coords::Float(xs) => xs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Coords::Exact(_))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            Coords::Exact(xs) => xs.iter().map(rational_to_f64).collect(),
            Coords::Float(xs) => xs.clone(),
        }
    }

    pub fn exact(&self) -> Option<&[BigRational]> {
        match self {
            Coords::Exact(xs) => Some(xs),
            Coords::Float(_) => None,
        }
    }
}

/// A point `t` of `[0,1)^d`, standing for `z = e(t)` on the torus.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusPoint(Coords);

impl TorusPoint {
    /// Exact point; coordinates are reduced mod 1.
    pub fn exact(xs: Vec<BigRational>) -> Self {
        TorusPoint(Coords::Exact(xs.iter().map(frac).collect()))
    }

    /// Float point; coordinates are reduced mod 1.
    pub fn float(xs: Vec<f64>) -> Self {
        TorusPoint(Coords::Float(xs.into_iter().map(frac_f64).collect()))
    }

    /// Exact point from `(numerator, denominator)` pairs.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::exact(pairs.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        TorusPoint(Coords::Exact(vec![BigRational::zero(); dim]))
    }

    pub fn coords(&self) -> &Coords {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_exact(&self) -> bool {
        self.0.is_exact()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.to_f64()
    }

    pub fn exact_coords(&self) -> Option<&[BigRational]> {
        self.0.exact()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match &self.0 {
            Coords::Exact(xs) => xs.iter().map(|x| x.to_string()).collect(),
            Coords::Float(xs) => xs.iter().map(|x| x.to_string()).collect(),
        };
        write!(f, "({})", parts.join(", "))
    }
}

/// Parses `p/q`, an integer, or a decimal such as `-0.25` or `1.5e-3`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac_part.is_empty() || !int.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: BigInt = format!("{int}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(num * ten.pow(scale as u32))
    } else {
        BigRational::new(num, ten.pow((-scale) as u32))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Fractional part in `[0,1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

pub fn frac_f64(x: f64) -> f64 {
    let r = x - x.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    // Split off the integer part so large denominators keep full precision.
    let int = x.floor();
    let rest = x - &int;
    let i = int.to_integer().to_f64().unwrap_or(f64::NAN);
    let r = rest.to_f64().unwrap_or_else(|| {
        let num = rest.numer().to_f64().unwrap_or(0.0);
        let den = rest.denom().to_f64().unwrap_or(f64::INFINITY);
        num / den
    });
    i + r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1(n: u32) -> DilationSpec {
        DilationSpec::scalar(n).unwrap()
    }

    #[test]
    fn rejects_degenerate_dilations() {
        assert!(DilationSpec::new(vec![]).is_err());
        assert!(DilationSpec::new(vec![2, 1]).is_err());
        assert_eq!(DilationSpec::new(vec![2, 3]).unwrap().det(), 6);
    }

    #[test]
    fn alphabets_are_lexicographic() {
        assert_eq!(d1(2).alphabet(), vec![Digit(vec![0]), Digit(vec![1])]);
        assert_eq!(d1(3).alphabet().len(), 3);
        let two = DilationSpec::new(vec![2, 2]).unwrap().alphabet();
        let expect: Vec<Digit> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|d| Digit(d.to_vec()))
            .collect();
        assert_eq!(two, expect);
    }

    #[test]
    fn word_to_integer_examples() {
        let w = DigitWord::from_scalars(&d1(2), &[1, 0, 1], None).unwrap();
        assert_eq!(d1(2).word_to_integer(&w).unwrap(), vec![BigInt::from(5)]);
        let w = DigitWord::from_scalars(&d1(3), &[0, 0], None).unwrap();
        assert_eq!(d1(3).word_to_integer(&w).unwrap(), vec![BigInt::from(0)]);

        let spec = DilationSpec::new(vec![2, 3]).unwrap();
        let w = DigitWord::finite(&spec, vec![Digit(vec![1, 2]), Digit(vec![1, 1])]).unwrap();
        assert_eq!(
            spec.word_to_integer(&w).unwrap(),
            vec![BigInt::from(3), BigInt::from(5)]
        );

        let periodic = DigitWord::from_scalars(&d1(2), &[1], Some(&[1])).unwrap();
        assert!(matches!(
            d1(2).word_to_integer(&periodic),
            Err(Error::PeriodicWord)
        ));
    }

    #[test]
    fn integer_to_word_examples() {
        let w = d1(2).integer_to_word(&[5], 4).unwrap();
        assert_eq!(w, DigitWord::from_scalars(&d1(2), &[1, 0, 1, 0], Some(&[0])).unwrap());

        let w = d1(2).integer_to_word(&[-1], 3).unwrap();
        assert_eq!(w, DigitWord::from_scalars(&d1(2), &[1, 1, 1], Some(&[1])).unwrap());

        let w = d1(3).integer_to_word(&[-2], 3).unwrap();
        assert_eq!(w, DigitWord::from_scalars(&d1(3), &[1, 2, 2], Some(&[2])).unwrap());
        let back = d1(3).odometer_add(&w, &[2]).unwrap();
        assert!(back.same_point(&DigitWord::empty(&d1(3))));

        assert!(matches!(
            d1(2).integer_to_word(&[8], 3),
            Err(Error::InsufficientDepth { .. })
        ));
        // -8 = 0 mod 8 with an all-ones tail still fits in three digits.
        assert!(d1(2).integer_to_word(&[-8], 3).is_ok());
        assert!(d1(2).integer_to_word(&[-9], 3).is_err());
    }

    #[test]
    fn complement_digits_match_the_negative_expansion() {
        // b_0 = N - a_0, b_j = N - 1 - a_j when a_0 != 0.
        for (n, k) in [(2u32, 5i64), (3, 7), (3, 2), (5, 13)] {
            let spec = d1(n);
            let depth = 6;
            let pos = spec.integer_to_word(&[k], depth).unwrap();
            let neg = spec.integer_to_word(&[-k], depth).unwrap();
            let a: Vec<u32> = pos.prefix().iter().map(|d| d.0[0]).collect();
            let b: Vec<u32> = neg.prefix().iter().map(|d| d.0[0]).collect();
            assert_ne!(a[0], 0);
            assert_eq!(b[0], n - a[0]);
            for j in 1..depth {
                assert_eq!(b[j], n - 1 - a[j]);
            }
        }
    }

    #[test]
    fn odometer_examples() {
        let spec = d1(2);
        let w = DigitWord::from_scalars(&spec, &[1, 1, 1], Some(&[0])).unwrap();
        let sum = spec.odometer_add(&w, &[1]).unwrap();
        assert!(sum.same_point(&DigitWord::from_scalars(&spec, &[0, 0, 0, 1], None).unwrap()));

        let spec3 = d1(3);
        let w = DigitWord::from_scalars(&spec3, &[2], Some(&[2])).unwrap();
        let sum = spec3.odometer_add(&w, &[1]).unwrap();
        assert_eq!(sum, DigitWord::from_scalars(&spec3, &[0], Some(&[0])).unwrap());

        let w = DigitWord::from_scalars(&spec, &[0], Some(&[0])).unwrap();
        assert_eq!(spec.odometer_add(&w, &[0]).unwrap(), w);
    }

    #[test]
    fn odometer_subtraction_produces_complement_tail() {
        let spec = d1(2);
        let minus_one = spec.odometer_add(&DigitWord::empty(&spec), &[-1]).unwrap();
        assert!(minus_one.same_point(&DigitWord::from_scalars(&spec, &[], Some(&[1])).unwrap()));
        let two_d = DilationSpec::new(vec![2, 3]).unwrap();
        let w = two_d.odometer_add(&DigitWord::empty(&two_d), &[3, -1]).unwrap();
        let expect = two_d.integer_to_word(&[3, -1], 4).unwrap();
        assert!(w.same_point(&expect));
    }

    #[test]
    fn s_of_t_uses_half_open_cells() {
        let spec = d1(2);
        assert_eq!(spec.s_of_t(&TorusPoint::float(vec![0.3])), Digit(vec![0]));
        assert_eq!(spec.s_of_t(&TorusPoint::from_ratios(&[(1, 2)])), Digit(vec![1]));
        assert_eq!(spec.s_of_t(&TorusPoint::float(vec![0.5])), Digit(vec![1]));
        let spec = DilationSpec::new(vec![2, 3]).unwrap();
        assert_eq!(spec.s_of_t(&TorusPoint::float(vec![0.7, 0.4])), Digit(vec![1, 1]));
        assert_eq!(
            spec.s_of_t(&TorusPoint::from_ratios(&[(1, 2), (2, 3)])),
            Digit(vec![1, 2])
        );
    }

    #[test]
    fn torus_points_reduce_mod_one() {
        let t = TorusPoint::from_ratios(&[(-1, 3)]);
        assert_eq!(t.exact_coords().unwrap()[0], ratio(2, 3));
        let t = TorusPoint::float(vec![-1e-18]);
        assert!(t.to_f64()[0] < 1.0);
    }

    #[test]
    fn shift_left_rotates_pure_periods() {
        let spec = d1(3);
        let w = DigitWord::from_scalars(&spec, &[], Some(&[1, 2])).unwrap();
        let s = w.shift_left().unwrap();
        assert_eq!(s.period().unwrap(), &[Digit(vec![2]), Digit(vec![1])]);
        assert!(DigitWord::empty(&spec).shift_left().is_err());
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("0.3").unwrap(), ratio(3, 10));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), ratio(7, 1));
        assert_eq!(parse_rational("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(parse_rational("-.25").unwrap(), ratio(-1, 4));
        for bad in ["", "1/0", "abc", "1.2.3", "-"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }
}
