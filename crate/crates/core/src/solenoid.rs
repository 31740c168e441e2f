//! Coordinates on the solenoid `S_beta`: truncated compatible sequences,
//! product coordinates `(z, word)`, the isomorphism `Theta` and its inverse,
//! the shift `sigma` in both pictures, and the winding line.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dilation::{frac, frac_f64, ratio, Coords, Digit, DigitWord, DilationSpec, TorusPoint};
use crate::error::{Error, Result};

/// Float tolerance for compatibility and integrality checks.
const FLOAT_TOL: f64 = 1e-9;

/// Which representative of `t mod 1` serves as the base of `Theta`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Section {
    /// `t` in `[0, 1)^d`.
    #[default]
    Unit,
    /// `theta` in `[-1/2, 1/2)^d`.
    Centered,
}

impl Section {
    /// The integer offset `eps` with representative `t - eps`.
    pub fn offset(self, t: &TorusPoint) -> Vec<i64> {
        match self {
            Section::Unit => vec![0; t.dim()],
            Section::Centered => match t.coords() {
                Coords::Exact(xs) => xs.iter().map(|x| i64::from(x >= &ratio(1, 2))).collect(),
                Coords::Float(xs) => xs.iter().map(|&x| i64::from(x >= 0.5)).collect(),
            },
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "unit" => Ok(Section::Unit),
            "centered" => Ok(Section::Centered),
            other => Err(Error::Parse(format!("unknown section {other:?}; expected unit or centered"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Section::Unit => "unit",
            Section::Centered => "centered",
        }
    }
}

/// Re-express the fiber coordinate of a point when switching sections:
/// `Theta_to(z, w') = Theta_from(z, w)`.
pub fn convert_word(spec: &DilationSpec, t: &TorusPoint, word: &DigitWord, from: Section, to: Section) -> Result<DigitWord> {
    let delta: Vec<i64> = to.offset(t).iter().zip(from.offset(t)).map(|(a, b)| a - b).collect();
    if delta.iter().all(|&x| x == 0) {
        return Ok(word.clone());
    }
    spec.odometer_add(word, &delta)
}

/// A finite truncation `(t_0, ..., t_n)` of a point of the solenoid.
#[derive(Clone, Debug, PartialEq)]
pub struct SolenoidPoint {
    spec: DilationSpec,
    coords: Vec<TorusPoint>,
}

impl SolenoidPoint {
    /// Validates `A t_{j+1} = t_j mod 1` (exactly, or to `1e-9` for floats).
    pub fn new(spec: DilationSpec, coords: Vec<TorusPoint>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("a solenoid point needs at least t_0".into()));
        }
        for t in &coords {
            spec.check_dim(t.dim())?;
        }
        let p = SolenoidPoint { spec, coords };
        if let Some(index) = p.first_incompatibility() {
            return Err(Error::Incompatible { index });
        }
        Ok(p)
    }

    fn unchecked(spec: &DilationSpec, coords: Vec<TorusPoint>) -> Self {
        SolenoidPoint {
            spec: spec.clone(),
            coords,
        }
    }

    pub fn spec(&self) -> &DilationSpec {
        &self.spec
    }

    pub fn depth(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[TorusPoint] {
        &self.coords
    }

    /// `pi_n`.
    pub fn project(&self, n: usize) -> Option<&TorusPoint> {
        self.coords.get(n)
    }

    pub fn is_exact(&self) -> bool {
        self.coords.iter().all(|t| t.is_exact())
    }

    /// The first `j` with `beta(z_{j+1}) != z_j`, if any.
    pub fn first_incompatibility(&self) -> Option<usize> {
        (0..self.depth()).find(|&j| !dilates_to(&self.spec, &self.coords[j + 1], &self.coords[j]))
    }

    pub fn is_compatible(&self) -> bool {
        self.first_incompatibility().is_none()
    }

    /// Coordinate-level `sigma^{-1}`: `(beta(z_0), z_0, z_1, ...)`.
    pub fn sigma_inverse(&self) -> SolenoidPoint {
        let mut coords = Vec::with_capacity(self.coords.len() + 1);
        coords.push(dilate(&self.spec, &self.coords[0]));
        coords.extend(self.coords.iter().cloned());
        Self::unchecked(&self.spec, coords)
    }

    /// Coordinate-level `sigma`: `(z_1, z_2, ...)`.
    pub fn sigma(&self) -> Result<SolenoidPoint> {
        if self.depth() == 0 {
            return Err(Error::InsufficientDepth { value: 1, depth: 0 });
        }
        Ok(Self::unchecked(&self.spec, self.coords[1..].to_vec()))
    }

    pub fn truncate(&self, depth: usize) -> SolenoidPoint {
        Self::unchecked(&self.spec, self.coords[..=depth.min(self.depth())].to_vec())
    }

    /// Same point to the shorter of the two depths.
    pub fn agrees_with(&self, other: &SolenoidPoint) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| torus_eq(a, b))
    }
}

impl fmt::Display for SolenoidPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|t| t.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// A point `(z, word)` of `T^d x Z_A^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductPoint {
    pub base: TorusPoint,
    pub word: DigitWord,
}

impl ProductPoint {
    pub fn new(spec: &DilationSpec, base: TorusPoint, word: DigitWord) -> Result<Self> {
        spec.check_dim(base.dim())?;
        spec.check_dim(word.dim())?;
        Ok(ProductPoint { base, word })
    }

    /// Same base and same odometer point.
    pub fn same_point(&self, other: &ProductPoint) -> bool {
        torus_eq(&self.base, &other.base) && self.word.same_point(&other.word)
    }
}

impl fmt::Display for ProductPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.base, self.word)
    }
}

fn torus_eq(a: &TorusPoint, b: &TorusPoint) -> bool {
    match (a.exact_coords(), b.exact_coords()) {
        (Some(x), Some(y)) => x == y,
        _ => a
            .to_f64()
            .iter()
            .zip(b.to_f64())
            .all(|(x, y)| circle_dist(*x, y) <= FLOAT_TOL),
    }
}

fn circle_dist(x: f64, y: f64) -> f64 {
    let d = frac_f64(x - y);
    d.min(1.0 - d)
}

fn big(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `A t mod 1`.
fn dilate(spec: &DilationSpec, t: &TorusPoint) -> TorusPoint {
    match t.coords() {
        Coords::Exact(xs) => TorusPoint::exact(xs.iter().zip(spec.diag()).map(|(x, &n)| x * big(n)).collect()),
        Coords::Float(xs) => TorusPoint::float(xs.iter().zip(spec.diag()).map(|(x, &n)| x * n as f64).collect()),
    }
}

fn dilates_to(spec: &DilationSpec, upper: &TorusPoint, lower: &TorusPoint) -> bool {
    torus_eq(&dilate(spec, upper), lower)
}

/// `A^{-j}(t)` reduced mod 1.
pub fn cross_section_c(spec: &DilationSpec, t: &TorusPoint, depth: usize) -> Result<SolenoidPoint> {
    theta(spec, &ProductPoint::new(spec, t.clone(), DigitWord::empty(spec))?, depth)
}

/// `Theta` with the unit section.
pub fn theta(spec: &DilationSpec, p: &ProductPoint, depth: usize) -> Result<SolenoidPoint> {
    theta_with(spec, p, depth, Section::Unit)
}

/// `t_j = A^{-j}(r + sum_{i<j} A^i a_i) mod 1`, where `r` is the section's
/// representative of the base.
pub fn theta_with(spec: &DilationSpec, p: &ProductPoint, depth: usize, section: Section) -> Result<SolenoidPoint> {
    spec.check_dim(p.base.dim())?;
    spec.check_dim(p.word.dim())?;
    let eps = section.offset(&p.base);
    let d = spec.dim();
    let mut k: Vec<BigInt> = vec![BigInt::zero(); d];
    let mut place: Vec<BigInt> = vec![BigInt::one(); d];
    let mut coords = Vec::with_capacity(depth + 1);
    for j in 0..=depth {
        let point = match p.base.coords() {
            Coords::Exact(xs) => TorusPoint::exact(
                (0..d)
                    .map(|i| {
                        let r = &xs[i] - BigRational::from_integer(BigInt::from(eps[i]));
                        (r + BigRational::from_integer(k[i].clone())) / BigRational::from_integer(place[i].clone())
                    })
                    .collect(),
            ),
            Coords::Float(xs) => TorusPoint::float(
                (0..d)
                    .map(|i| {
                        let kk = k[i].to_f64().unwrap_or(f64::NAN);
                        let pl = place[i].to_f64().unwrap_or(f64::INFINITY);
                        (xs[i] - eps[i] as f64 + kk) / pl
                    })
                    .collect(),
            ),
        };
        coords.push(point);
        if j < depth {
            for i in 0..d {
                k[i] += &place[i] * BigInt::from(p.word.digit_coord(j, i));
                place[i] *= spec.diag()[i];
            }
        }
    }
    Ok(SolenoidPoint::unchecked(spec, coords))
}

/// `Theta^{-1}` with the unit section.
pub fn theta_inverse(s: &SolenoidPoint) -> Result<ProductPoint> {
    theta_inverse_with(s, Section::Unit)
}

/// Recovers the base `t_0` and the depth-`n` word with `Theta(result) = s`.
/// The integers `K_j = A^j t_j - r` are read off coordinatewise; their
/// successive differences give the digits.
pub fn theta_inverse_with(s: &SolenoidPoint, section: Section) -> Result<ProductPoint> {
    if let Some(index) = s.first_incompatibility() {
        return Err(Error::Incompatible { index });
    }
    let spec = s.spec();
    let d = spec.dim();
    let base = s.coords[0].clone();
    let eps = section.offset(&base);
    let mut prev: Vec<BigInt> = vec![BigInt::zero(); d];
    let mut place: Vec<BigInt> = vec![BigInt::one(); d];
    let mut prefix: Vec<Digit> = Vec::with_capacity(s.depth());
    for j in 1..=s.depth() {
        for i in 0..d {
            place[i] *= spec.diag()[i];
        }
        let mut digit = Vec::with_capacity(d);
        for i in 0..d {
            let kj = integer_part_of_lift(&s.coords[j], &base, i, &place[i], eps[i]).ok_or(Error::Incompatible { index: j })?;
            let prev_place = &place[i] / BigInt::from(spec.diag()[i]);
            let diff: BigInt = &kj - &prev[i];
            if diff.is_negative() || (&diff % &prev_place) != BigInt::zero() {
                return Err(Error::Incompatible { index: j });
            }
            let a = (&diff / &prev_place).to_u32().ok_or(Error::Incompatible { index: j })?;
            digit.push(a);
            prev[i] = kj;
        }
        prefix.push(Digit(digit));
    }
    let word = DigitWord::finite(spec, prefix)?;
    ProductPoint::new(spec, base, word)
}

/// `K = (A^j t_j - (t_0 - eps)) mod N^j` in coordinate `i`, required to be an integer.
fn integer_part_of_lift(tj: &TorusPoint, t0: &TorusPoint, i: usize, place: &BigInt, eps: i64) -> Option<BigInt> {
    match (tj.exact_coords(), t0.exact_coords()) {
        (Some(xj), Some(x0)) => {
            let lifted = &xj[i] * BigRational::from_integer(place.clone()) - &x0[i] + BigRational::from_integer(BigInt::from(eps));
            if !lifted.is_integer() {
                return None;
            }
            let k = lifted.to_integer();
            Some(((k % place) + place) % place)
        }
        _ => {
            let pl = place.to_f64()?;
            let lifted = tj.to_f64()[i] * pl - t0.to_f64()[i] + eps as f64;
            let rounded = lifted.round();
            if (lifted - rounded).abs() > FLOAT_TOL * pl.max(1.0) {
                return None;
            }
            let k = BigInt::from(rounded as i64);
            Some(((k % place) + place) % place)
        }
    }
}

/// `sigma~(e(t), (a_j)) = (e(A^{-1}(t + a_0)), (a_{j+1}))`.
pub fn shift_sigma(spec: &DilationSpec, p: &ProductPoint) -> Result<ProductPoint> {
    let a0 = p.word.digit(0);
    let word = p.word.shift_left()?;
    let base = match p.base.coords() {
        Coords::Exact(xs) => TorusPoint::exact(
            xs.iter()
                .zip(a0.coords())
                .zip(spec.diag())
                .map(|((x, &a), &n)| (x + big(a)) / big(n))
                .collect(),
        ),
        Coords::Float(xs) => TorusPoint::float(
            xs.iter()
                .zip(a0.coords())
                .zip(spec.diag())
                .map(|((x, &a), &n)| (x + a as f64) / n as f64)
                .collect(),
        ),
    };
    Ok(ProductPoint { base, word })
}

/// `sigma~^{-1}(e(t), (a)) = (e(A t), (s(t), a_0, a_1, ...))`.
pub fn shift_sigma_inverse(spec: &DilationSpec, p: &ProductPoint) -> ProductPoint {
    let s = spec.s_of_t(&p.base);
    ProductPoint {
        base: dilate(spec, &p.base),
        word: p.word.prepend(s),
    }
}

/// A real vector, not reduced mod 1.
#[derive(Clone, Debug, PartialEq)]
pub enum RealVector {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl RealVector {
    pub fn dim(&self) -> usize {
        match self {
            RealVector::Exact(v) => v.len(),
            RealVector::Float(v) => v.len(),
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            RealVector::Exact(v) => v.iter().map(crate::dilation::rational_to_f64).collect(),
            RealVector::Float(v) => v.clone(),
        }
    }

    /// `self + k` for an integer vector.
    pub fn shifted(&self, k: &[i64]) -> RealVector {
        match self {
            RealVector::Exact(v) => RealVector::Exact(v.iter().zip(k).map(|(x, &ki)| x + ratio(ki, 1)).collect()),
            RealVector::Float(v) => RealVector::Float(v.iter().zip(k).map(|(x, &ki)| x + ki as f64).collect()),
        }
    }
}

/// `w(t) = (e(t), e(A^{-1} t), e(A^{-2} t), ...)`.
pub fn winding_line(spec: &DilationSpec, t: &RealVector, depth: usize) -> Result<SolenoidPoint> {
    spec.check_dim(t.dim())?;
    let mut coords = Vec::with_capacity(depth + 1);
    match t {
        RealVector::Exact(v) => {
            let mut cur: Vec<BigRational> = v.clone();
            for _ in 0..=depth {
                coords.push(TorusPoint::exact(cur.iter().map(frac).collect()));
                cur = cur.iter().zip(spec.diag()).map(|(x, &n)| x / big(n)).collect();
            }
        }
        RealVector::Float(v) => {
            let mut cur = v.clone();
            for _ in 0..=depth {
                coords.push(TorusPoint::float(cur.clone()));
                cur = cur.iter().zip(spec.diag()).map(|(x, &n)| x / n as f64).collect();
            }
        }
    }
    Ok(SolenoidPoint::unchecked(spec, coords))
}
