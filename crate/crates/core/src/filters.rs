//! Filters `m` on `T^d`: the Laurent (FIR) filters with exact `c/sqrt(K)`
//! coefficients, general Borel filters in float mode, the QMF identity
//! `sum_{beta(w) = z} |m(w)|^2 = N`, and low-pass diagnostics.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::dilation::{DilationSpec, TorusPoint};
use crate::error::{Error, Result};
use crate::laurent::{Exponent, GaussRat, LaurentPoly};

/// What the rest of the crate needs from a filter.
pub trait Filter: Send + Sync {
    fn spec(&self) -> &DilationSpec;

    /// `m(e(t))` for `t` in `R^d`.
    fn eval(&self, t: &[f64]) -> Complex64;

    /// The constant the preimage sum of `|m|^2` is expected to equal, and the
    /// divisor used in cylinder masses. Defaults to `N = det A`.
    fn qmf_constant(&self) -> u64;

    /// Exact `|m|^2` as a Laurent polynomial, when the filter is Laurent with
    /// exact coefficients.
    fn squared_modulus(&self) -> Option<&LaurentPoly> {
        None
    }

    /// `sum_v |c_v|`, an upper bound for `sup |m|`, when it is known.
    fn coefficient_bound(&self) -> Option<f64> {
        None
    }

    /// Exact `(sum_v |c_v|)^2`, when every `|c_v|` is known exactly.
    fn coefficient_bound_squared_exact(&self) -> Option<BigRational> {
        None
    }

    /// A constant `L` with `|m(e(t)) - m(1)| <= L |t|_inf` near `t = 0`.
    fn lipschitz_at_one(&self) -> Option<f64> {
        None
    }

    fn label(&self) -> String {
        "filter".into()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Coefficients {
    /// `m = (1/sqrt K) sum (re + i im) z^v` with integer `re`, `im`.
    Exact {
        k: u32,
        terms: BTreeMap<Exponent, (i64, i64)>,
    },
    Float {
        terms: BTreeMap<Exponent, Complex64>,
    },
}

/// A finitely supported filter `m(z) = sum_v c_v z^v`.
#[derive(Clone, Debug)]
pub struct LaurentFilter {
    name: Option<String>,
    spec: DilationSpec,
    coeffs: Coefficients,
    qmf_constant: u64,
    complex_terms: Vec<(Exponent, Complex64)>,
    squared: Option<LaurentPoly>,
}

impl PartialEq for LaurentFilter {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.coeffs == other.coeffs && self.qmf_constant == other.qmf_constant
    }
}

impl LaurentFilter {
    /// Exact filter `(1/sqrt K) sum (re_v + i im_v) z^v`.
    pub fn exact(spec: DilationSpec, k: u32, terms: impl IntoIterator<Item = (Exponent, (i64, i64))>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("K must be positive".into()));
        }
        let mut map: BTreeMap<Exponent, (i64, i64)> = BTreeMap::new();
        for (e, (re, im)) in terms {
            spec.check_dim(e.len())?;
            let slot = map.entry(e).or_insert((0, 0));
            slot.0 += re;
            slot.1 += im;
        }
        map.retain(|_, c| *c != (0, 0));
        Ok(Self::build(spec, Coefficients::Exact { k, terms: map }))
    }

    pub fn float(spec: DilationSpec, terms: impl IntoIterator<Item = (Exponent, Complex64)>) -> Result<Self> {
        let mut map: BTreeMap<Exponent, Complex64> = BTreeMap::new();
        for (e, c) in terms {
            spec.check_dim(e.len())?;
            *map.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self::build(spec, Coefficients::Float { terms: map }))
    }

    fn build(spec: DilationSpec, coeffs: Coefficients) -> Self {
        let complex_terms: Vec<(Exponent, Complex64)> = match &coeffs {
            Coefficients::Exact { k, terms } => {
                let s = (*k as f64).sqrt();
                terms
                    .iter()
                    .map(|(e, &(re, im))| (e.clone(), Complex64::new(re as f64 / s, im as f64 / s)))
                    .collect()
            }
            Coefficients::Float { terms } => terms.iter().map(|(e, c)| (e.clone(), *c)).collect(),
        };
        let squared = match &coeffs {
            Coefficients::Exact { k, terms } => Some(exact_squared_modulus(spec.dim(), *k, terms)),
            Coefficients::Float { .. } => None,
        };
        let qmf_constant = spec.det();
        LaurentFilter {
            name: None,
            spec,
            coeffs,
            qmf_constant,
            complex_terms,
            squared,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Override the QMF target constant (and the cylinder-mass divisor).
    pub fn with_qmf_constant(mut self, c: u64) -> Self {
        self.qmf_constant = c.max(1);
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coefficients::Exact { .. })
    }

    /// `K` for exact filters.
    pub fn sqrt_denominator(&self) -> Option<u32> {
        match &self.coeffs {
            Coefficients::Exact { k, .. } => Some(*k),
            Coefficients::Float { .. } => None,
        }
    }

    pub fn terms(&self) -> &[(Exponent, Complex64)] {
        &self.complex_terms
    }

    /// `m(1)`.
    pub fn value_at_one(&self) -> Complex64 {
        self.complex_terms.iter().map(|(_, c)| *c).sum()
    }

    pub fn to_file(&self) -> FilterFile {
        let (k, terms) = match &self.coeffs {
            Coefficients::Exact { k, terms } => (
                Some(*k),
                terms
                    .iter()
                    .map(|(e, &(re, im))| TermSpec::Exact {
                        exp: e.clone(),
                        re_over_sqrt_k: re,
                        im_over_sqrt_k: im,
                    })
                    .collect(),
            ),
            Coefficients::Float { terms } => (
                None,
                terms
                    .iter()
                    .map(|(e, c)| TermSpec::Float {
                        exp: e.clone(),
                        re: c.re,
                        im: c.im,
                    })
                    .collect(),
            ),
        };
        FilterFile {
            name: self.name.clone(),
            d: self.spec.dim(),
            diag: self.spec.diag().to_vec(),
            terms,
            k,
            qmf_constant: (self.qmf_constant != self.spec.det()).then_some(self.qmf_constant),
        }
    }

    pub fn from_file(file: FilterFile) -> Result<Self> {
        if file.d != file.diag.len() {
            return Err(Error::DimensionMismatch {
                expected: file.d,
                found: file.diag.len(),
            });
        }
        let spec = DilationSpec::new(file.diag)?;
        let all_exact = file.terms.iter().all(|t| matches!(t, TermSpec::Exact { .. }));
        let mut filter = if all_exact {
            let k = file
                .k
                .ok_or_else(|| Error::Parse("exact terms need the field \"K\"".into()))?;
            let terms = file.terms.into_iter().map(|t| match t {
                TermSpec::Exact {
                    exp,
                    re_over_sqrt_k,
                    im_over_sqrt_k,
                } => (exp, (re_over_sqrt_k, im_over_sqrt_k)),
                TermSpec::Float { .. } => unreachable!(),
            });
            LaurentFilter::exact(spec, k, terms)?
        } else {
            let scale = file.k.map_or(1.0, |k| 1.0 / (k as f64).sqrt());
            let terms = file.terms.into_iter().map(|t| match t {
                TermSpec::Exact {
                    exp,
                    re_over_sqrt_k,
                    im_over_sqrt_k,
                } => (exp, Complex64::new(re_over_sqrt_k as f64, im_over_sqrt_k as f64) * scale),
                TermSpec::Float { exp, re, im } => (exp, Complex64::new(re, im)),
            });
            LaurentFilter::float(spec, terms)?
        };
        if let Some(c) = file.qmf_constant {
            filter = filter.with_qmf_constant(c);
        }
        if let Some(name) = file.name {
            filter = filter.with_name(name);
        }
        Ok(filter)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }
}

fn exact_squared_modulus(dim: usize, k: u32, terms: &BTreeMap<Exponent, (i64, i64)>) -> LaurentPoly {
    let inv_k = BigRational::new(BigInt::from(1), BigInt::from(k));
    let mut acc = LaurentPoly::zero(dim);
    for (ev, &(rv, iv)) in terms {
        for (ew, &(rw, iw)) in terms {
            // c_v * conj(c_w)
            let re = rv * rw + iv * iw;
            let im = iv * rw - rv * iw;
            let c = GaussRat::new(
                BigRational::from_integer(BigInt::from(re)) * &inv_k,
                BigRational::from_integer(BigInt::from(im)) * &inv_k,
            );
            let e: Exponent = ev.iter().zip(ew).map(|(a, b)| a - b).collect();
            acc = acc.add(&LaurentPoly::monomial(e, c));
        }
    }
    acc
}

impl Filter for LaurentFilter {
    fn spec(&self) -> &DilationSpec {
        &self.spec
    }

    fn eval(&self, t: &[f64]) -> Complex64 {
        self.complex_terms
            .iter()
            .map(|(e, c)| {
                let phase: f64 = e.iter().zip(t).map(|(&a, &x)| a as f64 * x).sum();
                c * Complex64::from_polar(1.0, TAU * (phase - phase.floor()))
            })
            .sum()
    }

    fn qmf_constant(&self) -> u64 {
        self.qmf_constant
    }

    fn squared_modulus(&self) -> Option<&LaurentPoly> {
        self.squared.as_ref()
    }

    fn coefficient_bound(&self) -> Option<f64> {
        Some(self.complex_terms.iter().map(|(_, c)| c.norm()).sum())
    }

    /// Exact `(sum_v |c_v|)^2` when every coefficient has an integer modulus.
    fn coefficient_bound_squared_exact(&self) -> Option<BigRational> {
        match &self.coeffs {
            Coefficients::Exact { k, terms } => {
                let mut sum = 0i64;
                for &(re, im) in terms.values() {
                    if re != 0 && im != 0 {
                        let n2 = re * re + im * im;
                        let r = (n2 as f64).sqrt().round() as i64;
                        if r * r != n2 {
                            return None;
                        }
                        sum += r;
                    } else {
                        sum += re.abs() + im.abs();
                    }
                }
                Some(BigRational::new(BigInt::from(sum * sum), BigInt::from(*k)))
            }
            Coefficients::Float { .. } => None,
        }
    }

    fn lipschitz_at_one(&self) -> Option<f64> {
        Some(
            TAU * self
                .complex_terms
                .iter()
                .map(|(e, c)| c.norm() * e.iter().map(|a| a.abs() as f64).sum::<f64>())
                .sum::<f64>(),
        )
    }

    fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "laurent".into())
    }
}

impl fmt::Display for LaurentFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.coeffs {
            Coefficients::Exact { k, terms } => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(e, (re, im))| format!("({re}{:+}i) z^{e:?}", im))
                    .collect();
                write!(f, "(1/sqrt {k}) [{}]", parts.join(" + "))
            }
            Coefficients::Float { terms } => {
                let parts: Vec<String> = terms.iter().map(|(e, c)| format!("({c}) z^{e:?}")).collect();
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

type BorelFn = dyn Fn(&[f64]) -> Complex64 + Send + Sync;

/// A filter given only by a callable; float mode only.
#[derive(Clone)]
pub struct BorelFilter {
    spec: DilationSpec,
    f: Arc<BorelFn>,
    qmf_constant: u64,
    bound: Option<f64>,
}

impl BorelFilter {
    pub fn new(spec: DilationSpec, f: impl Fn(&[f64]) -> Complex64 + Send + Sync + 'static) -> Self {
        let qmf_constant = spec.det();
        BorelFilter {
            spec,
            f: Arc::new(f),
            qmf_constant,
            bound: None,
        }
    }

    /// Attach a known bound on `sup |m|`.
    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }
}

impl Filter for BorelFilter {
    fn spec(&self) -> &DilationSpec {
        &self.spec
    }
    fn eval(&self, t: &[f64]) -> Complex64 {
        (self.f)(t)
    }
    fn qmf_constant(&self) -> u64 {
        self.qmf_constant
    }
    fn coefficient_bound(&self) -> Option<f64> {
        self.bound
    }
    fn label(&self) -> String {
        "borel".into()
    }
}

// Filter file format.

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum TermSpec {
    Exact {
        exp: Vec<i64>,
        #[serde(rename = "re_over_sqrtK")]
        re_over_sqrt_k: i64,
        #[serde(rename = "im_over_sqrtK", default)]
        im_over_sqrt_k: i64,
    },
    Float {
        exp: Vec<i64>,
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct FilterFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub d: usize,
    pub diag: Vec<u32>,
    pub terms: Vec<TermSpec>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qmf_constant: Option<u64>,
}

// Built-in filters.

pub const BUILTIN_NAMES: [&str; 4] = ["haar2", "haar3", "cantor3", "sierpinski"];

/// `(1 + z)/sqrt 2`, dilation 2.
pub fn haar2() -> LaurentFilter {
    LaurentFilter::exact(DilationSpec::scalar(2).unwrap(), 2, [(vec![0], (1, 0)), (vec![1], (1, 0))])
        .unwrap()
        .with_name("haar2")
}

/// `(1 + z + z^2)/sqrt 3`, dilation 3.
pub fn haar3() -> LaurentFilter {
    LaurentFilter::exact(
        DilationSpec::scalar(3).unwrap(),
        3,
        [(vec![0], (1, 0)), (vec![1], (1, 0)), (vec![2], (1, 0))],
    )
    .unwrap()
    .with_name("haar3")
}

/// `(1 + z^2)/sqrt 2`, dilation 3: the inflated Cantor set filter.
pub fn cantor3() -> LaurentFilter {
    LaurentFilter::exact(DilationSpec::scalar(3).unwrap(), 2, [(vec![0], (1, 0)), (vec![2], (1, 0))])
        .unwrap()
        .with_name("cantor3")
}

/// `(1 + z + w)/2`, dilation `diag(2, 2)`: the inflated Sierpinski gasket filter.
///
/// Its preimage sum of `|m|^2` is 3, not `N = 4`; see [`LaurentFilter::with_qmf_constant`].
pub fn sierpinski() -> LaurentFilter {
    LaurentFilter::exact(
        DilationSpec::new(vec![2, 2]).unwrap(),
        4,
        [(vec![0, 0], (1, 0)), (vec![1, 0], (1, 0)), (vec![0, 1], (1, 0))],
    )
    .unwrap()
    .with_name("sierpinski")
}

pub fn builtin(name: &str) -> Option<LaurentFilter> {
    match name {
        "haar2" => Some(haar2()),
        "haar3" => Some(haar3()),
        "cantor3" => Some(cantor3()),
        "sierpinski" => Some(sierpinski()),
        _ => None,
    }
}

/// The filter `(1/sqrt K) sum_i z^{v_i}` of an IFS with integer digit vectors.
/// Repeated vectors merge their coefficients; the repeated exponents are
/// returned alongside the filter.
pub fn filter_from_ifs(digits: &[Exponent], spec: &DilationSpec) -> Result<(LaurentFilter, Vec<Exponent>)> {
    if digits.is_empty() {
        return Err(Error::InvalidArgument("an IFS needs at least one map".into()));
    }
    let mut seen: BTreeMap<&Exponent, usize> = BTreeMap::new();
    for v in digits {
        *seen.entry(v).or_insert(0) += 1;
    }
    let merged: Vec<Exponent> = seen.iter().filter(|(_, &n)| n > 1).map(|(v, _)| (*v).clone()).collect();
    for v in &merged {
        log::warn!("IFS digit {v:?} repeated; coefficients merged");
    }
    let k = digits.len() as u32;
    let filter = LaurentFilter::exact(spec.clone(), k, digits.iter().map(|v| (v.clone(), (1, 0))))?;
    Ok((filter, merged))
}

// Evaluation and QMF checks.

pub fn eval<F: Filter + ?Sized>(filter: &F, t: &TorusPoint) -> Complex64 {
    filter.eval(&t.to_f64())
}

/// The `N` points `A^{-1}(t + a)` over the alphabet, as floats.
fn preimages_f64(spec: &DilationSpec, t: &[f64]) -> Vec<Vec<f64>> {
    spec.alphabet()
        .iter()
        .map(|a| {
            t.iter()
                .zip(a.coords())
                .zip(spec.diag())
                .map(|((x, &ai), &n)| (x + ai as f64) / n as f64)
                .collect()
        })
        .collect()
}

fn preimages_exact(spec: &DilationSpec, t: &[BigRational]) -> Vec<Vec<BigRational>> {
    spec.alphabet()
        .iter()
        .map(|a| {
            t.iter()
                .zip(a.coords())
                .zip(spec.diag())
                .map(|((x, &ai), &n)| {
                    (x + BigRational::from_integer(BigInt::from(ai))) / BigRational::from_integer(BigInt::from(n))
                })
                .collect()
        })
        .collect()
}

/// `sum_{beta(w) = e(t)} |m(w)|^2`.
pub fn preimage_sum<F: Filter + ?Sized>(filter: &F, t: &[f64]) -> f64 {
    preimages_f64(filter.spec(), t)
        .iter()
        .map(|w| filter.eval(w).norm_sqr())
        .sum()
}

/// `|sum_{beta(w) = e(t)} |m(w)|^2 - c|` with `c` the filter's QMF constant.
pub fn qmf_residual<F: Filter + ?Sized>(filter: &F, t: &TorusPoint) -> f64 {
    (preimage_sum(filter, &t.to_f64()) - filter.qmf_constant() as f64).abs()
}

/// The exact preimage sum minus `c`, as an element of a cyclotomic field.
pub fn qmf_defect_exact<F: Filter + ?Sized>(filter: &F, t: &TorusPoint) -> Result<Cyclotomic> {
    let sq = filter
        .squared_modulus()
        .ok_or(Error::NotExact("the filter has float coefficients"))?;
    let t = t.exact_coords().ok_or(Error::NotExact("the torus point is a float"))?;
    let mut acc = Cyclotomic::integer(-(filter.qmf_constant() as i128));
    for w in preimages_exact(filter.spec(), t) {
        acc = acc.add(&sq.eval_exact(&w)?)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct QmfReport {
    pub max_residual: f64,
    pub sample_count: usize,
    pub exact: bool,
    pub target: u64,
}

/// QMF residual over a set of points. When the filter and every point are
/// exact the residual is computed in the cyclotomic field and is either
/// exactly zero or reported by its float magnitude.
pub fn qmf_report<F: Filter + ?Sized>(filter: &F, points: &[TorusPoint]) -> Result<QmfReport> {
    let exact = filter.squared_modulus().is_some() && points.iter().all(|p| p.is_exact());
    let mut max_residual: f64 = 0.0;
    for p in points {
        filter.spec().check_dim(p.dim())?;
        let r = if exact {
            let defect = qmf_defect_exact(filter, p)?.reduce()?;
            if defect.term_count() == 0 {
                0.0
            } else {
                defect.to_complex().norm().max(f64::MIN_POSITIVE)
            }
        } else {
            qmf_residual(filter, p)
        };
        max_residual = max_residual.max(r);
    }
    Ok(QmfReport {
        max_residual,
        sample_count: points.len(),
        exact,
        target: filter.qmf_constant(),
    })
}

/// `sum_v |c_v|`.
pub fn coefficient_bound<F: Filter + ?Sized>(filter: &F) -> Option<f64> {
    filter.coefficient_bound()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LowpassReport {
    pub m_at_one: Complex64,
    pub sqrt_n: f64,
    pub zero_samples: Vec<Vec<f64>>,
    pub lipschitz_estimate: f64,
}

/// Diagnostics around `z = 1`: the value `m(1)`, approximate zeros found by
/// scanning a grid of the given resolution per axis, and a finite-difference
/// Lipschitz estimate at `t = 0`. Reports only; no verdict.
pub fn lowpass_report<F: Filter + ?Sized>(filter: &F, grid_resolution: usize, zero_tolerance: f64) -> Result<LowpassReport> {
    if grid_resolution < 2 {
        return Err(Error::InvalidArgument("grid resolution must be at least 2".into()));
    }
    let d = filter.spec().dim();
    let origin = vec![0.0; d];
    let m_at_one = filter.eval(&origin);
    let zero_samples = scan_local_extrema(filter, grid_resolution, |v| v.norm(), false)
        .into_iter()
        .filter(|(_, value)| *value < zero_tolerance)
        .map(|(t, _)| t)
        .collect();
    let mut lipschitz: f64 = 0.0;
    for axis in 0..d {
        for h in [1e-3, 1e-4, 1e-5, -1e-3, -1e-4, -1e-5] {
            let mut t = origin.clone();
            t[axis] = h;
            let slope = (filter.eval(&t) - m_at_one).norm() / h.abs();
            lipschitz = lipschitz.max(slope);
        }
    }
    Ok(LowpassReport {
        m_at_one,
        sqrt_n: (filter.spec().det() as f64).sqrt(),
        zero_samples,
        lipschitz_estimate: lipschitz,
    })
}

/// Grid local minima (or maxima) of `score(m(e(t)))`, each refined by
/// coordinate-wise golden-section search within one grid cell.
pub(crate) fn scan_local_extrema<F: Filter + ?Sized>(
    filter: &F,
    resolution: usize,
    score: impl Fn(Complex64) -> f64 + Sync,
    maximize: bool,
) -> Vec<(Vec<f64>, f64)> {
    use rayon::prelude::*;
    let d = filter.spec().dim();
    let total = resolution.pow(d as u32);
    let h = 1.0 / resolution as f64;
    let point = |mut idx: usize| -> Vec<f64> {
        let mut t = vec![0.0; d];
        for slot in t.iter_mut() {
            *slot = (idx % resolution) as f64 * h;
            idx /= resolution;
        }
        t
    };
    let sign = if maximize { -1.0 } else { 1.0 };
    let objective = |t: &[f64]| sign * score(filter.eval(t));
    let values: Vec<f64> = (0..total).into_par_iter().map(|i| objective(&point(i))).collect();
    let stride = |axis: usize| resolution.pow(axis as u32);
    let mut out: Vec<(Vec<f64>, f64)> = (0..total)
        .into_par_iter()
        .filter(|&i| {
            (0..d).all(|axis| {
                let s = stride(axis);
                let c = (i / s) % resolution;
                let up = i - c * s + ((c + 1) % resolution) * s;
                let down = i - c * s + ((c + resolution - 1) % resolution) * s;
                values[i] <= values[up] && values[i] < values[down]
            })
        })
        .map(|i| {
            let mut t = point(i);
            for axis in 0..d {
                let (lo, hi) = (t[axis] - h, t[axis] + h);
                t[axis] = golden_section(lo, hi, |x| {
                    let mut probe = t.clone();
                    probe[axis] = x;
                    objective(&probe)
                });
            }
            let value = sign * objective(&t);
            for x in t.iter_mut() {
                *x -= x.floor();
                if *x >= 1.0 - 1e-12 {
                    *x = 0.0;
                }
            }
            (t, value)
        })
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    out
}

fn golden_section(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}
