//! Integration against the solenoid measure `tau`.
//!
//! With `P = (N/c)|m|^2`, the pushforward form is
//! `int (f o pi_n) dtau = int f(z) prod_{j<n} P(beta^j z) dz`; the preimage form
//! averages `f(w) prod_{j<n} P(beta^j w)` over the `N^n` solutions of
//! `beta^n(w) = z` before integrating. Both are exact for Laurent filters
//! (the torus integral of `z^v` is `[v = 0]`), with midpoint quadrature as
//! the float path.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::dilation::DilationSpec;
use crate::error::{Error, Result};
use crate::filters::Filter;
use crate::laurent::{term_cap, GaussRat, LaurentPoly};

/// Default midpoint-grid order per axis.
pub const DEFAULT_GRID_ORDER: usize = 256;
/// Largest `n` for which the preimage form enumerates all `N^n` words.
pub const PREIMAGE_MAX_N: usize = 6;
/// Grid points with `P < ZERO_DENSITY` are left out of the forward check.
pub const ZERO_DENSITY: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TauOptions {
    /// Midpoint-grid order per axis for quadrature.
    pub grid_order: usize,
    /// Largest Laurent product formed before falling back to quadrature.
    pub term_cap: usize,
}

impl Default for TauOptions {
    fn default() -> Self {
        TauOptions {
            grid_order: DEFAULT_GRID_ORDER,
            term_cap: term_cap(),
        }
    }
}

impl TauOptions {
    pub fn with_grid_order(grid_order: usize) -> Self {
        TauOptions {
            grid_order,
            ..Self::default()
        }
    }
}

/// A trigonometric polynomial test function with exact coefficients.
pub type TrigTestFunction = LaurentPoly;

pub fn trig_monomial(exp: Vec<i64>) -> TrigTestFunction {
    LaurentPoly::monomial(exp, GaussRat::one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Quadrature,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauValue {
    pub value: Complex64,
    #[serde(skip)]
    pub exact: Option<GaussRat>,
    pub method: Method,
    /// Grid order when quadrature was used.
    pub grid_order: Option<usize>,
}

impl TauValue {
    fn exact(v: GaussRat) -> Self {
        TauValue {
            value: v.to_complex(),
            exact: Some(v),
            method: Method::Exact,
            grid_order: None,
        }
    }

    fn quadrature(value: Complex64, order: usize) -> Self {
        TauValue {
            value,
            exact: None,
            method: Method::Quadrature,
            grid_order: Some(order),
        }
    }
}

/// `P = (N/c)|m|^2` as a Laurent polynomial.
pub fn density_poly<F: Filter + ?Sized>(filter: &F) -> Option<LaurentPoly> {
    let sq = filter.squared_modulus()?;
    let n = filter.spec().det();
    let c = filter.qmf_constant();
    Some(sq.scale(&GaussRat::real(BigRational::new(BigInt::from(n), BigInt::from(c)))))
}

fn density_f64<F: Filter + ?Sized>(filter: &F, x: &[f64]) -> f64 {
    filter.eval(x).norm_sqr() * filter.spec().det() as f64 / filter.qmf_constant() as f64
}

fn powers(spec: &DilationSpec, j: usize) -> Vec<i64> {
    spec.diag().iter().map(|&n| (n as i64).pow(j as u32)).collect()
}

/// `prod_{j in range} P(beta^j z)`, exactly.
fn density_product(spec: &DilationSpec, p: &LaurentPoly, range: std::ops::Range<usize>, cap: usize) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(spec.dim());
    for j in range {
        acc = acc.mul_capped(&p.dilate(&powers(spec, j)), cap)?;
    }
    Ok(acc)
}

fn beta_pow_f64(spec: &DilationSpec, x: &[f64], j: usize) -> Vec<f64> {
    x.iter()
        .zip(spec.diag())
        .map(|(xi, &n)| {
            let y = xi * (n as f64).powi(j as i32);
            y - y.floor()
        })
        .collect()
}

/// Midpoints `(i + 1/2)/order` in each coordinate, lexicographic.
fn grid_point(dim: usize, order: usize, mut idx: usize) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    for slot in x.iter_mut() {
        *slot = ((idx % order) as f64 + 0.5) / order as f64;
        idx /= order;
    }
    x
}

/// Midpoint rule over `T^d`; the reduction order is fixed, so results do not
/// depend on the thread count.
fn quadrature(dim: usize, order: usize, integrand: impl Fn(&[f64]) -> Option<Complex64> + Sync) -> (Complex64, usize) {
    let total = order.pow(dim as u32);
    let values: Vec<Option<Complex64>> = (0..total)
        .into_par_iter()
        .map(|i| integrand(&grid_point(dim, order, i)))
        .collect();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut excluded = 0;
    for v in values {
        match v {
            Some(v) => sum += v,
            None => excluded += 1,
        }
    }
    (sum / total as f64, excluded)
}

/// `int (f o pi_n) dtau`.
pub fn integrate_pushforward<F: Filter + ?Sized>(filter: &F, f: &TrigTestFunction, n: usize, opts: &TauOptions) -> Result<TauValue> {
    let grid_order = opts.grid_order;
    let spec = filter.spec();
    spec.check_dim(f.dim())?;
    if let Some(p) = density_poly(filter) {
        match density_product(spec, &p, 0..n, opts.term_cap).and_then(|prod| prod.mul_capped(f, opts.term_cap)) {
            Ok(g) => return Ok(TauValue::exact(g.constant_term())),
            Err(e @ Error::TermCap { .. }) => log::warn!("{e}; falling back to quadrature of order {grid_order}"),
            Err(e) => return Err(e),
        }
    }
    let (value, _) = quadrature(spec.dim(), grid_order, |x| {
        let mut v = f.eval(x);
        for j in 0..n {
            v *= density_f64(filter, &beta_pow_f64(spec, x, j));
        }
        Some(v)
    });
    Ok(TauValue::quadrature(value, grid_order))
}

/// The preimage form: the `N^n` points `w = e(A^{-n}(t + u))` are summed
/// explicitly. In exact mode each exponent `e` of
/// `G(w) = f(w) prod_{j<n} P(beta^j w)` contributes
/// `g_e (1/N^n) sum_u e(A^{-n} e . u)` times `int e(A^{-n} e . t) dt`; the
/// character sum is evaluated in `Q(zeta)`.
pub fn integrate_preimage_form<F: Filter + ?Sized>(filter: &F, f: &TrigTestFunction, n: usize, opts: &TauOptions) -> Result<TauValue> {
    let grid_order = opts.grid_order;
    let spec = filter.spec();
    spec.check_dim(f.dim())?;
    if n > PREIMAGE_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "the preimage form enumerates N^n words and is limited to n <= {PREIMAGE_MAX_N}"
        )));
    }
    let words = preimage_offsets(spec, n);
    if let Some(p) = density_poly(filter) {
        match density_product(spec, &p, 0..n, opts.term_cap).and_then(|prod| prod.mul_capped(f, opts.term_cap)) {
            Ok(g) => return preimage_exact(spec, &g, n, &words).map(TauValue::exact),
            Err(e @ Error::TermCap { .. }) => log::warn!("{e}; falling back to quadrature of order {grid_order}"),
            Err(e) => return Err(e),
        }
    }
    let scale: Vec<f64> = powers(spec, n).iter().map(|&p| p as f64).collect();
    let count = words.len() as f64;
    let (value, _) = quadrature(spec.dim(), grid_order, |t| {
        let mut acc = Complex64::new(0.0, 0.0);
        for u in &words {
            let w: Vec<f64> = t.iter().zip(u).zip(&scale).map(|((ti, &ui), s)| (ti + ui as f64) / s).collect();
            let mut v = f.eval(&w);
            for j in 0..n {
                v *= density_f64(filter, &beta_pow_f64(spec, &w, j));
            }
            acc += v;
        }
        Some(acc / count)
    });
    Ok(TauValue::quadrature(value, grid_order))
}

/// All `u` with `0 <= u_i < N_i^n`.
fn preimage_offsets(spec: &DilationSpec, n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &p in &powers(spec, n) {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..p).map(move |u| {
                    let mut w = v.clone();
                    w.push(u);
                    w
                })
            })
            .collect();
    }
    out
}

fn preimage_exact(spec: &DilationSpec, g: &LaurentPoly, n: usize, words: &[Vec<i64>]) -> Result<GaussRat> {
    let pw = powers(spec, n);
    let order = pw.iter().fold(1u64, |acc, &p| crate::cyclotomic::lcm_u64(acc, p as u64));
    let count = words.len() as i128;
    // The character sum only depends on e mod A^n.
    let mut cache: std::collections::HashMap<Vec<i64>, bool> = std::collections::HashMap::new();
    let mut acc = GaussRat::zero();
    for (e, coeff) in g.terms() {
        let residue: Vec<i64> = e.iter().zip(&pw).map(|(a, p)| a.rem_euclid(*p)).collect();
        let survives = match cache.get(&residue) {
            Some(&s) => s,
            None => {
                let mut sum = Cyclotomic::zero();
                for u in words {
                    let mut x: i64 = 0;
                    for ((r, ui), p) in residue.iter().zip(u).zip(&pw) {
                        x += r * ui * (order as i64 / p);
                    }
                    sum = sum.add(&Cyclotomic::root(order, x))?;
                }
                let value = sum.scale(1, count)?.to_rational()?;
                let s = match value {
                    Some(v) if v.is_integer() && v == BigRational::from_integer(BigInt::from(1)) => true,
                    Some(v) if v == BigRational::from_integer(BigInt::from(0)) => false,
                    _ => return Err(Error::InvalidArgument("character sum is neither 0 nor 1".into())),
                };
                cache.insert(residue.clone(), s);
                s
            }
        };
        // A surviving exponent is a multiple of A^n; it integrates to 1 only at 0.
        if survives && e.iter().all(|&a| a == 0) {
            acc = acc.add(coeff);
        }
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Inverse,
}

impl Direction {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fwd" | "forward" => Ok(Direction::Forward),
            "inv" | "inverse" => Ok(Direction::Inverse),
            other => Err(Error::Parse(format!("unknown direction {other:?}; expected fwd or inv"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RnReport {
    pub direction: Direction,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub residual: f64,
    /// Whether `LHS - RHS` vanished in exact arithmetic.
    pub exact_zero: Option<bool>,
    /// Grid points left out because the density vanished there.
    pub excluded_points: usize,
    pub grid_order: Option<usize>,
}

/// Checks `tau o sigma^{-1} << tau` with the densities
///
/// * inverse: `int (f o pi_n) o sigma^{-1} P(pi_0) dtau = int f o pi_n dtau`,
///   reduced to `int f(beta z) prod_{j=0}^{n} P(beta^j z) dz`;
/// * forward: `int (f o pi_n) o sigma / P(pi_1) dtau = int f o pi_n dtau`,
///   reduced to `int f(w) prod_{j=0}^{n} P(beta^j w) / P(beta^n w) dw`
///   over a midpoint grid.
pub fn radon_nikodym_residual<F: Filter + ?Sized>(
    filter: &F,
    f: &TrigTestFunction,
    n: usize,
    direction: Direction,
    opts: &TauOptions,
) -> Result<RnReport> {
    let grid_order = opts.grid_order;
    let spec = filter.spec();
    spec.check_dim(f.dim())?;
    let rhs = integrate_pushforward(filter, f, n, opts)?;
    match direction {
        Direction::Inverse => {
            if let Some(p) = density_poly(filter) {
                let lhs = density_product(spec, &p, 0..n + 1, opts.term_cap)
                    .and_then(|prod| prod.mul_capped(&f.dilate(&powers(spec, 1)), opts.term_cap))
                    .map(|g| g.constant_term());
                match lhs {
                    Ok(lhs) => {
                        let diff = lhs.sub(rhs.exact.as_ref().expect("exact filter gives exact pushforward"));
                        return Ok(RnReport {
                            direction,
                            lhs: lhs.to_complex(),
                            rhs: rhs.value,
                            residual: diff.modulus(),
                            exact_zero: Some(diff.is_zero()),
                            excluded_points: 0,
                            grid_order: None,
                        });
                    }
                    Err(e @ Error::TermCap { .. }) => log::warn!("{e}; falling back to quadrature"),
                    Err(e) => return Err(e),
                }
            }
            let (lhs, _) = quadrature(spec.dim(), grid_order, |x| {
                let mut v = f.eval(&beta_pow_f64(spec, x, 1));
                for j in 0..=n {
                    v *= density_f64(filter, &beta_pow_f64(spec, x, j));
                }
                Some(v)
            });
            Ok(RnReport {
                direction,
                lhs,
                rhs: rhs.value,
                residual: (lhs - rhs.value).norm(),
                exact_zero: None,
                excluded_points: 0,
                grid_order: Some(grid_order),
            })
        }
        Direction::Forward => {
            let (lhs, excluded) = quadrature(spec.dim(), grid_order, |x| {
                let denom = density_f64(filter, &beta_pow_f64(spec, x, n));
                if denom < ZERO_DENSITY {
                    return None;
                }
                let mut v = f.eval(x);
                for j in 0..=n {
                    v *= density_f64(filter, &beta_pow_f64(spec, x, j));
                }
                Some(v / denom)
            });
            Ok(RnReport {
                direction,
                lhs,
                rhs: rhs.value,
                residual: (lhs - rhs.value).norm(),
                exact_zero: None,
                excluded_points: excluded,
                grid_order: Some(grid_order),
            })
        }
    }
}

/// `int int f(pi_k Theta(z, a)) dnu_z(a) dz` by summing cylinder masses over
/// all depth-`k` words at each grid node.
pub fn integrate_disintegrated<F: Filter + ?Sized>(filter: &F, f: &TrigTestFunction, k: usize, grid_order: usize) -> Result<Complex64> {
    let spec = filter.spec();
    spec.check_dim(f.dim())?;
    let words = preimage_offsets(spec, k);
    let c = filter.qmf_constant() as f64;
    let (value, _) = quadrature(spec.dim(), grid_order, |t| {
        let mut acc = Complex64::new(0.0, 0.0);
        for u in &words {
            // The offset u = sum_{i<k} A^i a_i fixes the word; factors are
            // |m|^2/c at A^{-j}(t + (u mod A^j)).
            let mut mass = 1.0;
            let mut point = Vec::new();
            for j in 1..=k {
                let pj = powers(spec, j);
                point = t
                    .iter()
                    .zip(u)
                    .zip(&pj)
                    .map(|((ti, &ui), &p)| (ti + ui.rem_euclid(p) as f64) / p as f64)
                    .collect();
                mass *= filter.eval(&point).norm_sqr() / c;
            }
            if k == 0 {
                point = t.to_vec();
            }
            acc += f.eval(&point) * mass;
        }
        Some(acc)
    });
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::ratio;
    use crate::filters::{cantor3, haar2, haar3, sierpinski, BorelFilter};

    fn one(dim: usize) -> TrigTestFunction {
        LaurentPoly::one(dim)
    }

    #[test]
    fn pushforward_examples() {
        for f in [haar2(), haar3(), cantor3()] {
            for n in 0..5 {
                let v = integrate_pushforward(&f, &one(1), n, &TauOptions::with_grid_order(256)).unwrap();
                assert_eq!(v.exact, Some(GaussRat::one()));
            }
        }
        let v = integrate_pushforward(&haar2(), &trig_monomial(vec![1]), 1, &TauOptions::with_grid_order(256)).unwrap();
        assert_eq!(v.exact, Some(GaussRat::real(ratio(1, 2))));
        let v = integrate_pushforward(&sierpinski(), &one(2), 2, &TauOptions::with_grid_order(64)).unwrap();
        assert_eq!(v.exact, Some(GaussRat::real(ratio(9, 16))));
        let v = integrate_pushforward(&sierpinski().with_qmf_constant(3), &one(2), 2, &TauOptions::with_grid_order(64)).unwrap();
        assert_eq!(v.exact, Some(GaussRat::one()));
    }

    #[test]
    fn two_forms_agree() {
        for f in [haar2(), haar3(), cantor3()] {
            for v in -3..=3 {
                for n in 0..4 {
                    let g = trig_monomial(vec![v]);
                    let a = integrate_pushforward(&f, &g, n, &TauOptions::with_grid_order(256)).unwrap();
                    let b = integrate_preimage_form(&f, &g, n, &TauOptions::with_grid_order(256)).unwrap();
                    assert_eq!(a.exact, b.exact, "{} v={v} n={n}", f.label());
                }
            }
        }
        // haar2, f = z: (2^n - 1)/2^n
        for (n, q) in [(1usize, 2i64), (2, 4), (3, 8)] {
            let b = integrate_preimage_form(&haar2(), &trig_monomial(vec![1]), n, &TauOptions::with_grid_order(256)).unwrap();
            assert_eq!(b.exact, Some(GaussRat::real(ratio(q - 1, q))));
        }
    }

    #[test]
    fn float_paths_match_exact() {
        let borel = BorelFilter::new(DilationSpec::scalar(3).unwrap(), |t: &[f64]| cantor3().eval(t));
        for v in [-2i64, 0, 1, 3] {
            let g = trig_monomial(vec![v]);
            let exact = integrate_pushforward(&cantor3(), &g, 2, &TauOptions::with_grid_order(256)).unwrap().value;
            let a = integrate_pushforward(&borel, &g, 2, &TauOptions::with_grid_order(256)).unwrap();
            let b = integrate_preimage_form(&borel, &g, 2, &TauOptions::with_grid_order(64)).unwrap();
            assert_eq!(a.method, Method::Quadrature);
            assert!((a.value - exact).norm() < 1e-12);
            assert!((b.value - exact).norm() < 1e-12);
            let d = integrate_disintegrated(&cantor3(), &g, 2, 64).unwrap();
            assert!((d - exact).norm() < 1e-10);
        }
    }

    #[test]
    fn radon_nikodym_inverse_is_exact() {
        for f in [haar2(), cantor3()] {
            for k in -3..=3 {
                for n in 0..4 {
                    let r = radon_nikodym_residual(&f, &trig_monomial(vec![k]), n, Direction::Inverse, &TauOptions::with_grid_order(256)).unwrap();
                    assert_eq!(r.exact_zero, Some(true), "{} k={k} n={n}", f.label());
                }
            }
        }
    }

    #[test]
    fn radon_nikodym_forward_by_quadrature() {
        for f in [haar2(), cantor3()] {
            for k in [-2i64, 0, 3] {
                let r = radon_nikodym_residual(&f, &trig_monomial(vec![k]), 2, Direction::Forward, &TauOptions::with_grid_order(256)).unwrap();
                assert!(r.residual < 1e-6, "{} k={k}: {}", f.label(), r.residual);
            }
        }
        assert!(Direction::parse("sideways").is_err());
    }

    #[test]
    fn term_cap_falls_back_to_quadrature() {
        let opts = TauOptions {
            grid_order: 512,
            term_cap: 4,
        };
        let v = integrate_pushforward(&cantor3(), &one(1), 3, &opts).unwrap();
        assert_eq!(v.method, Method::Quadrature);
        assert!((v.value.re - 1.0).abs() < 1e-12);
    }
}
