//! Atoms of the fiber measures: partial products along a word, a heuristic
//! classifier, the atomless certificate `sup |m|^2 / N < 1`, the cycle set
//! `Z_m` and its candidate rationals, the scaling function `phi^`, and the
//! classical atomic decomposition with masses `|phi^(t + k)|^2`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::dilation::{ratio, DigitWord, DilationSpec, TorusPoint};
use crate::error::{Error, Result};
use crate::fiber::{cylinder_factors, cylinder_factors_exact};
use crate::filters::{scan_local_extrema, Filter};

/// Partial products below this count as decayed.
pub const DEFAULT_MASS_FLOOR: f64 = 1e-30;
/// Factors examined for the convergence-rate fit.
pub const DEFAULT_DECAY_WINDOW: usize = 16;

/// `k`-th entry (from 1) is the mass of the depth-`k` cylinder around `word`.
pub fn atom_partial_products<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, word: &DigitWord, n_terms: usize) -> Vec<f64> {
    let mut acc = 1.0;
    cylinder_factors(filter, t, word, n_terms)
        .into_iter()
        .map(|f| {
            acc *= f;
            acc
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AtomVerdict {
    ConvergesPositive,
    DecaysToZero,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassifyOptions {
    pub mass_floor: f64,
    pub decay_window: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            mass_floor: DEFAULT_MASS_FLOOR,
            decay_window: DEFAULT_DECAY_WINDOW,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AtomCandidate {
    pub base: TorusPoint,
    pub word: DigitWord,
    pub mass_partial_products: Vec<f64>,
    pub verdict: AtomVerdict,
    /// Last partial product, corrected by the fitted tail when the verdict is positive.
    pub limit_estimate: f64,
    /// Depth (from 1) of a factor that is exactly zero.
    pub zero_factor_at: Option<usize>,
    /// Some factor exceeded 1, i.e. `|m| > sqrt(c)` was seen.
    pub factor_above_one: bool,
    pub reason: String,
}

/// Heuristic atom test for the infinite product along `word`.
///
/// * `DecaysToZero`: a factor is exactly zero, a partial product falls below
///   the floor, or the filter has an atomless certificate.
/// * `ConvergesPositive`: over the last `decay_window` factors the
///   increments `|ln f_j|` are negligible, or shrink geometrically with a
///   summed tail below `1e-6`.
/// * `Inconclusive` otherwise.
pub fn classify_atom<F: Filter + ?Sized>(
    filter: &F,
    t: &TorusPoint,
    word: &DigitWord,
    n_terms: usize,
    options: ClassifyOptions,
) -> Result<AtomCandidate> {
    filter.spec().check_dim(t.dim())?;
    filter.spec().check_dim(word.dim())?;
    if options.decay_window < 4 || n_terms < options.decay_window {
        return Err(Error::InvalidArgument(format!(
            "need n_terms >= decay_window >= 4, got n_terms = {n_terms}, decay_window = {}",
            options.decay_window
        )));
    }
    let factors = cylinder_factors(filter, t, word, n_terms);
    let mut partial = Vec::with_capacity(n_terms);
    let mut acc = 1.0;
    for f in &factors {
        acc *= f;
        partial.push(acc);
    }
    let factor_above_one = factors.iter().any(|&f| f > 1.0 + 1e-12);
    if factor_above_one {
        log::warn!("a factor |m|^2/c above 1 was observed along {word}");
    }
    let zero_factor_at = find_zero_factor(filter, t, word, &factors);
    let last = *partial.last().expect("n_terms >= 4");
    let candidate = |verdict, limit_estimate, reason: String| AtomCandidate {
        base: t.clone(),
        word: word.clone(),
        mass_partial_products: partial.clone(),
        verdict,
        limit_estimate,
        zero_factor_at,
        factor_above_one,
        reason,
    };

    if let Some(j) = zero_factor_at {
        return Ok(candidate(AtomVerdict::DecaysToZero, 0.0, format!("factor {j} is exactly zero")));
    }
    if let Some(cert) = atomless_certificate(filter) {
        return Ok(candidate(
            AtomVerdict::DecaysToZero,
            0.0,
            format!("every factor is at most {}", cert.bound),
        ));
    }
    if let Some(j) = partial.iter().position(|&p| p < options.mass_floor) {
        return Ok(candidate(
            AtomVerdict::DecaysToZero,
            0.0,
            format!("partial product below {} at depth {}", options.mass_floor, j + 1),
        ));
    }
    let window: Vec<f64> = factors[n_terms - options.decay_window..]
        .iter()
        .map(|f| f.ln().abs())
        .collect();
    let negligible = 1e-14;
    if window.iter().all(|&d| d < negligible) {
        return Ok(candidate(AtomVerdict::ConvergesPositive, last, "factors equal 1 to working precision".into()));
    }
    let ratio = window
        .windows(2)
        .filter(|w| w[0] >= negligible)
        .map(|w| w[1] / w[0])
        .fold(0.0f64, f64::max);
    let tail_start = *window.last().expect("window >= 4");
    if ratio < 1.0 {
        let tail = tail_start * ratio / (1.0 - ratio);
        if tail < 1e-6 {
            return Ok(candidate(
                AtomVerdict::ConvergesPositive,
                last * (-tail).exp(),
                format!("log increments shrink geometrically (ratio {ratio:.3}, tail {tail:.2e})"),
            ));
        }
    }
    Ok(candidate(
        AtomVerdict::Inconclusive,
        last,
        format!("no decay to the floor and no geometric convergence (ratio {ratio:.3})"),
    ))
}

/// Confirms tiny float factors exactly when possible.
fn find_zero_factor<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, word: &DigitWord, factors: &[f64]) -> Option<usize> {
    let suspect = factors.iter().position(|&f| f < 1e-20)?;
    if factors[suspect] == 0.0 {
        return Some(suspect + 1);
    }
    let exact = cylinder_factors_exact(filter, t, word, suspect + 1).ok()?;
    exact[suspect].is_zero().ok()?.then_some(suspect + 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomlessCertificate {
    /// `b^2 / c` with `b = sum |c_v|`.
    pub bound: f64,
    #[serde(skip)]
    pub exact: Option<BigRational>,
}

/// `Some(b^2 / c)` when the coefficient bound `b` satisfies `b^2 < c`: every
/// factor of every cylinder mass is then at most `b^2 / c < 1`, so no fiber
/// measure has atoms.
pub fn atomless_certificate<F: Filter + ?Sized>(filter: &F) -> Option<AtomlessCertificate> {
    let c = filter.qmf_constant();
    if let Some(b2) = filter.coefficient_bound_squared_exact() {
        let bound = b2 / BigRational::from_integer(BigInt::from(c));
        if bound < ratio(1, 1) {
            let f = crate::dilation::rational_to_f64(&bound);
            return Some(AtomlessCertificate {
                bound: f,
                exact: Some(bound),
            });
        }
        return None;
    }
    let b = filter.coefficient_bound()?;
    let bound = b * b / c as f64;
    (bound < 1.0 - 1e-12).then_some(AtomlessCertificate { bound, exact: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct ZmPoint {
    pub t: Vec<f64>,
    /// `|m(e(t))|^2` at the refined point.
    pub value: f64,
    /// A small-denominator rational near `t` at which `|m|^2 = c` holds exactly.
    #[serde(skip)]
    pub exact: Option<Vec<BigRational>>,
}

/// Points where `|m|^2` reaches `c`: grid local maxima of `|m|^2`, refined,
/// kept when within `tolerance` of `c`.
pub fn find_zm<F: Filter + ?Sized>(filter: &F, grid_resolution: usize, tolerance: f64) -> Result<Vec<ZmPoint>> {
    if grid_resolution < 2 {
        return Err(Error::InvalidArgument("grid resolution must be at least 2".into()));
    }
    let c = filter.qmf_constant() as f64;
    let hits = scan_local_extrema(filter, grid_resolution, |v| v.norm_sqr(), true);
    Ok(hits
        .into_iter()
        .filter(|(_, v)| (v - c).abs() < tolerance)
        .map(|(t, value)| {
            let exact = confirm_exact(filter, &t);
            let t = match &exact {
                Some(q) => q.iter().map(crate::dilation::rational_to_f64).collect(),
                None => t,
            };
            ZmPoint { t, value, exact }
        })
        .collect())
}

fn confirm_exact<F: Filter + ?Sized>(filter: &F, t: &[f64]) -> Option<Vec<BigRational>> {
    let sq = filter.squared_modulus()?;
    let guess: Vec<BigRational> = t
        .iter()
        .map(|&x| nearest_rational(x, 1000, 1e-6).map(|q| crate::dilation::frac(&q)))
        .collect::<Option<_>>()?;
    let v = sq.eval_exact(&guess).ok()?;
    let diff = v.sub(&Cyclotomic::integer(filter.qmf_constant() as i128)).ok()?;
    diff.is_zero().ok()?.then_some(guess)
}

/// Best rational `p/q` with `q <= max_den` within `tol` of `x`, by continued fractions.
pub fn nearest_rational(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = a as i64;
        let h2 = ai.checked_mul(h1)?.checked_add(h0)?;
        let k2 = ai.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (x - h1 as f64 / k1 as f64).abs() < tol {
            return Some(ratio(h1, k1));
        }
        let frac = r - a;
        if frac < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    (k1 > 0 && (x - h1 as f64 / k1 as f64).abs() < tol).then(|| ratio(h1, k1))
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleReport {
    pub l: usize,
    pub q: u64,
    #[serde(skip)]
    pub rationals: Vec<BigRational>,
    #[serde(skip)]
    pub in_zm: Vec<BigRational>,
}

/// For `l = 1..=l_max`, the rationals `p/(N^l - 1)`, `0 <= p < N^l - 1`
/// (with `q = 1` giving just 0). One dimension only.
pub fn candidate_cycle_rationals(spec: &DilationSpec, l_max: usize) -> Result<Vec<CycleReport>> {
    if spec.dim() != 1 {
        return Err(Error::InvalidArgument(
            "cycle candidates are enumerated per coordinate; pass a one-dimensional dilation".into(),
        ));
    }
    if l_max == 0 {
        return Err(Error::InvalidArgument("l_max must be at least 1".into()));
    }
    let n = spec.diag()[0] as u64;
    let mut out = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let q = n
            .checked_pow(l as u32)
            .and_then(|p| p.checked_sub(1))
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::InvalidArgument(format!("N^{l} - 1 is too large to enumerate")))?;
        let rationals = (0..q.max(1))
            .map(|p| BigRational::new(BigInt::from(p), BigInt::from(q.max(1))))
            .collect();
        out.push(CycleReport {
            l,
            q,
            rationals,
            in_zm: Vec::new(),
        });
    }
    Ok(out)
}

/// Fill `in_zm`: candidates where `|m|^2 = c`, exactly for exact filters and
/// within `tolerance` otherwise.
pub fn match_cycles<F: Filter + ?Sized>(filter: &F, reports: &mut [CycleReport], tolerance: f64) -> Result<()> {
    let c = filter.qmf_constant();
    for report in reports.iter_mut() {
        report.in_zm = report
            .rationals
            .par_iter()
            .map(|r| -> Result<Option<BigRational>> {
                let hit = match filter.squared_modulus() {
                    Some(sq) => sq.eval_exact(std::slice::from_ref(r))?.sub(&Cyclotomic::integer(c as i128))?.is_zero()?,
                    None => {
                        let x = crate::dilation::rational_to_f64(r);
                        (filter.eval(&[x]).norm_sqr() - c as f64).abs() < tolerance
                    }
                };
                Ok(hit.then(|| r.clone()))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingFnValue {
    pub t: Vec<f64>,
    pub n_terms: usize,
    pub value: Complex64,
    pub tail_bound: Option<f64>,
}

/// `prod_{j=1}^{n} m(e(A^{-j} t)) / sqrt(N)` for real `t`. The tail bound uses
/// `|m(e(s)) - sqrt N| <= L |s|` and applies only when `m(1) = sqrt N`.
pub fn scaling_fn_hat<F: Filter + ?Sized>(filter: &F, t: &[f64], n_terms: usize) -> Result<ScalingFnValue> {
    let spec = filter.spec();
    spec.check_dim(t.len())?;
    if n_terms == 0 {
        return Err(Error::InvalidArgument("n_terms must be at least 1".into()));
    }
    let sqrt_n = (spec.det() as f64).sqrt();
    let mut x = t.to_vec();
    let mut value = Complex64::new(1.0, 0.0);
    for _ in 0..n_terms {
        for (xi, &n) in x.iter_mut().zip(spec.diag()) {
            *xi /= n as f64;
        }
        value *= filter.eval(&x) / sqrt_n;
    }
    let lowpass = (filter.eval(&vec![0.0; t.len()]) - sqrt_n).norm() < 1e-12;
    let tail_bound = match (lowpass, filter.lipschitz_at_one()) {
        (true, Some(l)) => {
            let n_min = *spec.diag().iter().min().expect("dim >= 1") as f64;
            let norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let eps = l / sqrt_n * norm / (n_min - 1.0);
            Some(value.norm() * eps.exp_m1())
        }
        _ => None,
    };
    Ok(ScalingFnValue {
        t: t.to_vec(),
        n_terms,
        value,
        tail_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassicalAtom {
    pub k: Vec<i64>,
    #[serde(serialize_with = "serialize_display")]
    pub word: DigitWord,
    /// Product along `word(k)` in the fiber over `e(t)`.
    pub mass: f64,
    /// `|phi^(t + k)|^2` from the scaling-function product.
    pub phi_hat_sq: f64,
}

fn serialize_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// Integer vectors with every coordinate in `[-radius, radius]`, lexicographic.
pub fn integer_box(dim: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-radius..=radius).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// Fewest digits that hold every coordinate of `k` (complement form for negatives).
pub fn digits_for(spec: &DilationSpec, k: &[i64]) -> usize {
    k.iter()
        .zip(spec.diag())
        .map(|(&ki, &n)| {
            let (mut depth, mut cap) = (0usize, 1i128);
            let need = if ki >= 0 { ki as i128 + 1 } else { -(ki as i128) };
            while cap < need {
                cap *= n as i128;
                depth += 1;
            }
            depth
        })
        .max()
        .unwrap_or(0)
}

/// Atom masses at the words `word(k)` for `k` in the given set, each
/// alongside `|phi^(t + k)|^2`. Requires `m(1) = sqrt N`.
pub fn classical_atom_decomposition<F: Filter + ?Sized>(
    filter: &F,
    t: &TorusPoint,
    ks: &[Vec<i64>],
    n_terms: usize,
) -> Result<Vec<ClassicalAtom>> {
    let spec = filter.spec();
    spec.check_dim(t.dim())?;
    let sqrt_n = (spec.det() as f64).sqrt();
    let m1 = filter.eval(&vec![0.0; spec.dim()]);
    if (m1 - sqrt_n).norm() > 1e-9 {
        return Err(Error::InvalidArgument(format!(
            "the classical decomposition needs m(1) = sqrt N = {sqrt_n}, found {m1}"
        )));
    }
    let base = t.to_f64();
    ks.par_iter()
        .map(|k| {
            spec.check_dim(k.len())?;
            let word = spec.integer_to_word(k, digits_for(spec, k))?;
            let mass = *atom_partial_products(filter, t, &word, n_terms).last().unwrap_or(&1.0);
            let shifted: Vec<f64> = base.iter().zip(k).map(|(x, &ki)| x + ki as f64).collect();
            let phi = scaling_fn_hat(filter, &shifted, n_terms)?;
            Ok(ClassicalAtom {
                k: k.clone(),
                word,
                mass,
                phi_hat_sq: phi.value.norm_sqr(),
            })
        })
        .collect()
}

/// `|(e(t) - 1) / (2 pi i t)|^2`, the Haar closed form, with value 1 at `t = 0`.
pub fn haar_phi_hat_sq(t: f64) -> f64 {
    if t == 0.0 {
        return 1.0;
    }
    let s = (std::f64::consts::PI * t).sin() / (std::f64::consts::PI * t);
    s * s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::{cantor3, haar2, haar3, sierpinski};

    fn word(spec: &DilationSpec, prefix: &[u32], period: Option<&[u32]>) -> DigitWord {
        DigitWord::from_scalars(spec, prefix, period).unwrap()
    }

    #[test]
    fn partial_product_examples() {
        let h = haar2();
        let p = atom_partial_products(&h, &TorusPoint::zero(1), &word(h.spec(), &[], Some(&[0])), 10);
        assert!(p.iter().all(|&x| (x - 1.0).abs() < 1e-13));
        let c = cantor3();
        let p = atom_partial_products(&c, &TorusPoint::zero(1), &word(c.spec(), &[], Some(&[0])), 10);
        for (k, x) in p.iter().enumerate() {
            assert!((x - (2f64 / 3.0).powi(k as i32 + 1)).abs() < 1e-14);
        }
        let p = atom_partial_products(&h, &TorusPoint::zero(1), &word(h.spec(), &[1], Some(&[0])), 6);
        assert!(p.iter().all(|&x| x < 1e-30));
    }

    #[test]
    fn classify_examples() {
        let h = haar2();
        let opts = ClassifyOptions::default();
        let a = classify_atom(&h, &TorusPoint::zero(1), &word(h.spec(), &[], Some(&[0])), 40, opts).unwrap();
        assert_eq!(a.verdict, AtomVerdict::ConvergesPositive);
        assert!((a.limit_estimate - 1.0).abs() < 1e-12);

        let a = classify_atom(&h, &TorusPoint::zero(1), &word(h.spec(), &[1], Some(&[0])), 40, opts).unwrap();
        assert_eq!(a.verdict, AtomVerdict::DecaysToZero);
        assert_eq!(a.zero_factor_at, Some(1));

        let a = classify_atom(&h, &TorusPoint::from_ratios(&[(3, 10)]), &word(h.spec(), &[1], Some(&[0])), 40, opts).unwrap();
        assert_eq!(a.verdict, AtomVerdict::ConvergesPositive);
        assert!((a.limit_estimate - haar_phi_hat_sq(1.3)).abs() < 1e-8);

        let c = cantor3();
        for (t, w) in [((0, 1), word(c.spec(), &[], Some(&[0]))), ((2, 7), word(c.spec(), &[2, 1], Some(&[0, 2])))] {
            let a = classify_atom(&c, &TorusPoint::from_ratios(&[t]), &w, 20, opts).unwrap();
            assert_eq!(a.verdict, AtomVerdict::DecaysToZero);
        }
        assert!(classify_atom(&c, &TorusPoint::zero(1), &word(c.spec(), &[], Some(&[0])), 10, opts).is_err());
    }

    #[test]
    fn certificates() {
        assert_eq!(atomless_certificate(&cantor3()).unwrap().exact, Some(ratio(2, 3)));
        assert_eq!(atomless_certificate(&sierpinski()).unwrap().exact, Some(ratio(9, 16)));
        assert!(atomless_certificate(&haar2()).is_none());
        assert!(atomless_certificate(&haar3()).is_none());
        // with the K = 3 constant the bound is 3/4
        assert_eq!(atomless_certificate(&sierpinski().with_qmf_constant(3)).unwrap().exact, Some(ratio(3, 4)));
    }

    #[test]
    fn zm_examples() {
        for f in [haar2(), haar3()] {
            let z = find_zm(&f, 64, 1e-6).unwrap();
            assert_eq!(z.len(), 1, "{}", f.label());
            assert!(z[0].t[0].abs() < 1e-6);
            assert_eq!(z[0].exact, Some(vec![ratio(0, 1)]));
        }
        assert!(find_zm(&cantor3(), 64, 1e-6).unwrap().is_empty());
    }

    #[test]
    fn cycle_candidates() {
        let s2 = DilationSpec::scalar(2).unwrap();
        let r = candidate_cycle_rationals(&s2, 2).unwrap();
        assert_eq!(r[0].rationals, vec![ratio(0, 1)]);
        assert_eq!(r[1].rationals, vec![ratio(0, 1), ratio(1, 3), ratio(2, 3)]);
        let s3 = DilationSpec::scalar(3).unwrap();
        let mut r = candidate_cycle_rationals(&s3, 1).unwrap();
        assert_eq!(r[0].rationals, vec![ratio(0, 1), ratio(1, 2)]);
        match_cycles(&haar3(), &mut r, 1e-9).unwrap();
        assert_eq!(r[0].in_zm, vec![ratio(0, 1)]);
        assert!(candidate_cycle_rationals(&DilationSpec::new(vec![2, 2]).unwrap(), 1).is_err());
    }

    #[test]
    fn scaling_function_examples() {
        let h = haar2();
        for n in [1, 5, 40] {
            let v = scaling_fn_hat(&h, &[0.0], n).unwrap();
            assert!((v.value - Complex64::new(1.0, 0.0)).norm() < 1e-13);
        }
        for t in [0.3, 1.0, -2.7, 5.5] {
            let v = scaling_fn_hat(&h, &[t], 40).unwrap();
            let closed = (Complex64::from_polar(1.0, std::f64::consts::TAU * t) - 1.0) / Complex64::new(0.0, std::f64::consts::TAU * t);
            assert!((v.value - closed).norm() < 1e-8, "t = {t}");
            assert!(v.tail_bound.unwrap() < 1e-8);
        }
        assert!(scaling_fn_hat(&cantor3(), &[0.4], 10).unwrap().tail_bound.is_none());
    }

    #[test]
    fn classical_examples() {
        let h = haar2();
        let ks = integer_box(1, 3);
        let atoms = classical_atom_decomposition(&h, &TorusPoint::zero(1), &ks, 40).unwrap();
        for a in &atoms {
            let expect = if a.k[0] == 0 { 1.0 } else { 0.0 };
            assert!((a.mass - expect).abs() < 1e-12, "k = {:?}", a.k);
        }
        for f in [haar2(), haar3()] {
            let atoms = classical_atom_decomposition(&f, &TorusPoint::from_ratios(&[(3, 10)]), &integer_box(1, 100), 40).unwrap();
            let total: f64 = atoms.iter().map(|a| a.mass).sum();
            assert!((total - 1.0).abs() < 5e-3, "{}: {total}", f.label());
            for a in &atoms {
                assert!((a.mass - a.phi_hat_sq).abs() < 1e-10);
            }
        }
        assert!(classical_atom_decomposition(&cantor3(), &TorusPoint::zero(1), &ks, 40).is_err());
    }

    #[test]
    fn digit_counts() {
        let s2 = DilationSpec::scalar(2).unwrap();
        assert_eq!(digits_for(&s2, &[0]), 0);
        assert_eq!(digits_for(&s2, &[1]), 1);
        assert_eq!(digits_for(&s2, &[2]), 2);
        assert_eq!(digits_for(&s2, &[-1]), 0);
        assert_eq!(digits_for(&s2, &[-2]), 1);
        assert_eq!(digits_for(&s2, &[-3]), 2);
        assert_eq!(nearest_rational(0.3333333333, 100, 1e-6), Some(ratio(1, 3)));
    }
}
