//! The fiber measures `nu_z`: cylinder masses
//! `nu_z([a_0 ... a_{k-1}]) = prod_{j=1}^k |m(e(A^{-j}(t + sum_{i<j} A^i a_i)))|^2 / c`,
//! refinement checks, total mass, and the random-walk sampler.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::dilation::{Digit, DigitWord, DilationSpec, TorusPoint};
use crate::error::{Error, Result};
use crate::filters::Filter;

/// Largest depth accepted by the brute-force total.
pub const BRUTE_FORCE_MAX_DEPTH: usize = 8;

/// Children whose factor falls below this are treated as zero by the sampler.
const ZERO_FACTOR: f64 = 1e-15;

/// The cylinder of words starting with `prefix`, in the fiber over `e(base)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderSet {
    pub base: TorusPoint,
    pub prefix: DigitWord,
}

impl CylinderSet {
    pub fn new(spec: &DilationSpec, base: TorusPoint, prefix: DigitWord) -> Result<Self> {
        spec.check_dim(base.dim())?;
        spec.check_dim(prefix.dim())?;
        if prefix.period().is_some() {
            return Err(Error::InvalidArgument("a cylinder prefix must be a finite word".into()));
        }
        Ok(CylinderSet { base, prefix })
    }

    pub fn depth(&self) -> usize {
        self.prefix.depth()
    }
}

/// A mass with its float value and, when computable, its exact value.
#[derive(Clone, Debug)]
pub struct MassValue {
    pub value: f64,
    pub exact: Option<Cyclotomic>,
    pub depth: usize,
}

impl MassValue {
    /// The exact value as a rational, when it is one.
    pub fn rational(&self) -> Option<BigRational> {
        self.exact.as_ref().and_then(|c| c.to_rational().ok().flatten())
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact.as_ref().is_some_and(|c| c.is_zero().unwrap_or(false))
    }
}

fn big(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// The arguments `t_j = A^{-j}(t + sum_{i<j} A^i a_i)`, `j = 1..=k`, exactly.
pub fn exact_arguments(spec: &DilationSpec, t: &[BigRational], word: &DigitWord, k: usize) -> Vec<Vec<BigRational>> {
    let mut x: Vec<BigRational> = t.to_vec();
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        x = x
            .iter()
            .enumerate()
            .map(|(i, xi)| (xi + big(word.digit_coord(j, i))) / big(spec.diag()[i]))
            .collect();
        out.push(x.clone());
    }
    out
}

/// The same arguments by the recursion `x <- (x + a)/N`, which contracts
/// rounding error instead of accumulating it.
pub fn float_arguments(spec: &DilationSpec, t: &[f64], word: &DigitWord, k: usize) -> Vec<Vec<f64>> {
    let mut x = t.to_vec();
    let mut out = Vec::with_capacity(k);
    for j in 0..k {
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (*xi + word.digit_coord(j, i) as f64) / spec.diag()[i] as f64;
        }
        out.push(x.clone());
    }
    out
}

fn arguments_f64<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, word: &DigitWord, k: usize) -> Vec<Vec<f64>> {
    match t.exact_coords() {
        Some(xs) => exact_arguments(filter.spec(), xs, word, k)
            .iter()
            .map(|v| v.iter().map(crate::dilation::rational_to_f64).collect())
            .collect(),
        None => float_arguments(filter.spec(), &t.to_f64(), word, k),
    }
}

/// The factors `|m(e(t_j))|^2 / c`, `j = 1..=k`, for the first `k` digits of `word`.
pub fn cylinder_factors<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, word: &DigitWord, k: usize) -> Vec<f64> {
    let c = filter.qmf_constant() as f64;
    arguments_f64(filter, t, word, k)
        .iter()
        .map(|x| filter.eval(x).norm_sqr() / c)
        .collect()
}

/// The same factors in `Q(zeta_M)`, unreduced.
pub fn cylinder_factors_exact<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, word: &DigitWord, k: usize) -> Result<Vec<Cyclotomic>> {
    let sq = filter
        .squared_modulus()
        .ok_or(Error::NotExact("the filter has float coefficients"))?;
    let xs = t.exact_coords().ok_or(Error::NotExact("the base point is a float"))?;
    let c = filter.qmf_constant() as i128;
    exact_arguments(filter.spec(), xs, word, k)
        .iter()
        .map(|x| sq.eval_exact(x)?.scale(1, c))
        .collect()
}

fn exact_product(factors: &[Cyclotomic]) -> Result<Cyclotomic> {
    let mut acc = Cyclotomic::one();
    for f in factors {
        acc = acc.mul(f)?;
    }
    Ok(acc)
}

fn exact_if_possible<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, word: &DigitWord, k: usize) -> Option<Cyclotomic> {
    if filter.squared_modulus().is_none() || !t.is_exact() {
        return None;
    }
    match cylinder_factors_exact(filter, t, word, k).and_then(|f| exact_product(&f)) {
        Ok(v) => Some(v),
        Err(e) => {
            log::warn!("exact cylinder mass unavailable, float only: {e}");
            None
        }
    }
}

/// `nu_z` of a cylinder; exact when the filter and base are exact.
pub fn cylinder_mass<F: Filter + ?Sized>(filter: &F, c: &CylinderSet) -> MassValue {
    let k = c.depth();
    let value = cylinder_factors(filter, &c.base, &c.prefix, k).iter().product();
    let exact = exact_if_possible(filter, &c.base, &c.prefix, k);
    MassValue { value, exact, depth: k }
}

/// Masses of the `N` one-digit extensions of a cylinder, in alphabet order.
pub fn children_masses<F: Filter + ?Sized>(filter: &F, c: &CylinderSet) -> Vec<(Digit, MassValue)> {
    let spec = filter.spec();
    let k = c.depth();
    let parent_float: f64 = cylinder_factors(filter, &c.base, &c.prefix, k).iter().product();
    let parent_exact = exact_if_possible(filter, &c.base, &c.prefix, k);
    spec.alphabet()
        .into_iter()
        .map(|a| {
            let child = DigitWord::finite(spec, c.prefix.prefix().iter().cloned().chain([a.clone()]).collect())
                .expect("alphabet digits are valid");
            let last = cylinder_factors(filter, &c.base, &child, k + 1)[k];
            let exact = parent_exact.as_ref().and_then(|p| {
                let f = cylinder_factors_exact(filter, &c.base, &child, k + 1).ok()?.pop()?;
                p.mul(&f).ok()
            });
            (
                a,
                MassValue {
                    value: parent_float * last,
                    exact,
                    depth: k + 1,
                },
            )
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TotalMode {
    /// One preimage sum per level along a single branch.
    Telescoped,
    /// Sum over all `N^k` cylinders.
    BruteForce,
}

#[derive(Clone, Debug)]
pub struct TotalMass {
    pub mass: MassValue,
    pub mode: TotalMode,
    /// Largest `|sum_a |m|^2 - c|` seen among the preimage sums used.
    pub max_qmf_residual: f64,
}

/// `sum` of all depth-`k` cylinder masses.
///
/// `Telescoped` multiplies the level sums `(1/c) sum_a |m(e((x + a)/N))|^2`
/// along the zero branch, which equals the total whenever those sums do not
/// depend on the branch (as for any QMF, or any filter with a constant
/// preimage sum). `BruteForce` enumerates every cylinder and is limited to
/// `k <= 8`.
pub fn total_mass_at_depth<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, k: usize, mode: TotalMode) -> Result<TotalMass> {
    filter.spec().check_dim(t.dim())?;
    match mode {
        TotalMode::Telescoped => telescoped_total(filter, t, k),
        TotalMode::BruteForce => brute_force_total(filter, t, k),
    }
}

fn telescoped_total<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, k: usize) -> Result<TotalMass> {
    let spec = filter.spec();
    let c = filter.qmf_constant() as f64;
    let alphabet = spec.alphabet();
    let mut value = 1.0;
    let mut residual: f64 = 0.0;
    let mut exact = (filter.squared_modulus().is_some() && t.is_exact()).then(Cyclotomic::one);
    for j in 0..k {
        // Level sum over the children of the zero-branch node at depth j.
        let mut level = 0.0;
        let mut level_exact = exact.as_ref().map(|_| Cyclotomic::zero());
        for a in &alphabet {
            let word = DigitWord::finite(spec, (0..j).map(|_| Digit::zero(spec.dim())).chain([a.clone()]).collect())?;
            level += cylinder_factors(filter, t, &word, j + 1)[j];
            if let Some(acc) = level_exact.as_mut() {
                match cylinder_factors_exact(filter, t, &word, j + 1).and_then(|f| acc.add(&f[j])) {
                    Ok(v) => *acc = v,
                    Err(e) => {
                        log::warn!("exact telescoped total unavailable: {e}");
                        level_exact = None;
                    }
                }
            }
        }
        residual = residual.max((level * c - c).abs());
        value *= level;
        exact = match (exact, level_exact) {
            (Some(e), Some(l)) => e.mul(&l.reduce()?).and_then(|v| v.reduce()).ok(),
            _ => None,
        };
    }
    Ok(TotalMass {
        mass: MassValue { value, exact, depth: k },
        mode: TotalMode::Telescoped,
        max_qmf_residual: residual,
    })
}

fn brute_force_total<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, k: usize) -> Result<TotalMass> {
    if k > BRUTE_FORCE_MAX_DEPTH {
        return Err(Error::InvalidArgument(format!(
            "brute-force total is limited to depth {BRUTE_FORCE_MAX_DEPTH}, got {k}"
        )));
    }
    let spec = filter.spec();
    let alphabet = spec.alphabet();
    let want_exact = filter.squared_modulus().is_some() && t.is_exact();
    let c = filter.qmf_constant() as f64;

    // Per-level factors depend on the whole prefix, so walk the tree.
    struct Walk<'a, F: Filter + ?Sized> {
        filter: &'a F,
        spec: &'a DilationSpec,
        alphabet: &'a [Digit],
        t: &'a TorusPoint,
        k: usize,
        want_exact: bool,
    }
    impl<F: Filter + ?Sized> Walk<'_, F> {
        fn go(&self, prefix: &mut Vec<Digit>, value: f64, exact: Option<Cyclotomic>, out: &mut (f64, Option<Cyclotomic>, f64)) -> Result<()> {
            let j = prefix.len();
            if j == self.k {
                out.0 += value;
                if let (Some(acc), Some(e)) = (out.1.as_mut(), exact) {
                    *acc = acc.add(&e)?;
                }
                return Ok(());
            }
            let mut level = 0.0;
            for a in self.alphabet {
                prefix.push(a.clone());
                let word = DigitWord::finite(self.spec, prefix.clone())?;
                let f = cylinder_factors(self.filter, self.t, &word, j + 1)[j];
                level += f;
                let next_exact = match (&exact, self.want_exact) {
                    (Some(e), true) => {
                        let fe = cylinder_factors_exact(self.filter, self.t, &word, j + 1)?.pop().expect("k >= 1");
                        Some(e.mul(&fe)?)
                    }
                    _ => None,
                };
                self.go(prefix, value * f, next_exact, out)?;
                prefix.pop();
            }
            let c = self.filter.qmf_constant() as f64;
            out.2 = out.2.max((level * c - c).abs());
            Ok(())
        }
    }
    let walk = Walk {
        filter,
        spec,
        alphabet: &alphabet,
        t,
        k,
        want_exact,
    };
    let start = if want_exact { Some(Cyclotomic::one()) } else { None };
    let (value, exact, residual) = if k == 0 {
        (1.0, start, 0.0)
    } else {
        let parts: Vec<Result<(f64, Option<Cyclotomic>, f64)>> = alphabet
            .par_iter()
            .map(|a| {
                let word = DigitWord::finite(spec, vec![a.clone()])?;
                let f = cylinder_factors(filter, t, &word, 1)[0];
                let fe = if want_exact {
                    Some(cylinder_factors_exact(filter, t, &word, 1)?.remove(0))
                } else {
                    None
                };
                let mut out = (0.0, want_exact.then(Cyclotomic::zero), 0.0);
                walk.go(&mut vec![a.clone()], f, fe, &mut out)?;
                Ok(out)
            })
            .collect();
        let mut value = 0.0;
        let mut exact = want_exact.then(Cyclotomic::zero);
        let mut residual: f64 = 0.0;
        for part in parts {
            let (v, e, r) = part?;
            value += v;
            residual = residual.max(r);
            if let (Some(acc), Some(e)) = (exact.as_mut(), e) {
                *acc = acc.add(&e)?;
            }
        }
        let top: f64 = alphabet
            .iter()
            .map(|a| cylinder_factors(filter, t, &DigitWord::finite(spec, vec![a.clone()]).expect("valid digit"), 1)[0])
            .sum();
        (value, exact, residual.max((top * c - c).abs()))
    };
    let exact = match exact {
        Some(e) => Some(e.reduce()?),
        None => None,
    };
    Ok(TotalMass {
        mass: MassValue { value, exact, depth: k },
        mode: TotalMode::BruteForce,
        max_qmf_residual: residual,
    })
}

/// A sampled word together with sampler diagnostics.
#[derive(Clone, Debug)]
pub struct SampledWord {
    pub word: DigitWord,
    /// Whether some level's children masses did not sum to the parent and
    /// were renormalized.
    pub renormalized: bool,
}

/// Sequential sampler for `nu_z`: each digit is drawn with probability
/// child/parent. Owns its generator; seed it explicitly.
pub struct Sampler<'a, F: Filter + ?Sized> {
    filter: &'a F,
    base: Vec<f64>,
    alphabet: Vec<Digit>,
    rng: ChaCha8Rng,
}

impl<'a, F: Filter + ?Sized> Sampler<'a, F> {
    pub fn new(filter: &'a F, t: &TorusPoint, seed: u64) -> Result<Self> {
        filter.spec().check_dim(t.dim())?;
        Ok(Sampler {
            filter,
            base: t.to_f64(),
            alphabet: filter.spec().alphabet(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn next_word(&mut self, depth: usize) -> Result<SampledWord> {
        let spec = self.filter.spec();
        let c = self.filter.qmf_constant() as f64;
        let mut x = self.base.clone();
        let mut digits = Vec::with_capacity(depth);
        let mut renormalized = false;
        let mut weights = vec![0.0; self.alphabet.len()];
        for j in 0..depth {
            let mut total = 0.0;
            for (w, a) in weights.iter_mut().zip(&self.alphabet) {
                let y: Vec<f64> = x
                    .iter()
                    .zip(a.coords())
                    .zip(spec.diag())
                    .map(|((xi, &ai), &n)| (xi + ai as f64) / n as f64)
                    .collect();
                let f = self.filter.eval(&y).norm_sqr() / c;
                *w = if f < ZERO_FACTOR { 0.0 } else { f };
                total += *w;
            }
            if total <= 0.0 {
                return Err(Error::ZeroMassPath { depth: j });
            }
            if (total - 1.0).abs() > 1e-9 {
                renormalized = true;
            }
            let mut u = self.rng.gen::<f64>() * total;
            let mut pick = weights.iter().rposition(|&w| w > 0.0).expect("total > 0");
            for (idx, &w) in weights.iter().enumerate() {
                if w > 0.0 && u < w {
                    pick = idx;
                    break;
                }
                u -= w;
            }
            let a = &self.alphabet[pick];
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = (*xi + a.coords()[i] as f64) / spec.diag()[i] as f64;
            }
            digits.push(a.clone());
        }
        if renormalized {
            log::warn!("sampler renormalized children masses; the filter's preimage sums differ from its constant");
        }
        Ok(SampledWord {
            word: DigitWord::finite(spec, digits)?,
            renormalized,
        })
    }
}

/// One depth-`depth` word drawn from `nu_z`.
pub fn sample_word<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, depth: usize, seed: u64) -> Result<DigitWord> {
    Ok(Sampler::new(filter, t, seed)?.next_word(depth)?.word)
}

/// `n` words from one seeded stream.
pub fn sample_words<F: Filter + ?Sized>(filter: &F, t: &TorusPoint, depth: usize, n: usize, seed: u64) -> Result<Vec<SampledWord>> {
    let mut s = Sampler::new(filter, t, seed)?;
    (0..n).map(|_| s.next_word(depth)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EventEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

/// Monte-Carlo estimate of `nu_z{words whose depth-k prefix satisfies predicate}`.
pub fn estimate_event<F: Filter + ?Sized>(
    filter: &F,
    t: &TorusPoint,
    predicate: impl Fn(&DigitWord) -> bool,
    depth: usize,
    n_samples: usize,
    seed: u64,
) -> Result<EventEstimate> {
    if n_samples == 0 {
        return Err(Error::InvalidArgument("n_samples must be at least 1".into()));
    }
    let mut s = Sampler::new(filter, t, seed)?;
    let mut hits = 0usize;
    for _ in 0..n_samples {
        if predicate(&s.next_word(depth)?.word) {
            hits += 1;
        }
    }
    let p = hits as f64 / n_samples as f64;
    Ok(EventEstimate {
        estimate: p,
        std_error: (p * (1.0 - p) / n_samples as f64).sqrt(),
        n_samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dilation::ratio;
    use crate::filters::{cantor3, haar2, haar3, sierpinski};

    fn cyl(spec: &DilationSpec, t: TorusPoint, digits: &[u32]) -> CylinderSet {
        CylinderSet::new(spec, t, DigitWord::from_scalars(spec, digits, None).unwrap()).unwrap()
    }

    #[test]
    fn cylinder_mass_examples() {
        let h = haar2();
        let m = cylinder_mass(&h, &cyl(h.spec(), TorusPoint::zero(1), &[0]));
        assert_eq!(m.rational(), Some(ratio(1, 1)));
        assert!((m.value - 1.0).abs() < 1e-15);
        let m = cylinder_mass(&h, &cyl(h.spec(), TorusPoint::zero(1), &[1]));
        assert_eq!(m.rational(), Some(ratio(0, 1)));
        assert!(m.value < 1e-30);

        let c = cantor3();
        for (d, expect) in [(0, ratio(2, 3)), (1, ratio(1, 6)), (2, ratio(1, 6))] {
            let m = cylinder_mass(&c, &cyl(c.spec(), TorusPoint::zero(1), &[d]));
            assert_eq!(m.rational(), Some(expect.clone()));
        }
    }

    #[test]
    fn irrational_masses_stay_exact() {
        let c = cantor3();
        let m = cylinder_mass(&c, &cyl(c.spec(), TorusPoint::from_ratios(&[(1, 3)]), &[0]));
        // |1 + e(2/9)|^2 / 6 is not rational.
        assert_eq!(m.rational(), None);
        assert!((m.exact.unwrap().to_complex().re - m.value).abs() < 1e-14);
    }

    #[test]
    fn children_examples() {
        let h = haar2();
        let kids = children_masses(&h, &cyl(h.spec(), TorusPoint::zero(1), &[]));
        assert_eq!(kids[0].1.rational(), Some(ratio(1, 1)));
        assert_eq!(kids[1].1.rational(), Some(ratio(0, 1)));

        let c = cantor3();
        let kids: Vec<_> = children_masses(&c, &cyl(c.spec(), TorusPoint::zero(1), &[]))
            .into_iter()
            .map(|(_, m)| m.rational().unwrap())
            .collect();
        assert_eq!(kids, vec![ratio(2, 3), ratio(1, 6), ratio(1, 6)]);
    }

    #[test]
    fn children_sum_to_parent_exactly() {
        for f in [haar2(), haar3(), cantor3()] {
            let spec = f.spec().clone();
            let parent = cyl(&spec, TorusPoint::from_ratios(&[(3, 7)]), &[1, 0, 1, 1]);
            let p = cylinder_mass(&f, &parent);
            let mut sum = Cyclotomic::zero();
            for (_, m) in children_masses(&f, &parent) {
                sum = sum.add(m.exact.as_ref().unwrap()).unwrap();
            }
            assert!(sum.exact_eq(p.exact.as_ref().unwrap()).unwrap(), "{}", f.label());
        }
    }

    #[test]
    fn totals() {
        let h = haar2();
        let t = TorusPoint::from_ratios(&[(3, 10)]);
        let tot = total_mass_at_depth(&h, &t, 6, TotalMode::Telescoped).unwrap();
        assert_eq!(tot.mass.rational(), Some(ratio(1, 1)));
        let tot = total_mass_at_depth(&h, &TorusPoint::float(vec![0.3]), 6, TotalMode::Telescoped).unwrap();
        assert!((tot.mass.value - 1.0).abs() < 1e-12);

        let c = cantor3();
        let tot = total_mass_at_depth(&c, &TorusPoint::from_ratios(&[(2, 5)]), 5, TotalMode::BruteForce).unwrap();
        assert_eq!(tot.mass.rational(), Some(ratio(1, 1)));
        assert!(tot.max_qmf_residual < 1e-12);
        assert!(total_mass_at_depth(&c, &TorusPoint::zero(1), 9, TotalMode::BruteForce).is_err());

        let s = sierpinski();
        let t2 = TorusPoint::from_ratios(&[(1, 3), (1, 5)]);
        let tot = total_mass_at_depth(&s, &t2, 3, TotalMode::BruteForce).unwrap();
        assert_eq!(tot.mass.rational(), Some(ratio(27, 64)));
        assert!((tot.max_qmf_residual - 1.0).abs() < 1e-12);
        let s3 = sierpinski().with_qmf_constant(3);
        let tot = total_mass_at_depth(&s3, &t2, 3, TotalMode::BruteForce).unwrap();
        assert_eq!(tot.mass.rational(), Some(ratio(1, 1)));
        let tot = total_mass_at_depth(&s3, &t2, 3, TotalMode::Telescoped).unwrap();
        assert_eq!(tot.mass.rational(), Some(ratio(1, 1)));
    }

    #[test]
    fn sampler_examples() {
        let h = haar2();
        for seed in 0..5 {
            let w = sample_word(&h, &TorusPoint::zero(1), 12, seed).unwrap();
            assert_eq!(w, DigitWord::from_scalars(h.spec(), &[0; 12], None).unwrap());
        }
        let c = cantor3();
        let a = sample_words(&c, &TorusPoint::zero(1), 5, 20, 7).unwrap();
        let b = sample_words(&c, &TorusPoint::zero(1), 5, 20, 7).unwrap();
        assert_eq!(
            a.iter().map(|s| s.word.clone()).collect::<Vec<_>>(),
            b.iter().map(|s| s.word.clone()).collect::<Vec<_>>()
        );
        assert!(a.iter().all(|s| !s.renormalized));
    }

    #[test]
    fn event_examples() {
        let c = cantor3();
        let all = estimate_event(&c, &TorusPoint::zero(1), |_| true, 4, 100, 1).unwrap();
        assert_eq!((all.estimate, all.std_error), (1.0, 0.0));
        let h = haar2();
        let one = estimate_event(&h, &TorusPoint::zero(1), |w| w.digit_coord(0, 0) == 1, 3, 500, 2).unwrap();
        assert_eq!(one.estimate, 0.0);
        let zero = estimate_event(&c, &TorusPoint::zero(1), |w| w.digit_coord(0, 0) == 0, 1, 20_000, 3).unwrap();
        assert!((zero.estimate - 2.0 / 3.0).abs() < 3.0 * (2.0 / 9.0 / 20_000f64).sqrt());
        assert!(estimate_event(&c, &TorusPoint::zero(1), |_| true, 1, 0, 3).is_err());
    }

    #[test]
    fn zero_mass_paths_are_errors() {
        // m vanishes at both preimages of z = -1 for m = (1 + z^2)/sqrt 2, N = 2.
        let spec = DilationSpec::scalar(2).unwrap();
        let f = crate::filters::LaurentFilter::exact(spec, 2, [(vec![0], (1, 0)), (vec![2], (1, 0))]).unwrap();
        let err = sample_word(&f, &TorusPoint::from_ratios(&[(1, 2)]), 3, 0).unwrap_err();
        assert!(matches!(err, Error::ZeroMassPath { depth: 0 }));
    }
}
