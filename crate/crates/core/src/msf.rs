//! Generalized MSF wavelets on the solenoid: fibered sets `E'`, the
//! coefficient function `lambda`, the orthonormality function `h`, the
//! shift-disjointness test, feasibility verdicts, and the Shannon set.

use std::path::Path;

use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::{
    atom_partial_products, atomless_certificate, classical_atom_decomposition, classify_atom, integer_box, scaling_fn_hat,
    AtomVerdict, AtomlessCertificate, ClassifyOptions,
};
use crate::dilation::{parse_rational, ratio, rational_to_f64, Coords, Digit, DigitWord, DilationSpec, TorusPoint};
use crate::error::{Error, Result};
use crate::fiber::Sampler;
use crate::filters::Filter;
use crate::solenoid::{convert_word, shift_sigma, shift_sigma_inverse, ProductPoint, Section};

/// `|phi^|` below this makes `lambda = 1/phi^` undefined.
pub const LAMBDA_ZERO: f64 = 1e-10;
/// Radius of the integer box searched for atom witnesses.
pub const WITNESS_RADIUS: i64 = 3;

/// What `E'` contains over one region of the base.
#[derive(Clone, Debug, PartialEq)]
pub enum FiberSpec {
    /// Finitely many points of the fiber.
    Words(Vec<DigitWord>),
    /// A finite union of cylinders, given by their finite prefixes. The empty
    /// prefix is the whole fiber.
    Cylinders(Vec<DigitWord>),
}

/// A half-open rational box `lo <= theta < hi` in section coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub lo: Vec<BigRational>,
    pub hi: Vec<BigRational>,
    pub fiber: FiberSpec,
}

impl Region {
    fn contains(&self, theta: &Theta) -> bool {
        match theta {
            Theta::Exact(xs) => xs.iter().zip(&self.lo).zip(&self.hi).all(|((x, lo), hi)| lo <= x && x < hi),
            Theta::Float(xs) => xs
                .iter()
                .zip(&self.lo)
                .zip(&self.hi)
                .all(|((&x, lo), hi)| rational_to_f64(lo) <= x && x < rational_to_f64(hi)),
        }
    }
}

enum Theta {
    Exact(Vec<BigRational>),
    Float(Vec<f64>),
}

impl Theta {
    fn to_f64(&self) -> Vec<f64> {
        match self {
            Theta::Exact(xs) => xs.iter().map(rational_to_f64).collect(),
            Theta::Float(xs) => xs.clone(),
        }
    }
}

/// A subset `E'` of `T^d x Z_A^d`, described region by region in the
/// coordinates of one section.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberedSet {
    spec: DilationSpec,
    section: Section,
    regions: Vec<Region>,
}

impl FiberedSet {
    /// Regions must lie in the section's fundamental domain and be pairwise disjoint.
    pub fn new(spec: DilationSpec, section: Section, regions: Vec<Region>) -> Result<Self> {
        let (lower, upper) = match section {
            Section::Unit => (ratio(0, 1), ratio(1, 1)),
            Section::Centered => (ratio(-1, 2), ratio(1, 2)),
        };
        for (idx, r) in regions.iter().enumerate() {
            spec.check_dim(r.lo.len())?;
            spec.check_dim(r.hi.len())?;
            for (lo, hi) in r.lo.iter().zip(&r.hi) {
                if lo >= hi || lo < &lower || hi > &upper {
                    return Err(Error::InvalidArgument(format!(
                        "region {idx}: need {lower} <= lo < hi <= {upper}, got [{lo}, {hi})"
                    )));
                }
            }
            let words = match &r.fiber {
                FiberSpec::Words(ws) | FiberSpec::Cylinders(ws) => ws,
            };
            for w in words {
                spec.check_dim(w.dim())?;
                if matches!(r.fiber, FiberSpec::Cylinders(_)) && w.has_nonzero_tail() {
                    return Err(Error::InvalidArgument(format!("region {idx}: cylinder prefix {w} is not finite")));
                }
            }
        }
        for i in 0..regions.len() {
            for j in i + 1..regions.len() {
                let (a, b) = (&regions[i], &regions[j]);
                let overlap = (0..spec.dim()).all(|c| a.lo[c] < b.hi[c] && b.lo[c] < a.hi[c]);
                if overlap {
                    return Err(Error::InvalidArgument(format!("regions {i} and {j} overlap")));
                }
            }
        }
        Ok(FiberedSet { spec, section, regions })
    }

    /// The whole space `T^d x Z_A^d`.
    pub fn full(spec: DilationSpec, section: Section) -> Self {
        let (lo, hi) = match section {
            Section::Unit => (ratio(0, 1), ratio(1, 1)),
            Section::Centered => (ratio(-1, 2), ratio(1, 2)),
        };
        let d = spec.dim();
        let region = Region {
            lo: vec![lo; d],
            hi: vec![hi; d],
            fiber: FiberSpec::Cylinders(vec![DigitWord::empty(&spec)]),
        };
        FiberedSet {
            spec,
            section,
            regions: vec![region],
        }
    }

    pub fn spec(&self) -> &DilationSpec {
        &self.spec
    }

    pub fn section(&self) -> Section {
        self.section
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    /// Drops region `idx`; the remaining indices shift down.
    pub fn without_region(&self, idx: usize) -> Self {
        let mut out = self.clone();
        out.regions.remove(idx);
        out
    }

    fn theta(&self, t: &TorusPoint) -> Theta {
        let eps = self.section.offset(t);
        match t.coords() {
            Coords::Exact(xs) => Theta::Exact(
                xs.iter()
                    .zip(&eps)
                    .map(|(x, &e)| x - BigRational::from_integer(e.into()))
                    .collect(),
            ),
            Coords::Float(xs) => Theta::Float(xs.iter().zip(&eps).map(|(x, &e)| x - e as f64).collect()),
        }
    }

    /// Index of the region over `t` (a point of `[0,1)^d`).
    pub fn region_at(&self, t: &TorusPoint) -> Option<usize> {
        let theta = self.theta(t);
        self.regions.iter().position(|r| r.contains(&theta))
    }

    /// Whether `(t, word)`, with `word` in unit-section coordinates, lies in
    /// the set. Word fibers need agreement over the full length of `word`.
    pub fn contains(&self, t: &TorusPoint, word: &DigitWord) -> Result<bool> {
        let Some(idx) = self.region_at(t) else {
            return Ok(false);
        };
        let w = convert_word(&self.spec, t, word, Section::Unit, self.section)?;
        Ok(match &self.regions[idx].fiber {
            FiberSpec::Words(ws) => ws.iter().any(|x| x.agrees_to(&w, w.depth())),
            FiberSpec::Cylinders(ps) => ps
                .iter()
                .any(|p| p.depth() <= w.depth() && p.agrees_to(&w, p.depth())),
        })
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: FiberedSetFile = serde_json::from_str(s)?;
        file.into_set()
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FiberedSetFile::from_set(self)).expect("serializable")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DigitRepr {
    Scalar(u32),
    Vector(Vec<u32>),
}

#[derive(Serialize, Deserialize)]
struct WordRepr {
    #[serde(default)]
    prefix: Vec<DigitRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<Vec<DigitRepr>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FiberRepr {
    Words(Vec<WordRepr>),
    Cylinders(Vec<WordRepr>),
}

#[derive(Serialize, Deserialize)]
struct RegionRepr {
    lo: Vec<String>,
    hi: Vec<String>,
    fiber: FiberRepr,
}

#[derive(Serialize, Deserialize)]
struct FiberedSetFile {
    diag: Vec<u32>,
    #[serde(default = "default_section")]
    section: String,
    regions: Vec<RegionRepr>,
}

fn default_section() -> String {
    "unit".into()
}

impl WordRepr {
    fn from_word(w: &DigitWord) -> Self {
        let conv = |ds: &[Digit]| {
            ds.iter()
                .map(|d| match d.coords() {
                    [a] => DigitRepr::Scalar(*a),
                    v => DigitRepr::Vector(v.to_vec()),
                })
                .collect()
        };
        WordRepr {
            prefix: conv(w.prefix()),
            period: w.period().map(conv),
        }
    }

    fn into_word(self, spec: &DilationSpec) -> Result<DigitWord> {
        let conv = |ds: Vec<DigitRepr>| {
            ds.into_iter()
                .map(|d| match d {
                    DigitRepr::Scalar(a) => Digit(vec![a]),
                    DigitRepr::Vector(v) => Digit(v),
                })
                .collect::<Vec<_>>()
        };
        let prefix = conv(self.prefix);
        let period = self.period.map(conv);
        for d in prefix.iter().chain(period.iter().flatten()) {
            spec.check_dim(d.0.len())?;
        }
        DigitWord::new(spec, prefix, period)
    }
}

impl FiberedSetFile {
    fn from_set(set: &FiberedSet) -> Self {
        let words = |ws: &[DigitWord]| ws.iter().map(WordRepr::from_word).collect();
        FiberedSetFile {
            diag: set.spec.diag().to_vec(),
            section: set.section.name().into(),
            regions: set
                .regions
                .iter()
                .map(|r| RegionRepr {
                    lo: r.lo.iter().map(|x| x.to_string()).collect(),
                    hi: r.hi.iter().map(|x| x.to_string()).collect(),
                    fiber: match &r.fiber {
                        FiberSpec::Words(ws) => FiberRepr::Words(words(ws)),
                        FiberSpec::Cylinders(ws) => FiberRepr::Cylinders(words(ws)),
                    },
                })
                .collect(),
        }
    }

    fn into_set(self) -> Result<FiberedSet> {
        let spec = DilationSpec::new(self.diag)?;
        let section = Section::parse(&self.section)?;
        let regions = self
            .regions
            .into_iter()
            .map(|r| {
                let parse = |xs: Vec<String>| xs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>();
                let words = |ws: Vec<WordRepr>| ws.into_iter().map(|w| w.into_word(&spec)).collect::<Result<Vec<_>>>();
                Ok(Region {
                    lo: parse(r.lo)?,
                    hi: parse(r.hi)?,
                    fiber: match r.fiber {
                        FiberRepr::Words(ws) => FiberSpec::Words(words(ws)?),
                        FiberRepr::Cylinders(ws) => FiberSpec::Cylinders(words(ws)?),
                    },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FiberedSet::new(spec, section, regions)
    }
}

/// The rule for `lambda` on one region, as a function of the section
/// coordinate `theta`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LambdaPiece {
    Constant { re: f64, im: f64 },
    /// `1 / phi^(theta + shift)` with the Haar closed form
    /// `prod_i (e(x_i) - 1) / (2 pi i x_i)`.
    InverseHaarHat { shift: Vec<i64> },
    /// `1 / phi^(theta + shift)` with the truncated scaling product of the filter.
    InverseScalingHat { shift: Vec<i64>, n_terms: usize },
}

/// Piecewise `lambda`, one piece per region of the matching `FiberedSet`,
/// times a global `scale`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LambdaFunction {
    pub pieces: Vec<LambdaPiece>,
    #[serde(default = "unit_scale")]
    pub scale: Complex64,
}

fn unit_scale() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `(e(x) - 1) / (2 pi i x)`, equal to 1 at 0.
pub fn haar_phi_hat(x: f64) -> Complex64 {
    if x == 0.0 {
        return unit_scale();
    }
    let px = std::f64::consts::PI * x;
    Complex64::from_polar(px.sin() / px, px)
}

impl LambdaFunction {
    pub fn constant(n_regions: usize, value: Complex64) -> Self {
        LambdaFunction {
            pieces: vec![LambdaPiece::Constant { re: value.re, im: value.im }; n_regions],
            scale: unit_scale(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        LambdaFunction {
            pieces: self.pieces.clone(),
            scale: self.scale * c,
        }
    }

    pub fn without_piece(&self, idx: usize) -> Self {
        let mut out = self.clone();
        out.pieces.remove(idx);
        out
    }

    /// `None` where `lambda` is undefined (a zero of `phi^`).
    pub fn eval<F: Filter + ?Sized>(&self, filter: &F, region: usize, theta: &[f64]) -> Result<Option<Complex64>> {
        let piece = self
            .pieces
            .get(region)
            .ok_or_else(|| Error::InvalidArgument(format!("lambda has no piece for region {region}")))?;
        let shifted = |shift: &[i64]| -> Result<Vec<f64>> {
            filter.spec().check_dim(shift.len())?;
            Ok(theta.iter().zip(shift).map(|(x, &k)| x + k as f64).collect())
        };
        let phi = match piece {
            LambdaPiece::Constant { re, im } => return Ok(Some(self.scale * Complex64::new(*re, *im))),
            LambdaPiece::InverseHaarHat { shift } => shifted(shift)?.into_iter().map(haar_phi_hat).product::<Complex64>(),
            LambdaPiece::InverseScalingHat { shift, n_terms } => scaling_fn_hat(filter, &shifted(shift)?, *n_terms)?.value,
        };
        if !(phi.norm() >= LAMBDA_ZERO) {
            return Ok(None);
        }
        Ok(Some(self.scale / phi))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn check_pair<F: Filter + ?Sized>(filter: &F, set: &FiberedSet, lambda: &LambdaFunction) -> Result<()> {
    if filter.spec() != set.spec() {
        return Err(Error::InvalidArgument("filter and set use different dilations".into()));
    }
    if lambda.pieces.len() != set.regions().len() {
        return Err(Error::InvalidArgument(format!(
            "lambda has {} pieces for {} regions",
            lambda.pieces.len(),
            set.regions().len()
        )));
    }
    Ok(())
}

/// `h(z) = int_{E'_z} |lambda|^2 d nu_z` with masses truncated at `depth`.
/// `Some(0)` outside every region; `None` where `lambda` is undefined.
pub fn h_function<F: Filter + ?Sized>(
    filter: &F,
    set: &FiberedSet,
    lambda: &LambdaFunction,
    t: &TorusPoint,
    depth: usize,
) -> Result<Option<f64>> {
    check_pair(filter, set, lambda)?;
    set.spec().check_dim(t.dim())?;
    let Some(idx) = set.region_at(t) else {
        return Ok(Some(0.0));
    };
    let Some(l) = lambda.eval(filter, idx, &set.theta(t).to_f64())? else {
        return Ok(None);
    };
    let spec = set.spec();
    let mass = match &set.regions()[idx].fiber {
        FiberSpec::Words(ws) => ws
            .iter()
            .map(|w| {
                let u = convert_word(spec, t, w, set.section(), Section::Unit)?;
                Ok(atom_partial_products(filter, t, &u, depth).last().copied().unwrap_or(1.0))
            })
            .sum::<Result<f64>>()?,
        FiberSpec::Cylinders(ps) => ps
            .iter()
            .map(|p| {
                let u = convert_word(spec, t, p, set.section(), Section::Unit)?.truncate(p.depth());
                Ok(atom_partial_products(filter, t, &u, p.depth()).last().copied().unwrap_or(1.0))
            })
            .sum::<Result<f64>>()?,
    };
    Ok(Some(l.norm_sqr() * mass))
}

#[derive(Clone, Debug, Serialize)]
pub struct OrthonormalityReport {
    pub max_deviation: f64,
    pub worst_t: Option<Vec<f64>>,
    pub n_samples: usize,
    /// Samples where `lambda` is undefined.
    pub excluded: usize,
    /// Samples outside every region, counted with `h = 0`.
    pub outside: usize,
    pub tolerance: f64,
    pub pass: bool,
}

/// `max |h(z) - 1|` over the samples.
pub fn orthonormality_check<F: Filter + ?Sized>(
    filter: &F,
    set: &FiberedSet,
    lambda: &LambdaFunction,
    samples: &[TorusPoint],
    depth: usize,
    tolerance: f64,
) -> Result<OrthonormalityReport> {
    if samples.is_empty() {
        return Err(Error::InvalidArgument("no sample points".into()));
    }
    check_pair(filter, set, lambda)?;
    let values = samples
        .par_iter()
        .map(|t| Ok((h_function(filter, set, lambda, t, depth)?, set.region_at(t).is_none())))
        .collect::<Result<Vec<_>>>()?;
    let mut report = OrthonormalityReport {
        max_deviation: 0.0,
        worst_t: None,
        n_samples: samples.len(),
        excluded: 0,
        outside: 0,
        tolerance,
        pass: false,
    };
    for (t, (h, outside)) in samples.iter().zip(values) {
        report.outside += usize::from(outside);
        let Some(h) = h else {
            report.excluded += 1;
            continue;
        };
        let dev = (h - 1.0).abs();
        if report.worst_t.is_none() || dev > report.max_deviation {
            report.max_deviation = dev;
            report.worst_t = Some(t.to_f64());
        }
    }
    report.pass = report.worst_t.is_some() && report.max_deviation < tolerance;
    Ok(report)
}

/// `n` exact points of `[0,1)^d` with coordinates `k / 2^32`, `k` uniform.
pub fn uniform_samples(spec: &DilationSpec, n: usize, seed: u64) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            TorusPoint::exact(
                (0..spec.dim())
                    .map(|_| BigRational::new(rng.gen::<u32>().into(), (1u64 << 32).into()))
                    .collect(),
            )
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftEstimate {
    pub j: i32,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapEstimate {
    pub j: i32,
    pub k: i32,
    pub estimate: f64,
    pub std_error: f64,
    /// `estimate <= 3 std_error`.
    pub consistent_with_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShiftReport {
    pub n_samples: usize,
    pub depth: usize,
    /// `tau~(sigma~^j(E))` for each `j`.
    pub measures: Vec<ShiftEstimate>,
    pub overlaps: Vec<OverlapEstimate>,
    /// `tau~` of the union over the range.
    pub coverage: ShiftEstimate,
    pub all_consistent: bool,
}

fn binomial(j: i32, hits: usize, n: usize) -> ShiftEstimate {
    let p = hits as f64 / n as f64;
    ShiftEstimate {
        j,
        estimate: p,
        std_error: (p * (1.0 - p) / n as f64).sqrt(),
    }
}

fn pull_back(spec: &DilationSpec, p: &ProductPoint, j: i32) -> Result<ProductPoint> {
    let mut q = p.clone();
    for _ in 0..j.unsigned_abs() {
        q = if j > 0 { shift_sigma_inverse(spec, &q) } else { shift_sigma(spec, &q)? };
    }
    Ok(q)
}

/// Monte-Carlo estimates of `tau~(sigma~^j(E) n sigma~^k(E))` for `j < k` in
/// `j_range`. Samples are `(z, word)` with `z` uniform and `word` drawn from
/// `nu_z` to `depth` digits; `x` lies in `sigma~^j(E)` when
/// `sigma~^{-j}(x)` lies in `E` to the digits available.
pub fn shift_disjointness_check<F: Filter + ?Sized>(
    filter: &F,
    set: &FiberedSet,
    j_range: (i32, i32),
    n_samples: usize,
    depth: usize,
    seed: u64,
) -> Result<ShiftReport> {
    let spec = filter.spec();
    if spec != set.spec() {
        return Err(Error::InvalidArgument("filter and set use different dilations".into()));
    }
    let (j_lo, j_hi) = j_range;
    if j_lo > j_hi || n_samples == 0 {
        return Err(Error::InvalidArgument("need j_lo <= j_hi and at least one sample".into()));
    }
    let reach = j_lo.unsigned_abs().max(j_hi.unsigned_abs()) as usize;
    if depth < reach + 8 {
        return Err(Error::InvalidArgument(format!(
            "depth {depth} is too small for shifts up to {reach}; need at least {}",
            reach + 8
        )));
    }
    let bases = uniform_samples(spec, n_samples, seed);
    let mut seeder = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed);
    let seeds: Vec<u64> = (0..n_samples).map(|_| seeder.gen()).collect();
    let js: Vec<i32> = (j_lo..=j_hi).collect();
    let memberships = bases
        .into_par_iter()
        .zip(seeds)
        .map(|(z, s)| {
            let word = Sampler::new(filter, &z, s)?.next_word(depth)?.word;
            let x = ProductPoint { base: z, word };
            js.iter()
                .map(|&j| {
                    let y = pull_back(spec, &x, j)?;
                    set.contains(&y.base, &y.word)
                })
                .collect::<Result<Vec<bool>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let count = |pred: &dyn Fn(&[bool]) -> bool| memberships.iter().filter(|m| pred(m)).count();
    let measures = js
        .iter()
        .enumerate()
        .map(|(a, &j)| binomial(j, count(&|m| m[a]), n_samples))
        .collect();
    let mut overlaps = Vec::new();
    for a in 0..js.len() {
        for b in a + 1..js.len() {
            let e = binomial(js[a], count(&|m| m[a] && m[b]), n_samples);
            overlaps.push(OverlapEstimate {
                j: js[a],
                k: js[b],
                estimate: e.estimate,
                std_error: e.std_error,
                consistent_with_zero: e.estimate <= 3.0 * e.std_error,
            });
        }
    }
    let all_consistent = overlaps.iter().all(|o| o.consistent_with_zero);
    Ok(ShiftReport {
        n_samples,
        depth,
        measures,
        coverage: binomial(j_lo, count(&|m| m.iter().any(|&x| x)), n_samples),
        overlaps,
        all_consistent,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    AtomlessNoMSF,
    AtomicFeasible,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomWitness {
    pub t: Vec<f64>,
    pub k: Vec<i64>,
    pub word: String,
    pub mass: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MsfVerdict {
    pub verdict: Verdict,
    pub certificate: Option<AtomlessCertificate>,
    pub witnesses: Vec<AtomWitness>,
    pub reason: String,
}

/// `AtomlessNoMSF` when the coefficient bound certifies that no fiber
/// measure has atoms. Otherwise, for a low-pass filter, looks for an atom at
/// some `word(k)` in every sampled fiber, heaviest candidates first.
pub fn msf_feasibility<F: Filter + ?Sized>(filter: &F, fiber_samples: &[TorusPoint], depth: usize) -> Result<MsfVerdict> {
    if let Some(cert) = atomless_certificate(filter) {
        return Ok(MsfVerdict {
            verdict: Verdict::AtomlessNoMSF,
            reason: format!("every factor |m|^2/c is at most {} < 1", cert.bound),
            certificate: Some(cert),
            witnesses: Vec::new(),
        });
    }
    let unknown = |reason: String| MsfVerdict {
        verdict: Verdict::Unknown,
        certificate: None,
        witnesses: Vec::new(),
        reason,
    };
    let spec = filter.spec();
    let ks = integer_box(spec.dim(), WITNESS_RADIUS);
    let mut witnesses = Vec::with_capacity(fiber_samples.len());
    for t in fiber_samples {
        let mut atoms = match classical_atom_decomposition(filter, t, &ks, depth) {
            Ok(a) => a,
            Err(Error::InvalidArgument(msg)) => return Ok(unknown(msg)),
            Err(e) => return Err(e),
        };
        atoms.sort_by(|a, b| b.mass.total_cmp(&a.mass));
        let mut found = None;
        for atom in atoms.iter().filter(|a| a.mass > 0.0) {
            let c = classify_atom(filter, t, &atom.word, depth, ClassifyOptions::default())?;
            if c.verdict == AtomVerdict::ConvergesPositive {
                found = Some(AtomWitness {
                    t: t.to_f64(),
                    k: atom.k.clone(),
                    word: atom.word.to_string(),
                    mass: c.limit_estimate,
                });
                break;
            }
        }
        match found {
            Some(w) => witnesses.push(w),
            None => return Ok(unknown(format!("no atom found among word(k), |k| <= {WITNESS_RADIUS}, over {t}"))),
        }
    }
    Ok(MsfVerdict {
        verdict: Verdict::AtomicFeasible,
        certificate: None,
        reason: format!("an atom was found in each of {} sampled fibers", witnesses.len()),
        witnesses,
    })
}

#[derive(Clone, Debug)]
pub struct ShannonExample {
    pub set: FiberedSet,
    pub lambda: LambdaFunction,
}

/// The Shannon set `[-1, -1/2) u [1/2, 1)` on the solenoid of `haar2`, in the
/// centered section: over `theta in [-1/2, 0)` the single word `(1, 0, 0, ...)`
/// with `lambda = 1/phi^(theta + 1)`, over `theta in [0, 1/2)` the word
/// `(1, 1, 1, ...)` with `lambda = 1/phi^(theta - 1)`.
pub fn shannon_example() -> ShannonExample {
    let spec = DilationSpec::scalar(2).expect("valid");
    let regions = vec![
        Region {
            lo: vec![ratio(-1, 2)],
            hi: vec![ratio(0, 1)],
            fiber: FiberSpec::Words(vec![DigitWord::from_scalars(&spec, &[1], Some(&[0])).expect("valid")]),
        },
        Region {
            lo: vec![ratio(0, 1)],
            hi: vec![ratio(1, 2)],
            fiber: FiberSpec::Words(vec![DigitWord::from_scalars(&spec, &[], Some(&[1])).expect("valid")]),
        },
    ];
    ShannonExample {
        set: FiberedSet::new(spec, Section::Centered, regions).expect("valid"),
        lambda: LambdaFunction {
            pieces: vec![
                LambdaPiece::InverseHaarHat { shift: vec![1] },
                LambdaPiece::InverseHaarHat { shift: vec![-1] },
            ],
            scale: unit_scale(),
        },
    }
}
