use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::{Args, Subcommand};
use serde_json::{json, Value};

use solenoidal::atoms::{
    atomless_certificate, candidate_cycle_rationals, classical_atom_decomposition, classify_atom, find_zm, integer_box,
    match_cycles, AtomlessCertificate, ClassifyOptions,
};
use solenoidal::dilation::{DigitWord, DilationSpec, TorusPoint};
use solenoidal::fiber::{children_masses, cylinder_mass, estimate_event, sample_words, total_mass_at_depth, CylinderSet, MassValue, TotalMode};
use solenoidal::filters::{lowpass_report, qmf_report, Filter, LaurentFilter};
use solenoidal::msf::{
    msf_feasibility, orthonormality_check, shannon_example, shift_disjointness_check, uniform_samples, FiberedSet,
    LambdaFunction,
};
use solenoidal::solenoid::{shift_sigma, shift_sigma_inverse, theta_inverse_with, theta_with, winding_line, ProductPoint, RealVector, Section};
use solenoidal::tau::{integrate_preimage_form, integrate_pushforward, radon_nikodym_residual, Direction, TauOptions, TauValue};

use crate::input::{load_filter, parse_point, parse_reals, parse_spec, parse_trig, parse_word, Precision};
use crate::output::{cell, cyclotomic, gauss, object, point, rational, Report, Table};
use crate::Global;

#[derive(Args, Clone)]
pub struct FilterArg {
    /// Built-in name (haar2, haar3, cantor3, sierpinski) or filter JSON path.
    #[arg(long)]
    filter: String,
    /// Override the constant c in sum |m|^2 = c.
    #[arg(long)]
    qmf_constant: Option<u64>,
}

impl FilterArg {
    fn load(&self) -> Result<LaurentFilter> {
        load_filter(&self.filter, self.qmf_constant)
    }
}

#[derive(Args, Clone)]
pub struct WordArg {
    /// Digits: `1,0,1` in dimension 1, `1,0;0,2` in higher dimension.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    word: String,
    /// Repeating tail, same syntax as --word.
    #[arg(long)]
    period: Option<String>,
}

impl WordArg {
    fn parse(&self, spec: &DilationSpec) -> Result<DigitWord> {
        parse_word(spec, &self.word, self.period.as_deref())
    }
}

fn filter_head(f: &LaurentFilter) -> Vec<(&'static str, Value)> {
    vec![
        ("filter", json!(f.label())),
        ("diag", json!(f.spec().diag())),
        ("qmf_constant", json!(f.qmf_constant())),
    ]
}

fn with_head(f: &LaurentFilter, mut rest: Vec<(&'static str, Value)>) -> Value {
    let mut pairs = filter_head(f);
    pairs.append(&mut rest);
    object(pairs)
}

fn certificate(c: &Option<AtomlessCertificate>) -> Value {
    match c {
        None => Value::Null,
        Some(c) => match &c.exact {
            Some(q) => rational(q),
            None => json!({ "value": c.bound }),
        },
    }
}

fn mass(m: &MassValue, precision: Precision) -> Value {
    match (&m.exact, precision) {
        (Some(c), Precision::Exact) => cyclotomic(c),
        _ => json!({ "value": m.value }),
    }
}

// filter

#[derive(Subcommand)]
pub enum FilterCmd {
    /// QMF residuals, coefficient bound, and low-pass diagnostics.
    Check {
        #[command(flatten)]
        filter: FilterArg,
        /// Random float points for the residual.
        #[arg(long, default_value_t = 1000)]
        points: usize,
        /// Random rational points for the exact residual.
        #[arg(long, default_value_t = 50)]
        exact_points: usize,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
        /// Grid resolution per axis for the zero scan.
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
}

pub fn filter(cmd: FilterCmd, g: &Global) -> Result<Report> {
    let FilterCmd::Check {
        filter,
        points,
        exact_points,
        tolerance,
        grid,
    } = cmd;
    let f = filter.load()?;
    let d = f.spec().dim();
    let floats: Vec<TorusPoint> = uniform_samples(f.spec(), points, g.seed)
        .iter()
        .map(|p| TorusPoint::float(p.to_f64()))
        .collect();
    let float_report = qmf_report(&f, &floats)?;
    let mut failed = float_report.max_residual >= tolerance;
    let exact = if g.precision == Precision::Exact && f.is_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(g.seed ^ 0xe4ac7);
        let pts: Vec<TorusPoint> = (0..exact_points)
            .map(|_| {
                TorusPoint::exact(
                    (0..d)
                        .map(|_| {
                            let q = rng.gen_range(1..=40i64);
                            solenoidal::dilation::ratio(rng.gen_range(0..q), q)
                        })
                        .collect(),
                )
            })
            .collect();
        let r = qmf_report(&f, &pts)?;
        failed |= r.max_residual != 0.0;
        json!({ "points": r.sample_count, "max_residual": r.max_residual, "exact_zero": r.max_residual == 0.0 })
    } else {
        Value::Null
    };
    let low = lowpass_report(&f, grid, 1e-6)?;
    let body = with_head(
        &f,
        vec![
            (
                "qmf_float",
                json!({ "points": float_report.sample_count, "max_residual": float_report.max_residual, "tolerance": tolerance }),
            ),
            ("qmf_exact", exact),
            ("coefficient_bound", json!(f.coefficient_bound())),
            ("atomless_certificate", certificate(&atomless_certificate(&f))),
            (
                "lowpass",
                json!({
                    "m_at_one": [low.m_at_one.re, low.m_at_one.im],
                    "sqrt_n": low.sqrt_n,
                    "zeros": low.zero_samples,
                    "lipschitz_estimate": low.lipschitz_estimate,
                }),
            ),
            ("pass", json!(!failed)),
        ],
    );
    Ok(Report::new(body).failed_if(failed))
}

// fiber

#[derive(Subcommand)]
pub enum FiberCmd {
    /// Mass of a cylinder, optionally with its children or the level total.
    Mass {
        #[command(flatten)]
        filter: FilterArg,
        /// Base point, comma-separated coordinates such as `1/3` or `0.25,1/5`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Cylinder prefix.
        #[arg(long, default_value = "")]
        word: String,
        #[arg(long)]
        children: bool,
        /// Also report the total mass of all cylinders at this depth.
        #[arg(long)]
        total_depth: Option<usize>,
    },
    /// Words drawn from the fiber measure.
    Sample {
        #[command(flatten)]
        filter: FilterArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 10)]
        n: usize,
    },
    /// Monte-Carlo frequency of a cylinder against its exact mass.
    Event {
        #[command(flatten)]
        filter: FilterArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long)]
        prefix: String,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
    },
}

pub fn fiber(cmd: FiberCmd, g: &Global) -> Result<Report> {
    match cmd {
        FiberCmd::Mass {
            filter,
            t,
            word,
            children,
            total_depth,
        } => {
            let f = filter.load()?;
            let spec = f.spec().clone();
            let t = parse_point(&spec, &t, g.precision)?;
            let c = CylinderSet::new(&spec, t.clone(), parse_word(&spec, &word, None)?)?;
            let m = cylinder_mass(&f, &c);
            let mut pairs = vec![
                ("t", point(&t)),
                ("word", json!(c.prefix.to_string())),
                ("depth", json!(m.depth)),
                ("mass", mass(&m, g.precision)),
            ];
            let mut table = None;
            if children {
                let kids = children_masses(&f, &c);
                pairs.push((
                    "children",
                    Value::Array(
                        kids.iter()
                            .map(|(a, m)| json!({ "digit": a.to_string(), "mass": mass(m, g.precision) }))
                            .collect(),
                    ),
                ));
                table = Some(Table {
                    headers: vec!["digit", "mass"],
                    rows: kids.iter().map(|(a, m)| vec![a.to_string(), cell(m.value)]).collect(),
                });
            }
            if let Some(k) = total_depth {
                let mode = if k <= solenoidal::fiber::BRUTE_FORCE_MAX_DEPTH {
                    TotalMode::BruteForce
                } else {
                    TotalMode::Telescoped
                };
                let total = total_mass_at_depth(&f, &t, k, mode)?;
                pairs.push((
                    "total",
                    json!({
                        "depth": k,
                        "mode": total.mode,
                        "mass": mass(&total.mass, g.precision),
                        "max_qmf_residual": total.max_qmf_residual,
                    }),
                ));
            }
            let mut r = Report::new(with_head(&f, pairs));
            if let Some(t) = table {
                r = r.with_table(t);
            }
            Ok(r)
        }
        FiberCmd::Sample { filter, t, depth, n } => {
            let f = filter.load()?;
            let t = parse_point(f.spec(), &t, g.precision)?;
            let words = sample_words(&f, &t, depth, n, g.seed)?;
            let renormalized = words.iter().filter(|w| w.renormalized).count();
            let list: Vec<String> = words.iter().map(|w| w.word.to_string()).collect();
            let body = with_head(
                &f,
                vec![
                    ("t", point(&t)),
                    ("depth", json!(depth)),
                    ("seed", json!(g.seed)),
                    ("renormalized", json!(renormalized)),
                    ("words", json!(list)),
                ],
            );
            Ok(Report::new(body).with_table(Table {
                headers: vec!["index", "word"],
                rows: list.into_iter().enumerate().map(|(i, w)| vec![i.to_string(), w]).collect(),
            }))
        }
        FiberCmd::Event { filter, t, prefix, n } => {
            let f = filter.load()?;
            let spec = f.spec().clone();
            let t = parse_point(&spec, &t, g.precision)?;
            let word = parse_word(&spec, &prefix, None)?;
            let depth = word.depth();
            let m = cylinder_mass(&f, &CylinderSet::new(&spec, t.clone(), word.clone())?);
            let est = estimate_event(&f, &t, |w| w.agrees_to(&word, depth), depth, n, g.seed)?;
            let p = m.value;
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            let z = if sigma > 0.0 { (est.estimate - p).abs() / sigma } else if est.estimate == p { 0.0 } else { f64::INFINITY };
            let failed = z > 4.0;
            let body = with_head(
                &f,
                vec![
                    ("t", point(&t)),
                    ("prefix", json!(word.to_string())),
                    ("mass", mass(&m, g.precision)),
                    ("estimate", json!(est.estimate)),
                    ("std_error", json!(est.std_error)),
                    ("samples", json!(n)),
                    ("z_score", json!(z)),
                    ("within_4_sigma", json!(!failed)),
                ],
            );
            Ok(Report::new(body).failed_if(failed))
        }
    }
}

// atoms

#[derive(Subcommand)]
pub enum AtomsCmd {
    /// The cycle set Z_m, its candidate rationals, and the atomless certificate.
    Scan {
        #[command(flatten)]
        filter: FilterArg,
        #[arg(long, default_value_t = 256)]
        resolution: usize,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Longest cycle length for candidate rationals p/(N^l - 1).
        #[arg(long, default_value_t = 4)]
        lmax: usize,
    },
    /// Classify the infinite product along one word.
    Classify {
        #[command(flatten)]
        filter: FilterArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Atom masses at word(k) beside |phi^(t + k)|^2.
    Classical {
        #[command(flatten)]
        filter: FilterArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// Radius of the integer box of k.
        #[arg(long, default_value_t = 10)]
        krange: i64,
        #[arg(long, default_value_t = 40)]
        terms: usize,
    },
}

pub fn atoms(cmd: AtomsCmd, g: &Global) -> Result<Report> {
    match cmd {
        AtomsCmd::Scan {
            filter,
            resolution,
            tolerance,
            lmax,
        } => {
            let f = filter.load()?;
            let zm = find_zm(&f, resolution, tolerance)?;
            let cycles = if f.spec().dim() == 1 {
                let mut reports = candidate_cycle_rationals(f.spec(), lmax)?;
                match_cycles(&f, &mut reports, tolerance)?;
                Value::Array(
                    reports
                        .iter()
                        .map(|r| {
                            json!({
                                "l": r.l,
                                "q": r.q,
                                "candidates": r.rationals.len(),
                                "in_zm": r.in_zm.iter().map(rational).collect::<Vec<_>>(),
                            })
                        })
                        .collect(),
                )
            } else {
                Value::Null
            };
            let points: Vec<Value> = zm
                .iter()
                .map(|p| {
                    json!({
                        "t": p.t,
                        "value": p.value,
                        "exact": p.exact.as_ref().map(|xs| xs.iter().map(rational).collect::<Vec<_>>()),
                    })
                })
                .collect();
            let rows = zm
                .iter()
                .map(|p| {
                    let exact = p
                        .exact
                        .as_ref()
                        .map(|xs| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                        .unwrap_or_default();
                    vec![p.t.iter().map(|x| cell(*x)).collect::<Vec<_>>().join(" "), cell(p.value), exact]
                })
                .collect();
            let body = with_head(
                &f,
                vec![
                    ("atomless_certificate", certificate(&atomless_certificate(&f))),
                    ("zm", Value::Array(points)),
                    ("cycles", cycles),
                ],
            );
            Ok(Report::new(body).with_table(Table {
                headers: vec!["t", "abs_m_sq", "exact"],
                rows,
            }))
        }
        AtomsCmd::Classify { filter, t, word, terms } => {
            let f = filter.load()?;
            let spec = f.spec().clone();
            let t = parse_point(&spec, &t, g.precision)?;
            let word = word.parse(&spec)?;
            let c = classify_atom(&f, &t, &word, terms, ClassifyOptions::default())?;
            let body = with_head(
                &f,
                vec![
                    ("t", point(&t)),
                    ("word", json!(word.to_string())),
                    ("verdict", json!(c.verdict)),
                    ("limit_estimate", json!(c.limit_estimate)),
                    ("zero_factor_at", json!(c.zero_factor_at)),
                    ("factor_above_one", json!(c.factor_above_one)),
                    ("reason", json!(c.reason)),
                    ("partial_products", json!(c.mass_partial_products)),
                ],
            );
            Ok(Report::new(body).with_table(Table {
                headers: vec!["depth", "partial_product"],
                rows: c
                    .mass_partial_products
                    .iter()
                    .enumerate()
                    .map(|(k, p)| vec![(k + 1).to_string(), cell(*p)])
                    .collect(),
            }))
        }
        AtomsCmd::Classical { filter, t, krange, terms } => {
            let f = filter.load()?;
            let spec = f.spec().clone();
            let t = parse_point(&spec, &t, g.precision)?;
            let ks = integer_box(spec.dim(), krange);
            let atoms = classical_atom_decomposition(&f, &t, &ks, terms)?;
            let total: f64 = atoms.iter().map(|a| a.mass).sum();
            let failed = (total - 1.0).abs() > 5e-3;
            let body = with_head(
                &f,
                vec![
                    ("t", point(&t)),
                    ("krange", json!(krange)),
                    ("terms", json!(terms)),
                    ("total_mass", json!(total)),
                    ("atoms", serde_json::to_value(&atoms)?),
                ],
            );
            Ok(Report::new(body)
                .with_table(Table {
                    headers: vec!["k", "word", "mass", "phi_hat_sq"],
                    rows: atoms
                        .iter()
                        .map(|a| {
                            let k = a.k.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
                            vec![k, a.word.to_string(), cell(a.mass), cell(a.phi_hat_sq)]
                        })
                        .collect(),
                })
                .failed_if(failed))
        }
    }
}

// tau

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Form {
    Push,
    Preimage,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum DirectionArg {
    Inv,
    Fwd,
}

#[derive(Subcommand)]
pub enum TauCmd {
    /// Integral of a trigonometric polynomial against tau_n.
    Integrate {
        #[command(flatten)]
        filter: FilterArg,
        /// JSON list of {"exp": [..], "re": "p/q", "im": "p/q"}, inline or a file path.
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "push")]
        form: Form,
        #[arg(long, default_value_t = solenoidal::tau::DEFAULT_GRID_ORDER)]
        grid_order: usize,
    },
    /// Residual of the Radon-Nikodym identity for the shift.
    RnCheck {
        #[command(flatten)]
        filter: FilterArg,
        #[arg(long)]
        f: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, value_enum, default_value = "inv")]
        direction: DirectionArg,
        #[arg(long, default_value_t = solenoidal::tau::DEFAULT_GRID_ORDER)]
        grid_order: usize,
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
}

fn tau_value(v: &TauValue) -> Value {
    json!({
        "re": v.value.re,
        "im": v.value.im,
        "exact": v.exact.as_ref().map(gauss),
        "method": v.method,
        "grid_order": v.grid_order,
    })
}

pub fn tau(cmd: TauCmd, _g: &Global) -> Result<Report> {
    match cmd {
        TauCmd::Integrate {
            filter,
            f: spec_arg,
            n,
            form,
            grid_order,
        } => {
            let f = filter.load()?;
            let test = parse_trig(f.spec(), &spec_arg)?;
            let opts = TauOptions::with_grid_order(grid_order);
            let v = match form {
                Form::Push => integrate_pushforward(&f, &test, n, &opts)?,
                Form::Preimage => integrate_preimage_form(&f, &test, n, &opts)?,
            };
            let form = if form == Form::Push { "push" } else { "preimage" };
            Ok(Report::new(with_head(
                &f,
                vec![("n", json!(n)), ("form", json!(form)), ("integral", tau_value(&v))],
            )))
        }
        TauCmd::RnCheck {
            filter,
            f: spec_arg,
            n,
            direction,
            grid_order,
            tolerance,
        } => {
            let f = filter.load()?;
            let test = parse_trig(f.spec(), &spec_arg)?;
            let opts = TauOptions::with_grid_order(grid_order);
            let dir = if direction == DirectionArg::Inv { Direction::Inverse } else { Direction::Forward };
            let r = radon_nikodym_residual(&f, &test, n, dir, &opts)?;
            let failed = r.exact_zero == Some(false) || (r.exact_zero.is_none() && r.residual >= tolerance);
            Ok(Report::new(with_head(
                &f,
                vec![
                    ("n", json!(n)),
                    ("direction", json!(r.direction)),
                    ("lhs", json!([r.lhs.re, r.lhs.im])),
                    ("rhs", json!([r.rhs.re, r.rhs.im])),
                    ("residual", json!(r.residual)),
                    ("exact_zero", json!(r.exact_zero)),
                    ("excluded_points", json!(r.excluded_points)),
                    ("grid_order", json!(r.grid_order)),
                    ("pass", json!(!failed)),
                ],
            ))
            .failed_if(failed))
        }
    }
}

// msf

#[derive(Subcommand)]
pub enum MsfCmd {
    /// Orthonormality and shift-disjointness of a fibered set (default: Shannon).
    Check {
        #[arg(long, default_value = "haar2")]
        filter: String,
        #[arg(long)]
        qmf_constant: Option<u64>,
        /// FiberedSet JSON; requires --lambda.
        #[arg(long, requires = "lambda")]
        set: Option<PathBuf>,
        /// LambdaFunction JSON.
        #[arg(long, requires = "set")]
        lambda: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
        #[arg(long, default_value_t = 30)]
        depth: usize,
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
        /// Shift exponents `lo:hi`.
        #[arg(long, default_value = "-2:2", allow_hyphen_values = true)]
        shifts: String,
        #[arg(long, default_value_t = 10_000)]
        shift_samples: usize,
    },
    /// The Shannon set and its lambda as JSON.
    Shannon,
    /// Whether the filter can carry a generalized MSF wavelet.
    Feasibility {
        #[command(flatten)]
        filter: FilterArg,
        /// Sampled fibers searched for atoms.
        #[arg(long, default_value_t = 8)]
        fibers: usize,
        #[arg(long, default_value_t = 40)]
        depth: usize,
    },
}

fn parse_range(s: &str) -> Result<(i32, i32)> {
    let Some((lo, hi)) = s.split_once(':') else {
        bail!("shift range `{s}` is not of the form lo:hi");
    };
    Ok((lo.trim().parse()?, hi.trim().parse()?))
}

pub fn msf(cmd: MsfCmd, g: &Global) -> Result<Report> {
    match cmd {
        MsfCmd::Check {
            filter,
            qmf_constant,
            set,
            lambda,
            samples,
            depth,
            tolerance,
            shifts,
            shift_samples,
        } => {
            let f = load_filter(&filter, qmf_constant)?;
            let (set, lambda, name) = match (set, lambda) {
                (Some(s), Some(l)) => (
                    FiberedSet::from_json(&crate::input::read(&s)?)?,
                    LambdaFunction::from_json(&crate::input::read(&l)?)?,
                    s.display().to_string(),
                ),
                _ => {
                    let ex = shannon_example();
                    (ex.set, ex.lambda, "shannon".to_owned())
                }
            };
            let pts = uniform_samples(set.spec(), samples, g.seed);
            let ortho = orthonormality_check(&f, &set, &lambda, &pts, depth, tolerance)?;
            let shift = shift_disjointness_check(&f, &set, parse_range(&shifts)?, shift_samples, depth, g.seed)?;
            let failed = !ortho.pass || !shift.all_consistent;
            Ok(Report::new(with_head(
                &f,
                vec![
                    ("set", json!(name)),
                    ("orthonormality", serde_json::to_value(&ortho)?),
                    ("shift_disjointness", serde_json::to_value(&shift)?),
                    ("pass", json!(!failed)),
                ],
            ))
            .failed_if(failed))
        }
        MsfCmd::Shannon => {
            let ex = shannon_example();
            let set: Value = serde_json::from_str(&ex.set.to_json())?;
            let lambda: Value = serde_json::from_str(&ex.lambda.to_json())?;
            Ok(Report::new(object(vec![
                ("filter", json!("haar2")),
                ("set", set),
                ("lambda", lambda),
            ])))
        }
        MsfCmd::Feasibility { filter, fibers, depth } => {
            let f = filter.load()?;
            let pts = uniform_samples(f.spec(), fibers, g.seed);
            let v = msf_feasibility(&f, &pts, depth)?;
            Ok(Report::new(with_head(
                &f,
                vec![
                    ("verdict", json!(v.verdict)),
                    ("bound", certificate(&v.certificate)),
                    ("witnesses", serde_json::to_value(&v.witnesses)?),
                    ("reason", json!(v.reason)),
                ],
            ))
            .with_table(Table {
                headers: vec!["t", "k", "word", "mass"],
                rows: v
                    .witnesses
                    .iter()
                    .map(|w| {
                        vec![
                            w.t.iter().map(|x| cell(*x)).collect::<Vec<_>>().join(" "),
                            w.k.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
                            w.word.clone(),
                            cell(w.mass),
                        ]
                    })
                    .collect(),
            }))
        }
    }
}

// solenoid

#[derive(Args, Clone)]
pub struct SpecArg {
    /// Diagonal of the dilation, comma-separated.
    #[arg(long, default_value = "2")]
    diag: String,
    #[arg(long, value_enum, default_value = "unit")]
    section: SectionArg,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SectionArg {
    Unit,
    Centered,
}

impl From<SectionArg> for Section {
    fn from(s: SectionArg) -> Self {
        match s {
            SectionArg::Unit => Section::Unit,
            SectionArg::Centered => Section::Centered,
        }
    }
}

#[derive(Subcommand)]
pub enum SolenoidCmd {
    /// The solenoid point with product coordinates (t, word).
    Theta {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        word: WordArg,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Apply the shift, or its inverse, in product coordinates.
    Sigma {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[command(flatten)]
        word: WordArg,
        #[arg(long)]
        inverse: bool,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// The winding-line point of a real vector and its product coordinates.
    Wind {
        #[command(flatten)]
        spec: SpecArg,
        /// Real vector, not reduced mod 1.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
}

fn coords(s: &solenoidal::solenoid::SolenoidPoint) -> Value {
    Value::Array(s.coords().iter().map(point).collect())
}

pub fn solenoid(cmd: SolenoidCmd, g: &Global) -> Result<Report> {
    match cmd {
        SolenoidCmd::Theta { spec, t, word, depth } => {
            let section: Section = spec.section.into();
            let spec = parse_spec(&spec.diag)?;
            let t = parse_point(&spec, &t, g.precision)?;
            let word = word.parse(&spec)?;
            let p = ProductPoint::new(&spec, t.clone(), word.clone())?;
            let s = theta_with(&spec, &p, depth, section)?;
            Ok(Report::new(object(vec![
                ("diag", json!(spec.diag())),
                ("section", json!(section.name())),
                ("t", point(&t)),
                ("word", json!(word.to_string())),
                ("coords", coords(&s)),
                ("compatible", json!(s.is_compatible())),
            ])))
        }
        SolenoidCmd::Sigma {
            spec,
            t,
            word,
            inverse,
            steps,
        } => {
            let spec = parse_spec(&spec.diag)?;
            let t = parse_point(&spec, &t, g.precision)?;
            let mut p = ProductPoint::new(&spec, t, word.parse(&spec)?)?;
            for _ in 0..steps {
                p = if inverse { shift_sigma_inverse(&spec, &p) } else { shift_sigma(&spec, &p)? };
            }
            Ok(Report::new(object(vec![
                ("diag", json!(spec.diag())),
                ("inverse", json!(inverse)),
                ("steps", json!(steps)),
                ("t", point(&p.base)),
                ("word", json!(p.word.to_string())),
            ])))
        }
        SolenoidCmd::Wind { spec, x, depth } => {
            let section: Section = spec.section.into();
            let spec = parse_spec(&spec.diag)?;
            let xs = parse_reals(&spec, &x)?;
            let real = match g.precision {
                Precision::Exact => RealVector::Exact(xs),
                Precision::Float => RealVector::Float(xs.iter().map(solenoidal::dilation::rational_to_f64).collect()),
            };
            let s = winding_line(&spec, &real, depth)?;
            let p = theta_inverse_with(&s, section)?;
            Ok(Report::new(object(vec![
                ("diag", json!(spec.diag())),
                ("section", json!(section.name())),
                ("coords", coords(&s)),
                ("t", point(&p.base)),
                ("word", json!(p.word.to_string())),
            ])))
        }
    }
}
