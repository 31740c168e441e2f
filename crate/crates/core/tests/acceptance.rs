//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solenoidal::atoms::{atom_partial_products, atomless_certificate, classical_atom_decomposition, haar_phi_hat_sq, integer_box};
use solenoidal::dilation::{ratio, Digit, DigitWord, DilationSpec, TorusPoint};
use solenoidal::fiber::{children_masses, cylinder_mass, sample_word, sample_words, total_mass_at_depth, CylinderSet, TotalMode};
use solenoidal::filters::{cantor3, haar2, haar3, qmf_report, sierpinski, Filter, LaurentFilter};
use solenoidal::laurent::GaussRat;
use solenoidal::msf::{msf_feasibility, orthonormality_check, shannon_example, shift_disjointness_check, uniform_samples, Verdict};
use solenoidal::solenoid::{
    shift_sigma, shift_sigma_inverse, theta_inverse_with, theta_with, winding_line, ProductPoint, RealVector, Section,
};
use solenoidal::tau::{integrate_preimage_form, integrate_pushforward, radon_nikodym_residual, trig_monomial, Direction, Method, TauOptions};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_rational(rng: &mut ChaCha8Rng, max_den: i64) -> BigRational {
    let q = rng.gen_range(1..=max_den);
    ratio(rng.gen_range(0..q), q)
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, max_den: i64) -> TorusPoint {
    TorusPoint::exact((0..dim).map(|_| random_rational(rng, max_den)).collect())
}

fn random_digits(rng: &mut ChaCha8Rng, spec: &DilationSpec, len: usize) -> Vec<Digit> {
    (0..len)
        .map(|_| Digit(spec.diag().iter().map(|&n| rng.gen_range(0..n)).collect()))
        .collect()
}

fn qmf_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let sierpinski3 = sierpinski().with_qmf_constant(3);
    let filters: [&LaurentFilter; 4] = [&haar2(), &haar3(), &cantor3(), &sierpinski3];
    let mut worst: f64 = 0.0;
    for f in filters {
        let d = f.spec().dim();
        let floats: Vec<TorusPoint> = (0..1000).map(|_| TorusPoint::float((0..d).map(|_| rng.gen()).collect())).collect();
        let r = qmf_report(f, &floats).map_err(|e| e.to_string())?;
        ensure(r.max_residual < 1e-12, || format!("{}: float residual {}", f.label(), r.max_residual))?;
        worst = worst.max(r.max_residual);
        let exact: Vec<TorusPoint> = (0..50).map(|_| random_point(&mut rng, d, 40)).collect();
        let r = qmf_report(f, &exact).map_err(|e| e.to_string())?;
        ensure(r.exact && r.max_residual == 0.0, || format!("{}: exact residual {:?}", f.label(), r))?;
    }
    Ok(format!("max float residual {worst:.1e}; exact residual 0 at 50 rational points each; sierpinski against 3"))
}

fn fiber_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let sierpinski3 = sierpinski().with_qmf_constant(3);
    let filters: [&LaurentFilter; 4] = [&haar2(), &haar3(), &cantor3(), &sierpinski3];
    let mut checks = 0usize;
    for f in filters {
        let spec = f.spec();
        for _ in 0..100 {
            let t = random_point(&mut rng, spec.dim(), 12);
            let digits = random_digits(&mut rng, spec, 10);
            for k in 0..10 {
                let c = CylinderSet::new(spec, t.clone(), DigitWord::finite(spec, digits[..k].to_vec()).unwrap()).unwrap();
                let parent = cylinder_mass(f, &c).exact.ok_or("parent mass not exact")?;
                let mut sum = solenoidal::cyclotomic::Cyclotomic::zero();
                for (_, m) in children_masses(f, &c) {
                    sum = sum.add(&m.exact.ok_or("child mass not exact")?).map_err(|e| e.to_string())?;
                }
                let zero = sum.sub(&parent).and_then(|x| x.is_zero()).map_err(|e| e.to_string())?;
                ensure(zero, || format!("{}: children do not sum to parent at depth {k} over {t}", f.label()))?;
                checks += 1;
            }
        }
    }
    for f in [&cantor3(), &haar2()] {
        let t = random_point(&mut rng, 1, 12);
        let total = total_mass_at_depth(f, &t, 8, TotalMode::BruteForce).map_err(|e| e.to_string())?;
        let q = total.mass.rational();
        ensure(q == Some(ratio(1, 1)), || format!("{}: brute-force total {:?}", f.label(), q))?;
    }
    Ok(format!("{checks} exact parent/children checks; brute-force depth-8 totals exactly 1"))
}

fn classical_atoms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = haar2();
    let near = integer_box(1, 10);
    let far = integer_box(1, 100);
    let (mut worst, mut worst_sum): (f64, f64) = (0.0, 0.0);
    for _ in 0..20 {
        let t = random_point(&mut rng, 1, 97);
        let tf = t.to_f64()[0];
        for a in classical_atom_decomposition(&f, &t, &near, 40).map_err(|e| e.to_string())? {
            let err = (a.mass - haar_phi_hat_sq(tf + a.k[0] as f64)).abs();
            worst = worst.max(err);
            ensure(err < 1e-8, || format!("t = {t}, k = {}: mass {} off by {err}", a.k[0], a.mass))?;
        }
        let sum: f64 = classical_atom_decomposition(&f, &t, &far, 40)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|a| a.mass)
            .sum();
        worst_sum = worst_sum.max((sum - 1.0).abs());
        ensure((sum - 1.0).abs() < 5e-3, || format!("t = {t}: masses sum to {sum}"))?;
    }
    Ok(format!("max mass error {worst:.1e}; max |sum - 1| {worst_sum:.1e}"))
}

fn atomless_certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0usize;
    for (f, expected) in [(cantor3(), ratio(2, 3)), (sierpinski(), ratio(9, 16))] {
        let cert = atomless_certificate(&f).ok_or_else(|| format!("{}: no certificate", f.label()))?;
        ensure(cert.exact.as_ref() == Some(&expected), || format!("{}: bound {:?}", f.label(), cert.exact))?;
        let spec = f.spec().clone();
        for i in 0..100 {
            let t = random_point(&mut rng, spec.dim(), 50);
            let word = if i % 2 == 0 {
                sample_word(&f, &t, 20, i).map_err(|e| e.to_string())?
            } else {
                DigitWord::finite(&spec, random_digits(&mut rng, &spec, 20)).unwrap()
            };
            for (k, m) in atom_partial_products(&f, &t, &word, 20).iter().enumerate() {
                let env = cert.bound.powi(k as i32 + 1);
                ensure(*m <= env * (1.0 + 1e-12), || format!("{}: depth {} mass {m} above {env}", f.label(), k + 1))?;
                checked += 1;
            }
        }
    }
    Ok(format!("bounds 2/3 and 9/16; {checked} cylinder masses within the envelope"))
}

fn tau_two_forms() -> Outcome {
    let opts = TauOptions::default();
    let mut checks = 0usize;
    for f in [haar2(), haar3(), cantor3()] {
        for n in 0..=4 {
            for v in -3..=3 {
                let g = trig_monomial(vec![v]);
                let a = integrate_pushforward(&f, &g, n, &opts).map_err(|e| e.to_string())?;
                let b = integrate_preimage_form(&f, &g, n, &opts).map_err(|e| e.to_string())?;
                ensure(a.method == Method::Exact && b.method == Method::Exact, || format!("{}: inexact at n = {n}", f.label()))?;
                ensure(a.exact == b.exact, || format!("{}: n = {n}, v = {v}: {:?} vs {:?}", f.label(), a.exact, b.exact))?;
                checks += 1;
            }
        }
        for n in 0..=6 {
            let one = integrate_pushforward(&f, &trig_monomial(vec![0]), n, &opts).map_err(|e| e.to_string())?;
            ensure(one.exact == Some(GaussRat::one()), || format!("{}: int 1 = {:?} at n = {n}", f.label(), one.exact))?;
        }
    }
    Ok(format!("{checks} exact equalities; total mass exactly 1 for n <= 6"))
}

fn radon_nikodym() -> Outcome {
    let opts = TauOptions::with_grid_order(256);
    let mut worst_fwd: f64 = 0.0;
    for f in [haar2(), cantor3()] {
        for n in 0..=3 {
            for k in -3..=3 {
                let g = trig_monomial(vec![k]);
                let inv = radon_nikodym_residual(&f, &g, n, Direction::Inverse, &opts).map_err(|e| e.to_string())?;
                ensure(inv.exact_zero == Some(true), || format!("{}: inverse n = {n}, k = {k}: {:?}", f.label(), inv))?;
                let fwd = radon_nikodym_residual(&f, &g, n, Direction::Forward, &opts).map_err(|e| e.to_string())?;
                worst_fwd = worst_fwd.max(fwd.residual);
                ensure(fwd.residual < 1e-6, || format!("{}: forward n = {n}, k = {k}: {}", f.label(), fwd.residual))?;
            }
        }
    }
    Ok(format!("inverse residuals exactly 0; max forward residual {worst_fwd:.1e}"))
}

fn shannon_suite() -> Outcome {
    let ex = shannon_example();
    let h = haar2();
    let samples = uniform_samples(ex.set.spec(), 256, 7);
    let r = orthonormality_check(&h, &ex.set, &ex.lambda, &samples, 30, 1e-4).map_err(|e| e.to_string())?;
    ensure(r.pass, || format!("orthonormality {r:?}"))?;
    let s = shift_disjointness_check(&h, &ex.set, (-2, 2), 10_000, 30, 7).map_err(|e| e.to_string())?;
    ensure(s.all_consistent, || format!("overlaps {:?}", s.overlaps))?;
    let max_overlap = s.overlaps.iter().map(|o| o.estimate).fold(0.0, f64::max);
    for (f, want) in [
        (haar2(), Verdict::AtomicFeasible),
        (haar3(), Verdict::AtomicFeasible),
        (cantor3(), Verdict::AtomlessNoMSF),
        (sierpinski(), Verdict::AtomlessNoMSF),
    ] {
        let fibers = uniform_samples(f.spec(), 8, 9);
        let v = msf_feasibility(&f, &fibers, 40).map_err(|e| e.to_string())?;
        ensure(v.verdict == want, || format!("{}: {:?}", f.label(), v))?;
        if want == Verdict::AtomicFeasible {
            ensure(v.witnesses.len() == fibers.len(), || format!("{}: missing witnesses", f.label()))?;
        }
    }
    Ok(format!(
        "max |h - 1| {:.1e} ({} excluded); max overlap {max_overlap} over {} samples; verdicts as expected",
        r.max_deviation, r.excluded, s.n_samples
    ))
}

fn coordinate_round_trips() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let specs = [
        DilationSpec::scalar(2).unwrap(),
        DilationSpec::scalar(3).unwrap(),
        DilationSpec::new(vec![2, 3]).unwrap(),
    ];
    let mut compat = 0usize;
    for i in 0..1000 {
        let spec = &specs[i % specs.len()];
        let base = random_point(&mut rng, spec.dim(), 64);
        let prefix_len = rng.gen_range(0..6);
        let prefix = random_digits(&mut rng, spec, prefix_len);
        let period = if prefix_len == 0 || rng.gen_bool(0.5) {
            let len = rng.gen_range(1..4);
            Some(random_digits(&mut rng, spec, len))
        } else {
            None
        };
        let word = DigitWord::new(spec, prefix, period).unwrap();
        let p = ProductPoint::new(spec, base, word).unwrap();
        let depth = 12;
        for section in [Section::Unit, Section::Centered] {
            let s = theta_with(spec, &p, depth, section).map_err(|e| e.to_string())?;
            ensure(s.is_compatible(), || format!("theta({p}) not compatible"))?;
            compat += 1;
            let back = theta_inverse_with(&s, section).map_err(|e| e.to_string())?;
            ensure(back.base == p.base && back.word.agrees_to(&p.word, depth), || {
                format!("theta_inverse(theta({p})) = {back}")
            })?;
        }
        let there = shift_sigma_inverse(spec, &p);
        let back = shift_sigma(spec, &there).map_err(|e| e.to_string())?;
        ensure(back.same_point(&p), || format!("sigma(sigma^-1({p})) = {back}"))?;
        let there = shift_sigma(spec, &p).map_err(|e| e.to_string())?;
        let back = shift_sigma_inverse(spec, &there);
        ensure(back.same_point(&p), || format!("sigma^-1(sigma({p})) = {back}"))?;
        let real: Vec<BigRational> = (0..spec.dim())
            .map(|_| BigRational::new(rng.gen_range(-200i64..200).into(), rng.gen_range(1i64..50).into()))
            .collect();
        let w = winding_line(spec, &RealVector::Exact(real), depth).map_err(|e| e.to_string())?;
        ensure(w.is_compatible() && w.sigma_inverse().is_compatible(), || "winding line not compatible".into())?;
        compat += 2;
    }
    Ok(format!("1000 exact round trips; {compat} constructed points compatible"))
}

fn sampler_law() -> Outcome {
    let f = cantor3();
    let spec = f.spec().clone();
    let t = TorusPoint::zero(1);
    let n = 100_000usize;
    let words = sample_words(&f, &t, 3, n, 42).map_err(|e| e.to_string())?;
    let again = sample_words(&f, &t, 3, n, 42).map_err(|e| e.to_string())?;
    ensure(words.iter().zip(&again).all(|(a, b)| a.word == b.word), || "sampler not deterministic".into())?;
    let mut counts = std::collections::HashMap::new();
    for w in &words {
        *counts.entry(w.word.clone()).or_insert(0usize) += 1;
    }
    let mut worst_z: f64 = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                let word = DigitWord::from_scalars(&spec, &[a, b, c], None).unwrap();
                let mass = cylinder_mass(&f, &CylinderSet::new(&spec, t.clone(), word.clone()).unwrap());
                let p = mass.exact.as_ref().ok_or("mass not exact")?.to_complex().re;
                let hits = counts.get(&word).copied().unwrap_or(0);
                let freq = hits as f64 / n as f64;
                let sigma = (p * (1.0 - p) / n as f64).sqrt();
                if mass.is_exact_zero() {
                    ensure(hits == 0, || format!("{word}: zero-mass cylinder hit {hits} times"))?;
                    continue;
                }
                let z = (freq - p).abs() / sigma;
                worst_z = worst_z.max(z);
                ensure(z <= 4.0, || format!("{word}: frequency {freq} vs mass {p} ({z:.2} sigma)"))?;
            }
        }
    }
    Ok(format!("27 cylinders within {worst_z:.2} sigma; identical words under a fixed seed"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 qmf identity", qmf_identity),
        ("2 fiber measure consistency", fiber_consistency),
        ("3 classical atom masses", classical_atoms),
        ("4 atomless certificates", atomless_certificates),
        ("5 tau two-form agreement", tau_two_forms),
        ("6 radon-nikodym", radon_nikodym),
        ("7 shannon msf suite", shannon_suite),
        ("8 coordinate round trips", coordinate_round_trips),
        ("9 sampler law", sampler_law),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
