use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use solenoidal::cyclotomic::Cyclotomic;
use solenoidal::dilation::{parse_rational, ratio, Digit, DigitWord, DilationSpec, TorusPoint};
use solenoidal::fiber::{children_masses, cylinder_mass, CylinderSet};
use solenoidal::filters::{builtin, cantor3, haar2, qmf_residual, Filter, BUILTIN_NAMES};
use solenoidal::laurent::{GaussRat, LaurentPoly};
use solenoidal::msf::{h_function, shannon_example};
use solenoidal::solenoid::{
    convert_word, shift_sigma, shift_sigma_inverse, theta_inverse_with, theta_with, ProductPoint, Section,
};

fn spec_strategy() -> impl Strategy<Value = DilationSpec> {
    prop_oneof![
        Just(DilationSpec::scalar(2).unwrap()),
        Just(DilationSpec::scalar(3).unwrap()),
        Just(DilationSpec::new(vec![2, 3]).unwrap()),
    ]
}

fn digits(spec: &DilationSpec, raw: &[u32]) -> Vec<Digit> {
    let d = spec.dim();
    raw.chunks(d)
        .filter(|c| c.len() == d)
        .map(|c| Digit(c.iter().zip(spec.diag()).map(|(x, n)| x % n).collect()))
        .collect()
}

fn product_point() -> impl Strategy<Value = (DilationSpec, ProductPoint)> {
    (
        spec_strategy(),
        prop::collection::vec((0i64..60, 1i64..60), 2),
        prop::collection::vec(0u32..6, 0..12),
        prop::collection::vec(0u32..6, 0..6),
    )
        .prop_map(|(spec, base, prefix, period)| {
            let t = TorusPoint::exact(base[..spec.dim()].iter().map(|&(p, q)| ratio(p % q, q)).collect());
            let period = digits(&spec, &period);
            let word = DigitWord::new(&spec, digits(&spec, &prefix), (!period.is_empty()).then_some(period)).unwrap();
            let p = ProductPoint::new(&spec, t, word).unwrap();
            (spec, p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rationals_parse_back(p in -10_000i64..10_000, q in 1i64..10_000) {
        let r = ratio(p, q);
        prop_assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn decimals_parse_exactly(whole in 0u32..1000, frac in 0u32..1000) {
        let s = format!("{whole}.{frac:03}");
        prop_assert_eq!(parse_rational(&s).unwrap(), ratio(whole as i64 * 1000 + frac as i64, 1000));
    }

    #[test]
    fn theta_round_trips((spec, p) in product_point(), centered in any::<bool>()) {
        let section = if centered { Section::Centered } else { Section::Unit };
        let s = theta_with(&spec, &p, 14, section).unwrap();
        prop_assert!(s.is_compatible());
        let back = theta_inverse_with(&s, section).unwrap();
        prop_assert_eq!(&back.base, &p.base);
        prop_assert!(back.word.agrees_to(&p.word, 14));
    }

    #[test]
    fn sections_describe_the_same_point((spec, p) in product_point()) {
        let w = convert_word(&spec, &p.base, &p.word, Section::Unit, Section::Centered).unwrap();
        let q = ProductPoint::new(&spec, p.base.clone(), w).unwrap();
        let a = theta_with(&spec, &p, 10, Section::Unit).unwrap();
        let b = theta_with(&spec, &q, 10, Section::Centered).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn shifts_are_inverse((spec, p) in product_point()) {
        let q = shift_sigma(&spec, &shift_sigma_inverse(&spec, &p)).unwrap();
        prop_assert!(q.same_point(&p));
        if p.word.depth() > 0 || p.word.period().is_some() {
            let q = shift_sigma_inverse(&spec, &shift_sigma(&spec, &p).unwrap());
            prop_assert!(q.same_point(&p));
        }
    }

    #[test]
    fn integers_survive_the_odometer(k in -500i64..500, v in -20i64..20) {
        let spec = DilationSpec::scalar(3).unwrap();
        let w = spec.integer_to_word(&[k], 8).unwrap();
        let sum = spec.odometer_add(&w, &[v]).unwrap();
        prop_assert!(sum.same_point(&spec.integer_to_word(&[k + v], 8).unwrap()));
        if k + v >= 0 {
            prop_assert_eq!(spec.word_to_integer(&sum).unwrap(), vec![BigInt::from(k + v)]);
        }
    }

    #[test]
    fn builtins_are_qmf(idx in 0usize..4, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let f = builtin(BUILTIN_NAMES[idx]).unwrap();
        let f = if f.label() == "sierpinski" { f.with_qmf_constant(3) } else { f };
        let t = TorusPoint::float(vec![x, y][..f.spec().dim()].to_vec());
        prop_assert!(qmf_residual(&f, &t) < 1e-12);
    }

    #[test]
    fn children_sum_to_parent(x in 0.0f64..1.0, raw in prop::collection::vec(0u32..3, 0..12), cantor in any::<bool>()) {
        let f = if cantor { cantor3() } else { haar2() };
        let spec = f.spec().clone();
        let c = CylinderSet::new(&spec, TorusPoint::float(vec![x]), DigitWord::finite(&spec, digits(&spec, &raw)).unwrap()).unwrap();
        let parent = cylinder_mass(&f, &c).value;
        let sum: f64 = children_masses(&f, &c).iter().map(|(_, m)| m.value).sum();
        prop_assert!((sum - parent).abs() <= 1e-12 * parent.max(1e-300) + 1e-300);
    }

    #[test]
    fn cylinder_masses_shrink(x in 0.0f64..1.0, raw in prop::collection::vec(0u32..3, 1..16)) {
        let f = cantor3();
        let spec = f.spec().clone();
        let word = DigitWord::finite(&spec, digits(&spec, &raw)).unwrap();
        let mut prev = 1.0;
        for k in 1..=word.depth() {
            let c = CylinderSet::new(&spec, TorusPoint::float(vec![x]), word.truncate(k)).unwrap();
            let m = cylinder_mass(&f, &c).value;
            prop_assert!(m <= prev * (2.0 / 3.0) * (1.0 + 1e-12));
            prev = m;
        }
    }

    #[test]
    fn cyclotomic_add_sub_cancel(a in prop::collection::vec((0u64..36, -5i128..5), 0..10), b in prop::collection::vec((0u64..24, -5i128..5), 0..10)) {
        let build = |order: u64, xs: &[(u64, i128)]| xs.iter().fold(Cyclotomic::zero(), |acc, &(e, c)| {
            acc.add(&Cyclotomic::root(order, e as i64).scale(c, 1).unwrap()).unwrap()
        });
        let x = build(36, &a);
        let y = build(24, &b);
        let back = x.add(&y).unwrap().sub(&y).unwrap();
        prop_assert!(back.exact_eq(&x).unwrap());
        let prod = x.mul(&y).unwrap().to_complex();
        prop_assert!((prod - x.to_complex() * y.to_complex()).norm() < 1e-9);
    }

    #[test]
    fn laurent_products_evaluate_pointwise(
        a in prop::collection::vec((-3i64..3, -4i64..4), 1..5),
        b in prop::collection::vec((-3i64..3, -4i64..4), 1..5),
        t in 0.0f64..1.0,
    ) {
        let poly = |xs: &[(i64, i64)]| LaurentPoly::from_terms(1, xs.iter().map(|&(e, c)| (vec![e], GaussRat::from_int(c)))).unwrap();
        let (p, q) = (poly(&a), poly(&b));
        let lhs = p.mul(&q).unwrap().eval(&[t]);
        let rhs: Complex64 = p.eval(&[t]) * q.eval(&[t]);
        prop_assert!((lhs - rhs).norm() < 1e-9);
    }

    #[test]
    fn h_scales_quadratically(p in 1i64..1000, c in 0.1f64..5.0) {
        let ex = shannon_example();
        let t = TorusPoint::exact(vec![BigRational::new(p.into(), 1001.into())]);
        let f = haar2();
        let h1 = h_function(&f, &ex.set, &ex.lambda, &t, 30).unwrap().unwrap();
        let h2 = h_function(&f, &ex.set, &ex.lambda.scaled(Complex64::new(c, 0.0)), &t, 30).unwrap().unwrap();
        prop_assert!((h2 - c * c * h1).abs() < 1e-10 * h2.max(1.0));
        prop_assert!((h1 - 1.0).abs() < 1e-10);
    }
}
