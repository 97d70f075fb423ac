//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use apform_core::apfinder::{
    bound_from_density, bound_from_density_ln, bound_nf, bound_nf_ln, bound_qf, bound_qf_ln,
    check_divisibility_certificate, longest_ap_per_difference, longest_ap_with_difference, DensityHypothesis,
    DivisibilityCheck, NormFormBound, QuadraticBound,
};
use apform_core::arith::{fundamental_discriminant, is_fundamental_discriminant, is_square, kronecker, sieve_primes};
use apform_core::certificate::PsCertifier;
use apform_core::density::{represented_prime_density, theta_ps};
use apform_core::normform::{
    is_invertible_ideal, module_hnf, multiplier_ring, norm_form, ok_module, NumberFieldDescription,
};
use apform_core::quadform::{
    analyze, certify_ps, enumerate_values, oracle_ps, oracle_ps_with_budget, BinaryQuadraticForm, Shape,
};
use apform_core::serde_util::round_sig;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn qvecs(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
    rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

fn field(h: &[i64]) -> NumberFieldDescription {
    NumberFieldDescription::new(h.iter().map(|&c| BigInt::from(c)).collect(), None).unwrap()
}

fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
    BinaryQuadraticForm::new(a, b, c).unwrap()
}

fn fraction_certified(c: &dyn PsCertifier, x: u64) -> f64 {
    let t = theta_ps(c, x).unwrap();
    t.count as f64 / t.reference_count as f64
}

/// Criterion 1: the cubic example, exactly.
fn exact_cubic_norm_form() {
    let start = Instant::now();
    let k = field(&[-2, 0, 0, 1]);
    let m = module_hnf(&k, &qvecs(&[&[8, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
    let f = norm_form(&k, &m).unwrap();
    let expected = [([3, 0, 0], 32), ([0, 3, 0], 1), ([0, 0, 3], 2), ([1, 1, 1], -12)];
    assert_eq!(f.coefficients().len(), expected.len());
    for (e, c) in expected {
        assert_eq!(f.coefficient(&e), q(c), "coefficient of {e:?}");
    }
    let (okm, norm) = ok_module(&k, &m).unwrap();
    assert_eq!(
        okm,
        module_hnf(&k, &qvecs(&[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap()
    );
    assert_eq!(norm, q(16));
    assert_eq!(f.scaling_norm(), &q(16));
    let o = multiplier_ring(&k, &m).unwrap();
    assert_eq!(
        o,
        module_hnf(&k, &qvecs(&[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap()
    );
    assert!(!is_invertible_ideal(&k, &m, &o).unwrap());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
}

/// Criterion 2: certifier soundness and sharpness against the exact oracle.
fn certifier_oracle_sweep() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut forms = Vec::new();
    while forms.len() < 60 {
        let (a, b, c) = (
            rng.gen_range(-20..=20i64),
            rng.gen_range(-20..=20i64),
            rng.gen_range(-20..=20i64),
        );
        let d = b * b - 4 * a * c;
        if is_square(&BigInt::from(d)) {
            continue;
        }
        let f = form(a, b, c);
        let an = analyze(&f).unwrap();
        if !an.primitive || f.shape() == Shape::NegativeDefinite {
            continue;
        }
        forms.push((an, d));
    }
    let primes = sieve_primes(47).unwrap();
    let mut certified = 0;
    for (an, d) in &forms {
        for &p in &primes {
            let oracle = oracle_ps_with_budget(&an.form, p, 47u64.pow(4)).unwrap();
            if certify_ps(an, p).is_certified() {
                certified += 1;
                assert!(oracle.in_ps, "certified but oracle disagrees: F={} p={p}", an.form);
            }
            if (2 * d) % p as i64 != 0 {
                let chi = kronecker(an.delta(), &BigInt::from(p));
                assert_eq!(oracle.in_ps, chi == -1, "F={} p={p}", an.form);
            }
        }
    }
    assert!(certified > 0);
    assert!(start.elapsed() < Duration::from_secs(120));
}

/// Criterion 3: p | f versus p | Δ.
fn subtle_prime_regression() {
    let r = oracle_ps(&form(1, 0, 3), 3).unwrap();
    assert!(!r.in_ps);
    assert_eq!(r.witness.unwrap().value, BigInt::from(3));
    assert!(oracle_ps(&form(1, 0, 9), 3).unwrap().in_ps);
    let an = analyze(&form(1, 0, 9)).unwrap();
    assert!(certify_ps(&an, 3).is_certified());
}

/// Criterion 4: long progressions of sums of two squares have 3 | g.
fn divisibility_end_to_end() {
    let f = form(1, 0, 1);
    let values = enumerate_values(&f, 10_000, None).unwrap();
    assert!(values.complete);
    let an = analyze(&f).unwrap();
    let reports = longest_ap_per_difference(&values, 60).unwrap();
    let mut long = 0;
    for r in &reports {
        assert!(r.terms().all(|t| values.contains(t)));
        if r.k >= 6 {
            long += 1;
            assert_eq!(r.g % 3, 0, "g={} k={}", r.g, r.k);
        }
        // every certified p with 2p ≤ k divides g
        for p in sieve_primes(r.k / 2).unwrap() {
            if an.certify(p).is_certified() {
                assert_eq!(r.g % p, 0, "p={p} g={} k={}", r.g, r.k);
            }
        }
    }
    assert!(long > 0);
    match check_divisibility_certificate(&an, 5, 6, None).unwrap() {
        DivisibilityCheck::Violated { p, .. } => assert_eq!(p, 3),
        other => panic!("{other:?}"),
    }
}

/// Criterion 5.
fn ap_regression() {
    let values = enumerate_values(&form(1, 0, 1), 100, None).unwrap();
    let r = longest_ap_with_difference(&values, 4).unwrap();
    assert_eq!((r.ell, r.k), (1, 5));
}

/// Criterion 6.
fn fundamental_discriminant_split() {
    let mut checked = 0;
    for d in -10_000i64..=10_000 {
        let bd = BigInt::from(d);
        if d == 0 || d.rem_euclid(4) > 1 || is_square(&bd) {
            continue;
        }
        let dec = fundamental_discriminant(&bd).unwrap();
        assert_eq!(&dec.f * &dec.f * &dec.delta, bd);
        assert!(is_fundamental_discriminant(&dec.delta).unwrap(), "d={d}");
        checked += 1;
    }
    assert!(checked > 9000);
}

/// Criterion 7: density experiments.
fn density_experiments() {
    let start = Instant::now();
    let gauss = analyze(&form(1, 0, 1)).unwrap();
    let a = fraction_certified(&gauss, 100_000);
    assert!((0.48..=0.52).contains(&a), "(a) {a}");
    let k = field(&[-2, 0, 0, 1]);
    let b = fraction_certified(&k, 100_000);
    assert!((0.30..=0.36).contains(&b), "(b) {b}");
    let values = enumerate_values(&form(1, 0, 1), 10_000, None).unwrap();
    let c = represented_prime_density(&values, 10_000).unwrap().ratio;
    assert!((0.40..=0.56).contains(&c), "(c) {c}");
    let m = module_hnf(&k, &qvecs(&[&[8, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
    let f = norm_form(&k, &m).unwrap();
    let count = |b: u64| {
        let v = apform_core::normform::enumerate_values_nf(&f, 100_000, b).unwrap();
        represented_prime_density(&v, 100_000).unwrap().count
    };
    let (c60, c120) = (count(60), count(120));
    println!("    norm form primes <= 1e5: box 60 -> {c60}, box 120 -> {c120}");
    assert!(c60 >= 25, "(d) {c60}");
    assert!(c120 >= c60, "(d) {c120} < {c60}");
    assert!(start.elapsed() < Duration::from_secs(300));
}

/// Criterion 8: closed-form bound values and monotonicity in g.
fn bound_calculators() {
    let same = |a: f64, b: f64| assert_eq!(round_sig(a), round_sig(b), "{a} vs {b}");
    let dens = DensityHypothesis { c1: 10.0, c2: 100.0 };
    same(bound_from_density_ln(&dens, 20.0).unwrap(), 400.0);
    let g20 = BigInt::from(20f64.exp().round() as u64);
    assert!((bound_from_density(&dens, &g20).unwrap() - 400.0).abs() < 1e-6);
    same(bound_from_density(&dens, &BigInt::one()).unwrap(), 200.0);
    same(
        bound_from_density_ln(&DensityHypothesis { c1: 1.0, c2: 1.0 }, 1.0).unwrap(),
        2.0,
    );

    let minus4 = BigInt::from(-4);
    same(
        bound_qf(&QuadraticBound::with_constant(1.0), &minus4, &BigInt::one()).unwrap(),
        4f64.powf(7.999),
    );
    let qb = QuadraticBound {
        c: 1.0,
        l: 1.0,
        log_improved: false,
    };
    same(bound_qf_ln(&qb, &minus4, 2.0).unwrap(), 8.0);
    let qb2 = QuadraticBound {
        c: 2.0,
        l: 1.0,
        log_improved: false,
    };
    same(bound_qf(&qb2, &BigInt::from(5), &BigInt::one()).unwrap(), 10.0);

    same(bound_nf_ln(&NormFormBound::with_constant(1.0, 1), 1.0).unwrap(), 2.0);
    same(
        bound_nf(
            &NormFormBound {
                cn: 1.0,
                l: 5.0,
                delta_tilde: 2,
            },
            &BigInt::one(),
        )
        .unwrap(),
        32.0,
    );
    same(
        bound_nf_ln(
            &NormFormBound {
                cn: 3.0,
                l: 5.0,
                delta_tilde: 1,
            },
            3.0,
        )
        .unwrap(),
        12.0,
    );

    let grid: Vec<BigInt> = (0..200u32)
        .map(|i| BigInt::from(1 + i as u64 * i as u64 * 37))
        .chain((1..40u32).map(|e| BigInt::from(3).pow(e * 10)))
        .collect();
    let mut sorted = grid.clone();
    sorted.sort();
    let qlog = QuadraticBound {
        c: 1.5,
        l: 2.0,
        log_improved: true,
    };
    let nfb = NormFormBound {
        cn: 0.5,
        l: 3.0,
        delta_tilde: 23,
    };
    for w in sorted.windows(2) {
        assert!(bound_from_density(&dens, &w[0]).unwrap() <= bound_from_density(&dens, &w[1]).unwrap());
        assert!(bound_qf(&qb, &minus4, &w[0]).unwrap() <= bound_qf(&qb, &minus4, &w[1]).unwrap());
        let d = BigInt::from(-23);
        assert!(bound_qf(&qlog, &d, &w[0]).unwrap() <= bound_qf(&qlog, &d, &w[1]).unwrap());
        assert!(bound_nf(&nfb, &w[0]).unwrap() <= bound_nf(&nfb, &w[1]).unwrap());
    }
}

fn random_module(rng: &mut ChaCha8Rng, k: &NumberFieldDescription) -> Vec<Vec<BigRational>> {
    let n = k.degree();
    loop {
        let gens: Vec<Vec<BigRational>> = (0..n)
            .map(|_| (0..n).map(|_| q(rng.gen_range(-6..=6))).collect())
            .collect();
        if module_hnf(k, &gens).is_ok() {
            return gens;
        }
    }
}

/// Criterion 9: lattice canonicality, multiplier-ring closure, integrality.
fn lattice_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in [field(&[1, 0, 1]), field(&[-2, 0, 0, 1])] {
        let ok = k.ring_of_integers();
        for _ in 0..20 {
            let gens = random_module(&mut rng, &k);
            let m = module_hnf(&k, &gens).unwrap();
            // permutation and redundancy
            let mut perm = gens.clone();
            perm.reverse();
            assert_eq!(module_hnf(&k, &perm).unwrap(), m);
            let mut redundant = gens.clone();
            let extra: Vec<BigRational> = gens[0].iter().zip(&gens[1]).map(|(a, b)| a * q(3) - b).collect();
            redundant.push(extra);
            assert_eq!(module_hnf(&k, &redundant).unwrap(), m);
            // unimodular change of generators keeps the lattice and its index
            let mut sheared = gens.clone();
            let t = q(rng.gen_range(-5..=5));
            let add: Vec<BigRational> = gens[1].iter().map(|x| x * &t).collect();
            sheared[0] = sheared[0].iter().zip(&add).map(|(a, b)| a + b).collect();
            let ms = module_hnf(&k, &sheared).unwrap();
            assert_eq!(ms, m);
            assert_eq!(ms.covolume(), m.covolume());

            let o = multiplier_ring(&k, &m).unwrap();
            assert!(o.contains(&k.one()));
            assert!(o.is_subset_of(&ok), "multiplier ring must be an order");
            let ob = o.basis();
            for a in &ob {
                for b in &ob {
                    assert!(o.contains(&k.mul(a, b)));
                }
                for g in &gens {
                    assert!(m.contains(&k.mul(a, g)));
                }
            }
            assert!(is_invertible_ideal(&k, &m, &o).is_ok());
            let (okm, norm) = ok_module(&k, &m).unwrap();
            assert!(okm.is_subset_of(&ok));
            assert!(norm.is_integer() && !norm.is_zero());
            let f = norm_form(&k, &m).unwrap();
            for _ in 0..10 {
                let x: Vec<i64> = (0..k.degree()).map(|_| rng.gen_range(-30..=30)).collect();
                assert!(f.eval_i64(&x).is_integer());
            }
        }
    }
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        ("exact cubic norm form", exact_cubic_norm_form),
        ("certifier/oracle soundness sweep", certifier_oracle_sweep),
        ("subtle-prime regression", subtle_prime_regression),
        ("divisibility certificate end-to-end", divisibility_end_to_end),
        ("AP regression", ap_regression),
        ("fundamental-discriminant property", fundamental_discriminant_split),
        ("density experiments", density_experiments),
        ("bound calculators", bound_calculators),
        ("HNF/lattice properties", lattice_properties),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let ok = catch_unwind(AssertUnwindSafe(run)).is_ok();
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status} {name} ({:.2?})", i + 1, start.elapsed());
        if !ok {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
