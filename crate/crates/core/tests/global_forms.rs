mod common;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cuspvan::arith::divisors;
use cuspvan::cusps::{cusps_of_denominator, Cusp};
use cuspvan::global::{e_f, elliptic_ramification, fourier_at_cusp, NewformLocalData, Rationality, Uniformity};
use cuspvan::local_reps::LocalData;
use cuspvan::Error;

fn level_625() -> NewformLocalData {
    NewformLocalData::from_json_str(
        r#"{"k": 2, "N": 625, "locals": {"5": {"kind": "principal_series",
            "chi1": {"p": 5, "k": 2, "exponents": [1]},
            "chi2": {"p": 5, "k": 2, "exponents": [19]}}}}"#,
    )
    .unwrap()
}

#[test]
fn prime_fourth_power_level_splits_cusps_in_half() {
    // pi_5 = chi ⊞ chi^-1 with a(chi) = 2: the cusps a/25 with e_f = 1 are exactly half
    let data = level_625();
    let rep = e_f(&data, 25).unwrap();
    assert_eq!(rep.e_f, 1);
    assert_eq!(rep.uniform, Uniformity::NonUniform);
    let witness = rep.witness.unwrap();
    let one = Complex64::new(1.0, 0.0);
    let at = |c: &Cusp| fourier_at_cusp(&data, 1, c, &c.scaling_matrix(), one).unwrap().norm();
    assert!(at(&witness) < 1e-9);
    let cusps = cusps_of_denominator(625, 25).unwrap();
    assert_eq!(cusps.len(), 20);
    let vanishing = cusps.iter().filter(|c| at(c) < 1e-9).count();
    assert_eq!(vanishing, 10);

    let mut assumed = data.clone();
    assumed.rationality = Rationality::AssumeUniform;
    assert_eq!(e_f(&assumed, 25).unwrap().uniform, Uniformity::Uniform);
}

#[test]
fn contragredient_reflects_denominators() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let data = common::random_ps_form(&mut rng);
        let mut dual = data.clone();
        for local in dual.locals.values_mut() {
            if let LocalData::Concrete(d) = local {
                *d = d.contragredient();
            }
        }
        for l in divisors(data.n) {
            assert_eq!(
                e_f(&data, l).unwrap().e_f,
                e_f(&dual, data.n / l).unwrap().e_f,
                "N = {}, L = {l}",
                data.n
            );
        }
    }
}

#[test]
fn fourier_magnitudes_at_infinity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let data = common::random_ps_form(&mut rng);
        let (r, r0) = common::random_index(&mut rng, data.n);
        let a_r0 = common::unit_phase(&mut rng) * 3.0;
        let cusp = Cusp::new(1, data.n, data.n).unwrap();
        let got = fourier_at_cusp(&data, r, &cusp, &cusp.scaling_matrix(), a_r0).unwrap();
        let mut expected = a_r0.norm() * (r as f64 / r0 as f64).powf(data.k as f64 / 2.0);
        for (&p, local) in &data.locals {
            let r_p = cuspvan::arith::valuation(p, r) as i32;
            expected *= local.concrete().unwrap().toral_whittaker(r_p).unwrap().norm();
        }
        assert!((got.norm() - expected).abs() <= 1e-8 * expected.max(1.0), "{got} vs {expected}");
    }
}

#[test]
fn fourier_rejects_bad_input() {
    let data = level_625();
    let c = Cusp::new(1, 25, 625).unwrap();
    let mut s = c.scaling_matrix();
    s.d += 1;
    let one = Complex64::new(1.0, 0.0);
    assert!(matches!(fourier_at_cusp(&data, 1, &c, &s, one), Err(Error::BadMatrix(_))));
    let abstract_form = NewformLocalData::from_json_str(
        r#"{"k": 2, "N": 7, "locals": {"7": {"kind": "steinberg", "a": 0}}}"#,
    )
    .unwrap();
    let c7 = Cusp::new(1, 7, 7).unwrap();
    assert!(matches!(
        fourier_at_cusp(&abstract_form, 1, &c7, &c7.scaling_matrix(), one),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn elliptic_examples() {
    // v_2(N) = 8 with a principal series at 2 and L = 16 gives the maximum 8 * 3
    let data = NewformLocalData::from_json_str(
        r#"{"k": 2, "N": 20736, "locals": {
            "2": {"kind": "principal_series", "a1": 4, "a2": 4, "a12inv": 3},
            "3": {"kind": "principal_series", "a1": 2, "a2": 2, "a12inv": 2}}}"#,
    )
    .unwrap();
    assert_eq!(elliptic_ramification(&data, 144).unwrap().e, 24);
    assert_eq!(elliptic_ramification(&data, 16).unwrap().e, 8);
    assert_eq!(elliptic_ramification(&data, 1).unwrap().e, 1);
    let too_big = NewformLocalData::from_json_str(
        r#"{"k": 2, "N": 729, "locals": {"3": {"kind": "supercuspidal", "n": 6, "a_min": 6}}}"#,
    )
    .unwrap();
    assert!(matches!(elliptic_ramification(&too_big, 27), Err(Error::NotElliptic(_))));
}
