#![allow(dead_code)]

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;

use cuspvan::arith::gcd;
use cuspvan::global::{NewformLocalData, Rationality};
use cuspvan::local_reps::{LocalData, LocalRepDescriptor};
use cuspvan::padic_chars::{enumerate_chars, PadicCharacter};

pub fn unit_phase<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

fn random_char<R: Rng>(rng: &mut R, p: u64, a: u32) -> PadicCharacter {
    let base = if a == 0 {
        PadicCharacter::trivial(p, 0).unwrap()
    } else {
        let cs = enumerate_chars(p, a, true).unwrap();
        cs[rng.gen_range(0..cs.len())].clone()
    };
    base.with_varpi(unit_phase(rng))
}

/// A ramified principal series over Q_p with conductor at most `max_n`; about half
/// of the time one of the two characters is unramified.
pub fn random_principal_series<R: Rng>(rng: &mut R, p: u64, max_n: u32) -> LocalRepDescriptor {
    let min_ramified = if p == 2 { 2 } else { 1 };
    loop {
        let (a1, a2) = if rng.gen_bool(0.5) {
            (0, rng.gen_range(min_ramified..=max_n))
        } else {
            let a1 = rng.gen_range(min_ramified..=max_n / 2);
            (a1, rng.gen_range(a1..=max_n - a1))
        };
        if a2 < min_ramified || a1 + a2 > max_n {
            continue;
        }
        let (chi1, chi2) = (random_char(rng, p, a1), random_char(rng, p, a2));
        if let Ok(d) = LocalRepDescriptor::principal_series(chi1, chi2) {
            return d;
        }
    }
}

/// A newform with principal-series components at a random nonempty subset of
/// {2, 3, 5, 7}.
pub fn random_ps_form<R: Rng>(rng: &mut R) -> NewformLocalData {
    let bounds = [(2u64, 4u32), (3, 3), (5, 2), (7, 2)];
    loop {
        let mut locals = BTreeMap::new();
        let (mut n, mut m) = (1u64, 1u64);
        for &(p, max_n) in &bounds {
            if rng.gen_bool(0.5) {
                let d = random_principal_series(rng, p, max_n);
                n *= p.pow(d.conductor());
                m *= p.pow(d.central_char_conductor().unwrap());
                locals.insert(p, LocalData::Concrete(d));
            }
        }
        if locals.is_empty() {
            continue;
        }
        let data = NewformLocalData {
            k: rng.gen_range(2..=6),
            n,
            m,
            locals,
            rationality: Rationality::Unknown,
        };
        data.validate().unwrap();
        return data;
    }
}

/// A positive integer whose prime-to-`n` part is `r0`.
pub fn random_index<R: Rng>(rng: &mut R, n: u64) -> (u64, u64) {
    let r0 = loop {
        let r0 = [1u64, 1, 11, 13, 17, 19, 23][rng.gen_range(0..7)];
        if gcd(r0, n) == 1 {
            break r0;
        }
    };
    let mut r = r0;
    for p in [2u64, 3, 5, 7] {
        if n % p == 0 {
            r *= p.pow(rng.gen_range(0..=4));
        }
    }
    (r, r0)
}
