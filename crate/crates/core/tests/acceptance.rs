//! Acceptance run: one PASS/FAIL line per criterion, tolerances and time limits
//! fixed below. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cuspvan::arith::{divisors, gcd, valuation};
use cuspvan::cusps::{all_cusps, cusp_count, delta, width, Cusp};
use cuspvan::global::{brunault_checks, e_f, fourier_at_cusp, NewformLocalData, Uniformity};
use cuspvan::verify::{
    character_lemmas, definitional_suite, gauss_suite, global_agreement, symmetry_suite,
    table_vs_oracle, Outcome,
};

const GAUSS_TOL: f64 = 1e-9;
const FOURIER_TOL: f64 = 1e-8;

struct Verdict {
    passed: bool,
    detail: String,
}

fn from_outcome(o: cuspvan::Result<Outcome>) -> Verdict {
    match o {
        Ok(o) => {
            let mut failures = o.failures;
            failures.sort();
            Verdict {
                passed: failures.is_empty() && o.cases > 0,
                detail: match failures.first() {
                    None => format!("{} cases", o.cases),
                    Some(w) => format!("{} cases, {} failures; first: {w}", o.cases, failures.len()),
                },
            }
        }
        Err(e) => Verdict {
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn criterion(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let ok = v.passed && in_time;
    let limit = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
    println!(
        "{} {id}. {name}: {}; {:.2}s{limit}",
        if ok { "PASS" } else { "FAIL" },
        v.detail,
        elapsed.as_secs_f64()
    );
    ok
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn brute_phi(n: u64) -> u64 {
    (1..=n).filter(|&a| gcd(a, n) == 1).count() as u64
}

/// Least h > 0 such that conjugating [[1, h], [0, 1]] back from the cusp lands in
/// Gamma_0(N) with lower-right entry 1 mod M.
fn brute_period(c: &Cusp, m: u64) -> u64 {
    let s = c.scaling_matrix();
    let (a, l) = (s.a, s.l);
    // sigma^-1 T^h sigma = [[1 - a L h, a^2 h], [-L^2 h, 1 + a L h]]
    (1..)
        .find(|&h: &i64| (l * l * h) % c.n as i64 == 0 && (a * l * h) % m as i64 == 0)
        .unwrap() as u64
}

fn cusp_combinatorics() -> Verdict {
    for n in 1..=1000u64 {
        let sum: u64 = divisors(n).into_iter().map(|l| brute_phi(gcd(l, n / l))).sum();
        if cusp_count(n).ok() != Some(sum) || all_cusps(n).map(|c| c.len() as u64).ok() != Some(sum) {
            return Verdict { passed: false, detail: format!("cusp count mismatch at N = {n}") };
        }
        for l in divisors(n) {
            let w = width(n, l).unwrap();
            if w != n / gcd(l * l, n) || delta(n, 1, l).unwrap() != w {
                return Verdict { passed: false, detail: format!("width/delta mismatch at N = {n}, L = {l}") };
            }
        }
    }
    for n in 1..=200u64 {
        for c in all_cusps(n).unwrap() {
            for m in divisors(n) {
                if delta(n, m, c.l).unwrap() != brute_period(&c, m) {
                    return Verdict {
                        passed: false,
                        detail: format!("period mismatch at N = {n}, M = {m}, L = {}", c.l),
                    };
                }
            }
        }
    }
    Verdict { passed: true, detail: "N <= 1000 counts and widths, N <= 200 periods by conjugation".into() }
}

fn level_567() -> Verdict {
    let data = NewformLocalData::from_json_str(
        r#"{"k": 2, "N": 567, "M": 1, "locals": {
            "3": {"kind": "principal_series", "a1": 2, "a2": 2, "a12inv": 2},
            "7": {"kind": "steinberg", "a": 0}}}"#,
    );
    match data.and_then(|d| e_f(&d, 9)) {
        Ok(r) => Verdict {
            passed: r.e_f == 3 && r.uniform == Uniformity::Unknown,
            detail: format!("e_f(9) = {}, uniformity {}", r.e_f, r.uniform.as_str()),
        },
        Err(e) => Verdict { passed: false, detail: format!("error: {e}") },
    }
}

fn fourier_self_consistency() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let data = common::random_ps_form(&mut rng);
        let (r, r0) = common::random_index(&mut rng, data.n);
        let a_r0 = common::unit_phase(&mut rng) * rng.gen_range(0.5..4.0);
        let cusp = Cusp::new(1, data.n, data.n).unwrap();
        let got = match fourier_at_cusp(&data, r, &cusp, &cusp.scaling_matrix(), a_r0) {
            Ok(z) => z,
            Err(e) => return Verdict { passed: false, detail: format!("pair {i}: {e}") },
        };
        let mut expected = a_r0.norm() * (r as f64 / r0 as f64).powf(data.k as f64 / 2.0);
        for (&p, local) in &data.locals {
            let t = local.concrete().unwrap().toral_whittaker(valuation(p, r) as i32).unwrap();
            expected *= t.norm();
        }
        let err = (got.norm() - expected).abs() / expected.max(1.0);
        worst = worst.max(err);
        if err > FOURIER_TOL {
            return Verdict {
                passed: false,
                detail: format!("pair {i}: N = {}, r = {r}: |a| = {} vs {expected}", data.n, got.norm()),
            };
        }
    }
    Verdict { passed: true, detail: format!("100 pairs, worst relative error {worst:.1e}") }
}

fn main() -> ExitCode {
    let results = [
        criterion(1, "character lemmas, p in {2,3,5,7}, 2 <= k <= 4", secs(5), || {
            from_outcome(character_lemmas(&[2, 3, 5, 7], 2..=4))
        }),
        criterion(2, "Gauss sums, p in {2,3,5}, -2 <= r <= 5, a(mu) <= 3", secs(1), || {
            from_outcome(gauss_suite(&[2, 3, 5], -2..=5, 3, GAUSS_TOL))
        }),
        criterion(3, "closed form vs twist search, p=2 n<=8, p=3 n<=5, p=5 n<=4", secs(60), || {
            from_outcome(table_vs_oracle(&[(2, 8), (3, 5), (5, 4)]))
        }),
        criterion(4, "closed form vs Whittaker newform, principal series, p in {2,3,5}, n <= 6", secs(120), || {
            from_outcome(definitional_suite(&[(2, 6), (3, 6), (5, 6)]))
        }),
        criterion(5, "contragredient and unramified-twist symmetry", None, || {
            from_outcome(symmetry_suite(&[(2, 8), (3, 5), (5, 4)], &[(2, 6), (3, 5), (5, 3)]))
        }),
        criterion(6, "elliptic case table vs general table, Brunault observations", secs(10), || {
            let agree = from_outcome(global_agreement(8, 5));
            match brunault_checks(8, 5) {
                Ok(b) => Verdict {
                    passed: agree.passed && b.passed() && b.max_e == 24 && b.values.iter().all(|e| 24 % e == 0),
                    detail: format!(
                        "{}; {} combinations, values {:?}, {} counterexamples",
                        agree.detail,
                        b.combinations,
                        b.values,
                        b.failures.len()
                    ),
                },
                Err(e) => Verdict { passed: false, detail: format!("error: {e}") },
            }
        }),
        criterion(7, "level 567 = 3^4 7 example", None, level_567),
        criterion(8, "cusp counts, widths and periods", None, cusp_combinatorics),
        criterion(9, "Fourier coefficients at 1/N", None, fourier_self_consistency),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} acceptance criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
