//! Self-check suites: exhaustive comparisons between the closed forms and the
//! independent computations they summarize.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::gauss_eps::{classify, gauss_sum, gauss_sum_closed, zeta1, GaussClass};
use crate::global::{brunault_checks, elliptic_table};
use crate::local_reps::{vanishing_index_oracle, vanishing_index_table, LocalRepDescriptor};
use crate::padic_chars::{dual_group, enumerate_chars, PadicCharacter, UnitGroup};
use crate::whittaker::{c_table, vanishing_index_from_table, DEFINITIONAL_WINDOW, RESIDUAL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Characters,
    Gauss,
    Table,
    Definitional,
    Symmetry,
    Global,
    Brunault,
}

impl Suite {
    /// Every suite, in the order `verify all` runs them.
    pub const ALL: [Suite; 7] = [
        Suite::Characters,
        Suite::Gauss,
        Suite::Table,
        Suite::Definitional,
        Suite::Symmetry,
        Suite::Global,
        Suite::Brunault,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Characters => "characters",
            Suite::Gauss => "gauss",
            Suite::Table => "table",
            Suite::Definitional => "definitional",
            Suite::Symmetry => "symmetry",
            Suite::Global => "global",
            Suite::Brunault => "brunault",
        }
    }

    pub fn run(self) -> SuiteReport {
        let start = Instant::now();
        let result = match self {
            Suite::Characters => character_lemmas(&[2, 3, 5, 7], 2..=4),
            Suite::Gauss => gauss_suite(&[2, 3, 5], -2..=5, 3, 1e-9),
            Suite::Table => table_vs_oracle(&[(2, 8), (3, 5), (5, 4)]),
            Suite::Definitional => definitional_suite(&[(2, 6), (3, 6), (5, 6)]),
            Suite::Symmetry => symmetry_suite(&[(2, 8), (3, 5), (5, 4)], &[(2, 5), (3, 4)]),
            Suite::Global => global_agreement(8, 5),
            Suite::Brunault => brunault_suite(8, 5),
        };
        let mut report = result.unwrap_or_else(|e| Outcome {
            cases: 0,
            failures: vec![format!("suite aborted: {e}")],
        });
        report.failures.sort();
        report.failures.dedup();
        SuiteReport {
            suite: self,
            cases: report.cases,
            failures: report.failures,
            elapsed: start.elapsed(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Cases examined and failure messages, before sorting.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn merge(mut self, other: Outcome) -> Outcome {
        self.cases += other.cases;
        self.failures.extend(other.failures);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub cases: usize,
    /// sorted, so the first entry is the lexicographically smallest witness
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn witness(&self) -> Option<&str> {
        self.failures.first().map(String::as_str)
    }
}

// ---------------------------------------------------------------------------
// Characters

/// Twisting lemmas for characters of conductor `k`: for `p > 2` some `mu` of
/// conductor `k` keeps `a(mu chi) = k`; for `p = 2` the best possible is `k - 1`
/// (and `0` when `k = 2`). The two-character version splits into four cases by
/// `p` and `a(chi1/chi2)`. Also checks the group orders and conductor
/// subadditivity.
pub fn character_lemmas(primes: &[u64], ks: std::ops::RangeInclusive<u32>) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &p in primes {
        for k in ks.clone() {
            out = out.merge(character_lemmas_at(p, k)?);
        }
    }
    // no character mod 8 with a(chi) = 3 and a(chi^2) = 2
    for chi in enumerate_chars(2, 3, true)? {
        out.check(chi.pow(2).conductor() != 2, || format!("p=2: {chi:?} has a(chi)=3, a(chi^2)=2"));
    }
    Ok(out)
}

fn character_lemmas_at(p: u64, k: u32) -> Result<Outcome> {
    let mut out = Outcome::default();
    let dual = dual_group(p, k)?;
    let exact: Vec<usize> = dual.of_conductor(k).collect();
    let all = dual.len() as u64;
    out.check(all == p.pow(k - 1) * (p - 1), || format!("p={p} k={k}: #X_k = {all}"));
    let expect = p.pow(k - 2) * (p - 1) * (p - 1);
    out.check(exact.len() as u64 == expect, || {
        format!("p={p} k={k}: #X'_k = {} expected {expect}", exact.len())
    });

    for &c in &exact {
        let conds: Vec<u32> = exact.iter().map(|&mu| dual.conductor(dual.mul(mu, c))).collect();
        let ok = match (p, k) {
            (2, 2) => conds.iter().all(|&a| a == 0),
            (2, _) => conds.contains(&(k - 1)) && conds.iter().all(|&a| a < k),
            _ => conds.contains(&k),
        };
        out.check(ok, || format!("p={p} k={k} chi={:?}: single twist conductors {conds:?}", dual.character(c).exponents()));
    }

    let pairs: Vec<(usize, usize)> = exact
        .iter()
        .enumerate()
        .flat_map(|(x, &i)| exact[x..].iter().map(move |&j| (i, j)))
        .collect();
    let pair_out = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut o = Outcome::default();
            let quotient = dual.conductor(dual.mul(i, dual.inv(j)));
            let twists = exact
                .iter()
                .map(|&mu| (dual.conductor(dual.mul(mu, i)), dual.conductor(dual.mul(mu, j))));
            let max_sum = || twists.clone().map(|(a, b)| a + b).max().unwrap_or(0);
            let ok = if p > 3 || (p == 3 && quotient < k) {
                twists.clone().any(|(a, b)| a == k && b == k)
            } else if p == 3 {
                max_sum() == 2 * k - 1
            } else if quotient + 1 < k {
                if k > 2 {
                    twists.clone().any(|(a, b)| a == k - 1 && b == k - 1)
                } else {
                    twists.clone().all(|(a, b)| a == 0 && b == 0)
                }
            } else if quotient + 1 == k {
                if k >= 4 {
                    max_sum() == 2 * k - 3
                } else {
                    k == 3 && twists.clone().all(|(a, b)| (a, b) == (2, 0) || (a, b) == (0, 2))
                }
            } else {
                false
            };
            o.check(ok, || {
                format!(
                    "p={p} k={k} chi1={:?} chi2={:?} a(chi1/chi2)={quotient}: pair twist lemma fails",
                    dual.character(i).exponents(),
                    dual.character(j).exponents()
                )
            });
            // conductor of a product: at most the max, equal when the two differ
            let (ai, aj) = (dual.conductor(i), dual.conductor(j));
            let prod = dual.conductor(dual.mul(i, j));
            o.check(prod <= ai.max(aj), || format!("p={p} k={k}: a(chi1 chi2) = {prod} > max"));
            o
        })
        .reduce(Outcome::default, Outcome::merge);
    out = out.merge(pair_out);

    // strict subadditivity across different conductors
    for c in 0..k {
        for i in dual.of_conductor(c).take(4) {
            for &j in exact.iter().take(8) {
                let prod = dual.conductor(dual.mul(i, j));
                out.check(prod == k, || format!("p={p}: a(chi1 chi2) = {prod} with conductors {c} < {k}"));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Gauss sums

/// Direct Gauss sums against the closed form for every `mu` with `a(mu) <= max_a`,
/// several units `v` and each `r` in `rs`.
pub fn gauss_suite(primes: &[u64], rs: std::ops::RangeInclusive<i32>, max_a: u32, tol: f64) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &p in primes {
        let exact = gauss_sum(1, 1, &PadicCharacter::trivial(p, 0)?)?.value;
        let target = -1.0 / (p as f64 - 1.0);
        out.check((exact - target).norm() < 1e-12, || {
            format!("p={p}: G(1/p, 1) = {exact}, expected {target}")
        });
        let units: Vec<i64> = (1..(p * p) as i64).filter(|u| u % p as i64 != 0).take(5).collect();
        for mu in enumerate_chars(p, max_a, false)? {
            let a = mu.conductor();
            for r in rs.clone() {
                for &v in &units {
                    let direct = gauss_sum(v, r, &mu)?.value;
                    let closed = gauss_sum_closed(v, r, &mu)?;
                    let modulus = match classify(r, a) {
                        GaussClass::Integral => 1.0,
                        GaussClass::Boundary => 1.0 / (p as f64 - 1.0),
                        GaussClass::Principal => zeta1(p) * (p as f64).powf(-r as f64 / 2.0),
                        GaussClass::Zero => 0.0,
                    };
                    out.check((direct - closed).norm() < tol && (direct.norm() - modulus).abs() < tol, || {
                        format!(
                            "p={p} a(mu)={a} r={r} v={v} exps={:?}: direct {direct} closed {closed} |G| expected {modulus}",
                            mu.exponents()
                        )
                    });
                }
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Descriptor enumeration

fn exact_chars(p: u64, a: u32) -> Result<Vec<PadicCharacter>> {
    if a == 0 {
        return Ok(vec![PadicCharacter::trivial(p, 0)?]);
    }
    enumerate_chars(p, a, true)
}

/// Every concrete descriptor over Q_p of conductor `1..=max_n` with value 1 at `p`
/// for the characters involved: Steinberg twists, principal series (unordered
/// pairs), and twists `chi pi0` of minimal supercuspidals for every admissible
/// `(a(pi0), a(omega_pi0))`.
pub fn enumerate_descriptors(p: u64, max_n: u32) -> Result<Vec<LocalRepDescriptor>> {
    let mut out = Vec::new();
    for a in 0..=max_n / 2 {
        let n = if a == 0 { 1 } else { 2 * a };
        if n <= max_n {
            for chi in exact_chars(p, a)? {
                out.push(LocalRepDescriptor::steinberg(chi));
            }
        }
    }
    out.extend(principal_series(p, max_n, false)?);
    for a0 in 2..=max_n {
        for m0 in 0..=a0 / 2 {
            for c in 0..=max_n / 2 {
                if a0.max(m0 + c).max(2 * c) > max_n {
                    continue;
                }
                for chi in exact_chars(p, c)? {
                    let d = LocalRepDescriptor::supercuspidal(a0, m0, chi)?;
                    if d.atkin_li_consistent() {
                        out.push(d);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Ramified principal series `chi1 ⊞ chi2` with `a(chi1) <= a(chi2)` and
/// `a(chi1) + a(chi2) <= max_n`. With `galois_orbits`, one pair per orbit of
/// `(chi1, chi2) -> (chi1^s, chi2^s)`, `s` prime to the order of the character group.
pub fn principal_series(p: u64, max_n: u32, galois_orbits: bool) -> Result<Vec<LocalRepDescriptor>> {
    let mut out = Vec::new();
    for a1 in 0..=max_n / 2 {
        for a2 in a1.max(1)..=max_n - a1 {
            let c1 = exact_chars(p, a1)?;
            let c2 = exact_chars(p, a2)?;
            let exponent = UnitGroup::get(p, a2)?.exponent();
            let mut seen: HashSet<(Vec<u64>, Vec<u64>)> = HashSet::new();
            for (x, chi1) in c1.iter().enumerate() {
                let start = if a1 == a2 { x } else { 0 };
                for chi2 in &c2[start..] {
                    if galois_orbits {
                        let key = |a: &PadicCharacter, b: &PadicCharacter| {
                            let (a, b) = (a.exponents().to_vec(), b.exponents().to_vec());
                            if a1 == a2 && b < a { (b, a) } else { (a, b) }
                        };
                        if seen.contains(&key(chi1, chi2)) {
                            continue;
                        }
                        for s in (1..exponent.max(2)).filter(|&s| gcd(s, exponent) == 1) {
                            seen.insert(key(&chi1.pow(s as i64), &chi2.pow(s as i64)));
                        }
                    }
                    out.push(LocalRepDescriptor::principal_series(chi1.clone(), chi2.clone())?);
                }
            }
        }
    }
    Ok(out)
}

fn describe(d: &LocalRepDescriptor) -> String {
    let exps = |c: &PadicCharacter| format!("{:?}@{}", c.exponents(), c.k());
    match d {
        LocalRepDescriptor::SteinbergTwist { chi } => format!("St chi={}", exps(chi)),
        LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
            format!("PS chi1={} chi2={}", exps(chi1), exps(chi2))
        }
        LocalRepDescriptor::Supercuspidal { a0, m0, chi } => {
            format!("SC a0={a0} m0={m0} chi={}", exps(chi))
        }
    }
}

fn witness_prefix(d: &LocalRepDescriptor, l: u32) -> String {
    format!("p={} n={} l={l} {}", d.p(), d.conductor(), describe(d))
}

// ---------------------------------------------------------------------------
// Local vanishing index

/// Closed form against the exhaustive twist search on every descriptor with
/// `p` and conductor up to the given bound, at every level.
pub fn table_vs_oracle(bounds: &[(u64, u32)]) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &(p, max_n) in bounds {
        let ds = enumerate_descriptors(p, max_n)?;
        let o = ds
            .par_iter()
            .map(|d| {
                let mut o = Outcome::default();
                for l in 0..=d.conductor() {
                    let table = vanishing_index_table(&d.abstract_data(), p, l);
                    let oracle = vanishing_index_oracle(d, l);
                    o.check(matches!((&table, &oracle), (Ok(a), Ok(b)) if a == b), || {
                        format!("{}: table {table:?} oracle {oracle:?}", witness_prefix(d, l))
                    });
                }
                o
            })
            .reduce(Outcome::default, Outcome::merge);
        out = out.merge(o);
    }
    Ok(out)
}

/// Vanishing index read off the Whittaker newform (solved from the basic identity)
/// against the closed form, for ramified principal series. Also checks the
/// re-substitution residual. For `p >= 5` one pair per Galois orbit is used.
pub fn definitional_suite(bounds: &[(u64, u32)]) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &(p, max_n) in bounds {
        let ds = principal_series(p, max_n, p >= 5)?;
        let cases: Vec<(&LocalRepDescriptor, u32)> = ds
            .iter()
            .flat_map(|d| (0..=d.conductor()).map(move |l| (d, l)))
            .collect();
        let o = cases
            .par_iter()
            .map(|&(d, l)| {
                let mut o = Outcome::default();
                let result = (|| -> Result<(u32, u32, f64)> {
                    let dpl = d.d_pi(l)? as i32;
                    let table = c_table(d, l, -dpl + DEFINITIONAL_WINDOW as i32)?;
                    let e = vanishing_index_from_table(&table)?;
                    let expected = vanishing_index_table(&d.abstract_data(), p, l)?;
                    Ok((e, expected, table.residual()))
                })();
                o.check(
                    matches!(result, Ok((e, x, res)) if e == x && res < RESIDUAL_TOL),
                    || format!("{}: (definitional, table, residual) = {result:?}", witness_prefix(d, l)),
                );
                o
            })
            .reduce(Outcome::default, Outcome::merge);
        out = out.merge(o);
    }
    Ok(out)
}

/// `e_pi(l) = e_contragredient(n - l)` by direct search on every descriptor within
/// `oracle_bounds`; invariance of the definitional index under an unramified twist
/// on principal series within `twist_bounds`.
pub fn symmetry_suite(oracle_bounds: &[(u64, u32)], twist_bounds: &[(u64, u32)]) -> Result<Outcome> {
    let mut out = Outcome::default();
    for &(p, max_n) in oracle_bounds {
        let ds = enumerate_descriptors(p, max_n)?;
        let o = ds
            .par_iter()
            .map(|d| {
                let mut o = Outcome::default();
                let n = d.conductor();
                let dual = d.contragredient();
                for l in 0..=n {
                    let a = vanishing_index_oracle(d, l);
                    let b = vanishing_index_oracle(&dual, n - l);
                    o.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || {
                        format!("{}: e(l) = {a:?}, contragredient e(n-l) = {b:?}", witness_prefix(d, l))
                    });
                }
                o
            })
            .reduce(Outcome::default, Outcome::merge);
        out = out.merge(o);
    }
    let z = Complex64::from_polar(2f64.powf(0.37), 0.9);
    for &(p, max_n) in twist_bounds {
        let ds = principal_series(p, max_n, false)?;
        let o = ds
            .par_iter()
            .map(|d| {
                let mut o = Outcome::default();
                for l in 0..=d.conductor() {
                    let result = (|| -> Result<(u32, u32)> {
                        let twisted = d.unramified_twist(z)?;
                        let dpl = d.d_pi(l)? as i32;
                        let t_max = -dpl + DEFINITIONAL_WINDOW as i32;
                        Ok((
                            vanishing_index_from_table(&c_table(d, l, t_max)?)?,
                            vanishing_index_from_table(&c_table(&twisted, l, t_max)?)?,
                        ))
                    })();
                    o.check(matches!(result, Ok((a, b)) if a == b), || {
                        format!("{}: (e, e after unramified twist) = {result:?}", witness_prefix(d, l))
                    });
                }
                o
            })
            .reduce(Outcome::default, Outcome::merge);
        out = out.merge(o);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Elliptic curves

/// The elliptic-curve case table against the general local table on every
/// admissible configuration.
pub fn global_agreement(max_n2: u32, max_n3: u32) -> Result<Outcome> {
    let mut out = Outcome::default();
    for row in elliptic_table(&[(2, max_n2), (3, max_n3), (5, 2), (7, 2), (11, 2)])? {
        out.check(row.e_elliptic == row.e_general, || {
            format!(
                "p={} n={} l={} {:?}: elliptic {} general {}",
                row.p, row.n_p, row.l_p, row.local, row.e_elliptic, row.e_general
            )
        });
    }
    Ok(out)
}

pub fn brunault_suite(max_n2: u32, max_n3: u32) -> Result<Outcome> {
    let report = brunault_checks(max_n2, max_n3)?;
    let mut out = Outcome {
        cases: report.combinations,
        failures: report.failures.clone(),
    };
    out.check(report.max_e == 24, || format!("largest ramification index {} (expected 24)", report.max_e));
    Ok(out)
}
