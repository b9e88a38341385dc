//! Newforms described by their local components: vanishing orders `e_f(L)` at cusps
//! of denominator `L`, Fourier coefficients at cusps, and the elliptic-curve case.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, inv_mod, lcm, valuation};
use crate::cusps::{delta, Cusp, ScalingMatrix};
use crate::error::{Error, Result};
use crate::local_reps::{
    vanishing_index_oracle, vanishing_index_table, AbstractLocalData, LocalData,
    LocalRepDescriptor, RepType,
};
use crate::padic_chars::enumerate_chars;
use crate::whittaker::c_table;

/// What is known about the coefficient field of the newform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rationality {
    /// The Fourier coefficients are rational (e.g. the newform of an elliptic curve).
    RationalCoefficients,
    /// The caller asserts that all cusps of a given denominator behave alike.
    AssumeUniform,
    #[default]
    Unknown,
}

/// A newform of weight `k`, level `N` and character of conductor `M`, given by its
/// local components at the primes dividing `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NewformLocalData {
    pub k: u32,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "M", default = "one")]
    pub m: u64,
    pub locals: BTreeMap<u64, LocalData>,
    #[serde(default)]
    pub rationality: Rationality,
}

fn one() -> u64 {
    1
}

/// Whether every cusp of denominator `L` has the same vanishing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Uniformity {
    Uniform,
    /// Some cusp of denominator `L` vanishes to higher order.
    NonUniform,
    Unknown,
}

impl Uniformity {
    pub fn as_str(self) -> &'static str {
        match self {
            Uniformity::Uniform => "uniform",
            Uniformity::NonUniform => "non_uniform",
            Uniformity::Unknown => "unknown",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeReport {
    pub p: u64,
    pub n_p: u32,
    pub l_p: u32,
    pub e_p: u32,
    pub uniform: Uniformity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspVanishingReport {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "L")]
    pub l: u64,
    pub primes: Vec<PrimeReport>,
    pub e_f: u64,
    pub uniform: Uniformity,
    /// A cusp of denominator `L` whose vanishing order exceeds `e_f`, when one was
    /// found.
    pub witness: Option<Cusp>,
}

impl NewformLocalData {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidArgument(format!("weight must be at least 2, got {}", self.k)));
        }
        if self.n == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        if self.m == 0 || self.n % self.m != 0 {
            return Err(Error::NotADivisor { d: self.m, n: self.n });
        }
        let primes: BTreeSet<u64> = factorize(self.n).into_iter().map(|(p, _)| p).collect();
        let keys: BTreeSet<u64> = self.locals.keys().copied().collect();
        if primes != keys {
            return Err(Error::InvalidDescriptor(format!(
                "local components given at {keys:?}, but N = {} has prime divisors {primes:?}",
                self.n
            )));
        }
        let mut central = 1u64;
        let mut central_known = true;
        for (&p, local) in &self.locals {
            let n_p = valuation(p, self.n);
            match local {
                LocalData::Abstract(a) => {
                    a.validate(p)?;
                    central_known = false;
                }
                LocalData::Concrete(d) => {
                    if d.p() != p {
                        return Err(Error::InvalidDescriptor(format!(
                            "descriptor over Q_{} filed under p = {p}",
                            d.p()
                        )));
                    }
                    d.validate()?;
                    match d.central_char_conductor() {
                        Ok(m) => central *= p.pow(m),
                        Err(_) => central_known = false,
                    }
                }
            }
            if local.conductor() != n_p {
                return Err(Error::InvalidDescriptor(format!(
                    "local conductor {} at p = {p} but v_p(N) = {n_p}",
                    local.conductor()
                )));
            }
        }
        if central_known && central != self.m {
            return Err(Error::InvalidDescriptor(format!(
                "central characters have conductor {central}, but M = {}",
                self.m
            )));
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let data: NewformLocalData = serde_json::from_str(s)
            .map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        data.validate()?;
        Ok(data)
    }
}

/// `e_p` at one prime: the closed form, cross-checked against the direct search when
/// the local component is concrete.
pub fn local_index(local: &LocalData, p: u64, l: u32) -> Result<u32> {
    let e = vanishing_index_table(&local.abstract_data(), p, l)?;
    if let LocalData::Concrete(d) = local {
        let oracle = vanishing_index_oracle(d, l)?;
        if oracle != e {
            return Err(Error::InternalInconsistency(format!(
                "closed form gives {e}, search gives {oracle} at p = {p}, l = {l} for {d:?}"
            )));
        }
    }
    Ok(e)
}

/// Data for locating the zeros of `v -> W(g(e - d, l, v))` at one prime.
struct CriticalValues {
    p: u64,
    l: u32,
    n: u32,
    e: u32,
    d: u32,
    /// `v mod p^l` with `W(g(e - d, l, v)) = 0`
    zeros: Vec<u64>,
}

fn prime_uniformity(local: &LocalData, p: u64, n_p: u32, l_p: u32, e_p: u32) -> Result<(Uniformity, Option<CriticalValues>)> {
    if l_p.min(n_p - l_p) == 0 || n_p <= 1 {
        return Ok((Uniformity::Uniform, None));
    }
    let Some(d) = local.concrete() else {
        return Ok((Uniformity::Unknown, None));
    };
    if !matches!(d.rep_type(), RepType::Type2 | RepType::Type3b) {
        return Ok((Uniformity::Unknown, None));
    }
    let dpl = d.d_pi(l_p)?;
    let t = e_p as i32 - dpl as i32;
    let values = c_table(d, l_p, t)?.values(t)?;
    let tol = crate::tolerance();
    let zeros: Vec<u64> = values.iter().filter(|w| w.value.norm() <= tol).map(|w| w.v).collect();
    let u = if zeros.is_empty() {
        Uniformity::Uniform
    } else {
        Uniformity::NonUniform
    };
    Ok((
        u,
        Some(CriticalValues {
            p,
            l: l_p,
            n: n_p,
            e: e_p,
            d: dpl,
            zeros,
        }),
    ))
}

/// The unit `u_p` with `a_f(r; a/L)` proportional to `W_p(g(r_p - d, l_p, u_p))`:
/// `u_p = -a (p^(r_p)/r) lcm(L, M, N/L) / p^(d - l_p)` reduced mod `p^l_p`.
fn local_unit(p: u64, l_p: u32, d: u32, a: i64, r: u64, big_l: u64, m: u64, n: u64) -> Result<i64> {
    let modulus = p.pow(l_p) as i64;
    if modulus == 1 {
        return Ok(1);
    }
    let r_p = valuation(p, r);
    let r_unit = (r / p.pow(r_p)) as i64;
    let big = lcm(lcm(big_l, m), n / big_l);
    let shift = d - l_p;
    if valuation(p, big) != shift {
        return Err(Error::InternalInconsistency(format!(
            "v_{p}(lcm(L, M, N/L)) = {} but d - l = {shift}",
            valuation(p, big)
        )));
    }
    let big_unit = ((big / p.pow(shift)) as i64).rem_euclid(modulus);
    let r_inv = inv_mod(r_unit, modulus).expect("prime-to-p part is a unit");
    Ok((-(a as i128) * r_inv as i128 % modulus as i128 * big_unit as i128).rem_euclid(modulus as i128) as i64)
}

/// `e_f(L)` with per-prime data and the uniformity verdict.
pub fn e_f(data: &NewformLocalData, big_l: u64) -> Result<CuspVanishingReport> {
    data.validate()?;
    if big_l == 0 || data.n % big_l != 0 {
        return Err(Error::NotADivisor { d: big_l, n: data.n });
    }
    let mut primes = Vec::new();
    let mut e_f = 1u64;
    let mut critical = Vec::new();
    for (&p, local) in &data.locals {
        let n_p = valuation(p, data.n);
        let l_p = valuation(p, big_l);
        let e_p = local_index(local, p, l_p)?;
        e_f *= p.pow(e_p);
        let (uniform, crit) = prime_uniformity(local, p, n_p, l_p, e_p)?;
        if let Some(c) = crit {
            critical.push(c);
        }
        primes.push(PrimeReport {
            p,
            n_p,
            l_p,
            e_p,
            uniform,
        });
    }
    let computed = if primes.iter().any(|r| r.uniform == Uniformity::NonUniform) {
        Uniformity::NonUniform
    } else if primes.iter().all(|r| r.uniform == Uniformity::Uniform) {
        Uniformity::Uniform
    } else {
        Uniformity::Unknown
    };
    let uniform = match data.rationality {
        Rationality::RationalCoefficients | Rationality::AssumeUniform => Uniformity::Uniform,
        Rationality::Unknown => computed,
    };
    let witness = if uniform == Uniformity::NonUniform {
        find_witness(data, big_l, e_f, &critical)?
    } else {
        None
    };
    Ok(CuspVanishingReport {
        n: data.n,
        l: big_l,
        primes,
        e_f,
        uniform,
        witness,
    })
}

fn find_witness(data: &NewformLocalData, big_l: u64, r: u64, critical: &[CriticalValues]) -> Result<Option<Cusp>> {
    for a in 1..=data.n as i64 {
        if gcd(a as u64, data.n) != 1 {
            continue;
        }
        for c in critical.iter().filter(|c| !c.zeros.is_empty()) {
            debug_assert!(c.n >= 2 && c.e <= c.d + 8);
            let u = local_unit(c.p, c.l, c.d, a, r, big_l, data.m, data.n)?;
            if c.zeros.contains(&(u as u64)) {
                return Ok(Some(Cusp::new(a, big_l, data.n)?.canonical()));
            }
        }
    }
    Ok(None)
}

/// `exp(2 pi i num/den)` with the fraction reduced exactly first.
fn e_rational(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    Complex64::from_polar(1.0, TAU * r as f64 / den as f64)
}

/// The Fourier coefficient `a_f(r; a/L)` of the expansion at the cusp `a/L` taken
/// with respect to `sigma`, from `a_f(r0)` (`r0` the prime-to-`N` part of `r`) and
/// the local Whittaker newforms:
///
/// `a_f(r; a/L)/r^(k/2) = a_f(r0)/r0^(k/2) e(r d/(delta L)) prod_p W_p(g(r_p - d_p, l_p, u_p)) / delta^(k/2)`.
///
/// Every local component must be a ramified principal series.
pub fn fourier_at_cusp(
    data: &NewformLocalData,
    r: u64,
    cusp: &Cusp,
    sigma: &ScalingMatrix,
    a_r0: Complex64,
) -> Result<Complex64> {
    data.validate()?;
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    if cusp.n != data.n {
        return Err(Error::InvalidArgument(format!(
            "cusp of level {} for a newform of level {}",
            cusp.n, data.n
        )));
    }
    if sigma.a != cusp.a || sigma.l != cusp.l as i64 {
        return Err(Error::BadMatrix(format!(
            "sigma^-1 has first column ({}, {}), cusp is {}/{}",
            sigma.a, sigma.l, cusp.a, cusp.l
        )));
    }
    sigma.validate_for(cusp)?;
    let big_l = cusp.l;
    let dl = delta(data.n, data.m, big_l)?;
    let k = data.k as f64;
    let mut r0 = r;
    let mut product = Complex64::new(1.0, 0.0);
    for (&p, local) in &data.locals {
        let d = match local {
            LocalData::Concrete(d) if matches!(d.rep_type(), RepType::Type2 | RepType::Type3b) => d,
            _ => {
                return Err(Error::Unsupported(format!(
                    "local component at p = {p} is not a concrete ramified principal series"
                )))
            }
        };
        let r_p = valuation(p, r);
        r0 /= p.pow(r_p);
        let l_p = valuation(p, big_l);
        let dpl = d.d_pi(l_p)?;
        let u = local_unit(p, l_p, dpl, cusp.a, r, big_l, data.m, data.n)?;
        let t = r_p as i32 - dpl as i32;
        product *= c_table(d, l_p, t)?.value(t, u)?;
    }
    let phase = e_rational(r as i128 * sigma.d as i128, dl as i128 * big_l as i128);
    Ok(a_r0 * (r as f64 / r0 as f64).powf(k / 2.0) * phase * product / (dl as f64).powf(k / 2.0))
}

// ---------------------------------------------------------------------------
// Elliptic curves: weight 2, trivial character, rational coefficients.

/// Largest `v_p(N)` for the conductor of an elliptic curve over Q.
pub fn elliptic_conductor_bound(p: u64) -> u32 {
    match p {
        2 => 8,
        3 => 5,
        _ => 2,
    }
}

/// `e_p` in the ramification index at a cusp, from `(v_p(N), v_p(L))` and the
/// shape of the local component.
pub fn elliptic_local_exponent(p: u64, n_p: u32, l_p: u32, local: Option<&AbstractLocalData>) -> u32 {
    let is_ps = matches!(local, Some(AbstractLocalData::PrincipalSeries { .. }));
    match p {
        3 => (n_p == 4 && l_p == 2 && is_ps) as u32,
        2 => {
            if n_p <= 2 || n_p != 2 * l_p {
                0
            } else if matches!(local, Some(AbstractLocalData::Supercuspidal { a_min, .. }) if *a_min + 1 == n_p) {
                1
            } else if n_p == 8 && is_ps {
                3
            } else {
                2
            }
        }
        _ => 0,
    }
}

fn not_elliptic<T>(msg: String) -> Result<T> {
    Err(Error::NotElliptic(msg))
}

fn close(z: Complex64, w: f64) -> bool {
    (z - w).norm() < 1e-9
}

/// Check the constraints on weight, character, conductor exponents and central
/// characters satisfied by the newform of an elliptic curve.
pub fn check_elliptic_admissible(data: &NewformLocalData) -> Result<()> {
    if data.k != 2 || data.m != 1 {
        return not_elliptic(format!("need k = 2 and M = 1, got k = {}, M = {}", data.k, data.m));
    }
    for (&p, local) in &data.locals {
        let n_p = local.conductor();
        if n_p > elliptic_conductor_bound(p) {
            return not_elliptic(format!("v_{p}(N) = {n_p} exceeds {}", elliptic_conductor_bound(p)));
        }
        match local {
            LocalData::Abstract(AbstractLocalData::PrincipalSeries { a1, a2, .. }) if a1 != a2 => {
                return not_elliptic(format!(
                    "principal series at {p} with trivial central character needs a(chi1) = a(chi2)"
                ))
            }
            LocalData::Abstract(AbstractLocalData::Steinberg { a }) => {
                let max_quadratic = if p == 2 { 3 } else { 1 };
                if *a > max_quadratic {
                    return not_elliptic(format!("no quadratic character of conductor {a} at {p}"));
                }
            }
            LocalData::Abstract(AbstractLocalData::Supercuspidal { n, a_min })
                if p == 2 && n == a_min && n % 2 == 0 && *n != 2 =>
            {
                return not_elliptic(format!(
                    "minimal supercuspidal of even conductor {n} at 2 has nontrivial central character"
                ))
            }
            LocalData::Concrete(d) => match d {
                LocalRepDescriptor::SteinbergTwist { chi } => {
                    let sq = chi.pow(2);
                    if sq.conductor() != 0 || !close(sq.varpi_value(), 1.0) {
                        return not_elliptic(format!("Steinberg twist at {p} by a non-quadratic character"));
                    }
                }
                LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                    let w = chi1.mul(chi2)?;
                    if w.conductor() != 0 || !close(w.varpi_value(), 1.0) {
                        return not_elliptic(format!("principal series at {p} with nontrivial central character"));
                    }
                }
                LocalRepDescriptor::Supercuspidal { a0, m0, chi } => {
                    if chi.pow(2).conductor() != *m0 {
                        return not_elliptic(format!(
                            "supercuspidal at {p}: chi^2 cannot cancel a central character of conductor {m0}"
                        ));
                    }
                    if !d.atkin_li_consistent() {
                        return not_elliptic(format!(
                            "minimal supercuspidal of conductor {a0} at 2 with a(omega) < a/2 must have odd conductor or conductor 2"
                        ));
                    }
                }
            },
            _ => {}
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllipticReport {
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "L")]
    pub l: u64,
    /// `(p, e_p)` for each prime dividing `N`
    pub exponents: Vec<(u64, u32)>,
    pub e: u64,
}

/// Ramification index of the modular parametrization at cusps of denominator `L`,
/// from the elliptic-curve classification, cross-checked against [`e_f`].
pub fn elliptic_ramification(data: &NewformLocalData, big_l: u64) -> Result<EllipticReport> {
    data.validate()?;
    check_elliptic_admissible(data)?;
    let general = e_f(data, big_l)?;
    let mut exponents = Vec::new();
    let mut e = 1u64;
    for (&p, local) in &data.locals {
        let n_p = valuation(p, data.n);
        let l_p = valuation(p, big_l);
        let e_p = elliptic_local_exponent(p, n_p, l_p, Some(&local.abstract_data()));
        let expected = general.primes.iter().find(|r| r.p == p).map(|r| r.e_p).unwrap_or(0);
        if e_p != expected {
            return Err(Error::InternalInconsistency(format!(
                "elliptic table gives e_{p} = {e_p}, general table gives {expected}"
            )));
        }
        exponents.push((p, e_p));
        e *= p.pow(e_p);
    }
    Ok(EllipticReport {
        n: data.n,
        l: big_l,
        exponents,
        e,
    })
}

/// Local components with trivial central character and `v_p(N) <= max_n`, described
/// by conductor data. Includes the unramified case as `None`.
pub fn elliptic_local_configurations(p: u64, max_n: u32) -> Result<Vec<Option<AbstractLocalData>>> {
    let mut out: BTreeSet<Option<AbstractLocalData>> = BTreeSet::new();
    out.insert(None);
    if max_n >= 1 {
        out.insert(Some(AbstractLocalData::Steinberg { a: 0 }));
    }
    for a in 1..=max_n / 2 {
        for chi in enumerate_chars(p, a, true)? {
            if chi.order_on_units() <= 2 {
                out.insert(Some(AbstractLocalData::Steinberg { a }));
            }
            out.insert(Some(AbstractLocalData::PrincipalSeries {
                a1: a,
                a2: a,
                a12inv: chi.pow(2).conductor(),
            }));
            let n = 2 * a;
            if n >= 4 {
                // chi pi0 with omega0 = chi^-2 and a(pi0) < n
                let m0 = chi.pow(2).conductor();
                for a0 in 2..n {
                    let atkin_li = p != 2 || 2 * m0 == a0 || a0 % 2 == 1 || a0 == 2;
                    if 2 * m0 <= a0 && atkin_li {
                        out.insert(Some(AbstractLocalData::Supercuspidal { n, a_min: a0 }));
                    }
                }
            }
        }
    }
    for n in 2..=max_n {
        if p != 2 || n % 2 == 1 || n == 2 {
            out.insert(Some(AbstractLocalData::Supercuspidal { n, a_min: n }));
        }
    }
    Ok(out.into_iter().collect())
}

impl PartialOrd for AbstractLocalData {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AbstractLocalData {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        fn key(a: &AbstractLocalData) -> (u8, u32, u32, u32) {
            match *a {
                AbstractLocalData::Steinberg { a } => (0, a, 0, 0),
                AbstractLocalData::PrincipalSeries { a1, a2, a12inv } => (1, a1, a2, a12inv),
                AbstractLocalData::Supercuspidal { n, a_min } => (2, n, a_min, 0),
            }
        }
        key(self).cmp(&key(other))
    }
}

/// One row of the elliptic local table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticTableRow {
    pub p: u64,
    pub n_p: u32,
    pub l_p: u32,
    pub local: Option<AbstractLocalData>,
    /// from the elliptic-curve classification
    pub e_elliptic: u32,
    /// from the general local table
    pub e_general: u32,
}

/// Both local formulas on every admissible `(p, local, l_p)` for `p` in `primes`.
pub fn elliptic_table(primes: &[(u64, u32)]) -> Result<Vec<EllipticTableRow>> {
    let mut rows = Vec::new();
    for &(p, max_n) in primes {
        for local in elliptic_local_configurations(p, max_n)? {
            let n_p = local.map_or(0, |a| a.conductor());
            for l_p in 0..=n_p {
                let e_general = match &local {
                    Some(a) => vanishing_index_table(a, p, l_p)?,
                    None => 0,
                };
                rows.push(EllipticTableRow {
                    p,
                    n_p,
                    l_p,
                    local,
                    e_elliptic: elliptic_local_exponent(p, n_p, l_p, local.as_ref()),
                    e_general,
                });
            }
        }
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrunaultReport {
    /// number of (2-part, 3-part) combinations examined
    pub combinations: usize,
    pub max_e: u64,
    /// every value of `e` that occurs
    pub values: Vec<u64>,
    pub failures: Vec<String>,
}

impl BrunaultReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check, over every admissible local configuration at 2 and 3 and every cusp
/// denominator: `e | 24`; `e` even implies `v_2(L) in {2, 3, 4}` and
/// `v_2(N) = 2 v_2(L)`; `8 | e` implies `v_2(L) = 4`, `v_2(N) = 8`; `3 | e` implies
/// `v_3(L) = 2`, `v_3(N) = 4`. Also checks that both local formulas agree, and that
/// primes `>= 5` never contribute.
pub fn brunault_checks(max_n2: u32, max_n3: u32) -> Result<BrunaultReport> {
    let mut failures = Vec::new();
    let rows = elliptic_table(&[(2, max_n2), (3, max_n3), (5, 2), (7, 2)])?;
    for row in &rows {
        if row.e_elliptic != row.e_general {
            failures.push(format!(
                "p={} n={} l={} {:?}: elliptic {} vs general {}",
                row.p, row.n_p, row.l_p, row.local, row.e_elliptic, row.e_general
            ));
        }
        if row.p >= 5 && row.e_general != 0 {
            failures.push(format!("p={} contributes e_p = {}", row.p, row.e_general));
        }
    }
    let twos: Vec<&EllipticTableRow> = rows.iter().filter(|r| r.p == 2).collect();
    let threes: Vec<&EllipticTableRow> = rows.iter().filter(|r| r.p == 3).collect();
    let mut values = BTreeSet::new();
    let mut combinations = 0;
    for r2 in &twos {
        for r3 in &threes {
            combinations += 1;
            let e = 2u64.pow(r2.e_general) * 3u64.pow(r3.e_general);
            values.insert(e);
            let ctx = || format!("v2(N)={} v2(L)={} {:?}; v3(N)={} v3(L)={} {:?}; e={e}", r2.n_p, r2.l_p, r2.local, r3.n_p, r3.l_p, r3.local);
            if 24 % e != 0 {
                failures.push(format!("e does not divide 24: {}", ctx()));
            }
            if e % 2 == 0 && !((2..=4).contains(&r2.l_p) && r2.n_p == 2 * r2.l_p) {
                failures.push(format!("even e outside v2(L) in 2..4, v2(N) = 2 v2(L): {}", ctx()));
            }
            if e % 8 == 0 && !(r2.l_p == 4 && r2.n_p == 8) {
                failures.push(format!("8 | e without v2(L) = 4, v2(N) = 8: {}", ctx()));
            }
            if e % 3 == 0 && !(r3.l_p == 2 && r3.n_p == 4) {
                failures.push(format!("3 | e without v3(L) = 2, v3(N) = 4: {}", ctx()));
            }
        }
    }
    Ok(BrunaultReport {
        combinations,
        max_e: values.iter().copied().max().unwrap_or(1),
        values: values.into_iter().collect(),
        failures,
    })
}
