//! The additive character of Q_p, Gauss sums over Z_p^x and GL(1) root numbers.
//!
//! The additive character is `psi(x) = exp(-2 pi i frac_p(x))`; with this sign the
//! product of the local characters and `e(x)` at infinity is trivial on Q.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, valuation};
use crate::error::{Error, Result};
use crate::padic_chars::{PadicCharacter, UnitGroup};

/// Sign of the phase of the additive character: `psi(x) = exp(2 pi i sign frac_p(x))`.
pub const PSI_SIGN: f64 = -1.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdditiveCharSpec {
    pub p: u64,
    pub sign: i8,
}

impl AdditiveCharSpec {
    pub fn standard(p: u64) -> Self {
        AdditiveCharSpec {
            p,
            sign: PSI_SIGN as i8,
        }
    }
}

/// `zeta(1) = (1 - 1/p)^-1`.
pub fn zeta1(p: u64) -> f64 {
    p as f64 / (p as f64 - 1.0)
}

/// `psi(v p^-r)` for an integer `v`.
pub fn psi_scaled(p: u64, v: i64, r: i32) -> Complex64 {
    if r <= 0 {
        return Complex64::new(1.0, 0.0);
    }
    let m = (p as i128).pow(r as u32);
    let num = (v as i128).rem_euclid(m);
    Complex64::from_polar(1.0, PSI_SIGN * TAU * num as f64 / m as f64)
}

/// `psi(num / den)`; `den` must be a power of `p`.
pub fn psi(p: u64, num: i64, den: u64) -> Result<Complex64> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    if den == 0 {
        return Err(Error::DomainError("zero denominator".into()));
    }
    let r = valuation(p, den);
    if p.pow(r) != den {
        return Err(Error::DomainError(format!(
            "denominator {den} is not a power of {p}"
        )));
    }
    Ok(psi_scaled(p, num, r as i32))
}

/// A Gauss sum value with the data it was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussSumValue {
    pub value: Complex64,
    pub p: u64,
    pub r: i32,
    pub mu_conductor: u32,
}

/// Where `(r, a(mu))` falls in the closed-form evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GaussClass {
    /// trivial `mu`, `r <= 0`: value 1
    Integral,
    /// trivial `mu`, `r = 1`: value `-1/(p-1)`
    Boundary,
    /// `a(mu) = r >= 1`: modulus `zeta(1) p^(-r/2)`
    Principal,
    Zero,
}

pub fn classify(r: i32, mu_conductor: u32) -> GaussClass {
    match (mu_conductor, r) {
        (0, r) if r <= 0 => GaussClass::Integral,
        (0, 1) => GaussClass::Boundary,
        (a, r) if a > 0 && r == a as i32 => GaussClass::Principal,
        _ => GaussClass::Zero,
    }
}

/// `G(v p^-r, mu)`, the normalized average of `psi(v p^-r u) mu(u)` over
/// `u` in `(Z/p^R)^x`, `R = max(r, a(mu), 1)`. Computed by direct summation.
pub fn gauss_sum(v: i64, r: i32, mu: &PadicCharacter) -> Result<GaussSumValue> {
    let p = mu.p();
    if v.rem_euclid(p as i64) == 0 {
        return Err(Error::DomainError(format!("{v} is not a unit mod {p}")));
    }
    let a = mu.conductor();
    let big_r = (r.max(a as i32).max(1)) as u32;
    let mu = mu.at_level(big_r)?;
    let group = UnitGroup::get(p, big_r)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for u in group.units() {
        let vu = (v as i128 * u as i128).rem_euclid(group.modulus() as i128) as i64;
        acc += psi_scaled(p, vu, r) * mu.value(u as i64)?;
    }
    Ok(GaussSumValue {
        value: acc / group.order() as f64,
        p,
        r,
        mu_conductor: a,
    })
}

/// `G(p^-a, mu)` for `a = a(mu)`, cached by the restriction of `mu` to units.
fn principal_gauss_sum(mu: &PadicCharacter) -> Result<Complex64> {
    type Key = (u64, u32, Vec<u64>);
    static CACHE: OnceLock<Mutex<HashMap<Key, Complex64>>> = OnceLock::new();
    let reduced = mu.reduced();
    let key = (reduced.p(), reduced.k(), reduced.exponents().to_vec());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&g) = cache.lock().expect("gauss cache poisoned").get(&key) {
        return Ok(g);
    }
    let g = gauss_sum(1, reduced.k() as i32, &reduced.unit_part())?.value;
    cache.lock().expect("gauss cache poisoned").insert(key, g);
    Ok(g)
}

/// Root number `epsilon(1/2, chi, psi)`; 1 for unramified `chi`.
///
/// For ramified `chi` of conductor `a` this is `chi(p)^a` times the root number of
/// the unit part, read off from `G(p^-a, chi0^-1) = zeta(1) p^(-a/2) eps(chi0)`.
pub fn root_number(chi: &PadicCharacter) -> Result<Complex64> {
    let a = chi.conductor();
    if a == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let p = chi.p();
    let g = principal_gauss_sum(&chi.unit_part().inverse())?;
    let unit_eps = g * (p as f64).powf(a as f64 / 2.0) / zeta1(p);
    Ok(chi.varpi_value().powi(a as i32) * unit_eps)
}

/// `epsilon(1/2, mu^-1, psi)`, the factor appearing in `G(v p^-a, mu)`.
pub fn epsilon_gl1(mu: &PadicCharacter) -> Result<Complex64> {
    root_number(&mu.inverse())
}

/// `G(v p^-r, mu)` from the closed form: support on `r = a(mu)` (or `r <= 1` for
/// trivial `mu`), value `zeta(1) p^(-r/2) eps(1/2, mu^-1) mu^-1(v)` there.
pub fn gauss_sum_closed(v: i64, r: i32, mu: &PadicCharacter) -> Result<Complex64> {
    let p = mu.p();
    if v.rem_euclid(p as i64) == 0 {
        return Err(Error::DomainError(format!("{v} is not a unit mod {p}")));
    }
    let a = mu.conductor();
    Ok(match classify(r, a) {
        GaussClass::Integral => Complex64::new(1.0, 0.0),
        GaussClass::Boundary => Complex64::new(-1.0 / (p as f64 - 1.0), 0.0),
        GaussClass::Zero => Complex64::new(0.0, 0.0),
        GaussClass::Principal => {
            let unit = mu.unit_part();
            zeta1(p) * (p as f64).powf(-(r as f64) / 2.0)
                * epsilon_gl1(&unit)?
                * unit.value(v)?.inv()
        }
    })
}
