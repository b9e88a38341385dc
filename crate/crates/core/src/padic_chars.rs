//! Characters of Q_p^x, stored through their restriction to (Z/p^k)^x plus the
//! value at the uniformizer p.
//!
//! Generator conventions are fixed so that exponent vectors, discrete logs and
//! enumeration orders are reproducible:
//!
//! * odd p, k >= 1: one generator, the smallest primitive root mod p^2 reduced mod p^k;
//! * p = 2, k = 2: the single generator -1 = 3 mod 4;
//! * p = 2, k >= 3: the pair (-1, 5) mod 2^k with orders (2, 2^(k-2));
//! * k = 0, and p = 2 with k = 1: the trivial group, no generators.
//!
//! A character is an exponent vector `e` (one entry per generator, reduced mod the
//! generator's order) and takes the value `exp(2 pi i sum_j e_j m_j / ord_j)` on the
//! unit `u = prod_j g_j^(m_j)`. Triviality tests are exact integer computations; only
//! [`PadicCharacter::value`] leaves the integers.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, is_prime, lcm, pow_mod};
use crate::error::{Error, Result};

/// Largest modulus p^k for which a discrete-log table is built.
pub const MAX_MODULUS: u64 = 1 << 21;

const NON_UNIT: u32 = u32::MAX;

/// Public description of (Z/p^k)^x under the fixed generator convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitGroupStructure {
    pub p: u64,
    pub k: u32,
    pub generators: Vec<u64>,
    pub orders: Vec<u64>,
}

/// (Z/p^k)^x with its discrete-log table.
pub struct UnitGroup {
    p: u64,
    k: u32,
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    /// lcm of the generator orders; phases are numerators over this.
    exponent: u64,
    weights: Vec<u64>,
    /// residue -> packed discrete log (mixed radix over `orders`).
    logs: Vec<u32>,
}

impl fmt::Debug for UnitGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("UnitGroup")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("generators", &self.generators)
            .field("orders", &self.orders)
            .finish()
    }
}

fn smallest_primitive_root_mod_p_squared(p: u64) -> u64 {
    let m = p * p;
    let order = p * (p - 1);
    let prime_factors: Vec<u64> = factorize(order).into_iter().map(|(q, _)| q).collect();
    (2..m)
        .find(|&g| {
            g % p != 0 && prime_factors.iter().all(|&q| pow_mod(g, order / q, m) != 1)
        })
        .expect("a primitive root mod p^2 exists for odd p")
}

impl UnitGroup {
    /// Shared, cached group for `(p, k)`.
    pub fn get(p: u64, k: u32) -> Result<Arc<UnitGroup>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<UnitGroup>>>> = OnceLock::new();
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(g) = cache.lock().expect("unit group cache poisoned").get(&(p, k)) {
            return Ok(Arc::clone(g));
        }
        let group = Arc::new(Self::build(p, k)?);
        let mut guard = cache.lock().expect("unit group cache poisoned");
        Ok(Arc::clone(guard.entry((p, k)).or_insert(group)))
    }

    fn build(p: u64, k: u32) -> Result<UnitGroup> {
        let modulus = p
            .checked_pow(k)
            .filter(|&m| m <= MAX_MODULUS)
            .ok_or(Error::ModulusTooLarge { p, k })?;
        let (generators, orders): (Vec<u64>, Vec<u64>) = if k == 0 || (p == 2 && k == 1) {
            (vec![], vec![])
        } else if p == 2 && k == 2 {
            (vec![3], vec![2])
        } else if p == 2 {
            (vec![modulus - 1, 5], vec![2, modulus / 4])
        } else {
            let g = smallest_primitive_root_mod_p_squared(p) % modulus;
            (vec![g], vec![modulus / p * (p - 1)])
        };
        let exponent = orders.iter().fold(1, |acc, &o| lcm(acc, o));
        let weights = orders.iter().map(|&o| exponent / o).collect();

        let mut logs = vec![NON_UNIT; modulus as usize];
        match generators.len() {
            0 => logs[(1 % modulus) as usize] = 0,
            1 => {
                let mut x = 1 % modulus;
                for i in 0..orders[0] {
                    logs[x as usize] = i as u32;
                    x = x * generators[0] % modulus;
                }
            }
            _ => {
                let mut x0 = 1 % modulus;
                for a in 0..orders[0] {
                    let mut x = x0;
                    for b in 0..orders[1] {
                        logs[x as usize] = (a * orders[1] + b) as u32;
                        x = x * generators[1] % modulus;
                    }
                    x0 = x0 * generators[0] % modulus;
                }
            }
        }
        Ok(UnitGroup {
            p,
            k,
            modulus,
            generators,
            orders,
            exponent,
            weights,
            logs,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Group order phi(p^k).
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// lcm of generator orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn structure(&self) -> UnitGroupStructure {
        UnitGroupStructure {
            p: self.p,
            k: self.k,
            generators: self.generators.clone(),
            orders: self.orders.clone(),
        }
    }

    /// Discrete log vector of a residue, `None` for non-units.
    pub fn log(&self, u: i64) -> Option<[u64; 2]> {
        let r = u.rem_euclid(self.modulus as i64) as usize;
        if (u.rem_euclid(self.p as i64)) == 0 {
            return None;
        }
        let packed = self.logs[r];
        if packed == NON_UNIT {
            return None;
        }
        let packed = packed as u64;
        Some(match self.orders.len() {
            0 => [0, 0],
            1 => [packed, 0],
            _ => [packed / self.orders[1], packed % self.orders[1]],
        })
    }

    /// Units of Z/p^k in increasing order of residue (the single class of Z/1 is
    /// represented by 1).
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus)
            .filter(move |&u| self.logs[u as usize] != NON_UNIT)
            .map(move |u| if self.modulus == 1 { 1 } else { u })
    }
}

/// Structure of (Z/p^k)^x under the fixed generator convention.
pub fn unit_group_structure(p: u64, k: u32) -> Result<UnitGroupStructure> {
    Ok(UnitGroup::get(p, k)?.structure())
}

/// A character of Q_p^x: exponents against the generators of (Z/p^k)^x, plus its
/// value at the uniformizer.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "CharacterRepr", into = "CharacterRepr")]
pub struct PadicCharacter {
    group: Arc<UnitGroup>,
    exponents: Vec<u64>,
    varpi: Complex64,
}

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct CharacterRepr {
    p: u64,
    k: u32,
    exponents: Vec<i64>,
    #[serde(default = "unit_complex")]
    varpi_value: ComplexRepr,
}

fn unit_complex() -> ComplexRepr {
    ComplexRepr { re: 1.0, im: 0.0 }
}

impl TryFrom<CharacterRepr> for PadicCharacter {
    type Error = Error;

    fn try_from(r: CharacterRepr) -> Result<Self> {
        let varpi = Complex64::new(r.varpi_value.re, r.varpi_value.im);
        PadicCharacter::new(r.p, r.k, &r.exponents, varpi)
    }
}

impl From<PadicCharacter> for CharacterRepr {
    fn from(c: PadicCharacter) -> Self {
        CharacterRepr {
            p: c.p(),
            k: c.k(),
            exponents: c.exponents.iter().map(|&e| e as i64).collect(),
            varpi_value: ComplexRepr {
                re: c.varpi.re,
                im: c.varpi.im,
            },
        }
    }
}

impl PartialEq for PadicCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p()
            && self.k() == other.k()
            && self.exponents == other.exponents
            && self.varpi == other.varpi
    }
}

impl fmt::Debug for PadicCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "chi[p={}, k={}, e={:?}, varpi={}]",
            self.p(),
            self.k(),
            self.exponents,
            self.varpi
        )
    }
}

impl PadicCharacter {
    /// Character with the given exponents (reduced mod the generator orders) and
    /// value `varpi` at p.
    pub fn new(p: u64, k: u32, exponents: &[i64], varpi: Complex64) -> Result<Self> {
        let group = UnitGroup::get(p, k)?;
        if exponents.len() != group.orders.len() {
            return Err(Error::InvalidArgument(format!(
                "(Z/{}^{})^x has {} generators, got {} exponents",
                p,
                k,
                group.orders.len(),
                exponents.len()
            )));
        }
        if !varpi.re.is_finite() || !varpi.im.is_finite() || varpi.norm() == 0.0 {
            return Err(Error::InvalidArgument(format!(
                "value at p must be a nonzero finite complex number, got {varpi}"
            )));
        }
        let exponents = exponents
            .iter()
            .zip(&group.orders)
            .map(|(&e, &o)| e.rem_euclid(o as i64) as u64)
            .collect();
        Ok(PadicCharacter {
            group,
            exponents,
            varpi,
        })
    }

    pub fn trivial(p: u64, k: u32) -> Result<Self> {
        let group = UnitGroup::get(p, k)?;
        Ok(Self::from_parts(group.clone(), vec![0; group.orders.len()], Complex64::new(1.0, 0.0)))
    }

    /// The unramified character sending p to `z`.
    pub fn unramified(p: u64, z: Complex64) -> Result<Self> {
        Self::trivial(p, 0).map(|c| c.with_varpi(z))
    }

    pub(crate) fn from_parts(group: Arc<UnitGroup>, exponents: Vec<u64>, varpi: Complex64) -> Self {
        PadicCharacter {
            group,
            exponents,
            varpi,
        }
    }

    pub fn p(&self) -> u64 {
        self.group.p
    }

    pub fn k(&self) -> u32 {
        self.group.k
    }

    pub fn group(&self) -> &Arc<UnitGroup> {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn varpi_value(&self) -> Complex64 {
        self.varpi
    }

    pub fn with_varpi(&self, z: Complex64) -> Self {
        Self::from_parts(self.group.clone(), self.exponents.clone(), z)
    }

    /// Same restriction to units, value 1 at p: the member of the character group
    /// of Z_p^x.
    pub fn unit_part(&self) -> Self {
        self.with_varpi(Complex64::new(1.0, 0.0))
    }

    pub fn is_trivial_on_units(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Phase numerator over `group.exponent()` at a unit residue.
    fn phase_numerator(&self, u: i64) -> Option<u64> {
        let log = self.group.log(u)?;
        let d = self.group.exponent;
        let mut acc = 0u64;
        for (j, &e) in self.exponents.iter().enumerate() {
            acc = (acc + (e * log[j] % d) * self.group.weights[j] % d) % d;
        }
        Some(acc)
    }

    /// Exact phase `chi(u) = exp(2 pi i num / den)` with the fraction reduced.
    pub fn phase(&self, u: i64) -> Result<(u64, u64)> {
        let num = self
            .phase_numerator(u)
            .ok_or_else(|| Error::DomainError(format!("{u} is not a unit mod {}", self.p())))?;
        let den = self.group.exponent;
        let g = gcd(num, den).max(1);
        Ok((num / g, den / g))
    }

    /// Exact test `chi(u) == 1` for a unit residue.
    pub fn is_one_at(&self, u: i64) -> bool {
        self.phase_numerator(u) == Some(0)
    }

    /// Value on a unit.
    pub fn value(&self, u: i64) -> Result<Complex64> {
        let (num, den) = self.phase(u)?;
        Ok(Complex64::from_polar(1.0, TAU * num as f64 / den as f64))
    }

    /// Value at `p^v * u` for a unit `u`.
    pub fn value_at(&self, v: i32, u: i64) -> Result<Complex64> {
        Ok(self.varpi.powi(v) * self.value(u)?)
    }

    /// Conductor exponent: the least c with chi trivial on 1 + p^c Z_p.
    ///
    /// Tested on the generator 1 + p^c of U_c/U_k (all units for p = 2, c = 1).
    pub fn conductor(&self) -> u32 {
        if self.is_trivial_on_units() {
            return 0;
        }
        let (p, k, m) = (self.p(), self.k(), self.group.modulus);
        for c in 1..=k {
            if p == 2 && c == 1 {
                continue;
            }
            let gen = (1 + p.pow(c)) % m;
            if self.is_one_at(gen as i64) {
                return c;
            }
        }
        k
    }

    /// The same character on (Z/p^k2)^x. Lifting is always possible; restricting
    /// requires `conductor() <= k2`.
    pub fn at_level(&self, k2: u32) -> Result<Self> {
        if k2 == self.k() {
            return Ok(self.clone());
        }
        if k2 < self.k() && self.conductor() > k2 {
            return Err(Error::InvalidArgument(format!(
                "character of conductor {} does not factor through (Z/{}^{})^x",
                self.conductor(),
                self.p(),
                k2
            )));
        }
        let target = UnitGroup::get(self.p(), k2)?;
        let d = self.group.exponent;
        let exponents = target
            .generators
            .iter()
            .zip(&target.orders)
            .map(|(&g, &ord)| {
                let num = self
                    .phase_numerator(g as i64)
                    .expect("generators are units");
                // chi(g)^ord = 1, so num * ord is divisible by d
                debug_assert_eq!((num as u128 * ord as u128) % d as u128, 0);
                ((num as u128 * ord as u128 / d as u128) % ord as u128) as u64
            })
            .collect();
        Ok(Self::from_parts(target, exponents, self.varpi))
    }

    /// Restriction to its conductor level.
    pub fn reduced(&self) -> Self {
        self.at_level(self.conductor())
            .expect("restriction to the conductor level is always defined")
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() {
            return Err(Error::DomainMismatch(self.p(), other.p()));
        }
        let k = self.k().max(other.k());
        let a = self.at_level(k)?;
        let b = other.at_level(k)?;
        let exponents = a
            .exponents
            .iter()
            .zip(&b.exponents)
            .zip(&a.group.orders)
            .map(|((&x, &y), &o)| (x + y) % o)
            .collect();
        Ok(Self::from_parts(a.group.clone(), exponents, self.varpi * other.varpi))
    }

    pub fn inverse(&self) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&x, &o)| (o - x) % o)
            .collect();
        Self::from_parts(self.group.clone(), exponents, self.varpi.inv())
    }

    pub fn pow(&self, n: i64) -> Self {
        let exponents = self
            .exponents
            .iter()
            .zip(&self.group.orders)
            .map(|(&x, &o)| ((x as i128 * n as i128).rem_euclid(o as i128)) as u64)
            .collect();
        Self::from_parts(self.group.clone(), exponents, self.varpi.powi(n as i32))
    }

    /// Order of the restriction to Z_p^x.
    pub fn order_on_units(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.group.orders)
            .fold(1, |acc, (&e, &o)| lcm(acc, o / gcd(e, o)))
    }
}

/// Conductor exponent a(chi).
pub fn conductor(chi: &PadicCharacter) -> u32 {
    chi.conductor()
}

pub fn char_mul(a: &PadicCharacter, b: &PadicCharacter) -> Result<PadicCharacter> {
    a.mul(b)
}

pub fn char_inv(a: &PadicCharacter) -> PadicCharacter {
    a.inverse()
}

pub fn evaluate(chi: &PadicCharacter, u: i64) -> Result<Complex64> {
    chi.value(u)
}

/// The character group of (Z/p^k)^x as packed exponent indices, with conductors
/// tabulated once. Used by the exhaustive searches.
pub struct DualGroup {
    group: Arc<UnitGroup>,
    conductors: Vec<u32>,
}

impl DualGroup {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let group = UnitGroup::get(p, k)?;
        let size = group.order() as usize;
        let mut dual = DualGroup {
            group,
            conductors: Vec::with_capacity(size),
        };
        for i in 0..size {
            let c = dual.character(i).conductor();
            dual.conductors.push(c);
        }
        Ok(dual)
    }

    pub fn p(&self) -> u64 {
        self.group.p
    }

    pub fn k(&self) -> u32 {
        self.group.k
    }

    pub fn len(&self) -> usize {
        self.conductors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conductors.is_empty()
    }

    fn unpack(&self, i: usize) -> [u64; 2] {
        let i = i as u64;
        match self.group.orders.len() {
            0 => [0, 0],
            1 => [i, 0],
            _ => [i / self.group.orders[1], i % self.group.orders[1]],
        }
    }

    fn pack(&self, e: [u64; 2]) -> usize {
        (match self.group.orders.len() {
            0 => 0,
            1 => e[0],
            _ => e[0] * self.group.orders[1] + e[1],
        }) as usize
    }

    pub fn character(&self, i: usize) -> PadicCharacter {
        let e = self.unpack(i);
        let n = self.group.orders.len();
        PadicCharacter::from_parts(self.group.clone(), e[..n].to_vec(), Complex64::new(1.0, 0.0))
    }

    /// Index of the restriction to units of `chi` (lifted to this level).
    pub fn index_of(&self, chi: &PadicCharacter) -> Result<usize> {
        if chi.p() != self.p() {
            return Err(Error::DomainMismatch(chi.p(), self.p()));
        }
        let c = chi.at_level(self.k())?;
        let mut e = [0u64; 2];
        e[..c.exponents.len()].copy_from_slice(&c.exponents);
        Ok(self.pack(e))
    }

    pub fn conductor(&self, i: usize) -> u32 {
        self.conductors[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let (a, b) = (self.unpack(i), self.unpack(j));
        let o = &self.group.orders;
        let mut e = [0u64; 2];
        for t in 0..o.len() {
            e[t] = (a[t] + b[t]) % o[t];
        }
        self.pack(e)
    }

    pub fn inv(&self, i: usize) -> usize {
        let a = self.unpack(i);
        let o = &self.group.orders;
        let mut e = [0u64; 2];
        for t in 0..o.len() {
            e[t] = (o[t] - a[t]) % o[t];
        }
        self.pack(e)
    }

    /// Indices of characters with conductor exactly `c`, in increasing order.
    pub fn of_conductor(&self, c: u32) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.conductors[i] == c)
    }
}

/// Shared, cached [`DualGroup`] for `(p, k)`.
pub fn dual_group(p: u64, k: u32) -> Result<Arc<DualGroup>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<DualGroup>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(d) = cache.lock().expect("dual group cache poisoned").get(&(p, k)) {
        return Ok(Arc::clone(d));
    }
    let dual = Arc::new(DualGroup::new(p, k)?);
    let mut guard = cache.lock().expect("dual group cache poisoned");
    Ok(Arc::clone(guard.entry((p, k)).or_insert(dual)))
}

/// All characters with `a(chi) <= k` (or `== k` when `exact`), value 1 at p, in
/// lexicographic order of exponent vectors.
pub fn enumerate_chars(p: u64, k: u32, exact: bool) -> Result<Vec<PadicCharacter>> {
    let dual = dual_group(p, k)?;
    Ok((0..dual.len())
        .filter(|&i| !exact || dual.conductor(i) == k)
        .map(|i| dual.character(i))
        .collect())
}

/// Exhaustive maximization of `a(mu chi1) [+ a(mu chi2)]` over `mu` of conductor
/// exactly `k`. Returns the maximum and the first maximizing `mu`.
pub fn best_joint_twist(
    chi1: &PadicCharacter,
    chi2: Option<&PadicCharacter>,
    k: u32,
) -> Result<(u32, PadicCharacter)> {
    if k < 2 {
        return Err(Error::UnsupportedLevel(k));
    }
    for chi in std::iter::once(chi1).chain(chi2) {
        if chi.p() != chi1.p() {
            return Err(Error::DomainMismatch(chi1.p(), chi.p()));
        }
        if chi.conductor() != k {
            return Err(Error::InvalidArgument(format!(
                "expected conductor {k}, got {}",
                chi.conductor()
            )));
        }
    }
    let dual = dual_group(chi1.p(), k)?;
    let i1 = dual.index_of(chi1)?;
    let i2 = chi2.map(|c| dual.index_of(c)).transpose()?;
    let ceiling = if i2.is_some() { 2 * k } else { k };
    let mut best: Option<(u32, usize)> = None;
    for mu in dual.of_conductor(k) {
        let mut s = dual.conductor(dual.mul(mu, i1));
        if let Some(i2) = i2 {
            s += dual.conductor(dual.mul(mu, i2));
        }
        if best.is_none_or(|(b, _)| s > b) {
            best = Some((s, mu));
        }
        if s == ceiling {
            break;
        }
    }
    let (max, mu) = best.ok_or_else(|| {
        Error::InvalidArgument(format!("no characters of conductor {k} for p = {}", chi1.p()))
    })?;
    Ok((max, dual.character(mu)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    /// Order of u mod m by direct powering.
    fn brute_order(u: u64, m: u64) -> u64 {
        let mut x = u % m;
        let mut n = 1;
        while x != 1 % m {
            x = x * u % m;
            n += 1;
        }
        n
    }

    #[test]
    fn structure_mod_9() {
        let s = unit_group_structure(3, 2).unwrap();
        assert_eq!(s.generators, vec![2]);
        assert_eq!(s.orders, vec![6]);
        assert_eq!(brute_order(2, 9), 6);
    }

    #[test]
    fn structure_mod_4_and_16() {
        let s = unit_group_structure(2, 2).unwrap();
        assert_eq!((s.generators, s.orders), (vec![3], vec![2]));
        let s = unit_group_structure(2, 4).unwrap();
        assert_eq!(s.generators, vec![15, 5]);
        assert_eq!(s.orders, vec![2, 4]);
        // direct enumeration of (Z/16)^x: every unit is +-5^b, uniquely
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..2u64 {
            for b in 0..4u64 {
                seen.insert(pow_mod(15, a, 16) * pow_mod(5, b, 16) % 16);
            }
        }
        assert_eq!(seen.into_iter().collect::<Vec<_>>(), vec![1, 3, 5, 7, 9, 11, 13, 15]);
    }

    #[test]
    fn invalid_prime() {
        assert_eq!(unit_group_structure(9, 2).unwrap_err(), Error::InvalidPrime(9));
    }

    #[test]
    fn structure_orders_multiply_to_totient() {
        for p in [2u64, 3, 5, 7, 11] {
            for k in 0..5 {
                let g = UnitGroup::get(p, k).unwrap();
                assert_eq!(g.order(), crate::arith::phi(p.pow(k)));
                assert_eq!(g.units().count() as u64, g.order());
            }
        }
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(PadicCharacter::trivial(5, 3).unwrap().conductor(), 0);
        let chi4 = PadicCharacter::new(2, 2, &[1], one()).unwrap();
        assert_eq!(chi4.conductor(), 2);
        let chi9 = PadicCharacter::new(3, 2, &[1], one()).unwrap();
        assert_eq!(chi9.order_on_units(), 6);
        assert_eq!(chi9.conductor(), 2);
        assert_eq!(chi9.pow(2).conductor(), 2);
        assert_eq!(chi9.pow(3).conductor(), 1);
        // the cube is the Legendre symbol mod 3, lifted
        assert_eq!(chi9.pow(3).phase(2).unwrap(), (1, 2));
    }

    #[test]
    fn evaluation_examples() {
        let triv = PadicCharacter::trivial(7, 2).unwrap();
        for u in [1i64, 2, 3, 48] {
            assert_eq!(triv.value(u).unwrap(), one());
        }
        let chi4 = PadicCharacter::new(2, 2, &[1], one()).unwrap();
        assert!((chi4.value(3).unwrap() + 1.0).norm() < 1e-15);
        assert!(chi4.value(2).is_err());
        assert_eq!(chi4.mul(&chi4.inverse()).unwrap().conductor(), 0);
    }

    #[test]
    fn mismatched_primes() {
        let a = PadicCharacter::trivial(3, 1).unwrap();
        let b = PadicCharacter::trivial(5, 1).unwrap();
        assert_eq!(a.mul(&b).unwrap_err(), Error::DomainMismatch(3, 5));
    }

    #[test]
    fn level_changes_preserve_values() {
        for p in [2u64, 3, 5] {
            for chi in enumerate_chars(p, 3, false).unwrap() {
                let up = chi.at_level(5).unwrap();
                let down = chi.reduced();
                for u in UnitGroup::get(p, 5).unwrap().units() {
                    let v = chi.value(u as i64).unwrap();
                    assert!((up.value(u as i64).unwrap() - v).norm() < 1e-12);
                    assert!((down.value(u as i64).unwrap() - v).norm() < 1e-12);
                }
                assert_eq!(up.conductor(), chi.conductor());
            }
        }
    }

    /// Conductor from the definition: least c such that chi(u) = 1 for every unit
    /// u = 1 mod p^c.
    fn brute_conductor(chi: &PadicCharacter) -> u32 {
        let m = chi.p().pow(chi.k());
        (0..=chi.k())
            .find(|&c| {
                let pc = chi.p().pow(c);
                (1..m.max(2))
                    .filter(|u| u % chi.p() != 0 && (u + pc * m - 1) % pc == 0)
                    .all(|u| chi.is_one_at(u as i64))
            })
            .unwrap()
    }

    #[test]
    fn conductor_matches_definition() {
        for (p, k) in [(2u64, 5u32), (3, 4), (5, 3), (7, 2)] {
            for chi in enumerate_chars(p, k, false).unwrap() {
                assert_eq!(chi.conductor(), brute_conductor(&chi), "{chi:?}");
            }
        }
    }

    #[test]
    fn cardinalities() {
        assert_eq!(enumerate_chars(3, 2, false).unwrap().len(), 6);
        assert_eq!(enumerate_chars(2, 1, true).unwrap().len(), 0);
        assert_eq!(enumerate_chars(2, 3, true).unwrap().len(), 2);
        for p in [2u64, 3, 5, 7] {
            for k in 1..=5u32 {
                if p.pow(k) > 20_000 {
                    continue;
                }
                let all = enumerate_chars(p, k, false).unwrap().len() as u64;
                let exact = enumerate_chars(p, k, true).unwrap().len() as u64;
                assert_eq!(all, p.pow(k - 1) * (p - 1));
                let expected = if k == 1 { p - 2 } else { p.pow(k - 2) * (p - 1) * (p - 1) };
                assert_eq!(exact, expected, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn joint_twist_examples() {
        let chis = enumerate_chars(5, 2, true).unwrap();
        let (max, mu) = best_joint_twist(&chis[0], None, 2).unwrap();
        assert_eq!(max, 2);
        assert_eq!(mu.conductor(), 2);

        // p = 3, k = 2: a pair with a(chi1 chi2^-1) = 2
        let chis = enumerate_chars(3, 2, true).unwrap();
        let (c1, c2) = chis
            .iter()
            .flat_map(|a| chis.iter().map(move |b| (a, b)))
            .find(|(a, b)| a.mul(&b.inverse()).unwrap().conductor() == 2)
            .unwrap();
        assert_eq!(best_joint_twist(c1, Some(c2), 2).unwrap().0, 3);

        // p = 2, k = 3: a(chi1 chi2^-1) = 2 forces {2, 0}
        let chis = enumerate_chars(2, 3, true).unwrap();
        let (c1, c2) = chis
            .iter()
            .flat_map(|a| chis.iter().map(move |b| (a, b)))
            .find(|(a, b)| a.mul(&b.inverse()).unwrap().conductor() == 2)
            .unwrap();
        for mu in enumerate_chars(2, 3, true).unwrap() {
            let mut pair = [mu.mul(c1).unwrap().conductor(), mu.mul(c2).unwrap().conductor()];
            pair.sort();
            assert_eq!(pair, [0, 2]);
        }
        assert_eq!(best_joint_twist(c1, Some(c2), 3).unwrap().0, 2);

        assert_eq!(
            best_joint_twist(&PadicCharacter::new(3, 1, &[1], one()).unwrap(), None, 1)
                .unwrap_err(),
            Error::UnsupportedLevel(1)
        );
    }

    #[test]
    fn json_shape() {
        let chi = PadicCharacter::new(3, 2, &[7], Complex64::new(0.0, 1.0)).unwrap();
        let v = serde_json::to_value(&chi).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"p": 3, "k": 2, "exponents": [1], "varpi_value": {"re": 0.0, "im": 1.0}})
        );
        let back: PadicCharacter = serde_json::from_value(v).unwrap();
        assert_eq!(back, chi);
        let parsed: PadicCharacter =
            serde_json::from_str(r#"{"p": 2, "k": 4, "exponents": [1, 3]}"#).unwrap();
        assert_eq!(parsed.varpi_value(), one());
        assert!(serde_json::from_str::<PadicCharacter>(r#"{"p": 2, "k": 4, "exponents": [1]}"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_pair() -> impl Strategy<Value = (PadicCharacter, PadicCharacter)> {
            (prop::sample::select(vec![(2u64, 6u32), (3, 4), (5, 3), (7, 2)]), any::<u64>(), any::<u64>())
                .prop_map(|((p, k), s, t)| {
                    let chars = enumerate_chars(p, k, false).unwrap();
                    let n = chars.len() as u64;
                    let k2 = (t % k as u64) as u32;
                    let b = chars[(t % n) as usize].clone();
                    let b = if b.conductor() <= k2 { b.at_level(k2).unwrap() } else { b };
                    (chars[(s % n) as usize].clone(), b)
                })
        }

        proptest! {
            #[test]
            fn conductor_is_ultrametric((a, b) in arb_pair()) {
                let ab = a.mul(&b).unwrap();
                let (ca, cb) = (a.conductor(), b.conductor());
                prop_assert!(ab.conductor() <= ca.max(cb));
                if ca != cb {
                    prop_assert_eq!(ab.conductor(), ca.max(cb));
                }
            }

            #[test]
            fn product_is_pointwise((a, b) in arb_pair(), u in 1i64..10_000) {
                prop_assume!(u % a.p() as i64 != 0);
                let lhs = a.mul(&b).unwrap().value(u).unwrap();
                let rhs = a.value(u).unwrap() * b.value(u).unwrap();
                prop_assert!((lhs - rhs).norm() < 1e-9);
            }
        }
    }
}
