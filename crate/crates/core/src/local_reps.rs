//! Ramified irreducible generic representations of GL(2, Q_p), described by their
//! inducing or twisting characters, and the local vanishing index `e_pi(l)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::padic_chars::{dual_group, PadicCharacter};

/// Position in the classification of representations with `a(pi) >= 1`, plus the
/// unramified principal series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepType {
    Unramified,
    /// unramified twist of Steinberg
    Type1,
    /// principal series with exactly one ramified character
    Type2,
    /// ramified twist of Steinberg
    Type3a,
    /// principal series with both characters ramified
    Type3b,
    /// supercuspidal
    Type3c,
}

impl RepType {
    /// Whether `L(s, pi) = 1`.
    pub fn trivial_l_factor(self) -> bool {
        matches!(self, RepType::Type3a | RepType::Type3b | RepType::Type3c)
    }
}

/// A concrete representation.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalRepDescriptor {
    /// `chi St`
    SteinbergTwist { chi: PadicCharacter },
    /// `chi1 ⊞ chi2`
    PrincipalSeries {
        chi1: PadicCharacter,
        chi2: PadicCharacter,
    },
    /// `chi pi0` with `pi0` minimal supercuspidal of conductor `a0` whose central
    /// character has conductor `m0`.
    Supercuspidal { a0: u32, m0: u32, chi: PadicCharacter },
}

/// Conductor data only; enough to evaluate the closed-form vanishing index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AbstractLocalData {
    Steinberg { a: u32 },
    PrincipalSeries { a1: u32, a2: u32, a12inv: u32 },
    /// `n = a(pi)`, `a_min` the conductor of a minimal twist.
    Supercuspidal { n: u32, a_min: u32 },
}

/// Either kind of local datum, as accepted on input.
#[derive(Debug, Clone, PartialEq)]
pub enum LocalData {
    Concrete(LocalRepDescriptor),
    Abstract(AbstractLocalData),
}

/// `d_pi(l) = max{n, l + m, 2l}`.
pub fn d_pi_raw(n: u32, m: u32, l: u32) -> Result<u32> {
    if l > n {
        return Err(Error::LevelOutOfRange { l, n });
    }
    Ok(n.max(l + m).max(2 * l))
}

fn close(a: Complex64, b: f64) -> bool {
    (a - b).norm() < 1e-12
}

impl LocalRepDescriptor {
    pub fn steinberg(chi: PadicCharacter) -> Self {
        LocalRepDescriptor::SteinbergTwist { chi }
    }

    pub fn principal_series(chi1: PadicCharacter, chi2: PadicCharacter) -> Result<Self> {
        let d = LocalRepDescriptor::PrincipalSeries { chi1, chi2 };
        d.validate()?;
        Ok(d)
    }

    pub fn supercuspidal(a0: u32, m0: u32, chi: PadicCharacter) -> Result<Self> {
        let d = LocalRepDescriptor::Supercuspidal { a0, m0, chi };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            LocalRepDescriptor::SteinbergTwist { .. } => Ok(()),
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                if chi1.p() != chi2.p() {
                    return Err(Error::DomainMismatch(chi1.p(), chi2.p()));
                }
                let q = chi1.mul(&chi2.inverse())?;
                if q.conductor() == 0 {
                    let p = chi1.p() as f64;
                    let z = q.varpi_value();
                    if close(z, p) || close(z, 1.0 / p) {
                        return Err(Error::InvalidDescriptor(
                            "chi1/chi2 is |.|^(+-1); the induced representation is reducible"
                                .into(),
                        ));
                    }
                }
                Ok(())
            }
            LocalRepDescriptor::Supercuspidal { a0, m0, .. } => {
                if *a0 < 2 {
                    return Err(Error::InvalidDescriptor(format!(
                        "supercuspidal conductor must be at least 2, got {a0}"
                    )));
                }
                if 2 * m0 > *a0 {
                    return Err(Error::InvalidDescriptor(format!(
                        "central character conductor {m0} exceeds half of {a0}"
                    )));
                }
                Ok(())
            }
        }
    }

    /// For p = 2: a minimal supercuspidal with `a(omega) < a(pi)/2` has odd conductor
    /// or conductor 2. Always true for odd p.
    pub fn atkin_li_consistent(&self) -> bool {
        match self {
            LocalRepDescriptor::Supercuspidal { a0, m0, chi } if chi.p() == 2 => {
                2 * m0 == *a0 || a0 % 2 == 1 || *a0 == 2
            }
            _ => true,
        }
    }

    pub fn p(&self) -> u64 {
        match self {
            LocalRepDescriptor::SteinbergTwist { chi }
            | LocalRepDescriptor::Supercuspidal { chi, .. } => chi.p(),
            LocalRepDescriptor::PrincipalSeries { chi1, .. } => chi1.p(),
        }
    }

    pub fn rep_type(&self) -> RepType {
        match self {
            LocalRepDescriptor::SteinbergTwist { chi } => {
                if chi.conductor() == 0 {
                    RepType::Type1
                } else {
                    RepType::Type3a
                }
            }
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                match (chi1.conductor() > 0, chi2.conductor() > 0) {
                    (false, false) => RepType::Unramified,
                    (true, true) => RepType::Type3b,
                    _ => RepType::Type2,
                }
            }
            LocalRepDescriptor::Supercuspidal { .. } => RepType::Type3c,
        }
    }

    /// Conductor exponent `n = a(pi)`.
    pub fn conductor(&self) -> u32 {
        match self {
            LocalRepDescriptor::SteinbergTwist { chi } => match chi.conductor() {
                0 => 1,
                a => 2 * a,
            },
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                chi1.conductor() + chi2.conductor()
            }
            LocalRepDescriptor::Supercuspidal { a0, m0, chi } => {
                let a = chi.conductor();
                (*a0).max(m0 + a).max(2 * a)
            }
        }
    }

    /// The central character, when it is determined by the descriptor.
    pub fn central_character(&self) -> Option<PadicCharacter> {
        match self {
            LocalRepDescriptor::SteinbergTwist { chi } => Some(chi.pow(2)),
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => chi1.mul(chi2).ok(),
            LocalRepDescriptor::Supercuspidal { .. } => None,
        }
    }

    /// `m = a(omega_pi)`. For supercuspidals `omega = chi^2 omega0`, which is only
    /// determined when `a(chi^2) != m0` or `chi` is unramified.
    pub fn central_char_conductor(&self) -> Result<u32> {
        match self {
            LocalRepDescriptor::Supercuspidal { m0, chi, .. } => {
                let a2 = chi.pow(2).conductor();
                if chi.conductor() == 0 || a2 != *m0 {
                    Ok(a2.max(*m0))
                } else {
                    Err(Error::AmbiguousBound {
                        bound: *m0,
                        reason: "a(chi^2) equals the conductor of the minimal central character"
                            .into(),
                    })
                }
            }
            other => Ok(other
                .central_character()
                .expect("non-supercuspidal central characters are explicit")
                .conductor()),
        }
    }

    pub fn is_minimal(&self) -> bool {
        match self.rep_type() {
            RepType::Unramified | RepType::Type1 | RepType::Type2 => true,
            RepType::Type3a | RepType::Type3b => false,
            RepType::Type3c => match self {
                LocalRepDescriptor::Supercuspidal { a0, .. } => self.conductor() == *a0,
                _ => unreachable!(),
            },
        }
    }

    /// `d_pi(l) = max{n, l + m, 2l}`. Supercuspidals have `m <= n/2`, which makes
    /// the middle term irrelevant, so their value never needs the exact `m`.
    pub fn d_pi(&self, l: u32) -> Result<u32> {
        let n = self.conductor();
        match self {
            LocalRepDescriptor::Supercuspidal { .. } => d_pi_raw(n, 0, l),
            _ => d_pi_raw(n, self.central_char_conductor()?, l),
        }
    }

    /// The descriptor of `chi pi`.
    pub fn twist(&self, mu: &PadicCharacter) -> Result<Self> {
        Ok(match self {
            LocalRepDescriptor::SteinbergTwist { chi } => {
                LocalRepDescriptor::SteinbergTwist { chi: chi.mul(mu)? }
            }
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                LocalRepDescriptor::PrincipalSeries {
                    chi1: chi1.mul(mu)?,
                    chi2: chi2.mul(mu)?,
                }
            }
            LocalRepDescriptor::Supercuspidal { a0, m0, chi } => LocalRepDescriptor::Supercuspidal {
                a0: *a0,
                m0: *m0,
                chi: chi.mul(mu)?,
            },
        })
    }

    /// `a(mu pi)`. Exact in every case: principal series and Steinberg twists by
    /// character arithmetic, supercuspidals because `pi0` is minimal with
    /// `a(omega0) <= a0/2`.
    pub fn twist_conductor(&self, mu: &PadicCharacter) -> Result<u32> {
        Ok(self.twist(mu)?.conductor())
    }

    /// Contragredient: every character inverted.
    pub fn contragredient(&self) -> Self {
        match self {
            LocalRepDescriptor::SteinbergTwist { chi } => LocalRepDescriptor::SteinbergTwist {
                chi: chi.inverse(),
            },
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                LocalRepDescriptor::PrincipalSeries {
                    chi1: chi1.inverse(),
                    chi2: chi2.inverse(),
                }
            }
            LocalRepDescriptor::Supercuspidal { a0, m0, chi } => LocalRepDescriptor::Supercuspidal {
                a0: *a0,
                m0: *m0,
                chi: chi.inverse(),
            },
        }
    }

    /// Twist by the unramified character sending p to `z`.
    pub fn unramified_twist(&self, z: Complex64) -> Result<Self> {
        self.twist(&PadicCharacter::unramified(self.p(), z)?)
    }

    pub fn abstract_data(&self) -> AbstractLocalData {
        match self {
            LocalRepDescriptor::SteinbergTwist { chi } => AbstractLocalData::Steinberg {
                a: chi.conductor(),
            },
            LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => {
                AbstractLocalData::PrincipalSeries {
                    a1: chi1.conductor(),
                    a2: chi2.conductor(),
                    a12inv: chi1
                        .mul(&chi2.inverse())
                        .expect("validated descriptor")
                        .conductor(),
                }
            }
            LocalRepDescriptor::Supercuspidal { a0, .. } => AbstractLocalData::Supercuspidal {
                n: self.conductor(),
                a_min: *a0,
            },
        }
    }

    /// `W_pi(a(p^r))` for the normalized newform.
    ///
    /// Type 1: `(chi(p)/p)^r`; type 2: `(chi_r(p) p^(-1/2))^r` with `chi_r` the
    /// ramified character; `L = 1` types: 1 at `r = 0`. Zero for `r < 0`.
    ///
    /// The newform is invariant under the congruence subgroup with lower-right entry
    /// in `1 + p^n Z_p`, which differs from the Kirillov convention by
    /// `omega(det g)`; hence `omega(p)^r chi_u(p)^-r = chi_r(p)^r` for type 2.
    pub fn toral_whittaker(&self, r: i32) -> Result<Complex64> {
        let p = self.p() as f64;
        let base = match (self.rep_type(), self) {
            (RepType::Unramified, _) => {
                return Err(Error::Unsupported(
                    "toral values of unramified representations".into(),
                ))
            }
            (RepType::Type1, LocalRepDescriptor::SteinbergTwist { chi }) => {
                chi.varpi_value() / p
            }
            (RepType::Type2, LocalRepDescriptor::PrincipalSeries { chi1, chi2 }) => {
                let ram = if chi1.conductor() > 0 { chi1 } else { chi2 };
                ram.varpi_value() / p.sqrt()
            }
            _ => Complex64::new(0.0, 0.0),
        };
        Ok(match r {
            r if r < 0 => Complex64::new(0.0, 0.0),
            0 => Complex64::new(1.0, 0.0),
            r => base.powi(r),
        })
    }
}

impl AbstractLocalData {
    pub fn conductor(&self) -> u32 {
        match *self {
            AbstractLocalData::Steinberg { a } => {
                if a == 0 {
                    1
                } else {
                    2 * a
                }
            }
            AbstractLocalData::PrincipalSeries { a1, a2, .. } => a1 + a2,
            AbstractLocalData::Supercuspidal { n, .. } => n,
        }
    }

    /// Consistency of the conductor parameters over `Q_p`.
    pub fn validate(&self, p: u64) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDescriptor(msg));
        match *self {
            AbstractLocalData::Steinberg { a } => {
                if p == 2 && a == 1 {
                    return bad("no character of Q_2^x has conductor 1".into());
                }
            }
            AbstractLocalData::PrincipalSeries { a1, a2, a12inv } => {
                if p == 2 && (a1 == 1 || a2 == 1 || a12inv == 1) {
                    return bad("no character of Q_2^x has conductor 1".into());
                }
                if a1 != a2 && a12inv != a1.max(a2) {
                    return bad(format!(
                        "a(chi1/chi2) must be {} when a(chi1) != a(chi2)",
                        a1.max(a2)
                    ));
                }
                if a12inv > a1.max(a2) {
                    return bad("a(chi1/chi2) exceeds max(a(chi1), a(chi2))".into());
                }
                if a1 == a2 && a1 > 0 {
                    // equal conductors: the quotient is trivial on U_(a-1) when that
                    // quotient group has order 2 (p = 2, or p = 3 with a = 1)
                    if (p == 2 || (p == 3 && a1 == 1)) && a12inv >= a1 {
                        return bad(format!(
                            "a(chi1/chi2) < {a1} is forced for p = {p}"
                        ));
                    }
                }
            }
            AbstractLocalData::Supercuspidal { n, a_min } => {
                if a_min < 2 {
                    return bad(format!("supercuspidal conductor must be at least 2, got {a_min}"));
                }
                if n < a_min || (n > a_min && n % 2 == 1) {
                    return bad(format!(
                        "conductor {n} is not attainable by twisting a minimal one of conductor {a_min}"
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn rep_type(&self) -> RepType {
        match *self {
            AbstractLocalData::Steinberg { a: 0 } => RepType::Type1,
            AbstractLocalData::Steinberg { .. } => RepType::Type3a,
            AbstractLocalData::PrincipalSeries { a1: 0, a2: 0, .. } => RepType::Unramified,
            AbstractLocalData::PrincipalSeries { a1, a2, .. } if a1 == 0 || a2 == 0 => {
                RepType::Type2
            }
            AbstractLocalData::PrincipalSeries { .. } => RepType::Type3b,
            AbstractLocalData::Supercuspidal { .. } => RepType::Type3c,
        }
    }
}

/// Closed-form local vanishing index at level `l` (`0 <= l <= n`).
///
/// Zero for p > 3. For p = 3 it is 1 exactly for principal series with
/// `a(chi1) = a(chi2) = a(chi1/chi2) = l` and `n = 2l >= 4`. For p = 2 the nonzero
/// cases are listed in the match below.
pub fn vanishing_index_table(data: &AbstractLocalData, p: u64, l: u32) -> Result<u32> {
    let n = data.conductor();
    if l > n {
        return Err(Error::LevelOutOfRange { l, n });
    }
    let half = n == 2 * l;
    Ok(match (p, *data) {
        (3, AbstractLocalData::PrincipalSeries { a1, a2, a12inv })
            if half && n >= 4 && a1 == l && a2 == l && a12inv == l =>
        {
            1
        }
        (2, AbstractLocalData::PrincipalSeries { a1, a2, a12inv }) => {
            if a1 >= 2 && a2 >= 2 && a1 != a2 && (l == a1 || l == a2) {
                1
            } else if half && n >= 6 && a1 == l && a2 == l && a12inv + 1 == l {
                3
            } else if half && n >= 4 && a1 == l && a2 == l && a12inv + 1 < l {
                2
            } else {
                0
            }
        }
        (2, AbstractLocalData::Supercuspidal { n, a_min }) if half && n >= 4 => {
            if a_min + 1 == n {
                1
            } else if a_min + 2 <= n {
                2
            } else {
                0
            }
        }
        (2, AbstractLocalData::Steinberg { a }) if a >= 2 && half && l == a => 2,
        _ => 0,
    })
}

/// Vanishing index by direct search: `e = d_pi(l) - max over mu of conductor
/// exactly l of (a(mu pi) + deg L(s, mu pi))`.
///
/// Representations of types 1 and 2, unramified ones, and levels `l <= 1` give 0.
pub fn vanishing_index_oracle(d: &LocalRepDescriptor, l: u32) -> Result<u32> {
    d.validate()?;
    let n = d.conductor();
    if l > n {
        return Err(Error::LevelOutOfRange { l, n });
    }
    if !d.rep_type().trivial_l_factor() || l <= 1 {
        return Ok(0);
    }
    let dpl = d.d_pi(l)?;
    let p = d.p();
    let chars: Vec<&PadicCharacter> = match d {
        LocalRepDescriptor::SteinbergTwist { chi } => vec![chi],
        LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => vec![chi1, chi2],
        LocalRepDescriptor::Supercuspidal { chi, .. } => vec![chi],
    };
    let level = chars.iter().map(|c| c.k()).fold(l, u32::max);
    let dual = dual_group(p, level)?;
    let idx: Vec<usize> = chars
        .iter()
        .map(|c| dual.index_of(c))
        .collect::<Result<_>>()?;

    let mut best: Option<u32> = None;
    for mu in dual.of_conductor(l) {
        let score = match d {
            LocalRepDescriptor::SteinbergTwist { .. } => match dual.conductor(dual.mul(mu, idx[0])) {
                0 => 2,
                a => 2 * a,
            },
            LocalRepDescriptor::PrincipalSeries { .. } => {
                let c1 = dual.conductor(dual.mul(mu, idx[0]));
                let c2 = dual.conductor(dual.mul(mu, idx[1]));
                c1 + c2 + (c1 == 0) as u32 + (c2 == 0) as u32
            }
            LocalRepDescriptor::Supercuspidal { a0, m0, .. } => {
                let a = dual.conductor(dual.mul(mu, idx[0]));
                (*a0).max(m0 + a).max(2 * a)
            }
        };
        if best.is_none_or(|b| score > b) {
            best = Some(score);
        }
        if score >= dpl {
            break;
        }
    }
    let best = best.ok_or_else(|| {
        Error::InternalInconsistency(format!("no characters of conductor {l} for p = {p}"))
    })?;
    dpl.checked_sub(best).ok_or_else(|| {
        Error::InternalInconsistency(format!(
            "twisted conductor plus L-degree {best} exceeds d_pi({l}) = {dpl}"
        ))
    })
}

// JSON forms. Concrete descriptors carry characters; abstract ones carry only
// conductors and may be flagged with "abstract": true.

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::InvalidDescriptor(format!("missing field `{key}`")))
}

fn char_field(obj: &Map<String, Value>, key: &str) -> Result<PadicCharacter> {
    serde_json::from_value(field(obj, key)?.clone())
        .map_err(|e| Error::InvalidDescriptor(format!("field `{key}`: {e}")))
}

fn u32_field(obj: &Map<String, Value>, key: &str) -> Result<u32> {
    field(obj, key)?
        .as_u64()
        .and_then(|v| u32::try_from(v).ok())
        .ok_or_else(|| Error::InvalidDescriptor(format!("field `{key}` must be a small non-negative integer")))
}

impl LocalData {
    pub fn from_json(v: &Value) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidDescriptor("descriptor must be a JSON object".into()))?;
        let kind = field(obj, "kind")?
            .as_str()
            .ok_or_else(|| Error::InvalidDescriptor("`kind` must be a string".into()))?;
        let flagged = obj.get("abstract").and_then(Value::as_bool).unwrap_or(false);
        let concrete_key = match kind {
            "steinberg" => "chi",
            "principal_series" => "chi1",
            "supercuspidal" => "a0",
            other => return Err(Error::InvalidDescriptor(format!("unknown kind `{other}`"))),
        };
        if flagged || !obj.contains_key(concrete_key) {
            let data = match kind {
                "steinberg" => AbstractLocalData::Steinberg {
                    a: u32_field(obj, "a")?,
                },
                "principal_series" => AbstractLocalData::PrincipalSeries {
                    a1: u32_field(obj, "a1")?,
                    a2: u32_field(obj, "a2")?,
                    a12inv: u32_field(obj, "a12inv")?,
                },
                _ => AbstractLocalData::Supercuspidal {
                    n: u32_field(obj, "n")?,
                    a_min: u32_field(obj, "a_min")?,
                },
            };
            return Ok(LocalData::Abstract(data));
        }
        let d = match kind {
            "steinberg" => LocalRepDescriptor::steinberg(char_field(obj, "chi")?),
            "principal_series" => {
                LocalRepDescriptor::principal_series(char_field(obj, "chi1")?, char_field(obj, "chi2")?)?
            }
            _ => LocalRepDescriptor::supercuspidal(
                u32_field(obj, "a0")?,
                u32_field(obj, "m0")?,
                char_field(obj, "chi")?,
            )?,
        };
        Ok(LocalData::Concrete(d))
    }

    pub fn to_json(&self) -> Value {
        match self {
            LocalData::Abstract(a) => {
                let mut v = serde_json::to_value(a).expect("plain data serializes");
                v["abstract"] = Value::Bool(true);
                v
            }
            LocalData::Concrete(d) => {
                let c = |chi: &PadicCharacter| serde_json::to_value(chi).expect("character serializes");
                match d {
                    LocalRepDescriptor::SteinbergTwist { chi } => {
                        serde_json::json!({"kind": "steinberg", "chi": c(chi)})
                    }
                    LocalRepDescriptor::PrincipalSeries { chi1, chi2 } => serde_json::json!({
                        "kind": "principal_series", "chi1": c(chi1), "chi2": c(chi2)
                    }),
                    LocalRepDescriptor::Supercuspidal { a0, m0, chi } => serde_json::json!({
                        "kind": "supercuspidal", "a0": a0, "m0": m0, "chi": c(chi)
                    }),
                }
            }
        }
    }

    pub fn abstract_data(&self) -> AbstractLocalData {
        match self {
            LocalData::Concrete(d) => d.abstract_data(),
            LocalData::Abstract(a) => *a,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.abstract_data().conductor()
    }

    pub fn concrete(&self) -> Option<&LocalRepDescriptor> {
        match self {
            LocalData::Concrete(d) => Some(d),
            LocalData::Abstract(_) => None,
        }
    }
}

impl Serialize for LocalData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        LocalData::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl Serialize for LocalRepDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LocalData::Concrete(self.clone()).to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for LocalRepDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match LocalData::deserialize(d)? {
            LocalData::Concrete(c) => Ok(c),
            LocalData::Abstract(_) => Err(serde::de::Error::custom(
                "expected a descriptor with concrete characters",
            )),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic_chars::enumerate_chars;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn char_of_conductor(p: u64, a: u32, pick: usize) -> PadicCharacter {
        if a == 0 {
            return PadicCharacter::trivial(p, 0).unwrap();
        }
        let cs = enumerate_chars(p, a, true).unwrap();
        cs[pick % cs.len()].clone()
    }

    #[test]
    fn conductors() {
        let st = LocalRepDescriptor::steinberg(PadicCharacter::trivial(3, 0).unwrap());
        assert_eq!(st.conductor(), 1);
        assert_eq!(st.rep_type(), RepType::Type1);
        let ps = LocalRepDescriptor::principal_series(char_of_conductor(3, 2, 0), char_of_conductor(3, 1, 0))
            .unwrap();
        assert_eq!(ps.conductor(), 3);
        let sc = LocalRepDescriptor::supercuspidal(3, 1, char_of_conductor(3, 2, 0)).unwrap();
        assert_eq!(sc.conductor(), 4);
        assert!(!sc.is_minimal());
        let sc0 = LocalRepDescriptor::supercuspidal(3, 0, PadicCharacter::trivial(3, 0).unwrap()).unwrap();
        assert!(sc0.is_minimal());
        let twisted = LocalRepDescriptor::supercuspidal(4, 2, PadicCharacter::trivial(5, 0).unwrap()).unwrap();
        assert_eq!(twisted.twist_conductor(&char_of_conductor(5, 3, 0)).unwrap(), 6);
    }

    #[test]
    fn minimality_by_type() {
        let t2 = LocalRepDescriptor::principal_series(char_of_conductor(5, 2, 1), PadicCharacter::trivial(5, 0).unwrap())
            .unwrap();
        assert_eq!(t2.rep_type(), RepType::Type2);
        assert!(t2.is_minimal());
        let t3a = LocalRepDescriptor::steinberg(char_of_conductor(5, 2, 1));
        assert_eq!(t3a.conductor(), 4);
        assert!(!t3a.is_minimal());
    }

    #[test]
    fn twist_conductor_example() {
        let chi1 = char_of_conductor(3, 2, 0);
        let chi2 = PadicCharacter::trivial(3, 0).unwrap();
        let ps = LocalRepDescriptor::principal_series(chi1.clone(), chi2).unwrap();
        assert_eq!(ps.twist_conductor(&chi1.inverse()).unwrap(), 2);
        assert_eq!(ps.twist_conductor(&PadicCharacter::trivial(3, 0).unwrap()).unwrap(), 2);
    }

    #[test]
    fn reducible_principal_series_rejected() {
        let p = 5.0;
        let a = PadicCharacter::unramified(5, Complex64::new(p, 0.0)).unwrap();
        let b = PadicCharacter::trivial(5, 0).unwrap();
        assert!(matches!(
            LocalRepDescriptor::principal_series(a, b),
            Err(Error::InvalidDescriptor(_))
        ));
        assert!(LocalRepDescriptor::supercuspidal(4, 3, PadicCharacter::trivial(2, 0).unwrap()).is_err());
        assert!(LocalRepDescriptor::supercuspidal(1, 0, PadicCharacter::trivial(2, 0).unwrap()).is_err());
    }

    #[test]
    fn d_pi_values() {
        assert_eq!(d_pi_raw(4, 2, 2).unwrap(), 4);
        assert_eq!(d_pi_raw(1, 0, 1).unwrap(), 2);
        assert_eq!(d_pi_raw(3, 0, 4).unwrap_err(), Error::LevelOutOfRange { l: 4, n: 3 });
    }

    #[test]
    fn toral_values() {
        let chi1 = char_of_conductor(3, 2, 0);
        let chi2 = char_of_conductor(3, 1, 0);
        let t3b = LocalRepDescriptor::principal_series(chi1, chi2).unwrap();
        assert_eq!(t3b.toral_whittaker(0).unwrap(), one());
        assert_eq!(t3b.toral_whittaker(2).unwrap(), Complex64::new(0.0, 0.0));
        let st = LocalRepDescriptor::steinberg(PadicCharacter::trivial(7, 0).unwrap());
        assert!((st.toral_whittaker(3).unwrap() - 7f64.powi(-3)).norm() < 1e-15);
        let unr = LocalRepDescriptor::principal_series(
            PadicCharacter::trivial(7, 0).unwrap(),
            PadicCharacter::trivial(7, 0).unwrap(),
        )
        .unwrap();
        assert!(matches!(unr.toral_whittaker(1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn table_examples() {
        let ps = |a1, a2, a12inv| AbstractLocalData::PrincipalSeries { a1, a2, a12inv };
        for l in 0..=4 {
            assert_eq!(vanishing_index_table(&ps(2, 2, 2), 5, l).unwrap(), 0);
        }
        assert_eq!(vanishing_index_table(&ps(2, 2, 2), 3, 2).unwrap(), 1);
        assert_eq!(vanishing_index_table(&ps(3, 3, 2), 2, 3).unwrap(), 3);
        assert_eq!(vanishing_index_table(&ps(2, 2, 0), 2, 2).unwrap(), 2);
        assert_eq!(vanishing_index_table(&AbstractLocalData::Steinberg { a: 2 }, 2, 2).unwrap(), 2);
        assert_eq!(
            vanishing_index_table(&AbstractLocalData::Supercuspidal { n: 4, a_min: 3 }, 2, 2).unwrap(),
            1
        );
        assert_eq!(vanishing_index_table(&ps(1, 1, 0), 3, 5).unwrap_err(), Error::LevelOutOfRange { l: 5, n: 2 });
    }

    #[test]
    fn oracle_examples() {
        let st = LocalRepDescriptor::steinberg(char_of_conductor(2, 2, 0));
        assert_eq!(vanishing_index_oracle(&st, 2).unwrap(), 2);
        let sc = LocalRepDescriptor::supercuspidal(3, 0, char_of_conductor(2, 2, 0)).unwrap();
        assert_eq!(sc.conductor(), 4);
        assert_eq!(vanishing_index_oracle(&sc, 2).unwrap(), 1);
        for chi1 in enumerate_chars(3, 2, true).unwrap() {
            let d = LocalRepDescriptor::principal_series(chi1, char_of_conductor(3, 1, 0)).unwrap();
            assert_eq!(vanishing_index_oracle(&d, 1).unwrap(), 0);
        }
    }

    #[test]
    fn json_round_trip() {
        let d = LocalRepDescriptor::principal_series(char_of_conductor(2, 3, 1), char_of_conductor(2, 3, 2)).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["kind"], "principal_series");
        let back: LocalRepDescriptor = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);

        let a: LocalData =
            serde_json::from_str(r#"{"kind":"principal_series","a1":3,"a2":3,"a12inv":2}"#).unwrap();
        assert_eq!(a, LocalData::Abstract(AbstractLocalData::PrincipalSeries { a1: 3, a2: 3, a12inv: 2 }));
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v["abstract"], true);
        assert_eq!(serde_json::from_value::<LocalData>(v).unwrap(), a);
        assert!(serde_json::from_str::<LocalData>(r#"{"kind":"cuspidal"}"#).is_err());
    }

    #[test]
    fn abstract_validation() {
        let ps = |a1, a2, a12inv| AbstractLocalData::PrincipalSeries { a1, a2, a12inv };
        assert!(ps(3, 3, 2).validate(2).is_ok());
        assert!(ps(3, 3, 3).validate(2).is_err());
        assert!(ps(3, 2, 2).validate(5).is_err());
        assert!(ps(2, 2, 2).validate(3).is_ok());
        assert!(AbstractLocalData::Supercuspidal { n: 5, a_min: 3 }.validate(2).is_err());
        assert!(AbstractLocalData::Supercuspidal { n: 6, a_min: 3 }.validate(2).is_ok());
    }
}
