//! Cusps of X0(N): representatives `a/L` with `L | N` and `gcd(a, N) = 1`.
//!
//! Two such cusps are equivalent iff their denominators agree and
//! `a1 = a2 mod gcd(L, N/L)`, so there are `phi(gcd(L, N/L))` cusps of
//! denominator `L`.

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, ext_gcd, gcd, lcm, phi};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cusp {
    pub a: i64,
    #[serde(rename = "L")]
    pub l: u64,
    #[serde(rename = "N")]
    pub n: u64,
}

/// `sigma^-1 = [[a, b], [L, d]]` with `ad - bL = 1`, so that `sigma` maps the cusp
/// `a/L` to infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalingMatrix {
    pub a: i64,
    pub b: i64,
    #[serde(rename = "L")]
    pub l: i64,
    pub d: i64,
}

fn check_divisor(l: u64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    if l == 0 || n % l != 0 {
        return Err(Error::NotADivisor { d: l, n });
    }
    Ok(())
}

impl Cusp {
    pub fn new(a: i64, l: u64, n: u64) -> Result<Self> {
        check_divisor(l, n)?;
        if gcd(a.unsigned_abs(), n) != 1 {
            return Err(Error::InvalidArgument(format!(
                "numerator {a} is not coprime to {n}"
            )));
        }
        Ok(Cusp { a, l, n })
    }

    /// `gcd(L, N/L)`: the numerator matters only modulo this.
    pub fn class_modulus(&self) -> u64 {
        gcd(self.l, self.n / self.l)
    }

    /// The equivalent cusp with the least positive numerator coprime to `N`.
    pub fn canonical(&self) -> Self {
        let g = self.class_modulus() as i64;
        let start = self.a.rem_euclid(g);
        let a = smallest_coprime_in_class(start, g, self.n);
        Cusp { a, ..*self }
    }

    pub fn width(&self) -> u64 {
        width(self.n, self.l).expect("validated cusp")
    }

    pub fn delta(&self, m: u64) -> Result<u64> {
        delta(self.n, m, self.l)
    }

    pub fn scaling_matrix(&self) -> ScalingMatrix {
        scaling_matrix(self)
    }
}

fn smallest_coprime_in_class(residue: i64, modulus: i64, n: u64) -> i64 {
    let mut a = if residue == 0 { modulus } else { residue };
    while gcd(a as u64, n) != 1 {
        a += modulus;
    }
    a
}

/// Representatives of the inequivalent cusps of denominator `L`, in increasing
/// order of numerator.
pub fn cusps_of_denominator(n: u64, l: u64) -> Result<Vec<Cusp>> {
    check_divisor(l, n)?;
    let g = gcd(l, n / l) as i64;
    let mut out: Vec<Cusp> = (0..g)
        .filter(|&c| gcd(c as u64, g as u64) == 1)
        .map(|c| Cusp {
            a: smallest_coprime_in_class(c, g, n),
            l,
            n,
        })
        .collect();
    out.sort_by_key(|c| c.a);
    Ok(out)
}

/// All cusps, grouped by increasing denominator.
pub fn all_cusps(n: u64) -> Result<Vec<Cusp>> {
    let mut out = Vec::new();
    for l in divisors(n) {
        out.extend(cusps_of_denominator(n, l)?);
    }
    Ok(out)
}

/// `N / gcd(L^2, N)`.
pub fn width(n: u64, l: u64) -> Result<u64> {
    check_divisor(l, n)?;
    Ok(n / gcd(l * l, n))
}

/// `lcm(L^2, N, LM) / L^2`, the period of the Fourier expansion at a cusp of
/// denominator `L` of a newform whose character has conductor `M`.
pub fn delta(n: u64, m: u64, l: u64) -> Result<u64> {
    check_divisor(l, n)?;
    check_divisor(m, n)?;
    Ok(lcm(lcm(l * l, n), l * m) / (l * l))
}

pub fn scaling_matrix(c: &Cusp) -> ScalingMatrix {
    let (a, l) = (c.a, c.l as i64);
    // a x + L y = 1, so d = x, b = -y; then move b into (-|a|/2, |a|/2]
    let (_, x, y) = ext_gcd(a, l);
    let (mut b, mut d) = (-y, x);
    let m = a.abs();
    let k = b.div_euclid(m);
    b -= k * m;
    d -= k * m / a * l;
    if 2 * b > m {
        b -= m;
        d -= m / a * l;
    }
    debug_assert_eq!(a * d - b * l, 1);
    ScalingMatrix { a, b, l, d }
}

impl ScalingMatrix {
    /// `sigma = [[d, -b], [-L, a]]`.
    pub fn sigma(&self) -> [[i64; 2]; 2] {
        [[self.d, -self.b], [-self.l, self.a]]
    }

    pub fn sigma_inverse(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.l, self.d]]
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.l
    }

    /// Check that this matrix sends `c` to infinity.
    pub fn validate_for(&self, c: &Cusp) -> Result<()> {
        if self.det() != 1 {
            return Err(Error::BadMatrix(format!("determinant {}", self.det())));
        }
        let [[_, _], [g, h]] = self.sigma();
        // sigma (a/L) = (d a - b L) / (-L a + a L)
        if g * c.a + h * c.l as i64 != 0 {
            return Err(Error::BadMatrix(format!(
                "sigma does not send {}/{} to infinity",
                c.a, c.l
            )));
        }
        Ok(())
    }
}

/// Same level, same denominator, numerators congruent mod `gcd(L, N/L)`.
pub fn are_equivalent(c1: &Cusp, c2: &Cusp) -> bool {
    c1.n == c2.n
        && c1.l == c2.l
        && (c1.a - c2.a).rem_euclid(c1.class_modulus() as i64) == 0
}

/// Number of cusps of X0(N): `sum over L | N of phi(gcd(L, N/L))`.
pub fn cusp_count(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    Ok(divisors(n).into_iter().map(|l| phi(gcd(l, n / l))).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominator_examples() {
        assert_eq!(cusps_of_denominator(4, 2).unwrap().len(), 1);
        let inf = cusps_of_denominator(12, 12).unwrap();
        assert_eq!(inf.len(), 1);
        let nine: Vec<i64> = cusps_of_denominator(9, 3).unwrap().iter().map(|c| c.a).collect();
        assert_eq!(nine, vec![1, 2]);
        assert_eq!(cusps_of_denominator(9, 2).unwrap_err(), Error::NotADivisor { d: 2, n: 9 });
        // numerators must be coprime to N, not just to L
        let c = cusps_of_denominator(15, 1).unwrap();
        assert_eq!(c[0].a, 1);
        assert_eq!(Cusp::new(3, 1, 15).unwrap_err(), Error::InvalidArgument("numerator 3 is not coprime to 15".into()));
    }

    #[test]
    fn width_and_delta() {
        assert_eq!(width(36, 6).unwrap(), 1);
        assert_eq!(delta(16, 8, 4).unwrap(), 2);
        assert_eq!(width(16, 4).unwrap(), 1);
        for n in 1..60u64 {
            for l in divisors(n) {
                assert_eq!(delta(n, 1, l).unwrap(), width(n, l).unwrap());
            }
        }
    }

    #[test]
    fn counts() {
        assert_eq!(cusp_count(4).unwrap(), 3);
        for p in [2u64, 3, 5, 7, 97] {
            assert_eq!(cusp_count(p).unwrap(), 2);
        }
        assert_eq!(all_cusps(4).unwrap().len(), 3);
    }

    #[test]
    fn scaling_matrices() {
        for n in 1..80u64 {
            for c in all_cusps(n).unwrap() {
                let s = c.scaling_matrix();
                s.validate_for(&c).unwrap();
                assert!(2 * s.b.abs() <= c.a.abs());
            }
        }
        let c = Cusp::new(1, 5, 5).unwrap();
        assert_eq!(c.scaling_matrix(), ScalingMatrix { a: 1, b: 0, l: 5, d: 1 });
        let bad = ScalingMatrix { a: 1, b: 1, l: 5, d: 1 };
        assert!(matches!(bad.validate_for(&c), Err(Error::BadMatrix(_))));
    }

    #[test]
    fn equivalence() {
        let c = Cusp::new(1, 12, 12).unwrap();
        assert!(are_equivalent(&c, &c));
        let a = Cusp::new(1, 3, 9).unwrap();
        let b = Cusp::new(4, 3, 9).unwrap();
        let d = Cusp::new(2, 3, 9).unwrap();
        assert!(are_equivalent(&a, &b));
        assert!(!are_equivalent(&a, &d));
        assert_eq!(b.canonical(), a);
    }
}
