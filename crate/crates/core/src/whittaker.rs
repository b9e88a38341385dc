//! Values of the normalized Whittaker newform of a ramified principal series on the
//! representatives `g(t, l, v) = a(p^t) w n(v p^-l)`, reconstructed from the local
//! functional equation.
//!
//! For fixed `t, l` the function `v -> W(g(t, l, v))` on `(Z/p^l)^x` has Fourier
//! coefficients `c_t(mu)`, `mu` running over characters mod `p^l`. With `X = p^-s`
//! and `omega(p) = 1` they satisfy the basic identity
//!
//! ```text
//! eps(1/2, mu pi) sum_t p^((t+a)/2) c_t(mu) X^(t+a) L(s, mu pi)^-1
//!     = omega(-1) sum_{r>=0} p^(-r/2) X^(-r) W(a(p^r)) G(p^(r-l), mu^-1) L(1-s, mu^-1 omega^-1 pi)^-1
//! ```
//!
//! with `a = a(mu pi)`. The right side is computed from toral values and Gauss sums;
//! dividing by `eps L(s, mu pi)^-1` as a power series in `X` recovers `c_t(mu)`.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gauss_eps::{classify, gauss_sum_closed, root_number, GaussClass};
use crate::local_reps::{LocalRepDescriptor, RepType};
use crate::padic_chars::{dual_group, DualGroup, PadicCharacter, UnitGroup};

/// Extra exponents kept below `-d_pi(l)` when truncating the right side, so that
/// the support bound is checked rather than assumed.
const GUARD: u32 = 4;

/// Largest `e` searched by [`vanishing_index_definitional`].
pub const DEFINITIONAL_WINDOW: u32 = 6;

/// Residual allowed when re-substituting the coefficients into the identity.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// A finitely supported Laurent polynomial in `X`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LaurentPoly {
    /// exponent of `coeffs[0]`
    pub min_exp: i32,
    pub coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            min_exp: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(c: Complex64, e: i32) -> Self {
        LaurentPoly {
            min_exp: e,
            coeffs: vec![c],
        }
    }

    pub fn max_exp(&self) -> i32 {
        self.min_exp + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, e: i32) -> Complex64 {
        let i = e - self.min_exp;
        if i < 0 || i as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.min_exp.min(other.min_exp);
        let hi = self.max_exp().max(other.max_exp());
        LaurentPoly {
            min_exp: lo,
            coeffs: (lo..=hi).map(|e| self.coeff(e) + other.coeff(e)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly {
            min_exp: self.min_exp + other.min_exp,
            coeffs,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        LaurentPoly {
            min_exp: self.min_exp,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Drop all terms of exponent below `e`.
    pub fn truncate_below(&self, e: i32) -> Self {
        if self.coeffs.is_empty() || e <= self.min_exp {
            return self.clone();
        }
        if e > self.max_exp() {
            return Self::zero();
        }
        LaurentPoly {
            min_exp: e,
            coeffs: self.coeffs[(e - self.min_exp) as usize..].to_vec(),
        }
    }
}

/// A principal series with `omega(p) = 1`, obtained by an unramified twist, and the
/// data of that twist.
struct Normalized {
    rep: LocalRepDescriptor,
    chi1: PadicCharacter,
    chi2: PadicCharacter,
    /// value at p of the twisting character
    nu: Complex64,
}

fn normalize(d: &LocalRepDescriptor) -> Result<Normalized> {
    d.validate()?;
    let LocalRepDescriptor::PrincipalSeries { chi1, chi2 } = d else {
        return Err(Error::Unsupported(
            "Whittaker values are only reconstructed for principal series".into(),
        ));
    };
    if d.rep_type() == RepType::Unramified {
        return Err(Error::Unsupported(
            "Whittaker values of unramified principal series".into(),
        ));
    }
    let omega = chi1.varpi_value() * chi2.varpi_value();
    let nu = omega.sqrt().inv();
    let rep = d.unramified_twist(nu)?;
    let LocalRepDescriptor::PrincipalSeries { chi1, chi2 } = &rep else {
        unreachable!()
    };
    Ok(Normalized {
        chi1: chi1.clone(),
        chi2: chi2.clone(),
        rep: rep.clone(),
        nu,
    })
}

/// Inverse L-factors `prod (1 - alpha_i X)` of `L(s, mu pi)` and the right-side
/// factor `prod (1 - alpha_i^-1 p^-1 X^-1)`, over `i` with `mu chi_i` unramified.
fn l_factor_polys(norm: &Normalized, mu: &PadicCharacter) -> Result<(LaurentPoly, LaurentPoly)> {
    let q = norm.rep.p() as f64;
    let one = Complex64::new(1.0, 0.0);
    let mut left = LaurentPoly::monomial(one, 0);
    let mut right = LaurentPoly::monomial(one, 0);
    for chi in [&norm.chi1, &norm.chi2] {
        let twisted = mu.mul(chi)?;
        if twisted.conductor() == 0 {
            let alpha = twisted.varpi_value();
            left = left.mul(&LaurentPoly {
                min_exp: 0,
                coeffs: vec![one, -alpha],
            });
            right = right.mul(&LaurentPoly {
                min_exp: -1,
                coeffs: vec![-alpha.inv() / q, one],
            });
        }
    }
    Ok((left, right))
}

fn rhs_truncated(norm: &Normalized, mu: &PadicCharacter, l: u32, r_max: u32) -> Result<LaurentPoly> {
    let p = norm.rep.p();
    let q = p as f64;
    let mu_inv = mu.inverse();
    let a_mu = mu_inv.conductor();
    let mut sum = LaurentPoly::zero();
    for r in 0..=r_max {
        // G(p^(r-l), mu^-1) is supported on r = l - a(mu), or r >= l - 1 for trivial mu
        if classify(l as i32 - r as i32, a_mu) == GaussClass::Zero {
            continue;
        }
        let w = norm.rep.toral_whittaker(r as i32)?;
        if w == Complex64::new(0.0, 0.0) {
            continue;
        }
        let g = gauss_sum_closed(1, l as i32 - r as i32, &mu_inv)?;
        sum = sum.add(&LaurentPoly::monomial(q.powf(-(r as f64) / 2.0) * w * g, -(r as i32)));
    }
    if sum.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let omega_minus_one = norm.chi1.value(-1)? * norm.chi2.value(-1)?;
    let (_, right) = l_factor_polys(norm, mu)?;
    Ok(sum.mul(&right).scale(omega_minus_one).truncate_below(-(r_max as i32)))
}

/// Right side of the basic identity for `mu` at level `l`, after twisting `d` so that
/// `omega(p) = 1`. The sum over `r` is finite except for type 2 with trivial `mu`,
/// where it is truncated: coefficients are exact for exponents `>= -(d_pi(l) + 4)`.
pub fn rhs_series(d: &LocalRepDescriptor, mu: &PadicCharacter, l: u32) -> Result<LaurentPoly> {
    let norm = normalize(d)?;
    let dpl = norm.rep.d_pi(l)?;
    rhs_truncated(&norm, &mu.unit_part(), l, dpl + GUARD)
}

/// Fourier coefficients `c_t(mu)` for all characters `mu` mod `p^l` and
/// `-d_pi(l) <= t <= t_max`, for the representation twisted to `omega(p) = 1`.
#[derive(Clone)]
pub struct WhittakerTable {
    descriptor: LocalRepDescriptor,
    normalized: LocalRepDescriptor,
    nu: Complex64,
    l: u32,
    d: u32,
    t_min: i32,
    t_max: i32,
    dual: Arc<DualGroup>,
    /// `coeffs[mu][t - t_min]`
    coeffs: Vec<Vec<Complex64>>,
    residual: f64,
}

/// Default top of the coefficient window: `d_pi(l) + 8`.
pub fn default_t_max(d: &LocalRepDescriptor, l: u32) -> Result<i32> {
    Ok(d.d_pi(l)? as i32 + 8)
}

/// Solve the basic identity for every `mu` mod `p^l`.
pub fn c_table(d: &LocalRepDescriptor, l: u32, t_max: i32) -> Result<WhittakerTable> {
    let norm = normalize(d)?;
    let p = d.p();
    let q = p as f64;
    let n = d.conductor();
    if l > n {
        return Err(Error::LevelOutOfRange { l, n });
    }
    let dpl = norm.rep.d_pi(l)?;
    let t_min = -(dpl as i32);
    if t_max < t_min {
        return Err(Error::WindowError(format!(
            "t_max = {t_max} lies below the support bound {t_min}"
        )));
    }
    let r_max = dpl + GUARD;
    let dual = dual_group(p, l)?;
    let width = (t_max - t_min + 1) as usize;
    let mut coeffs = Vec::with_capacity(dual.len());
    let mut residual = 0.0f64;
    let tol = crate::tolerance();

    for i in 0..dual.len() {
        let mu = dual.character(i);
        let rhs = rhs_truncated(&norm, &mu, l, r_max)?;
        if rhs.is_zero() {
            coeffs.push(vec![Complex64::new(0.0, 0.0); width]);
            continue;
        }
        let a = (mu.mul(&norm.chi1)?.conductor() + mu.mul(&norm.chi2)?.conductor()) as i32;
        let eps = root_number(&mu.mul(&norm.chi1)?)? * root_number(&mu.mul(&norm.chi2)?)?;
        let (left, _) = l_factor_polys(&norm, &mu)?;

        // C(X) = rhs / (eps * left), a power series starting at -r_max
        let lo = -(r_max as i32);
        let hi = t_max + a;
        let mut series = vec![Complex64::new(0.0, 0.0); (hi - lo + 1).max(0) as usize];
        let l0 = left.coeff(0);
        for e in lo..=hi {
            let mut acc = rhs.coeff(e) / eps;
            for k in 1..=left.max_exp() {
                if e - k >= lo {
                    acc -= left.coeff(k) * series[(e - k - lo) as usize];
                }
            }
            series[(e - lo) as usize] = acc / l0;
        }
        for e in lo..(t_min + a).min(hi + 1) {
            let c = series[(e - lo) as usize];
            if c.norm() > tol {
                return Err(Error::InternalInconsistency(format!(
                    "coefficient {c} at X^{e} below the support bound for mu = {mu:?}"
                )));
            }
        }
        // re-substitute: eps * C * left must reproduce rhs up to X^hi
        for e in lo..=hi {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..=left.max_exp() {
                if e - k >= lo {
                    acc += left.coeff(k) * series[(e - k - lo) as usize];
                }
            }
            residual = residual.max((acc * eps - rhs.coeff(e)).norm());
        }
        let row = (t_min..=t_max)
            .map(|t| {
                let e = t + a;
                let c = if e >= lo { series[(e - lo) as usize] } else { Complex64::new(0.0, 0.0) };
                c / q.powf(e as f64 / 2.0)
            })
            .collect();
        coeffs.push(row);
    }
    if residual > RESIDUAL_TOL {
        return Err(Error::InternalInconsistency(format!(
            "basic identity residual {residual:e} exceeds {RESIDUAL_TOL:e}"
        )));
    }
    Ok(WhittakerTable {
        descriptor: d.clone(),
        normalized: norm.rep,
        nu: norm.nu,
        l,
        d: dpl,
        t_min,
        t_max,
        dual,
        coeffs,
        residual,
    })
}

/// One evaluated point `W(g(t, l, v))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WhittakerValue {
    pub v: u64,
    pub value: Complex64,
}

impl WhittakerTable {
    pub fn descriptor(&self) -> &LocalRepDescriptor {
        &self.descriptor
    }

    /// The twist of the descriptor with `omega(p) = 1` the coefficients belong to.
    pub fn normalized(&self) -> &LocalRepDescriptor {
        &self.normalized
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn d_pi(&self) -> u32 {
        self.d
    }

    pub fn window(&self) -> (i32, i32) {
        (self.t_min, self.t_max)
    }

    /// Largest deviation seen when re-substituting into the basic identity.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Characters mod `p^l` indexing the coefficient rows.
    pub fn characters(&self) -> impl Iterator<Item = PadicCharacter> + '_ {
        (0..self.dual.len()).map(|i| self.dual.character(i))
    }

    fn check_window(&self, t: i32) -> Result<()> {
        if t > self.t_max {
            return Err(Error::WindowError(format!(
                "t = {t} outside the computed window [{}, {}]",
                self.t_min, self.t_max
            )));
        }
        Ok(())
    }

    /// `c_t(mu)` for the `omega(p) = 1` twist; zero below the window.
    pub fn coefficient(&self, mu_index: usize, t: i32) -> Result<Complex64> {
        self.check_window(t)?;
        if t < self.t_min {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(self.coeffs[mu_index][(t - self.t_min) as usize])
    }

    /// Coefficients `c_t(mu)` for all `mu`, in character-index order.
    pub fn coefficients_at(&self, t: i32) -> Result<Vec<Complex64>> {
        (0..self.dual.len()).map(|i| self.coefficient(i, t)).collect()
    }

    /// Scale relating the original representation to its normalized twist:
    /// `W_pi(g) = nu(p)^-t W_(nu pi)(g)` because `det g(t, l, v) = p^t`.
    fn twist_factor(&self, t: i32) -> Complex64 {
        self.nu.powi(-t)
    }

    /// `W_pi(g(t, l, v))` for the original descriptor.
    pub fn value(&self, t: i32, v: i64) -> Result<Complex64> {
        Ok(self.twist_factor(t) * self.normalized_value(t, v)?)
    }

    /// `W(g(t, l, v))` for the `omega(p) = 1` twist.
    pub fn normalized_value(&self, t: i32, v: i64) -> Result<Complex64> {
        let p = self.dual.p() as i64;
        if v.rem_euclid(p) == 0 {
            return Err(Error::DomainError(format!("{v} is not a unit mod {p}")));
        }
        let cs = self.coefficients_at(t)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in cs.iter().enumerate() {
            if *c != Complex64::new(0.0, 0.0) {
                acc += c * self.dual.character(i).value(v)?;
            }
        }
        Ok(acc)
    }

    /// `W_pi(g(t, l, v))` for every unit residue `v` mod `p^l`, in increasing order
    /// of `v`. Uses an FFT over the cyclic group when `p` is odd.
    pub fn values(&self, t: i32) -> Result<Vec<WhittakerValue>> {
        let cs = self.coefficients_at(t)?;
        let scale = self.twist_factor(t);
        let p = self.dual.p();
        let group = UnitGroup::get(p, self.l)?;
        let mut out: Vec<WhittakerValue> = if group.generators().len() == 1 {
            let order = cs.len();
            let mut buf = cs.clone();
            FftPlanner::<f64>::new().plan_fft_inverse(order).process(&mut buf);
            // buf[m] = sum_e c_e exp(2 pi i e m / order) = W(g^m)
            let g = group.generators()[0];
            let modulus = group.modulus();
            let mut x = 1 % modulus;
            let mut vals = Vec::with_capacity(order);
            for b in buf {
                vals.push(WhittakerValue {
                    v: x.max(1),
                    value: b * scale,
                });
                x = x * g % modulus;
            }
            vals
        } else {
            group
                .units()
                .map(|v| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (i, c) in cs.iter().enumerate() {
                        if *c != Complex64::new(0.0, 0.0) {
                            acc += c * self.dual.character(i).value(v as i64)?;
                        }
                    }
                    Ok(WhittakerValue {
                        v,
                        value: acc * scale,
                    })
                })
                .collect::<Result<_>>()?
        };
        out.sort_by_key(|w| w.v);
        Ok(out)
    }
}

/// `W_pi(g(t, l, v))`, building the coefficient table for the window up to `t`.
pub fn whittaker_value(d: &LocalRepDescriptor, t: i32, l: u32, v: i64) -> Result<Complex64> {
    let dpl = d.d_pi(l)? as i32;
    if t < -dpl {
        return Ok(Complex64::new(0.0, 0.0));
    }
    c_table(d, l, t)?.value(t, v)
}

/// The least `e >= 0` with `W(g(e - d_pi(l), l, v)) != 0` for some unit `v`, found
/// by evaluating the newform. Searches `e <= 6`.
pub fn vanishing_index_definitional(d: &LocalRepDescriptor, l: u32) -> Result<u32> {
    let dpl = d.d_pi(l)? as i32;
    let table = c_table(d, l, -dpl + DEFINITIONAL_WINDOW as i32)?;
    vanishing_index_from_table(&table)
}

/// The least `e` in the window of `table` with a nonzero value at `t = e - d_pi(l)`.
pub fn vanishing_index_from_table(table: &WhittakerTable) -> Result<u32> {
    let dpl = table.d_pi() as i32;
    let tol = crate::tolerance();
    let (_, t_max) = table.window();
    for t in -dpl..=t_max {
        if table.values(t)?.iter().any(|w| w.value.norm() > tol) {
            return Ok((t + dpl) as u32);
        }
    }
    Err(Error::WindowError(format!(
        "no nonzero value with e <= {}",
        t_max + dpl
    )))
}
