//! Forward evaluation of the approximations.
//!
//! `1 − e^E` is always computed as `−expm1(E)`: near `x = 0` the exponent is tiny
//! and the naive subtraction would return zero, flattening the curve.
//!
//! Once `e^E` underflows (`x ≳ 40` for Φ) the Φ value saturates at exactly `1.0`
//! in `f64`, even though the mathematical range is the open interval.

use std::f64::consts::SQRT_2;

use crate::error::{require_finite, Error, Result};
use crate::form::ExponentForm;
use crate::method::MethodId;

/// The exponent coefficients of `method`.
pub fn method_form(method: MethodId) -> ExponentForm {
    method.form()
}

/// `E(u)` for a given form; `u` must be finite and non-negative.
pub fn exponent_eval(form: &ExponentForm, u: f64) -> Result<f64> {
    form.eval(u)
}

#[inline]
fn sqrt_one_minus_exp(form: &ExponentForm, x: f64) -> f64 {
    (-form.eval_unchecked(x * x).exp_m1()).sqrt()
}

fn check_nonneg(x: f64) -> Result<()> {
    require_finite("x", x)?;
    if x < 0.0 {
        return Err(Error::Domain(format!("x must be non-negative, got {x}")));
    }
    Ok(())
}

fn require_phi(method: MethodId) -> Result<()> {
    if method.is_phi() {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "{method} approximates erf, not the normal CDF"
        )))
    }
}

/// Φ approximation for `x ≥ 0`; returns exactly `0.5` at `x = 0`.
pub fn phi_nonneg(method: MethodId, x: f64) -> Result<f64> {
    require_phi(method)?;
    check_nonneg(x)?;
    Ok(phi_nonneg_unchecked(method.form(), x))
}

#[inline]
pub(crate) fn phi_nonneg_unchecked(form: ExponentForm, x: f64) -> f64 {
    0.5 + 0.5 * sqrt_one_minus_exp(&form, x)
}

/// Φ approximation on the whole real line via `Φ(−x) = 1 − Φ(x)`.
///
/// Both signs share a single evaluation at `|x|`, so `phi_full(m, x) + phi_full(m, −x)`
/// is exactly `1` in floating point.
pub fn phi_full(method: MethodId, x: f64) -> Result<f64> {
    require_phi(method)?;
    require_finite("x", x)?;
    let p = phi_nonneg_unchecked(method.form(), x.abs());
    Ok(if x < 0.0 { 1.0 - p } else { p })
}

/// erf approximation for `x ≥ 0`; returns exactly `0` at `x = 0`.
pub fn erf_approx(method: MethodId, x: f64) -> Result<f64> {
    check_nonneg(x)?;
    match method {
        MethodId::WinitzkiErf => Ok(sqrt_one_minus_exp(&method.form(), x)),
        MethodId::ErfFromNew => {
            Ok(2.0 * phi_nonneg_unchecked(MethodId::NewPhi.form(), x * SQRT_2) - 1.0)
        }
        _ => Err(Error::Usage(format!(
            "{method} approximates the normal CDF, not erf"
        ))),
    }
}

/// Evaluates `method` at `x` in its natural family: Φ on the real line, erf on `x ≥ 0`.
pub fn evaluate(method: MethodId, x: f64) -> Result<f64> {
    if method.is_phi() {
        phi_full(method, x)
    } else {
        erf_approx(method, x)
    }
}
