//! Closed-form inverses.
//!
//! Setting `1/2 + 1/2·√(1 − e^{E(u)}) = p` gives `E(u) = −L` with
//! `L = −ln(1 − (2p − 1)²)`, and clearing the denominator of `E` leaves a
//! quadratic in `u = x²`:
//!
//! ```text
//! (p2 − L·q2)·u² + (p1 − L·q1)·u − L·q0 = 0
//! ```
//!
//! Its constant term is `−L·q0 ≤ 0`, so with a positive leading coefficient
//! exactly one root is non-negative.

use std::f64::consts::SQRT_2;

use crate::error::{require_finite, Error, Result};
use crate::form::ExponentForm;
use crate::method::MethodId;

/// Leading coefficients smaller than this (relative to the linear one) are
/// treated as zero and the equation is solved as linear.
const DEGENERATE_LEADING: f64 = 1e-300;

/// Root of the inversion quadratic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseSolution {
    /// The solved value of `x²`.
    pub u: f64,
    /// `a·u² + b·u + c` at the returned root; diagnostics only.
    pub residual: f64,
}

/// `L = −ln(1 − (2p − 1)²)` for `p ∈ [1/2, 1)`.
///
/// Evaluated as `−[ln(1 + d) + ln(1 − d)]` with `d = 2p − 1` (exact in binary
/// floating point on this range), so nothing is lost as `p → 1`.
pub fn log_complement_phi(p: f64) -> Result<f64> {
    if !(0.5..1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "probability must lie in [1/2, 1), got {p}"
        )));
    }
    let d = 2.0 * p - 1.0;
    Ok(-(d.ln_1p() + (-d).ln_1p()))
}

fn log_complement_erf(z: f64) -> f64 {
    -(z.ln_1p() + (-z).ln_1p())
}

/// Solves `E(u) = −L` for the unique `u ≥ 0`.
pub fn solve_exponent_inverse(form: &ExponentForm, l: f64) -> Result<InverseSolution> {
    require_finite("L", l)?;
    if l < 0.0 {
        return Err(Error::Domain(format!("L must be non-negative, got {l}")));
    }
    if l == 0.0 {
        return Ok(InverseSolution {
            u: 0.0,
            residual: 0.0,
        });
    }

    let a = form.p2 - l * form.q2;
    let b = form.p1 - l * form.q1;
    let c = -l * form.q0;

    let u = if a.abs() < DEGENERATE_LEADING * b.abs().max(1.0) {
        if b <= 0.0 {
            return Err(Error::InternalRange(format!(
                "no non-negative root: linear coefficient {b} at L = {l}"
            )));
        }
        -c / b
    } else if a > 0.0 {
        let disc = b * b - 4.0 * a * c;
        let root = disc.sqrt();
        // Sign-matched: q never cancels, the other root is c/q.
        let q = -0.5 * (b + root.copysign(b));
        if b >= 0.0 {
            c / q
        } else {
            q / a
        }
    } else {
        return Err(Error::InternalRange(format!(
            "leading coefficient {a} is negative at L = {l}; L exceeds the range of the exponent"
        )));
    };

    if !(u.is_finite() && u >= 0.0) {
        return Err(Error::InternalRange(format!(
            "solver produced u = {u} at L = {l}"
        )));
    }
    Ok(InverseSolution {
        u,
        residual: (a * u + b) * u + c,
    })
}

fn require_phi(method: MethodId) -> Result<()> {
    if method.is_phi() {
        Ok(())
    } else {
        Err(Error::Usage(format!(
            "{method} approximates erf; use inverse_erf"
        )))
    }
}

/// Inverse of [`crate::phi_full`] for `p ∈ (0, 1)`.
///
/// Lower-half probabilities are reflected through `1 − p`, so
/// `quantile(m, p) == −quantile(m, 1 − p)` holds bit for bit. Probabilities
/// within half an ulp of 0 or 1 have no representable reflection and are
/// rejected.
pub fn quantile(method: MethodId, p: f64) -> Result<f64> {
    require_phi(method)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "probability must lie in (0, 1), got {p}"
        )));
    }
    if p < 0.5 {
        let reflected = 1.0 - p;
        if reflected >= 1.0 {
            return Err(Error::Domain(format!(
                "probability {p} is too close to 0 to reflect in double precision"
            )));
        }
        return Ok(-upper_quantile(&method.form(), reflected)?);
    }
    upper_quantile(&method.form(), p)
}

fn upper_quantile(form: &ExponentForm, p: f64) -> Result<f64> {
    let l = log_complement_phi(p)?;
    Ok(solve_exponent_inverse(form, l)?.u.sqrt())
}

/// Inverse of [`crate::erf_approx`] for `z ∈ [0, 1)`.
pub fn inverse_erf(method: MethodId, z: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!(
            "erf value must lie in [0, 1), got {z}"
        )));
    }
    match method {
        MethodId::WinitzkiErf => {
            let l = log_complement_erf(z);
            Ok(solve_exponent_inverse(&method.form(), l)?.u.sqrt())
        }
        MethodId::ErfFromNew => Ok(quantile(MethodId::NewPhi, 0.5 * (1.0 + z))? / SQRT_2),
        _ => Err(Error::Usage(format!(
            "{method} approximates the normal CDF; use quantile"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::{erf_approx, exponent_eval, phi_full};

    #[test]
    fn log_complement_values() {
        assert_eq!(log_complement_phi(0.5).unwrap(), 0.0);
        let l = log_complement_phi(0.75).unwrap();
        assert!((l - (4.0f64 / 3.0).ln()).abs() < 1e-15);
        assert!((l - 0.287682072451781).abs() < 1e-14);
    }

    #[test]
    fn log_complement_near_one() {
        // 30-digit reference for the f64 nearest 1 − 1e-12.
        let l = log_complement_phi(1.0 - 1e-12).unwrap();
        let reference = 26.244_748_876_774_47;
        assert!(((l - reference) / reference).abs() < 1e-10, "{l}");
    }

    #[test]
    fn log_complement_domain() {
        for p in [0.4999, 1.0, 1.5, f64::NAN, -0.1] {
            assert!(
                matches!(log_complement_phi(p), Err(Error::Domain(_))),
                "{p}"
            );
        }
    }

    #[test]
    fn solve_zero_and_unit() {
        let f = MethodId::NewPhi.form();
        assert_eq!(solve_exponent_inverse(&f, 0.0).unwrap().u, 0.0);
        let s = solve_exponent_inverse(&f, 18.0 / 28.694).unwrap();
        assert!((s.u - 1.0).abs() < 1e-14, "{s:?}");
    }

    #[test]
    fn solve_se2014_forward_residual() {
        let f = MethodId::SE2014Phi.form();
        let s = solve_exponent_inverse(&f, 5.0).unwrap();
        let e = exponent_eval(&f, s.u).unwrap();
        assert!(((e + 5.0) / 5.0).abs() < 1e-12, "{e}");
    }

    #[test]
    fn solve_rejects_bad_l() {
        let f = MethodId::NewPhi.form();
        assert!(matches!(
            solve_exponent_inverse(&f, -1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            solve_exponent_inverse(&f, f64::NAN),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn se2014_exponent_is_bounded() {
        // E(u) → −p2/q2 ≈ −288.36 as u → ∞; beyond that no root exists.
        let f = MethodId::SE2014Phi.form();
        assert!(matches!(
            solve_exponent_inverse(&f, 300.0),
            Err(Error::InternalRange(_))
        ));
        let s = solve_exponent_inverse(&f, 288.0).unwrap();
        let e = f.eval(s.u).unwrap();
        assert!(((e + 288.0) / 288.0).abs() < 1e-9, "{s:?} {e}");
    }

    #[test]
    fn linear_fallback_matches_nearly_linear_quadratic() {
        // Synthetic form whose leading coefficient vanishes at L = 1.
        let f = ExponentForm::new(1.0, 1e-3, 1.0, 0.0, 1e-3);
        let linear = solve_exponent_inverse(&f, 1.0).unwrap();
        assert_eq!(linear.u, 1.0);
        for eps in [1e-9, 1e-11, 1e-13] {
            let l = 1.0 - eps;
            let quad = solve_exponent_inverse(&f, l).unwrap();
            let lin = l * f.q0 / (f.p1 - l * f.q1);
            assert!(
                ((quad.u - lin) / lin).abs() < 1e-9,
                "eps={eps}: {} vs {lin}",
                quad.u
            );
        }
    }

    #[test]
    fn quantile_basics() {
        for m in MethodId::PHI_METHODS {
            assert_eq!(quantile(m, 0.5).unwrap(), 0.0);
            let p = phi_full(m, 1.0).unwrap();
            assert!((quantile(m, p).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn quantile_domain_and_usage() {
        for p in [0.0, 1.0, -0.1, 1.5, f64::NAN, 1e-300] {
            assert!(
                matches!(quantile(MethodId::NewPhi, p), Err(Error::Domain(_))),
                "{p}"
            );
        }
        assert!(matches!(
            quantile(MethodId::WinitzkiErf, 0.7),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            inverse_erf(MethodId::NewPhi, 0.7),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn quantile_is_exactly_antisymmetric() {
        for m in MethodId::PHI_METHODS {
            for i in 1..1000 {
                let p = i as f64 * 1e-3;
                assert_eq!(
                    quantile(m, p).unwrap(),
                    -quantile(m, 1.0 - p).unwrap(),
                    "{m} {p}"
                );
            }
        }
    }

    #[test]
    fn inverse_erf_basics() {
        assert_eq!(inverse_erf(MethodId::WinitzkiErf, 0.0).unwrap(), 0.0);
        assert_eq!(inverse_erf(MethodId::ErfFromNew, 0.0).unwrap(), 0.0);
        let z = erf_approx(MethodId::WinitzkiErf, 2.0).unwrap();
        assert!((inverse_erf(MethodId::WinitzkiErf, z).unwrap() - 2.0).abs() < 1e-8);
        for z in [1.0, -0.1, f64::NAN] {
            assert!(matches!(
                inverse_erf(MethodId::WinitzkiErf, z),
                Err(Error::Domain(_))
            ));
        }
    }
}
