//! The rational exponent shared by every approximation.
//!
//! Each approximation has the shape `1/2 + 1/2·√(1 − e^{E(x²)})` (or `√(1 − e^{E(x²)})`
//! for erf), where
//!
//! ```text
//! E(u) = −(p1·u + p2·u²) / (q0 + q1·u + q2·u²),   u = x².
//! ```

use crate::error::{require_finite, Error, Result};

/// Five coefficients of the rational exponent `E(u)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentForm {
    pub p1: f64,
    pub p2: f64,
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
}

impl ExponentForm {
    pub const fn new(p1: f64, p2: f64, q0: f64, q1: f64, q2: f64) -> Self {
        Self { p1, p2, q0, q1, q2 }
    }

    /// Checks the sign constraints that make `E` non-positive on `u ≥ 0`.
    pub fn validate(&self) -> Result<()> {
        let ExponentForm { p1, p2, q0, q1, q2 } = *self;
        let all_finite = [p1, p2, q0, q1, q2].iter().all(|c| c.is_finite());
        if all_finite && q0 > 0.0 && p1 > 0.0 && p2 >= 0.0 && q1 >= 0.0 && q2 >= 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "exponent form requires q0 > 0, p1 > 0 and p2, q1, q2 >= 0, got {self:?}"
            )))
        }
    }

    /// Evaluates `E(u)` for `u ≥ 0`.
    pub fn eval(&self, u: f64) -> Result<f64> {
        require_finite("u", u)?;
        if u < 0.0 {
            return Err(Error::Domain(format!("u must be non-negative, got {u}")));
        }
        Ok(self.eval_unchecked(u))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, u: f64) -> f64 {
        let num = u * (self.p1 + self.p2 * u);
        let den = self.q0 + u * (self.q1 + self.q2 * u);
        -(num / den)
    }
}
