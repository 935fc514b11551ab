//! Closed-form, explicitly invertible approximations of the standard normal
//! CDF Φ and of erf.
//!
//! Every approximation shares the shape `√(1 − e^{E(x²)})` with a rational
//! exponent `E` (see [`ExponentForm`]), which makes it invertible by solving a
//! quadratic in `x²`. An independent [`oracle`] and the sweep tooling in
//! [`analysis`] measure how far each one is from the true function.
//!
//! ```
//! use phinv_core::{phi_full, quantile, MethodId};
//!
//! let p = phi_full(MethodId::NewPhi, 1.96).unwrap();
//! assert!((p - 0.975).abs() < 1e-4);
//! let x = quantile(MethodId::NewPhi, p).unwrap();
//! assert!((x - 1.96).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod approx;
pub mod error;
pub mod form;
pub mod inverse;
pub mod method;
pub mod oracle;

pub use analysis::{
    emit_csv, read_csv, reduction_percent, sweep, tail_check, verify_bounds, BoundSpec, GridSpec,
    SweepReport, SweepRow, TailReport, Verdict,
};
pub use approx::{erf_approx, evaluate, exponent_eval, method_form, phi_full, phi_nonneg};
pub use error::{Error, Result};
pub use form::ExponentForm;
pub use inverse::{
    inverse_erf, log_complement_phi, quantile, solve_exponent_inverse, InverseSolution,
};
pub use method::MethodId;
pub use oracle::{erf_ref, erfc_ref, phi_ref, quantile_ref, Oracle, OracleConfig};
