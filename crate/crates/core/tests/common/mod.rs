#![allow(dead_code, clippy::excessive_precision)]

use phinv_core::erf_ref;

/// `(x, erf(x), Φ(x))` to 20 significant digits, from a 30-digit
/// arbitrary-precision evaluation; they agree with the classical tables.
pub const REFERENCE: [(f64, f64, f64); 6] = [
    (0.5, 0.52049987781304653768, 0.69146246127401310364),
    (1.0, 0.84270079294971486934, 0.84134474606854294859),
    (1.96, 0.994426275464827868, 0.97500210485177956586),
    (2.0, 0.99532226501895273416, 0.9772498680518207928),
    (3.0, 0.99997790950300141456, 0.99865010196836990547),
    (5.0, 0.99999999999846254021, 0.99999971334842812081),
];

/// Inverse of the oracle erf by plain bisection on `[0, 6]`.
pub fn inverse_erf_bisect(z: f64) -> f64 {
    let (mut lo, mut hi) = (0.0_f64, 6.0_f64);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if erf_ref(mid).unwrap() < z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Grid `lo, lo + step, …, hi` as integer multiples of `step`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}
