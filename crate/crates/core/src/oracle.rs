//! Reference erf, erfc and Φ built directly from the integral definition.
//!
//! Nothing here touches the approximations or any platform erf. Small arguments
//! use the alternating Maclaurin series of erf, summed in double-double so the
//! cancellation between terms (the largest term at `|x| = 3` is about 170) does
//! not eat into the result. Large arguments use the continued fraction
//!
//! ```text
//! erfc(x) = e^{−x²}/√π · 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + …))))
//! ```
//!
//! evaluated forward with the modified Lentz algorithm.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_2_SQRT_PI};

use crate::error::{require_finite, Error, Result};

/// 2/√π as an unevaluated sum `hi + lo`.
const TWO_OVER_SQRT_PI: DoubleDouble = DoubleDouble {
    hi: FRAC_2_SQRT_PI,
    lo: 1.533545961316588e-17,
};

/// Tuning knobs of the oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// `|x|` at or below which the Maclaurin series is used.
    pub series_threshold: f64,
    /// Maximum number of continued-fraction terms.
    pub cf_terms: usize,
    /// Accuracy the oracle is built to (absolute); informational.
    pub target_abs_err: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            series_threshold: 3.0,
            cf_terms: 60,
            target_abs_err: 1e-13,
        }
    }
}

/// High-precision reference for erf, erfc, Φ and the normal quantile.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Oracle {
    config: OracleConfig,
}

impl Oracle {
    pub fn new(config: OracleConfig) -> Result<Self> {
        if !(config.series_threshold.is_finite() && config.series_threshold > 0.0) {
            return Err(Error::Config(format!(
                "series_threshold must be positive, got {}",
                config.series_threshold
            )));
        }
        if config.cf_terms < 20 {
            return Err(Error::Config(format!(
                "cf_terms must be at least 20, got {}",
                config.cf_terms
            )));
        }
        Ok(Self { config })
    }

    pub fn config(&self) -> &OracleConfig {
        &self.config
    }

    pub fn erf(&self, x: f64) -> Result<f64> {
        require_finite("x", x)?;
        let ax = x.abs();
        let v = if ax <= self.config.series_threshold {
            erf_series(ax)
        } else {
            1.0 - erfc_continued_fraction(ax, self.config.cf_terms)
        };
        Ok(v.copysign(x))
    }

    pub fn erfc(&self, x: f64) -> Result<f64> {
        require_finite("x", x)?;
        let t = self.config.series_threshold;
        Ok(if x > t {
            erfc_continued_fraction(x, self.config.cf_terms)
        } else if x < -t {
            2.0 - erfc_continued_fraction(-x, self.config.cf_terms)
        } else {
            1.0 - erf_series(x)
        })
    }

    /// Φ(x) = erfc(−x/√2)/2, so the lower tail keeps full relative accuracy.
    pub fn phi(&self, x: f64) -> Result<f64> {
        require_finite("x", x)?;
        Ok(0.5 * self.erfc(-x * FRAC_1_SQRT_2)?)
    }

    /// Φ⁻¹(p) by bisection of [`Oracle::phi`] on `[−10, 10]` down to a 1e-12 bracket.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!(
                "probability must lie in (0, 1), got {p}"
            )));
        }
        let (mut lo, mut hi) = (-10.0_f64, 10.0_f64);
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if self.phi(mid)? < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Reference erf with the default configuration.
pub fn erf_ref(x: f64) -> Result<f64> {
    Oracle::default().erf(x)
}

/// Reference erfc with the default configuration.
pub fn erfc_ref(x: f64) -> Result<f64> {
    Oracle::default().erfc(x)
}

/// Reference Φ with the default configuration.
pub fn phi_ref(x: f64) -> Result<f64> {
    Oracle::default().phi(x)
}

/// Reference normal quantile (bisection) with the default configuration.
pub fn quantile_ref(p: f64) -> Result<f64> {
    Oracle::default().quantile(p)
}

/// Maclaurin series `erf(x) = 2/√π · Σ (−1)ⁿ x^{2n+1} / (n!(2n+1))`.
///
/// Accurate to a few ulps for `|x| ≤ 3`; usable but increasingly slow beyond.
pub fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return x;
    }
    let x2 = DoubleDouble::square(x);
    let mut power = DoubleDouble::from(x); // x^{2n+1}/n!
    let mut sum = power;
    let mut n = 0u32;
    loop {
        n += 1;
        power = power.mul(x2).div_f64(f64::from(n));
        let term = power.div_f64(f64::from(2 * n + 1));
        sum = if n % 2 == 1 {
            sum.sub(term)
        } else {
            sum.add(term)
        };
        // Terms only shrink once n exceeds x².
        if f64::from(n) > x2.hi && term.hi.abs() < 1e-17 * sum.hi.abs() {
            break;
        }
    }
    sum.mul(TWO_OVER_SQRT_PI).to_f64()
}

/// Continued fraction for erfc at `x > 0`, using at most `max_terms` partial quotients.
///
/// Converges quickly for `x ≳ 2`; at `x = 2.75` sixty terms are already exact to
/// double precision.
pub fn erfc_continued_fraction(x: f64, max_terms: usize) -> f64 {
    debug_assert!(x > 0.0);
    const TINY: f64 = 1e-300;
    // f = x + a1/(x + a2/(x + …)), a_k = k/2
    let mut f = x;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..=max_terms {
        let a = 0.5 * k as f64;
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    // e^{−x²} with x² carried as hi + lo: e^{−hi}·e^{−lo} ≈ e^{−hi}·(1 − lo).
    let x2 = DoubleDouble::square(x);
    let gauss = (-x2.hi).exp() * (1.0 - x2.lo);
    0.5 * FRAC_2_SQRT_PI * gauss / f
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl From<f64> for DoubleDouble {
    fn from(hi: f64) -> Self {
        Self { hi, lo: 0.0 }
    }
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    fn square(x: f64) -> Self {
        let (hi, lo) = two_prod(x, x);
        Self { hi, lo }
    }

    fn add(self, other: Self) -> Self {
        let (s, e) = two_sum(self.hi, other.hi);
        let (t, f) = two_sum(self.lo, other.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }

    fn sub(self, other: Self) -> Self {
        self.add(Self {
            hi: -other.hi,
            lo: -other.lo,
        })
    }

    fn mul(self, other: Self) -> Self {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + (self.hi * other.lo + self.lo * other.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, f) = two_sum(self.hi, -p);
        let q2 = (s + (f - e + self.lo)) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}
