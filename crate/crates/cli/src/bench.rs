use std::hint::black_box;
use std::time::Instant;

use phinv_core::{erf_approx, phi_full, GridSpec, MethodId, Oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::CliError;

pub const MIN_ITERATIONS: usize = 100_000;
pub const REPETITIONS: usize = 5;
pub const SEED: u64 = 0x5eed_cafe;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchReport {
    pub method: MethodId,
    pub iterations: usize,
    pub ns_per_call_approx: f64,
    pub ns_per_call_oracle: f64,
    /// `ns_per_call_oracle / ns_per_call_approx`.
    pub speedup: f64,
    /// Sum of the approximation outputs over one pass; keeps the loop alive.
    pub checksum: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Median-of-five ns/call of `f` over `inputs`, and the sum of its outputs.
fn time_per_call<F: Fn(f64) -> f64>(inputs: &[f64], f: F) -> (f64, f64) {
    let mut samples = Vec::with_capacity(REPETITIONS);
    let mut checksum = 0.0;
    for _ in 0..REPETITIONS {
        let start = Instant::now();
        let mut sum = 0.0;
        for &x in inputs {
            sum += f(black_box(x));
        }
        let elapsed = start.elapsed();
        checksum = black_box(sum);
        samples.push(elapsed.as_nanos() as f64 / inputs.len() as f64);
    }
    // Timer resolution can round a very fast loop to zero.
    (median(samples).max(f64::MIN_POSITIVE), checksum)
}

/// Times `method` and the oracle on the same `iterations` inputs, drawn
/// uniformly from the grid's `[lo, hi]` with a fixed seed.
pub fn bench(
    method: MethodId,
    iterations: usize,
    grid: &GridSpec,
) -> Result<BenchReport, CliError> {
    if iterations < MIN_ITERATIONS {
        return Err(CliError::Usage(format!(
            "--iters must be at least {MIN_ITERATIONS}, got {iterations}"
        )));
    }
    if method.is_erf() && grid.lo() < 0.0 {
        return Err(CliError::Usage(format!("{method} benchmarks need lo >= 0")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let inputs: Vec<f64> = (0..iterations)
        .map(|_| {
            if grid.hi() > grid.lo() {
                rng.random_range(grid.lo()..=grid.hi())
            } else {
                grid.lo()
            }
        })
        .collect();

    let oracle = Oracle::default();
    let (approx_ns, checksum, oracle_ns) = if method.is_phi() {
        let (a, sum) = time_per_call(&inputs, |x| phi_full(method, x).unwrap_or(f64::NAN));
        let (o, _) = time_per_call(&inputs, |x| oracle.phi(x).unwrap_or(f64::NAN));
        (a, sum, o)
    } else {
        let (a, sum) = time_per_call(&inputs, |x| erf_approx(method, x).unwrap_or(f64::NAN));
        let (o, _) = time_per_call(&inputs, |x| oracle.erf(x).unwrap_or(f64::NAN));
        (a, sum, o)
    };

    Ok(BenchReport {
        method,
        iterations,
        ns_per_call_approx: approx_ns,
        ns_per_call_oracle: oracle_ns,
        speedup: oracle_ns / approx_ns,
        checksum,
    })
}
