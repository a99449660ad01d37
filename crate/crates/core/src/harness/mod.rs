//! Experiment drivers: seeded instance generation, reduction verification,
//! matcher benchmarks and split-plan grids.
//!
//! Every trial draws from its own ChaCha8 stream keyed by `(seed, trial)`,
//! so results do not depend on how trials are scheduled across threads.

pub mod bench;
pub mod grid;
pub mod stats;
pub mod verify;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::model::{BitVector, OvInstance};
use crate::reduction::SetFamily;

pub use bench::{bench_matcher, write_bench_csv, BenchRecord, BenchSize, BENCH_CSV_HEADER};
pub use grid::{default_grid, format_plan, run_split_grid, write_grid_csv, GridPoint, GridRow};
pub use stats::{linear_fit, loglog_slope, median, LinearFit};
pub use verify::{run_verify_reduction, TrialFailure, TrialRecord, VerifyConfig, VerifyReport};

pub const GENERATOR_NAME: &str = "ChaCha8";

/// Caps worker threads when set to a positive integer.
pub const THREADS_ENV: &str = "SMLG_LAB_THREADS";

/// Independent generator for stream `stream` under `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub(crate) fn worker_pool() -> rayon::ThreadPool {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("failed to start worker pool")
}

/// Each bit is 1 with probability `p`.
pub fn random_bitvector<R: Rng>(rng: &mut R, dim: usize, p: f64) -> BitVector {
    BitVector::new((0..dim).map(|_| rng.gen_bool(p)).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InstanceShape {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    /// Probability of a 1 bit.
    pub p: f64,
    /// Force one random pair to be orthogonal.
    pub planted: bool,
}

pub fn random_ov_instance<R: Rng>(rng: &mut R, shape: InstanceShape) -> OvInstance {
    let InstanceShape {
        n,
        m,
        dim,
        p,
        planted,
    } = shape;
    let x: Vec<BitVector> = (0..n).map(|_| random_bitvector(rng, dim, p)).collect();
    let mut y: Vec<BitVector> = (0..m).map(|_| random_bitvector(rng, dim, p)).collect();
    if planted && n > 0 && m > 0 {
        let j = rng.gen_range(0..n);
        let i = rng.gen_range(0..m);
        let bits = y[i]
            .bits()
            .iter()
            .zip(x[j].bits())
            .map(|(&yb, &xb)| yb && !xb)
            .collect();
        y[i] = BitVector::new(bits);
    }
    OvInstance::new(x, y, dim).expect("generated vectors share a dimension")
}

/// `n` random subsets of `[1..universe]`, each element kept with
/// probability `p`.
pub fn random_set_family<R: Rng>(rng: &mut R, n: usize, universe: usize, p: f64) -> SetFamily {
    let sets: Vec<Vec<usize>> = (0..n)
        .map(|_| (1..=universe).filter(|_| rng.gen_bool(p)).collect())
        .collect();
    SetFamily::new(sets, universe).expect("elements drawn from the universe")
}
