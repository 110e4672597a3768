//! Independent checks: a second mixed-volume code path, Monte-Carlo
//! volumes, exact bivariate zero counting, grid sampling of relative
//! types, and torus means of `log|P|`.
//!
//! Random draws come from ChaCha8 streams: partition `i` of a run with seed
//! `s` uses stream `i` of the generator seeded by `s`, so results depend only
//! on `(seed, samples)` and never on thread scheduling.

mod mixed;
mod roots;
mod sampling;
pub mod univariate;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use mixed::{mv_inclusion_exclusion, triangulated_volume};
pub use roots::{count_roots_bivariate, RootCount, RESULTANT_DEGREE_CAP};
pub use sampling::{mc_volume, relative_type_grid_check, swept_mean_estimate};

/// Number of worker partitions for Monte-Carlo runs.
pub const PARTITIONS: u64 = 8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub seed: u64,
}

pub(crate) fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}
