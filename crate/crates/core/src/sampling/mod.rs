//! Reproducible Monte-Carlo draws of `W` and of exchangeable pairs
//! `(W, W')` for every family.
//!
//! Batches are split into fixed-size chunks; chunk `k` draws from a ChaCha8
//! stream seeded by the batch seed with stream number `k`. Results therefore
//! depend only on `(seed, count)`, never on thread scheduling.

pub mod haar;
pub mod mcmc;
pub mod models;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characters::PowerSums;
use crate::error::Result;
use crate::family::{ClassParameter, Family};

pub use haar::{haar_orthogonal, haar_symplectic, haar_unitary, Component};
pub use mcmc::{weyl_mcmc, ChainParams, McmcReport, WeylDensity};
pub use models::{
    coe_sample, cse_sample, draw, draw_pair, exchangeable_pair, sphere_sample, w_coefficient, Draw,
};

/// Number of draws per RNG stream.
pub const CHUNK: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleBatch {
    pub family: Family,
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairBatch {
    pub family: Family,
    pub n: usize,
    pub theta: f64,
    pub count: usize,
    pub seed: u64,
    pub pairs: Vec<(f64, f64)>,
}

/// The RNG of chunk `chunk` of a batch with seed `seed`.
pub fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Applies `f` to `count` draws split into seeded chunks, in order.
pub fn map_chunks<T, F>(count: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    let chunks = count.div_ceil(CHUNK);
    let run = |k: usize| {
        let mut rng = chunk_rng(seed, k);
        let len = CHUNK.min(count - k * CHUNK);
        (0..len).map(|_| f(&mut rng)).collect::<Vec<T>>()
    };
    #[cfg(feature = "parallel")]
    let parts: Vec<Vec<T>> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(run).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<Vec<T>> = (0..chunks).map(run).collect();
    parts.into_iter().flatten().collect()
}

/// Power sums of `count` Haar draws.
pub fn sample_power_sums(family: Family, n: usize, count: usize, seed: u64) -> Result<Vec<PowerSums>> {
    family.check_n(n)?;
    Ok(map_chunks(count, seed, |rng| draw(family, n, rng).sums))
}

/// `count` draws of `W`.
pub fn sample_w(family: Family, n: usize, count: usize, seed: u64) -> Result<SampleBatch> {
    family.check_n(n)?;
    let values = map_chunks(count, seed, |rng| draw(family, n, rng).w);
    Ok(SampleBatch { family, n, count, seed, values })
}

/// `count` exchangeable pairs `(W, W')` at class `theta`.
pub fn sample_pairs(
    family: Family,
    n: usize,
    theta: &ClassParameter,
    count: usize,
    seed: u64,
) -> Result<PairBatch> {
    family.check_n(n)?;
    let pairs = map_chunks(count, seed, |rng| {
        let (x, y) = draw_pair(family, n, theta, rng);
        (x.w, y.w)
    });
    Ok(PairBatch { family, n, theta: theta.theta(), count, seed, pairs })
}
