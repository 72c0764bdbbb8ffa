//! Seeded random generation.
//!
//! Every random stream is a ChaCha8 generator (`rand_chacha::ChaCha8Rng`)
//! seeded through `seed_from_u64`. ChaCha output is specified independently of
//! platform and word size, so a `(seed, stream)` pair reproduces the same
//! numbers everywhere. Independent streams (one per restart, one per trial)
//! are derived as `seed ^ stream_index`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::tensor::Tensor;

pub type StreamRng = ChaCha8Rng;

/// Entry distribution for [`random_tensor`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    StandardNormal,
    /// Uniform on `[-1, 1)`.
    Uniform,
}

/// Seed of sub-stream `index` derived from a base seed.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    seed ^ index
}

pub fn stream(seed: u64, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, index))
}

pub fn rng(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn sample(rng: &mut StreamRng, dist: Distribution) -> f64 {
    match dist {
        Distribution::StandardNormal => rng.sample(StandardNormal),
        Distribution::Uniform => rng.random_range(-1.0..1.0),
    }
}

/// Tensor with i.i.d. entries; deterministic in `(shape, seed, dist)`.
pub fn random_tensor(shape: &[usize], seed: u64, dist: Distribution) -> Result<Tensor> {
    let mut r = rng(seed);
    random_tensor_from(&mut r, shape, dist)
}

pub fn random_tensor_from(rng: &mut StreamRng, shape: &[usize], dist: Distribution) -> Result<Tensor> {
    let n: usize = shape.iter().product();
    let data: Vec<f64> = (0..n).map(|_| sample(rng, dist)).collect();
    Tensor::new(shape.to_vec(), data)
}

/// Standard-normal vector scaled to unit 2-norm.
pub fn unit_vector(rng: &mut StreamRng, n: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-300 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}
