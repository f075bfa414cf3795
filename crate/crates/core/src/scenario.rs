//! Random cell deployments: a homogeneous Poisson process on a rectangle with
//! i.i.d. uniform radii.
//!
//! The stream is fully determined by the seed. The generator is ChaCha8
//! seeded through `SeedableRng::seed_from_u64`, and every draw uses these
//! conversions so other implementations can reproduce a scenario:
//!
//! - uniform in `[0, 1)`: `(next_u64() >> 11) * 2^-53`
//! - cell count: Knuth's product-of-uniforms Poisson sampler, applied to
//!   chunks of mean at most 500 whose counts are summed
//! - per cell, in order: `x = u * width`, `y = u * height`,
//!   `r = rmin + u * (rmax - rmin)`
//!
//! Disks are not clipped to the rectangle.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::DiskSet;
use crate::geometry::{Disk, VertexId};
use crate::{Error, Result};

const POISSON_CHUNK: f64 = 500.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub width: f64,
    pub height: f64,
    /// Expected cells per unit area.
    pub density: f64,
    pub radius_min: f64,
    pub radius_max: f64,
    pub seed: u64,
    /// `null` in JSON when uncapped.
    #[serde(with = "crate::complex::dmax_serde")]
    pub dmax: usize,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            width: 6.0,
            height: 6.0,
            density: 1.0,
            radius_min: 0.5,
            radius_max: 1.0,
            seed: 0,
            dmax: 2,
        }
    }
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |field, reason: &str| {
            Err(Error::InvalidConfig {
                field,
                reason: reason.into(),
            })
        };
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.width) {
            return bad("width", "must be finite and > 0");
        }
        if !positive(self.height) {
            return bad("height", "must be finite and > 0");
        }
        if !positive(self.density) {
            return bad("density", "must be finite and > 0");
        }
        if !positive(self.radius_min) {
            return bad("radius_min", "must be finite and > 0");
        }
        if !(self.radius_max.is_finite() && self.radius_max >= self.radius_min) {
            return bad("radius_max", "must be finite and >= radius_min");
        }
        if self.dmax < 1 {
            return bad("dmax", "must be >= 1");
        }
        Ok(())
    }

    pub fn expected_cells(&self) -> f64 {
        self.density * self.width * self.height
    }
}

/// Seeded uniform source with the documented float conversion.
pub struct UniformSource(ChaCha8Rng);

impl UniformSource {
    pub fn new(seed: u64) -> Self {
        UniformSource(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn poisson(&mut self, mean: f64) -> u64 {
        let mut remaining = mean;
        let mut total = 0;
        while remaining > 0.0 {
            let chunk = remaining.min(POISSON_CHUNK);
            remaining -= chunk;
            let limit = (-chunk).exp();
            let mut product = self.next_f64();
            while product > limit {
                total += 1;
                product *= self.next_f64();
            }
        }
        total
    }
}

pub fn generate_scenario(cfg: &ScenarioConfig) -> Result<DiskSet> {
    cfg.validate()?;
    let mut rng = UniformSource::new(cfg.seed);
    let n = rng.poisson(cfg.expected_cells());
    let span = cfg.radius_max - cfg.radius_min;
    let disks = (0..n)
        .map(|i| {
            let x = rng.next_f64() * cfg.width;
            let y = rng.next_f64() * cfg.height;
            let r = cfg.radius_min + rng.next_f64() * span;
            Disk::new(i as VertexId, x, y, r)
        })
        .collect::<Result<Vec<_>>>()?;
    DiskSet::new(disks)
}
