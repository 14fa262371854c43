use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bounds and budget for sampled law checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub max_prop_symbols: usize,
    pub max_carrier: usize,
    pub max_formula_depth: usize,
    pub samples: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            max_prop_symbols: 4,
            max_carrier: 5,
            max_formula_depth: 4,
            samples: 500,
        }
    }
}

impl GenConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bounds = [
            ("max_prop_symbols", self.max_prop_symbols),
            ("max_carrier", self.max_carrier),
            ("max_formula_depth", self.max_formula_depth),
            ("samples", self.samples),
        ];
        if let Some((name, _)) = bounds.iter().find(|(_, v)| *v == 0) {
            return Err(Error::Usage(format!("{name} must be at least 1")));
        }
        Ok(())
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of sample `index` of the check called `check`: the same triple
/// always gives the same stream, independent of scheduling.
pub fn sample_seed(seed: u64, check: &str, index: usize) -> u64 {
    let name = check.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    });
    splitmix64(splitmix64(seed ^ name) ^ index as u64)
}

pub fn sample_rng(sample_seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sample_seed)
}
