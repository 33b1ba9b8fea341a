//! Selection of "some" element of a set.
//!
//! The greedy algorithms are stated with an arbitrary choice. A [`PickPolicy`]
//! fixes how that choice is resolved: either always the least element, or a
//! reproducible pseudo-random element driven by a seed.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PickPolicy {
    MinId,
    Seeded(u64),
}

impl PickPolicy {
    pub fn picker(self) -> Picker {
        let rng = match self {
            PickPolicy::MinId => None,
            PickPolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        };
        Picker { rng }
    }
}

impl fmt::Display for PickPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PickPolicy::MinId => f.write_str("min"),
            PickPolicy::Seeded(seed) => write!(f, "random:{seed}"),
        }
    }
}

impl FromStr for PickPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "min" {
            return Ok(PickPolicy::MinId);
        }
        match s.strip_prefix("random:") {
            Some(seed) => seed
                .parse()
                .map(PickPolicy::Seeded)
                .map_err(|_| format!("bad seed in {s:?}")),
            None => Err(format!("expected `min` or `random:SEED`, got {s:?}")),
        }
    }
}

/// Stateful chooser created from a [`PickPolicy`]. One picker serves one run,
/// so a seeded run is reproduced by replaying the same sequence of calls.
#[derive(Debug, Clone)]
pub struct Picker {
    rng: Option<ChaCha8Rng>,
}

impl Picker {
    pub fn pick<T: Ord + Clone>(&mut self, set: &BTreeSet<T>) -> Result<T> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let idx = match &mut self.rng {
            None => 0,
            Some(rng) => rng.gen_range(0..set.len()),
        };
        Ok(set.iter().nth(idx).cloned().expect("index within bounds"))
    }
}

/// Single-shot form of [`Picker::pick`].
pub fn some_pick<T: Ord + Clone>(set: &BTreeSet<T>, policy: PickPolicy) -> Result<T> {
    policy.picker().pick(set)
}
