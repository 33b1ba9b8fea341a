//! Greedy approximation algorithms with executable loop invariants.
//!
//! Each algorithm module exposes the greedy procedure, a per-iteration trace
//! of its state, and checkers for the invariants that justify its bound.
//! [`oracles`] supplies exact optima for small inputs and [`iogen`] reads,
//! writes and generates instances.

pub mod bin_packing;
pub mod center_selection;
pub mod error;
pub mod id;
pub mod independent_set;
pub mod iogen;
pub mod load_balancing;
pub mod metric;
pub mod oracles;
pub mod pick;
pub mod rational;
pub mod set_cover;
pub mod trace;
pub mod vertex_cover;

pub use error::{Error, Result};
pub use id::{Id, IdSet};
pub use metric::{validate_metric, MetricError};
pub use pick::PickPolicy;
pub use rational::Rat;
