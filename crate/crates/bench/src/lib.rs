//! Shared fixtures for the benchmarks.

use fockdual::{Family, ModelParams};

/// Grid points used by the oracle benchmarks, smallest first.
pub const ORACLE_POINTS: [(usize, usize, Family); 4] = [
    (4, 2, Family::Symplectic),
    (3, 3, Family::Orthogonal),
    (6, 2, Family::Orthogonal),
    (4, 3, Family::Symplectic),
];

pub fn params(d: usize, k: usize, family: Family) -> ModelParams {
    ModelParams::new(d, k, family).expect("benchmark point within the mode limit")
}
