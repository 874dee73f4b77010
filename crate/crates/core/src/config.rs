//! Capacity limits for the exponential enumerations.
//!
//! Defaults can be overridden through the environment variables
//! `COARSEMET_MAX_GROUND` and `COARSEMET_MAX_HYPERSPACE`. The values are read
//! once per process.

use std::sync::OnceLock;

/// Hard ceiling imposed by the `u64` row representation of relations.
pub const HARD_MAX_GROUND: usize = 64;

pub const ENV_MAX_GROUND: &str = "COARSEMET_MAX_GROUND";
pub const ENV_MAX_HYPERSPACE: &str = "COARSEMET_MAX_HYPERSPACE";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set accepted by [`crate::relset::GroundSet::new`].
    pub max_ground: usize,
    /// Largest base set whose hyperspace of nonempty subsets may be built.
    pub max_hyperspace_base: usize,
    /// Largest number of off-diagonal symmetric pairs for which the full
    /// family of symmetric reflexive subsets is enumerated.
    pub max_sym_pairs: usize,
    /// Largest index poset accepted by the meet completion.
    pub max_completion_index: usize,
    /// Largest index poset searched exhaustively for monotone witnesses.
    pub max_witness_search: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ground: 16,
            max_hyperspace_base: 4,
            max_sym_pairs: 12,
            max_completion_index: 5,
            max_witness_search: 5,
        }
    }
}

impl Limits {
    /// Process-wide limits, defaults overridden by the environment.
    pub fn current() -> &'static Limits {
        static LIMITS: OnceLock<Limits> = OnceLock::new();
        LIMITS.get_or_init(|| {
            let mut limits = Limits::default();
            if let Some(v) = read_env(ENV_MAX_GROUND) {
                limits.max_ground = v.min(HARD_MAX_GROUND);
            }
            if let Some(v) = read_env(ENV_MAX_HYPERSPACE) {
                // 2^6 - 1 = 63 still fits the row representation
                limits.max_hyperspace_base = v.min(6);
            }
            limits
        })
    }
}

fn read_env(key: &str) -> Option<usize> {
    std::env::var(key).ok()?.trim().parse().ok()
}
