//! Enumeration budgets for the exhaustive residue / lattice counts.

/// Caps on exhaustive enumeration. `residue_evaluations` bounds the number
/// of residue vectors visited by a single sieve call; `tuple_support` bounds
/// the per-factor height support in the tuple-count convolution.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub residue_evaluations: u64,
    pub tuple_support: u64,
}

pub const DEFAULT_RESIDUE_EVALUATIONS: u64 = 100_000_000;
pub const DEFAULT_TUPLE_SUPPORT: u64 = 4096;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            residue_evaluations: DEFAULT_RESIDUE_EVALUATIONS,
            tuple_support: DEFAULT_TUPLE_SUPPORT,
        }
    }
}

impl Budget {
    /// Default budget, with the residue cap overridden by the `CGL_BUDGET`
    /// environment variable when set to a positive integer.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Ok(v) = std::env::var("CGL_BUDGET") {
            if let Ok(n) = v.trim().parse::<u64>() {
                if n > 0 {
                    b.residue_evaluations = n;
                }
            }
        }
        b
    }
}
