//! Knapsack problems over `Z_r`.
//!
//! Bit vectors use a single global convention: the integer value of
//! `(x_1, ..., x_n)` is `sum 2^(n-i) x_i`, so `x_1` is the most significant
//! bit. Coordinate `i` (0-based) is paired with `b[i]`.

mod bits;
mod extended;
mod instance;
mod solvers;

pub use bits::{BitVector, ExtendedVector};
pub use extended::{count_extended_solutions, count_extended_solutions_limited};
pub use instance::{density, InstanceFileError, KnapsackInstance};
pub use solvers::{
    brute_force_solutions, brute_force_solutions_limited, meet_in_the_middle_solutions,
    meet_in_the_middle_solutions_limited,
};

use thiserror::Error;

/// Environment variable that may raise every enumeration guard.
pub const GUARD_ENV_VAR: &str = "KNAPQSEC_GUARD_N";

/// Largest width a [`BitVector`] can hold.
pub const MAX_WIDTH: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnapsackError {
    #[error("ModulusTooSmall: modulus r = {0} must be at least 2")]
    ModulusTooSmall(u64),
    #[error("ResidueOutOfRange: {field} = {value} is not below the modulus {modulus}")]
    ResidueOutOfRange {
        field: String,
        value: u64,
        modulus: u64,
    },
    #[error("EmptyVector: the knapsack vector must have at least one entry")]
    EmptyVector,
    #[error("InstanceTooLarge: n = {n} exceeds the enumeration guard of {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("DegenerateVector: density needs max b_i >= 2")]
    DegenerateVector,
    #[error("WidthMismatch: expected width {expected}, got {actual}")]
    WidthMismatch { expected: usize, actual: usize },
    #[error("InvalidBitVector: value {value} does not fit in {width} bits")]
    InvalidBitVector { value: u64, width: usize },
    #[error("InvalidTrials: at least one trial is required")]
    InvalidTrials,
}

/// Enumeration guards, expressed as the largest admissible dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// `2^n` candidates.
    pub brute_force: usize,
    /// `2 * 2^(n/2)` half sums.
    pub meet_in_the_middle: usize,
    /// `4^n` extended vectors.
    pub extended: usize,
    /// `2 * 4^n` oracle evaluations; capped at 20 so counts fit in `u64`.
    pub simulation: usize,
    /// `8^n` quadruples for the adjoint-function check.
    pub adjoint_check: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            brute_force: 30,
            meet_in_the_middle: 40,
            extended: 12,
            simulation: 12,
            adjoint_check: 8,
        }
    }
}

impl Limits {
    /// Defaults, raised (never lowered) to the value of `KNAPQSEC_GUARD_N`
    /// when it is set to a parseable integer. Raising the guard is at the
    /// caller's own risk: enumeration cost is exponential in `n`.
    pub fn from_env() -> Self {
        let raised = std::env::var(GUARD_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok());
        match raised {
            Some(n) => Limits::default().raised_to(n),
            None => Limits::default(),
        }
    }

    pub fn raised_to(self, n: usize) -> Self {
        let n = n.min(MAX_WIDTH);
        Limits {
            brute_force: self.brute_force.max(n),
            meet_in_the_middle: self.meet_in_the_middle.max(n),
            extended: self.extended.max(n),
            simulation: self.simulation.max(n).min(20),
            adjoint_check: self.adjoint_check.max(n),
        }
    }
}

pub(crate) fn check_guard(n: usize, limit: usize) -> Result<(), KnapsackError> {
    if n > limit.min(MAX_WIDTH) {
        Err(KnapsackError::InstanceTooLarge { n, limit })
    } else {
        Ok(())
    }
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, r: u64) -> u64 {
    ((a as u128 + b as u128) % r as u128) as u64
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, r: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + r as u128 - b as u128) % r as u128) as u64
    }
}
