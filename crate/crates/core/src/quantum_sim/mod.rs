//! Exact classical simulation of the five-register quantum knapsack
//! algorithm over `Z_r`.
//!
//! Registers hold `a` (1 qubit), `x`, `y`, `z` (`n` qubits each) and the
//! oracle value `G(a, x, y, z)`, which is `f(x, y)` on branch `a = 0` and
//! `h(x, z)` on branch `a = 1`. The fifth register is reduced mod `r`. The
//! run measures the oracle value, then `a` (failure on `1`), then `(x, y)`,
//! and accepts `m = x` when it solves the instance. No amplitude
//! amplification is applied between measurements.
//!
//! Because the pre-measurement state is a uniform superposition tagged by a
//! classical function, every statistic is computed by counting instead of
//! by evolving a state vector.

mod oracles;
mod simulation;
mod verify;

pub use oracles::{branch_oracle, oracle_f, oracle_g, oracle_h};
pub use simulation::{
    BoundReport, BoundRow, OutcomeDistribution, OutcomeRow, RunOutcome, RunResult, Simulation,
    SuccessEstimate, Transcript,
};
pub use verify::{
    verify_collision_criterion, verify_collision_criterion_limited, verify_difference_identity,
    verify_difference_identity_limited, Counterexample, Verification,
};

use num_rational::BigRational;
use serde::Serialize;

use crate::knapsack::{KnapsackError, KnapsackInstance};

/// Counts are `u64`; `2^(3n+1)` must fit.
pub const MAX_SIMULATION_WIDTH: usize = 20;

/// SplitMix64 output function. Trial `i` of a run stream rooted at `seed`
/// uses `splitmix64(seed + (i + 1) * 0x9E3779B97F4A7C15)` as its ChaCha8
/// seed.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn exact_distribution(inst: &KnapsackInstance) -> Result<OutcomeDistribution, KnapsackError> {
    Ok(Simulation::new(inst)?.distribution().clone())
}

pub fn run_once(inst: &KnapsackInstance, seed: u64) -> Result<RunOutcome, KnapsackError> {
    Ok(Simulation::new(inst)?.run_once(seed))
}

pub fn success_probability_exact(inst: &KnapsackInstance) -> Result<BigRational, KnapsackError> {
    Ok(Simulation::new(inst)?.success_probability_exact())
}

pub fn estimate_success_probability(
    inst: &KnapsackInstance,
    trials: u64,
    seed: u64,
) -> Result<SuccessEstimate, KnapsackError> {
    if trials == 0 {
        return Err(KnapsackError::InvalidTrials);
    }
    Simulation::new(inst)?.estimate(trials, seed)
}

pub fn analysis_bound_report(inst: &KnapsackInstance) -> Result<BoundReport, KnapsackError> {
    Ok(Simulation::new(inst)?.bound_report())
}

/// Gate-count accounting: one 1-wide and three `n`-wide QFTs at `w^2`
/// units each, plus `2n + 1` adders of width `n + ceil(log2 n) + 1` at
/// `w^2` units each. Documentation-grade, not circuit synthesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResourceEstimate {
    pub width: usize,
    pub qft_gate_count: u64,
    pub adder_count: u64,
    pub adder_width: u64,
    pub total_elementary_gates: u64,
}

pub fn resource_estimate(n: usize) -> Result<ResourceEstimate, KnapsackError> {
    if n == 0 {
        return Err(KnapsackError::EmptyVector);
    }
    let w = n as u64;
    let ceil_log2 = if n == 1 {
        0
    } else {
        64 - (w - 1).leading_zeros() as u64
    };
    let qft_gate_count = 1 + 3 * w * w;
    let adder_count = 2 * w + 1;
    let adder_width = w + ceil_log2 + 1;
    Ok(ResourceEstimate {
        width: n,
        qft_gate_count,
        adder_count,
        adder_width,
        total_elementary_gates: qft_gate_count + adder_count * adder_width * adder_width,
    })
}
