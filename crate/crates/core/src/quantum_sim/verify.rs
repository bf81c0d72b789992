use serde::Serialize;

use super::oracles::{combine_f, double};
use crate::knapsack::{check_guard, KnapsackError, KnapsackInstance, Limits};

/// A tuple on which the claimed equivalence failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub x: u64,
    pub y: u64,
    /// Set for the adjoint (`h`) check only.
    pub u: Option<u64>,
    pub v: Option<u64>,
    /// Left side: the oracle values agree.
    pub oracles_agree: bool,
    /// Right side: `x` solves the instance with the matching `y`.
    pub solution_side: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checked: u64,
    pub violations: u64,
    /// The first few violations, at most [`Verification::KEPT`].
    pub counterexamples: Vec<Counterexample>,
}

impl Verification {
    pub const KEPT: usize = 32;

    pub fn holds(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, c: Counterexample) {
        self.checked += 1;
        if c.oracles_agree != c.solution_side {
            self.violations += 1;
            if self.counterexamples.len() < Self::KEPT {
                self.counterexamples.push(c);
            }
        }
    }
}

/// For every `(x, y)` with `z = x xor y`: `f(x, y) = g(z)` iff `x` is a
/// solution and `y = z xor x`.
pub fn verify_difference_identity(inst: &KnapsackInstance) -> Result<Verification, KnapsackError> {
    verify_difference_identity_limited(inst, Limits::default().simulation)
}

pub fn verify_difference_identity_limited(
    inst: &KnapsackInstance,
    max_n: usize,
) -> Result<Verification, KnapsackError> {
    let n = inst.dimension();
    check_guard(n, max_n)?;
    let (r, s) = (inst.modulus(), inst.target());
    let sums = inst.subset_sum_table();
    let mut out = Verification {
        checked: 0,
        violations: 0,
        counterexamples: Vec::new(),
    };
    for x in 0..1u64 << n {
        let solves = sums[x as usize] == s;
        for y in 0..1u64 << n {
            let z = x ^ y;
            let f = combine_f(sums[z as usize], sums[x as usize], s, r);
            let g = double(sums[z as usize], r);
            out.record(Counterexample {
                x,
                y,
                u: None,
                v: None,
                oracles_agree: f == g,
                solution_side: solves && y == z ^ x,
            });
        }
    }
    Ok(out)
}

/// For every `(x, y, u, v)` with `u xor v = x xor y`: `f(x, y) = h(u, v)`
/// iff `x` is a solution and `y = u xor v xor x`.
pub fn verify_collision_criterion(inst: &KnapsackInstance) -> Result<Verification, KnapsackError> {
    verify_collision_criterion_limited(inst, Limits::default().adjoint_check)
}

pub fn verify_collision_criterion_limited(
    inst: &KnapsackInstance,
    max_n: usize,
) -> Result<Verification, KnapsackError> {
    let n = inst.dimension();
    check_guard(n, max_n)?;
    let (r, s) = (inst.modulus(), inst.target());
    let sums = inst.subset_sum_table();
    let mut out = Verification {
        checked: 0,
        violations: 0,
        counterexamples: Vec::new(),
    };
    for x in 0..1u64 << n {
        let solves = sums[x as usize] == s;
        for y in 0..1u64 << n {
            let f = combine_f(sums[(x ^ y) as usize], sums[x as usize], s, r);
            for u in 0..1u64 << n {
                let v = u ^ x ^ y;
                let h = double(sums[(u ^ v) as usize], r);
                out.record(Counterexample {
                    x,
                    y,
                    u: Some(u),
                    v: Some(v),
                    oracles_agree: f == h,
                    solution_side: solves && y == u ^ v ^ x,
                });
            }
        }
    }
    Ok(out)
}
