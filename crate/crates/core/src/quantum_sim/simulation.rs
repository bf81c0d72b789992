use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::oracles::{combine_f, double};
use super::{splitmix64, MAX_SIMULATION_WIDTH};
use crate::exact::{fraction_string, to_f64};
use crate::knapsack::{check_guard, BitVector, KnapsackError, KnapsackInstance, Limits};

/// One measured value `A` of the fifth register with its branch weights.
///
/// `n0 = 2^n * t'` and `n1 = 2^n * t`, where `t'` counts `(x, y)` with
/// `f(x, y) = A` and `t` counts `(x, z)` with `h(x, z) = A`; the factor
/// `2^n` is the free register (`z` on branch 0, `y` on branch 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OutcomeRow {
    pub value: u64,
    pub n0: u64,
    pub n1: u64,
}

/// Exact joint statistics of the post-oracle uniform superposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutcomeDistribution {
    width: usize,
    rows: Vec<OutcomeRow>,
}

impl OutcomeDistribution {
    pub fn width(&self) -> usize {
        self.width
    }

    /// Rows with nonzero mass, ascending by `A`.
    pub fn rows(&self) -> &[OutcomeRow] {
        &self.rows
    }

    pub fn row(&self, value: u64) -> Option<&OutcomeRow> {
        self.rows
            .binary_search_by_key(&value, |r| r.value)
            .ok()
            .map(|i| &self.rows[i])
    }

    /// `2^(3n+1)`, the number of basis states.
    pub fn total(&self) -> u64 {
        1u64 << (3 * self.width + 1)
    }

    pub fn probability(&self, value: u64) -> BigRational {
        let mass = self.row(value).map_or(0, |r| r.n0 + r.n1);
        ratio(mass, self.total())
    }

    /// `P(a = 0 | A)`; `None` when `A` is unreachable.
    pub fn branch_zero_probability(&self, value: u64) -> Option<BigRational> {
        self.row(value).map(|r| ratio(r.n0, r.n0 + r.n1))
    }

    pub fn is_normalized(&self) -> bool {
        self.rows.iter().map(|r| r.n0 + r.n1).sum::<u64>() == self.total()
    }

    /// `[{"A", "N0", "N1", "p", "p_float", "p1", "p1_float"}, ...]`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let p = ratio(r.n0 + r.n1, self.total());
                let p1 = ratio(r.n0, r.n0 + r.n1);
                json!({
                    "A": r.value,
                    "N0": r.n0,
                    "N1": r.n1,
                    "p": fraction_string(&p),
                    "p_float": to_f64(&p),
                    "p1": fraction_string(&p1),
                    "p1_float": to_f64(&p1),
                })
            })
            .collect();
        Value::Array(rows)
    }
}

pub(crate) fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Which step of the measurement sequence ended the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunResult {
    Success(BitVector),
    /// The first register was measured as `1`.
    FailureAtStep4,
    /// The measured `x` does not solve the instance.
    FailureAtStep6,
}

/// Everything measured during one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transcript {
    /// Fifth register.
    pub value: u64,
    /// First register.
    pub branch: u8,
    /// Second and third registers; only measured on branch 0.
    pub pair: Option<(BitVector, BitVector)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOutcome {
    pub result: RunResult,
    pub transcript: Transcript,
}

impl RunOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self.result, RunResult::Success(_))
    }
}

/// Monte-Carlo estimate of the success probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuccessEstimate {
    pub trials: u64,
    pub successes: u64,
    pub frequency: f64,
    /// `sqrt(f (1 - f) / T)` at the observed frequency.
    pub std_error: f64,
    /// Wilson score interval at `z = 3`.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl SuccessEstimate {
    pub const Z: f64 = 3.0;

    fn new(trials: u64, successes: u64) -> Self {
        let t = trials as f64;
        let f = successes as f64 / t;
        let z2 = Self::Z * Self::Z;
        let centre = (f + z2 / (2.0 * t)) / (1.0 + z2 / t);
        let half = Self::Z / (1.0 + z2 / t) * (f * (1.0 - f) / t + z2 / (4.0 * t * t)).sqrt();
        SuccessEstimate {
            trials,
            successes,
            frequency: f,
            std_error: (f * (1.0 - f) / t).sqrt(),
            ci_low: (centre - half).max(0.0),
            ci_high: (centre + half).min(1.0),
        }
    }

    /// `|f - p| <= sigmas * sqrt(p (1 - p) / T)` using the binomial standard
    /// deviation of the reference probability `p`.
    pub fn within_sigmas(&self, p: f64, sigmas: f64) -> bool {
        let sd = (p * (1.0 - p) / self.trials as f64).sqrt();
        (self.frequency - p).abs() <= sigmas * sd + 1e-12
    }
}

/// Per-value comparison between the exact quantities and the algorithm's
/// published analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRow {
    pub value: u64,
    /// `|{(x, z) : h(x, z) = A}|`.
    pub t: u64,
    /// `|{(x, y) : f(x, y) = A}|`.
    pub t_prime: u64,
    pub n0: u64,
    pub n1: u64,
    /// `P(a = 0 | A) = t' / (t + t')`.
    pub p1: BigRational,
    pub p1_exceeds_half: bool,
    /// Pairs in the `f` preimage whose `x` is a solution.
    pub solution_pairs: u64,
    /// Exact `P(x solves | A, a = 0)`; `None` when `t' = 0`.
    pub p2: Option<BigRational>,
    /// The analysis's `k / t'`.
    pub p2_claimed: Option<BigRational>,
    /// Whether `p1 * p2 >= k / (2 t')`.
    pub bound_holds: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub solution_count: u64,
    pub rows: Vec<BoundRow>,
    pub success_probability: BigRational,
}

impl BoundReport {
    pub fn p1_violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.p1_exceeds_half).count()
    }

    pub fn bound_violations(&self) -> usize {
        self.rows
            .iter()
            .filter(|r| r.bound_holds == Some(false))
            .count()
    }

    pub fn to_json(&self) -> Value {
        let opt = |q: &Option<BigRational>| q.as_ref().map(fraction_string);
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "A": r.value,
                    "N0": r.n0,
                    "N1": r.n1,
                    "t": r.t,
                    "t_prime": r.t_prime,
                    "p1": fraction_string(&r.p1),
                    "p1_float": to_f64(&r.p1),
                    "p1_exceeds_half": r.p1_exceeds_half,
                    "solution_pairs": r.solution_pairs,
                    "p2": opt(&r.p2),
                    "p2_claimed": opt(&r.p2_claimed),
                    "bound_holds": r.bound_holds,
                })
            })
            .collect();
        json!({
            "k": self.solution_count,
            "success_probability": fraction_string(&self.success_probability),
            "success_probability_float": to_f64(&self.success_probability),
            "p1_claim_violations": self.p1_violations(),
            "bound_claim_violations": self.bound_violations(),
            "rows": rows,
        })
    }
}

/// Precomputed simulator for one instance.
///
/// After the oracle the state is a uniform superposition over
/// `(a, x, y, z)` tagged with `G(a, x, y, z)`, so every measurement
/// statistic is a count over `2 * 4^n` oracle evaluations.
#[derive(Debug, Clone)]
pub struct Simulation {
    inst: KnapsackInstance,
    dist: OutcomeDistribution,
    /// `t'` preimage pairs `x << n | y`, grouped by row.
    f_pairs: Vec<u64>,
    f_offsets: Vec<usize>,
    solution_pairs: Vec<u64>,
    solution_count: u64,
}

#[derive(Default)]
struct Tally {
    t_prime: u64,
    t: u64,
    solution_pairs: u64,
}

impl Simulation {
    pub fn new(inst: &KnapsackInstance) -> Result<Self, KnapsackError> {
        Self::with_limit(inst, Limits::default().simulation)
    }

    pub fn with_limit(inst: &KnapsackInstance, max_n: usize) -> Result<Self, KnapsackError> {
        let n = inst.dimension();
        check_guard(n, max_n.min(MAX_SIMULATION_WIDTH))?;
        let (r, s) = (inst.modulus(), inst.target());
        let sums = inst.subset_sum_table();
        let size = 1u64 << n;

        let mut tallies: HashMap<u64, Tally> = HashMap::new();
        // branch 0: f(x, y)
        for x in 0..size {
            let wx = sums[x as usize];
            let solves = (wx == s) as u64;
            for y in 0..size {
                let value = combine_f(sums[(x ^ y) as usize], wx, s, r);
                let t = tallies.entry(value).or_default();
                t.t_prime += 1;
                t.solution_pairs += solves;
            }
        }
        // branch 1: h(x, z)
        for x in 0..size {
            for z in 0..size {
                let value = double(sums[(x ^ z) as usize], r);
                tallies.entry(value).or_default().t += 1;
            }
        }

        let mut values: Vec<u64> = tallies.keys().copied().collect();
        values.sort_unstable();
        let mut rows = Vec::with_capacity(values.len());
        let mut f_offsets = Vec::with_capacity(values.len() + 1);
        let mut solution_pairs = Vec::with_capacity(values.len());
        let mut index: HashMap<u64, usize> = HashMap::with_capacity(values.len());
        let mut offset = 0usize;
        for (i, value) in values.iter().enumerate() {
            let t = &tallies[value];
            rows.push(OutcomeRow {
                value: *value,
                n0: t.t_prime << n,
                n1: t.t << n,
            });
            f_offsets.push(offset);
            offset += t.t_prime as usize;
            solution_pairs.push(t.solution_pairs);
            index.insert(*value, i);
        }
        f_offsets.push(offset);

        let mut cursor = f_offsets.clone();
        let mut f_pairs = vec![0u64; offset];
        for x in 0..size {
            let wx = sums[x as usize];
            for y in 0..size {
                let value = combine_f(sums[(x ^ y) as usize], wx, s, r);
                let row = index[&value];
                f_pairs[cursor[row]] = (x << n) | y;
                cursor[row] += 1;
            }
        }

        let solution_count = sums.iter().filter(|&&w| w == s).count() as u64;
        Ok(Simulation {
            inst: inst.clone(),
            dist: OutcomeDistribution { width: n, rows },
            f_pairs,
            f_offsets,
            solution_pairs,
            solution_count,
        })
    }

    pub fn instance(&self) -> &KnapsackInstance {
        &self.inst
    }

    pub fn distribution(&self) -> &OutcomeDistribution {
        &self.dist
    }

    /// `k`, the number of 0/1 solutions.
    pub fn solution_count(&self) -> u64 {
        self.solution_count
    }

    /// `P = sum_A P(A) P(a = 0 | A) P(x solves | A, a = 0)`.
    pub fn success_probability_exact(&self) -> BigRational {
        let total = self.dist.total();
        let mut p = BigRational::zero();
        for (i, row) in self.dist.rows.iter().enumerate() {
            let t_prime = row.n0 >> self.dist.width;
            if t_prime == 0 {
                continue;
            }
            let p_value = ratio(row.n0 + row.n1, total);
            let p_branch = ratio(row.n0, row.n0 + row.n1);
            let p_solution = ratio(self.solution_pairs[i], t_prime);
            p += p_value * p_branch * p_solution;
        }
        p
    }

    /// Measures registers 5, 1 and then 2-3, in that order.
    pub fn run_once(&self, seed: u64) -> RunOutcome {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = self.dist.width;

        let mut pick = rng.random_range(0..self.dist.total());
        let mut row_index = 0;
        for (i, row) in self.dist.rows.iter().enumerate() {
            let mass = row.n0 + row.n1;
            if pick < mass {
                row_index = i;
                break;
            }
            pick -= mass;
        }
        let row = self.dist.rows[row_index];

        let branch = if rng.random_range(0..row.n0 + row.n1) < row.n0 {
            0
        } else {
            1
        };
        if branch == 1 {
            return RunOutcome {
                result: RunResult::FailureAtStep4,
                transcript: Transcript {
                    value: row.value,
                    branch,
                    pair: None,
                },
            };
        }

        let (lo, hi) = (self.f_offsets[row_index], self.f_offsets[row_index + 1]);
        let packed = self.f_pairs[rng.random_range(lo..hi)];
        let mask = (1u64 << n) - 1;
        let x = BitVector::from_raw(packed >> n, n);
        let y = BitVector::from_raw(packed & mask, n);
        let result = if self.inst.subset_sum_raw(x.value()) == self.inst.target() {
            RunResult::Success(x)
        } else {
            RunResult::FailureAtStep6
        };
        RunOutcome {
            result,
            transcript: Transcript {
                value: row.value,
                branch,
                pair: Some((x, y)),
            },
        }
    }

    /// Seed of trial `index` in the stream rooted at `seed`.
    pub fn trial_seed(seed: u64, index: u64) -> u64 {
        splitmix64(seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
    }

    pub fn estimate(&self, trials: u64, seed: u64) -> Result<SuccessEstimate, KnapsackError> {
        if trials == 0 {
            return Err(KnapsackError::InvalidTrials);
        }
        let successes = (0..trials)
            .filter(|&i| self.run_once(Self::trial_seed(seed, i)).is_success())
            .count() as u64;
        Ok(SuccessEstimate::new(trials, successes))
    }

    pub fn bound_report(&self) -> BoundReport {
        let k = self.solution_count;
        let n = self.dist.width;
        let half = BigRational::new(1.into(), 2.into());
        let rows = self
            .dist
            .rows
            .iter()
            .zip(&self.solution_pairs)
            .map(|(row, &solution_pairs)| {
                let t_prime = row.n0 >> n;
                let t = row.n1 >> n;
                let p1 = ratio(row.n0, row.n0 + row.n1);
                let (p2, p2_claimed, bound_holds) = if t_prime == 0 {
                    (None, None, None)
                } else {
                    let p2 = ratio(solution_pairs, t_prime);
                    let claimed = ratio(k, t_prime);
                    let bound = ratio(k, 2 * t_prime);
                    let holds = &p1 * &p2 >= bound;
                    (Some(p2), Some(claimed), Some(holds))
                };
                BoundRow {
                    value: row.value,
                    t,
                    t_prime,
                    n0: row.n0,
                    n1: row.n1,
                    p1_exceeds_half: p1 > half,
                    p1,
                    solution_pairs,
                    p2,
                    p2_claimed,
                    bound_holds,
                }
            })
            .collect();
        BoundReport {
            solution_count: k,
            rows,
            success_probability: self.success_probability_exact(),
        }
    }
}
