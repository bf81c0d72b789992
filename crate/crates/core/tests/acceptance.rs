//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on
//! any failure. Runs without the libtest harness so the report stays in
//! criterion order.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use knapqsec::chor_rivest::{
    self, binomial, decode_message, encode_message, find_primitive, random_irreducible, GaloisField,
};
use knapqsec::exact::{decimal_string, to_f64};
use knapqsec::knapsack::{
    brute_force_solutions, count_extended_solutions, meet_in_the_middle_solutions,
};
use knapqsec::nt::FactorBudget;
use knapqsec::param_security::{
    check_fc, chor_rivest_quantum_audit_with, knapsack_zr_audit, quantum_ratio, GPF_BOUND,
};
use knapqsec::quantum_sim::{
    analysis_bound_report, branch_oracle, success_probability_exact, verify_collision_criterion,
    verify_difference_identity, RunResult, Simulation,
};
use knapqsec::{BitVector, KnapsackInstance};
use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn random_instance(rng: &mut ChaCha8Rng, n: usize, r: u64) -> KnapsackInstance {
    let b = (0..n).map(|_| rng.random_range(0..r)).collect();
    KnapsackInstance::new(b, rng.random_range(0..r), r).unwrap()
}

/// Solution count by direct enumeration of every 0/1 vector.
fn count_by_enumeration(inst: &KnapsackInstance) -> u64 {
    let n = inst.dimension();
    let (b, s, r) = (inst.weights(), inst.target(), inst.modulus());
    (0u64..1 << n)
        .filter(|v| {
            let sum: u128 = (0..n)
                .filter(|i| v >> (n - 1 - i) & 1 == 1)
                .map(|i| b[i] as u128)
                .sum();
            (sum % r as u128) as u64 == s
        })
        .count() as u64
}

fn c1_quantum_ratio() -> Outcome {
    let ratio = quantum_ratio(109, 29).map_err(|e| e.to_string())?;
    let shown = decimal_string(&ratio, 1);
    ensure!(shown == "3460753.1", "ratio renders as {shown}");
    let report = chor_rivest_quantum_audit_with(
        109,
        29,
        &BigUint::from(GPF_BOUND),
        FactorBudget {
            trial_limit: 1000,
            rho_iterations: 1000,
        },
    )
    .map_err(|e| e.to_string())?;
    let bound = report.break_probability_display();
    ensure!(
        bound.as_deref() == Some("1/6921506.2"),
        "break probability renders as {bound:?}"
    );
    Ok(format!(
        "ratio {shown}, break probability {}",
        bound.unwrap()
    ))
}

fn c2_five_conditions() -> Outcome {
    let fc = check_fc(109, 29);
    ensure!(fc.all(), "{fc:?}");
    Ok("all five conditions hold for (109, 29)".into())
}

fn c3_simulator_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut successes = 0u64;
    let instances = 1000;
    for i in 0..instances {
        let n = rng.random_range(2..=6usize);
        let r = rng.random_range(2..=4u64.pow(n as u32));
        let inst = random_instance(&mut rng, n, r);
        let sim = Simulation::new(&inst).unwrap();
        for t in 0..20 {
            let outcome = sim.run_once(Simulation::trial_seed(i, t));
            if let RunResult::Success(m) = &outcome.result {
                successes += 1;
                ensure!(
                    inst.subset_sum(m).unwrap() == inst.target(),
                    "unsound success {m} on {inst:?}"
                );
            }
        }
    }
    Ok(format!(
        "{instances} instances, {successes} successes, all sound"
    ))
}

fn c4_sampled_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut agree = 0;
    let mut misses = Vec::new();
    for i in 0..20u64 {
        let n = rng.random_range(1..=5usize);
        let r = rng.random_range(2..=(1u64 << n) + 4);
        let inst = random_instance(&mut rng, n, r);
        let sim = Simulation::new(&inst).unwrap();
        // independent reference: k / 2^(n+1) by enumeration
        let p = count_by_enumeration(&inst) as f64 / (1u64 << (n + 1)) as f64;
        ensure!(
            (to_f64(&sim.success_probability_exact()) - p).abs() < 1e-12,
            "exact probability disagrees with enumeration on {inst:?}"
        );
        let estimate = sim.estimate(10_000, 1000 + i).unwrap();
        if estimate.within_sigmas(p, 3.0) {
            agree += 1;
        } else {
            misses.push(format!("{:.4} vs {p:.4}", estimate.frequency));
        }
    }
    ensure!(agree >= 19, "only {agree}/20 within 3 sigma: {misses:?}");
    Ok(format!("{agree}/20 instances within 3 sigma"))
}

fn c5_fixtures() -> Outcome {
    let one = KnapsackInstance::new(vec![1], 1, 4).unwrap();
    let two = KnapsackInstance::new(vec![2], 1, 4).unwrap();
    let p_one = success_probability_exact(&one).unwrap();
    let p_two = success_probability_exact(&two).unwrap();
    ensure!(
        p_one == BigRational::new(1.into(), 4.into()),
        "B=(1): {p_one}"
    );
    ensure!(
        p_two == BigRational::from_integer(0.into()),
        "B=(2): {p_two}"
    );
    Ok("B=(1) gives 1/4, B=(2) gives 0".into())
}

fn verify_both(inst: &KnapsackInstance) -> Result<(), String> {
    let t = verify_difference_identity(inst).map_err(|e| e.to_string())?;
    ensure!(
        t.holds(),
        "difference-identity counterexample on {inst:?}: {:?}",
        t.counterexamples
    );
    let c = verify_collision_criterion(inst).map_err(|e| e.to_string())?;
    ensure!(
        c.holds(),
        "collision-criterion counterexample on {inst:?}: {:?}",
        c.counterexamples
    );
    Ok(())
}

fn c6_adjoint_verification() -> Outcome {
    let mut exhaustive = 0u64;
    for r in 2..=32u64 {
        for s in 0..r {
            for b0 in 0..r {
                verify_both(&KnapsackInstance::new(vec![b0], s, r).unwrap())?;
                exhaustive += 1;
                for b1 in 0..r {
                    verify_both(&KnapsackInstance::new(vec![b0, b1], s, r).unwrap())?;
                    exhaustive += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let sampled = 10_000;
    for _ in 0..sampled {
        let r = rng.random_range(2..=32u64);
        verify_both(&random_instance(&mut rng, 3, r))?;
    }
    Ok(format!(
        "{exhaustive} exhaustive n <= 2 instances, {sampled} random n = 3 instances, no counterexamples"
    ))
}

/// `(N0, N1)` per oracle value by walking every `(a, x, y, z)` tuple.
fn tuple_counts(inst: &KnapsackInstance) -> std::collections::BTreeMap<u64, (u64, u64)> {
    let n = inst.dimension();
    let mut counts = std::collections::BTreeMap::new();
    let bits: Vec<BitVector> = (0..1u64 << n)
        .map(|v| BitVector::new(v, n).unwrap())
        .collect();
    for a in 0..2u8 {
        for x in &bits {
            for y in &bits {
                for z in &bits {
                    let value = branch_oracle(a, x, y, z, inst).unwrap();
                    let entry = counts.entry(value).or_insert((0, 0));
                    if a == 0 {
                        entry.0 += 1;
                    } else {
                        entry.1 += 1;
                    }
                }
            }
        }
    }
    counts
}

fn check_report(inst: &KnapsackInstance) -> Result<usize, String> {
    let sim = Simulation::new(inst).map_err(|e| e.to_string())?;
    let report = sim.bound_report();
    let oracle = tuple_counts(inst);
    ensure!(
        report.rows.len() == oracle.len(),
        "row count mismatch on {inst:?}"
    );
    for row in &report.rows {
        let d = sim
            .distribution()
            .row(row.value)
            .ok_or_else(|| format!("value {} missing from distribution", row.value))?;
        ensure!(
            (row.n0, row.n1) == (d.n0, d.n1) && Some(&(d.n0, d.n1)) == oracle.get(&row.value),
            "N0/N1 mismatch at A = {} on {inst:?}",
            row.value
        );
        let width = inst.dimension() as u32;
        ensure!(
            row.n0 == row.t_prime << width && row.n1 == row.t << width,
            "counts are not 2^n multiples at A = {}",
            row.value
        );
        ensure!(
            row.p1 == BigRational::new(row.n0.into(), (row.n0 + row.n1).into()),
            "P1 inconsistent at A = {}",
            row.value
        );
    }
    let k = count_by_enumeration(inst);
    ensure!(
        report.success_probability
            == BigRational::new(k.into(), (1u64 << (inst.dimension() + 1)).into()),
        "report probability disagrees with k / 2^(n+1)"
    );
    Ok(report.p1_violations())
}

fn c7_bound_report() -> Outcome {
    let mut reports = 0u64;
    let mut violations = 0usize;
    for r in 2..=32u64 {
        for s in 0..r {
            for b0 in 0..r {
                violations += check_report(&KnapsackInstance::new(vec![b0], s, r).unwrap())?;
                reports += 1;
                for b1 in 0..r {
                    violations +=
                        check_report(&KnapsackInstance::new(vec![b0, b1], s, r).unwrap())?;
                    reports += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..2_000 {
        let r = rng.random_range(2..=32u64);
        violations += check_report(&random_instance(&mut rng, 3, r))?;
        reports += 1;
    }
    let known = KnapsackInstance::new(vec![1], 1, 4).unwrap();
    let row = &analysis_bound_report(&known).unwrap().rows[0];
    ensure!(
        row.p1 == BigRational::new(1.into(), 3.into()) && !row.p1_exceeds_half,
        "B=(1) row 0 has P1 = {}",
        row.p1
    );
    Ok(format!(
        "{reports} reports consistent; {violations} rows with P(a=0|A) <= 1/2 recorded"
    ))
}

fn c8_extended_partition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let n = rng.random_range(1..=6usize);
        let r = rng.random_range(2..=64u64);
        let b: Vec<u64> = (0..n).map(|_| rng.random_range(0..r)).collect();
        let mut total = 0u64;
        for s in 0..r {
            total += count_extended_solutions(&b, s, r).map_err(|e| e.to_string())?;
        }
        ensure!(
            total == 4u64.pow(n as u32),
            "sum {total} for b = {b:?}, r = {r}"
        );
    }
    Ok("50 instances partition 4^n exactly".into())
}

fn c9_solver_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut solutions = 0usize;
    for _ in 0..200 {
        let n = rng.random_range(1..=18usize);
        let r = if rng.random_bool(0.5) {
            rng.random_range(2..=1u64 << n)
        } else {
            rng.random_range(2..=u64::MAX)
        };
        let inst = random_instance(&mut rng, n, r);
        let brute = brute_force_solutions(&inst).unwrap();
        let mitm = meet_in_the_middle_solutions(&inst).unwrap();
        ensure!(brute == mitm, "solvers disagree on {inst:?}");
        solutions += brute.len();
    }
    Ok(format!("200 instances agree ({solutions} solutions total)"))
}

const CR_PARAMS: [(u64, usize); 3] = [(7, 4), (11, 5), (13, 5)];

fn c10_chor_rivest_roundtrip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for (seed, &(p, h)) in CR_PARAMS.iter().enumerate() {
        let (public, private) =
            chor_rivest::keygen(p, h, seed as u64).map_err(|e| e.to_string())?;
        let space = binomial(p, h as u64);
        let last = &space - 1u32;
        let mut messages = vec![BigUint::ZERO, last];
        let bound = u64::try_from(&space).unwrap();
        messages.extend((0..100).map(|_| BigUint::from(rng.random_range(0..bound))));
        for m in messages {
            let c = chor_rivest::encrypt(&public, &m).map_err(|e| e.to_string())?;
            let back = chor_rivest::decrypt(&private, &public, c).map_err(|e| e.to_string())?;
            ensure!(back == m, "({p}, {h}): {m} decrypted to {back}");
        }
    }
    Ok("102 messages roundtrip for each of (7,4), (11,5), (13,5)".into())
}

fn brute_force_log(field: &GaloisField, g: &knapqsec::chor_rivest::PrimeFieldPoly) -> Vec<u64> {
    // logs indexed by element index
    let q = field.group_order() + 1;
    let mut logs = vec![u64::MAX; q as usize];
    let mut acc = field.one();
    for k in 0..field.group_order() {
        logs[field.index(&acc) as usize] = k;
        acc = field.mul(&acc, g);
    }
    logs
}

fn c11_discrete_logs() -> Outcome {
    for (seed, &(p, h)) in CR_PARAMS.iter().enumerate() {
        let (public, private) =
            chor_rivest::keygen(p, h, seed as u64).map_err(|e| e.to_string())?;
        let field = private.field().map_err(|e| e.to_string())?;
        let g = private.generator();
        for (i, a) in private
            .logs(&public)
            .map_err(|e| e.to_string())?
            .into_iter()
            .enumerate()
        {
            ensure!(
                field.pow(&g, a) == field.shifted_x(i as u64),
                "({p}, {h}): g^a_{i} != x + {i}"
            );
        }
    }
    let mut checked = 0;
    for (p, h) in [(3u64, 2usize), (7, 2)] {
        let f = random_irreducible(p, h, 1).map_err(|e| e.to_string())?;
        let field = GaloisField::new(p, &f).map_err(|e| e.to_string())?;
        let g = find_primitive(p, h, &f, 1).map_err(|e| e.to_string())?;
        let reference = brute_force_log(&field, &g);
        for idx in 1..=field.group_order() {
            let e = field.from_index(idx);
            let log = field.discrete_log(&g, &e).map_err(|e| e.to_string())?;
            ensure!(
                log == reference[idx as usize],
                "F_{p}^{h}: log of {e} is {log}, expected {}",
                reference[idx as usize]
            );
            checked += 1;
        }
    }
    Ok(format!(
        "key logs verified for 3 key pairs; {checked} dlogs in F_9 and F_49 match brute force"
    ))
}

fn c12_encoding_bijection() -> Outcome {
    for (p, h) in [(7usize, 3usize), (9, 4)] {
        let total = u64::try_from(binomial(p as u64, h as u64)).unwrap();
        let mut seen = std::collections::HashSet::new();
        for m in 0..total {
            let m = BigUint::from(m);
            let v = encode_message(&m, p, h).map_err(|e| e.to_string())?;
            ensure!(v.weight() == h && v.len() == p, "bad vector for {m}");
            ensure!(seen.insert(v.bits().to_vec()), "duplicate codeword for {m}");
            let back = decode_message(&v, p, h).map_err(|e| e.to_string())?;
            ensure!(back == m, "C({p},{h}): {m} decoded to {back}");
        }
    }
    Ok("C(7,3) and C(9,4) roundtrip exhaustively".into())
}

fn c13_zr_boundary() -> Outcome {
    let verdict = |r: u32| knapsack_zr_audit(10, &BigUint::from(r)).map(|a| a.secure);
    let got = [512, 1024, 2048].map(|r| verdict(r).map_err(|e| e.to_string()));
    let got: Vec<bool> = got.into_iter().collect::<Result<_, _>>()?;
    ensure!(got == [true, false, false], "verdicts {got:?}");
    Ok("(10, 512) secure; (10, 1024), (10, 2048) insecure".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("C1  quantum ratio for (109, 29)", c1_quantum_ratio),
        ("C2  five conditions for (109, 29)", c2_five_conditions),
        ("C3  simulator soundness", c3_simulator_soundness),
        ("C4  exact vs sampled success", c4_sampled_agreement),
        ("C5  hand-enumerated fixtures", c5_fixtures),
        ("C6  adjoint-function identities", c6_adjoint_verification),
        ("C7  bound report consistency", c7_bound_report),
        ("C8  extended-count partition", c8_extended_partition),
        ("C9  solver equivalence", c9_solver_equivalence),
        ("C10 Chor-Rivest roundtrip", c10_chor_rivest_roundtrip),
        ("C11 discrete-log correctness", c11_discrete_logs),
        ("C12 encoding bijection", c12_encoding_bijection),
        ("C13 Z_r audit boundary", c13_zr_boundary),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome =
            panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = fmt_duration(start.elapsed());
        match outcome {
            Ok(detail) => println!("PASS {name} [{elapsed}]: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} [{elapsed}]: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn fmt_duration(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}
