//! Exact and sampled runs of the oracle-based quantum knapsack attack.
//!
//! ```text
//! cargo run --example simulate_quantum_attack
//! ```

use knapqsec::exact::{fraction_string, to_f64};
use knapqsec::quantum_sim::{RunResult, Simulation};
use knapqsec::KnapsackInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = KnapsackInstance::new(vec![3, 5, 6, 9], 14, 16)?;
    let sim = Simulation::new(&inst)?;

    println!("k = {} solutions", sim.solution_count());
    println!("A    N0    N1    P(a=0|A)");
    for row in sim.distribution().rows() {
        let p1 = sim
            .distribution()
            .branch_zero_probability(row.value)
            .unwrap();
        println!(
            "{:<4} {:<5} {:<5} {}",
            row.value,
            row.n0,
            row.n1,
            fraction_string(&p1)
        );
    }

    let exact = sim.success_probability_exact();
    println!(
        "exact success probability = {} ({:.5})",
        fraction_string(&exact),
        to_f64(&exact)
    );

    // one transcript
    let run = sim.run_once(42);
    match &run.result {
        RunResult::Success(m) => println!(
            "seed 42: measured A = {}, recovered {m}",
            run.transcript.value
        ),
        other => println!("seed 42: measured A = {}, {other:?}", run.transcript.value),
    }

    let estimate = sim.estimate(20_000, 7)?;
    println!(
        "sampled: {}/{} = {:.5}, 3-sigma interval [{:.5}, {:.5}]",
        estimate.successes, estimate.trials, estimate.frequency, estimate.ci_low, estimate.ci_high
    );

    // the per-branch analysis, with the rows where branch 0 is not favoured
    let report = sim.bound_report();
    println!(
        "{} of {} outcome values have P(a=0|A) <= 1/2",
        report.p1_violations(),
        report.rows.len()
    );
    Ok(())
}
