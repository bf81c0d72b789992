//! Solve a modular knapsack instance with both exact solvers.
//!
//! ```text
//! cargo run --example solve_subset_sum
//! ```

use knapqsec::knapsack::{brute_force_solutions, density, meet_in_the_middle_solutions};
use knapqsec::KnapsackInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // 17 weights, target 1000, modulus 4093
    let b = vec![
        1021, 3, 2977, 512, 88, 1409, 777, 2048, 31, 3999, 650, 1200, 17, 2500, 64, 901, 333,
    ];
    let inst = KnapsackInstance::new(b.clone(), 1000, 4093)?;
    println!("n = {}, density = {:.3}", inst.dimension(), density(&b)?);

    let brute = brute_force_solutions(&inst)?;
    let mitm = meet_in_the_middle_solutions(&inst)?;
    assert_eq!(brute, mitm);

    println!("{} solutions (first bit is b[0])", mitm.len());
    for x in mitm.iter().take(5) {
        println!("  {x}  sum = {}", inst.subset_sum(x)?);
    }

    // instance files use the same shape as `knapqsec solve`
    println!("{}", inst.to_json());
    Ok(())
}
