//! Qubit and gate counts for the attack circuit at a few sizes.
//!
//! ```text
//! cargo run --example resource_estimate
//! ```

use knapqsec::quantum_sim::resource_estimate;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(
        "{:>5} {:>12} {:>8} {:>12} {:>14}",
        "n", "QFT gates", "adders", "adder width", "total"
    );
    for n in [4, 16, 64, 109, 256] {
        let est = resource_estimate(n)?;
        println!(
            "{:>5} {:>12} {:>8} {:>12} {:>14}",
            est.width,
            est.qft_gate_count,
            est.adder_count,
            est.adder_width,
            est.total_elementary_gates
        );
    }
    Ok(())
}
