//! Audit Chor-Rivest and Z_r knapsack parameters against the classical
//! conditions and the quantum-attack threshold.
//!
//! ```text
//! cargo run --example audit_parameters
//! ```

use knapqsec::param_security::{chor_rivest_quantum_audit, knapsack_zr_audit};
use num_bigint::BigUint;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, h) in [(197, 24), (211, 24), (109, 29), (109, 2)] {
        let report = chor_rivest_quantum_audit(p, h)?;
        println!(
            "(p, h) = ({p}, {h}): FC {}, gpf {:?}, 4^p/(p^h-1) = {}, quantum secure {}, verdict {:?}",
            report.fc.all(),
            report.gpf_status,
            report.ratio_display(),
            report.quantum_secure,
            report.verdict()
        );
        if let Some(bound) = report.break_probability_display() {
            println!("    one run breaks it with probability at least {bound}");
        }
    }

    for r in [512u32, 1023, 1024, 2048] {
        let audit = knapsack_zr_audit(10, &BigUint::from(r))?;
        println!("n = 10, r = {r}: secure {}", audit.secure);
    }
    Ok(())
}
