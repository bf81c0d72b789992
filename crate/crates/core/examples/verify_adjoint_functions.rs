//! Check the oracle identities behind the attack on a small instance:
//! `f(x, y) - g(x ^ y) = S - sum x_i b_i`, and collisions `f(x, y) = h(u, v)`
//! with `x ^ y = u ^ v` happen exactly when `x` is a solution.
//!
//! ```text
//! cargo run --example verify_adjoint_functions
//! ```

use knapqsec::quantum_sim::{
    oracle_f, oracle_h, verify_collision_criterion, verify_difference_identity,
};
use knapqsec::{BitVector, KnapsackInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let inst = KnapsackInstance::new(vec![2, 7, 11], 9, 13)?;

    let identity = verify_difference_identity(&inst)?;
    let collisions = verify_collision_criterion(&inst)?;
    println!(
        "difference identity: {} pairs, {} violations",
        identity.checked, identity.violations
    );
    println!(
        "collision criterion: {} triples, {} violations",
        collisions.checked, collisions.violations
    );

    let x = BitVector::from_bits(&[true, true, false])?; // 2 + 7 = 9
    let y = BitVector::new(0b101, 3)?;
    // any (u, v) with u ^ v = x ^ y collides with f(x, y)
    let u = BitVector::new(0b011, 3)?;
    let v = x.xor(&y)?.xor(&u)?;
    println!(
        "x = {x} solves: f(x, y) = {}, h(u, v) = {}",
        oracle_f(&x, &y, &inst)?,
        oracle_h(&u, &v, &inst)?
    );
    Ok(())
}
