use crate::knapsack::{add_mod, sub_mod, BitVector, KnapsackError, KnapsackInstance};

/// `f(x, y) = 2 sum (x_i xor y_i) b_i + S - sum x_i b_i  (mod r)`.
pub fn oracle_f(
    x: &BitVector,
    y: &BitVector,
    inst: &KnapsackInstance,
) -> Result<u64, KnapsackError> {
    inst.check_width(x)?;
    inst.check_width(y)?;
    let z = x.xor(y)?;
    Ok(combine_f(
        inst.subset_sum_raw(z.value()),
        inst.subset_sum_raw(x.value()),
        inst.target(),
        inst.modulus(),
    ))
}

/// `g(z) = sum 2 z_i b_i  (mod r)`.
pub fn oracle_g(z: &BitVector, inst: &KnapsackInstance) -> Result<u64, KnapsackError> {
    inst.check_width(z)?;
    Ok(double(inst.subset_sum_raw(z.value()), inst.modulus()))
}

/// `h(u, v) = sum 2 (u_i xor v_i) b_i  (mod r)`, the adjoint of `f`.
pub fn oracle_h(
    u: &BitVector,
    v: &BitVector,
    inst: &KnapsackInstance,
) -> Result<u64, KnapsackError> {
    inst.check_width(u)?;
    inst.check_width(v)?;
    oracle_g(&u.xor(v)?, inst)
}

/// The register oracle `G(a, x, y, z)`: `f(x, y)` on branch 0, `h(x, z)`
/// on branch 1.
pub fn branch_oracle(
    a: u8,
    x: &BitVector,
    y: &BitVector,
    z: &BitVector,
    inst: &KnapsackInstance,
) -> Result<u64, KnapsackError> {
    inst.check_width(x)?;
    inst.check_width(y)?;
    inst.check_width(z)?;
    match a {
        0 => oracle_f(x, y, inst),
        _ => oracle_h(x, z, inst),
    }
}

#[inline]
pub(crate) fn double(sum: u64, r: u64) -> u64 {
    add_mod(sum, sum, r)
}

/// `f` from precomputed residues `w(x xor y)` and `w(x)`.
#[inline]
pub(crate) fn combine_f(xor_sum: u64, x_sum: u64, s: u64, r: u64) -> u64 {
    sub_mod(add_mod(double(xor_sum, r), s, r), x_sum, r)
}
