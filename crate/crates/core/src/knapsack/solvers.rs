use super::{add_mod, check_guard, sub_mod, BitVector, KnapsackError, KnapsackInstance, Limits};

/// Every `x in {0,1}^n` with `sum x_i b_i = S (mod r)`, ascending by value.
pub fn brute_force_solutions(inst: &KnapsackInstance) -> Result<Vec<BitVector>, KnapsackError> {
    brute_force_solutions_limited(inst, Limits::default().brute_force)
}

pub fn brute_force_solutions_limited(
    inst: &KnapsackInstance,
    max_n: usize,
) -> Result<Vec<BitVector>, KnapsackError> {
    let n = inst.dimension();
    check_guard(n, max_n)?;
    let (r, s, b) = (inst.modulus(), inst.target(), inst.weights());

    // Gray-code walk: one coordinate changes per step.
    let mut found = Vec::new();
    let mut gray = 0u64;
    let mut sum = 0u64;
    if sum == s {
        found.push(0);
    }
    for step in 1..(1u64 << n) {
        let bit = step.trailing_zeros() as usize;
        let coord = n - 1 - bit;
        gray ^= 1 << bit;
        sum = if gray >> bit & 1 == 1 {
            add_mod(sum, b[coord], r)
        } else {
            sub_mod(sum, b[coord], r)
        };
        if sum == s {
            found.push(gray);
        }
    }
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|v| BitVector::from_raw(v, n))
        .collect())
}

/// Same set as [`brute_force_solutions`] in `O(n 2^(n/2))` time.
pub fn meet_in_the_middle_solutions(
    inst: &KnapsackInstance,
) -> Result<Vec<BitVector>, KnapsackError> {
    meet_in_the_middle_solutions_limited(inst, Limits::default().meet_in_the_middle)
}

pub fn meet_in_the_middle_solutions_limited(
    inst: &KnapsackInstance,
    max_n: usize,
) -> Result<Vec<BitVector>, KnapsackError> {
    let n = inst.dimension();
    check_guard(n, max_n)?;
    let (r, s, b) = (inst.modulus(), inst.target(), inst.weights());

    let split = n / 2;
    let (high, low) = b.split_at(split);
    let low_width = low.len();

    // Sorted (residue, mask) multimap for the low half.
    let mut low_sums: Vec<(u64, u64)> = half_sums(low, r)
        .into_iter()
        .enumerate()
        .map(|(mask, sum)| (sum, mask as u64))
        .collect();
    low_sums.sort_unstable();

    let mut found = Vec::new();
    for (high_mask, v) in half_sums(high, r).into_iter().enumerate() {
        let want = sub_mod(s, v, r);
        let start = low_sums.partition_point(|&(sum, _)| sum < want);
        for &(sum, low_mask) in &low_sums[start..] {
            if sum != want {
                break;
            }
            found.push(((high_mask as u64) << low_width) | low_mask);
        }
    }
    found.sort_unstable();
    Ok(found
        .into_iter()
        .map(|v| BitVector::from_raw(v, n))
        .collect())
}

fn half_sums(weights: &[u64], r: u64) -> Vec<u64> {
    let w = weights.len();
    let mut table = vec![0u64; 1 << w];
    for (i, &bi) in weights.iter().enumerate().rev() {
        let bit = 1usize << (w - 1 - i);
        for v in 0..bit {
            table[v | bit] = add_mod(table[v], bi, r);
        }
    }
    table
}
