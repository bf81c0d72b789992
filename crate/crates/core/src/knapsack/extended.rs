use super::{add_mod, check_guard, sub_mod, KnapsackError, Limits};

/// Number of `x' in {-1, 0, 1, 2}^n` with `sum x'_i b_i = s' (mod r)`.
pub fn count_extended_solutions(b: &[u64], s_prime: u64, r: u64) -> Result<u64, KnapsackError> {
    count_extended_solutions_limited(b, s_prime, r, Limits::default().extended)
}

pub fn count_extended_solutions_limited(
    b: &[u64],
    s_prime: u64,
    r: u64,
    max_n: usize,
) -> Result<u64, KnapsackError> {
    if r < 2 {
        return Err(KnapsackError::ModulusTooSmall(r));
    }
    check_guard(b.len(), max_n)?;
    let b: Vec<u64> = b.iter().map(|&v| v % r).collect();
    let target = s_prime % r;

    // Residue contributed by each coefficient, in alphabet order.
    let terms: Vec<[u64; 4]> = b
        .iter()
        .map(|&bi| [sub_mod(0, bi, r), 0, bi, add_mod(bi, bi, r)])
        .collect();

    let mut count = 0u64;
    walk(&terms, 0, 0, target, r, &mut count);
    Ok(count)
}

fn walk(terms: &[[u64; 4]], depth: usize, acc: u64, target: u64, r: u64, count: &mut u64) {
    if depth == terms.len() {
        if acc == target {
            *count += 1;
        }
        return;
    }
    for &t in &terms[depth] {
        walk(terms, depth + 1, add_mod(acc, t, r), target, r, count);
    }
}
