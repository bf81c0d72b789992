//! Primality and factoring for 64-bit and arbitrary-precision integers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the first twelve prime bases are exact below 2^64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho; `n` must be an odd composite.
fn rho_u64(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Full factorization as ascending `(prime, exponent)` pairs. `factor_u64(0)`
/// and `factor_u64(1)` are empty.
pub fn factor_u64(n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    if n < 2 {
        return Vec::new();
    }
    let mut rest = n;
    for p in 2u64..1000 {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            primes.push(m);
        } else {
            let d = rho_u64(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Miller-Rabin with the first 24 prime bases. Exact for `n < 2^64`;
/// probabilistic beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const BASES: [u32; 24] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    ];
    if BASES.iter().any(|&p| (n % p).is_zero()) {
        return false;
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Work limits for [`factor_partial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial division by every integer below this bound.
    pub trial_limit: u64,
    /// Total Pollard-rho iterations across all cofactors.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_limit: 100_000,
            rho_iterations: 5_000_000,
        }
    }
}

/// Result of a budgeted factorization attempt.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialFactorization {
    /// Ascending `(prime, exponent)` pairs found so far.
    pub primes: Vec<(BigUint, u32)>,
    /// Composite cofactors the budget could not split.
    pub unresolved: Vec<BigUint>,
}

impl PartialFactorization {
    pub fn is_complete(&self) -> bool {
        self.unresolved.is_empty()
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.primes.last().map(|(p, _)| p)
    }
}

/// Factors `n` by trial division then Brent-Pollard rho, stopping when the
/// budget runs out. Cofactors that pass [`is_probable_prime`] are reported
/// as primes.
pub fn factor_partial(n: &BigUint, budget: FactorBudget) -> PartialFactorization {
    let mut primes: Vec<BigUint> = Vec::new();
    let mut out = PartialFactorization::default();
    if n <= &BigUint::one() {
        return out;
    }
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < budget.trial_limit {
        let bp = BigUint::from(p);
        if &bp * &bp > rest {
            break;
        }
        while (&rest % p).is_zero() {
            primes.push(bp.clone());
            rest /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }

    let mut remaining = budget.rho_iterations;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            primes.push(m);
            continue;
        }
        match rho_big(&m, &mut remaining) {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => out.unresolved.push(m),
        }
    }

    primes.sort();
    for p in primes {
        match out.primes.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.primes.push((p, 1)),
        }
    }
    out.unresolved.sort();
    out
}

fn rho_big(n: &BigUint, remaining: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u8));
    }
    let one = BigUint::one();
    const BATCH: u64 = 64;
    for c in 1u32..=16 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u8);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = one.clone();
        let mut g = one.clone();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let steps = BATCH.min(r - k);
                if *remaining < steps + r {
                    *remaining = 0;
                    return None;
                }
                *remaining -= steps;
                for _ in 0..steps {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            *remaining = remaining.saturating_sub(r);
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut p = 2;
        while p * p <= n {
            while n.is_multiple_of(p) {
                match out.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => out.push((p, 1)),
                }
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            match out.last_mut() {
                Some((q, e)) if *q == n => *e += 1,
                _ => out.push((n, 1)),
            }
        }
        out
    }

    #[test]
    fn primality_small_range() {
        for n in 0..5000u64 {
            let naive = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), naive, "n = {n}");
        }
    }

    #[test]
    fn primality_large() {
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        assert!(!is_prime_u64(3_215_031_751)); // strong pseudoprime to 2,3,5,7
        assert!(is_prime_u64(22_601_114_563));
    }

    #[test]
    fn factor_matches_trial_division() {
        for n in [
            2400u64,
            8,
            161_050,
            371_292,
            1,
            2,
            97,
            999_983 * 1_000_003,
            600_851_475_143,
        ] {
            assert_eq!(factor_u64(n), trial_factor(n), "n = {n}");
        }
    }

    #[test]
    fn factor_semiprime_u64() {
        let p = 4_294_967_291u64;
        let q = 4_294_967_279u64;
        assert_eq!(factor_u64(p * q), vec![(q, 1), (p, 1)]);
    }

    #[test]
    fn big_probable_primes() {
        let p: BigUint = "93747720530583417795580950351920580529".parse().unwrap();
        assert!(is_probable_prime(&p));
        assert!(!is_probable_prime(&(&p * 3u32)));
    }

    #[test]
    fn partial_factorization_recovers_product() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(4_294_967_291u64) * 12u32;
        let f = factor_partial(&n, FactorBudget::default());
        assert!(f.is_complete());
        let product = f
            .primes
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        assert_eq!(product, n);
        assert_eq!(f.largest_prime().unwrap(), &BigUint::from(4_294_967_291u64));
    }

    #[test]
    fn exhausted_budget_leaves_cofactor() {
        let n = BigUint::from(4_294_967_291u64) * BigUint::from(4_294_967_279u64);
        let f = factor_partial(
            &n,
            FactorBudget {
                trial_limit: 10,
                rho_iterations: 0,
            },
        );
        assert_eq!(f.unresolved, vec![n]);
    }
}
