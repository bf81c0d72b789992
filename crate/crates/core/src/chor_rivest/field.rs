use std::collections::HashMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::PrimeFieldPoly;
use super::ChorRivestError;
use crate::nt::{factor_u64, is_prime_u64};

/// Largest prime factor of `p^h - 1` a discrete log will handle; the
/// baby-step table for a prime `l` holds `ceil(sqrt(l))` entries.
pub const DLOG_PRIME_LIMIT: u64 = 10_000_000_000_000;

/// `(a * b) mod f` over `Z_p`, for `deg a, deg b < deg f`.
pub fn poly_mul_mod(
    a: &PrimeFieldPoly,
    b: &PrimeFieldPoly,
    f: &PrimeFieldPoly,
    p: u64,
) -> Result<PrimeFieldPoly, ChorRivestError> {
    if !f.is_monic() {
        return Err(ChorRivestError::NotMonic);
    }
    let h = f.degree().unwrap_or(0);
    for (operand, poly) in [("a", a), ("b", b)] {
        if poly.characteristic() != p || f.characteristic() != p {
            return Err(ChorRivestError::BadParameters(format!(
                "{operand} is not over Z_{p}"
            )));
        }
        if poly.degree().is_some_and(|d| d >= h) {
            return Err(ChorRivestError::DegreeOverflow {
                degree: poly.degree().unwrap_or(0),
                limit: h,
            });
        }
    }
    Ok(a.mul_mod(b, f))
}

fn check_prime(p: u64) -> Result<(), ChorRivestError> {
    if !is_prime_u64(p) {
        return Err(ChorRivestError::BadParameters(format!(
            "p = {p} is not prime"
        )));
    }
    if p >= 1 << 32 {
        return Err(ChorRivestError::BadParameters(format!(
            "p = {p} exceeds 32 bits"
        )));
    }
    Ok(())
}

/// Rabin's test: `x^(p^h) = x (mod f)` and `gcd(x^(p^(h/q)) - x, f) = 1`
/// for every prime `q | h`.
pub fn is_irreducible(f: &PrimeFieldPoly, p: u64) -> Result<bool, ChorRivestError> {
    check_prime(p)?;
    if !f.is_monic() || f.characteristic() != p {
        return Err(ChorRivestError::NotMonic);
    }
    let h = f.degree().unwrap_or(0);
    if h == 0 {
        return Ok(false);
    }
    let x = PrimeFieldPoly::linear(p, 0).rem(f);
    let frobenius = |k: usize| {
        let mut t = x.clone();
        for _ in 0..k {
            t = t.pow_mod(p, f);
        }
        t
    };
    if frobenius(h) != x {
        return Ok(false);
    }
    for (q, _) in factor_u64(h as u64) {
        let t = frobenius(h / q as usize).sub(&x);
        if !t.gcd(f).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn random_irreducible(p: u64, h: usize, seed: u64) -> Result<PrimeFieldPoly, ChorRivestError> {
    random_irreducible_with(p, h, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub(crate) fn random_irreducible_with(
    p: u64,
    h: usize,
    rng: &mut impl RngCore,
) -> Result<PrimeFieldPoly, ChorRivestError> {
    check_prime(p)?;
    if h == 0 {
        return Err(ChorRivestError::BadParameters(
            "h must be at least 1".into(),
        ));
    }
    loop {
        let mut coeffs: Vec<u64> = (0..h).map(|_| rng.random_range(0..p)).collect();
        coeffs.push(1);
        let f = PrimeFieldPoly::new(p, coeffs);
        if is_irreducible(&f, p)? {
            return Ok(f);
        }
    }
}

/// `F_{p^h} = Z_p[x] / (f)` with a factored multiplicative group order.
#[derive(Debug, Clone)]
pub struct GaloisField {
    p: u64,
    h: usize,
    modulus: PrimeFieldPoly,
    order: u64,
    order_factors: Vec<(u64, u32)>,
}

impl GaloisField {
    /// `f` must be monic and irreducible of degree `h` over `Z_p`.
    pub fn new(p: u64, f: &PrimeFieldPoly) -> Result<Self, ChorRivestError> {
        if !is_irreducible(f, p)? {
            return Err(ChorRivestError::BadParameters(format!(
                "{f} is not irreducible over Z_{p}"
            )));
        }
        let h = f.degree().unwrap_or(0);
        let q = field_size(p, h)?;
        let order = q - 1;
        Ok(GaloisField {
            p,
            h,
            modulus: f.clone(),
            order,
            order_factors: factor_u64(order),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.h
    }

    pub fn modulus(&self) -> &PrimeFieldPoly {
        &self.modulus
    }

    /// `p^h - 1`.
    pub fn group_order(&self) -> u64 {
        self.order
    }

    pub fn group_order_factors(&self) -> &[(u64, u32)] {
        &self.order_factors
    }

    pub fn element(&self, coeffs: Vec<u64>) -> PrimeFieldPoly {
        PrimeFieldPoly::new(self.p, coeffs).rem(&self.modulus)
    }

    pub fn one(&self) -> PrimeFieldPoly {
        self.element(vec![1])
    }

    /// `x + i` reduced into the field.
    pub fn shifted_x(&self, i: u64) -> PrimeFieldPoly {
        PrimeFieldPoly::linear(self.p, i).rem(&self.modulus)
    }

    pub fn mul(&self, a: &PrimeFieldPoly, b: &PrimeFieldPoly) -> PrimeFieldPoly {
        a.mul_mod(b, &self.modulus)
    }

    pub fn pow(&self, a: &PrimeFieldPoly, e: u64) -> PrimeFieldPoly {
        a.pow_mod(e, &self.modulus)
    }

    /// Base-`p` index `sum c_i p^i`, a bijection onto `0 .. p^h`.
    pub fn index(&self, a: &PrimeFieldPoly) -> u64 {
        a.coeffs().iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn from_index(&self, mut idx: u64) -> PrimeFieldPoly {
        let mut coeffs = Vec::with_capacity(self.h);
        for _ in 0..self.h {
            coeffs.push(idx % self.p);
            idx /= self.p;
        }
        PrimeFieldPoly::new(self.p, coeffs)
    }

    pub fn is_primitive(&self, g: &PrimeFieldPoly) -> bool {
        if g.is_zero() {
            return false;
        }
        self.order_factors
            .iter()
            .all(|&(q, _)| !self.pow(g, self.order / q).is_one())
    }

    pub(crate) fn random_primitive(&self, rng: &mut impl RngCore) -> PrimeFieldPoly {
        loop {
            let candidate = self.from_index(rng.random_range(1..=self.order));
            if self.is_primitive(&candidate) {
                return candidate;
            }
        }
    }

    /// Pohlig-Hellman over the factorization of `p^h - 1`, with
    /// baby-step/giant-step inside each prime-order subgroup.
    pub fn discrete_log(
        &self,
        g: &PrimeFieldPoly,
        e: &PrimeFieldPoly,
    ) -> Result<u64, ChorRivestError> {
        let e = e.rem(&self.modulus);
        if e.is_zero() {
            return Err(ChorRivestError::ZeroElement);
        }
        if let Some(&(l, _)) = self
            .order_factors
            .iter()
            .find(|&&(l, _)| l > DLOG_PRIME_LIMIT)
        {
            return Err(ChorRivestError::FactoringBudgetExceeded(format!(
                "p^h - 1 has prime factor {l} above {DLOG_PRIME_LIMIT}"
            )));
        }

        let mut residues = Vec::with_capacity(self.order_factors.len());
        for &(l, k) in &self.order_factors {
            let lk = l.pow(k);
            let cofactor = self.order / lk;
            let g1 = self.pow(g, cofactor);
            let e1 = self.pow(&e, cofactor);
            let gamma = self.pow(&g1, lk / l);
            let mut x = 0u64;
            let mut l_j = 1u64;
            for j in 0..k {
                let shifted = self.mul(&e1, &self.pow(&g1, (lk - x) % lk));
                let target = self.pow(&shifted, l.pow(k - 1 - j));
                let digit = self.subgroup_log(&gamma, &target, l).ok_or_else(|| {
                    ChorRivestError::BadParameters("base is not a generator".into())
                })?;
                x += digit * l_j;
                l_j *= l;
            }
            residues.push((x, lk));
        }
        let x = crt(&residues);
        if self.pow(g, x) != e {
            return Err(ChorRivestError::BadParameters(
                "base is not a generator".into(),
            ));
        }
        Ok(x)
    }

    /// Log of `target` to a base of prime order `l`.
    fn subgroup_log(&self, base: &PrimeFieldPoly, target: &PrimeFieldPoly, l: u64) -> Option<u64> {
        if l <= 64 {
            let mut acc = self.one();
            for i in 0..l {
                if &acc == target {
                    return Some(i);
                }
                acc = self.mul(&acc, base);
            }
            return None;
        }
        let m = (l as f64).sqrt().ceil() as u64;
        let mut table = HashMap::with_capacity(m as usize);
        let mut acc = self.one();
        for j in 0..m {
            table.entry(self.index(&acc)).or_insert(j);
            acc = self.mul(&acc, base);
        }
        let giant = self.pow(base, l - m % l);
        let mut gamma = target.clone();
        for i in 0..=m {
            if let Some(&j) = table.get(&self.index(&gamma)) {
                return Some((i * m + j) % l);
            }
            gamma = self.mul(&gamma, &giant);
        }
        None
    }
}

/// `p^h`, provided it fits in 64 bits.
pub(crate) fn field_size(p: u64, h: usize) -> Result<u64, ChorRivestError> {
    u32::try_from(h)
        .ok()
        .and_then(|h| p.checked_pow(h))
        .ok_or_else(|| ChorRivestError::BadParameters(format!("{p}^{h} exceeds 64 bits")))
}

fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u128 = 0;
    let mut m: u128 = 1;
    for &(a, n) in residues {
        let (a, n) = (a as u128, n as u128);
        let diff = (a + n - x % n) % n;
        let t = diff * inv_mod_u128(m % n, n) % n;
        x += m * t;
        m *= n;
    }
    x as u64
}

fn inv_mod_u128(a: u128, n: u128) -> u128 {
    if n == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(n as i128) as u128
}

pub fn find_primitive(
    p: u64,
    h: usize,
    f: &PrimeFieldPoly,
    seed: u64,
) -> Result<PrimeFieldPoly, ChorRivestError> {
    let field = GaloisField::new(p, f)?;
    if field.degree() != h {
        return Err(ChorRivestError::BadParameters(format!(
            "modulus has degree {}, expected {h}",
            field.degree()
        )));
    }
    Ok(field.random_primitive(&mut ChaCha8Rng::seed_from_u64(seed)))
}

pub fn discrete_log(
    g: &PrimeFieldPoly,
    e: &PrimeFieldPoly,
    p: u64,
    h: usize,
    f: &PrimeFieldPoly,
) -> Result<u64, ChorRivestError> {
    let field = GaloisField::new(p, f)?;
    if field.degree() != h {
        return Err(ChorRivestError::BadParameters(format!(
            "modulus has degree {}, expected {h}",
            field.degree()
        )));
    }
    field.discrete_log(g, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, c: &[u64]) -> PrimeFieldPoly {
        PrimeFieldPoly::new(p, c.to_vec())
    }

    fn f9() -> GaloisField {
        GaloisField::new(3, &poly(3, &[1, 0, 1])).unwrap()
    }

    #[test]
    fn mul_mod_examples() {
        let f = poly(3, &[1, 0, 1]);
        let x = poly(3, &[0, 1]);
        let b = poly(3, &[2, 1]);
        assert_eq!(poly_mul_mod(&poly(3, &[1]), &b, &f, 3).unwrap(), b);
        assert_eq!(poly_mul_mod(&x, &x, &f, 3).unwrap(), poly(3, &[2]));
        assert!(poly_mul_mod(&PrimeFieldPoly::zero(3), &b, &f, 3)
            .unwrap()
            .is_zero());
        assert!(matches!(
            poly_mul_mod(&poly(3, &[0, 0, 1]), &b, &f, 3),
            Err(ChorRivestError::DegreeOverflow {
                degree: 2,
                limit: 2
            })
        ));
        assert_eq!(
            poly_mul_mod(&x, &x, &poly(3, &[1, 0, 2]), 3),
            Err(ChorRivestError::NotMonic)
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&poly(3, &[1, 0, 1]), 3).unwrap());
        assert!(!is_irreducible(&poly(5, &[1, 0, 1]), 5).unwrap());
        assert!(!is_irreducible(&poly(3, &[0, 0, 1]), 3).unwrap());
        assert_eq!(
            is_irreducible(&poly(3, &[1, 0, 2]), 3),
            Err(ChorRivestError::NotMonic)
        );
    }

    /// Irreducible iff no monic factor of degree 1..=h/2 divides it.
    fn irreducible_by_division(f: &PrimeFieldPoly, p: u64) -> bool {
        let h = f.degree().unwrap();
        for d in 1..=h / 2 {
            for idx in 0..p.pow(d as u32) {
                let mut coeffs = Vec::new();
                let mut v = idx;
                for _ in 0..d {
                    coeffs.push(v % p);
                    v /= p;
                }
                coeffs.push(1);
                if f.rem(&PrimeFieldPoly::new(p, coeffs)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for (p, h) in [(2u64, 4usize), (3, 3), (3, 4), (5, 2), (2, 6)] {
            for idx in 0..p.pow(h as u32) {
                let mut coeffs = Vec::new();
                let mut v = idx;
                for _ in 0..h {
                    coeffs.push(v % p);
                    v /= p;
                }
                coeffs.push(1);
                let f = PrimeFieldPoly::new(p, coeffs);
                assert_eq!(
                    is_irreducible(&f, p).unwrap(),
                    irreducible_by_division(&f, p),
                    "{f} over Z_{p}"
                );
            }
        }
    }

    #[test]
    fn random_irreducible_examples() {
        let f = random_irreducible(3, 2, 1).unwrap();
        assert_eq!(f.degree(), Some(2));
        assert!(is_irreducible(&f, 3).unwrap());
        assert!(matches!(
            random_irreducible(4, 2, 1),
            Err(ChorRivestError::BadParameters(_))
        ));
        let lin = random_irreducible(2, 1, 9).unwrap();
        assert!(lin == poly(2, &[0, 1]) || lin == poly(2, &[1, 1]));
    }

    #[test]
    fn primitive_examples() {
        let field = f9();
        let g = poly(3, &[1, 1]);
        assert!(field.is_primitive(&g));
        assert_eq!(field.pow(&g, 2), poly(3, &[0, 2]));
        assert_eq!(field.pow(&g, 4), poly(3, &[2]));
        assert!(field.pow(&g, 8).is_one());
        assert!(!field.is_primitive(&poly(3, &[2])));
        let found = find_primitive(3, 2, field.modulus(), 5).unwrap();
        assert!(field.is_primitive(&found));
    }

    #[test]
    fn dlog_examples() {
        let field = f9();
        let g = poly(3, &[1, 1]);
        assert_eq!(field.discrete_log(&g, &field.one()).unwrap(), 0);
        assert_eq!(field.discrete_log(&g, &g).unwrap(), 1);
        assert_eq!(
            discrete_log(&g, &poly(3, &[0, 2]), 3, 2, field.modulus()).unwrap(),
            2
        );
        assert_eq!(
            field.discrete_log(&g, &PrimeFieldPoly::zero(3)),
            Err(ChorRivestError::ZeroElement)
        );
    }

    #[test]
    fn dlog_large_prime_subgroup() {
        // 13^5 - 1 = 2^2 * 3 * 30941, exercising the baby-step table
        let f = random_irreducible(13, 5, 3).unwrap();
        let field = GaloisField::new(13, &f).unwrap();
        assert_eq!(field.group_order(), 371_292);
        let g = field.random_primitive(&mut ChaCha8Rng::seed_from_u64(4));
        for e in [0u64, 1, 30_940, 30_941, 200_000, 371_291] {
            let target = field.pow(&g, e);
            assert_eq!(field.discrete_log(&g, &target).unwrap(), e);
        }
    }

    #[test]
    fn index_roundtrip() {
        let field = f9();
        for i in 0..9 {
            assert_eq!(field.index(&field.from_index(i)), i);
        }
    }

    #[test]
    fn crt_combines() {
        assert_eq!(crt(&[(2, 3), (3, 5), (2, 7)]), 23);
        assert_eq!(crt(&[(0, 1)]), 0);
    }
}
