use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::encoding::{binomial, decode_message, encode_message, ConstantWeightVector};
use super::field::{field_size, random_irreducible_with, GaloisField};
use super::poly::PrimeFieldPoly;
use super::ChorRivestError;
use crate::nt::is_prime_u64;

/// `{"p", "h", "b": [...]}` with `b_i = a_{pi(i)} + d mod (p^h - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChorRivestPublicKey {
    pub p: u64,
    pub h: usize,
    pub b: Vec<u64>,
}

/// `{"p", "h", "f", "g", "pi", "d"}`; polynomials are low-to-high
/// coefficient lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChorRivestPrivateKey {
    pub p: u64,
    pub h: usize,
    pub f: Vec<u64>,
    pub g: Vec<u64>,
    pub pi: Vec<u64>,
    pub d: u64,
}

impl ChorRivestPublicKey {
    /// `p^h - 1`.
    pub fn modulus(&self) -> Result<u64, ChorRivestError> {
        Ok(field_size(self.p, self.h)? - 1)
    }

    pub fn validate(&self) -> Result<(), ChorRivestError> {
        let modulus = self.modulus()?;
        if self.b.len() as u64 != self.p {
            return Err(ChorRivestError::MalformedKey(format!(
                "public key has {} weights, expected {}",
                self.b.len(),
                self.p
            )));
        }
        if let Some(i) = self.b.iter().position(|&v| v >= modulus) {
            return Err(ChorRivestError::MalformedKey(format!(
                "b[{i}] is not below p^h - 1 = {modulus}"
            )));
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ChorRivestError> {
        let key: Self =
            serde_json::from_str(text).map_err(|e| ChorRivestError::MalformedKey(e.to_string()))?;
        key.validate()?;
        Ok(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("key serialization is infallible")
    }
}

impl ChorRivestPrivateKey {
    pub fn modulus_poly(&self) -> PrimeFieldPoly {
        PrimeFieldPoly::new(self.p, self.f.clone())
    }

    pub fn generator(&self) -> PrimeFieldPoly {
        PrimeFieldPoly::new(self.p, self.g.clone())
    }

    /// Rebuilds the field and checks every private-key invariant.
    pub fn field(&self) -> Result<GaloisField, ChorRivestError> {
        let f = self.modulus_poly();
        if f.degree() != Some(self.h) || !f.is_monic() {
            return Err(ChorRivestError::MalformedKey(format!(
                "f must be monic of degree {}",
                self.h
            )));
        }
        let field = GaloisField::new(self.p, &f)
            .map_err(|e| ChorRivestError::MalformedKey(e.to_string()))?;
        if self.g.iter().any(|&c| c >= self.p) || self.g.len() > self.h {
            return Err(ChorRivestError::MalformedKey(
                "g is not a reduced field element".into(),
            ));
        }
        if !field.is_primitive(&self.generator()) {
            return Err(ChorRivestError::MalformedKey("g is not primitive".into()));
        }
        let mut seen = vec![false; self.p as usize];
        if self.pi.len() != self.p as usize
            || !self.pi.iter().all(|&v| {
                (v as usize) < seen.len() && !std::mem::replace(&mut seen[v as usize], true)
            })
        {
            return Err(ChorRivestError::MalformedKey(
                "pi is not a permutation of 0..p".into(),
            ));
        }
        if self.d >= field.group_order() {
            return Err(ChorRivestError::MalformedKey(
                "d must lie in [0, p^h - 2]".into(),
            ));
        }
        Ok(field)
    }

    /// `a_i = log_g(x + i)`, recovered from the public weights as
    /// `b_{pi^-1(i)} - d`.
    pub fn logs(&self, public: &ChorRivestPublicKey) -> Result<Vec<u64>, ChorRivestError> {
        let modulus = public.modulus()?;
        let mut a = vec![0u64; self.p as usize];
        for (i, &target) in self.pi.iter().enumerate() {
            a[target as usize] = (public.b[i] + modulus - self.d) % modulus;
        }
        Ok(a)
    }

    pub fn from_json(text: &str) -> Result<Self, ChorRivestError> {
        let key: Self =
            serde_json::from_str(text).map_err(|e| ChorRivestError::MalformedKey(e.to_string()))?;
        key.field()?;
        Ok(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("key serialization is infallible")
    }
}

/// Key generation from a single 64-bit seed: irreducible `f`, primitive
/// `g`, `a_i = log_g(x + i)`, Fisher-Yates `pi`, uniform `d`.
pub fn keygen(
    p: u64,
    h: usize,
    seed: u64,
) -> Result<(ChorRivestPublicKey, ChorRivestPrivateKey), ChorRivestError> {
    if !is_prime_u64(p) {
        return Err(ChorRivestError::BadParameters(format!(
            "p = {p} is not prime"
        )));
    }
    if h < 2 || h as u64 > p {
        return Err(ChorRivestError::BadParameters(format!(
            "need 2 <= h <= p, got p = {p}, h = {h}"
        )));
    }
    field_size(p, h)?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_irreducible_with(p, h, &mut rng)?;
    let field = GaloisField::new(p, &f)?;
    let g = field.random_primitive(&mut rng);
    let logs = (0..p)
        .map(|i| field.discrete_log(&g, &field.shifted_x(i)))
        .collect::<Result<Vec<u64>, _>>()?;

    let mut pi: Vec<u64> = (0..p).collect();
    pi.shuffle(&mut rng);
    let modulus = field.group_order();
    let d = rng.random_range(0..modulus);
    let b = pi
        .iter()
        .map(|&j| ((logs[j as usize] as u128 + d as u128) % modulus as u128) as u64)
        .collect();

    let public = ChorRivestPublicKey { p, h, b };
    let private = ChorRivestPrivateKey {
        p,
        h,
        f: f.coeffs().to_vec(),
        g: g.coeffs().to_vec(),
        pi,
        d,
    };
    Ok((public, private))
}

/// `c = sum M_i b_i mod (p^h - 1)` for `M = encode(m)`.
pub fn encrypt(public: &ChorRivestPublicKey, m: &BigUint) -> Result<u64, ChorRivestError> {
    public.validate()?;
    let modulus = public.modulus()? as u128;
    let v = encode_message(m, public.p as usize, public.h)?;
    let c = v
        .ones()
        .fold(0u128, |acc, i| (acc + public.b[i] as u128) % modulus);
    Ok(c as u64)
}

pub fn decrypt(
    private: &ChorRivestPrivateKey,
    public: &ChorRivestPublicKey,
    c: u64,
) -> Result<BigUint, ChorRivestError> {
    if (private.p, private.h) != (public.p, public.h) {
        return Err(ChorRivestError::MalformedKey(
            "public and private keys disagree on (p, h)".into(),
        ));
    }
    let field = private.field()?;
    let modulus = field.group_order();
    if c >= modulus {
        return Err(ChorRivestError::MalformedCiphertext(format!(
            "ciphertext {c} is not below p^h - 1 = {modulus}"
        )));
    }
    let (p, h) = (private.p, private.h);

    let hd = (h as u128 * private.d as u128 % modulus as u128) as u64;
    let exponent = (c as u128 + modulus as u128 - hd as u128) % modulus as u128;
    let u = field.pow(&private.generator(), exponent as u64);
    let s = u.add(field.modulus());

    // s(x) = prod (x + t_j): the roots are -t_j
    let roots: Vec<u64> = (0..p).filter(|&x| s.eval(x) == 0).collect();
    if roots.len() != h {
        return Err(ChorRivestError::MalformedCiphertext(format!(
            "s(x) has {} distinct roots in Z_{p}, expected {h}",
            roots.len()
        )));
    }

    let mut inverse = vec![0usize; p as usize];
    for (i, &target) in private.pi.iter().enumerate() {
        inverse[target as usize] = i;
    }
    let mut bits = vec![false; p as usize];
    for root in roots {
        let t = (p - root) % p;
        bits[inverse[t as usize]] = true;
    }
    let v = ConstantWeightVector::new(bits, h)?;
    decode_message(&v, p as usize, h)
}

/// Number of distinct plaintexts, `C(p, h)`.
pub fn message_space(p: u64, h: usize) -> BigUint {
    binomial(p, h as u64)
}
