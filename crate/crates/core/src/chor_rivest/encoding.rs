use num_bigint::BigUint;
use num_traits::One;

use super::ChorRivestError;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * (n - k + i) / i;
    }
    acc
}

/// A 0/1 vector `(M_0, ..., M_{p-1})` with exactly `h` ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstantWeightVector {
    bits: Vec<bool>,
}

impl ConstantWeightVector {
    pub fn new(bits: Vec<bool>, h: usize) -> Result<Self, ChorRivestError> {
        let weight = bits.iter().filter(|&&b| b).count();
        if weight != h {
            return Err(ChorRivestError::WrongWeight {
                expected: h,
                actual: weight,
            });
        }
        Ok(ConstantWeightVector { bits })
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }
}

/// Greedy combinatorial encoding of `0 <= m < C(p, h)`.
pub fn encode_message(
    m: &BigUint,
    p: usize,
    h: usize,
) -> Result<ConstantWeightVector, ChorRivestError> {
    if m >= &binomial(p as u64, h as u64) {
        return Err(ChorRivestError::MessageOutOfRange);
    }
    let mut m = m.clone();
    let mut l = h as u64;
    let mut bits = vec![false; p];
    for i in 1..=p {
        let c = binomial((p - i) as u64, l);
        if m >= c {
            bits[i - 1] = true;
            m -= c;
            l -= 1;
        }
    }
    ConstantWeightVector::new(bits, h)
}

pub fn decode_message(
    v: &ConstantWeightVector,
    p: usize,
    h: usize,
) -> Result<BigUint, ChorRivestError> {
    if v.len() != p {
        return Err(ChorRivestError::BadParameters(format!(
            "vector has length {}, expected {p}",
            v.len()
        )));
    }
    if v.weight() != h {
        return Err(ChorRivestError::WrongWeight {
            expected: h,
            actual: v.weight(),
        });
    }
    let mut m = BigUint::ZERO;
    let mut l = h as u64;
    for i in 1..=p {
        if v.bits[i - 1] {
            m += binomial((p - i) as u64, l);
            l -= 1;
        }
    }
    Ok(m)
}
