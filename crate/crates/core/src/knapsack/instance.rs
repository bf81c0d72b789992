use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{add_mod, BitVector, KnapsackError};

/// A knapsack vector `B` over `Z_r` together with a target `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackInstance {
    r: u64,
    b: Vec<u64>,
    s: u64,
}

/// On-disk shape: `{"r": <uint>, "s": <uint>, "b": [<uint>, ...]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    r: u64,
    s: u64,
    b: Vec<u64>,
}

#[derive(Debug, Error)]
pub enum InstanceFileError {
    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid instance: {0}")]
    Invalid(#[from] KnapsackError),
}

impl KnapsackInstance {
    pub fn new(b: Vec<u64>, s: u64, r: u64) -> Result<Self, KnapsackError> {
        if r < 2 {
            return Err(KnapsackError::ModulusTooSmall(r));
        }
        if b.is_empty() {
            return Err(KnapsackError::EmptyVector);
        }
        if let Some((i, &v)) = b.iter().enumerate().find(|(_, &v)| v >= r) {
            return Err(KnapsackError::ResidueOutOfRange {
                field: format!("b[{i}]"),
                value: v,
                modulus: r,
            });
        }
        if s >= r {
            return Err(KnapsackError::ResidueOutOfRange {
                field: "s".into(),
                value: s,
                modulus: r,
            });
        }
        Ok(KnapsackInstance { r, b, s })
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceFileError> {
        let raw: InstanceFile = serde_json::from_str(text)?;
        Ok(KnapsackInstance::new(raw.b, raw.s, raw.r)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&InstanceFile {
            r: self.r,
            s: self.s,
            b: self.b.clone(),
        })
        .expect("instance serialization is infallible")
    }

    pub fn modulus(&self) -> u64 {
        self.r
    }

    pub fn target(&self) -> u64 {
        self.s
    }

    pub fn weights(&self) -> &[u64] {
        &self.b
    }

    pub fn dimension(&self) -> usize {
        self.b.len()
    }

    /// `sum x_i b_i mod r` for a raw `n`-bit value.
    pub(crate) fn subset_sum_raw(&self, value: u64) -> u64 {
        let n = self.b.len();
        self.b
            .iter()
            .enumerate()
            .filter(|(i, _)| (value >> (n - 1 - i)) & 1 == 1)
            .fold(0, |acc, (_, &bi)| add_mod(acc, bi, self.r))
    }

    /// `sum x_i b_i mod r`.
    pub fn subset_sum(&self, x: &BitVector) -> Result<u64, KnapsackError> {
        self.check_width(x)?;
        Ok(self.subset_sum_raw(x.value()))
    }

    pub fn is_solution(&self, x: &BitVector) -> Result<bool, KnapsackError> {
        Ok(self.subset_sum(x)? == self.s)
    }

    /// Residue sums for every `n`-bit value, indexed by value.
    pub(crate) fn subset_sum_table(&self) -> Vec<u64> {
        let n = self.b.len();
        let mut table = vec![0u64; 1 << n];
        // low bits first, so every v < bit is already filled
        for i in (0..n).rev() {
            // coordinate i owns bit n-1-i
            let bit = 1usize << (n - 1 - i);
            for v in 0..bit {
                table[v | bit] = add_mod(table[v], self.b[i], self.r);
            }
        }
        table
    }

    pub(crate) fn check_width(&self, x: &BitVector) -> Result<(), KnapsackError> {
        if x.width() != self.b.len() {
            Err(KnapsackError::WidthMismatch {
                expected: self.b.len(),
                actual: x.width(),
            })
        } else {
            Ok(())
        }
    }
}

/// `n / log2(max b_i)`.
pub fn density(b: &[u64]) -> Result<f64, KnapsackError> {
    let max = b.iter().copied().max().unwrap_or(0);
    if max < 2 {
        return Err(KnapsackError::DegenerateVector);
    }
    Ok(b.len() as f64 / (max as f64).log2())
}
