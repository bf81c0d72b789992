use std::fmt;

use super::{KnapsackError, MAX_WIDTH};

/// An `n`-bit 0/1 vector `(x_1, ..., x_n)` with integer value
/// `sum 2^(n-i) x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    width: usize,
    value: u64,
}

impl BitVector {
    pub fn new(value: u64, width: usize) -> Result<Self, KnapsackError> {
        if width > MAX_WIDTH || (width < 64 && value >> width != 0) {
            return Err(KnapsackError::InvalidBitVector { value, width });
        }
        Ok(BitVector { width, value })
    }

    pub fn zero(width: usize) -> Self {
        BitVector { width, value: 0 }
    }

    /// Builds a vector from `(x_1, ..., x_n)`, most significant first.
    pub fn from_bits(bits: &[bool]) -> Result<Self, KnapsackError> {
        if bits.len() > MAX_WIDTH {
            return Err(KnapsackError::InvalidBitVector {
                value: 0,
                width: bits.len(),
            });
        }
        let value = bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
        Ok(BitVector {
            width: bits.len(),
            value,
        })
    }

    pub(crate) fn from_raw(value: u64, width: usize) -> Self {
        debug_assert!(width <= MAX_WIDTH && value >> width == 0);
        BitVector { width, value }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// Coordinate `x_{i+1}`.
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.width, "coordinate {i} out of range");
        (self.value >> (self.width - 1 - i)) & 1 == 1
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.width).map(move |i| self.bit(i))
    }

    pub fn weight(&self) -> u32 {
        self.value.count_ones()
    }

    pub fn xor(&self, other: &BitVector) -> Result<BitVector, KnapsackError> {
        if self.width != other.width {
            return Err(KnapsackError::WidthMismatch {
                expected: self.width,
                actual: other.width,
            });
        }
        Ok(BitVector {
            width: self.width,
            value: self.value ^ other.value,
        })
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// A coefficient vector over the alphabet `{-1, 0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedVector {
    coeffs: Vec<i8>,
}

impl ExtendedVector {
    pub const ALPHABET: [i8; 4] = [-1, 0, 1, 2];

    pub fn new(coeffs: Vec<i8>) -> Option<Self> {
        coeffs
            .iter()
            .all(|c| Self::ALPHABET.contains(c))
            .then_some(ExtendedVector { coeffs })
    }

    pub fn coeffs(&self) -> &[i8] {
        &self.coeffs
    }

    /// The per-coordinate value `2 (x_i xor y_i) - x_i` that links the
    /// `f` oracle to the extended problem.
    pub fn from_pair(x: &BitVector, y: &BitVector) -> Result<Self, KnapsackError> {
        let z = x.xor(y)?;
        let coeffs = x
            .bits()
            .zip(z.bits())
            .map(|(xi, zi)| 2 * zi as i8 - xi as i8)
            .collect();
        Ok(ExtendedVector { coeffs })
    }

    /// `sum x'_i b_i mod r`.
    pub fn dot_mod(&self, b: &[u64], r: u64) -> u64 {
        let total: i128 = self
            .coeffs
            .iter()
            .zip(b)
            .map(|(&c, &bi)| c as i128 * bi as i128)
            .sum();
        total.rem_euclid(r as i128) as u64
    }
}
