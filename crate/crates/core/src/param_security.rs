//! Parameter audits for Chor-Rivest `(p, h)` and knapsacks over `Z_r`.
//!
//! The quantum criteria are stated asymptotically as `4^p / (p^h - 1) >
//! O(2^p)` and `r < O(2^n)`. Here the hidden constant is pinned to 1 and
//! the inequality is strict, so a knapsack over `Z_r` is secure exactly
//! when `r < 2^n` and a Chor-Rivest pair exactly when
//! `4^p > 2^p (p^h - 1)`. Every comparison is done on exact integers.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{decimal_string, fraction_string};
use crate::nt::{factor_partial, is_prime_u64, FactorBudget};

/// Constant hidden in the `O(2^n)` thresholds.
pub const THRESHOLD_CONSTANT: u32 = 1;

/// Default ceiling for the greatest prime factor of `p^h - 1`.
pub const GPF_BOUND: u64 = 10_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("DegenerateModulus: p^h - 1 = 0")]
    DegenerateModulus,
    #[error("InvalidParameters: {0}")]
    InvalidParameters(String),
}

/// The classical conditions on `(p, h)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FiveConditions {
    pub p_prime: bool,
    pub h_prime: bool,
    pub h_le_p: bool,
    pub h_in_11_31: bool,
    /// `10^44 < p^h - 1 < 10^60`.
    pub size_window: bool,
}

impl FiveConditions {
    pub fn all(&self) -> bool {
        self.p_prime && self.h_prime && self.h_le_p && self.h_in_11_31 && self.size_window
    }
}

pub fn check_fc(p: u64, h: u32) -> FiveConditions {
    let size = BigUint::from(p).pow(h);
    let size_minus_1 = if size.is_zero() {
        BigUint::zero()
    } else {
        size - 1u32
    };
    let ten = BigUint::from(10u32);
    FiveConditions {
        p_prime: is_prime_u64(p),
        h_prime: is_prime_u64(h as u64),
        h_le_p: h as u64 <= p,
        h_in_11_31: (11..=31).contains(&h),
        size_window: ten.pow(44) < size_minus_1 && size_minus_1 < ten.pow(60),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GpfStatus {
    /// Every prime factor is at most the bound. `largest_known` is the
    /// largest prime found; a composite cofactor below the bound may
    /// remain unsplit.
    Satisfied {
        #[serde(serialize_with = "as_string")]
        largest_known: BigUint,
    },
    /// Some prime factor exceeds the bound.
    Violated {
        #[serde(serialize_with = "as_string")]
        witness: BigUint,
    },
    /// A composite cofactor above the bound could not be split in budget.
    Unknown {
        #[serde(serialize_with = "as_string_vec")]
        unresolved: Vec<BigUint>,
    },
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn as_string_vec<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Decides whether the greatest prime factor of `p^h - 1` is at most
/// `bound`.
pub fn gpf_bound_check(p: u64, h: u32, bound: &BigUint, budget: FactorBudget) -> GpfStatus {
    let size = BigUint::from(p).pow(h);
    if size <= BigUint::one() {
        return GpfStatus::Satisfied {
            largest_known: BigUint::one(),
        };
    }
    let n = size - 1u32;
    let factors = factor_partial(&n, budget);
    if let Some(big) = factors.primes.iter().map(|(q, _)| q).find(|q| *q > bound) {
        return GpfStatus::Violated {
            witness: big.clone(),
        };
    }
    let open: Vec<BigUint> = factors
        .unresolved
        .iter()
        .filter(|c| *c > bound)
        .cloned()
        .collect();
    if !open.is_empty() {
        return GpfStatus::Unknown { unresolved: open };
    }
    GpfStatus::Satisfied {
        largest_known: factors
            .largest_prime()
            .cloned()
            .unwrap_or_else(BigUint::one),
    }
}

/// `4^p / (p^h - 1)`, exact.
pub fn quantum_ratio(p: u64, h: u32) -> Result<BigRational, AuditError> {
    let size = BigUint::from(p).pow(h);
    if size <= BigUint::one() {
        return Err(AuditError::DegenerateModulus);
    }
    let four_p = BigUint::from(4u32).pow(checked_exponent(p)?);
    Ok(BigRational::new(
        BigInt::from(four_p),
        BigInt::from(size - 1u32),
    ))
}

fn checked_exponent(p: u64) -> Result<u32, AuditError> {
    u32::try_from(p)
        .ok()
        .filter(|&p| p <= 1 << 20)
        .ok_or_else(|| AuditError::InvalidParameters(format!("p = {p} is too large to audit")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecurityReport {
    pub p: u64,
    pub h: u32,
    pub fc: FiveConditions,
    pub gpf_bound: BigUint,
    pub gpf_status: GpfStatus,
    /// `4^p / (p^h - 1)`.
    pub quantum_ratio: BigRational,
    /// `2^p`.
    pub quantum_threshold: BigUint,
    /// `quantum_ratio > quantum_threshold`.
    pub quantum_secure: bool,
    /// `1 / (2 * quantum_ratio)` when not quantum secure.
    pub break_probability_bound: Option<BigRational>,
}

/// Overall call for a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Secure,
    Insecure,
    Indeterminate,
}

impl SecurityReport {
    /// Insecure when a classical condition fails, the prime-factor bound is
    /// violated or the quantum test fails; indeterminate when only the
    /// prime-factor bound is undecided.
    pub fn verdict(&self) -> Verdict {
        match (&self.gpf_status, self.fc.all() && self.quantum_secure) {
            (_, false) | (GpfStatus::Violated { .. }, _) => Verdict::Insecure,
            (GpfStatus::Unknown { .. }, true) => Verdict::Indeterminate,
            (GpfStatus::Satisfied { .. }, true) => Verdict::Secure,
        }
    }

    pub fn ratio_display(&self) -> String {
        decimal_string(&self.quantum_ratio, 1)
    }

    /// `"1/<2 * ratio to one decimal>"`.
    pub fn break_probability_display(&self) -> Option<String> {
        self.break_probability_bound.as_ref().map(|_| {
            format!(
                "1/{}",
                decimal_string(&(&self.quantum_ratio * BigInt::from(2)), 1)
            )
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "h": self.h,
            "fc": self.fc,
            "fc_all": self.fc.all(),
            "gpf_bound": self.gpf_bound.to_string(),
            "gpf": self.gpf_status,
            "quantum_ratio": fraction_string(&self.quantum_ratio),
            "quantum_ratio_decimal": self.ratio_display(),
            "quantum_threshold": self.quantum_threshold.to_string(),
            "threshold_constant": THRESHOLD_CONSTANT,
            "threshold_inequality": "strict",
            "quantum_secure": self.quantum_secure,
            "break_probability_bound": self.break_probability_bound.as_ref().map(fraction_string),
            "break_probability_bound_display": self.break_probability_display(),
            "verdict": self.verdict(),
        })
    }
}

pub fn chor_rivest_quantum_audit(p: u64, h: u32) -> Result<SecurityReport, AuditError> {
    chor_rivest_quantum_audit_with(p, h, &BigUint::from(GPF_BOUND), FactorBudget::default())
}

pub fn chor_rivest_quantum_audit_with(
    p: u64,
    h: u32,
    gpf_bound: &BigUint,
    budget: FactorBudget,
) -> Result<SecurityReport, AuditError> {
    let ratio = quantum_ratio(p, h)?;
    let threshold = BigUint::from(2u32).pow(checked_exponent(p)?);
    let quantum_secure = ratio > BigRational::from_integer(BigInt::from(threshold.clone()));
    let break_probability_bound = (!quantum_secure).then(|| (&ratio * BigInt::from(2)).recip());
    Ok(SecurityReport {
        p,
        h,
        fc: check_fc(p, h),
        gpf_bound: gpf_bound.clone(),
        gpf_status: gpf_bound_check(p, h, gpf_bound, budget),
        quantum_ratio: ratio,
        quantum_threshold: threshold,
        quantum_secure,
        break_probability_bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZrAuditReport {
    pub n: u32,
    pub r: BigUint,
    /// `4^n / r`.
    pub ratio: BigRational,
    /// `2^n`.
    pub threshold: BigUint,
    pub secure: bool,
}

impl ZrAuditReport {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "r": self.r.to_string(),
            "ratio": fraction_string(&self.ratio),
            "ratio_decimal": decimal_string(&self.ratio, 1),
            "threshold": self.threshold.to_string(),
            "threshold_constant": THRESHOLD_CONSTANT,
            "threshold_inequality": "strict",
            "secure": self.secure,
            "verdict": if self.secure { Verdict::Secure } else { Verdict::Insecure },
        })
    }
}

/// Secure iff `4^n / r > 2^n`, i.e. `r < 2^n`.
pub fn knapsack_zr_audit(n: u32, r: &BigUint) -> Result<ZrAuditReport, AuditError> {
    if n == 0 {
        return Err(AuditError::InvalidParameters("n must be at least 1".into()));
    }
    if r < &BigUint::from(2u32) {
        return Err(AuditError::InvalidParameters("r must be at least 2".into()));
    }
    let four_n = BigUint::from(4u32).pow(n);
    let threshold = BigUint::from(2u32).pow(n);
    let secure = four_n > r * &threshold;
    Ok(ZrAuditReport {
        n,
        r: r.clone(),
        ratio: BigRational::new(BigInt::from(four_n), BigInt::from(r.clone())),
        threshold,
        secure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fc_examples() {
        assert!(check_fc(109, 29).all());
        assert!(!check_fc(4, 3).p_prime);
        let fc = check_fc(109, 37);
        assert!(!fc.h_in_11_31);
        assert!(fc.p_prime && fc.h_prime && fc.h_le_p);
    }

    #[test]
    fn fc_size_window_edges() {
        // 10^44 - 1 is not above 10^44; 10^61 - 1 is not below 10^60
        assert!(check_fc(10, 45).size_window);
        assert!(!check_fc(10, 44).size_window);
        assert!(check_fc(10, 60).size_window);
        assert!(!check_fc(10, 61).size_window);
    }

    #[test]
    fn gpf_examples() {
        let bound = BigUint::from(GPF_BOUND);
        assert_eq!(
            gpf_bound_check(7, 4, &bound, FactorBudget::default()),
            GpfStatus::Satisfied {
                largest_known: BigUint::from(5u32)
            }
        );
        assert_eq!(
            gpf_bound_check(3, 2, &bound, FactorBudget::default()),
            GpfStatus::Satisfied {
                largest_known: BigUint::from(2u32)
            }
        );
        let tiny = FactorBudget {
            trial_limit: 100,
            rho_iterations: 0,
        };
        assert!(matches!(
            gpf_bound_check(109, 29, &bound, tiny),
            GpfStatus::Unknown { .. }
        ));
    }

    #[test]
    fn gpf_small_bound_violated() {
        // 7^4 - 1 = 2^5 * 3 * 5^2
        assert_eq!(
            gpf_bound_check(7, 4, &BigUint::from(4u32), FactorBudget::default()),
            GpfStatus::Violated {
                witness: BigUint::from(5u32)
            }
        );
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(
            quantum_ratio(2, 1).unwrap(),
            BigRational::from_integer(16.into())
        );
        assert_eq!(quantum_ratio(1, 1), Err(AuditError::DegenerateModulus));
        assert_eq!(
            decimal_string(&quantum_ratio(109, 29).unwrap(), 1),
            "3460753.1"
        );
    }

    #[test]
    fn audit_reproduces_break_probability() {
        let r = chor_rivest_quantum_audit_with(
            109,
            29,
            &BigUint::from(GPF_BOUND),
            FactorBudget {
                trial_limit: 100,
                rho_iterations: 0,
            },
        )
        .unwrap();
        assert!(!r.quantum_secure);
        assert_eq!(r.ratio_display(), "3460753.1");
        assert_eq!(r.break_probability_display().unwrap(), "1/6921506.2");
        assert_eq!(r.verdict(), Verdict::Insecure);
    }

    #[test]
    fn small_h_is_quantum_secure() {
        let r = chor_rivest_quantum_audit_with(
            109,
            2,
            &BigUint::from(GPF_BOUND),
            FactorBudget::default(),
        )
        .unwrap();
        assert!(r.quantum_secure);
        assert!(r.break_probability_bound.is_none());
        assert_eq!(
            r.quantum_ratio > BigRational::from_integer(BigInt::from(r.quantum_threshold.clone())),
            r.quantum_secure
        );
        // classical conditions still fail for h = 2
        assert_eq!(r.verdict(), Verdict::Insecure);
    }

    #[test]
    fn zr_examples() {
        let audit = |n, r: u64| knapsack_zr_audit(n, &BigUint::from(r)).unwrap().secure;
        assert!(audit(10, 512));
        assert!(!audit(10, 1024));
        assert!(!audit(10, 2048));
        assert!(audit(10, 1023));
        assert!(knapsack_zr_audit(0, &BigUint::from(5u32)).is_err());
        assert!(knapsack_zr_audit(3, &BigUint::one()).is_err());
    }
}
