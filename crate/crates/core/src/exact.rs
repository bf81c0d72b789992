//! Rendering of exact rationals.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `"num/den"` in lowest terms, or just `"num"` for integers.
pub fn fraction_string(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Decimal rendering rounded half away from zero to `places` digits.
pub fn decimal_string(q: &BigRational, places: u32) -> String {
    let scale = BigInt::from(10).pow(places);
    let scaled = q.abs() * BigRational::from_integer(scale.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let rounded = (scaled + half).floor().to_integer();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if q.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        let frac = frac_part.to_string();
        let pad = "0".repeat(places as usize - frac.len());
        format!("{sign}{int_part}.{pad}{frac}")
    }
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.numer().sign() == Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}
