//! Nonnegative reals written in scientific notation with 17 significant digits.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Signed, Zero};

use crate::error::Error;

use super::ball::FixedBall;

/// Number of significant digits.
pub const SIGNIFICANT_DIGITS: u32 = 17;

/// `d.dddddddddddddddd × 10^e`, or zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SciDecimal {
    /// All 17 digits as one integer in `[10^16, 10^17)`, or 0.
    digits: u64,
    exponent: i64,
}

const LOW: u64 = 10_000_000_000_000_000;
const HIGH: u64 = 100_000_000_000_000_000;

impl SciDecimal {
    pub const ZERO: SciDecimal = SciDecimal { digits: 0, exponent: 0 };

    pub fn new(digits: u64, exponent: i64) -> Option<Self> {
        if digits == 0 {
            Some(Self::ZERO)
        } else if (LOW..HIGH).contains(&digits) {
            Some(SciDecimal { digits, exponent })
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.digits == 0
    }

    /// The value is `mantissa() · 10^exponent10()` exactly.
    pub fn mantissa(&self) -> u64 {
        self.digits
    }

    pub fn exponent10(&self) -> i64 {
        self.exponent - (SIGNIFICANT_DIGITS as i64 - 1)
    }

    /// Nearest double; infinite if out of range.
    pub fn to_f64(&self) -> f64 {
        self.to_string().parse().expect("scientific notation always parses")
    }

    /// `(numerator, denominator)` with the value equal to their quotient.
    pub fn as_ratio(&self) -> (BigUint, BigUint) {
        let ten = BigUint::from(10u32);
        let e = self.exponent10();
        if e >= 0 {
            (BigUint::from(self.digits) * Pow::pow(&ten, e as u64), BigUint::from(1u32))
        } else {
            (BigUint::from(self.digits), Pow::pow(&ten, (-e) as u64))
        }
    }

    /// Correctly rounded (ties away from zero) decimal for every real in the
    /// ball `(mid ± rad)·2^-bits`, or `None` if the ball straddles a rounding
    /// boundary or reaches below zero.
    pub(crate) fn from_ball(ball: &FixedBall, bits: u32) -> Option<Self> {
        if ball.mid.is_zero() && ball.rad.is_zero() {
            return Some(Self::ZERO);
        }
        let rad = BigInt::from(ball.rad.clone());
        let lo = &ball.mid - &rad;
        if !lo.is_positive() {
            return None;
        }
        let hi = &ball.mid + &rad;
        let a = round_scaled(lo.magnitude(), bits);
        let b = round_scaled(hi.magnitude(), bits);
        (a == b).then_some(a)
    }
}

/// Rounds `m · 2^-bits > 0` to 17 significant digits.
fn round_scaled(m: &BigUint, bits: u32) -> SciDecimal {
    let log2 = m.bits() as f64 - bits as f64;
    let mut e = (log2 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigUint::from(10u32);
    loop {
        let shift = SIGNIFICANT_DIGITS as i64 - 1 - e;
        let (num, den) = if shift >= 0 {
            (m * Pow::pow(&ten, shift as u64), BigUint::from(1u32) << bits)
        } else {
            (m.clone(), (BigUint::from(1u32) << bits) * Pow::pow(&ten, (-shift) as u64))
        };
        let d: BigUint = (num * 2u32 + &den) / (den * 2u32);
        if d >= BigUint::from(HIGH) {
            e += 1;
        } else if d < BigUint::from(LOW) {
            e -= 1;
        } else {
            let digits = u64::try_from(d).expect("17 digits fit in u64");
            return SciDecimal { digits, exponent: e };
        }
    }
}

impl fmt::Display for SciDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = format!("{:017}", self.digits);
        write!(f, "{}.{}e{}", &s[..1], &s[1..], self.exponent)
    }
}

impl FromStr for SciDecimal {
    type Err = Error;

    /// Exactly the [`Display`](fmt::Display) form: one digit, a point, 16
    /// digits, `e` and an exponent.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("{s:?} is not a 17-digit scientific decimal"));
        let (mant, exp) = s.trim().split_once(['e', 'E']).ok_or_else(bad)?;
        let (lead, frac) = mant.split_once('.').ok_or_else(bad)?;
        if lead.len() != 1 || frac.len() != 16 || !lead.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: u64 = format!("{lead}{frac}").parse().map_err(|_| bad())?;
        let exponent: i64 = exp.trim_start_matches('+').parse().map_err(|_| bad())?;
        if digits == 0 {
            return Ok(Self::ZERO);
        }
        SciDecimal::new(digits, exponent).ok_or_else(bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ball(mid: i64, rad: u64) -> FixedBall {
        FixedBall {
            mid: BigInt::from(mid),
            rad: BigUint::from(rad),
        }
    }

    #[test]
    fn display_matches_std_scientific() {
        for x in [1.0f64, 34.0, 0.00813, 6.02214076e23, 123456789.0, 1e-300, 9.99999999999999999] {
            let s = format!("{x:.16e}");
            let d: SciDecimal = s.parse().unwrap();
            assert_eq!(d.to_string(), s);
            assert_eq!(d.to_f64(), x);
        }
        assert_eq!(SciDecimal::ZERO.to_string(), format!("{:.16e}", 0.0));
        assert_eq!("0.0000000000000000e0".parse::<SciDecimal>().unwrap(), SciDecimal::ZERO);
    }

    #[test]
    fn parse_rejects_other_forms() {
        for s in ["1e5", "12.0000000000000000e1", "1.000000000000000e0", "1.0000000000000000", "-1.0000000000000000e0", "0.1000000000000000e1"] {
            assert!(s.parse::<SciDecimal>().is_err(), "{s}");
        }
    }

    #[test]
    fn rounding_from_balls() {
        // 3 · 2^-2 = 0.75
        let d = SciDecimal::from_ball(&ball(3, 0), 2).unwrap();
        assert_eq!(d.to_string(), "7.5000000000000000e-1");
        // 1/3 with a radius that keeps the digits determined
        let bits = 80;
        let third = (BigInt::from(1) << bits) / 3;
        let b = FixedBall {
            mid: third,
            rad: BigUint::from(4u32),
        };
        assert_eq!(SciDecimal::from_ball(&b, bits).unwrap().to_string(), "3.3333333333333333e-1");
        // a huge radius leaves the digits open
        let b = FixedBall {
            mid: (BigInt::from(1) << bits) / 3,
            rad: BigUint::from(1u64) << 40,
        };
        assert!(SciDecimal::from_ball(&b, bits).is_none());
        assert!(SciDecimal::from_ball(&ball(1, 2), 10).is_none());
        assert_eq!(SciDecimal::from_ball(&ball(0, 0), 10), Some(SciDecimal::ZERO));
        // large integer values
        let big = SciDecimal::from_ball(&ball(1 << 40, 0), 0).unwrap();
        assert_eq!(big.to_string(), "1.0995116277760000e12");
    }

    #[test]
    fn ratio_is_exact() {
        let d: SciDecimal = "1.2500000000000000e-2".parse().unwrap();
        let (n, q) = d.as_ratio();
        assert_eq!(n * 80u32, q);
        let d: SciDecimal = "1.0000000000000000e20".parse().unwrap();
        assert_eq!(d.as_ratio().0, BigUint::from(10u32).pow(20u32));
    }
}
