//! Midpoint-radius arithmetic used to evaluate the trigonometric formula with a
//! rigorous error bound, in double precision or in binary fixed point of any
//! width.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Unit roundoff of `f64`.
const U: f64 = f64::EPSILON / 2.0;
/// Inflation applied to every radius computed in floating point, so that the
/// rounding of the radius itself is covered.
const INFLATE: f64 = 1.0 + 8.0 * U;

/// `mid ± rad` in double precision.
#[derive(Debug, Clone, Copy)]
pub(crate) struct F64Ball {
    pub mid: f64,
    pub rad: f64,
}

impl F64Ball {
    pub fn exact(v: f64) -> Self {
        F64Ball { mid: v, rad: 0.0 }
    }

    pub fn mul(self, other: F64Ball) -> F64Ball {
        let mid = self.mid * other.mid;
        let rad = self.mid.abs() * other.rad + other.mid.abs() * self.rad + self.rad * other.rad + U * mid.abs();
        F64Ball { mid, rad: rad * INFLATE }
    }

    pub fn add(self, other: F64Ball) -> F64Ball {
        let mid = self.mid + other.mid;
        let rad = self.rad + other.rad + U * mid.abs();
        F64Ball { mid, rad: rad * INFLATE }
    }

    pub fn neg(self) -> F64Ball {
        F64Ball { mid: -self.mid, rad: self.rad }
    }

    pub fn powu(self, n: usize) -> F64Ball {
        let mut acc = F64Ball::exact(1.0);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// `sin(jπ/l)` and `cos(jπ/l)` for `0 ≤ j ≤ l/2` in double precision.
///
/// The argument `j·π/l` carries at most three roundings and the library sine and
/// cosine are assumed accurate to one ulp, which together stay below `8u` on
/// `[0, π/2]`.
pub(crate) fn f64_trig(j: usize, l: usize) -> (F64Ball, F64Ball) {
    let x = (j as f64) * std::f64::consts::PI / (l as f64);
    let rad = 8.0 * U;
    (F64Ball { mid: x.sin(), rad }, F64Ball { mid: x.cos(), rad })
}

/// Fixed-point ball: the real number `mid · 2^-bits` with error at most
/// `rad · 2^-bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct FixedBall {
    pub mid: BigInt,
    pub rad: BigUint,
}

/// Arithmetic context for [`FixedBall`] values with `bits` fractional bits.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Fixed {
    pub bits: u32,
}

impl Fixed {
    pub fn new(bits: u32) -> Self {
        Fixed { bits }
    }

    fn one_ulps(&self) -> BigInt {
        BigInt::one() << self.bits
    }

    pub fn zero(&self) -> FixedBall {
        FixedBall {
            mid: BigInt::zero(),
            rad: BigUint::zero(),
        }
    }

    pub fn one(&self) -> FixedBall {
        FixedBall {
            mid: self.one_ulps(),
            rad: BigUint::zero(),
        }
    }

    pub fn mul(&self, a: &FixedBall, b: &FixedBall) -> FixedBall {
        let prod = &a.mid * &b.mid;
        let mid = prod >> self.bits;
        let spread = a.mid.magnitude() * &b.rad + b.mid.magnitude() * &a.rad + &a.rad * &b.rad;
        let rad = ceil_shr(&spread, self.bits) + 1u32;
        FixedBall { mid, rad }
    }

    pub fn add(&self, a: &FixedBall, b: &FixedBall) -> FixedBall {
        FixedBall {
            mid: &a.mid + &b.mid,
            rad: &a.rad + &b.rad,
        }
    }

    pub fn neg(&self, a: &FixedBall) -> FixedBall {
        FixedBall {
            mid: -&a.mid,
            rad: a.rad.clone(),
        }
    }

    pub fn mul_int(&self, a: &FixedBall, m: u64) -> FixedBall {
        FixedBall {
            mid: &a.mid * m,
            rad: &a.rad * m,
        }
    }

    pub fn div_int(&self, a: &FixedBall, d: u64) -> FixedBall {
        let mid = a.mid.div_floor(&BigInt::from(d));
        let rad = a.rad.div_ceil(&BigUint::from(d)) + 1u32;
        FixedBall { mid, rad }
    }

    pub fn powu(&self, a: &FixedBall, mut n: usize) -> FixedBall {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `arctan(1/x)` for an integer `x ≥ 2` by its alternating series.
    fn atan_inv(&self, x: u64) -> FixedBall {
        let x2 = BigInt::from(x * x);
        // power = 2^bits / x^(2k+1), each division floors so its error stays below 2 ulps
        let mut power = self.one_ulps() / x;
        let mut sum = BigInt::zero();
        let mut terms: u64 = 0;
        let mut k: u64 = 0;
        while !power.is_zero() {
            let term = &power / (2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            terms += 1;
            k += 1;
            power /= &x2;
        }
        // three ulps per term plus the tail, which is below the last power
        FixedBall {
            mid: sum,
            rad: BigUint::from(3 * terms + 2),
        }
    }

    /// `π = 16·arctan(1/5) − 4·arctan(1/239)`.
    pub fn pi(&self) -> FixedBall {
        let a = self.mul_int(&self.atan_inv(5), 16);
        let b = self.mul_int(&self.atan_inv(239), 4);
        self.add(&a, &self.neg(&b))
    }

    /// `(sin(jπ/l), cos(jπ/l))` for `0 ≤ j ≤ l/2`, so the argument lies in
    /// `[0, π/2]`.
    pub fn trig(&self, pi: &FixedBall, j: usize, l: usize) -> (FixedBall, FixedBall) {
        debug_assert!(2 * j <= l);
        if j == 0 {
            return (self.zero(), self.one());
        }
        let x = self.div_int(&self.mul_int(pi, j as u64), l as u64);
        let sin = self.taylor(&x.mid, true);
        let cos = self.taylor(&x.mid, false);
        // both functions are 1-Lipschitz, so the argument error passes straight through
        (
            FixedBall {
                mid: sin.mid,
                rad: sin.rad + &x.rad,
            },
            FixedBall {
                mid: cos.mid,
                rad: cos.rad + &x.rad,
            },
        )
    }

    /// Taylor series of `sin` or `cos` at the exact fixed-point number `x`, which
    /// must lie in `[0, 1.6]`.
    ///
    /// With `e` the error of the previous term in ulps, the next term's error is
    /// at most `(5e/2 + 3)/d + 1` where `d` is the factorial step.
    fn taylor(&self, x: &BigInt, sine: bool) -> FixedBall {
        let x2 = (x * x) >> self.bits;
        let mut term = if sine { x.clone() } else { self.one_ulps() };
        let mut term_err: u64 = 0;
        let mut sum = term.clone();
        let mut total_err: u64 = 0;
        let mut k: u64 = 1;
        loop {
            let d = if sine { (2 * k) * (2 * k + 1) } else { (2 * k - 1) * (2 * k) };
            term = ((&term * &x2) >> self.bits) / d;
            term_err = (5 * term_err + 6).div_ceil(2 * d) + 1;
            total_err += term_err;
            if term.is_zero() {
                // alternating tail with decreasing terms: below the first omitted one
                total_err += term_err + 1;
                break;
            }
            if k % 2 == 1 {
                sum -= &term;
            } else {
                sum += &term;
            }
            k += 1;
        }
        FixedBall {
            mid: sum,
            rad: BigUint::from(total_err),
        }
    }
}

/// `ceil(x / 2^s)`.
fn ceil_shr(x: &BigUint, s: u32) -> BigUint {
    let q = x >> s;
    if (&q << s) == *x {
        q
    } else {
        q + 1u32
    }
}

/// `x · 2^e` as the nearest-ish `f64`, without overflowing on the way for very
/// wide integers.
pub(crate) fn scaled_to_f64(x: &BigInt, e: i64) -> f64 {
    let bits = x.bits() as i64;
    let shift = (bits - 64).max(0);
    let head = (x >> shift as u32).to_f64().unwrap_or(0.0);
    head * 2f64.powi((e + shift).clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Nearest integer to `num / den` for `den > 0`, ties rounding up.
pub(crate) fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let twice: BigInt = num * 2 + den;
    twice.div_floor(&(den * 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(fx: &Fixed, b: &FixedBall) -> f64 {
        scaled_to_f64(&b.mid, -(fx.bits as i64))
    }

    #[test]
    fn pi_is_accurate() {
        for bits in [60, 128, 300] {
            let fx = Fixed::new(bits);
            let pi = fx.pi();
            assert!((to_f64(&fx, &pi) - std::f64::consts::PI).abs() < 1e-15);
            assert!(pi.rad < BigUint::from(5000u32));
        }
        // 2^300 π truncated, against the decimal expansion via a 200-bit check
        let fx = Fixed::new(200);
        let pi = fx.pi();
        let digits = "3141592653589793238462643383279502884197169399375105820974944592307816406286";
        let reference = BigInt::parse_bytes(digits.as_bytes(), 10).unwrap();
        // pi·2^200 vs digits·2^200 / 10^75
        let scaled = (&reference << 200u32) / BigInt::from(10u32).pow(75);
        let diff = (&pi.mid - scaled).magnitude().clone();
        assert!(diff <= &pi.rad + 2u32, "diff {diff}");
    }

    #[test]
    fn trig_matches_std() {
        let fx = Fixed::new(128);
        let pi = fx.pi();
        for l in [3usize, 5, 7, 11, 25, 51] {
            for j in 0..=l / 2 {
                let (s, c) = fx.trig(&pi, j, l);
                let x = j as f64 * std::f64::consts::PI / l as f64;
                assert!((to_f64(&fx, &s) - x.sin()).abs() < 1e-15);
                assert!((to_f64(&fx, &c) - x.cos()).abs() < 1e-15);
                assert!(s.rad < BigUint::from(1000u32));
            }
        }
    }

    #[test]
    fn trig_identity_holds_within_radius() {
        let fx = Fixed::new(160);
        let pi = fx.pi();
        for l in [3usize, 7, 13] {
            for j in 1..=l / 2 {
                let (s, c) = fx.trig(&pi, j, l);
                let one = fx.add(&fx.mul(&s, &s), &fx.mul(&c, &c));
                let diff = (&one.mid - (BigInt::one() << 160u32)).magnitude().clone();
                assert!(diff <= one.rad, "l={l} j={j}");
            }
        }
    }

    #[test]
    fn round_div_cases() {
        let r = |n: i64, d: i64| round_div(&BigInt::from(n), &BigInt::from(d));
        assert_eq!(r(7, 2), BigInt::from(4));
        assert_eq!(r(5, 2), BigInt::from(3));
        assert_eq!(r(4, 3), BigInt::from(1));
        assert_eq!(r(-4, 3), BigInt::from(-1));
        assert_eq!(r(-5, 2), BigInt::from(-2));
        assert_eq!(r(0, 5), BigInt::from(0));
    }

    #[test]
    fn f64_ball_tracks_error() {
        let a = F64Ball { mid: 0.1, rad: 1e-17 };
        let p = a.powu(10);
        assert!((p.mid - 1e-10).abs() <= p.rad);
    }
}
