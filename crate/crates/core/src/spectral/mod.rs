//! The `(l−1)`-dimensional tridiagonal Toeplitz transfer matrix with zero
//! diagonal and unit off-diagonals, its closed-form eigenpairs, the trigonometric
//! formula for `p(k, N)` with `k ≤ l − 2`, and the asymptotic envelope.

mod ball;
mod decimal;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::table::{BigNat, RootOrder};

use ball::{f64_trig, round_div, scaled_to_f64, F64Ball, Fixed, FixedBall};
pub use decimal::{SciDecimal, SIGNIFICANT_DIGITS};

/// Default width for the extended-precision evaluation.
pub const DEFAULT_PRECISION_BITS: u32 = 128;

/// Precision of the plain double evaluation.
pub const DOUBLE_BITS: u32 = 53;

/// Relative slack used when an exact integer is compared against a bound that
/// is only available in floating point.
pub const COMPARISON_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransferMatrix {
    l: RootOrder,
}

impl TransferMatrix {
    pub fn new(l: RootOrder) -> Self {
        TransferMatrix { l }
    }

    pub fn dim(&self) -> usize {
        self.l.get() - 1
    }

    /// Entry at zero-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        u8::from(i.abs_diff(j) == 1 && i < self.dim() && j < self.dim())
    }

    pub fn to_dense(&self) -> Vec<Vec<BigNat>> {
        let d = self.dim();
        (0..d)
            .map(|i| (0..d).map(|j| BigNat::from(self.entry(i, j))).collect())
            .collect()
    }

    /// `T v` for a real vector.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let d = self.dim();
        (0..d)
            .map(|i| {
                let left = if i > 0 { v[i - 1] } else { 0.0 };
                let right = if i + 1 < d { v[i + 1] } else { 0.0 };
                left + right
            })
            .collect()
    }

    /// `T^N` by binary exponentiation over exact integers.
    pub fn power(&self, mut n: usize) -> Vec<Vec<BigNat>> {
        let d = self.dim();
        let mut result = identity(d);
        let mut base = self.to_dense();
        while n > 0 {
            if n & 1 == 1 {
                result = matmul(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = matmul(&base, &base);
            }
        }
        result
    }
}

fn identity(d: usize) -> Vec<Vec<BigNat>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { BigNat::one() } else { BigNat::zero() }).collect())
        .collect()
}

fn matmul(a: &[Vec<BigNat>], b: &[Vec<BigNat>]) -> Vec<Vec<BigNat>> {
    let d = a.len();
    let mut out = vec![vec![BigNat::zero(); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// `T^N e_1`; entry `k` (zero-based) is `p(k, N)` for `k ≤ l − 2`.
pub fn matrix_power_column(n: usize, l: RootOrder) -> Vec<BigNat> {
    TransferMatrix::new(l).power(n).into_iter().map(|mut row| row.swap_remove(0)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub s: usize,
    /// `2 cos(sπ/l)`
    pub lambda: f64,
    /// entries `sin(sqπ/l)` for `q = 1..l−1`
    pub vector: Vec<f64>,
}

impl EigenPair {
    /// `‖T v − λ v‖_∞`.
    pub fn residual(&self, t: &TransferMatrix) -> f64 {
        t.apply(&self.vector)
            .iter()
            .zip(&self.vector)
            .map(|(tv, v)| (tv - self.lambda * v).abs())
            .fold(0.0, f64::max)
    }

    pub fn norm_sq(&self) -> f64 {
        self.vector.iter().map(|x| x * x).sum()
    }
}

pub fn eigenpair(s: usize, l: RootOrder) -> Result<EigenPair> {
    let lv = l.get();
    if s == 0 || s >= lv {
        return Err(Error::domain(format!("eigen index s={s} must lie in 1..={}", lv - 1)));
    }
    let angle = |m: usize| (m as f64) * std::f64::consts::PI / (lv as f64);
    Ok(EigenPair {
        s,
        lambda: 2.0 * angle(s).cos(),
        vector: (1..lv).map(|q| angle(s * q).sin()).collect(),
    })
}

/// Closed form of `Σ_{s=1}^{l−1} cos(snπ/l)`: `((−1)^{n+1} − 1)/2`, valid when
/// `n` is not a multiple of `2l`.
pub fn cosine_sum(n: i64, l: RootOrder) -> Result<i64> {
    if n.rem_euclid(2 * l.get() as i64) == 0 {
        return Err(Error::domain(format!("sin(nπ/2l) vanishes for n={n}, l={l}")));
    }
    Ok(if n.rem_euclid(2) == 0 { -1 } else { 0 })
}

/// Direct floating-point evaluation of the cosine sum.
pub fn cosine_sum_float(n: i64, l: RootOrder) -> f64 {
    let lv = l.get() as f64;
    (1..l.get())
        .map(|s| ((s as f64) * (n as f64) * std::f64::consts::PI / lv).cos())
        .sum()
}

fn check_small_weight(k: usize, l: RootOrder) -> Result<()> {
    if k + 2 > l.get() {
        Err(Error::domain(format!(
            "spectral formulas need k <= l-2, got k={k}, l={l}"
        )))
    } else {
        Ok(())
    }
}

/// Result of [`p_spectral`].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralValue {
    /// The evaluated sum, as a double.
    pub value: f64,
    /// Nearest integer to the evaluated sum.
    pub rounded: BigNat,
    /// Certified bound on `|value − p(k, N)|` before conversion to double.
    pub error_bound: f64,
    /// Precision that produced the value.
    pub bits: u32,
}

/// Symmetries that put every angle in `[0, π/2]`: the returned `(j, negate)`
/// gives `cos(sπ/l) = ±cos(jπ/l)`.
fn reduce_cos(s: usize, l: usize) -> (usize, bool) {
    if 2 * s <= l {
        (s, false)
    } else {
        (l - s, true)
    }
}

/// `sin(mπ/l) = ±sin(jπ/l)` with `2j ≤ l`.
fn reduce_sin(m: usize, l: usize) -> (usize, bool) {
    let mut m = m % (2 * l);
    let mut negate = false;
    if m >= l {
        m -= l;
        negate = true;
    }
    if 2 * m > l {
        m = l - m;
    }
    (m, negate)
}

/// Evaluates `(2^{N+1}/l) Σ_{s=1}^{l−1} cos^N(sπ/l) sin(sπ/l) sin(s(k+1)π/l)`.
///
/// At `bits <= 53` the sum runs in double precision with a running error bound;
/// above that it runs in `bits`-bit fixed point with exact error tracking. Either
/// way the result is returned only if the bound certifies the rounding, i.e. is
/// below one half.
pub fn p_spectral(k: usize, n: usize, l: RootOrder, bits: u32) -> Result<SpectralValue> {
    check_small_weight(k, l)?;
    if bits <= DOUBLE_BITS {
        p_spectral_double(k, n, l)
    } else {
        p_spectral_fixed(k, n, l, bits)
    }
}

/// Tries double precision first and escalates to `bits` only if the double
/// evaluation cannot be certified.
pub fn p_spectral_auto(k: usize, n: usize, l: RootOrder, bits: u32) -> Result<SpectralValue> {
    match p_spectral(k, n, l, DOUBLE_BITS) {
        Err(Error::Precision { .. }) if bits > DOUBLE_BITS => p_spectral(k, n, l, bits),
        other => other,
    }
}

fn p_spectral_double(k: usize, n: usize, l: RootOrder) -> Result<SpectralValue> {
    let lv = l.get();
    let trig: Vec<(F64Ball, F64Ball)> = (0..=lv / 2).map(|j| f64_trig(j, lv)).collect();
    let mut sum = F64Ball::exact(0.0);
    for s in 1..lv {
        let (jc, neg_c) = reduce_cos(s, lv);
        let c = if neg_c { trig[jc].1.neg() } else { trig[jc].1 };
        let a = trig[jc].0;
        let (jb, neg_b) = reduce_sin(s * (k + 1), lv);
        let b = if neg_b { trig[jb].0.neg() } else { trig[jb].0 };
        sum = sum.add(c.powu(n).mul(a).mul(b));
    }
    let scale = 2f64.powi(n as i32 + 1);
    let mid = sum.mid * scale / lv as f64;
    let rad = (sum.rad * scale / lv as f64 + mid.abs() * f64::EPSILON) * (1.0 + 4.0 * f64::EPSILON);
    if !(rad < 0.5) || !mid.is_finite() {
        return Err(Error::Precision {
            bound: rad,
            bits: DOUBLE_BITS,
        });
    }
    let rounded = BigUint::from(mid.round().max(0.0) as u64);
    Ok(SpectralValue {
        value: mid,
        rounded,
        error_bound: rad,
        bits: DOUBLE_BITS,
    })
}

fn p_spectral_fixed(k: usize, n: usize, l: RootOrder, bits: u32) -> Result<SpectralValue> {
    let lv = l.get();
    let fx = Fixed::new(bits);
    let pi = fx.pi();
    let trig: Vec<(FixedBall, FixedBall)> = (0..=lv / 2).map(|j| fx.trig(&pi, j, lv)).collect();
    let signed = |ball: &FixedBall, negate: bool| if negate { fx.neg(ball) } else { ball.clone() };
    let mut sum = fx.zero();
    for s in 1..lv {
        let (jc, neg_c) = reduce_cos(s, lv);
        let c = signed(&trig[jc].1, neg_c);
        let a = &trig[jc].0;
        let (jb, neg_b) = reduce_sin(s * (k + 1), lv);
        let b = signed(&trig[jb].0, neg_b);
        let term = fx.mul(&fx.mul(&fx.powu(&c, n), a), &b);
        sum = fx.add(&sum, &term);
    }
    // value = sum.mid · 2^{N+1} / (l · 2^bits), error = sum.rad · 2^{N+1} / (l · 2^bits)
    let num = &sum.mid << (n + 1);
    let den = BigInt::from(lv) << bits;
    let err_num = BigInt::from(sum.rad.clone()) << (n + 1);
    let certified = &err_num * 2 < den;
    let error_bound = scaled_to_f64(&err_num, -(bits as i64)) / lv as f64;
    if !certified {
        return Err(Error::Precision {
            bound: error_bound,
            bits,
        });
    }
    let rounded = round_div(&num, &den);
    let rounded = rounded.to_biguint().unwrap_or_default();
    Ok(SpectralValue {
        value: scaled_to_f64(&num, -(bits as i64)) / lv as f64,
        rounded,
        error_bound,
        bits,
    })
}

/// Natural logarithm of a nonnegative real, so that values far beyond the `f64`
/// range can be carried. Zero is `-inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogReal(pub f64);

impl LogReal {
    pub fn from_value(x: f64) -> Self {
        LogReal(x.ln())
    }

    pub fn ln(self) -> f64 {
        self.0
    }

    /// The represented value; may overflow to infinity.
    pub fn value(self) -> f64 {
        self.0.exp()
    }

    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }
}

/// `ln x` for an exact integer of any size.
pub fn ln_big(x: &BigNat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `2^N cos^N(π/l)`, which bounds `p(k, N)` from above.
pub fn upper_bound(k: usize, n: usize, l: RootOrder) -> Result<LogReal> {
    check_small_weight(k, l)?;
    let c = (std::f64::consts::PI / l.get() as f64).cos();
    Ok(LogReal(n as f64 * (2.0 * c).ln()))
}

/// Whether `p ≤ 2^N cos^N(π/l)`.
///
/// Decided exactly with interval arithmetic whenever the two sides differ. The
/// bound is an integer only for `l = 3`, where it is 1 and equality occurs; those
/// cases fall back to the log-space comparison with [`COMPARISON_SLACK`].
pub fn respects_upper_bound(p: &BigNat, k: usize, n: usize, l: RootOrder) -> Result<bool> {
    check_small_weight(k, l)?;
    for bits in precision_ladder(n) {
        let env = envelope_balls(k, n, l, bits);
        let pp = BigInt::from(p.clone()) << bits;
        let (lo, hi) = bounds(&env.upper_bound);
        if pp <= lo {
            return Ok(true);
        }
        if pp > hi {
            return Ok(false);
        }
    }
    Ok(ln_big(p) <= upper_bound(k, n, l)?.ln() + COMPARISON_SLACK)
}

/// Leading asymptotic term of `p(k, N)` and the bound on its error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticEstimate {
    k: usize,
    n: usize,
    l: RootOrder,
    /// `((1 + (−1)^{k+N})/l) · 2^{N+1} cos^N(π/l) sin(π/l) sin((k+1)π/l)`
    pub leading: LogReal,
    /// `2^N |cos(2π/l)|^N`
    pub error_bound: LogReal,
}

impl AsymptoticEstimate {
    /// Whether `|p − leading| ≤ error_bound`, decided exactly with interval
    /// arithmetic; only an exact tie falls back to the log-space comparison.
    pub fn contains(&self, p: &BigNat) -> bool {
        for bits in precision_ladder(self.n) {
            let env = envelope_balls(self.k, self.n, self.l, bits);
            let gap = ((BigInt::from(p.clone()) << bits) - &env.leading.mid).abs();
            let lead_rad = BigInt::from(env.leading.rad.clone());
            let (err_lo, err_hi) = bounds(&env.error_bound);
            if &gap + &lead_rad <= err_lo {
                return true;
            }
            if gap - lead_rad > err_hi {
                return false;
            }
        }
        self.contains_log_space(p)
    }

    fn contains_log_space(&self, p: &BigNat) -> bool {
        let lp = ln_big(p);
        let ll = self.leading.ln();
        let le = self.error_bound.ln();
        // scale everything by the largest magnitude so huge N stays finite
        let top = lp.max(ll).max(le);
        if top == f64::NEG_INFINITY {
            return true;
        }
        let p = (lp - top).exp();
        let lead = (ll - top).exp();
        let err = (le - top).exp();
        (p - lead).abs() <= err + COMPARISON_SLACK * p.max(lead)
    }

    /// `error_bound / leading`, or infinity when the leading term vanishes.
    pub fn relative_error(&self) -> f64 {
        if self.leading.is_zero() {
            f64::INFINITY
        } else {
            (self.error_bound.ln() - self.leading.ln()).exp()
        }
    }
}

pub fn asymptotic(k: usize, n: usize, l: RootOrder) -> Result<AsymptoticEstimate> {
    check_small_weight(k, l)?;
    let lv = l.get() as f64;
    let angle = std::f64::consts::PI / lv;
    let error_bound = LogReal(n as f64 * (2.0 * (2.0 * angle).cos().abs()).ln());
    let leading = if (k + n) % 2 == 1 {
        LogReal(f64::NEG_INFINITY)
    } else {
        LogReal(
            (2.0 / lv).ln()
                + (n as f64 + 1.0) * std::f64::consts::LN_2
                + n as f64 * angle.cos().ln()
                + angle.sin().ln()
                + ((k as f64 + 1.0) * angle).sin().ln(),
        )
    };
    Ok(AsymptoticEstimate {
        k,
        n,
        l,
        leading,
        error_bound,
    })
}

/// Leading term, error bound and upper bound, each correctly rounded to
/// [`SIGNIFICANT_DIGITS`] digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvelopeDecimals {
    pub leading: SciDecimal,
    pub error_bound: SciDecimal,
    pub upper_bound: SciDecimal,
}

pub fn envelope_decimals(k: usize, n: usize, l: RootOrder) -> Result<EnvelopeDecimals> {
    check_small_weight(k, l)?;
    let mut last_bits = 0;
    for bits in precision_ladder(n) {
        last_bits = bits;
        let env = envelope_balls(k, n, l, bits);
        let round = |b: &FixedBall| SciDecimal::from_ball(b, bits);
        if let (Some(leading), Some(error_bound), Some(upper_bound)) =
            (round(&env.leading), round(&env.error_bound), round(&env.upper_bound))
        {
            return Ok(EnvelopeDecimals {
                leading,
                error_bound,
                upper_bound,
            });
        }
    }
    Err(Error::Precision {
        bound: f64::NAN,
        bits: last_bits,
    })
}

struct EnvelopeBalls {
    leading: FixedBall,
    error_bound: FixedBall,
    upper_bound: FixedBall,
}

/// Working precisions tried in turn: enough for `cos^N` of the smallest cosine
/// involved to keep about 100 significant bits, then doubling.
fn precision_ladder(n: usize) -> impl Iterator<Item = u32> {
    let start = 2 * n as u32 + 128;
    (0..5).map(move |i| start << i)
}

fn bounds(b: &FixedBall) -> (BigInt, BigInt) {
    let rad = BigInt::from(b.rad.clone());
    (&b.mid - &rad, &b.mid + &rad)
}

fn shl(b: FixedBall, m: usize) -> FixedBall {
    FixedBall {
        mid: b.mid << m,
        rad: b.rad << m,
    }
}

fn envelope_balls(k: usize, n: usize, l: RootOrder, bits: u32) -> EnvelopeBalls {
    let lv = l.get();
    let fx = Fixed::new(bits);
    let pi = fx.pi();
    let (s1, c1) = fx.trig(&pi, 1, lv);
    let c2 = fx.trig(&pi, reduce_cos(2, lv).0, lv).1;
    let sk = fx.trig(&pi, reduce_sin(k + 1, lv).0, lv).0;
    let cn = fx.powu(&c1, n);
    let leading = if (k + n) % 2 == 1 {
        fx.zero()
    } else {
        fx.div_int(&shl(fx.mul(&fx.mul(&cn, &s1), &sk), n + 2), lv as u64)
    };
    EnvelopeBalls {
        leading,
        error_bound: shl(fx.powu(&c2, n), n),
        upper_bound: shl(cn, n),
    }
}
