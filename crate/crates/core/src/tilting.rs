//! Tilting multiplicities `p(k, N)` of `T(k)` in `T(1)^{⊗N}` at a root of unity of
//! odd order `l`.
//!
//! The tensor-rule DP in [`p_dp`] is the reference backend since it covers every
//! weight. The other entry points are independent routes to the same numbers:
//! alternating sums of `t`, the residue recurrence, two convolution identities and
//! counting partially `l`-bounded Catalan paths.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::paths::{count_bounded, enumerate_bounded, BoundedPathQuery};
use crate::sl2::{t_dp, ClassicalRow, ClassicalRows};
use crate::table::{split_weight, BigNat, Flavor, MultiplicityTable, RootOrder, ZERO};

/// Dense row `p(0, N), …, p(N, N)` for a fixed root order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltingRow {
    n: usize,
    l: RootOrder,
    values: Vec<BigNat>,
}

impl TiltingRow {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> RootOrder {
        self.l
    }

    /// `p(k, N)`; zero for `k > N`.
    pub fn get(&self, k: usize) -> &BigNat {
        self.values.get(k).unwrap_or(&ZERO)
    }

    pub fn values(&self) -> &[BigNat] {
        &self.values
    }

    pub fn to_table(&self) -> MultiplicityTable {
        MultiplicityTable::from_entries(
            self.n,
            Flavor::Tilting(self.l.get()),
            self.values.iter().cloned().enumerate(),
        )
    }

    fn next(&self) -> TiltingRow {
        let n = self.n + 1;
        let mut values = vec![BigNat::zero(); n + 1];
        for (k, mult) in self.values.iter().enumerate() {
            if mult.is_zero() {
                continue;
            }
            for (w, c) in tensor_with_fundamental(k, self.l) {
                values[w] += mult * BigNat::from(c);
            }
        }
        TiltingRow { n, l: self.l, values }
    }
}

/// Decomposition of `T(k) ⊗ T(1)` as `(weight, multiplicity)` pairs.
///
/// The special weights are dispatched before the generic residue band:
/// `k = l − 2`, `k = 2l − 2`, then `k ≡ −2 (mod l)` with `k ≥ 3l − 2`.
pub fn tensor_with_fundamental(k: usize, l: RootOrder) -> Vec<(usize, u32)> {
    let lv = l.get();
    let w = split_weight(k, l);
    if k == lv - 2 {
        // T(l−1) ⊕ T(l−3)
        return vec![(k - 1, 1), (k + 1, 1)];
    }
    if k == 2 * lv - 2 {
        return vec![(k - 1, 1), (k + 1, 1)];
    }
    if w.k0 == lv - 2 {
        // k = l·m + 2l − 2 with m ≥ 1: the extra summand T(l·m − 1)
        return vec![(k + 1 - 2 * lv, 1), (k - 1, 1), (k + 1, 1)];
    }
    if w.k0 == lv - 1 {
        return vec![(k + 1, 1)];
    }
    if w.k0 == 0 {
        if k == 0 {
            return vec![(1, 1)];
        }
        return vec![(k - 1, 2), (k + 1, 1)];
    }
    // 1 ≤ k0 ≤ l − 3
    vec![(k - 1, 1), (k + 1, 1)]
}

/// Row `N` obtained from `T(1)^{⊗0} = T(0)` by applying the tensor rules `N` times.
pub fn p_dp(n: usize, l: RootOrder) -> TiltingRow {
    let mut row = TiltingRow {
        n: 0,
        l,
        values: vec![BigNat::one()],
    };
    for _ in 0..n {
        row = row.next();
    }
    row
}

/// Memoized rows of [`p_dp`] for one root order.
#[derive(Debug, Clone)]
pub struct TiltingRows {
    rows: Vec<TiltingRow>,
}

impl TiltingRows {
    pub fn new(l: RootOrder) -> Self {
        TiltingRows {
            rows: vec![p_dp(0, l)],
        }
    }

    pub fn row(&mut self, n: usize) -> &TiltingRow {
        while self.rows.len() <= n {
            let next = self.rows.last().unwrap().next();
            self.rows.push(next);
        }
        &self.rows[n]
    }
}

/// Alternating-sum formula for `p(k, N)` in terms of `t`.
pub fn p_explicit(k: usize, n: usize, l: RootOrder) -> BigNat {
    p_explicit_from_row(&t_dp(n), k, l)
}

/// [`p_explicit`] reading `t(·, N)` from an already computed row. Both sums stop
/// at the first weight above `N`, where `t` vanishes.
pub fn p_explicit_from_row(row: &ClassicalRow, k: usize, l: RootOrder) -> BigNat {
    let lv = l.get();
    let w = split_weight(k, l);
    if w.k0 == lv - 1 {
        return row.get(k).clone();
    }
    let n = row.n();
    let mut sum = BigInt::zero();
    let mut j = 0;
    loop {
        let weight = (w.k1 + 2 * j) * lv + w.k0;
        if weight > n {
            break;
        }
        sum += BigInt::from(row.get(weight).clone());
        j += 1;
    }
    let mut j = 0;
    loop {
        let weight = (w.k1 + 2 * j + 2) * lv - w.k0 - 2;
        if weight > n {
            break;
        }
        sum -= BigInt::from(row.get(weight).clone());
        j += 1;
    }
    debug_assert!(!sum.is_negative(), "alternating sum went negative");
    sum.to_biguint().expect("multiplicities are nonnegative")
}

/// Residue recurrence: `p(k, N) = p(k−1, N−1) + p(k+1, N−1)` for `k0 ≤ l − 3` and
/// `p(k, N) = p(k−1, N−1)` for `k0 = l − 2`, memoized down to `N = 0`.
///
/// Weights with residue `l − 1` that show up as neighbours are read from `t`;
/// asking for one directly is a domain error.
pub fn p_recurrence(k: usize, n: usize, l: RootOrder) -> Result<BigNat> {
    let lv = l.get();
    if split_weight(k, l).k0 == lv - 1 {
        return Err(Error::domain(format!(
            "residue of k={k} is l-1={}; the recurrence does not cover it",
            lv - 1
        )));
    }
    let mut memo = HashMap::new();
    let mut trows = ClassicalRows::new();
    Ok(recurrence(k as i64, n, l, &mut memo, &mut trows))
}

fn recurrence(
    k: i64,
    n: usize,
    l: RootOrder,
    memo: &mut HashMap<(i64, usize), BigNat>,
    trows: &mut ClassicalRows,
) -> BigNat {
    if k < 0 || k as usize > n {
        return BigNat::zero();
    }
    let lv = l.get();
    let w = split_weight(k as usize, l);
    if w.k0 == lv - 1 {
        return trows.t(k, n as i64);
    }
    if n == 0 {
        return if k == 0 { BigNat::one() } else { BigNat::zero() };
    }
    if let Some(v) = memo.get(&(k, n)) {
        return v.clone();
    }
    let v = if w.k0 == lv - 2 {
        recurrence(k - 1, n - 1, l, memo, trows)
    } else {
        recurrence(k - 1, n - 1, l, memo, trows) + recurrence(k + 1, n - 1, l, memo, trows)
    };
    memo.insert((k, n), v.clone());
    v
}

fn check_block_split(k1: usize, k0: usize, n: usize, kprime: usize, l: RootOrder) -> Result<()> {
    if k1 == 0 || n == 0 {
        return Err(Error::domain(format!("convolution needs k1 >= 1 and N >= 1, got k1={k1}, N={n}")));
    }
    if k0 >= l.get() {
        return Err(Error::domain(format!("residue k0={k0} must be below l={l}")));
    }
    if kprime == 0 || kprime > k1 {
        return Err(Error::domain(format!("split k'={kprime} must lie in 1..={k1}")));
    }
    Ok(())
}

/// `Σ_{i=0}^{N−1} t(k'·l − 1, N−i−1) · p((k1−k')·l + k0, i)`, which equals
/// `p(k1·l + k0, N)`.
pub fn p_convolution(k1: usize, k0: usize, n: usize, kprime: usize, l: RootOrder) -> Result<BigNat> {
    check_block_split(k1, k0, n, kprime, l)?;
    let lv = l.get();
    let mut trows = ClassicalRows::new();
    let mut prows = TiltingRows::new(l);
    let inner = (k1 - kprime) * lv + k0;
    let mut sum = BigNat::zero();
    for i in 0..n {
        let t = trows.t((kprime * lv - 1) as i64, (n - i - 1) as i64);
        if t.is_zero() {
            continue;
        }
        sum += t * prow_get(&mut prows, inner, i);
    }
    Ok(sum)
}

/// `Σ_{i=0}^{N−1} t(k1·l − 1, i) · p(k0, N−i−1)`: the `k' = k1` case of
/// [`p_convolution`] written against the small weights `k0 < l`.
pub fn p_block_convolution(k1: usize, k0: usize, n: usize, l: RootOrder) -> Result<BigNat> {
    check_block_split(k1, k0, n, k1.max(1), l)?;
    let lv = l.get();
    let mut trows = ClassicalRows::new();
    let mut prows = TiltingRows::new(l);
    let mut sum = BigNat::zero();
    for i in 0..n {
        let t = trows.t((k1 * lv - 1) as i64, i as i64);
        if t.is_zero() {
            continue;
        }
        sum += t * prow_get(&mut prows, k0, n - i - 1);
    }
    Ok(sum)
}

fn prow_get(rows: &mut TiltingRows, k: usize, n: usize) -> BigNat {
    rows.row(n).get(k).clone()
}

/// How [`p_from_paths`] obtains `|A^N_{k1,k0}|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathBackend {
    /// The residue recurrence on bounded-path counts; no size limit.
    Count,
    /// Exhaustive enumeration; capped at the path enumeration limit.
    Enumerate,
}

/// `p(k, N) = |A^N_{k1,k0}|` with `k + 1 = k1·l + k0`.
pub fn p_from_paths(k: usize, n: usize, l: RootOrder, backend: PathBackend) -> Result<BigNat> {
    let q = BoundedPathQuery::ending_at(n, l, k);
    match backend {
        PathBackend::Count => Ok(count_bounded(&q)),
        PathBackend::Enumerate => Ok(BigNat::from(enumerate_bounded(&q)?.len())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::validate_table;

    fn l(v: i64) -> RootOrder {
        RootOrder::new(v).unwrap()
    }

    fn nat(v: u64) -> BigNat {
        BigNat::from(v)
    }

    /// Dimension of `T(k)` from its Weyl factors `Δ(k)` and, for `k ≥ l` with
    /// `k0 ≠ l − 1`, `Δ(k1·l − k0 − 2)`.
    fn tilting_dim(k: usize, l: RootOrder) -> usize {
        let w = split_weight(k, l);
        let lv = l.get();
        if w.k1 == 0 || w.k0 == lv - 1 {
            k + 1
        } else {
            k + 1 + (w.k1 * lv - w.k0 - 1)
        }
    }

    #[test]
    fn tensor_rules_preserve_dimension() {
        for lv in [3, 5, 7, 9, 11] {
            let l = l(lv);
            for k in 0..6 * lv as usize {
                let dim: usize = tensor_with_fundamental(k, l)
                    .into_iter()
                    .map(|(w, c)| c as usize * tilting_dim(w, l))
                    .sum();
                assert_eq!(dim, 2 * tilting_dim(k, l), "k={k} l={lv}");
            }
        }
    }

    #[test]
    fn tensor_rule_dispatch() {
        let l5 = l(5);
        assert_eq!(tensor_with_fundamental(0, l5), vec![(1, 1)]);
        assert_eq!(tensor_with_fundamental(2, l5), vec![(1, 1), (3, 1)]);
        assert_eq!(tensor_with_fundamental(3, l5), vec![(2, 1), (4, 1)]);
        assert_eq!(tensor_with_fundamental(4, l5), vec![(5, 1)]);
        assert_eq!(tensor_with_fundamental(5, l5), vec![(4, 2), (6, 1)]);
        assert_eq!(tensor_with_fundamental(8, l5), vec![(7, 1), (9, 1)]);
        assert_eq!(tensor_with_fundamental(13, l5), vec![(4, 1), (12, 1), (14, 1)]);
        let l3 = l(3);
        assert_eq!(tensor_with_fundamental(1, l3), vec![(0, 1), (2, 1)]);
        assert_eq!(tensor_with_fundamental(4, l3), vec![(3, 1), (5, 1)]);
        assert_eq!(tensor_with_fundamental(7, l3), vec![(2, 1), (6, 1), (8, 1)]);
        assert_eq!(tensor_with_fundamental(3, l3), vec![(2, 2), (4, 1)]);
    }

    #[test]
    fn p_dp_examples() {
        assert_eq!(p_dp(1, l(5)).to_table().entries(), &[(1, nat(1))].into());
        assert_eq!(
            p_dp(4, l(5)).to_table().entries(),
            &[(0, nat(2)), (2, nat(3)), (4, nat(1))].into()
        );
        assert_eq!(p_dp(8, l(5)).get(0), &nat(13));
        // frozen from the alternating sum over brute-force t
        let row8: Vec<u64> = vec![13, 0, 21, 0, 20, 0, 7, 0, 1];
        assert_eq!(p_dp(8, l(5)).values(), row8.into_iter().map(nat).collect::<Vec<_>>());
    }

    #[test]
    fn p_explicit_examples() {
        assert_eq!(p_explicit(4, 6, l(5)), nat(5));
        assert_eq!(p_explicit(0, 2, l(3)), nat(1));
        assert_eq!(p_explicit(0, 0, l(5)), nat(1));
        assert_eq!(p_explicit(9, 3, l(5)), nat(0));
    }

    #[test]
    fn p_recurrence_examples() {
        assert_eq!(p_recurrence(3, 5, l(5)).unwrap(), nat(3));
        assert_eq!(p_recurrence(0, 2, l(5)).unwrap(), nat(1));
        assert_eq!(p_recurrence(1, 1, l(5)).unwrap(), nat(1));
        assert!(p_recurrence(4, 6, l(5)).is_err());
        assert!(p_recurrence(9, 6, l(5)).is_err());
    }

    #[test]
    fn p_convolution_examples() {
        assert_eq!(p_convolution(1, 0, 5, 1, l(5)).unwrap(), p_dp(5, l(5)).get(5).clone());
        assert_eq!(p_convolution(1, 2, 5, 1, l(3)).unwrap(), nat(1));
        assert_eq!(p_convolution(2, 0, 6, 2, l(3)).unwrap(), p_dp(6, l(3)).get(6).clone());
        assert!(p_convolution(0, 1, 5, 1, l(5)).is_err());
        assert!(p_convolution(2, 1, 5, 3, l(5)).is_err());
        assert!(p_convolution(2, 5, 5, 1, l(5)).is_err());
        assert!(p_convolution(2, 1, 0, 1, l(5)).is_err());
    }

    #[test]
    fn p_from_paths_examples() {
        for backend in [PathBackend::Count, PathBackend::Enumerate] {
            assert_eq!(p_from_paths(0, 6, l(5), backend).unwrap(), nat(5));
            assert_eq!(p_from_paths(0, 8, l(5), backend).unwrap(), nat(13));
            assert_eq!(p_from_paths(3, 3, l(5), backend).unwrap(), nat(1));
        }
        assert!(p_from_paths(0, 30, l(5), PathBackend::Enumerate).is_err());
        assert!(p_from_paths(0, 30, l(5), PathBackend::Count).is_ok());
    }

    #[test]
    fn l3_dispatch_matches_explicit() {
        let l3 = l(3);
        let mut rows = TiltingRows::new(l3);
        for n in 0..=30 {
            let trow = t_dp(n);
            let prow = rows.row(n).clone();
            for k in 0..=n {
                assert_eq!(prow.get(k), &p_explicit_from_row(&trow, k, l3), "k={k} N={n}");
            }
        }
    }

    #[test]
    fn rows_are_valid_tables() {
        for lv in [3, 5, 7] {
            for n in 0..=20 {
                assert!(validate_table(&p_dp(n, l(lv)).to_table()).is_empty());
            }
        }
    }

    #[test]
    fn total_dimension_is_two_to_the_n() {
        for lv in [3, 5, 7] {
            let l = l(lv);
            for n in 0..=24 {
                let row = p_dp(n, l);
                let dim: BigNat = row
                    .values()
                    .iter()
                    .enumerate()
                    .map(|(k, m)| m * BigNat::from(tilting_dim(k, l)))
                    .sum();
                assert_eq!(dim, BigNat::one() << n, "l={lv} N={n}");
            }
        }
    }
}
