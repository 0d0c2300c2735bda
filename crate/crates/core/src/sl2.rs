//! Classical multiplicities `t(k, N)` of `V(k)` in `V(1)^{⊗N}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::table::{BigNat, Flavor, MultiplicityTable, ZERO};

/// Largest tensor power the iterated Clebsch-Gordan oracle accepts by default.
pub const BRUTEFORCE_CAP: usize = 24;

/// Dense row `t(0, N), …, t(N, N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalRow {
    n: usize,
    values: Vec<BigNat>,
}

impl ClassicalRow {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `t(k, N)`; zero for `k > N`.
    pub fn get(&self, k: usize) -> &BigNat {
        self.values.get(k).unwrap_or(&ZERO)
    }

    /// Signed lookup so callers can write `t(k - 1, N)` without special cases.
    pub fn get_signed(&self, k: i64) -> &BigNat {
        if k < 0 {
            &ZERO
        } else {
            self.get(k as usize)
        }
    }

    pub fn values(&self) -> &[BigNat] {
        &self.values
    }

    fn next(&self) -> ClassicalRow {
        let n = self.n + 1;
        let values = (0..=n)
            .map(|k| {
                let below = if k >= 1 { self.get(k - 1).clone() } else { BigNat::zero() };
                below + self.get(k + 1)
            })
            .collect();
        ClassicalRow { n, values }
    }

    pub fn to_table(&self) -> MultiplicityTable {
        MultiplicityTable::from_entries(
            self.n,
            Flavor::Classical,
            self.values.iter().cloned().enumerate(),
        )
    }
}

/// `V(n) ⊗ V(m)` as a map from weight to multiplicity.
pub fn clebsch_gordan(n: usize, m: usize) -> BTreeMap<usize, BigNat> {
    let (hi, lo) = if n >= m { (n, m) } else { (m, n) };
    (0..=lo).map(|i| (hi - lo + 2 * i, BigNat::one())).collect()
}

/// Row `N` of `t` by the recurrence `t(k,N) = t(k-1,N-1) + t(k+1,N-1)`, from
/// `t(k, 0) = δ_{k0}`.
pub fn t_dp(n: usize) -> ClassicalRow {
    let mut row = ClassicalRow {
        n: 0,
        values: vec![BigNat::one()],
    };
    for _ in 0..n {
        row = row.next();
    }
    row
}

/// Memoized rows of `t`, grown on demand.
#[derive(Debug, Clone, Default)]
pub struct ClassicalRows {
    rows: Vec<ClassicalRow>,
}

impl ClassicalRows {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn row(&mut self, n: usize) -> &ClassicalRow {
        if self.rows.is_empty() {
            self.rows.push(t_dp(0));
        }
        while self.rows.len() <= n {
            let next = self.rows.last().unwrap().next();
            self.rows.push(next);
        }
        &self.rows[n]
    }

    /// `t(k, n)` with zero for negative arguments.
    pub fn t(&mut self, k: i64, n: i64) -> BigNat {
        if n < 0 || k < 0 {
            return BigNat::zero();
        }
        self.row(n as usize).get(k as usize).clone()
    }
}

pub fn t_bruteforce(n: usize) -> Result<MultiplicityTable> {
    t_bruteforce_with_cap(n, BRUTEFORCE_CAP)
}

/// Decomposes `V(1)^{⊗N}` by tensoring with `V(1)` one factor at a time.
pub fn t_bruteforce_with_cap(n: usize, cap: usize) -> Result<MultiplicityTable> {
    if n > cap {
        return Err(Error::ResourceLimit {
            what: "N",
            value: n,
            cap,
        });
    }
    let mut current: BTreeMap<usize, BigNat> = BTreeMap::from([(0, BigNat::one())]);
    for _ in 0..n {
        let mut next: BTreeMap<usize, BigNat> = BTreeMap::new();
        for (&k, mult) in &current {
            for (w, c) in clebsch_gordan(k, 1) {
                *next.entry(w).or_insert_with(BigNat::zero) += mult * c;
            }
        }
        current = next;
    }
    Ok(MultiplicityTable::from_entries(n, Flavor::Classical, current))
}

/// `Σ_{i=0}^{N-1} t(k'-1, i) · t(k-k', N-i-1)`, which equals `t(k, N)`.
pub fn t_convolution(k: usize, n: usize, kprime: usize) -> Result<BigNat> {
    t_convolution_with(&mut ClassicalRows::new(), k, n, kprime)
}

/// [`t_convolution`] reading `t` from a shared memo.
pub fn t_convolution_with(rows: &mut ClassicalRows, k: usize, n: usize, kprime: usize) -> Result<BigNat> {
    if k == 0 || n == 0 {
        return Err(Error::domain(format!("convolution needs k >= 1 and N >= 1, got k={k}, N={n}")));
    }
    if kprime == 0 || kprime > k {
        return Err(Error::domain(format!("split point k'={kprime} must lie in 1..={k}")));
    }
    rows.row(n - 1);
    let mut sum = BigNat::zero();
    for i in 0..n {
        let left = rows.row(i).get(kprime - 1).clone();
        if left.is_zero() {
            continue;
        }
        sum += left * rows.row(n - i - 1).get(k - kprime);
    }
    Ok(sum)
}
