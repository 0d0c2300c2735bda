//! Catalan paths, Dyck paths and partially `l`-bounded Catalan paths.
//!
//! A path of length `N` is stored as its full height sequence `f(0), …, f(N)`
//! with `f(0) = 0`, unit steps and no negative heights. Enumeration is depth
//! first, trying the down-step before the up-step, so listings come out in a
//! fixed lexicographic order.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::sl2::ClassicalRows;
use crate::table::{BigNat, RootOrder};

/// Largest path length the enumerators accept.
pub const ENUMERATION_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CatalanPath {
    heights: Vec<usize>,
}

impl CatalanPath {
    pub fn new(heights: Vec<usize>) -> Result<Self> {
        let signed: Vec<i64> = heights.iter().map(|&h| h as i64).collect();
        if is_catalan_path(&signed) {
            Ok(CatalanPath { heights })
        } else {
            Err(Error::domain(format!("not a Catalan path: {}", join(&heights))))
        }
    }

    pub fn from_signed(heights: &[i64]) -> Result<Self> {
        if is_catalan_path(heights) {
            Ok(CatalanPath {
                heights: heights.iter().map(|&h| h as usize).collect(),
            })
        } else {
            Err(Error::domain(format!("not a Catalan path: {heights:?}")))
        }
    }

    /// Number of steps `N`.
    pub fn len(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn end_height(&self) -> usize {
        *self.heights.last().unwrap()
    }

    pub fn is_dyck(&self) -> bool {
        self.end_height() == 0
    }
}

fn join(heights: &[usize]) -> String {
    heights.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CatalanPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.heights))
    }
}

impl FromStr for CatalanPath {
    type Err = Error;

    /// Comma-separated heights, e.g. `0,1,2,1,0,1`.
    fn from_str(s: &str) -> Result<Self> {
        let heights = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad height {part:?} in path {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CatalanPath::from_signed(&heights)
    }
}

pub fn is_catalan_path(heights: &[i64]) -> bool {
    match heights.first() {
        Some(0) => {}
        _ => return false,
    }
    heights.iter().all(|&h| h >= 0) && heights.windows(2).all(|w| (w[1] - w[0]).abs() == 1)
}

fn check_cap(n: usize) -> Result<()> {
    if n > ENUMERATION_CAP {
        Err(Error::ResourceLimit {
            what: "path length",
            value: n,
            cap: ENUMERATION_CAP,
        })
    } else {
        Ok(())
    }
}

/// All Catalan paths from `(0,0)` to `(N,k)`.
pub fn enumerate_paths(n: usize, k: usize) -> Result<Vec<CatalanPath>> {
    check_cap(n)?;
    let mut out = Vec::new();
    let mut heights = Vec::with_capacity(n + 1);
    heights.push(0);
    walk(n, k, &mut heights, &mut |h| out.push(CatalanPath { heights: h.to_vec() }));
    Ok(out)
}

fn walk(n: usize, k: usize, heights: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    let pos = heights.len() - 1;
    let h = heights[pos];
    if pos == n {
        if h == k {
            emit(heights);
        }
        return;
    }
    let remaining = n - pos - 1;
    if h > 0 && (h - 1).abs_diff(k) <= remaining {
        heights.push(h - 1);
        walk(n, k, heights, emit);
        heights.pop();
    }
    if (h + 1).abs_diff(k) <= remaining {
        heights.push(h + 1);
        walk(n, k, heights, emit);
        heights.pop();
    }
}

/// Number of Catalan paths ending at `(N, k)`; zero when either is negative.
pub fn count_paths(n: i64, k: i64) -> BigNat {
    if n < 0 || k < 0 || k > n {
        return BigNat::zero();
    }
    let (n, k) = (n as usize, k as usize);
    // column[h] = number of paths of the current length ending at height h
    let mut column = vec![BigNat::zero(); n + 2];
    column[0] = BigNat::one();
    for m in 1..=n {
        let mut next = vec![BigNat::zero(); n + 2];
        for h in 0..=m {
            if h >= 1 {
                next[h] += &column[h - 1];
            }
            next[h] += &column[h + 1];
        }
        column = next;
    }
    column.swap_remove(k)
}

/// Every visit to height `k1·l + l − 1` must be followed (at the same index or
/// later) by a visit to height `k1·l − 1`.
pub fn is_partially_l_bounded(p: &CatalanPath, l: RootOrder, k1: usize) -> bool {
    let l = l.get();
    let wall = k1 * l + l - 1;
    let Some(floor) = (k1 * l).checked_sub(1) else {
        return !p.heights.contains(&wall);
    };
    // scan right to left, remembering whether the floor has been seen yet
    let mut floor_ahead = false;
    for &h in p.heights.iter().rev() {
        if h == floor {
            floor_ahead = true;
        }
        if h == wall && !floor_ahead {
            return false;
        }
    }
    true
}

/// Selects the set `A^N_{k1,k0}` of partially `l`-bounded paths ending at height
/// `k1·l + k0 − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundedPathQuery {
    pub n: usize,
    pub l: RootOrder,
    pub k1: usize,
    pub k0: usize,
}

impl BoundedPathQuery {
    pub fn new(n: usize, l: RootOrder, k1: usize, k0: usize) -> Result<Self> {
        if k0 >= l.get() {
            return Err(Error::domain(format!("residue k0={k0} must be below l={l}")));
        }
        Ok(BoundedPathQuery { n, l, k1, k0 })
    }

    /// The query whose end height is `k`, i.e. `k + 1 = k1·l + k0`.
    pub fn ending_at(n: usize, l: RootOrder, k: usize) -> Self {
        let w = crate::table::split_weight(k + 1, l);
        BoundedPathQuery { n, l, k1: w.k1, k0: w.k0 }
    }

    /// `None` for the empty family `(k1, k0) = (0, 0)`.
    pub fn end_height(&self) -> Option<usize> {
        (self.k1 * self.l.get() + self.k0).checked_sub(1)
    }
}

pub fn enumerate_bounded(q: &BoundedPathQuery) -> Result<Vec<CatalanPath>> {
    check_cap(q.n)?;
    let Some(end) = q.end_height() else {
        return Ok(Vec::new());
    };
    let l = q.l.get();
    let wall = q.k1 * l + l - 1;
    let floor = (q.k1 * l).checked_sub(1);
    let mut out = Vec::new();
    let mut heights = vec![0];
    walk_bounded(q.n, end, wall, floor, false, &mut heights, &mut out);
    Ok(out)
}

/// `pending` is set after a wall visit and cleared by the next floor visit.
fn walk_bounded(
    n: usize,
    end: usize,
    wall: usize,
    floor: Option<usize>,
    pending: bool,
    heights: &mut Vec<usize>,
    out: &mut Vec<CatalanPath>,
) {
    let pos = heights.len() - 1;
    let h = heights[pos];
    let pending = if Some(h) == floor {
        false
    } else {
        pending || h == wall
    };
    if pending && floor.is_none() {
        return;
    }
    if pos == n {
        if h == end && !pending {
            out.push(CatalanPath { heights: heights.clone() });
        }
        return;
    }
    let remaining = n - pos - 1;
    for next in [h.wrapping_sub(1), h + 1] {
        if next == usize::MAX || next.abs_diff(end) > remaining {
            continue;
        }
        heights.push(next);
        walk_bounded(n, end, wall, floor, pending, heights, out);
        heights.pop();
    }
}

/// `|A^N_{k1,k0}|` by the three-case recurrence on the residue `k0`, with
/// `t(k1·l − 1, ·)` feeding the `k0 = 0` column.
pub fn count_bounded(q: &BoundedPathQuery) -> BigNat {
    if q.k1 == 0 && q.k0 == 0 {
        return BigNat::zero();
    }
    let l = q.l.get();
    let mut rows = ClassicalRows::new();
    let boundary = |rows: &mut ClassicalRows, n: usize| -> BigNat {
        match (q.k1 * l).checked_sub(1) {
            Some(h) => rows.t(h as i64, n as i64),
            None => BigNat::zero(),
        }
    };
    // column[k0] = |A^m_{k1,k0}|
    let mut column: Vec<BigNat> = (0..l)
        .map(|k0| {
            if q.k1 == 0 && k0 == 1 {
                BigNat::one()
            } else {
                BigNat::zero()
            }
        })
        .collect();
    column[0] = boundary(&mut rows, 0);
    for m in 1..=q.n {
        let mut next = vec![BigNat::zero(); l];
        next[0] = boundary(&mut rows, m);
        for k0 in 1..l - 1 {
            next[k0] = &column[k0 - 1] + &column[k0 + 1];
        }
        next[l - 1] = column[l - 2].clone();
        column = next;
    }
    column.swap_remove(q.k0)
}
