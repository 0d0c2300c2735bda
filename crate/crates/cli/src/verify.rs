//! The cross-backend invariant suite behind `tiltmult verify`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use tiltmult::matchings::{dyck_to_matching, enumerate_matchings, matching_to_dyck};
use tiltmult::paths::{
    count_bounded, count_paths, enumerate_bounded, enumerate_paths, is_partially_l_bounded, BoundedPathQuery,
};
use tiltmult::sl2::{t_bruteforce, t_convolution_with, ClassicalRows, BRUTEFORCE_CAP};
use tiltmult::spectral::{
    asymptotic, cosine_sum, cosine_sum_float, eigenpair, matrix_power_column, respects_upper_bound,
    TransferMatrix,
};
use tiltmult::tilting::{
    p_block_convolution, p_convolution, p_explicit_from_row, p_from_paths, p_recurrence, PathBackend, TiltingRows,
};
use tiltmult::{split_weight, validate_table, BigNat, RootOrder};

use crate::spectral_value;

/// Largest `N` at which the enumeration-based checks run.
const PATH_ENUMERATION_LIMIT: usize = 16;
const MATCHING_LIMIT: usize = 8;
const CONVOLUTION_LIMIT: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub message: String,
    /// A command that reproduces the failure at the smallest size found.
    pub reproduce: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    /// What was covered, for passing checks.
    pub detail: String,
    pub failure: Option<Failure>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

type Check = Result<String, Failure>;

struct Ctx {
    l: RootOrder,
    max_n: usize,
    bits: u32,
    trows: ClassicalRows,
    prows: TiltingRows,
}

impl Ctx {
    fn verify_cmd(&self, n: usize) -> String {
        format!("tiltmult verify --l {} --max-N {n}", self.l)
    }

    fn fail_at(&self, n: usize, message: String) -> Failure {
        Failure {
            message,
            reproduce: self.verify_cmd(n),
        }
    }

    fn fail_p(&self, k: usize, n: usize, backend: &str, got: &BigNat, want: &BigNat) -> Failure {
        Failure {
            message: format!("p({k},{n}) via {backend} is {got}, dp gives {want}"),
            reproduce: format!("tiltmult p --l {} --N {n} --k {k} --backend {backend}", self.l),
        }
    }
}

/// Runs every check for root order `l` and tensor powers up to `max_n`.
/// `bits` is the starting precision of the spectral evaluation.
pub fn run_suite(l: RootOrder, max_n: usize, bits: u32) -> Vec<CheckOutcome> {
    let mut ctx = Ctx {
        l,
        max_n,
        bits,
        trows: ClassicalRows::new(),
        prows: TiltingRows::new(l),
    };
    let checks: [(&'static str, fn(&mut Ctx) -> Check); 14] = [
        ("tables-valid", tables_valid),
        ("t-dp-vs-bruteforce", t_dp_vs_bruteforce),
        ("t-convolution", t_convolution),
        ("t-dimension-parity", t_dimension_parity),
        ("paths-count", paths_count),
        ("bounded-paths", bounded_paths),
        ("matching-bijection", matching_bijection),
        ("p-four-way", p_four_way),
        ("p-convolution", p_convolutions),
        ("transfer-matrix", transfer_matrix),
        ("eigenpairs", eigenpairs),
        ("cosine-sum", cosine_sums),
        ("spectral-recovery", spectral_recovery),
        ("bounds-envelope", bounds_envelope),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f(&mut ctx) {
            Ok(detail) => CheckOutcome {
                name,
                detail,
                failure: None,
            },
            Err(failure) => CheckOutcome {
                name,
                detail: String::new(),
                failure: Some(failure),
            },
        })
        .collect()
}

fn tables_valid(c: &mut Ctx) -> Check {
    for n in 0..=c.max_n {
        let t = c.trows.row(n).to_table();
        let p = c.prows.row(n).to_table();
        for (flavor, tbl) in [("classical", t), ("tilting", p)] {
            let v = validate_table(&tbl);
            if !v.is_empty() {
                return Err(c.fail_at(n, format!("{flavor} row N={n}: {}", v[0])));
            }
        }
    }
    Ok(format!("classical and tilting rows, N <= {}", c.max_n))
}

fn t_dp_vs_bruteforce(c: &mut Ctx) -> Check {
    let top = c.max_n.min(BRUTEFORCE_CAP);
    for n in 0..=top {
        let brute = t_bruteforce(n).map_err(|e| c.fail_at(n, e.to_string()))?;
        if brute != c.trows.row(n).to_table() {
            return Err(c.fail_at(n, format!("t_dp({n}) differs from iterated Clebsch-Gordan")));
        }
    }
    Ok(format!("N <= {top}"))
}

fn t_convolution(c: &mut Ctx) -> Check {
    let top = c.max_n.min(CONVOLUTION_LIMIT);
    for n in 1..=top {
        let row = c.trows.row(n).clone();
        for k in 1..=n {
            for kp in 1..=k {
                let got = t_convolution_with(&mut c.trows, k, n, kp).map_err(|e| c.fail_at(n, e.to_string()))?;
                if &got != row.get(k) {
                    return Err(c.fail_at(n, format!("t({k},{n}) split at k'={kp} gives {got}, dp gives {}", row.get(k))));
                }
            }
        }
    }
    Ok(format!("every split, N <= {top}"))
}

fn t_dimension_parity(c: &mut Ctx) -> Check {
    for n in 0..=c.max_n {
        let row = c.trows.row(n);
        let dim: BigNat = row.values().iter().enumerate().map(|(k, m)| m * BigNat::from(k + 1)).sum();
        if dim != BigNat::one() << n {
            return Err(c.fail_at(n, format!("sum of t(k,{n})(k+1) is {dim}, not 2^{n}")));
        }
        if let Some(k) = (0..=n).find(|k| (k + n) % 2 == 1 && !row.get(*k).is_zero()) {
            return Err(c.fail_at(n, format!("t({k},{n}) is nonzero against parity")));
        }
    }
    Ok(format!("N <= {}", c.max_n))
}

fn paths_count(c: &mut Ctx) -> Check {
    let top = c.max_n.min(PATH_ENUMERATION_LIMIT);
    for n in 0..=top {
        for k in 0..=n {
            let listed = enumerate_paths(n, k).map_err(|e| c.fail_at(n, e.to_string()))?.len();
            let counted = count_paths(n as i64, k as i64);
            let t = c.trows.row(n).get(k).clone();
            if BigNat::from(listed) != counted || counted != t {
                return Err(c.fail_at(n, format!("paths to ({n},{k}): listed {listed}, counted {counted}, t={t}")));
            }
        }
    }
    Ok(format!("N <= {top}"))
}

fn bounded_paths(c: &mut Ctx) -> Check {
    let top = c.max_n.min(PATH_ENUMERATION_LIMIT);
    let lv = c.l.get();
    for n in 0..=top {
        for end in 0..=n {
            let w = split_weight(end + 1, c.l);
            let q = BoundedPathQuery::new(n, c.l, w.k1, w.k0).map_err(|e| c.fail_at(n, e.to_string()))?;
            let listed = enumerate_bounded(&q).map_err(|e| c.fail_at(n, e.to_string()))?;
            let filtered: BTreeSet<String> = enumerate_paths(n, end)
                .map_err(|e| c.fail_at(n, e.to_string()))?
                .iter()
                .filter(|p| is_partially_l_bounded(p, c.l, w.k1))
                .map(|p| p.to_string())
                .collect();
            let listed_set: BTreeSet<String> = listed.iter().map(|p| p.to_string()).collect();
            let counted = count_bounded(&q);
            let low_ok = w.k1 > 0 || listed.iter().all(|p| !p.heights().contains(&(lv - 1)));
            if listed_set != filtered || counted != BigNat::from(listed.len()) || !low_ok {
                return Err(Failure {
                    message: format!(
                        "A^{n}_{{{},{}}}: listed {}, filtered {}, counted {counted}",
                        w.k1,
                        w.k0,
                        listed.len(),
                        filtered.len()
                    ),
                    reproduce: format!("tiltmult paths enumerate --N {n} --k {end} --l {}", c.l),
                });
            }
        }
    }
    Ok(format!("N <= {top}"))
}

fn matching_bijection(c: &mut Ctx) -> Check {
    let top = (c.max_n / 2).min(MATCHING_LIMIT);
    for n in 0..=top {
        let paths = enumerate_paths(2 * n, 0).map_err(|e| c.fail_at(2 * n, e.to_string()))?;
        let matchings = enumerate_matchings(n).map_err(|e| c.fail_at(2 * n, e.to_string()))?;
        let catalan = c.trows.row(2 * n).get(0).clone();
        if BigNat::from(matchings.len()) != catalan {
            return Err(c.fail_at(
                2 * n,
                format!("{} matchings on {} points, t(0,{})={catalan}", matchings.len(), 2 * n, 2 * n),
            ));
        }
        for p in &paths {
            let m = dyck_to_matching(p).map_err(|e| c.fail_at(2 * n, e.to_string()))?;
            if &matching_to_dyck(&m) != p {
                return Err(Failure {
                    message: format!("G(F({p})) != {p}"),
                    reproduce: format!("tiltmult bijection --path {p}"),
                });
            }
        }
        let images: BTreeSet<_> = paths.iter().filter_map(|p| dyck_to_matching(p).ok()).collect();
        if images.len() != matchings.len() || matchings.iter().any(|m| !images.contains(m)) {
            return Err(c.fail_at(2 * n, format!("F is not onto the matchings of {} points", 2 * n)));
        }
    }
    Ok(format!("2N <= {}", 2 * top))
}

fn p_four_way(c: &mut Ctx) -> Check {
    let lv = c.l.get();
    for n in 0..=c.max_n {
        let trow = c.trows.row(n).clone();
        let prow = c.prows.row(n).clone();
        for k in 0..=n {
            let want = prow.get(k);
            let explicit = p_explicit_from_row(&trow, k, c.l);
            if &explicit != want {
                return Err(c.fail_p(k, n, "explicit", &explicit, want));
            }
            let paths = p_from_paths(k, n, c.l, PathBackend::Count).map_err(|e| c.fail_at(n, e.to_string()))?;
            if &paths != want {
                return Err(c.fail_p(k, n, "paths", &paths, want));
            }
            if split_weight(k, c.l).k0 + 1 < lv {
                let rec = p_recurrence(k, n, c.l).map_err(|e| c.fail_at(n, e.to_string()))?;
                if &rec != want {
                    return Err(c.fail_at(n, format!("p({k},{n}) via recurrence is {rec}, dp gives {want}")));
                }
            } else if want != trow.get(k) {
                return Err(c.fail_at(n, format!("p({k},{n}) = {want} but t({k},{n}) = {}", trow.get(k))));
            }
        }
    }
    Ok(format!("dp, explicit, paths, recurrence; N <= {}", c.max_n))
}

fn p_convolutions(c: &mut Ctx) -> Check {
    let lv = c.l.get();
    let top = c.max_n.min(CONVOLUTION_LIMIT / 2);
    for n in 1..=top {
        let prow = c.prows.row(n).clone();
        for k in lv..=n {
            let w = split_weight(k, c.l);
            let want = prow.get(k);
            for kp in 1..=w.k1 {
                let got = p_convolution(w.k1, w.k0, n, kp, c.l).map_err(|e| c.fail_at(n, e.to_string()))?;
                if &got != want {
                    return Err(c.fail_at(n, format!("p({k},{n}) split at k'={kp} gives {got}, dp gives {want}")));
                }
            }
            let got = p_block_convolution(w.k1, w.k0, n, c.l).map_err(|e| c.fail_at(n, e.to_string()))?;
            if &got != want {
                return Err(c.fail_at(n, format!("p({k},{n}) by block convolution gives {got}, dp gives {want}")));
            }
        }
    }
    Ok(format!("every split, N <= {top}"))
}

fn transfer_matrix(c: &mut Ctx) -> Check {
    let lv = c.l.get();
    for n in 0..=c.max_n {
        let column = matrix_power_column(n, c.l);
        let prow = c.prows.row(n).clone();
        for k in 0..lv - 1 {
            if &column[k] != prow.get(k) {
                return Err(c.fail_p(k, n, "matrix", &column[k], prow.get(k)));
            }
        }
    }
    Ok(format!("N <= {}", c.max_n))
}

fn eigenpairs(c: &mut Ctx) -> Check {
    let lv = c.l.get();
    let t = TransferMatrix::new(c.l);
    let mut worst: f64 = 0.0;
    for s in 1..lv {
        let e = eigenpair(s, c.l).map_err(|e| c.fail_at(0, e.to_string()))?;
        let r = e.residual(&t);
        let norm_gap = (e.norm_sq() - lv as f64 / 2.0).abs();
        worst = worst.max(r);
        if r >= 1e-12 || norm_gap >= 1e-10 {
            return Err(c.fail_at(0, format!("eigenpair s={s}: residual {r:e}, norm gap {norm_gap:e}")));
        }
    }
    let d = t.dim();
    for q in 1..=d {
        let mut acc = vec![0.0; d];
        for s in 1..lv {
            let e = eigenpair(s, c.l).map_err(|e| c.fail_at(0, e.to_string()))?;
            let coeff = 2.0 / lv as f64 * (s as f64 * q as f64 * std::f64::consts::PI / lv as f64).sin();
            for (a, v) in acc.iter_mut().zip(&e.vector) {
                *a += coeff * v;
            }
        }
        let gap = acc
            .iter()
            .enumerate()
            .map(|(i, a)| (a - if i + 1 == q { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        if gap >= 1e-10 {
            return Err(c.fail_at(0, format!("reconstruction of e_{q} is off by {gap:e}")));
        }
    }
    Ok(format!("max residual {worst:.3e}"))
}

fn cosine_sums(c: &mut Ctx) -> Check {
    let lv = c.l.get() as i64;
    let mut checked = 0;
    for n in 0..=4 * lv {
        match cosine_sum(n, c.l) {
            Ok(v) => {
                let direct = cosine_sum_float(n, c.l);
                if (direct - v as f64).abs() >= 1e-10 {
                    return Err(c.fail_at(0, format!("cosine sum n={n}: closed form {v}, direct {direct}")));
                }
                checked += 1;
            }
            Err(_) if n % (2 * lv) == 0 => {}
            Err(e) => return Err(c.fail_at(0, e.to_string())),
        }
    }
    Ok(format!("{checked} values of n"))
}

fn spectral_recovery(c: &mut Ctx) -> Check {
    let lv = c.l.get();
    let mut widest = 0;
    for n in 0..=c.max_n {
        let prow = c.prows.row(n).clone();
        for k in 0..lv - 1 {
            let v = spectral_value(k, n, c.l, c.bits).map_err(|e| Failure {
                message: format!("p({k},{n}): {e}"),
                reproduce: format!("tiltmult p --l {} --N {n} --k {k} --backend spectral", c.l),
            })?;
            widest = widest.max(v.bits);
            if &v.rounded != prow.get(k) || v.error_bound >= 0.5 {
                return Err(c.fail_p(k, n, "spectral", &v.rounded, prow.get(k)));
            }
        }
    }
    Ok(format!("N <= {}, up to {widest} bits", c.max_n))
}

fn bounds_envelope(c: &mut Ctx) -> Check {
    let lv = c.l.get();
    for n in 0..=c.max_n {
        let prow = c.prows.row(n).clone();
        for k in 0..lv - 1 {
            let p = prow.get(k);
            if !respects_upper_bound(p, k, n, c.l).map_err(|e| c.fail_at(n, e.to_string()))? {
                return Err(c.fail_at(n, format!("p({k},{n}) = {p} exceeds 2^N cos^N(pi/l)")));
            }
            let est = asymptotic(k, n, c.l).map_err(|e| c.fail_at(n, e.to_string()))?;
            if !est.contains(p) {
                return Err(c.fail_at(n, format!("p({k},{n}) = {p} lies outside the asymptotic envelope")));
            }
        }
    }
    Ok(format!("N <= {}", c.max_n))
}
