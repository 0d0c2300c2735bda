//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any of them fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use tiltmult::matchings::{dyck_to_matching, enumerate_matchings, matching_to_dyck, NoncrossingMatching};
use tiltmult::paths::{count_paths, enumerate_paths, CatalanPath};
use tiltmult::plot::parse_plot_csv;
use tiltmult::sl2::{t_dp, ClassicalRows};
use tiltmult::spectral::{
    asymptotic, cosine_sum, cosine_sum_float, eigenpair, matrix_power_column, p_spectral, respects_upper_bound,
    TransferMatrix,
};
use tiltmult::tilting::{p_dp, p_explicit, p_from_paths, p_recurrence, PathBackend};
use tiltmult::{split_weight, BigNat, RootOrder};

type Outcome = Result<String, String>;

fn l(v: usize) -> RootOrder {
    RootOrder::new(v as i64).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan_sequence() -> Outcome {
    let expected: [u64; 11] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, &c) in expected.iter().enumerate() {
        let c = BigNat::from(c);
        let dp = t_dp(2 * n).get(0).clone();
        let counted = count_paths(2 * n as i64, 0);
        ensure(dp == c && counted == c, || format!("N={n}: t_dp {dp}, count_paths {counted}, want {c}"))?;
        if n <= 8 {
            let m = enumerate_matchings(n).map_err(|e| e.to_string())?.len();
            ensure(BigNat::from(m) == c, || format!("N={n}: {m} matchings, want {c}"))?;
        }
    }
    Ok("t(0,2N) for N <= 10 by dp and path counts, N <= 8 by matchings".into())
}

fn bijection_round_trip() -> Outcome {
    let mut paths = 0;
    let mut matchings = 0;
    for n in 0..=8 {
        for p in enumerate_paths(2 * n, 0).map_err(|e| e.to_string())? {
            let m = dyck_to_matching(&p).map_err(|e| e.to_string())?;
            ensure(matching_to_dyck(&m) == p, || format!("G(F(p)) != p for {p}"))?;
            paths += 1;
        }
        for m in enumerate_matchings(n).map_err(|e| e.to_string())? {
            let back = dyck_to_matching(&matching_to_dyck(&m)).map_err(|e| e.to_string())?;
            ensure(back == m, || format!("F(G(m)) != m for {m}"))?;
            matchings += 1;
        }
    }
    let figures = [
        ("0,1,0,1,0,1,0", "1-2;3-4;5-6"),
        ("0,1,2,3,2,1,0", "1-6;2-5;3-4"),
        ("0,1,0,1,2,1,0", "1-2;3-6;4-5"),
        ("0,1,2,1,0,1,0", "1-4;2-3;5-6"),
        ("0,1,2,1,2,1,0", "1-6;2-3;4-5"),
    ];
    for (p, m) in figures {
        let p: CatalanPath = p.parse().map_err(|e: tiltmult::Error| e.to_string())?;
        let m: NoncrossingMatching = m.parse().map_err(|e: tiltmult::Error| e.to_string())?;
        ensure(dyck_to_matching(&p).ok().as_ref() == Some(&m), || format!("F({p}) != {m}"))?;
        ensure(matching_to_dyck(&m) == p, || format!("G({m}) != {p}"))?;
    }
    Ok(format!("{paths} paths, {matchings} matchings, 5 figure pairs"))
}

fn four_way_agreement() -> Outcome {
    let mut compared = 0;
    for lv in [3, 5, 7, 9] {
        let l = l(lv);
        for n in 0..=20 {
            let row = p_dp(n, l);
            let column = matrix_power_column(n, l);
            for k in 0..=n {
                let want = row.get(k);
                let explicit = p_explicit(k, n, l);
                let paths = p_from_paths(k, n, l, PathBackend::Count).map_err(|e| e.to_string())?;
                ensure(&explicit == want && &paths == want, || {
                    format!("l={lv} N={n} k={k}: dp {want}, explicit {explicit}, paths {paths}")
                })?;
                if k + 2 <= lv {
                    ensure(&column[k] == want, || format!("l={lv} N={n} k={k}: matrix {}", column[k]))?;
                }
                if split_weight(k, l).k0 + 1 < lv {
                    let rec = p_recurrence(k, n, l).map_err(|e| e.to_string())?;
                    ensure(&rec == want, || format!("l={lv} N={n} k={k}: recurrence {rec}"))?;
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{compared} values"))
}

fn spectral_recovery() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for lv in [3, 5, 7] {
        let l = l(lv);
        for n in 0..=40 {
            let row = p_dp(n, l);
            for k in 0..=lv - 2 {
                let v = p_spectral(k, n, l, 128).map_err(|e| format!("l={lv} N={n} k={k}: {e}"))?;
                ensure(&v.rounded == row.get(k) && v.error_bound < 0.5, || {
                    format!("l={lv} N={n} k={k}: rounded {} (bound {:e}), dp {}", v.rounded, v.error_bound, row.get(k))
                })?;
                worst = worst.max(v.error_bound);
                count += 1;
            }
        }
    }
    Ok(format!("{count} values, largest certified error {worst:.3e}"))
}

fn bound_and_envelope() -> Outcome {
    let mut count = 0;
    for lv in [3, 5, 7] {
        let l = l(lv);
        for n in 0..=40 {
            let row = p_dp(n, l);
            for k in 0..=lv - 2 {
                let p = row.get(k);
                let below = respects_upper_bound(p, k, n, l).map_err(|e| e.to_string())?;
                ensure(below, || format!("l={lv} N={n} k={k}: {p} above upper bound"))?;
                let est = asymptotic(k, n, l).map_err(|e| e.to_string())?;
                ensure(est.contains(p), || format!("l={lv} N={n} k={k}: {p} outside envelope"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} values, no violations"))
}

fn identity_suite() -> Outcome {
    let mut rows = ClassicalRows::new();
    for n in 0..=60 {
        let row = rows.row(n);
        let dim: BigNat = row.values().iter().enumerate().map(|(k, m)| m * BigNat::from(k + 1)).sum();
        ensure(dim == BigNat::one() << n, || format!("dimension sum at N={n} is {dim}"))?;
        for (k, m) in row.values().iter().enumerate() {
            ensure((k + n) % 2 == 0 || m.is_zero(), || format!("t({k},{n}) nonzero against parity"))?;
        }
    }
    let mut worst_cos: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    for lv in (3..=25).step_by(2) {
        let l = l(lv);
        for n in 0..=4 * lv as i64 {
            if let Ok(v) = cosine_sum(n, l) {
                let gap = (cosine_sum_float(n, l) - v as f64).abs();
                worst_cos = worst_cos.max(gap);
                ensure(gap < 1e-10, || format!("cosine sum l={lv} n={n} off by {gap:e}"))?;
            } else {
                ensure(n % (2 * lv as i64) == 0, || format!("cosine sum rejected l={lv} n={n}"))?;
            }
        }
        let t = TransferMatrix::new(l);
        for s in 1..lv {
            let r = eigenpair(s, l).map_err(|e| e.to_string())?.residual(&t);
            worst_res = worst_res.max(r);
            ensure(r < 1e-12, || format!("eigen residual l={lv} s={s} is {r:e}"))?;
        }
    }
    Ok(format!("cosine gap {worst_cos:.1e}, eigen residual {worst_res:.1e}"))
}

fn asymptotics_command() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_tiltmult"))
        .args(["asymptotics", "--l", "5", "--k", "0", "--min-N", "10", "--max-N", "40"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let rows = parse_plot_csv(&out.stdout[..]).map_err(|e| e.to_string())?;
    let even: Vec<_> = rows.iter().filter(|r| r.n % 2 == 0).collect();
    ensure(even.len() == 16, || format!("expected 16 even rows, got {}", even.len()))?;
    // with leading = a/b and error_bound = c/d read exactly from the CSV:
    // |p/leading - 1| <= r_N  iff  |p*b - a|*d <= c*b,
    // and r_N < r_M  iff  c*b*a'*d' < c'*b'*a*d
    let mut prev: Option<(BigInt, BigInt)> = None;
    for r in &even {
        let (a, b) = r.leading.as_ratio();
        let (c, d) = r.error_bound.as_ratio();
        let (a, b, c, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(c), BigInt::from(d));
        ensure(!a.is_zero(), || format!("N={}: leading term is zero", r.n))?;
        let p = BigInt::from(r.p_exact.clone());
        let gap = (&p * &b - &a).abs();
        ensure(gap * &d <= &c * &b, || {
            format!("N={}: p={} outside {} +/- {}", r.n, r.p_exact, r.leading, r.error_bound)
        })?;
        let (num, den) = (&c * &b, &a * &d);
        if let Some((pn, pd)) = &prev {
            ensure(&num * pd < pn * &den, || format!("r_N does not decrease at N={}", r.n))?;
        }
        prev = Some((num, den));
    }
    Ok(format!(
        "exact check; r_10 = {:.3e} down to r_40 = {:.3e}",
        even[0].relative_error(),
        even[even.len() - 1].relative_error()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 7] = [
        ("Catalan sequence", catalan_sequence, 5),
        ("bijection round trip", bijection_round_trip, 10),
        ("four-way p agreement", four_way_agreement, 30),
        ("spectral integer recovery", spectral_recovery, 30),
        ("upper bound and envelope", bound_and_envelope, 30),
        ("identity suite", identity_suite, 30),
        ("asymptotics CSV", asymptotics_command, 5),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed <= Duration::from_secs(budget) {
                Ok(detail)
            } else {
                Err(format!("took {elapsed:.2?}, budget {budget}s"))
            }
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("{failures} of 7 criteria failed");
        std::process::exit(1);
    }
    println!("all 7 criteria passed");
}
