//! Noncrossing perfect matchings on `2N` points and their bijection with Dyck
//! paths of length `2N`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::paths::CatalanPath;

/// Largest half-size [`enumerate_matchings`] accepts.
pub const ENUMERATION_CAP: usize = 10;

/// `N` arcs `(a, b)` with `a < b` on the points `1..=2N`, sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoncrossingMatching {
    arcs: Vec<(usize, usize)>,
}

impl NoncrossingMatching {
    /// Accepts arcs in any order and orientation.
    pub fn new(arcs: &[(usize, usize)]) -> Result<Self> {
        if !is_noncrossing(arcs) {
            return Err(Error::domain(format!("not a noncrossing perfect matching: {arcs:?}")));
        }
        let mut arcs: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        arcs.sort_unstable();
        Ok(NoncrossingMatching { arcs })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Number of arcs `N`.
    pub fn size(&self) -> usize {
        self.arcs.len()
    }
}

impl fmt::Display for NoncrossingMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.arcs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        f.write_str(&parts.join(";"))
    }
}

impl FromStr for NoncrossingMatching {
    type Err = Error;

    /// Semicolon-separated arcs, e.g. `1-2;3-4;5-6`. The empty string is the
    /// empty matching.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return NoncrossingMatching::new(&[]);
        }
        let arcs = s
            .split(';')
            .map(|arc| {
                let (a, b) = arc
                    .split_once('-')
                    .ok_or_else(|| Error::Parse(format!("arc {arc:?} is not of the form a-b")))?;
                let parse = |x: &str| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad endpoint {x:?} in arc {arc:?}")))
                };
                Ok((parse(a)?, parse(b)?))
            })
            .collect::<Result<Vec<_>>>()?;
        NoncrossingMatching::new(&arcs)
    }
}

/// True iff the arcs form a perfect matching of `1..=2N` with no two arcs
/// crossing.
pub fn is_noncrossing(arcs: &[(usize, usize)]) -> bool {
    let n = arcs.len();
    let mut seen = vec![false; 2 * n + 1];
    for &(a, b) in arcs {
        for p in [a, b] {
            if p == 0 || p > 2 * n || seen[p] {
                return false;
            }
            seen[p] = true;
        }
    }
    let norm: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for (i, &(a1, b1)) in norm.iter().enumerate() {
        for &(a2, b2) in &norm[i + 1..] {
            if (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1) {
                return false;
            }
        }
    }
    true
}

/// The map `F`: each arc opens at the least unused position `a` and closes at the
/// least `b > a` whose height drops below `f(a)`.
pub fn dyck_to_matching(p: &CatalanPath) -> Result<NoncrossingMatching> {
    if !p.is_dyck() {
        return Err(Error::domain(format!("path {p} does not end at height 0")));
    }
    let f = p.heights();
    let len = p.len();
    let mut used = vec![false; len + 1];
    let mut arcs = Vec::with_capacity(len / 2);
    for a in 1..=len {
        if used[a] {
            continue;
        }
        let b = (a + 1..=len)
            .find(|&b| f[b] < f[a])
            .expect("a Dyck path always comes back down");
        used[a] = true;
        used[b] = true;
        arcs.push((a, b));
    }
    Ok(NoncrossingMatching { arcs })
}

/// The map `G`: left endpoints are up-steps, right endpoints down-steps.
pub fn matching_to_dyck(m: &NoncrossingMatching) -> CatalanPath {
    let len = 2 * m.size();
    let mut step = vec![0i64; len + 1];
    for &(a, b) in &m.arcs {
        step[a] = 1;
        step[b] = -1;
    }
    let mut heights = Vec::with_capacity(len + 1);
    let mut h = 0usize;
    heights.push(h);
    for s in &step[1..] {
        h = if *s > 0 { h + 1 } else { h - 1 };
        heights.push(h);
    }
    CatalanPath::new(heights).expect("noncrossing matchings give Dyck paths")
}

/// All noncrossing perfect matchings on `2N` points.
pub fn enumerate_matchings(n: usize) -> Result<Vec<NoncrossingMatching>> {
    if n > ENUMERATION_CAP {
        return Err(Error::ResourceLimit {
            what: "matching half-size",
            value: n,
            cap: ENUMERATION_CAP,
        });
    }
    let mut out: Vec<NoncrossingMatching> = matchings_on(1, n)
        .into_iter()
        .map(|mut arcs| {
            arcs.sort_unstable();
            NoncrossingMatching { arcs }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Matchings of the `2n` consecutive points starting at `start`: the first point
/// pairs with some `start + 2j + 1`, splitting the rest into an inside and an
/// outside block.
fn matchings_on(start: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for j in 0..n {
        let partner = start + 2 * j + 1;
        let inside = matchings_on(start + 1, j);
        let outside = matchings_on(partner + 1, n - 1 - j);
        for i in &inside {
            for o in &outside {
                let mut arcs = Vec::with_capacity(n);
                arcs.push((start, partner));
                arcs.extend_from_slice(i);
                arcs.extend_from_slice(o);
                out.push(arcs);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> NoncrossingMatching {
        s.parse().unwrap()
    }

    fn p(s: &str) -> CatalanPath {
        s.parse().unwrap()
    }

    #[test]
    fn is_noncrossing_examples() {
        assert!(is_noncrossing(&[(1, 2), (3, 4), (5, 6)]));
        assert!(!is_noncrossing(&[(1, 3), (2, 4)]));
        assert!(!is_noncrossing(&[(1, 2), (3, 4), (5, 5)]));
        assert!(is_noncrossing(&[]));
        assert!(is_noncrossing(&[(2, 1)]));
        assert!(!is_noncrossing(&[(1, 2), (3, 7)]));
        assert!(!is_noncrossing(&[(0, 1)]));
        // perfect but an arc of even span forces a crossing
        assert!(!is_noncrossing(&[(1, 3), (2, 4)]));
    }

    #[test]
    fn figure_pairs() {
        let pairs = [
            ("0,1,0,1,0,1,0", "1-2;3-4;5-6"),
            ("0,1,2,3,2,1,0", "1-6;2-5;3-4"),
            ("0,1,0,1,2,1,0", "1-2;3-6;4-5"),
            ("0,1,2,1,0,1,0", "1-4;2-3;5-6"),
            ("0,1,2,1,2,1,0", "1-6;2-3;4-5"),
        ];
        for (path, matching) in pairs {
            assert_eq!(dyck_to_matching(&p(path)).unwrap(), m(matching), "{path}");
            assert_eq!(matching_to_dyck(&m(matching)), p(path), "{matching}");
        }
    }

    #[test]
    fn empty_matching() {
        let e = m("");
        assert_eq!(e.size(), 0);
        assert_eq!(matching_to_dyck(&e), p("0"));
        assert_eq!(dyck_to_matching(&p("0")).unwrap(), e);
    }

    #[test]
    fn non_dyck_rejected() {
        assert!(dyck_to_matching(&p("0,1,2")).is_err());
        assert!(dyck_to_matching(&p("0,1")).is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_matchings(1).unwrap(), vec![m("1-2")]);
        assert_eq!(enumerate_matchings(3).unwrap().len(), 5);
        assert_eq!(enumerate_matchings(4).unwrap().len(), 14);
        assert_eq!(enumerate_matchings(0).unwrap(), vec![m("")]);
        assert!(matches!(enumerate_matchings(11), Err(Error::ResourceLimit { cap: 10, .. })));
    }

    #[test]
    fn text_format_round_trip() {
        let x = m("5-6; 1-4 ;2-3");
        assert_eq!(x.to_string(), "1-4;2-3;5-6");
        assert!("1-2;3".parse::<NoncrossingMatching>().is_err());
        assert!("1-a".parse::<NoncrossingMatching>().is_err());
        assert!("1-3;2-4".parse::<NoncrossingMatching>().is_err());
    }

    #[test]
    fn neighbor_property() {
        for n in 0..=7 {
            for mm in enumerate_matchings(n).unwrap() {
                let lefts: Vec<usize> = mm.arcs().iter().map(|a| a.0).collect();
                let rights: Vec<usize> = mm.arcs().iter().map(|a| a.1).collect();
                for &(a, b) in mm.arcs() {
                    assert!(a + 1 == b || lefts.contains(&(a + 1)), "{mm}");
                    assert!(b - 1 == a || rights.contains(&(b - 1)), "{mm}");
                    assert_eq!((b - a) % 2, 1);
                }
            }
        }
    }
}
