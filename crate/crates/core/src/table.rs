//! Shared exact-arithmetic types and the decomposition record.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer. Every multiplicity is one.
pub type BigNat = BigUint;

pub(crate) static ZERO: BigNat = BigUint::ZERO;

/// The order `l` of the root of unity: odd and at least 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOrder(usize);

impl RootOrder {
    pub fn new(l: i64) -> Result<Self> {
        if l >= 3 && l % 2 == 1 {
            Ok(RootOrder(l as usize))
        } else {
            Err(Error::InvalidRootOrder(l))
        }
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }
}

impl fmt::Display for RootOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for RootOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let l: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))?;
        RootOrder::new(l)
    }
}

/// A weight `k` written as `k = k1 * l + k0` with `0 <= k0 < l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeightIndex {
    pub k: usize,
    pub k1: usize,
    pub k0: usize,
}

pub fn split_weight(k: usize, l: RootOrder) -> WeightIndex {
    let l = l.get();
    WeightIndex {
        k,
        k1: k / l,
        k0: k % l,
    }
}

/// Which tensor power a table decomposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// `V(1)^{⊗N}` over the classical enveloping algebra.
    Classical,
    /// `T(1)^{⊗N}` at a root of unity of the given order.
    Tilting(usize),
}

/// Sparse map from weight to multiplicity for a fixed tensor power.
///
/// Absent keys read as zero, which also realizes the conventions
/// `t(-1, N) = p(-1, N) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    n: usize,
    flavor: Flavor,
    entries: BTreeMap<usize, BigNat>,
}

impl MultiplicityTable {
    /// Builds a table, dropping zero multiplicities.
    pub fn from_entries(n: usize, flavor: Flavor, entries: impl IntoIterator<Item = (usize, BigNat)>) -> Self {
        let mut map = BTreeMap::new();
        for (k, m) in entries {
            if !m.is_zero() {
                *map.entry(k).or_insert_with(BigNat::zero) += m;
            }
        }
        MultiplicityTable { n, flavor, entries: map }
    }

    /// Builds a table exactly as given, zeros included. Use [`validate_table`] to
    /// check it.
    pub fn from_raw_entries(n: usize, flavor: Flavor, entries: BTreeMap<usize, BigNat>) -> Self {
        MultiplicityTable { n, flavor, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn get(&self, k: usize) -> &BigNat {
        self.entries.get(&k).unwrap_or(&ZERO)
    }

    pub fn entries(&self) -> &BTreeMap<usize, BigNat> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigNat)> + '_ {
        self.entries.iter().map(|(&k, m)| (k, m))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("table serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// One broken invariant of a [`MultiplicityTable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// A zero multiplicity was stored explicitly.
    ZeroEntry { k: usize },
    /// A weight larger than the tensor power is present.
    WeightAboveN { k: usize },
    /// Classical table with a nonzero entry at `k ≢ N (mod 2)`.
    Parity { k: usize },
    /// Classical table whose total dimension `Σ m_k (k+1)` is not `2^N`.
    DimensionSum { expected: BigNat, actual: BigNat },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroEntry { k } => write!(f, "zero entry stored at k={k}"),
            Violation::WeightAboveN { k } => write!(f, "weight k={k} exceeds N"),
            Violation::Parity { k } => write!(f, "parity violation at k={k}"),
            Violation::DimensionSum { expected, actual } => {
                write!(f, "dimension-sum violation: expected {expected}, got {actual}")
            }
        }
    }
}

pub fn validate_table(tbl: &MultiplicityTable) -> Vec<Violation> {
    let mut out = Vec::new();
    for (&k, m) in &tbl.entries {
        if m.is_zero() {
            out.push(Violation::ZeroEntry { k });
        }
        if k > tbl.n {
            out.push(Violation::WeightAboveN { k });
        }
    }
    if tbl.flavor == Flavor::Classical {
        for (&k, m) in &tbl.entries {
            if !m.is_zero() && (k % 2) != (tbl.n % 2) {
                out.push(Violation::Parity { k });
            }
        }
        let actual: BigNat = tbl.entries.iter().map(|(&k, m)| m * BigNat::from(k + 1)).sum();
        let expected = BigNat::one() << tbl.n;
        if actual != expected {
            out.push(Violation::DimensionSum { expected, actual });
        }
    }
    out
}

struct DecimalEntries<'a>(&'a BTreeMap<usize, BigNat>);

impl Serialize for DecimalEntries<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, m) in self.0 {
            map.serialize_entry(&k.to_string(), &m.to_string())?;
        }
        map.end()
    }
}

impl Serialize for MultiplicityTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MultiplicityTable", 3)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("flavor", &self.flavor)?;
        st.serialize_field("entries", &DecimalEntries(&self.entries))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRepr {
    #[serde(rename = "N")]
    n: usize,
    flavor: Flavor,
    entries: BTreeMap<String, String>,
}

impl<'de> Deserialize<'de> for MultiplicityTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = TableRepr::deserialize(deserializer)?;
        let mut entries = BTreeMap::new();
        for (k, m) in repr.entries {
            let k: usize = k.parse().map_err(|_| D::Error::custom(format!("bad weight key {k:?}")))?;
            let m = BigNat::parse_bytes(m.as_bytes(), 10)
                .ok_or_else(|| D::Error::custom(format!("bad multiplicity {m:?}")))?;
            entries.insert(k, m);
        }
        Ok(MultiplicityTable::from_raw_entries(repr.n, repr.flavor, entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical(n: usize, pairs: &[(usize, u32)]) -> MultiplicityTable {
        MultiplicityTable::from_raw_entries(
            n,
            Flavor::Classical,
            pairs.iter().map(|&(k, m)| (k, BigNat::from(m))).collect(),
        )
    }

    #[test]
    fn split_weight_examples() {
        let l5 = RootOrder::new(5).unwrap();
        assert_eq!(split_weight(0, l5), WeightIndex { k: 0, k1: 0, k0: 0 });
        assert_eq!(split_weight(7, l5), WeightIndex { k: 7, k1: 1, k0: 2 });
        assert_eq!(split_weight(4, l5), WeightIndex { k: 4, k1: 0, k0: 4 });
    }

    #[test]
    fn root_order_rejects_even_and_small() {
        for bad in [-3, 0, 1, 2, 4, 10] {
            assert_eq!(RootOrder::new(bad), Err(Error::InvalidRootOrder(bad)));
        }
        assert_eq!(RootOrder::new(3).unwrap().get(), 3);
        assert_eq!("7".parse::<RootOrder>().unwrap().get(), 7);
        assert!("seven".parse::<RootOrder>().is_err());
    }

    #[test]
    fn validate_examples() {
        assert!(validate_table(&classical(1, &[(1, 1)])).is_empty());
        assert_eq!(validate_table(&classical(1, &[(0, 1)])), {
            // 1·1 = 1 ≠ 2 as well
            vec![
                Violation::Parity { k: 0 },
                Violation::DimensionSum {
                    expected: BigNat::from(2u32),
                    actual: BigNat::from(1u32),
                },
            ]
        });
        let v = validate_table(&classical(4, &[(0, 2), (2, 1)]));
        assert_eq!(
            v,
            vec![Violation::DimensionSum {
                expected: BigNat::from(16u32),
                actual: BigNat::from(5u32),
            }]
        );
        assert!(validate_table(&classical(4, &[(0, 2), (2, 3), (4, 1)])).is_empty());
    }

    #[test]
    fn validate_flags_zero_and_out_of_range() {
        let t = classical(2, &[(0, 1), (2, 1), (4, 0)]);
        let v = validate_table(&t);
        assert!(v.contains(&Violation::ZeroEntry { k: 4 }));
        assert!(v.contains(&Violation::WeightAboveN { k: 4 }));

        let tilt = MultiplicityTable::from_raw_entries(1, Flavor::Tilting(5), [(3, BigNat::from(1u8))].into());
        assert_eq!(validate_table(&tilt), vec![Violation::WeightAboveN { k: 3 }]);
    }

    #[test]
    fn from_entries_drops_zeros_and_merges() {
        let t = MultiplicityTable::from_entries(
            2,
            Flavor::Classical,
            vec![(0, BigNat::from(1u8)), (2, BigNat::zero()), (2, BigNat::from(1u8))],
        );
        assert_eq!(t.entries().len(), 2);
        assert_eq!(t.get(7), &BigNat::zero());
    }

    #[test]
    fn json_format() {
        let t = MultiplicityTable::from_entries(
            12,
            Flavor::Tilting(5),
            vec![(0, BigNat::from(7u8)), (10, BigNat::from(1u8)), (2, BigNat::from(30u8))],
        );
        assert_eq!(
            t.to_json(),
            r#"{"N":12,"flavor":{"tilting":5},"entries":{"0":"7","2":"30","10":"1"}}"#
        );
        assert_eq!(MultiplicityTable::from_json(&t.to_json()).unwrap(), t);

        let c = classical(1, &[(1, 1)]);
        assert_eq!(c.to_json(), r#"{"N":1,"flavor":"classical","entries":{"1":"1"}}"#);
    }

    #[test]
    fn json_big_values_survive() {
        let big = BigNat::parse_bytes(b"123456789012345678901234567890", 10).unwrap();
        let t = MultiplicityTable::from_entries(100, Flavor::Classical, vec![(0, big.clone())]);
        let back = MultiplicityTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back.get(0), &big);
    }

    #[test]
    fn json_rejects_garbage() {
        assert!(MultiplicityTable::from_json(r#"{"N":1,"flavor":"classical","entries":{"x":"1"}}"#).is_err());
        assert!(MultiplicityTable::from_json(r#"{"N":1,"flavor":"classical","entries":{"1":"-1"}}"#).is_err());
        assert!(MultiplicityTable::from_json(r#"{"N":1,"flavor":"weird","entries":{}}"#).is_err());
    }
}
