//! Integer partitions and pairs of partitions.
//!
//! Every axis in this crate is ordered reverse-lexicographically: for
//! partitions of the same size `(d)` comes first and `(1, ..., 1)` last.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A partition, stored as its non-increasing list of positive parts.
///
/// The derived `Ord` is plain lexicographic order on the parts; canonical
/// axis order is the reverse of that within one size.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting zero parts and increasing sequences.
    pub fn new(parts: Vec<usize>) -> Result<Self, Error> {
        if parts.contains(&0) {
            return Err(Error::Parse(format!("partition {parts:?} has a zero part")));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("partition {parts:?} is not non-increasing")));
        }
        Ok(Partition { parts })
    }

    /// Sorts and strips zeros, so any multiset of sizes is accepted.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part `i` (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose of the Young diagram.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (0..first)
            .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// True iff the diagram of `self` contains the diagram of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Every part multiplied by `k`.
    pub fn scaled(&self, k: usize) -> Partition {
        Partition::from_unsorted(self.parts.iter().map(|p| p * k).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected '(a,b,...)', got {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = inner
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {x:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A pair `(plus, minus)` of partitions, the label of a mixed tensor module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PartitionPair {
    pub plus: Partition,
    pub minus: Partition,
}

impl PartitionPair {
    pub fn new(plus: Partition, minus: Partition) -> Self {
        PartitionPair { plus, minus }
    }

    pub fn empty() -> Self {
        PartitionPair::default()
    }

    pub fn sizes(&self) -> (usize, usize) {
        (self.plus.size(), self.minus.size())
    }
}

impl fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.plus, self.minus)
    }
}

impl fmt::Debug for PartitionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartitionPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected '((..),(..))', got {s:?}")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| Error::Parse(format!("missing ')' in {s:?}")))?;
        let (first, rest) = inner.split_at(close + 1);
        let second = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse(format!("missing ',' between partitions in {s:?}")))?;
        Ok(PartitionPair::new(first.parse()?, second.parse()?))
    }
}

impl Serialize for PartitionPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PartitionPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All partitions of `d` in reverse-lexicographic order.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: prefix.clone() });
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            prefix.push(first);
            go(rest - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// Number of partitions of `d` by the pentagonal-number recurrence.
pub fn partition_count(d: usize) -> u64 {
    let mut p = vec![0i64; d + 1];
    p[0] = 1;
    for m in 1..=d {
        let mut acc = 0i64;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2];
            }
        }
        p[m] = acc;
    }
    p[d] as u64
}

/// Pairs `(λ, μ)` with `|λ| ≤ p`, `|μ| ≤ q` and `|λ| - |μ| = p - q`.
///
/// Blocks run over decreasing `|λ|`; inside a block `λ` varies slowest and
/// both components follow reverse-lexicographic order.
pub fn pair_axis(p: usize, q: usize) -> Vec<PartitionPair> {
    let mut axis = Vec::new();
    for i in 0..=p.min(q) {
        let minus = partitions_of(q - i);
        for plus in partitions_of(p - i) {
            for m in &minus {
                axis.push(PartitionPair::new(plus.clone(), m.clone()));
            }
        }
    }
    axis
}

/// Partitions with `|λ| ≤ p` and `|λ| ≡ p (mod 2)`, in blocks of decreasing size.
pub fn parity_axis(p: usize) -> Vec<Partition> {
    (0..=p / 2).flat_map(|i| partitions_of(p - 2 * i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partitions_in_reverse_lex_order() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![part("(3)"), part("(2,1)"), part("(1,1,1)")]);
        let five = partitions_of(5);
        assert_eq!(five.len(), 7);
        assert_eq!(five[0], part("(5)"));
        assert_eq!(five[6], part("(1,1,1,1,1)"));
        for w in five.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn counts_match_recurrence() {
        for d in 0..=15 {
            let all = partitions_of(d);
            assert_eq!(all.len() as u64, partition_count(d), "d = {d}");
            assert!(all.iter().all(|p| p.size() == d));
            let mut dedup = all.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
        }
        assert_eq!(partition_count(12), 77);
    }

    #[test]
    fn conjugation() {
        assert_eq!(part("(2,1)").conjugate(), part("(2,1)"));
        assert_eq!(part("(3)").conjugate(), part("(1,1,1)"));
        assert_eq!(part("(2,1)").scaled(2).conjugate(), part("(2,2,1,1)"));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for d in 0..=12 {
            for p in partitions_of(d) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn containment() {
        assert!(part("(2,1)").contains(&part("(1)")));
        assert!(!part("(2,1)").contains(&part("(2,2)")));
        assert!(part("(4,2)").contains(&part("(2,1)")));
        assert!(part("(1)").contains(&Partition::empty()));
        assert!(!Partition::empty().contains(&part("(1)")));
    }

    #[test]
    fn pair_axes() {
        let pp = |s: &str| s.parse::<PartitionPair>().unwrap();
        assert_eq!(pair_axis(1, 1), vec![pp("((1),(1))"), pp("((),())")]);
        assert_eq!(
            pair_axis(2, 2),
            vec![
                pp("((2),(2))"),
                pp("((2),(1,1))"),
                pp("((1,1),(2))"),
                pp("((1,1),(1,1))"),
                pp("((1),(1))"),
                pp("((),())"),
            ]
        );
        assert_eq!(pair_axis(1, 0), vec![pp("((1),())")]);
        for p in 0..5 {
            for q in 0..5 {
                let expected: u64 = (0..=p.min(q))
                    .map(|i| partition_count(p - i) * partition_count(q - i))
                    .sum();
                assert_eq!(pair_axis(p, q).len() as u64, expected);
            }
        }
        assert_eq!(pair_axis(4, 1).len(), 8);
    }

    #[test]
    fn parity_axis_blocks() {
        let axis = parity_axis(4);
        assert_eq!(axis.len(), 8);
        assert_eq!(axis[5], part("(2)"));
        assert_eq!(axis[7], Partition::empty());
        assert_eq!(
            parity_axis(3),
            vec![part("(3)"), part("(2,1)"), part("(1,1,1)"), part("(1)")]
        );
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(part("()"), Partition::empty());
        assert_eq!(part(" ( 3 , 1 ) ").to_string(), "(3,1)");
        assert!("(1,2)".parse::<Partition>().is_err());
        assert!("(1,0)".parse::<Partition>().is_err());
        assert!("1,2".parse::<Partition>().is_err());
        let pair: PartitionPair = "((2,1),())".parse().unwrap();
        assert_eq!(pair.plus, part("(2,1)"));
        assert!(pair.minus.is_empty());
        assert_eq!(pair.to_string(), "((2,1),())");
    }
}
