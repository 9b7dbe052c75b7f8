//! Finite totally ordered qualitative scales.
//!
//! A scale with `m + 1` levels is the chain `0 < 1 < ... < m`. Only the order
//! matters: levels are compared, taken min/max of, and reversed, never added.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of levels a [`Scale`] can hold.
pub const MAX_LEVELS: usize = u16::MAX as usize + 1;

/// A level of some scale, identified by its rank.
///
/// Levels do not remember their scale; operations that take a [`Scale`]
/// reject ranks above its top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Level(pub u16);

impl Level {
    pub const BOTTOM: Level = Level(0);

    pub fn rank(self) -> u16 {
        self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u16> for Level {
    fn from(rank: u16) -> Self {
        Level(rank)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Scale {
    top: u16,
}

impl Scale {
    /// A scale with `size` levels, ranks `0..size`.
    pub fn new(size: usize) -> Result<Self> {
        if size < 2 {
            return Err(Error::ScaleTooSmall(size));
        }
        if size > MAX_LEVELS {
            return Err(Error::ScaleTooLarge { got: size });
        }
        Ok(Scale {
            top: (size - 1) as u16,
        })
    }

    /// A scale whose top rank is `m` (so `m + 1` levels).
    pub fn with_top(m: u16) -> Result<Self> {
        Self::new(m as usize + 1)
    }

    pub fn size(&self) -> usize {
        self.top as usize + 1
    }

    pub fn bottom(&self) -> Level {
        Level::BOTTOM
    }

    pub fn top(&self) -> Level {
        Level(self.top)
    }

    pub fn contains(&self, level: Level) -> bool {
        level.0 <= self.top
    }

    pub fn check(&self, level: Level) -> Result<Level> {
        if self.contains(level) {
            Ok(level)
        } else {
            Err(Error::LevelOutOfRange {
                rank: level.0,
                top: self.top,
            })
        }
    }

    pub fn level(&self, rank: u16) -> Result<Level> {
        self.check(Level(rank))
    }

    pub fn levels(&self) -> impl DoubleEndedIterator<Item = Level> + Clone {
        (0..=self.top).map(Level)
    }

    /// The order-reversing involution `n`, i.e. the rank complement `m - i`.
    pub fn reverse(&self, level: Level) -> Result<Level> {
        self.check(level)?;
        Ok(Level(self.top - level.0))
    }

    /// Unchecked rank complement, for callers that already validated `level`.
    pub(crate) fn rev(&self, level: Level) -> Level {
        debug_assert!(self.contains(level));
        Level(self.top - level.0)
    }

    /// Middle element of an odd-size multiset of levels of this scale.
    pub fn median(&self, levels: &[Level]) -> Result<Level> {
        if levels.is_empty() {
            return Err(Error::EmptyMedian);
        }
        if levels.len().is_multiple_of(2) {
            return Err(Error::EvenMedian(levels.len()));
        }
        for &l in levels {
            self.check(l)?;
        }
        Ok(median_unchecked(levels))
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L[0..={}]", self.top)
    }
}

pub(crate) fn median_unchecked(levels: &[Level]) -> Level {
    let mut sorted = levels.to_vec();
    let mid = sorted.len() / 2;
    *sorted.select_nth_unstable(mid).1
}

/// `median{a, b, c}` without allocating.
pub(crate) fn median3(a: Level, b: Level, c: Level) -> Level {
    a.max(b).min(a.min(b).max(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lv(v: &[u16]) -> Vec<Level> {
        v.iter().copied().map(Level).collect()
    }

    #[test]
    fn scale_needs_two_levels() {
        assert_eq!(Scale::new(1), Err(Error::ScaleTooSmall(1)));
        assert_eq!(Scale::new(0), Err(Error::ScaleTooSmall(0)));
        let s = Scale::new(2).unwrap();
        assert_eq!(s.bottom(), Level(0));
        assert_eq!(s.top(), Level(1));
        assert!(Scale::new(MAX_LEVELS + 1).is_err());
    }

    #[test]
    fn reverse_examples() {
        let s = Scale::with_top(2).unwrap();
        assert_eq!(s.reverse(Level(0)).unwrap(), Level(2));
        assert_eq!(s.reverse(Level(1)).unwrap(), Level(1));
        let s4 = Scale::with_top(4).unwrap();
        assert_eq!(s4.reverse(Level(3)).unwrap(), Level(1));
        assert!(matches!(
            s.reverse(Level(3)),
            Err(Error::LevelOutOfRange { rank: 3, top: 2 })
        ));
    }

    /// Enumerate every map on five ranks and keep the strictly antitone
    /// involutions; the rank complement must be the only one.
    #[test]
    fn complement_is_the_only_antitone_involution() {
        let n = 5usize;
        let mut found = Vec::new();
        let mut map = vec![0usize; n];
        let total = n.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            for slot in map.iter_mut() {
                *slot = c % n;
                c /= n;
            }
            let involution = (0..n).all(|i| map[map[i]] == i);
            let antitone = (0..n).all(|i| (0..n).all(|j| i >= j || map[i] > map[j]));
            if involution && antitone {
                found.push(map.clone());
            }
        }
        assert_eq!(found, vec![vec![4, 3, 2, 1, 0]]);
        let s = Scale::with_top(4).unwrap();
        for (i, &img) in found[0].iter().enumerate() {
            assert_eq!(s.reverse(Level(i as u16)).unwrap(), Level(img as u16));
        }
    }

    #[test]
    fn median_examples() {
        let s = Scale::with_top(2).unwrap();
        assert_eq!(s.median(&lv(&[0, 1, 2])).unwrap(), Level(1));
        // {mu(y), mu(x), sigma(A)}
        assert_eq!(s.median(&lv(&[0, 2, 1])).unwrap(), Level(1));
        assert_eq!(s.median(&lv(&[2, 2, 0, 1, 1])).unwrap(), Level(1));
    }

    #[test]
    fn median_rank_count_oracle() {
        // The median m of 2k+1 values is the unique value with at most k
        // elements strictly below it and at most k strictly above.
        let values = lv(&[2, 2, 0, 1, 1]);
        let k = values.len() / 2;
        let oracle: Vec<Level> = values
            .iter()
            .copied()
            .filter(|&c| {
                values.iter().filter(|&&v| v < c).count() <= k
                    && values.iter().filter(|&&v| v > c).count() <= k
            })
            .collect();
        assert!(oracle.iter().all(|&c| c == Level(1)));
    }

    #[test]
    fn median_errors() {
        let s = Scale::with_top(2).unwrap();
        assert_eq!(s.median(&[]), Err(Error::EmptyMedian));
        assert_eq!(s.median(&lv(&[0, 1])), Err(Error::EvenMedian(2)));
        // a level from a larger scale
        assert!(matches!(
            s.median(&lv(&[0, 1, 7])),
            Err(Error::LevelOutOfRange { rank: 7, .. })
        ));
    }

    proptest! {
        #[test]
        fn reverse_is_antitone_involution(m in 1u16..40, a in 0u16..40, b in 0u16..40) {
            let s = Scale::with_top(m).unwrap();
            let (a, b) = (Level(a.min(m)), Level(b.min(m)));
            let ra = s.reverse(a).unwrap();
            let rb = s.reverse(b).unwrap();
            prop_assert_eq!(s.reverse(ra).unwrap(), a);
            prop_assert_eq!(a <= b, rb <= ra);
        }

        #[test]
        fn median_is_monotone(
            m in 1u16..10,
            raw in prop::collection::vec(0u16..10, 1..8),
            idx in 0usize..8,
            bump in 0u16..10,
        ) {
            let s = Scale::with_top(m).unwrap();
            let mut v: Vec<Level> = raw.iter().map(|&r| Level(r.min(m))).collect();
            if v.len().is_multiple_of(2) { v.pop(); }
            let before = s.median(&v).unwrap();
            let i = idx % v.len();
            v[i] = Level((v[i].0 + bump).min(m));
            prop_assert!(s.median(&v).unwrap() >= before);
        }

        #[test]
        fn median_of_constant(m in 1u16..10, a in 0u16..10, n in 0usize..5) {
            let s = Scale::with_top(m).unwrap();
            let a = Level(a.min(m));
            prop_assert_eq!(s.median(&vec![a; 2 * n + 1]).unwrap(), a);
        }

        #[test]
        fn median3_matches_sort(a in 0u16..6, b in 0u16..6, c in 0u16..6) {
            let (a, b, c) = (Level(a), Level(b), Level(c));
            prop_assert_eq!(median3(a, b, c), median_unchecked(&[a, b, c]));
        }
    }
}
