//! Rank walks and rank sets.
//!
//! For coprime `(m,n)` the `m+n` starting ranks of a path are pairwise
//! distinct, so the path is determined by the set of them. Most of the
//! inversion machinery works on sorted rank sets rather than on words.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Frame, PathWord, Step};
use crate::sweep::{EnLetter, EnWord, SwLetter, SwWord};

/// Starting rank of each step, in path order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankWalk {
    frame: Frame,
    values: Vec<i64>,
}

impl RankWalk {
    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn min(&self) -> i64 {
        self.values.iter().copied().min().unwrap_or(0)
    }
}

pub fn rank_walk(p: &PathWord) -> RankWalk {
    let values: Vec<i64> = p.start_ranks().collect();
    debug_assert!({
        let mut v = values.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    });
    RankWalk {
        frame: p.frame(),
        values,
    }
}

/// A sorted rank set `r_1 < r_2 < ... < r_{m+n}` satisfying the rank-set
/// characterisation (every member has exactly one of `l+m`, `l-n`).
///
/// Positions are 1-based throughout the public API.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RankSet {
    frame: Frame,
    sorted: Vec<i64>,
}

impl Serialize for RankSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.sorted.serialize(serializer)
    }
}

impl RankSet {
    /// Builds a rank set from arbitrary-order values, checking cardinality,
    /// membership of 0, and the successor condition.
    pub fn new(frame: Frame, values: impl IntoIterator<Item = i64>) -> Result<Self> {
        let mut sorted: Vec<i64> = values.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        if !validate_rank_set(frame, &sorted)? {
            return Err(Error::InvalidRankSet(format!("{sorted:?}")));
        }
        Ok(RankSet { frame, sorted })
    }

    pub(crate) fn from_sorted_unchecked(frame: Frame, sorted: Vec<i64>) -> Self {
        debug_assert!(sorted.windows(2).all(|w| w[0] < w[1]));
        RankSet { frame, sorted }
    }

    /// `R_0 = {0, 1, ..., m+n-1}`, the rank set of the area-0 path.
    pub fn base(frame: Frame) -> Self {
        RankSet {
            frame,
            sorted: (0..frame.len() as i64).collect(),
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// `r_i`, 1-based.
    pub fn rank(&self, i: usize) -> i64 {
        self.sorted[i - 1]
    }

    pub fn contains(&self, x: i64) -> bool {
        self.sorted.binary_search(&x).is_ok()
    }

    /// 1-based position of `x`, if present.
    pub fn position(&self, x: i64) -> Option<usize> {
        self.sorted.binary_search(&x).ok().map(|i| i + 1)
    }

    pub fn min(&self) -> i64 {
        self.sorted[0]
    }

    pub fn max(&self) -> i64 {
        *self.sorted.last().unwrap()
    }

    pub fn is_base(&self) -> bool {
        self.max() == self.frame.len() as i64 - 1 && self.min() == 0
    }

    pub fn is_dyck(&self) -> bool {
        self.min() >= 0
    }

    /// Same set viewed in the transposed frame.
    pub fn transposed(&self) -> RankSet {
        RankSet {
            frame: self.frame.transposed(),
            sorted: self.sorted.clone(),
        }
    }
}

impl fmt::Display for RankSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.sorted.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Parses comma-separated integers into a rank set of `frame`.
pub fn parse_rank_set(text: &str, frame: Frame) -> Result<RankSet> {
    let values = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidRankSet(text.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    RankSet::new(frame, values)
}

pub fn rank_set(p: &PathWord) -> RankSet {
    let mut sorted = rank_walk(p).values;
    sorted.sort_unstable();
    RankSet::from_sorted_unchecked(p.frame(), sorted)
}

fn shape_check(frame: Frame, values: &[i64]) -> Result<Vec<i64>> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != frame.len() {
        return Err(Error::WrongCardinality {
            expected: frame.len(),
            got: sorted.len(),
        });
    }
    if sorted.binary_search(&0).is_err() {
        return Err(Error::MissingZero);
    }
    Ok(sorted)
}

/// True iff every member `l` has exactly one of `l+m`, `l-n` in the set.
pub fn validate_rank_set(frame: Frame, values: &[i64]) -> Result<bool> {
    let sorted = shape_check(frame, values)?;
    let has = |x: i64| sorted.binary_search(&x).is_ok();
    let (m, n) = (frame.mi(), frame.ni());
    Ok(sorted.iter().all(|&l| has(l + m) != has(l - n)))
}

/// The four local characterisations of a rank set, in order:
/// at least one of `l+m`/`l-n`; exactly one of them;
/// at least one of `l-m`/`l+n`; exactly one of them.
pub fn successor_conditions(frame: Frame, values: &[i64]) -> Result<[bool; 4]> {
    let sorted = shape_check(frame, values)?;
    let has = |x: i64| sorted.binary_search(&x).is_ok();
    let (m, n) = (frame.mi(), frame.ni());
    let all = |f: &dyn Fn(i64) -> bool| sorted.iter().all(|&l| f(l));
    Ok([
        all(&|l| has(l + m) || has(l - n)),
        all(&|l| has(l + m) != has(l - n)),
        all(&|l| has(l - m) || has(l + n)),
        all(&|l| has(l - m) != has(l + n)),
    ])
}

/// Rebuilds the path by walking from 0: step up to `l+m` when present,
/// otherwise down to `l-n`.
pub fn path_from_ranks(frame: Frame, values: &[i64]) -> Result<PathWord> {
    let sorted = shape_check(frame, values)?;
    let has = |x: i64| sorted.binary_search(&x).is_ok();
    let (m, n) = (frame.mi(), frame.ni());
    let mut steps = Vec::with_capacity(frame.len());
    let mut here = 0i64;
    for i in 0..frame.len() {
        if i > 0 && here == 0 {
            return Err(Error::InvalidRankSet("walk closed early".into()));
        }
        if has(here + m) {
            steps.push(Step::U);
            here += m;
        } else if has(here - n) {
            steps.push(Step::D);
            here -= n;
        } else {
            return Err(Error::InvalidRankSet(format!("walk stuck at {here}")));
        }
    }
    if here != 0 {
        return Err(Error::InvalidRankSet("walk did not close".into()));
    }
    PathWord::new(frame, steps)
        .map_err(|_| Error::InvalidRankSet("walk has wrong step counts".into()))
}

pub fn path_from_rank_set(rs: &RankSet) -> PathWord {
    path_from_ranks(rs.frame, &rs.sorted).expect("RankSet invariant")
}

/// Ranks of south, west, east and north ends of the nodes of a path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndSets {
    pub south: Vec<i64>,
    pub west: Vec<i64>,
    pub east: Vec<i64>,
    pub north: Vec<i64>,
}

pub fn end_sets(rs: &RankSet) -> EndSets {
    let (m, n) = (rs.frame.mi(), rs.frame.ni());
    let pick = |f: &dyn Fn(i64) -> bool| -> Vec<i64> {
        rs.sorted.iter().copied().filter(|&x| f(x)).collect()
    };
    EndSets {
        south: pick(&|x| rs.contains(x + m)),
        west: pick(&|x| rs.contains(x - n)),
        east: pick(&|x| rs.contains(x + n)),
        north: pick(&|x| rs.contains(x - m)),
    }
}

pub fn sw_word(rs: &RankSet) -> SwWord {
    let m = rs.frame.mi();
    let letters = rs
        .sorted
        .iter()
        .map(|&x| {
            if rs.contains(x + m) {
                SwLetter::S
            } else {
                SwLetter::W
            }
        })
        .collect();
    SwWord::from_letters_unchecked(rs.frame, letters)
}

pub fn en_word(rs: &RankSet) -> EnWord {
    let n = rs.frame.ni();
    let letters = rs
        .sorted
        .iter()
        .map(|&x| {
            if rs.contains(x + n) {
                EnLetter::E
            } else {
                EnLetter::N
            }
        })
        .collect();
    EnWord::from_letters_unchecked(rs.frame, letters)
}

/// `max(R) - R`.
pub fn complement(rs: &RankSet) -> RankSet {
    let top = rs.max();
    let sorted = rs.sorted.iter().rev().map(|&x| top - x).collect();
    RankSet::from_sorted_unchecked(rs.frame, sorted)
}

/// Number of south-end ranks in `{0, ..., m+n}`.
pub fn key_of(rs: &RankSet) -> usize {
    let (m, top) = (rs.frame.mi(), rs.frame.len() as i64);
    rs.sorted
        .iter()
        .filter(|&&x| (0..=top).contains(&x) && rs.contains(x + m))
        .count()
}

/// Number of ranks in `{0, ..., m+n}`; the position after which `m+n`
/// would be inserted.
pub fn delta_of(rs: &RankSet) -> usize {
    let top = rs.frame.len() as i64;
    rs.sorted
        .iter()
        .filter(|&&x| (0..=top).contains(&x))
        .count()
}

/// `(sum(R) - binomial(m+n, 2)) / (m+n)`.
pub fn area_from_ranks(rs: &RankSet) -> Result<usize> {
    let len = rs.frame.len() as i64;
    let excess: i64 = rs.sorted.iter().sum::<i64>() - len * (len - 1) / 2;
    if excess < 0 || excess % len != 0 {
        return Err(Error::NonIntegralArea);
    }
    Ok((excess / len) as usize)
}
