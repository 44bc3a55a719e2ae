//! The sweep map and the two compatibility certificates for its image.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Frame, PathWord, Step};
use crate::ranks::{rank_walk, RankSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwLetter {
    S,
    W,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnLetter {
    E,
    N,
}

/// An SW-sequence: one letter per sorted rank, `S` for south ends and
/// `W` for west ends. As a `u`/`d` word (`S = u`, `W = d`) it is the
/// sweep image of its preimage path.
///
/// Label positions are 1-based: `pos_s(i)` is the position of the `i`-th
/// `S`, with the sentinel `pos_s(n+1) = m+n+1`; likewise `pos_w(m+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SwWord {
    frame: Frame,
    letters: Vec<SwLetter>,
    s_pos: Vec<usize>,
    w_pos: Vec<usize>,
}

impl SwWord {
    pub fn from_letters(frame: Frame, letters: Vec<SwLetter>) -> Result<Self> {
        if letters.len() != frame.len() {
            return Err(Error::LengthMismatch(letters.len(), frame.len()));
        }
        let ups = letters.iter().filter(|&&l| l == SwLetter::S).count();
        if ups != frame.n() {
            return Err(Error::WrongStepCounts {
                m: frame.m(),
                n: frame.n(),
                ups,
                downs: letters.len() - ups,
            });
        }
        Ok(Self::from_letters_unchecked(frame, letters))
    }

    pub(crate) fn from_letters_unchecked(frame: Frame, letters: Vec<SwLetter>) -> Self {
        let mut s_pos = Vec::with_capacity(frame.n() + 1);
        let mut w_pos = Vec::with_capacity(frame.m() + 1);
        for (i, l) in letters.iter().enumerate() {
            match l {
                SwLetter::S => s_pos.push(i + 1),
                SwLetter::W => w_pos.push(i + 1),
            }
        }
        s_pos.push(letters.len() + 1);
        w_pos.push(letters.len() + 1);
        SwWord {
            frame,
            letters,
            s_pos,
            w_pos,
        }
    }

    /// Accepts `S`/`W`, or the path letters `u`/`d` (and `N`/`E`).
    pub fn parse(text: &str, frame: Frame) -> Result<Self> {
        let letters = text
            .trim()
            .chars()
            .enumerate()
            .map(|(offset, c)| match c.to_ascii_lowercase() {
                's' | 'u' | 'n' => Ok(SwLetter::S),
                'w' | 'd' | 'e' => Ok(SwLetter::W),
                letter => Err(Error::BadAlphabet { letter, offset }),
            })
            .collect::<Result<Vec<_>>>()?;
        SwWord::from_letters(frame, letters)
    }

    pub fn from_path(p: &PathWord) -> SwWord {
        let letters = p
            .steps()
            .iter()
            .map(|s| match s {
                Step::U => SwLetter::S,
                Step::D => SwLetter::W,
            })
            .collect();
        Self::from_letters_unchecked(p.frame(), letters)
    }

    /// `S^n W^m`.
    pub fn base(frame: Frame) -> SwWord {
        let mut letters = vec![SwLetter::S; frame.n()];
        letters.resize(frame.len(), SwLetter::W);
        Self::from_letters_unchecked(frame, letters)
    }

    pub fn is_base(&self) -> bool {
        self.s_pos[self.frame.n() - 1] == self.frame.n()
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn letters(&self) -> &[SwLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based position.
    pub fn letter(&self, pos: usize) -> SwLetter {
        self.letters[pos - 1]
    }

    /// Position of `S_i`; `i = n+1` gives the sentinel `m+n+1`.
    pub fn pos_s(&self, i: usize) -> usize {
        self.s_pos[i - 1]
    }

    /// Position of `W_j`; `j = m+1` gives the sentinel `m+n+1`.
    pub fn pos_w(&self, j: usize) -> usize {
        self.w_pos[j - 1]
    }

    pub fn try_pos_w(&self, j: usize) -> Result<usize> {
        if j == 0 || j > self.frame.m() + 1 {
            return Err(Error::LabelOutOfRange {
                index: j,
                m: self.frame.m(),
            });
        }
        Ok(self.pos_w(j))
    }

    /// The word read as a path with `S = u`, `W = d`.
    pub fn to_path(&self) -> PathWord {
        let steps = self
            .letters
            .iter()
            .map(|l| match l {
                SwLetter::S => Step::U,
                SwLetter::W => Step::D,
            })
            .collect();
        PathWord::new(self.frame, steps).expect("letter counts checked")
    }

    pub fn is_dyck(&self) -> bool {
        self.to_path().is_dyck()
    }
}

impl fmt::Display for SwWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                SwLetter::S => "S",
                SwLetter::W => "W",
            })?;
        }
        Ok(())
    }
}

impl Serialize for SwWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An EN-sequence: `E` for east ends, `N` for north ends, per sorted rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EnWord {
    frame: Frame,
    letters: Vec<EnLetter>,
    e_pos: Vec<usize>,
    n_pos: Vec<usize>,
}

impl EnWord {
    pub fn from_letters(frame: Frame, letters: Vec<EnLetter>) -> Result<Self> {
        if letters.len() != frame.len() {
            return Err(Error::LengthMismatch(letters.len(), frame.len()));
        }
        let norths = letters.iter().filter(|&&l| l == EnLetter::N).count();
        if norths != frame.n() {
            return Err(Error::WrongStepCounts {
                m: frame.m(),
                n: frame.n(),
                ups: norths,
                downs: letters.len() - norths,
            });
        }
        Ok(Self::from_letters_unchecked(frame, letters))
    }

    pub(crate) fn from_letters_unchecked(frame: Frame, letters: Vec<EnLetter>) -> Self {
        let mut e_pos = Vec::with_capacity(frame.m());
        let mut n_pos = Vec::with_capacity(frame.n());
        for (i, l) in letters.iter().enumerate() {
            match l {
                EnLetter::E => e_pos.push(i + 1),
                EnLetter::N => n_pos.push(i + 1),
            }
        }
        EnWord {
            frame,
            letters,
            e_pos,
            n_pos,
        }
    }

    /// Accepts `E`/`N`.
    pub fn parse(text: &str, frame: Frame) -> Result<Self> {
        let letters = text
            .trim()
            .chars()
            .enumerate()
            .map(|(offset, c)| match c.to_ascii_lowercase() {
                'e' => Ok(EnLetter::E),
                'n' => Ok(EnLetter::N),
                letter => Err(Error::BadAlphabet { letter, offset }),
            })
            .collect::<Result<Vec<_>>>()?;
        EnWord::from_letters(frame, letters)
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn letters(&self) -> &[EnLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn pos_e(&self, j: usize) -> usize {
        self.e_pos[j - 1]
    }

    pub fn pos_n(&self, i: usize) -> usize {
        self.n_pos[i - 1]
    }

    /// Reversed and relabelled `E -> W`, `N -> S`.
    pub fn reversed_as_sw(&self) -> SwWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| match l {
                EnLetter::E => SwLetter::W,
                EnLetter::N => SwLetter::S,
            })
            .collect();
        SwWord::from_letters_unchecked(self.frame, letters)
    }
}

impl fmt::Display for EnWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            f.write_str(match l {
                EnLetter::E => "E",
                EnLetter::N => "N",
            })?;
        }
        Ok(())
    }
}

impl Serialize for EnWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Sorts the steps of `p` by the rank of their starting points.
///
/// Defined for any path; only Dyck input is guaranteed a Dyck image.
pub fn phi(p: &PathWord) -> PathWord {
    let walk = rank_walk(p);
    let mut order: Vec<(i64, Step)> = walk
        .values()
        .iter()
        .copied()
        .zip(p.steps().iter().copied())
        .collect();
    order.sort_unstable_by_key(|&(r, _)| r);
    assert!(
        order.windows(2).all(|w| w[0].0 != w[1].0),
        "ranks of a coprime frame are distinct"
    );
    PathWord::new(p.frame(), order.into_iter().map(|(_, s)| s).collect())
        .expect("sorting keeps step counts")
}

/// Whether the sorted ranks are compatible with `sigma`: `r(S_i) + m` and
/// `r(W_j) - n` all lie in the set. `ranks` must be strictly increasing,
/// nonnegative, and start at 0; otherwise the answer is `false`.
pub fn is_compatible_ranks(sigma: &SwWord, ranks: &[i64]) -> Result<bool> {
    if ranks.len() != sigma.len() {
        return Err(Error::LengthMismatch(sigma.len(), ranks.len()));
    }
    if ranks.first() != Some(&0) || ranks.windows(2).any(|w| w[0] >= w[1]) {
        return Ok(false);
    }
    let (m, n) = (sigma.frame().mi(), sigma.frame().ni());
    let has = |x: i64| ranks.binary_search(&x).is_ok();
    Ok(sigma.letters().iter().zip(ranks).all(|(l, &r)| match l {
        SwLetter::S => has(r + m),
        SwLetter::W => has(r - n),
    }))
}

/// The graph on positions `1..=m+n` pairing each `S_i` with `N_i` and each
/// `W_j` with `E_j`.
///
/// Edges follow the path's direction of travel: a south end steps up to
/// its north end (`+m`), a west end steps across to its east end (`-n`).
/// Every vertex then has exactly one outgoing edge (from its `S`/`W`
/// letter) and one incoming edge (from its `E`/`N` letter).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityGraph {
    frame: Frame,
    /// 0-based successor of each 0-based vertex.
    next: Vec<usize>,
    /// rank change along the outgoing edge
    weight: Vec<i64>,
}

impl CompatibilityGraph {
    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    /// Successor of 1-based vertex `v`, 1-based.
    pub fn successor(&self, v: usize) -> usize {
        self.next[v - 1] + 1
    }

    /// Edges as 1-based `(from, to)` pairs, ordered by source.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.next
            .iter()
            .enumerate()
            .map(|(v, &w)| (v + 1, w + 1))
            .collect()
    }

    /// Vertices visited from vertex 1 before returning to it.
    fn orbit_of_first(&self) -> Vec<usize> {
        let mut orbit = vec![0usize];
        let mut v = self.next[0];
        while v != 0 && orbit.len() <= self.next.len() {
            orbit.push(v);
            v = self.next[v];
        }
        orbit
    }

    pub fn is_single_cycle(&self) -> bool {
        self.orbit_of_first().len() == self.next.len()
    }
}

pub fn build_graph(sigma: &SwWord, rho: &EnWord) -> Result<CompatibilityGraph> {
    let (f, g) = (sigma.frame(), rho.frame());
    if f != g {
        return Err(Error::FrameMismatch(f.m(), f.n(), g.m(), g.n()));
    }
    let mut next = vec![0usize; f.len()];
    let mut weight = vec![0i64; f.len()];
    for i in 1..=f.n() {
        let from = sigma.pos_s(i) - 1;
        next[from] = rho.pos_n(i) - 1;
        weight[from] = f.mi();
    }
    for j in 1..=f.m() {
        let from = sigma.pos_w(j) - 1;
        next[from] = rho.pos_e(j) - 1;
        weight[from] = -f.ni();
    }
    Ok(CompatibilityGraph {
        frame: f,
        next,
        weight,
    })
}

/// Propagates ranks around the cycle from `r_1 = 0` and checks that they
/// increase with position. Success means `rho` is compatible with `sigma`
/// and the result is the preimage's rank set.
pub fn ranks_from_graph(g: &CompatibilityGraph, sigma: &SwWord, rho: &EnWord) -> Result<RankSet> {
    if g.len() != sigma.len() || g.len() != rho.len() {
        return Err(Error::LengthMismatch(g.len(), sigma.len()));
    }
    if !g.is_single_cycle() {
        return Err(Error::NotACycle);
    }
    let mut ranks = vec![0i64; g.len()];
    let mut v = 0usize;
    for _ in 1..g.len() {
        let w = g.next[v];
        ranks[w] = ranks[v] + g.weight[v];
        v = w;
    }
    if ranks[v] + g.weight[v] != 0 {
        return Err(Error::NotACycle);
    }
    if ranks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotIncreasing);
    }
    Ok(RankSet::from_sorted_unchecked(g.frame, ranks))
}
