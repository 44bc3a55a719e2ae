//! Inverting the sweep map.
//!
//! Everything here works on sorted rank sets. The left operation
//! `L(R) = (R \ {0} ∪ {m+n}) - r_2` lowers the complement's area by one,
//! so repeated left steps reach the base set `R_0`. Given the SW word of
//! `R`, the SW word of `L(R)` is a one-letter edit, and `R` is recovered
//! from `L(R)` and the SW word of `R`. Inversion therefore walks down to
//! `S^n W^m` and rebuilds the ranks on the way back up. The only unknown
//! at each step is where `m+n` lands among the sorted ranks:
//!
//! * Fuss frames (`m = kn ± 1`) pin that position down directly, giving
//!   a deterministic chain ([`fussiphi`]).
//! * Other frames with `m > n` narrow it to at most `d = m mod n` key
//!   candidates and search depth-first ([`reciphi`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Frame, FussFamily, PathWord};
use crate::oracle::brute_preimages;
use crate::ranks::{en_word, path_from_rank_set, validate_rank_set, RankSet};
use crate::sweep::{is_compatible_ranks, SwLetter, SwWord};

/// `L(R)`: drop 0, add `m+n`, shift down by the second-smallest rank.
pub fn left_op(rs: &RankSet) -> Result<RankSet> {
    if rs.is_base() {
        return Err(Error::IsBasePath);
    }
    let top = rs.frame().len() as i64;
    let shift = rs.rank(2);
    let mut sorted: Vec<i64> = rs.as_slice()[1..].to_vec();
    let at = sorted.partition_point(|&x| x < top);
    sorted.insert(at, top);
    sorted.iter_mut().for_each(|x| *x -= shift);
    Ok(RankSet::from_sorted_unchecked(rs.frame(), sorted))
}

/// `R(R)`: replace the maximum `M` by `M - m - n`. Removes one unit of area.
pub fn right_op(rs: &RankSet) -> Result<RankSet> {
    if rs.is_base() {
        return Err(Error::IsBasePath);
    }
    let lowered = rs.max() - rs.frame().len() as i64;
    let mut sorted: Vec<i64> = rs.as_slice()[..rs.len() - 1].to_vec();
    let at = sorted.partition_point(|&x| x < lowered);
    sorted.insert(at, lowered);
    Ok(RankSet::from_sorted_unchecked(rs.frame(), sorted))
}

/// SW word of `L(R)` from the SW word of `R`: remove the `W` at
/// `s = pos(W_1)`, then insert a `W` right after original position
/// `delta`. Every letter after `S_c` up to `delta` must be `W`, so the
/// result equals inserting right after `S_c`.
pub fn sigma_after_left(sigma: &SwWord, c: usize, delta: usize) -> Result<SwWord> {
    let frame = sigma.frame();
    if c == 0 || c > frame.n() {
        return Err(Error::PrecondViolated(format!(
            "key {c} outside 1..={}",
            frame.n()
        )));
    }
    let start = sigma.pos_s(c);
    if delta < start || delta > sigma.len() {
        return Err(Error::PrecondViolated(format!(
            "delta {delta} not in [{start}, {}]",
            sigma.len()
        )));
    }
    if ((start + 1)..=delta).any(|p| sigma.letter(p) != SwLetter::W) {
        return Err(Error::PrecondViolated(format!(
            "letters between S_{c} and position {delta} are not all W"
        )));
    }
    let s = sigma.pos_w(1);
    let mut letters = sigma.letters().to_vec();
    letters.remove(s - 1);
    let at = if delta < s { delta } else { delta - 1 };
    letters.insert(at, SwLetter::W);
    Ok(SwWord::from_letters_unchecked(frame, letters))
}

/// Rebuilds `R` from `L(R)` and the SW word of `R`; also returns the
/// position `delta` of `m+n - r_2` in `L(R)`.
fn rebuild_from_left(left: &RankSet, sigma: &SwWord) -> Result<(RankSet, usize)> {
    let frame = sigma.frame();
    if left.frame() != frame {
        return Err(Error::FrameMismatch(
            left.frame().m(),
            left.frame().n(),
            frame.m(),
            frame.n(),
        ));
    }
    let s = sigma.pos_w(1);
    if s < 2 {
        return Err(Error::PrecondViolated("SW word starts with W".into()));
    }
    let anchor = left.rank(s - 1);
    let shift = frame.ni() - anchor;
    if shift <= 0 {
        return Err(Error::NonPositiveShift(shift));
    }
    let target = anchor + frame.mi();
    let delta = left
        .position(target)
        .ok_or(Error::MissingDeltaRank(target))?;
    let mut sorted = Vec::with_capacity(left.len());
    sorted.push(0);
    sorted.extend(
        left.as_slice()
            .iter()
            .enumerate()
            .filter(|&(i, _)| i + 1 != delta)
            .map(|(_, &x)| x + shift),
    );
    if !validate_rank_set(frame, &sorted)? {
        return Err(Error::InvalidRankSet(format!("{sorted:?}")));
    }
    Ok((RankSet::from_sorted_unchecked(frame, sorted), delta))
}

/// `R = (r_2 + L(R)) \ {m+n} ∪ {0}` with `r_2 = n - L(R)_{s-1}`.
pub fn ranks_from_left(left: &RankSet, sigma: &SwWord) -> Result<RankSet> {
    rebuild_from_left(left, sigma).map(|(r, _)| r)
}

/// The forced chain `f_0 = 1`, `f_i = pos(W_{f_{i-1}})`, at whose
/// positions any compatible rank set holds `0, n, 2n, ..., (k+1)n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForcedPositions {
    pub positions: Vec<usize>,
    pub ranks: Vec<i64>,
}

impl ForcedPositions {
    /// `s = f_1`, the position of rank `n`.
    pub fn s(&self) -> usize {
        self.positions[1]
    }

    /// `a = f_{k+1}`, the position of rank `(k+1)n`.
    pub fn a(&self) -> usize {
        *self.positions.last().unwrap()
    }
}

pub fn forced_positions(sigma: &SwWord) -> Result<ForcedPositions> {
    let frame = sigma.frame();
    let mut positions = vec![1usize];
    for _ in 0..=frame.k() {
        let prev = *positions.last().unwrap();
        if prev > frame.m() {
            return Err(Error::LabelOutOfRange {
                index: prev,
                m: frame.m(),
            });
        }
        positions.push(sigma.pos_w(prev));
    }
    let ranks = (0..positions.len() as i64)
        .map(|i| i * frame.ni())
        .collect();
    Ok(ForcedPositions { positions, ranks })
}

/// Position of `m+n` among the sorted ranks, read off the SW word in a
/// Fuss frame: `f_{k+1}` when `m = kn+1`, and `pos(W_{f_{k+1}-1}) - 1`
/// when `m = kn+n-1` (with `pos(W_{m+1}) = m+n+1`).
pub fn fuss_delta(sigma: &SwWord, fp: &ForcedPositions) -> Result<usize> {
    let frame = sigma.frame();
    match frame.fuss_family() {
        None => Err(Error::NotFussFrame {
            m: frame.m(),
            n: frame.n(),
        }),
        Some(FussFamily::PlusOne) => Ok(fp.a()),
        Some(FussFamily::MinusOne) => {
            let label = fp.a() - 1;
            Ok(sigma.try_pos_w(label)? - 1)
        }
    }
}

/// One step of a FussiPhi chain.
#[derive(Debug, Clone, Serialize)]
pub struct FussStage {
    pub sigma: SwWord,
    /// position of `W_1` (rank `n`); 0 for the base stage
    pub s: usize,
    /// position of the largest rank below `m+n`; 0 for the base stage
    pub delta: usize,
    pub ranks: RankSet,
}

/// The full chain from the input word down to `S^n W^m`, with ranks.
#[derive(Debug, Clone, Serialize)]
pub struct FussTrace {
    pub stages: Vec<FussStage>,
}

impl FussTrace {
    pub fn result(&self) -> &RankSet {
        &self.stages[0].ranks
    }

    /// Number of left steps taken.
    pub fn depth(&self) -> usize {
        self.stages.len() - 1
    }
}

fn invalid(sigma: &SwWord, why: impl fmt::Display) -> Error {
    Error::InvalidSigma(format!("{sigma}: {why}"))
}

/// Deterministic inversion for Fuss frames (and the one-path frames).
pub fn fussiphi(sigma: &SwWord) -> Result<RankSet> {
    fussiphi_trace(sigma).map(|t| t.result().clone())
}

pub fn fussiphi_trace(sigma: &SwWord) -> Result<FussTrace> {
    let frame = sigma.frame();
    if frame.is_degenerate() {
        if sigma.is_base() {
            return Ok(FussTrace {
                stages: vec![base_stage(frame)],
            });
        }
        return Err(invalid(sigma, "one-path frame, word is not S^n W^m"));
    }
    if !frame.is_fuss() {
        return Err(Error::NotFussFrame {
            m: frame.m(),
            n: frame.n(),
        });
    }

    let mut chain: Vec<(SwWord, usize, usize)> = Vec::new();
    let mut current = sigma.clone();
    while !current.is_base() {
        if chain.len() >= frame.max_area() {
            return Err(invalid(sigma, "left chain longer than the maximal area"));
        }
        if !current.is_dyck() {
            return Err(invalid(&current, "not a Dyck word"));
        }
        let fp = forced_positions(&current).map_err(|e| invalid(&current, e))?;
        let s = fp.s();
        let delta = fuss_delta(&current, &fp).map_err(|e| invalid(&current, e))?;
        if delta <= s || delta > frame.len() {
            return Err(invalid(&current, format!("delta {delta} out of range")));
        }
        let key = current.letters()[..delta]
            .iter()
            .filter(|&&l| l == SwLetter::S)
            .count();
        let next = sigma_after_left(&current, key, delta).map_err(|e| invalid(&current, e))?;
        chain.push((current, s, delta));
        current = next;
    }

    let mut stages = vec![base_stage(frame)];
    let mut ranks = RankSet::base(frame);
    for (word, s, delta) in chain.into_iter().rev() {
        let (up, found) = rebuild_from_left(&ranks, &word).map_err(|e| invalid(&word, e))?;
        if found != delta {
            return Err(invalid(
                &word,
                format!("rebuilt delta {found} disagrees with {delta}"),
            ));
        }
        ranks = up;
        stages.push(FussStage {
            sigma: word,
            s,
            delta,
            ranks: ranks.clone(),
        });
    }
    stages.reverse();
    if !is_compatible_ranks(sigma, ranks.as_slice())? {
        return Err(invalid(sigma, "rebuilt ranks are not compatible"));
    }
    Ok(FussTrace { stages })
}

fn base_stage(frame: Frame) -> FussStage {
    FussStage {
        sigma: SwWord::base(frame),
        s: 0,
        delta: 0,
        ranks: RankSet::base(frame),
    }
}

/// A key candidate `c` and its interval `I_c = [pos(S_c), pos(S_{c+1}) - 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub c: usize,
    pub lo: usize,
    pub hi: usize,
}

impl Candidate {
    pub fn contains(&self, pos: usize) -> bool {
        (self.lo..=self.hi).contains(&pos)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InversionState {
    pub sigma: SwWord,
    pub candidates: Vec<Candidate>,
    pub depth_budget: usize,
}

/// Keys `c` whose interval meets `[a, a+d-1]`, where `m+n` must land.
pub fn candidate_set(sigma: &SwWord, fp: &ForcedPositions) -> InversionState {
    let frame = sigma.frame();
    let (a, d) = (fp.a(), frame.d());
    let candidates = (1..=frame.n())
        .filter(|&c| a < sigma.pos_s(c + 1) && sigma.pos_s(c) < a + d)
        .map(|c| Candidate {
            c,
            lo: sigma.pos_s(c),
            hi: sigma.pos_s(c + 1) - 1,
        })
        .collect();
    InversionState {
        sigma: sigma.clone(),
        candidates,
        depth_budget: frame.max_area(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    FindFirst,
    FindAll,
}

/// Preimages found by a search plus what it cost.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct InversionOutcome {
    pub preimages: Vec<RankSet>,
    #[serde(rename = "nodes")]
    pub nodes_visited: u64,
    /// length of the deepest accepted chain, i.e. left steps to `R_0`
    pub max_depth: usize,
    /// deepest node visited, including branches that were rejected
    pub explored_depth: usize,
    /// per depth: histogram of candidate counts over the nodes there
    pub branching: Vec<BTreeMap<usize, u64>>,
}

impl InversionOutcome {
    fn visit(&mut self, depth: usize) {
        self.nodes_visited += 1;
        self.explored_depth = self.explored_depth.max(depth);
    }

    fn branch(&mut self, depth: usize, width: usize) {
        if self.branching.len() <= depth {
            self.branching.resize_with(depth + 1, BTreeMap::new);
        }
        *self.branching[depth].entry(width).or_default() += 1;
    }

    /// Largest candidate count seen at any node.
    pub fn max_branching(&self) -> usize {
        self.branching
            .iter()
            .filter_map(|h| h.keys().next_back().copied())
            .max()
            .unwrap_or(0)
    }
}

struct Node {
    sigma: SwWord,
    depth: usize,
    budget: usize,
    s: usize,
    candidates: Vec<Candidate>,
    next: usize,
    child: Option<SwWord>,
    found: Vec<(RankSet, usize)>,
}

enum Expanded {
    Leaf(Vec<(RankSet, usize)>),
    Inner(Box<Node>),
}

fn expand(sigma: SwWord, depth: usize, budget: usize, stats: &mut InversionOutcome) -> Expanded {
    stats.visit(depth);
    if sigma.is_base() {
        return Expanded::Leaf(vec![(RankSet::base(sigma.frame()), depth)]);
    }
    if budget == 0 {
        return Expanded::Leaf(Vec::new());
    }
    let Ok(fp) = forced_positions(&sigma) else {
        return Expanded::Leaf(Vec::new());
    };
    let s = fp.s();
    if s < 2 {
        return Expanded::Leaf(Vec::new());
    }
    let state = candidate_set(&sigma, &fp);
    stats.branch(depth, state.candidates.len());
    Expanded::Inner(Box::new(Node {
        sigma,
        depth,
        budget,
        s,
        candidates: state.candidates,
        next: 0,
        child: None,
        found: Vec::new(),
    }))
}

/// Folds a child's preimages into its parent for the current candidate.
fn absorb(node: &mut Node, results: Vec<(RankSet, usize)>) {
    let cand = node.candidates[node.next];
    let child = node.child.take().expect("child word set before descent");
    let frame = node.sigma.frame();
    for (left, chain) in results {
        let target = left.rank(node.s - 1) + frame.mi();
        let Some(delta) = left.position(target) else {
            continue;
        };
        if child.letter(delta) != SwLetter::W || !cand.contains(delta) {
            continue;
        }
        let Ok(ranks) = ranks_from_left(&left, &node.sigma) else {
            continue;
        };
        if !matches!(is_compatible_ranks(&node.sigma, ranks.as_slice()), Ok(true)) {
            continue;
        }
        if !node.found.iter().any(|(r, _)| *r == ranks) {
            node.found.push((ranks, chain));
        }
    }
}

/// Depth-first search for every rank set compatible with `sigma`, for
/// `m = kn + d` with `k >= 1`. Frames with a single path short-circuit;
/// Fuss frames with `m < n` are handed to [`fussiphi`].
///
/// Each node tries the key candidates in increasing order, descends on
/// the edited word, and accepts a child's answer only if the implied
/// position of `m+n` is a `W` inside the candidate's interval. Descent
/// is capped at `(m-1)(n-1)/2` levels, the largest complement area.
pub fn reciphi(sigma: &SwWord, mode: SearchMode) -> Result<InversionOutcome> {
    reciphi_with_budget(sigma, mode, sigma.frame().max_area())
}

pub fn reciphi_with_budget(
    sigma: &SwWord,
    mode: SearchMode,
    budget: usize,
) -> Result<InversionOutcome> {
    let frame = sigma.frame();
    let mut stats = InversionOutcome::default();
    if frame.is_degenerate() {
        stats.visit(0);
        if !sigma.is_base() {
            return Err(Error::NoPreimage(sigma.to_string()));
        }
        stats.preimages.push(RankSet::base(frame));
        stats.max_depth = 0;
        return Ok(stats);
    }
    if frame.k() == 0 {
        if frame.is_fuss() {
            let trace = fussiphi_trace(sigma).map_err(|_| Error::NoPreimage(sigma.to_string()))?;
            return Ok(outcome_from_trace(&trace));
        }
        return Err(Error::AlgorithmInapplicable {
            algorithm: "recip",
            m: frame.m(),
            n: frame.n(),
        });
    }

    let mut stack: Vec<Node> = Vec::new();
    let mut returned = match expand(sigma.clone(), 0, budget, &mut stats) {
        Expanded::Leaf(found) => Some(found),
        Expanded::Inner(node) => {
            stack.push(*node);
            None
        }
    };
    let found = loop {
        if let Some(results) = returned.take() {
            match stack.last_mut() {
                None => break results,
                Some(parent) => {
                    absorb(parent, results);
                    parent.next += 1;
                }
            }
        }
        let top = stack.last_mut().expect("stack holds the pending node");
        let done = top.next >= top.candidates.len()
            || (mode == SearchMode::FindFirst && !top.found.is_empty());
        if done {
            let node = stack.pop().unwrap();
            returned = Some(node.found);
            continue;
        }
        let cand = top.candidates[top.next];
        let child = match sigma_after_left(&top.sigma, cand.c, cand.lo) {
            Ok(w) if w.is_dyck() => w,
            _ => {
                top.next += 1;
                continue;
            }
        };
        top.child = Some(child.clone());
        let (depth, budget) = (top.depth + 1, top.budget - 1);
        match expand(child, depth, budget, &mut stats) {
            Expanded::Leaf(found) => returned = Some(found),
            Expanded::Inner(node) => stack.push(*node),
        }
    };

    if found.is_empty() {
        return Err(Error::NoPreimage(sigma.to_string()));
    }
    stats.max_depth = found.iter().map(|(_, d)| *d).max().unwrap_or(0);
    stats.preimages = found.into_iter().map(|(r, _)| r).collect();
    Ok(stats)
}

/// Telemetry for a FussiPhi run: a single chain, one branch per node.
pub fn outcome_from_trace(trace: &FussTrace) -> InversionOutcome {
    let mut stats = InversionOutcome::default();
    let depth = trace.depth();
    for level in 0..=depth {
        stats.visit(level);
        if level < depth {
            stats.branch(level, 1);
        }
    }
    stats.preimages.push(trace.result().clone());
    stats.max_depth = depth;
    stats
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Auto,
    Fuss,
    Recip,
    Brute,
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(Algorithm::Auto),
            "fuss" | "fussiphi" => Ok(Algorithm::Fuss),
            "recip" | "reciphi" => Ok(Algorithm::Recip),
            "brute" => Ok(Algorithm::Brute),
            other => Err(format!(
                "unknown algorithm {other:?} (auto|fuss|recip|brute)"
            )),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::Auto => "auto",
            Algorithm::Fuss => "fuss",
            Algorithm::Recip => "recip",
            Algorithm::Brute => "brute",
        })
    }
}

impl Algorithm {
    /// What `Auto` resolves to for a frame.
    pub fn resolve(self, frame: Frame) -> Algorithm {
        match self {
            Algorithm::Auto if frame.is_fuss() || frame.is_degenerate() => Algorithm::Fuss,
            Algorithm::Auto if frame.k() >= 1 => Algorithm::Recip,
            Algorithm::Auto => Algorithm::Brute,
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvertOptions {
    pub algorithm: Algorithm,
    pub mode: SearchMode,
    /// depth budget for the search; defaults to the maximal area
    pub budget: Option<usize>,
}

impl Default for InvertOptions {
    fn default() -> Self {
        InvertOptions {
            algorithm: Algorithm::Auto,
            mode: SearchMode::FindAll,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Inversion {
    /// the algorithm that produced the answer
    pub algorithm: Algorithm,
    /// true when the answer comes from exhaustive enumeration
    pub oracle_derived: bool,
    pub paths: Vec<String>,
    #[serde(skip)]
    pub preimages: Vec<PathWord>,
    pub outcome: InversionOutcome,
}

/// All Dyck paths with sweep image `sigma`.
pub fn invert_phi(sigma: &SwWord, algorithm: Algorithm) -> Result<Vec<PathWord>> {
    let options = InvertOptions {
        algorithm,
        ..InvertOptions::default()
    };
    invert_phi_with(sigma, &options).map(|inv| inv.preimages)
}

pub fn invert_phi_with(sigma: &SwWord, options: &InvertOptions) -> Result<Inversion> {
    let frame = sigma.frame();
    let algorithm = options.algorithm.resolve(frame);
    let inapplicable = |name| Error::AlgorithmInapplicable {
        algorithm: name,
        m: frame.m(),
        n: frame.n(),
    };
    let outcome = match algorithm {
        Algorithm::Fuss => {
            if !frame.is_fuss() && !frame.is_degenerate() {
                return Err(inapplicable("fuss"));
            }
            let trace = fussiphi_trace(sigma).map_err(|e| match e {
                Error::InvalidSigma(why) => Error::NoPreimage(why),
                other => other,
            })?;
            outcome_from_trace(&trace)
        }
        Algorithm::Recip => {
            if frame.k() == 0 && !frame.is_fuss() {
                return Err(inapplicable("recip"));
            }
            let budget = options.budget.unwrap_or(frame.max_area());
            reciphi_with_budget(sigma, options.mode, budget)?
        }
        Algorithm::Brute => {
            let paths = brute_preimages(frame, sigma);
            if paths.is_empty() {
                return Err(Error::NoPreimage(sigma.to_string()));
            }
            InversionOutcome {
                preimages: paths.iter().map(crate::ranks::rank_set).collect(),
                nodes_visited: crate::lattice::count_dyck(frame) as u64,
                ..InversionOutcome::default()
            }
        }
        Algorithm::Auto => unreachable!("resolved above"),
    };
    let preimages: Vec<PathWord> = outcome.preimages.iter().map(path_from_rank_set).collect();
    Ok(Inversion {
        algorithm,
        oracle_derived: algorithm == Algorithm::Brute,
        paths: preimages.iter().map(|p| p.to_string()).collect(),
        preimages,
        outcome,
    })
}

/// `chi(sigma)`: the reversed EN word of the preimage, read as an SW
/// word. Equals the sweep image of the preimage's rank complement.
pub fn chi(sigma: &SwWord, algorithm: Algorithm) -> Result<SwWord> {
    let options = InvertOptions {
        algorithm,
        mode: SearchMode::FindFirst,
        budget: None,
    };
    let inversion = invert_phi_with(sigma, &options)?;
    let preimage = inversion
        .outcome
        .preimages
        .first()
        .ok_or_else(|| Error::NoPreimage(sigma.to_string()))?;
    Ok(en_word(preimage).reversed_as_sw())
}
