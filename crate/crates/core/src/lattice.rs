//! Frames, step words, and the Dyck paths they contain.
//!
//! A path in frame `(m,n)` is a word of `n` up-steps and `m` down-steps
//! (north and east in the plane). The rank of a lattice point `(a,b)` is
//! `m*b - n*a`; a path is Dyck when no point it visits has negative rank.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A coprime slope pair `(m,n)`: `m` columns, `n` rows.
///
/// `k` and `d` are the quotient and remainder of `m` divided by `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFrame", into = "RawFrame")]
pub struct Frame {
    m: usize,
    n: usize,
    k: usize,
    d: usize,
}

#[derive(Serialize, Deserialize)]
struct RawFrame {
    m: i64,
    n: i64,
}

impl TryFrom<RawFrame> for Frame {
    type Error = Error;
    fn try_from(raw: RawFrame) -> Result<Self> {
        Frame::new(raw.m, raw.n)
    }
}

impl From<Frame> for RawFrame {
    fn from(f: Frame) -> Self {
        RawFrame {
            m: f.m as i64,
            n: f.n as i64,
        }
    }
}

/// Which Fuss family a frame belongs to, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FussFamily {
    /// `m = k*n + 1` with `k >= 1`.
    PlusOne,
    /// `m = k*n + n - 1` with `k >= 0`.
    MinusOne,
}

impl Frame {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if m <= 0 || n <= 0 {
            return Err(Error::NonPositive { m, n });
        }
        let (m, n) = (m as usize, n as usize);
        let g = gcd(m, n);
        if g != 1 {
            return Err(Error::NonCoprime { m, n, gcd: g });
        }
        Ok(Frame {
            m,
            n,
            k: m / n,
            d: m % n,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Word length `m + n`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.m + self.n
    }

    pub fn mi(&self) -> i64 {
        self.m as i64
    }

    pub fn ni(&self) -> i64 {
        self.n as i64
    }

    /// Frames with a single Dyck path (`m = 1` or `n = 1`).
    pub fn is_degenerate(&self) -> bool {
        self.m == 1 || self.n == 1
    }

    /// Largest possible area, `(m-1)(n-1)/2`.
    pub fn max_area(&self) -> usize {
        (self.m - 1) * (self.n - 1) / 2
    }

    pub fn fuss_family(&self) -> Option<FussFamily> {
        if self.n < 2 {
            return None;
        }
        if self.d == 1 && self.k >= 1 {
            Some(FussFamily::PlusOne)
        } else if self.d == self.n - 1 {
            Some(FussFamily::MinusOne)
        } else {
            None
        }
    }

    pub fn is_fuss(&self) -> bool {
        self.fuss_family().is_some()
    }

    /// The frame with the roles of `m` and `n` exchanged.
    pub fn transposed(&self) -> Frame {
        Frame::new(self.n as i64, self.m as i64).expect("transpose of a coprime frame")
    }

    /// Every coprime frame with `m + n <= max_len`, ordered by `(m+n, m)`.
    pub fn all_up_to(max_len: usize) -> Vec<Frame> {
        let mut out = Vec::new();
        for len in 2..=max_len {
            for m in 1..len {
                if let Ok(f) = Frame::new(m as i64, (len - m) as i64) {
                    out.push(f);
                }
            }
        }
        out
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.m, self.n)
    }
}

impl FromStr for Frame {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadFrameText(s.to_string());
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = t.split_once(',').ok_or_else(bad)?;
        let m = a.trim().parse::<i64>().map_err(|_| bad())?;
        let n = b.trim().parse::<i64>().map_err(|_| bad())?;
        Frame::new(m, n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    /// North, `+m` in rank.
    U,
    /// East, `-n` in rank.
    D,
}

impl Step {
    pub fn flipped(self) -> Step {
        match self {
            Step::U => Step::D,
            Step::D => Step::U,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Step::U => 'u',
            Step::D => 'd',
        }
    }

    /// Rank increment of this step in `frame`.
    pub fn delta(self, frame: &Frame) -> i64 {
        match self {
            Step::U => frame.mi(),
            Step::D => -frame.ni(),
        }
    }
}

/// A lattice path from `(0,0)` to `(m,n)`, not necessarily Dyck.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    frame: Frame,
    steps: Vec<Step>,
}

impl PathWord {
    pub fn new(frame: Frame, steps: Vec<Step>) -> Result<Self> {
        let ups = steps.iter().filter(|&&s| s == Step::U).count();
        let downs = steps.len() - ups;
        if ups != frame.n() || downs != frame.m() {
            return Err(Error::WrongStepCounts {
                m: frame.m(),
                n: frame.n(),
                ups,
                downs,
            });
        }
        Ok(PathWord { frame, steps })
    }

    /// Parses `u`/`d` text, also accepting `N`/`E`; case-insensitive.
    pub fn parse(text: &str, frame: Frame) -> Result<Self> {
        let steps = text
            .trim()
            .chars()
            .enumerate()
            .map(|(offset, c)| match c.to_ascii_lowercase() {
                'u' | 'n' => Ok(Step::U),
                'd' | 'e' => Ok(Step::D),
                letter => Err(Error::BadAlphabet { letter, offset }),
            })
            .collect::<Result<Vec<_>>>()?;
        PathWord::new(frame, steps)
    }

    /// The path hugging the diagonal (area 0).
    pub fn base(frame: Frame) -> PathWord {
        crate::ranks::path_from_rank_set(&crate::ranks::RankSet::base(frame))
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Ranks of the starting point of every step.
    pub(crate) fn start_ranks(&self) -> impl Iterator<Item = i64> + '_ {
        let frame = self.frame;
        self.steps.iter().scan(0i64, move |rank, step| {
            let here = *rank;
            *rank += step.delta(&frame);
            Some(here)
        })
    }

    pub fn is_dyck(&self) -> bool {
        self.start_ranks().all(|r| r >= 0)
    }

    /// Unit squares right of the path and left of the diagonal.
    ///
    /// Counted row by row: row `b` holds the squares `[a,a+1] x [b,b+1]`
    /// with `a` at least the path's column in that row and lower-right
    /// corner on or above the diagonal, i.e. `a + 1 <= floor(m*b/n)`.
    pub fn area_by_squares(&self) -> Result<usize> {
        if !self.is_dyck() {
            return Err(Error::NotDyck);
        }
        let (m, n) = (self.frame.m(), self.frame.n());
        let mut column = 0usize;
        let mut row = 0usize;
        let mut area = 0usize;
        for step in &self.steps {
            match step {
                Step::U => {
                    area += (m * row / n).saturating_sub(column);
                    row += 1;
                }
                Step::D => column += 1,
            }
        }
        Ok(area)
    }

    /// Reverse the word and swap `U`/`D`; lands in the transposed frame.
    pub fn transpose(&self) -> PathWord {
        PathWord {
            frame: self.frame.transposed(),
            steps: self.steps.iter().rev().map(|s| s.flipped()).collect(),
        }
    }

    /// ASCII picture of the path: `+` path nodes, `.` other lattice
    /// points, `|`/`-` path edges, `/` cells crossed by the diagonal,
    /// `#` cells counted by the area.
    pub fn render_ascii(&self) -> String {
        let (m, n) = (self.frame.m(), self.frame.n());
        let (mi, ni) = (self.frame.mi(), self.frame.ni());
        let width = 2 * m + 1;
        let height = 2 * n + 1;
        let mut canvas = vec![vec![' '; width]; height];
        let row_of = |b: usize| 2 * (n - b);

        for b in 0..=n {
            for a in 0..=m {
                canvas[row_of(b)][2 * a] = '.';
            }
        }
        // Area cells: per row, columns from the path up to floor(m*b/n).
        let mut columns_at_row = vec![0usize; n];
        let (mut a, mut b) = (0usize, 0usize);
        canvas[row_of(0)][0] = '+';
        for step in &self.steps {
            match step {
                Step::U => {
                    columns_at_row[b] = a;
                    canvas[row_of(b) - 1][2 * a] = '|';
                    b += 1;
                }
                Step::D => {
                    canvas[row_of(b)][2 * a + 1] = '-';
                    a += 1;
                }
            }
            canvas[row_of(b)][2 * a] = '+';
        }
        let dyck = self.is_dyck();
        for b in 0..n {
            for a in 0..m {
                let low = mi * b as i64 - ni * (a as i64 + 1);
                let high = mi * (b as i64 + 1) - ni * a as i64;
                let cell = &mut canvas[row_of(b) - 1][2 * a + 1];
                if low < 0 && high > 0 {
                    *cell = '/';
                } else if dyck && low >= 0 && a >= columns_at_row[b] {
                    *cell = '#';
                }
            }
        }
        let mut out = String::new();
        for line in canvas {
            let s: String = line.into_iter().collect();
            out.push_str(s.trim_end());
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

/// `binomial(m+n, n) / (m+n)`, the number of Dyck paths in a coprime frame.
pub fn count_dyck(frame: Frame) -> u128 {
    let total = frame.len() as u128;
    let k = frame.n().min(frame.m()) as u128;
    let mut binom: u128 = 1;
    for i in 0..k {
        binom = binom * (total - i) / (i + 1);
    }
    binom / total
}

/// Dyck paths of a frame in lexicographic order with `U < D`.
pub fn enumerate_dyck(frame: Frame) -> DyckPaths {
    DyckPaths::new(frame)
}

/// Iterator over the Dyck paths of a frame.
///
/// Each step finds the rightmost `U` that can become `D` while staying
/// Dyck with a `D` still available afterwards, and refills the suffix
/// with its least completion `U* D*`.
#[derive(Debug, Clone)]
pub struct DyckPaths {
    frame: Frame,
    current: Option<Vec<Step>>,
}

impl DyckPaths {
    fn new(frame: Frame) -> Self {
        let mut first = vec![Step::U; frame.n()];
        first.resize(frame.len(), Step::D);
        DyckPaths {
            frame,
            current: Some(first),
        }
    }

    fn successor(&self, word: &[Step]) -> Option<Vec<Step>> {
        let frame = &self.frame;
        // prefix[i] = rank before step i
        let mut prefix = Vec::with_capacity(word.len() + 1);
        prefix.push(0i64);
        for s in word {
            prefix.push(prefix.last().unwrap() + s.delta(frame));
        }
        let mut downs_after = 0usize;
        let mut ups_after = 0usize;
        for i in (0..word.len()).rev() {
            if word[i] == Step::U && downs_after > 0 && prefix[i] - frame.ni() >= 0 {
                let mut next = word[..i].to_vec();
                next.push(Step::D);
                next.extend(std::iter::repeat_n(Step::U, ups_after + 1));
                next.extend(std::iter::repeat_n(Step::D, downs_after - 1));
                return Some(next);
            }
            match word[i] {
                Step::U => ups_after += 1,
                Step::D => downs_after += 1,
            }
        }
        None
    }
}

impl Iterator for DyckPaths {
    type Item = PathWord;

    fn next(&mut self) -> Option<PathWord> {
        let word = self.current.take()?;
        self.current = self.successor(&word);
        Some(PathWord {
            frame: self.frame,
            steps: word,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(m: i64, n: i64) -> Frame {
        Frame::new(m, n).unwrap()
    }

    #[test]
    fn frame_construction() {
        let f = frame(11, 5);
        assert_eq!((f.m(), f.n(), f.k(), f.d()), (11, 5, 2, 1));
        let f = frame(8, 5);
        assert_eq!((f.k(), f.d()), (1, 3));
        assert!(matches!(
            Frame::new(6, 4),
            Err(Error::NonCoprime { gcd: 2, .. })
        ));
        assert!(matches!(Frame::new(0, 3), Err(Error::NonPositive { .. })));
        assert!(matches!(Frame::new(3, -1), Err(Error::NonPositive { .. })));
        assert_eq!("11,5".parse::<Frame>().unwrap(), frame(11, 5));
        assert!("11;5".parse::<Frame>().is_err());
    }

    #[test]
    fn fuss_families() {
        assert_eq!(frame(11, 5).fuss_family(), Some(FussFamily::PlusOne));
        assert_eq!(frame(9, 5).fuss_family(), Some(FussFamily::MinusOne));
        assert_eq!(frame(4, 5).fuss_family(), Some(FussFamily::MinusOne));
        assert_eq!(frame(8, 5).fuss_family(), None);
        assert_eq!(frame(7, 1).fuss_family(), None);
    }

    #[test]
    fn parse_and_aliases() {
        let f = frame(3, 2);
        let p = PathWord::parse("ududd", f).unwrap();
        assert_eq!(PathWord::parse("NENEE", f).unwrap(), p);
        assert_eq!(PathWord::parse("UdUdD", f).unwrap(), p);
        assert!(matches!(
            PathWord::parse("uud", f),
            Err(Error::WrongStepCounts { .. })
        ));
        assert!(matches!(
            PathWord::parse("udxdd", f),
            Err(Error::BadAlphabet {
                letter: 'x',
                offset: 2
            })
        ));
    }

    #[test]
    fn dyck_checks() {
        let f = frame(3, 2);
        assert!(PathWord::parse("ududd", f).unwrap().is_dyck());
        assert!(!PathWord::parse("duudd", f).unwrap().is_dyck());
        assert!(PathWord::parse("ududdudddududddd", frame(11, 5))
            .unwrap()
            .is_dyck());
    }

    #[test]
    fn areas() {
        let f = frame(3, 2);
        assert_eq!(
            PathWord::parse("ududd", f).unwrap().area_by_squares(),
            Ok(0)
        );
        assert_eq!(
            PathWord::parse("uuddd", f).unwrap().area_by_squares(),
            Ok(1)
        );
        assert_eq!(
            PathWord::parse("uudududdudddd", frame(8, 5))
                .unwrap()
                .area_by_squares(),
            Ok(7)
        );
        assert_eq!(
            PathWord::parse("duudd", f).unwrap().area_by_squares(),
            Err(Error::NotDyck)
        );
    }

    #[test]
    fn transpose_examples() {
        let p = PathWord::parse("ududd", frame(3, 2)).unwrap();
        let t = p.transpose();
        assert_eq!(t.to_string(), "uudud");
        assert_eq!(t.frame(), frame(2, 3));
        assert_eq!(t.transpose(), p);
        let q = PathWord::parse("udd", frame(2, 1)).unwrap();
        assert_eq!(q.transpose().to_string(), "uud");
    }

    #[test]
    fn enumeration_small() {
        let words: Vec<String> = enumerate_dyck(frame(3, 2)).map(|p| p.to_string()).collect();
        assert_eq!(words, ["uuddd", "ududd"].map(String::from).to_vec());
        let words: Vec<String> = enumerate_dyck(frame(2, 1)).map(|p| p.to_string()).collect();
        assert_eq!(words, vec!["udd".to_string()]);
        assert_eq!(enumerate_dyck(frame(5, 3)).count(), 7);
    }

    #[test]
    fn counts() {
        assert_eq!(count_dyck(frame(3, 2)), 2);
        assert_eq!(count_dyck(frame(8, 5)), 99);
        assert_eq!(count_dyck(frame(11, 5)), 273);
        assert_eq!(count_dyck(frame(1, 7)), 1);
    }

    #[test]
    fn enumeration_matches_filtered_words() {
        for f in Frame::all_up_to(13) {
            let (m, n) = (f.m(), f.n());
            let mut filtered = Vec::new();
            for mask in 0u32..(1 << (m + n)) {
                if mask.count_ones() as usize != n {
                    continue;
                }
                // bit i set = step i is U; lexicographic U<D means reading bits
                // from the first step
                let steps: Vec<Step> = (0..m + n)
                    .map(|i| if mask >> i & 1 == 1 { Step::U } else { Step::D })
                    .collect();
                let p = PathWord::new(f, steps).unwrap();
                if p.is_dyck() {
                    filtered.push(p.steps.clone());
                }
            }
            filtered.sort();
            let streamed: Vec<Vec<Step>> = enumerate_dyck(f).map(|p| p.steps).collect();
            assert_eq!(streamed, filtered, "frame {f}");
            assert_eq!(streamed.len() as u128, count_dyck(f), "frame {f}");
        }
    }

    #[test]
    fn area_bounds_attained() {
        for f in Frame::all_up_to(13) {
            let areas: Vec<usize> = enumerate_dyck(f)
                .map(|p| p.area_by_squares().unwrap())
                .collect();
            assert_eq!(*areas.iter().min().unwrap(), 0);
            assert_eq!(*areas.iter().max().unwrap(), f.max_area(), "frame {f}");
        }
    }

    #[test]
    fn render_small() {
        let p = PathWord::parse("udd", frame(2, 1)).unwrap();
        assert_eq!(p.render_ascii(), "+-+-+\n|/ /\n+ . .\n");
        let a = PathWord::parse("uuddd", frame(3, 2))
            .unwrap()
            .render_ascii();
        let b = PathWord::parse("ududd", frame(3, 2))
            .unwrap()
            .render_ascii();
        assert_ne!(a, b);
    }
}
