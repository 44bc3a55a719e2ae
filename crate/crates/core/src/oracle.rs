//! Brute-force ground truth and exhaustive verification.
//!
//! Nothing here reuses the inversion reconstruction path; preimages come
//! from enumerating every Dyck path and applying the sweep map forward.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::inversion::{chi, invert_phi, left_op, right_op, Algorithm};
use crate::lattice::{count_dyck, enumerate_dyck, Frame, PathWord, Step};
use crate::ranks::{
    area_from_ranks, complement, delta_of, en_word, end_sets, key_of, path_from_rank_set, rank_set,
    successor_conditions, sw_word, validate_rank_set, RankSet,
};
use crate::sweep::{build_graph, is_compatible_ranks, phi, ranks_from_graph, SwLetter, SwWord};

/// Default cap on the number of Dyck paths a verification run will touch.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Every Dyck path whose sweep image is `sigma`, in enumeration order.
pub fn brute_preimages(frame: Frame, sigma: &SwWord) -> Vec<PathWord> {
    let target = sigma.to_path();
    enumerate_dyck(frame).filter(|p| phi(p) == target).collect()
}

/// Rank sets of every free path of the frame, Dyck or not.
pub fn free_rank_sets(frame: Frame) -> HashSet<Vec<i64>> {
    let len = frame.len();
    let mut out = HashSet::new();
    // choose the positions of the n up-steps
    let mut ups: Vec<usize> = (0..frame.n()).collect();
    loop {
        let mut steps = vec![Step::D; len];
        for &i in &ups {
            steps[i] = Step::U;
        }
        let p = PathWord::new(frame, steps).expect("n ups by construction");
        out.insert(rank_set(&p).as_slice().to_vec());
        // next combination in lexicographic order
        let n = ups.len();
        let Some(i) = (0..n).rev().find(|&i| ups[i] < len - n + i) else {
            break;
        };
        ups[i] += 1;
        for j in i + 1..n {
            ups[j] = ups[j - 1] + 1;
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub witness: String,
}

impl Failure {
    fn new(check: &str, witness: impl Into<String>) -> Self {
        Failure {
            check: check.to_string(),
            witness: witness.into(),
        }
    }
}

fn as_secs<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub frame: Frame,
    pub paths_checked: u64,
    pub phi_image_size: u64,
    pub bijective: bool,
    /// inverter exercised alongside the forward map, if any
    pub inverter: Option<Algorithm>,
    pub checks: Vec<&'static str>,
    pub failures: Vec<Failure>,
    #[serde(rename = "elapsed_secs", serialize_with = "as_secs")]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.failures.is_empty()
    }
}

fn check_budget(frame: Frame, budget: u128) -> Result<u128> {
    let count = count_dyck(frame);
    if count > budget {
        return Err(Error::BudgetExceeded { count, budget });
    }
    Ok(count)
}

pub fn verify_bijection(frame: Frame) -> Result<VerificationReport> {
    verify_bijection_with(frame, DEFAULT_BUDGET)
}

/// Applies the sweep map to every Dyck path, checks the image stays Dyck
/// and is injective, and runs the applicable inverter on every image.
pub fn verify_bijection_with(frame: Frame, budget: u128) -> Result<VerificationReport> {
    check_budget(frame, budget)?;
    let started = Instant::now();
    let paths: Vec<PathWord> = enumerate_dyck(frame).collect();
    let images: Vec<PathWord> = paths.par_iter().map(phi).collect();

    let mut failures = Vec::new();
    for (p, img) in paths.iter().zip(&images) {
        if !img.is_dyck() {
            failures.push(Failure::new("image_is_dyck", format!("{p} -> {img}")));
        }
    }
    let mut seen: HashMap<&PathWord, &PathWord> = HashMap::new();
    for (p, img) in paths.iter().zip(&images) {
        if let Some(prev) = seen.insert(img, p) {
            failures.push(Failure::new(
                "injective",
                format!("{prev} and {p} -> {img}"),
            ));
        }
    }
    let image_size = seen.len() as u64;

    let inverter = match Algorithm::Auto.resolve(frame) {
        Algorithm::Brute => None,
        other => Some(other),
    };
    let mut checks = vec!["image_is_dyck", "injective"];
    if let Some(algorithm) = inverter {
        checks.push("inverter_round_trip");
        let bad: Vec<Failure> = paths
            .par_iter()
            .zip(&images)
            .filter_map(|(p, img)| {
                let sigma = SwWord::from_path(img);
                match invert_phi(&sigma, algorithm) {
                    Ok(found) if found.len() == 1 && found[0] == *p => None,
                    Ok(found) => Some(Failure::new(
                        "inverter_round_trip",
                        format!(
                            "{p}: {algorithm} returned [{}]",
                            found
                                .iter()
                                .map(|q| q.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        ),
                    )),
                    Err(e) => Some(Failure::new("inverter_round_trip", format!("{p}: {e}"))),
                }
            })
            .collect();
        failures.extend(bad);
    }

    let bijective = image_size == paths.len() as u64 && failures.is_empty();
    Ok(VerificationReport {
        frame,
        paths_checked: paths.len() as u64,
        phi_image_size: image_size,
        bijective,
        inverter,
        checks,
        failures,
        elapsed: started.elapsed(),
    })
}

pub const PROPERTY_CHECKS: &[&str] = &[
    "area_squares_vs_ranks",
    "end_sets",
    "successor_conditions",
    "rank_set_round_trip",
    "transpose",
    "complement",
    "reversed_en_is_complement_sw",
    "key_delta_bracket",
    "rank_compatibility",
    "graph_compatibility",
    "left_is_conjugate_right",
    "left_lowers_complement_area",
    "right_lowers_area",
    "left_round_trip",
    "chi_involution",
    "chi_preserves_area",
    "shifted_words",
];

fn per_path_checks(p: &PathWord, algorithm: Algorithm) -> Vec<Failure> {
    let frame = p.frame();
    let mut out = Vec::new();
    let mut fail =
        |check: &str, detail: String| out.push(Failure::new(check, format!("{p}: {detail}")));
    let rs = rank_set(p);

    match (p.area_by_squares(), area_from_ranks(&rs)) {
        (Ok(a), Ok(b)) if a == b => {}
        (a, b) => fail("area_squares_vs_ranks", format!("{a:?} vs {b:?}")),
    }

    let e = end_sets(&rs);
    let shifted = |v: &[i64], by: i64| -> Vec<i64> { v.iter().map(|x| x + by).collect() };
    let mut sw: Vec<i64> = e.south.iter().chain(&e.west).copied().collect();
    let mut en: Vec<i64> = e.east.iter().chain(&e.north).copied().collect();
    sw.sort_unstable();
    en.sort_unstable();
    let ends_ok = e.south.len() == frame.n()
        && e.west.len() == frame.m()
        && sw == rs.as_slice()
        && en == rs.as_slice()
        && shifted(&e.south, frame.mi()) == e.north
        && shifted(&e.west, -frame.ni()) == e.east
        && e.south.contains(&0)
        && e.east.contains(&0);
    if !ends_ok {
        fail("end_sets", format!("{e:?}"));
    }

    if successor_conditions(frame, rs.as_slice()) != Ok([true; 4]) {
        fail("successor_conditions", rs.to_string());
    }
    if path_from_rank_set(&rs) != *p {
        fail("rank_set_round_trip", rs.to_string());
    }
    let t = p.transpose();
    if t.transpose() != *p || rank_set(&t).as_slice() != rs.as_slice() || !t.is_dyck() {
        fail("transpose", t.to_string());
    }
    let c = complement(&rs);
    if validate_rank_set(frame, c.as_slice()) != Ok(true) || complement(&c) != rs {
        fail("complement", c.to_string());
    }
    if en_word(&rs).reversed_as_sw() != sw_word(&c) {
        fail("reversed_en_is_complement_sw", en_word(&rs).to_string());
    }
    let sigma = sw_word(&rs);
    let (key, delta) = (key_of(&rs), delta_of(&rs));
    if !(sigma.pos_s(key) <= delta && delta < sigma.pos_s(key + 1)) {
        fail("key_delta_bracket", format!("key {key}, delta {delta}"));
    }
    if is_compatible_ranks(&sigma, rs.as_slice()) != Ok(true) {
        fail("rank_compatibility", sigma.to_string());
    }
    let rho = en_word(&rs);
    match build_graph(&sigma, &rho).and_then(|g| ranks_from_graph(&g, &sigma, &rho)) {
        Ok(r) if r == rs => {}
        other => fail("graph_compatibility", format!("{other:?}")),
    }

    if !rs.is_base() {
        let left = left_op(&rs).expect("non-base");
        let right = right_op(&rs).expect("non-base");
        if complement(&right_op(&c).expect("complement of non-base is non-base")) != left {
            fail("left_is_conjugate_right", left.to_string());
        }
        let ca = area_from_ranks(&c).unwrap_or(0);
        if area_from_ranks(&complement(&left)).map(|a| a + 1) != Ok(ca) {
            fail("left_lowers_complement_area", left.to_string());
        }
        if area_from_ranks(&right).map(|a| a + 1) != area_from_ranks(&rs) {
            fail("right_lowers_area", right.to_string());
        }
        if crate::inversion::ranks_from_left(&left, &sigma).as_ref() != Ok(&rs) {
            fail("left_round_trip", left.to_string());
        }
    }

    match chi(&sigma, algorithm) {
        Ok(once) => {
            match chi(&once, algorithm) {
                Ok(twice) if twice == sigma => {}
                other => fail("chi_involution", format!("{once} -> {other:?}")),
            }
            let area = |w: &SwWord| w.to_path().area_by_squares().ok();
            if area(&once) != area(&sigma) {
                fail("chi_preserves_area", once.to_string());
            }
        }
        Err(e) => fail("chi_involution", e.to_string()),
    }

    if frame.m() == frame.n() + 1 && !shifted_words_match(&rs) {
        fail("shifted_words", format!("{sigma} / {rho}"));
    }
    out
}

/// For `m = n+1`: the SW word without its final `W`, relabelled
/// `S -> E`, `W -> N`, equals the EN word without its leading `E`.
pub fn shifted_words_match(rs: &RankSet) -> bool {
    let sigma = sw_word(rs);
    let rho = en_word(rs);
    let sl = sigma.letters();
    let rl = rho.letters();
    if sl.last() != Some(&SwLetter::W) || rl.first() != Some(&crate::sweep::EnLetter::E) {
        return false;
    }
    sl[..sl.len() - 1].iter().zip(&rl[1..]).all(|(a, b)| {
        matches!(
            (a, b),
            (SwLetter::S, crate::sweep::EnLetter::E) | (SwLetter::W, crate::sweep::EnLetter::N)
        )
    })
}

pub fn verify_properties(frame: Frame) -> Result<VerificationReport> {
    verify_properties_with(frame, DEFAULT_BUDGET)
}

/// Bijectivity plus every per-path structural identity.
pub fn verify_properties_with(frame: Frame, budget: u128) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = verify_bijection_with(frame, budget)?;
    let paths: Vec<PathWord> = enumerate_dyck(frame).collect();
    let failures: Vec<Failure> = paths
        .par_iter()
        .flat_map_iter(|p| per_path_checks(p, Algorithm::Auto))
        .collect();
    report.checks.extend(
        PROPERTY_CHECKS
            .iter()
            .copied()
            .filter(|&c| c != "shifted_words" || frame.m() == frame.n() + 1),
    );
    report.failures.extend(failures);
    report.bijective = report.bijective && report.failures.is_empty();
    report.elapsed = started.elapsed();
    Ok(report)
}
