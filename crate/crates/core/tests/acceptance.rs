//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every criterion reports even when
//! an earlier one fails; the process exits non-zero if any failed.

use std::collections::{HashMap, HashSet};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sweepmap::inversion::{
    forced_positions, fussiphi_trace, left_op, outcome_from_trace, reciphi, right_op, SearchMode,
};
use sweepmap::oracle::{brute_preimages, free_rank_sets};
use sweepmap::ranks::{
    area_from_ranks, complement, en_word, path_from_rank_set, rank_set, rank_walk,
    successor_conditions, sw_word,
};
use sweepmap::{chi, cli, enumerate_dyck, phi, Algorithm, Frame, PathWord, RankSet, SwWord};

/// Wall-clock limits, pinned.
const GOLDEN_SWEEP_LIMIT: Duration = Duration::from_millis(1);
const BIJECTIVITY_LIMIT: Duration = Duration::from_secs(60);
const INVERTER_LIMIT: Duration = Duration::from_secs(300);

/// Frame-size bounds, pinned.
const EXHAUSTIVE_MAX_LEN: usize = 13;
const CHI_MAX_LEN: usize = 12;

/// Random perturbations for the successor-condition check.
const PERTURBATIONS: usize = 10_000;
const PERTURBATION_SEED: u64 = 0x5EED_2024;

const GOLDEN_PATH: &str = "ududdudddududddd";
const GOLDEN_WALK: [i64; 16] = [0, 11, 6, 17, 12, 7, 18, 13, 8, 3, 14, 9, 20, 15, 10, 5];
const GOLDEN_PHI: &str = "uuduududdddddddd";
const GOLDEN_SORTED: [i64; 16] = [0, 3, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 17, 18, 20];
const GOLDEN_MID: [i64; 16] = [0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 17];
const EIGHT_FIVE: [i64; 13] = [0, 5, 8, 10, 11, 12, 14, 15, 16, 17, 19, 20, 22];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn frame(m: i64, n: i64) -> Frame {
    Frame::new(m, n).expect("fixture frames are coprime")
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn c1_golden_sweep() -> Outcome {
    let f = frame(11, 5);
    let path = PathWord::parse(GOLDEN_PATH, f).map_err(|e| e.to_string())?;
    let started = Instant::now();
    let walk = rank_walk(&path);
    let image = phi(&path);
    let elapsed = started.elapsed();
    ensure(walk.values() == GOLDEN_WALK, || {
        format!("rank walk {:?}", walk.values())
    })?;
    ensure(image.to_string() == GOLDEN_PHI, || format!("phi {image}"))?;
    ensure(elapsed < GOLDEN_SWEEP_LIMIT, || format!("took {elapsed:?}"))?;

    let out = cli::run(["sweepmap", "sweep", "11,5", GOLDEN_PATH]);
    let rows: Vec<String> = out
        .stdout
        .lines()
        .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
        .collect();
    let walk_row = format!("r(D) {}", GOLDEN_WALK.map(|x| x.to_string()).join(" "));
    let phi_row = format!(
        "Φ(D) {}",
        GOLDEN_PHI
            .chars()
            .map(String::from)
            .collect::<Vec<_>>()
            .join(" ")
    );
    ensure(out.code == 0, || format!("cli exit {}", out.code))?;
    ensure(rows.contains(&walk_row), || {
        format!("cli lacks `{walk_row}`")
    })?;
    ensure(rows.contains(&phi_row), || format!("cli lacks `{phi_row}`"))?;
    Ok(format!(
        "walk and phi exact, {elapsed:?} < {GOLDEN_SWEEP_LIMIT:?}"
    ))
}

fn c2_three_stage_table() -> Outcome {
    let f = frame(11, 5);
    let sigma = SwWord::parse(GOLDEN_PHI, f).map_err(|e| e.to_string())?;
    let trace = fussiphi_trace(&sigma).map_err(|e| e.to_string())?;
    let stages: Vec<&[i64]> = trace.stages.iter().map(|s| s.ranks.as_slice()).collect();
    let base: Vec<i64> = (0..16).collect();
    ensure(stages.len() == 3, || format!("{} stages", stages.len()))?;
    ensure(stages[2] == base.as_slice(), || {
        format!("r'' = {:?}", stages[2])
    })?;
    ensure(stages[1] == GOLDEN_MID, || format!("r' = {:?}", stages[1]))?;
    ensure(stages[0] == GOLDEN_SORTED, || {
        format!("r = {:?}", stages[0])
    })?;
    Ok("r'', r', r exact".into())
}

fn c3_eight_five_rank_set() -> Outcome {
    let rs = RankSet::new(frame(8, 5), EIGHT_FIVE).map_err(|e| e.to_string())?;
    let (sigma, rho) = (sw_word(&rs).to_string(), en_word(&rs).to_string());
    let by_ranks = area_from_ranks(&rs).map_err(|e| e.to_string())?;
    let by_squares = path_from_rank_set(&rs)
        .area_by_squares()
        .map_err(|e| e.to_string())?;
    ensure(sigma == "SWSWSSSWWWWWW", || format!("sigma {sigma}"))?;
    ensure(rho == "EENEEEEENENNN", || format!("rho {rho}"))?;
    ensure(by_ranks == 7 && by_squares == 7, || {
        format!("areas {by_ranks}/{by_squares}")
    })?;
    Ok(format!("sigma {sigma}, rho {rho}, area 7 both ways"))
}

fn c4_forced_positions() -> Outcome {
    let sigma = SwWord::parse("SSWWSWSWWWWWWWWWW", frame(13, 4)).map_err(|e| e.to_string())?;
    let fp = forced_positions(&sigma).map_err(|e| e.to_string())?;
    ensure(fp.positions == [1, 3, 6, 10, 14], || {
        format!("positions {:?}", fp.positions)
    })?;
    ensure(fp.ranks == [0, 4, 8, 12, 16], || {
        format!("ranks {:?}", fp.ranks)
    })?;
    Ok("positions (1,3,6,10,14), ranks (0,4,8,12,16)".into())
}

fn c5_five_four_table() -> Outcome {
    let rs =
        RankSet::new(frame(5, 4), [0, 4, 5, 8, 10, 11, 12, 15, 16]).map_err(|e| e.to_string())?;
    let (sigma, rho) = (sw_word(&rs).to_string(), en_word(&rs).to_string());
    ensure(sigma == "SWSWSSWWW", || format!("sigma {sigma}"))?;
    ensure(rho == "EENENEENN", || format!("rho {rho}"))?;
    Ok(format!("sigma {sigma}, rho {rho}"))
}

fn c6_bijectivity() -> Outcome {
    let started = Instant::now();
    let mut paths_total = 0usize;
    let frames = Frame::all_up_to(EXHAUSTIVE_MAX_LEN);
    for &f in &frames {
        let paths: Vec<PathWord> = enumerate_dyck(f).collect();
        let count = sweepmap::count_dyck(f) as usize;
        ensure(paths.len() == count, || {
            format!("{f}: enumerated {} of {count}", paths.len())
        })?;
        let images: HashSet<String> = paths.iter().map(|p| phi(p).to_string()).collect();
        ensure(images.len() == count, || {
            format!("{f}: image size {} of {count}", images.len())
        })?;
        paths_total += paths.len();
    }
    let elapsed = started.elapsed();
    ensure(elapsed < BIJECTIVITY_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} frames, {paths_total} paths injective, {elapsed:.2?} < {BIJECTIVITY_LIMIT:?}",
        frames.len()
    ))
}

fn c7_inverters() -> Outcome {
    let started = Instant::now();
    let (mut queries, mut fuss_queries) = (0usize, 0usize);
    for f in Frame::all_up_to(EXHAUSTIVE_MAX_LEN)
        .into_iter()
        .filter(|f| f.m() > f.n())
    {
        for p in enumerate_dyck(f) {
            let sigma = SwWord::from_path(&phi(&p));
            let brute: Vec<RankSet> = brute_preimages(f, &sigma).iter().map(rank_set).collect();
            let out =
                reciphi(&sigma, SearchMode::FindAll).map_err(|e| format!("{f} {sigma}: {e}"))?;
            ensure(out.preimages.len() == 1, || {
                format!("{f} {sigma}: {} preimages", out.preimages.len())
            })?;
            ensure(out.preimages == brute, || {
                format!("{f} {sigma}: differs from brute")
            })?;
            queries += 1;
            if f.is_fuss() {
                let trace = fussiphi_trace(&sigma).map_err(|e| format!("{f} {sigma}: {e}"))?;
                let t = outcome_from_trace(&trace);
                ensure(t.preimages == brute, || {
                    format!("{f} {sigma}: fussiphi differs")
                })?;
                ensure(t.max_branching() <= 1, || {
                    format!("{f} {sigma}: fussiphi branched")
                })?;
                fuss_queries += 1;
            }
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < INVERTER_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{queries} queries match brute ({fuss_queries} also via fussiphi, unbranched), {elapsed:.2?} < {INVERTER_LIMIT:?}"
    ))
}

fn all_rank_sets(max_len: usize) -> Vec<RankSet> {
    Frame::all_up_to(max_len)
        .into_iter()
        .flat_map(|f| enumerate_dyck(f).map(|p| rank_set(&p)).collect::<Vec<_>>())
        .collect()
}

fn c8a_successor_conditions() -> Result<String, String> {
    let sets = all_rank_sets(EXHAUSTIVE_MAX_LEN);
    for rs in &sets {
        let c = successor_conditions(rs.frame(), rs.as_slice()).map_err(|e| e.to_string())?;
        ensure(c == [true; 4], || format!("{rs}: {c:?}"))?;
    }

    let frames: Vec<Frame> = Frame::all_up_to(EXHAUSTIVE_MAX_LEN)
        .into_iter()
        .filter(|f| !f.is_degenerate())
        .collect();
    let by_frame: HashMap<Frame, Vec<RankSet>> = frames
        .iter()
        .map(|&f| (f, enumerate_dyck(f).map(|p| rank_set(&p)).collect()))
        .collect();
    let free: HashMap<Frame, HashSet<Vec<i64>>> =
        frames.iter().map(|&f| (f, free_rank_sets(f))).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(PERTURBATION_SEED);
    let mut invalid = 0usize;
    for _ in 0..PERTURBATIONS {
        let f = frames[rng.gen_range(0..frames.len())];
        let pool = &by_frame[&f];
        let mut values = pool[rng.gen_range(0..pool.len())].as_slice().to_vec();
        let span = f.len() as i64;
        let (lo, hi) = (-span, values[values.len() - 1] + span);
        let idx = rng.gen_range(1..values.len());
        let replacement = loop {
            let v = rng.gen_range(lo..=hi);
            if !values.contains(&v) {
                break v;
            }
        };
        values[idx] = replacement;
        values.sort_unstable();
        let c = successor_conditions(f, &values).map_err(|e| e.to_string())?;
        let is_free = free[&f].contains(&values);
        ensure(c.iter().all(|&x| x == is_free), || {
            format!("{f} {values:?}: conditions {c:?}, free path {is_free}")
        })?;
        invalid += usize::from(!is_free);
    }
    Ok(format!(
        "{} path rank sets pass all four; {PERTURBATIONS} perturbations ({invalid} invalid) agree with the free-path oracle",
        sets.len()
    ))
}

fn c8b_left_right() -> Outcome {
    let mut checked = 0usize;
    for rs in all_rank_sets(EXHAUSTIVE_MAX_LEN) {
        if rs.is_base() {
            continue;
        }
        let c = complement(&rs);
        let left = left_op(&rs).map_err(|e| e.to_string())?;
        let conj = complement(&right_op(&c).map_err(|e| e.to_string())?);
        ensure(left == conj, || format!("{rs}: L = {left}, cRc = {conj}"))?;
        // iterate L down to the base set; the complement's area drops by one each time
        let mut cur = rs.clone();
        let mut area = area_from_ranks(&c).map_err(|e| e.to_string())?;
        while !cur.is_base() {
            cur = left_op(&cur).map_err(|e| e.to_string())?;
            let next = area_from_ranks(&complement(&cur)).map_err(|e| e.to_string())?;
            ensure(next + 1 == area, || {
                format!("{rs}: complement area {area} -> {next}")
            })?;
            area = next;
        }
        ensure(area == 0, || format!("{rs}: base reached with area {area}"))?;
        checked += 1;
    }
    Ok(format!("{checked} non-base rank sets"))
}

fn c8c_areas() -> Outcome {
    let sets = all_rank_sets(EXHAUSTIVE_MAX_LEN);
    for rs in &sets {
        let p = path_from_rank_set(rs);
        let (a, b) = (p.area_by_squares(), area_from_ranks(rs));
        ensure(a.is_ok() && a == b, || format!("{p}: {a:?} vs {b:?}"))?;
    }
    Ok(format!("{} paths", sets.len()))
}

fn c8d_complement_words() -> Outcome {
    let sets = all_rank_sets(EXHAUSTIVE_MAX_LEN);
    for rs in &sets {
        let lhs = en_word(rs).reversed_as_sw();
        let rhs = sw_word(&complement(rs));
        ensure(lhs == rhs, || format!("{rs}: {lhs} vs {rhs}"))?;
    }
    Ok(format!("{} rank sets", sets.len()))
}

fn c8e_chi() -> Outcome {
    let mut words = 0usize;
    for f in Frame::all_up_to(CHI_MAX_LEN) {
        for p in enumerate_dyck(f) {
            let sigma = SwWord::from_path(&phi(&p));
            let once = chi(&sigma, Algorithm::Auto).map_err(|e| format!("{sigma}: {e}"))?;
            let twice = chi(&once, Algorithm::Auto).map_err(|e| format!("{once}: {e}"))?;
            ensure(twice == sigma, || {
                format!("{f}: {sigma} -> {once} -> {twice}")
            })?;
            let area = |w: &SwWord| w.to_path().area_by_squares().ok();
            ensure(area(&once) == area(&sigma), || {
                format!("{f}: area changed at {sigma}")
            })?;
            words += 1;
        }
    }
    Ok(format!("{words} words"))
}

fn c8f_plus_one_frames() -> Outcome {
    let mut queries = 0usize;
    let frames: Vec<Frame> = Frame::all_up_to(EXHAUSTIVE_MAX_LEN)
        .into_iter()
        .filter(|f| f.m() > f.n() && f.d() == 1)
        .collect();
    for &f in &frames {
        for p in enumerate_dyck(f) {
            let rs = rank_set(&p);
            let sigma = sw_word(&rs);
            let out = reciphi(&sigma, SearchMode::FindAll).map_err(|e| e.to_string())?;
            let widths: Vec<usize> = out
                .branching
                .iter()
                .flat_map(|h| h.keys().copied())
                .collect();
            ensure(widths.iter().all(|&w| w == 1), || {
                format!("{f} {sigma}: widths {widths:?}")
            })?;
            let ca = area_from_ranks(&complement(&rs)).map_err(|e| e.to_string())?;
            ensure(out.nodes_visited == ca as u64 + 1, || {
                format!(
                    "{f} {sigma}: {} nodes, complement area {ca}",
                    out.nodes_visited
                )
            })?;
            queries += 1;
        }
    }
    Ok(format!("{} frames, {queries} queries", frames.len()))
}

fn c9_telemetry() -> Outcome {
    let mut summary = Vec::new();
    for f in [frame(7, 5), frame(8, 5), frame(9, 5), frame(9, 7)] {
        let (mut queries, mut nodes, mut widest, mut explored_over) =
            (0usize, 0u64, 0usize, 0usize);
        for p in enumerate_dyck(f) {
            let rs = rank_set(&p);
            let sigma = sw_word(&rs);
            let out = reciphi(&sigma, SearchMode::FindAll).map_err(|e| e.to_string())?;
            ensure(out.preimages == [rs.clone()], || {
                format!("{f} {sigma}: wrong preimage")
            })?;
            ensure(out.max_branching() <= f.d(), || {
                format!(
                    "{f} {sigma}: branching {} > d = {}",
                    out.max_branching(),
                    f.d()
                )
            })?;
            let ca = area_from_ranks(&complement(&rs)).map_err(|e| e.to_string())?;
            ensure(out.max_depth == ca, || {
                format!(
                    "{f} {sigma}: max_depth {} vs complement area {ca}",
                    out.max_depth
                )
            })?;
            queries += 1;
            nodes += out.nodes_visited;
            widest = widest.max(out.max_branching());
            explored_over += usize::from(out.explored_depth > out.max_depth);
        }
        summary.push(format!(
            "{f}: {queries} q, {nodes} nodes, branching ≤ {widest}/{}, {explored_over} explored deeper",
            f.d()
        ));
    }
    Ok(summary.join("; "))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("1 golden sweep (11,5)", c1_golden_sweep),
        ("2 three-stage FussiPhi table", c2_three_stage_table),
        ("3 (8,5) rank set words and area", c3_eight_five_rank_set),
        ("4 forced positions (13,4)", c4_forced_positions),
        ("5 (5,4) SW/EN table", c5_five_four_table),
        ("6 exhaustive bijectivity m+n<=13", c6_bijectivity),
        ("7 inverters agree with brute force", c7_inverters),
        ("8a successor conditions", c8a_successor_conditions),
        ("8b L = cRc and complement-area descent", c8b_left_right),
        ("8c area by squares = area by ranks", c8c_areas),
        (
            "8d reversed EN word = SW word of complement",
            c8d_complement_words,
        ),
        ("8e chi area-preserving involution m+n<=12", c8e_chi),
        (
            "8f m = kn+1: single candidate, nodes = area+1",
            c8f_plus_one_frames,
        ),
        ("9 search telemetry (7,5) (8,5) (9,5) (9,7)", c9_telemetry),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let started = Instant::now();
        let outcome = check();
        let took = started.elapsed();
        match outcome {
            Ok(detail) => println!("PASS  {name}  [{took:.2?}]  {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}  [{took:.2?}]  {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
