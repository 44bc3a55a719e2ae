//! Backtracking inversion for general slopes `m = kn + d`, with the
//! search telemetry.
//!
//! cargo run --example reciphi_search -- 8,5 ududuuudddddd

use sweepmap::inversion::{candidate_set, forced_positions};
use sweepmap::ranks::path_from_rank_set;
use sweepmap::{reciphi, Frame, SearchMode, SwWord};

fn main() -> sweepmap::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let frame: Frame = args.first().map_or("8,5", String::as_str).parse()?;
    let sigma = SwWord::parse(args.get(1).map_or("ududuuudddddd", String::as_str), frame)?;

    let fp = forced_positions(&sigma)?;
    let state = candidate_set(&sigma, &fp);
    println!(
        "forced {:?}  candidates {:?}",
        fp.positions, state.candidates
    );

    let out = reciphi(&sigma, SearchMode::FindAll)?;
    for rs in &out.preimages {
        println!("preimage {}  ranks {rs}", path_from_rank_set(rs));
    }
    println!(
        "nodes {}  depth {}  explored {}  max branching {} (d = {})",
        out.nodes_visited,
        out.max_depth,
        out.explored_depth,
        out.max_branching(),
        frame.d()
    );
    for (depth, hist) in out.branching.iter().enumerate() {
        println!("  depth {depth}: {hist:?}");
    }
    Ok(())
}
