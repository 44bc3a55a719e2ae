//! Recover ranks from an SW word and its compatible EN word by walking
//! the compatibility graph.
//!
//! cargo run --example compatibility_graph

use sweepmap::ranks::{en_word, sw_word};
use sweepmap::sweep::{build_graph, is_compatible_ranks, ranks_from_graph};
use sweepmap::{Frame, RankSet};

fn main() -> sweepmap::Result<()> {
    let frame = Frame::new(8, 5)?;
    let rs = RankSet::new(frame, [0, 5, 8, 10, 11, 12, 14, 15, 16, 17, 19, 20, 22])?;
    let (sigma, rho) = (sw_word(&rs), en_word(&rs));
    println!("sigma {sigma}\nrho   {rho}");

    let g = build_graph(&sigma, &rho)?;
    println!("edges {:?}", g.edges());
    println!("single cycle: {}", g.is_single_cycle());
    let back = ranks_from_graph(&g, &sigma, &rho)?;
    println!("ranks {back}  (matches: {})", back == rs);
    println!(
        "compatible: {}",
        is_compatible_ranks(&sigma, back.as_slice())?
    );
    Ok(())
}
