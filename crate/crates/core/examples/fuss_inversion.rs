//! Deterministic inversion for Fuss slopes: the chain of left steps down
//! to the base word, with the forced positions at each stage.
//!
//! cargo run --example fuss_inversion -- 11,5 uuduududdddddddd

use sweepmap::inversion::{forced_positions, fuss_delta};
use sweepmap::ranks::path_from_rank_set;
use sweepmap::{fussiphi_trace, Frame, SwWord};

fn main() -> sweepmap::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let frame: Frame = args.first().map_or("11,5", String::as_str).parse()?;
    let sigma = SwWord::parse(
        args.get(1).map_or("uuduududdddddddd", String::as_str),
        frame,
    )?;

    if !sigma.is_base() {
        let fp = forced_positions(&sigma)?;
        println!("forced positions {:?} ranks {:?}", fp.positions, fp.ranks);
        println!("delta {}", fuss_delta(&sigma, &fp)?);
    }
    let trace = fussiphi_trace(&sigma)?;
    for (i, stage) in trace.stages.iter().enumerate() {
        println!(
            "stage {i}: {}  s={} delta={}  ranks {}",
            stage.sigma, stage.s, stage.delta, stage.ranks
        );
    }
    println!("preimage {}", path_from_rank_set(trace.result()));
    Ok(())
}
