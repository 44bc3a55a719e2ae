//! Rank sets: validity, the greedy walk back to a path, end sets,
//! key/delta and the complement.
//!
//! cargo run --example rank_sets

use sweepmap::ranks::{
    area_from_ranks, complement, delta_of, end_sets, key_of, path_from_rank_set,
    successor_conditions, validate_rank_set,
};
use sweepmap::{Frame, RankSet};

fn main() -> sweepmap::Result<()> {
    let frame = Frame::new(8, 5)?;
    let values = [0, 5, 8, 10, 11, 12, 14, 15, 16, 17, 19, 20, 22];
    println!("valid: {}", validate_rank_set(frame, &values)?);
    println!(
        "successor conditions: {:?}",
        successor_conditions(frame, &values)?
    );

    let rs = RankSet::new(frame, values)?;
    let path = path_from_rank_set(&rs);
    println!(
        "path {path}  area {} (squares {})",
        area_from_ranks(&rs)?,
        path.area_by_squares()?
    );
    println!("key {}  delta {}", key_of(&rs), delta_of(&rs));
    let ends = end_sets(&rs);
    println!(
        "S {:?}\nW {:?}\nE {:?}\nN {:?}",
        ends.south, ends.west, ends.east, ends.north
    );
    let comp = complement(&rs);
    println!("complement {comp}  area {}", area_from_ranks(&comp)?);

    // Perturbing one rank breaks the set; the four conditions agree on it.
    let mut bad = values;
    bad[1] += 1;
    println!(
        "perturbed {:?}: {:?}",
        bad,
        successor_conditions(frame, &bad)?
    );
    Ok(())
}
