//! Sweep a path: rank walk, sorted ranks and the resulting SW/EN words.
//!
//! cargo run --example sweep_golden -- 11,5 ududdudddududddd

use sweepmap::ranks::{en_word, sw_word};
use sweepmap::{phi, rank_set, rank_walk, Frame, PathWord};

fn main() -> sweepmap::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let frame: Frame = args.first().map_or("11,5", String::as_str).parse()?;
    let word = args.get(1).map_or("ududdudddududddd", String::as_str);

    let path = PathWord::parse(word, frame)?;
    let walk = rank_walk(&path);
    let ranks = rank_set(&path);
    println!("frame      {frame}");
    println!("path       {path}");
    println!("rank walk  {:?}", walk.values());
    println!("sorted     {ranks}");
    println!("phi        {}", phi(&path));
    println!("sigma      {}", sw_word(&ranks));
    println!("rho        {}", en_word(&ranks));
    Ok(())
}
