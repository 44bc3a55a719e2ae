//! Exhaustive bijectivity and identity checks over all small frames.
//!
//! cargo run --release --example verify_bijection -- 11

use sweepmap::{verify_bijection, verify_properties, Frame};

fn main() -> sweepmap::Result<()> {
    let max: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(11);
    for frame in Frame::all_up_to(max) {
        let b = verify_bijection(frame)?;
        let p = verify_properties(frame)?;
        println!(
            "{:>6}  paths {:>6}  bijective {}  inverter {:<5}  properties {}  {:.3}s",
            frame.to_string(),
            b.paths_checked,
            b.bijective,
            b.inverter.map_or("-".into(), |a| a.to_string()),
            if p.passed() { "ok" } else { "FAILED" },
            (b.elapsed + p.elapsed).as_secs_f64()
        );
        for f in b.failures.iter().chain(&p.failures) {
            println!("    {}: {}", f.check, f.witness);
        }
    }
    Ok(())
}
