//! ASCII picture of a path and its transpose.
//!
//! cargo run --example render -- 8,5 uudududdudddd

use sweepmap::{Frame, PathWord};

fn main() -> sweepmap::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let frame: Frame = args.first().map_or("8,5", String::as_str).parse()?;
    let path = PathWord::parse(args.get(1).map_or("uudududdudddd", String::as_str), frame)?;
    println!(
        "{path}  area {}\n{}",
        path.area_by_squares()?,
        path.render_ascii()
    );
    let t = path.transpose();
    println!(
        "transpose {t}  area {}\n{}",
        t.area_by_squares()?,
        t.render_ascii()
    );
    Ok(())
}
