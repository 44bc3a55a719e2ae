//! chi: invert, read the EN word backwards as an SW word. It is an
//! area-preserving involution; this checks it on a whole frame.
//!
//! cargo run --example chi_involution -- 7,4

use sweepmap::{chi, enumerate_dyck, phi, Algorithm, Frame, SwWord};

fn main() -> sweepmap::Result<()> {
    let arg = std::env::args().nth(1);
    let frame: Frame = arg.as_deref().unwrap_or("7,4").parse()?;
    let mut fixed = 0;
    let mut total = 0;
    for p in enumerate_dyck(frame) {
        let sigma = SwWord::from_path(&phi(&p));
        let image = chi(&sigma, Algorithm::Auto)?;
        let back = chi(&image, Algorithm::Auto)?;
        assert_eq!(back, sigma, "chi is not an involution at {sigma}");
        assert_eq!(
            image.to_path().area_by_squares()?,
            sigma.to_path().area_by_squares()?
        );
        total += 1;
        if image == sigma {
            fixed += 1;
        }
        if total <= 5 {
            println!("{sigma} <-> {image}");
        }
    }
    println!("frame {frame}: {total} words, {fixed} fixed points, involution and area preserved");
    Ok(())
}
