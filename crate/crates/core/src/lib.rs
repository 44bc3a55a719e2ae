//! The sweep map on rational `(m,n)`-Dyck paths and its inverse.
//!
//! The sweep map sorts the steps of a Dyck path by the rank `m*b - n*a`
//! of their starting points. This crate computes it, inverts it by a
//! deterministic recursion for Fuss slopes (`m = kn ± 1`) and by a
//! depth-bounded search for other slopes with `m > n`, and checks
//! bijectivity exhaustively against brute force on small frames.
//!
//! ```
//! use sweepmap::{Frame, PathWord, phi, SwWord, invert_phi, Algorithm};
//!
//! let frame = Frame::new(11, 5).unwrap();
//! let path = PathWord::parse("ududdudddududddd", frame).unwrap();
//! let image = phi(&path);
//! assert_eq!(image.to_string(), "uuduududdddddddd");
//!
//! let back = invert_phi(&SwWord::from_path(&image), Algorithm::Auto).unwrap();
//! assert_eq!(back, vec![path]);
//! ```

pub mod cli;
pub mod error;
pub mod inversion;
pub mod lattice;
pub mod oracle;
pub mod ranks;
pub mod sweep;

pub use error::{Error, Result};
pub use inversion::{
    chi, fussiphi, fussiphi_trace, invert_phi, invert_phi_with, reciphi, Algorithm,
    InversionOutcome, InvertOptions, SearchMode,
};
pub use lattice::{count_dyck, enumerate_dyck, Frame, PathWord, Step};
pub use oracle::{brute_preimages, verify_bijection, verify_properties, VerificationReport};
pub use ranks::{rank_set, rank_walk, RankSet, RankWalk};
pub use sweep::{phi, EnWord, SwWord};
