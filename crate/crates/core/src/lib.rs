//! Finite combinatorial models of the tensor-triangular spectrum of the
//! homotopy category of permutation modules `K(G)`.

pub mod error;
pub mod field;
pub mod group;
pub mod homotopy;
pub mod ring;
pub mod sections;
pub mod spectrum;
pub mod twisted;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/groups.md")]
    struct Groups;
    #[doc = include_str!("../../../book/src/sections.md")]
    struct Sections;
    #[doc = include_str!("../../../book/src/twisted.md")]
    struct Twisted;
    #[doc = include_str!("../../../book/src/spectrum.md")]
    struct Spectrum;
    #[doc = include_str!("../../../book/src/verify.md")]
    struct Verify;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
