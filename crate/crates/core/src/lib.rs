pub mod equivalence;
pub mod error;
pub mod partitions;
pub mod plabic;
pub mod polytope;
pub mod quiverfold;
pub mod superpotential;
pub mod valuation;

/// The book, compiled so that its examples run as doctests.
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    pub mod partitions {}
    #[doc = include_str!("../../../book/src/plabic.md")]
    pub mod plabic {}
    #[doc = include_str!("../../../book/src/valuations.md")]
    pub mod valuations {}
    #[doc = include_str!("../../../book/src/superpotential.md")]
    pub mod superpotential {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    pub mod polytopes {}
    #[doc = include_str!("../../../book/src/equivalence.md")]
    pub mod equivalence {}
    #[doc = include_str!("../../../book/src/quiver.md")]
    pub mod quiver {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

pub use error::{Error, PolytopeError, Result};
