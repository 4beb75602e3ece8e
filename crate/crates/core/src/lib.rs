//! The endomorphism semiring of a finite chain and its simplicial pieces:
//! simplices, strings, triangles, layers, discrete neighborhoods, the
//! idempotent triangle and the eight-region split of a triangle.
//!
//! Everything is finite, so every structural statement is checked by
//! enumeration. See [`claims`] for the registry of checks.

pub mod analysis;
pub mod chain;
pub mod claims;
pub mod cli;
pub mod counting;
pub mod diagram;
pub mod error;
pub mod par;
pub mod simplex;
pub mod strings;
pub mod triangle;

pub use analysis::{classify_element, ElementClass, Subset, Verdict, Witness};
pub use chain::{all_endos, format_compact, parse_compact, ChainEndo, CompactForm};
pub use error::{Error, Result};
pub use par::Exec;
pub use simplex::{LayerId, SimplexSpec};
pub use strings::{StringElem, StringSpec};
pub use triangle::{Region, RegionReport, TriElem, TriVertex, TriangleSpec, TypeTriple};
