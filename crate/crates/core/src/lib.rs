//! Book embeddings and straight-line thickness drawings for graphs of bounded
//! treewidth.
//!
//! The crate is organised around k-trees given as construction certificates
//! ([`graph::KTreeBuild`]). From a certificate it builds
//!
//! * book embeddings whose pages are star forests (at most `k + 1` pages) or,
//!   for 2-trees, forests (two pages),
//! * exact rational drawings whose colour classes are noncrossing forests
//!   (`k` colours) or noncrossing subgraphs (`ceil(k / 2)` colours),
//!
//! and ships independent verifiers, lower-bound gadgets with constructive
//! refuters, and brute-force oracles for small graphs.

pub mod book;
pub mod geom;
pub mod graph;
pub mod oracle;
pub mod verify;

pub use book::BookEmbedding;
pub use geom::{Drawing, Point};
pub use graph::{Edge, Graph, KTreeBuild};
