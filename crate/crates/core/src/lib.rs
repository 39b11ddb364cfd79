//! Decide whether the clique complex of a line graph is Cohen-Macaulay,
//! sequentially Cohen-Macaulay or Gorenstein, by fast combinatorial tests on
//! the root graph, and check every verdict against brute-force simplicial
//! oracles on small instances.

pub mod canon;
pub mod classify;
pub mod error;
pub mod formats;
pub mod graph;
pub mod harness;
pub mod homology;
pub mod line_graph;
pub mod oracle;
pub mod simplicial;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
pub use homology::Field;
pub use simplicial::{Face, SimplicialComplex};
