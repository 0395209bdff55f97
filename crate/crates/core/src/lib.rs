//! Perfect matchings of bridgeless cubic multigraphs.
//!
//! The solver follows Frink's reduction scheme: it repeatedly shrinks the
//! graph by two vertices while keeping it cubic and bridgeless, then unwinds
//! the reductions to lift a matching of the two-vertex base graph back to the
//! input. The choice between the two possible reductions is made with nothing
//! more than a spanning tree held in a link-cut forest, with every tree edge
//! labelled by a non-tree edge that covers it. A single tracked edge that is
//! kept out of the matching removes the need for alternating-cycle repairs
//! during the unwind, so the whole run costs `O(n log n)`.
//!
//! ```
//! use cubic_matching::{generator, matcher, oracle};
//!
//! let g = generator::petersen();
//! let m = matcher::solve(&g).unwrap();
//! assert_eq!(m.len(), 5);
//! assert!(oracle::is_perfect_matching(&g, m.edges()));
//! ```

pub mod apps;
pub mod dynforest;
mod error;
pub mod generator;
pub mod matcher;
pub mod multigraph;
pub mod oracle;
pub mod reducer;

pub use error::{Error, Result};
pub use matcher::{solve, Matching};
pub use multigraph::{CubicMultigraph, EdgeId, VertexId};
