//! Exhaustive, isomorph-free enumeration of rectangular structures, and
//! extraction of the central groupoids they carry.
//!
//! A central groupoid is a binary algebra satisfying (a*b)*(b*c) = b;
//! equivalently a digraph with exactly one directed path of length two
//! between every ordered node pair, or a 0-1 matrix A with A² = J. This
//! crate enumerates the more general rectangular structures with an orderly
//! algorithm (one representative per isomorphism class, no post-hoc isomorph
//! filtering) and filters the central groupoids out of them.
//!
//! Module map:
//! - [`rect`]: base sets, rectangles, partial rectangular structures.
//! - [`canon`]: canonical labeling and automorphism groups of digraphs.
//! - [`embed`]: the graph encoding whose automorphisms are exactly the
//!   structure symmetries.
//! - [`orderly`]: the generation algorithm itself.
//! - [`algebra`]: semicentral bigroupoids, central groupoids, liftings, and
//!   the conversions between structures, tables, and graphs.
//! - [`filter`]: the central-groupoid extraction pipeline.

pub mod algebra;
pub mod bitset;
pub mod canon;
pub mod embed;
pub mod error;
pub mod filter;
pub mod graphpair;
pub mod orderly;
pub mod perm;
pub mod rect;
pub mod table;

pub use bitset::ElemSet;
pub use canon::{CanonicalResult, Digraph};
pub use error::{Error, Result};
pub use graphpair::GraphPair;
pub use perm::Permutation;
pub use rect::{BaseSet, PartitionSides, Prs, Rectangle};
pub use table::OperationTable;
