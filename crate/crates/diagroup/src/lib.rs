//! Exact computation in diagram groupoids of directed 2-complexes:
//! diagram normal forms and group operations, completeness checking of the
//! underlying rewriting system, minimal presentations, integer homology
//! ranks, rational Poincaré series, and truncated universal 2-covers with
//! diagram lifting.
//!
//! All arithmetic is exact; all operations are deterministic. Values are
//! immutable after construction and safe to share across threads. With the
//! `parallel` feature (default), the bounded enumerations use data-parallel
//! inner loops; disabling it gives a fully sequential build.

pub mod complex;
pub mod cover;
pub mod diagram;
pub mod enumerate;
pub mod homology;
pub mod presentation;
pub mod rewriting;
pub mod squier;

pub use complex::{CellId, CellRef, DirectedComplex, EdgeId, EdgeWord, Morphism, VertexId};
pub use diagram::{AtomicStep, Diagram};
