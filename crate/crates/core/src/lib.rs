//! Certifying search for oriented paths with three blocks.
//!
//! Given a simple digraph (no loops, no digons) and a pattern
//! `P(k1, k2, k3)` — `k1` forward arcs, `k2` backward arcs, `k3` forward
//! arcs — the certifiers in this crate return one of two verified answers:
//!
//! * a [`PathEmbedding`] realizing the pattern, or
//! * a proper [`Coloring`] of the underlying graph whose size stays under
//!   a bound determined by the pattern.
//!
//! Every answer is re-checked by an independent validator before it is
//! returned; an answer that fails validation is reported as an internal
//! error, never as a certificate. A brute-force [`oracle`] provides exact
//! ground truth at small scale for testing.

pub mod batch;
pub mod certificate;
pub mod certify_k1l;
pub mod certify_klr;
pub mod classify;
pub mod digraph;
pub mod error;
pub mod format;
pub mod forest;
pub mod oracle;
pub mod peel;

pub use certificate::Certificate;
pub use digraph::{BlockPattern, Coloring, Digraph, PathEmbedding, VertexId};
pub use error::Error;
