//! Exact matroid computations over prime fields.
//!
//! The crate provides:
//!
//! - [`gf`]: arithmetic over GF(p), matrices with canonical row reduction,
//!   and projective flats.
//! - [`matroid`]: rank oracles with call counting, matroid constructions
//!   (linear, uniform, spike, rank table, minor, dual), and derived
//!   structure such as closure, circuits, cyclic flats, and connectivity.
//! - [`spike`]: tipless spikes built from dependent-transversal families,
//!   their representable instances, relaxation and tightening moves, and
//!   the transversal census behind the exponential lower bound for
//!   certifying representability.
//! - [`freedom`]: the freer-than order, clones, fixed and cofixed elements,
//!   and freedom computed by iterated single-element extension search.
//! - [`repenum`]: exhaustive enumeration of GF(p)-representations up to row
//!   operations and column scaling, and extension-candidate scans in
//!   projective space.
//! - [`protocol`]: construction and replay verification of succinct
//!   non-representability certificates with exact rank-call accounting.
//! - [`catalog`]: named fixture matroids used by the test suite and CLI.

pub mod catalog;
pub mod freedom;
pub mod gf;
pub mod matroid;
pub mod protocol;
pub mod repenum;
pub mod spike;

pub use gf::{FieldElement, FieldMatrix, Flat, GfError, PrimeField};
pub use matroid::{CountedOracle, GroundSet, Matroid, MatroidError, RankOracle};
