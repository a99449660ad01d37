//! String matching in labeled graphs and the orthogonal-vectors machinery
//! behind its indexing lower bounds.
//!
//! - [`model`] and [`format`]: graphs, patterns, bit-vector sets and their
//!   text formats.
//! - [`matcher`]: the online frontier matcher and a brute-force oracle.
//! - [`ov`]: OV solving, split plans and the partitioned solving loop.
//! - [`reduction`]: OV → SMLG gadget graphs, the set-intersection DAG and
//!   index transfer through reductions.
//! - [`edit`]: substring edit distance.
//! - [`harness`]: seeded experiments, benchmarks and grids.

pub mod edit;
pub mod error;
pub mod format;
pub mod harness;
pub mod matcher;
pub mod model;
pub mod ov;
pub mod reduction;

pub use error::{Error, Result};
pub use matcher::{
    find_match_path, match_bruteforce, match_bruteforce_with_caps, match_online, verify_witness,
    MatchWitness, Matcher, OracleCaps,
};
pub use model::{BitVector, LabeledGraph, OvInstance, Pattern};
