//! Determinant upper bounds from the entry sum and entry square sum of a
//! matrix, the extremal matrices that attain them, and small-scale
//! maximal-determinant search used to measure how tight the bounds are.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod infdet;
pub mod linalg;
pub mod rational;
pub mod report;
pub mod search;

pub use error::{Error, Result};
pub use linalg::{EntryCase, EntryStats, Matrix};
