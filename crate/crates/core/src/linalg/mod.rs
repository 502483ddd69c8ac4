//! Exact and floating determinant kernels, entry statistics and the
//! `xI + yJ` algebra.

mod det;
mod matrix;
mod shifted;
mod stats;
mod text;

pub use det::{det_bigint, det_exact, det_f64, det_float, det_i128};
pub use matrix::Matrix;
pub use shifted::{shifted_identity_det, shifted_identity_inverse};
pub use stats::{entry_stats, EntryCase, EntryStats};
pub use text::{parse_matrix, write_matrix};
