//! Numerical verification toolkit for Finsler geometry: sprays, Berwald and
//! Landsberg curvature, horizontally parallel 1-forms, spherically symmetric
//! metrics, and the obstruction scans built on top of them.

// Index loops mirror the tensor notation; `!(v > 0.0)` is how NaN is rejected.
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod calculus;
pub mod catalogue;
pub mod error;
pub mod forms;
pub mod geometry;
pub mod interface;
pub mod sampling;
pub mod sphsym;

pub use error::{Error, Result};
