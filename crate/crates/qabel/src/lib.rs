//! File formats, the multiprecision backend, and command implementations
//! for the `qabel` tool.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod app;
pub mod mp;
pub mod report;
pub mod table;

pub use app::{AppError, Outcome};
