//! Exact and numeric machinery for partition-theoretic q-series.
//!
//! The crate is `no_std` with `alloc`. Coefficient arithmetic is generic over
//! [`Scalar`], so the same builders run over exact rationals, `f64`, or a
//! multiprecision float supplied by a downstream crate.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod accel;
pub mod arith;
pub mod cf;
mod error;
pub mod forms;
pub mod identity;
pub mod limit;
pub mod numeric;
pub mod partition;
pub mod qbracket;
pub mod scalar;
pub mod series;
pub mod stolz;

pub use arith::ArithmeticFunction;
pub use error::Error;
pub use forms::FormId;
pub use partition::Partition;
pub use scalar::{Rational, Scalar};
pub use series::TruncatedSeries;

pub use num_complex::Complex64;
