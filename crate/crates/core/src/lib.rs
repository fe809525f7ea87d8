//! Exact computations on cone polynomials.
//!
//! A cone polynomial for an ordered set `S` of `d` points in projective
//! `n`-space is a product of `d` linear forms, the `i`-th vanishing at the
//! `i`-th point and at a shared codimension-2 plane. This crate builds
//! such polynomials over the rationals, measures the dimension of their
//! span `V(n, d)` by several independent routes, and checks the linear
//! restrictions that keep that span strictly inside the space of degree-`d`
//! forms vanishing on `S` when `d` is odd.
//!
//! Module map:
//!
//! * [`algebra`]: exact scalars, monomial indexing, dense multi-graded
//!   homogeneous polynomials.
//! * [`geometry`]: projective points, configurations, planes and the
//!   determinant linear forms.
//! * [`linalg`]: exact matrices, fraction-free and modular rank,
//!   permanents.
//! * [`spans`]: cone polynomials, the point functional, the coefficient
//!   matrix `M(d)` and span-dimension reports.
//! * [`cli`]: the `conespan` command-line harness.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod spans;

pub use error::{Error, Result};
