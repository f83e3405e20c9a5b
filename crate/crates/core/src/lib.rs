//! Bounded weak solutions u = (sin log f, cos log f) of a planar elliptic system
//! with quadratic growth, singular on a prescribed compact set, together with
//! the quadrature and checks used to verify them numerically.

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]
pub mod error;
pub mod exec;
pub mod field;
pub mod numeric;
pub mod singular_set;
pub mod solution;
pub mod cubature;
pub mod quadrature;
pub mod verify;
pub mod cli;
