//! Lie algebroids given by structure functions, the linear Poisson structure on
//! the dual bundle, the affine action of first jets of sections, and numerical
//! tools for the resulting symplectic leaves.
//!
//! An [`algebroid::AlgebroidSpec`] is the entry point; [`lie_poisson::LiePoisson`]
//! builds the bracket on `A*`, [`jet_action`] the action, and [`leaves`] the
//! leaf-level checks. Every check returns numbers rather than booleans so the
//! caller decides the tolerance.

#![allow(clippy::needless_range_loop)]

pub mod algebroid;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fields;
pub mod jet_action;
pub mod leaves;
pub mod lie_poisson;
pub mod linalg;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
