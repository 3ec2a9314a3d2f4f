#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotic;
pub mod dispatch;
pub mod error;
pub mod inversion;
pub mod kernels;
pub mod kummer_series;
pub mod params;
pub mod recurrence;
pub mod reference;
pub mod selftest;
mod series;

pub use error::{Error, Result};
pub use params::{EvalPoint, Method, ProbabilityPair, ShapeParams, Target};
