//! Euler-Maclaurin (Gram-Backlund) evaluation of the Riemann zeta function,
//! critical-line zero location, argument-principle zero counting, and
//! numerical audits of the zero condition `s(s-1) + Q(s) = 0`.

// NaN must fail these checks, which `!(x < y)` expresses directly
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod audit;
pub mod bernoulli;
pub mod cli;
pub mod error;
pub mod point;
pub mod qfunction;
pub mod records;
pub mod zero_scan;
pub mod zeta_core;

pub use error::{Result, ZetaError};
pub use point::{ComplexPoint, Cplx, Real};
pub use zeta_core::{EvalParams, EvalResult};
