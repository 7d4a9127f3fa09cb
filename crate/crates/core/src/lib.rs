//! Prime races for quadratic characters over F_q[x].

pub mod algebra;
pub mod bias;
pub mod census;
pub mod charsums;
pub mod classify;
pub mod error;
pub mod spectral;
pub mod sympcount;
pub mod zeta;

pub use error::{Error, Result};
