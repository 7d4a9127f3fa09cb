//! Exact arithmetic over F_q and over the integers.

pub mod conway;
pub mod field;
pub mod interval;
pub mod lll;
pub mod polyfq;
pub mod polyint;

pub use field::{FieldCtx, FqElem, ModulusSource};
pub use polyfq::{enumerate_irreducible, enumerate_squarefree, PolyFq};
pub use polyint::{factor_int, IntFactorization, PolyInt};
