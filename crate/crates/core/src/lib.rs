//! Exact construction of classical polynomial families, verified zero
//! finding, and interlacing checks driven by mixed three-term relations.

pub mod error;
pub mod families;
pub mod interlacing;
pub mod poly;
pub mod relations;
pub mod rootfind;
pub mod scalar;
pub mod sweep;
pub mod table;

pub use error::{Error, Result};
pub use families::{Corollary, FamilyKind, FamilySpec};
pub use interlacing::{InterlacingVerdict, Orientation, VerdictKind};
pub use num_rational::BigRational;
pub use poly::{FPoly, Poly, QPoly};
pub use relations::{CheckReport, MixedRelation, Outcome, Shape};
pub use rootfind::{Method, ZeroSet};
pub use scalar::{Mode, Polynomial, Scalar};
