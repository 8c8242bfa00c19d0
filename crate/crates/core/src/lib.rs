//! Geigle-Lenzing orders on projective space: the grading group, the tilting
//! bundle `T = sum_{x in [0, dc]} P(x)`, its endomorphism algebra as a quiver
//! with relations, and the re-graded ring `R^{[Zc]}`.
//!
//! All arithmetic is exact over the rationals.

pub mod cli;
pub mod error;
pub mod glring;
pub mod gltype;
pub mod lgroup;
pub mod linalg;
pub mod ordermodel;
pub mod projcohom;
pub mod regrade;
pub mod sweep;
pub mod tilting;

pub use error::{GlError, Result};
pub use glring::{GLRing, RawPoly, ReducedMonomial, RingElement};
pub use gltype::{strata, validate_type, GLType, ValidationReport};
pub use lgroup::{LElement, LGroup};
pub use sweep::Exec;
pub use tilting::{build_tilting, cartan, rigidity_report, TiltingDatum};
