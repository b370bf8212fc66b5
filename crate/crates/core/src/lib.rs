//! Exact arithmetic and Galois-group classification for b-reciprocal integer
//! polynomials `f(x) = x^n g(x + b/x)`.
//!
//! The crate is organized bottom-up:
//!
//! * [`intpoly`]: integer polynomials, resultants, factorization over `Z` and `F_p`.
//! * [`breciprocal`]: the `f <-> g` correspondence and coefficient-box families.
//! * [`galois`]: classification inside the hyperoctahedral group and a
//!   Frobenius cycle-type auditor.
//! * [`conic`]: rational points on `X^2 - 4bY^2 = Z^2` and their lifts to `g`.
//! * [`census`]: sharded, checkpointed enumeration with asymptotic fits.

pub mod breciprocal;
pub mod census;
pub mod conic;
mod error;
pub mod galois;
pub mod intpoly;

pub use breciprocal::{BRecipPoly, FamilyKind, FamilyMember, FamilySpec, SqrtBEval};
pub use census::{CensusConfig, CensusReport};
pub use error::{Error, Result};
pub use galois::{BaseGroup, ClassifyOptions, GaloisClassification, SignedCycleType, Verdict};
pub use intpoly::{FactorList, IntPoly};
