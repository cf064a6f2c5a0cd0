//! Log-space evaluators for the classical Gamma function and five of its
//! generalizations (p-, q-, k-, (p,q)- and (q,k)-families), their psi
//! counterparts with certified truncation tails, numeric sign
//! certification of the four associated psi-difference bounds and the
//! four Gamma-ratio double inequalities they imply, and a scan engine
//! that maps the sign regions of the two remaining open comparisons.

// Frozen oracle values and published approximation coefficients are
// kept at full reference precision.
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod explore;
pub mod gamma;
pub mod lemmas;
pub mod limits;
pub mod psi;
pub mod quad;
mod series;
pub mod theorems;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    fmt_f64, EvalPoint, GFunction, LogGammaValue, ParamSet, PsiValue, ScaleOrdering, ScalePair,
    SeriesBudget, SignCertificate, SignCheckInputs, SignVerdict, EULER_GAMMA,
};
