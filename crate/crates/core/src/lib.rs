//! Exact computer algebra for Lie–Rinehart pairs: the exterior algebra of a
//! pair, its Schouten–Nijenhuis brackets, the Lie n-brackets built from them,
//! and executable checks of the identities relating them.

pub mod error;
pub mod exterior;
pub mod graded;
pub mod linfty;
pub mod pair;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod schouten;

pub use error::{Error, Result};
pub use exterior::{Degree, Monomial, Multivector};
pub use graded::{koszul_sign, multinomial, parity_sign, shuffles, Permutation, Sign};
pub use pair::{GradedPairElement, LieRinehartPair, PairKind, PairMorphism, Vector};
pub use report::BracketReport;
pub use sample::Sampler;
pub use scalar::{Rational, Scalar};
