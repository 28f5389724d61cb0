//! Gabidulin and twisted Gabidulin codes in the rank metric.
//!
//! The crate provides arithmetic in F_{q^m} ([`field`]), the skew polynomial
//! ring F_{q^m}[x; σ] ([`skew`]), rank-metric tools ([`rank`]), code
//! construction ([`code`]), an exact MRD test based on annihilator
//! polynomials of subspaces ([`mrd`]), semilinear equivalence search
//! ([`equivalence`]) and the line-oriented text formats ([`text`]).

pub mod code;
pub mod equivalence;
pub mod field;
pub mod matrix;
pub mod mrd;
pub mod rank;
pub mod skew;
pub mod text;

pub use code::{CodeError, RankCode, Twist, TwistMode, TwistSpec, Violation};
pub use equivalence::{EquivError, SemilinearTransform};
pub use field::{Elem, Field, FieldError, FieldSpec};
pub use matrix::{FqMatrix, Matrix};
pub use mrd::{MrdError, MrdVerdict, SubfieldChain, Witness};
pub use rank::{CodeVector, SubspaceBasis};
pub use skew::SkewPoly;
pub use text::TextError;
