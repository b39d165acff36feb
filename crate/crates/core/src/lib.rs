//! Exact computations for the Witt, one-sided Witt and Virasoro Lie
//! bialgebras and their restricted duals.
//!
//! The library is generic over the coefficient field ([`Scalar`]); the
//! aliases at the crate root fix it to exact rationals ([`Q`]), which is what
//! the command-line tool and the verification suites use.

pub mod algebra;
pub mod bialgebra;
pub mod bracket;
pub mod dual;
mod error;
pub mod json;
pub mod scalar;
mod sparse;
pub mod tensor;
pub mod verify;
mod window;

pub use algebra::{bracket, AlgebraKind, Domain, LaurentElement, LieElement};
pub use bialgebra::{BialgebraParams, RFamily, RMatrix};
pub use bracket::{BracketTable, ClosedForm, Mutation, Provenance};
pub use dual::DualElement;
pub use error::Error;
pub use json::Json;
pub use scalar::Scalar;
pub use tensor::{BasisLabel, Tensor, Tensor2, Tensor3};
pub use window::Window;

/// Exact rationals, the default coefficient field.
pub type Q = num_rational::BigRational;

pub type LaurentQ = LaurentElement<Q>;
pub type LieElementQ = LieElement<Q>;
pub type Tensor2Q = Tensor2<Q>;
pub type Tensor3Q = Tensor3<Q>;
pub type RMatrixQ = RMatrix<Q>;
pub type BialgebraParamsQ = BialgebraParams<Q>;
pub type DualElementQ = DualElement<Q>;
pub type BracketTableQ = BracketTable<Q>;
pub type ClosedFormQ = ClosedForm<Q>;
