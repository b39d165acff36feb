//! The restricted duals `F[x]°` and `F[x, x^-1]°`.

mod coalgebra;
mod decompose;
mod element;
mod genfunc;
pub(crate) mod linalg;
mod recurrence;
mod translate;
mod upoly;

pub use coalgebra::{
    cobracket_closed_form, cobracket_dual, mu_dual, partial_dual_derivation, DualTensor2,
};
pub use decompose::{decompose_components, rational_roots, Component, Decomposition, FactorReport};
pub use element::{is_in_restricted_dual, DualElement, DualRep, Recursion};
pub use genfunc::{to_rational_function, RationalFunctionRep};
pub use recurrence::infer_recurrence;
pub use translate::translate_rank;
pub use upoly::UniPoly;
