//! L-factor algebra: a formal layer of Asai and Rankin-Selberg atoms with a
//! pole calculus, and an exact rational-function layer for unramified
//! principal series.

pub mod formal;
pub mod laurent;
pub mod rational_function;
pub mod unramified;

pub use formal::{
    asai_steinberg_product, telescope_gamma_identity, AtomArg, AtomKind, FactorAtom, FactorProduct,
    LinearForm,
};
pub use laurent::{LaurentPoly, Monomial};
pub use rational_function::RationalFunction;
pub use unramified::{unramified_asai, unramified_rs, CharValue, Normalization};
