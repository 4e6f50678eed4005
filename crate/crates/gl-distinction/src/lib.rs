//! Exact combinatorics for Galois-distinguished representations of `GL(m, D)`
//! over a quadratic extension of p-adic fields.
//!
//! The crate is organised bottom-up: abstract cuspidal data and their twists
//! ([`cuspidal_lines`]), segments and discrete series ([`segments`]), ladders
//! ([`ladders`]), symmetric-group utilities ([`symmetric_words`]), double
//! cosets and the geometric lemma ([`double_cosets`]), a formal and an
//! unramified L-factor layer ([`lfactor_algebra`]), spherical intertwining
//! periods ([`spherical_periods`]) and the classification engine
//! ([`distinction`]). The [`cli`] module drives everything from the command
//! line through the expression language in [`expr`].

pub mod cli;
pub mod cuspidal_lines;
pub mod distinction;
pub mod double_cosets;
pub mod error;
pub mod expr;
pub mod ladders;
pub mod lfactor_algebra;
pub mod rat;
pub mod segments;
pub mod spherical_periods;
pub mod symmetric_words;

pub use error::{Error, Result};
pub use rat::Rat;
