//! Exact analysis of continuous, surjective, locally injective (CSLI) maps.
//!
//! The crate works on two computable classes of compact spaces:
//!
//! * ordered cut-line spaces ([`space`]): finite unions of compactified
//!   rational order intervals in which designated cut values `c` are doubled
//!   into an immediate-neighbour pair `c⁻ < c⁺`;
//! * eventually-constant sequences under the shift-with-doubling map
//!   ([`seqspace`]).
//!
//! On cut-line spaces maps are finite piecewise affine ([`maps`]); the
//! [`analysis`] module stratifies the space by fibre cardinality and decides
//! local homeomorphism and local openness; [`cocycle`] verifies, constructs
//! and applies transfer-operator weights; [`semigroup`] handles free abelian
//! actions and divisible families; [`certificates`] checks witnesses that no
//! cocycle exists. Every computation is exact over the rationals.
//!
//! The crate is `no_std` (it needs `alloc`); enable the `std` feature for
//! `std::error::Error` integration of the dependencies.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![deny(rust_2018_idioms)]

extern crate alloc;

pub mod analysis;
pub mod certificates;
pub mod cocycle;
pub mod error;
pub mod function;
pub mod gallery;
pub mod maps;
pub mod poly;
pub mod rational;
pub mod semigroup;
pub mod seqspace;
pub mod space;

pub use error::{Error, Result};
pub use rational::Rational;
