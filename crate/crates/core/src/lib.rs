//! Second- and third-order polynomials over the natural numbers.
//!
//! A second-order polynomial is built from `1`, a first-order variable `N`,
//! addition, multiplication and applications `Λ(·)` of a function variable
//! ranging over nondecreasing maps `ℕ → ℕ`. Third-order polynomials add an
//! operator variable `𝓕(·)` ranging over monotone operators on such maps.
//!
//! The crate provides
//!
//! - [`poly1`]: sparse multivariate polynomials with big-integer coefficients,
//! - [`arctic`]: arctic (max-plus-times) terms, their asymptotic polynomials and
//!   the order-two variant used as degrees of third-order polynomials,
//! - [`poly2`] / [`poly3`]: the higher-order ASTs with evaluation, degrees and
//!   all composition operators,
//! - [`dagnf`]: the hash-consed DAG normal form that decides equivalence, and the
//!   construction of distinguishing assignments,
//! - [`bounds`]: symbolic running-time bounds for chained oracle machines,
//! - [`syntax`]: the text grammar shared by every order.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![allow(clippy::should_implement_trait)]

extern crate alloc;

pub mod arctic;
pub mod bounds;
pub mod dagnf;
mod error;
pub mod monotone;
pub mod poly1;
pub mod poly2;
pub mod poly3;
pub mod random;
pub mod syntax;

pub use error::{Error, Result};
pub use monotone::{Monotone, MonotoneFn, Tail};
pub use poly1::{Monomial, Poly1, Var};
pub use poly2::Poly2;
pub use poly3::{Operator2, Poly3};

/// Arbitrary-precision natural number used for every coefficient and value.
pub type Natural = num_bigint::BigUint;
