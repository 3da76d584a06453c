//! Exact and numerical kernels for deciding infinite determinacy of germs
//! whose critical locus contains a prescribed variety.
//!
//! The input is a map `psi = (psi_1, ..., psi_p)` cutting out a variety `X`,
//! together with a symmetric matrix `(f_ij)` representing the germ
//! `f = sum f_ij psi_i psi_j`. From this the crate computes:
//!
//! * the transversal Hessian `H_f` and its determinant `D_f` on `X`
//!   ([`hessian`]),
//! * the matrix `Lambda` of gradient lifts and syzygies, and the ideal `K_f`
//!   generated by its maximal minors ([`fitting`]),
//! * Groebner bases, ideal membership and finite flatness certificates
//!   `m^k (cofactors) <= ideal` ([`groebner`]),
//! * Lojasiewicz exponent estimates for `|grad f|` and `D_f` by deterministic
//!   shell sampling ([`loja`]),
//! * the single-point spectral perturbations that degenerate or
//!   regularize `H_f` ([`perturb`]).
//!
//! All symbolic data is carried by [`poly::Polynomial`] with exact rational
//! coefficients; the floating paths are confined to [`loja`] and [`perturb`].
//! The crate is `no_std` (with `alloc`); IO, parsing and reports live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod fitting;
pub mod fmat;
pub mod groebner;
pub mod hessian;
pub mod loja;
pub mod matrix;
pub mod monomial;
pub mod perturb;
pub mod poly;
pub mod problem;
pub mod rat;
pub(crate) mod util;

pub use error::Error;
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use problem::{ChartMap, ProblemSpec, SpecError, YDesc};
pub use rat::Rat;
