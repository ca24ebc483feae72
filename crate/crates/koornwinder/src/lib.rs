//! Exact arithmetic for the quasi-polynomial representations of the rank-r
//! double affine Hecke algebra of type (C-dual, C): truncated divided-
//! difference operators on quasi-monomials, the commuting Y-operator family,
//! and the triangular eigenproblem whose solutions extend the nonsymmetric
//! Koornwinder polynomials.
//!
//! All computation is over arbitrary-precision rationals; every identity the
//! crate claims is checked to exact equality, never within a tolerance.

pub mod config;
pub mod epoly;
pub mod operators;
pub mod quasipoly;
pub mod scalars;
pub mod verify;
pub mod weyl;
