//! Exact invariants of holomorphic map germs `(C^2, 0) -> (C^3, 0)`.
//!
//! Starting from three polynomials `Φ = (Φ1, Φ2, Φ3)` in `(s, t)` the crate
//! computes
//!
//! * the cross-cap count `C(Φ)`, the codimension of the ideal of maximal
//!   minors of the Jacobian in the local ring at the origin,
//! * the sign-refined Smale invariant `Ω = -C(Φ)` of the associated
//!   immersion `S^3 -> S^5` and its embedding-class flags,
//! * the triple-point count `T(Φ)`, the codimension of the second Fitting
//!   ideal of `O_2` presented as a module over `O_3`,
//! * the Seifert-surface invariants `t = T`, `l = C`, `L = C - 3T` and the
//!   consistency value `Ω' = (3t - 3l + L)/2`.
//!
//! All arithmetic is exact over the Gaussian rationals.

pub mod algebra;
pub mod corpus;
pub mod fitting;
pub mod germ;
pub mod groebner;
pub mod invariants;
pub mod local;
pub mod parser;
pub mod report;

pub use algebra::{Monomial, MonomialOrder, Poly, Ring, Scalar};
pub use germ::Germ;
pub use local::{Codim, LocalIdeal};
