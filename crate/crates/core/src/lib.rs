//! Combinatorics of global monodromy groups of elliptic fibrations over the
//! projective line.
//!
//! A finite-index subgroup of `PSL(2,Z) = Z2 * Z3` is stored as a transitive
//! permutation pair ([`dessin::Dessin`]); its marked points (elliptic points
//! of order 2 and 3, cusps) carry Kodaira fiber types ([`fibers`]) whose
//! `SL(2,Z)` lifts must multiply to the identity. The [`weierstrass`] module
//! computes the same data from explicit Weierstrass equations and serves as an
//! independent check of the combinatorial side.
//!
//! Module map:
//!
//! - [`arith`]: exact `SL(2,Z)` matrices, normal forms in `Z2 * Z3`, braid degree.
//! - [`dessin`]: permutation pairs, vertex census, ET/CDF, AB-graphs, reduction moves.
//! - [`subgroup`]: generators, membership, boundary words, coset enumeration.
//! - [`fibers`]: Kodaira table, fiber assignments, lifting criteria.
//! - [`enumerate`]: isomorph-free generation of dessins and the catalogs built on it.
//! - [`pullback`]: base change along a branched cover of the modular curve.
//! - [`weierstrass`]: exact Weierstrass models and their local fiber types.

pub mod arith;
pub mod dessin;
pub mod enumerate;
pub mod error;
pub mod fibers;
pub mod pullback;
pub mod subgroup;
pub mod weierstrass;

pub use error::{Error, Result};
