//! Exact toolkit for finite-dimensional Leibniz algebras presented by
//! structure constants.
//!
//! * [`exactlin`]: rational matrices, row reduction, canonical subspaces.
//! * [`algebra`]: the algebra type, identity checks, series, centers,
//!   Leibniz kernel, ideals, quotients and change of basis.
//! * [`families`]: `S1`, `S2`, `L_n`, and the nilpotent families.
//! * [`mapspaces`]: derivations, anti-derivations, biderivations and
//!   automorphism checks.
//! * [`extensions`]: non-abelian extensions of an abelian algebra by a
//!   two-dimensional fiber, their cocycle conditions, and the reduction of
//!   every non-nilpotent non-Lie algebra with one-dimensional derived
//!   subalgebra to `L_n`.
//! * [`racks`]: floating-point checks of smooth pointed racks and their
//!   tangent Leibniz algebras.

pub mod algebra;
pub mod exactlin;
pub mod extensions;
pub mod families;
pub mod mapspaces;
pub mod racks;

pub use algebra::{AlgebraError, LeibnizAlgebra, Side, StructureTensor, TwoDimKind};
pub use exactlin::{LinalgError, Matrix, Rational, Subspace};
