//! Exact computations with the restricted quantum affine algebra of `sl_2`
//! at roots of unity: coefficient rings, formal elements in Drinfeld
//! generators, finite-dimensional modules as exact matrices, Drinfeld
//! polynomials, segment combinatorics and an irreducibility oracle.

pub mod ring;
pub mod builders;
pub mod words;
pub mod matrix;
pub mod modules;
pub mod evaluator;
pub mod drinfeld;
pub mod segments;
pub mod irreducibility;
