//! Exact computations for pointed Hopf algebras of finite Cartan type: cocycle
//! deformations, cleft objects, crossed products with N-Koszul algebras,
//! Nakayama automorphisms and Calabi-Yau decisions.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod cartan;
pub mod cli;
pub mod cy;
pub mod datum;
pub mod expr;
pub mod koszul;
pub mod lattice;
pub mod linalg;
pub mod scalars;
