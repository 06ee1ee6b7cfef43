//! Exact Jordan-Chevalley decomposition of square matrices over `Q` and `F_p`.
//!
//! The semisimple part `D` and nilpotent part `N` of `A` are produced by a
//! Newton-type iteration driven by a square-free part of an annihilating
//! polynomial; nothing is factored and no eigenvalue is computed. See
//! [`chevalley::jordan_chevalley`].

pub mod chevalley;
pub mod cli;
pub mod field;
pub mod matrix;
pub mod poly;

pub use chevalley::{jordan_chevalley, verify, Decomposition, IterationMode, VerificationReport};
pub use field::{Field, FieldElement, FieldSpec, PrimeField, Rationals};
pub use matrix::{AnyMat, Mat};
pub use poly::{Poly, SquareFreeCert};
