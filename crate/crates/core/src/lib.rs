//! Exact linear algebra for the matrix equation `B·X = A` over a commutative
//! elementary divisor domain.
//!
//! The pipeline decomposes `A` and `B` into Smith normal form, decides
//! solvability from the transition matrix `L = V·P⁻¹`, parametrizes the full
//! solution coset `C + Ann_r(B)`, and builds the left g.c.d. `F` and left
//! l.c.m. `N` of all solutions, both of which are again solutions.
//!
//! Two concrete domains are provided: [`Int`] (arbitrary precision integers)
//! and [`Poly`] (univariate polynomials over exact rationals). An independent
//! Hermite-form solver in [`oracle`] cross-checks every answer.

pub mod cli;
pub mod error;
pub mod gcd_lcm;
pub mod matrix;
pub mod normal_form;
pub mod oracle;
pub mod random;
pub mod ring;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use gcd_lcm::{
    cofactor, gcd_lcm_pair, left_divides, left_gcd, left_lcm, mutually_associate, projector,
    right_divides, Divisibility, GcdLcmPair,
};
pub use matrix::{format_matrix, parse_matrix, DenseMatrix};
pub use normal_form::{hermite_col, invariant_factors, smith, HermiteDecomposition, SmithDecomposition};
pub use ring::{exact_div, ext_gcd, normalize, BezoutTriple, Int, Poly, Ring};
pub use solver::{
    annihilator_element, annihilator_generators, build_solution_set, certify,
    check_solvable_augmented, forced_block, general_solution, pattern_obstruction, particular_solution, AnnihilatorParameter,
    Obstruction, SolutionParameter, SolutionSet, SolvabilityCertificate,
};
