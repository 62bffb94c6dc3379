//! Exact-arithmetic construction of the dihedral subalgebra `B_{e,f}` of a
//! Griess algebra generated by two Ising vectors.
//!
//! The crate builds the full multiplication table of `B_{e,f}` over the
//! canonical spanning set `{a_0, …, a_{N−1}, α₁, α₂}` from the two inner
//! products `λ₁ = (e|f)` and `λ₂ = (e|e^{τ_f})`, verifies the axial-algebra
//! axioms, reproduces the classification of admissible parameter pairs for
//! orbit sizes `N = 1..6`, and mechanizes the linear-independence argument
//! that rules out `N ≥ 7` (the 6-transposition bound).
//!
//! All arithmetic is exact: the only scalar type is an arbitrary-precision
//! rational, and every check in the crate is an exact equality with zero
//! tolerance.

pub mod algebra;
pub mod classify;
pub mod element;
pub mod gram;
pub mod independence;
pub mod linalg;
pub mod orbit;
pub mod poly;
pub mod rational;
pub mod verify;

pub use algebra::{build_algebra, AlgebraError, DihedralAlgebra};
pub use classify::{constraint_system, solve_parameters, ClassRow, ConstraintSystem};
pub use element::{Element, Label};
pub use gram::{derive_gram, GramTable};
pub use independence::{independence_certificate, infeasibility_scan, MuMatrix, ScanReport};
pub use linalg::{psd_certificate, solve_linear, solve_quadratic, LinearSolution, Matrix, PsdCertificate};
pub use orbit::{build_orbit, involution_action, Axis, OrbitModel, ParamRecord};
pub use rational::Rational;
pub use verify::{verify_axioms, AxiomReport};
