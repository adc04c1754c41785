//! Exact Nullstellensatz certificates over the Gaussian rationals.
//!
//! Given polynomials `f_1, …, f_k` in `z_1, …, z_n` with coefficients in
//! `ℚ(i)`, the engine searches for `g_1, …, g_k` with `Σ f_i g_i = 1` inside a
//! prescribed monomial support, verifies every answer exactly, and can count
//! the basic steps it spends doing so.

pub mod corpus;
pub mod engine;
mod error;
pub mod frontend;
pub mod metrics;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod steps;

pub use engine::{
    solve, solve_levelwise, solve_macaulay, AnsatzKind, AnsatzSpec, Certificate, NoSolution, PivotRule, SolveOptions,
    SolveOutcome, Strategy, StrategyTag,
};
pub use error::Error;
pub use frontend::{emit_certificate, emit_system, parse_certificate, parse_system, FormatError};
pub use metrics::{counted_solve, presort_variables, theorem_bound, Permutation};
pub use monomial::Monomial;
pub use oracle::{box_zero_search, dense_cert_search, verify, Residual, ZeroWitness};
pub use poly::{PolySystem, Polynomial, Term};
pub use scalar::GaussianRational;
pub use steps::{measure, StepCounter};
