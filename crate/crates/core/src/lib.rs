//! Discounted two-state max-min systems `λu + A(u) = g` with finite action
//! sets, three independent solvers, and the explicit instance whose discounted
//! solutions `(X_λ, Y_λ)` fail to converge as `λ → 0+`.
//!
//! The PDE system `λu_i + H_i(Du_i) + B_i(u) = 0` on the torus reduces to the
//! finite system solved here whenever `H_1(0) = H_2(0) = 0`: the constant pair
//! `(X_λ, Y_λ)` is then its unique solution.

pub mod counterexample;
pub mod error;
pub mod exact;
pub mod game;
pub mod report;
pub mod solver;

pub use error::{Error, Result};
pub use game::{
    ActionSet, ActionValue, BellmanValue, CouplingMatrix, Equation, PolicyQuadruple,
    SystemInstance, ValuePair,
};
pub use solver::{Method, SolveConfig, SolveReport};
