//! Solvers for `λu + A(u) = g` and the comparison-principle checks.
//!
//! Three routes reach the unique solution independently: value iteration on
//! the contraction `u ↦ (g + u − A(u))/(1+λ)`, the monotone scheme built from
//! the existence proof (increasing iterates started from a subsolution), and
//! brute-force enumeration of frozen policies. Every route stops on the
//! max-norm of the nonlinear residual, never on step size.

mod linear;
mod monotone;
mod policy_enum;
mod value_iteration;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

pub use linear::{closed_form_policy_value, policy_value, BetaCase};
pub use monotone::{monotone_solve, monotone_solve_traced, MonotoneTrace};
pub use policy_enum::{policy_enum_solve, MAX_POLICY_COUNT};
pub use value_iteration::{value_iteration, value_iteration_from};

use crate::error::{Error, Result};
use crate::game::{
    operator, payoff_sup_norm, Equation, PolicyQuadruple, SystemInstance, ValuePair,
};

/// Below this discount the residual tolerance is floored at
/// [`SMALL_DISCOUNT_TOLERANCE`].
pub const SMALL_DISCOUNT: f64 = 1e-6;
pub const SMALL_DISCOUNT_TOLERANCE: f64 = 1e-9;
/// Slack used by the sub/supersolution verdicts.
pub const VERDICT_SLACK: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ValueIteration,
    Monotone,
    PolicyEnum,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::ValueIteration, Method::Monotone, Method::PolicyEnum];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ValueIteration => "value-iteration",
            Method::Monotone => "monotone",
            Method::PolicyEnum => "policy-enum",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                Error::usage(format!(
                    "unknown method {s:?} (expected value-iteration, monotone or policy-enum)"
                ))
            })
    }
}

impl Serialize for Method {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveConfig {
    pub method: Method,
    pub residual_tol: f64,
    /// Plain iterations for value iteration, outer iterations for the
    /// monotone scheme, candidate cap for policy enumeration.
    pub max_iterations: u64,
}

impl SolveConfig {
    pub fn new(method: Method) -> Self {
        let max_iterations = match method {
            Method::ValueIteration => 200_000_000,
            Method::Monotone => 10_000,
            Method::PolicyEnum => MAX_POLICY_COUNT,
        };
        SolveConfig {
            method,
            residual_tol: 1e-12,
            max_iterations,
        }
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.residual_tol = tol;
        self
    }

    pub fn with_max_iterations(mut self, n: u64) -> Self {
        self.max_iterations = n;
        self
    }

    /// Residual tolerance actually enforced at discount `lambda`.
    pub fn tolerance_for(&self, lambda: f64) -> f64 {
        if lambda <= SMALL_DISCOUNT {
            self.residual_tol.max(SMALL_DISCOUNT_TOLERANCE)
        } else {
            self.residual_tol
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.residual_tol.is_nan() || self.residual_tol <= 0.0 {
            return Err(Error::usage("residual tolerance must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::usage("iteration budget must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub u: ValuePair,
    pub residual1: f64,
    pub residual2: f64,
    pub iterations: u64,
    pub method: Method,
    pub policy: PolicyQuadruple,
    pub discount: f64,
}

impl SolveReport {
    pub fn max_residual(&self) -> f64 {
        self.residual1.abs().max(self.residual2.abs())
    }

    /// Report at `u` with the greedy policy there.
    pub(crate) fn at(
        u: ValuePair,
        instance: &SystemInstance,
        lambda: f64,
        method: Method,
        iterations: u64,
    ) -> Self {
        let (residual1, residual2) = residual_unchecked(u, instance, lambda);
        SolveReport {
            u,
            residual1,
            residual2,
            iterations,
            method,
            policy: PolicyQuadruple::greedy(u, instance),
            discount: lambda,
        }
    }
}

pub(crate) fn check_discount(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::usage(format!(
            "discount must be positive and finite, got {lambda}"
        )))
    }
}

/// `(λu_1 + A_1(u) − g_1, λu_2 + A_2(u) − g_2)`.
pub fn residual(u: ValuePair, instance: &SystemInstance, lambda: f64) -> Result<(f64, f64)> {
    check_discount(lambda)?;
    Ok(residual_unchecked(u, instance, lambda))
}

pub(crate) fn residual_unchecked(
    u: ValuePair,
    instance: &SystemInstance,
    lambda: f64,
) -> (f64, f64) {
    let a = operator(u, instance);
    let g = instance.g();
    (lambda * u.u1 + a.u1 - g[0], lambda * u.u2 + a.u2 - g[1])
}

/// `λv + A(v) ≤ g` componentwise, up to [`VERDICT_SLACK`].
pub fn check_subsolution(v: ValuePair, instance: &SystemInstance, lambda: f64) -> Result<bool> {
    let (r1, r2) = residual(v, instance, lambda)?;
    Ok(r1 <= VERDICT_SLACK && r2 <= VERDICT_SLACK)
}

/// `λv + A(v) ≥ g` componentwise, up to [`VERDICT_SLACK`].
pub fn check_supersolution(v: ValuePair, instance: &SystemInstance, lambda: f64) -> Result<bool> {
    let (r1, r2) = residual(v, instance, lambda)?;
    Ok(r1 >= -VERDICT_SLACK && r2 >= -VERDICT_SLACK)
}

/// `R = max_i(‖L_i‖_∞ + |g_i|)/λ`; `±(R, R)` are a sub- and a supersolution.
pub fn a_priori_bound(instance: &SystemInstance, lambda: f64) -> Result<f64> {
    check_discount(lambda)?;
    let m = Equation::BOTH
        .iter()
        .map(|&eq| payoff_sup_norm(eq, instance) + instance.g_of(eq).abs())
        .fold(0.0, f64::max);
    Ok(m / lambda)
}

/// Dispatches on `config.method`.
pub fn solve(instance: &SystemInstance, lambda: f64, config: &SolveConfig) -> Result<SolveReport> {
    match config.method {
        Method::ValueIteration => value_iteration(instance, lambda, config),
        Method::Monotone => monotone_solve(instance, lambda, config),
        Method::PolicyEnum => policy_enum_solve(instance, lambda, config),
    }
}
