//! Coupling matrices, running payoffs and the max-min operators `A_i`.

mod action;
mod coupling;
mod instance;
mod operator;

pub use action::{ActionSet, ActionValue, MERGE_DISTANCE};
pub use coupling::{coupling_matrix, payoff, running_cost, CouplingMatrix};
pub use instance::{random_instance, SystemInstance};
pub use operator::{bellman, lipschitz_bound, operator, payoff_sup_norm, BellmanValue};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Row index of the two-equation system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Equation {
    First,
    Second,
}

impl Equation {
    pub const BOTH: [Equation; 2] = [Equation::First, Equation::Second];

    pub fn index(self) -> usize {
        match self {
            Equation::First => 0,
            Equation::Second => 1,
        }
    }

    pub fn other(self) -> Equation {
        match self {
            Equation::First => Equation::Second,
            Equation::Second => Equation::First,
        }
    }
}

/// One-based, as the equations are numbered.
impl TryFrom<usize> for Equation {
    type Error = Error;

    fn try_from(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Equation::First),
            2 => Ok(Equation::Second),
            _ => Err(Error::usage(format!(
                "equation index must be 1 or 2, got {i}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ValuePair {
    pub u1: f64,
    pub u2: f64,
}

impl ValuePair {
    pub const fn new(u1: f64, u2: f64) -> Self {
        ValuePair { u1, u2 }
    }

    pub fn get(&self, eq: Equation) -> f64 {
        match eq {
            Equation::First => self.u1,
            Equation::Second => self.u2,
        }
    }

    /// `(u1 + r, u2 + r)`.
    pub fn shifted(&self, r: f64) -> Self {
        ValuePair::new(self.u1 + r, self.u2 + r)
    }

    pub fn max_abs(&self) -> f64 {
        self.u1.abs().max(self.u2.abs())
    }

    pub fn dist(&self, other: &ValuePair) -> f64 {
        (self.u1 - other.u1).abs().max((self.u2 - other.u2).abs())
    }

    pub fn is_finite(&self) -> bool {
        self.u1.is_finite() && self.u2.is_finite()
    }
}

impl From<(f64, f64)> for ValuePair {
    fn from((u1, u2): (f64, f64)) -> Self {
        ValuePair::new(u1, u2)
    }
}

/// A frozen action pair `(α_i, β_i)` for each equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolicyQuadruple {
    pub alpha1: ActionValue,
    pub beta1: ActionValue,
    pub alpha2: ActionValue,
    pub beta2: ActionValue,
}

impl PolicyQuadruple {
    pub fn new(
        alpha1: ActionValue,
        beta1: ActionValue,
        alpha2: ActionValue,
        beta2: ActionValue,
    ) -> Self {
        PolicyQuadruple {
            alpha1,
            beta1,
            alpha2,
            beta2,
        }
    }

    pub fn actions(&self, eq: Equation) -> (ActionValue, ActionValue) {
        match eq {
            Equation::First => (self.alpha1, self.beta1),
            Equation::Second => (self.alpha2, self.beta2),
        }
    }

    /// The maximizing and minimizing actions selected by the operators at `u`.
    pub fn greedy(u: ValuePair, instance: &SystemInstance) -> Self {
        let first = bellman(Equation::First, u, instance);
        let second = bellman(Equation::Second, u, instance);
        PolicyQuadruple::new(first.alpha, first.beta, second.alpha, second.beta)
    }

    pub fn belongs_to(&self, instance: &SystemInstance) -> bool {
        Equation::BOTH.iter().all(|&eq| {
            let (a, b) = self.actions(eq);
            instance.maximizer_set(eq).contains(a) && instance.minimizer_set(eq).contains(b)
        })
    }
}
