use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{ActionSet, ActionValue, Equation};
use crate::error::{Error, Result};

/// Data `(A_1, A_2, B_1, B_2, g)` of the system `λu + A(u) = g`.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemInstance {
    a1: ActionSet,
    a2: ActionSet,
    b1: ActionSet,
    b2: ActionSet,
    g: [f64; 2],
}

/// On-disk layout. Action arrays may be unsorted.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    #[serde(rename = "A1")]
    a1: Vec<f64>,
    #[serde(rename = "A2")]
    a2: Vec<f64>,
    #[serde(rename = "B1")]
    b1: Vec<f64>,
    #[serde(rename = "B2")]
    b2: Vec<f64>,
    g: [f64; 2],
}

impl SystemInstance {
    pub fn new(a1: ActionSet, a2: ActionSet, b1: ActionSet, b2: ActionSet, g: [f64; 2]) -> Self {
        SystemInstance { a1, a2, b1, b2, g }
    }

    /// Maximizer's set `A_i`.
    pub fn maximizer_set(&self, eq: Equation) -> &ActionSet {
        match eq {
            Equation::First => &self.a1,
            Equation::Second => &self.a2,
        }
    }

    /// Minimizer's set `B_i`.
    pub fn minimizer_set(&self, eq: Equation) -> &ActionSet {
        match eq {
            Equation::First => &self.b1,
            Equation::Second => &self.b2,
        }
    }

    pub fn g(&self) -> [f64; 2] {
        self.g
    }

    pub fn g_of(&self, eq: Equation) -> f64 {
        self.g[eq.index()]
    }

    /// Same action sets, right-hand side replaced.
    pub fn with_g(&self, g: [f64; 2]) -> Self {
        SystemInstance { g, ..self.clone() }
    }

    /// All `(α, β) ∈ A_i × B_i`, α-major.
    pub fn action_pairs(
        &self,
        eq: Equation,
    ) -> impl Iterator<Item = (ActionValue, ActionValue)> + '_ {
        let betas = self.minimizer_set(eq);
        self.maximizer_set(eq)
            .iter()
            .flat_map(move |a| betas.iter().map(move |b| (a, b)))
    }

    /// `|A_1|·|B_1|·|A_2|·|B_2|`.
    pub fn policy_count(&self) -> u128 {
        [&self.a1, &self.b1, &self.a2, &self.b2]
            .iter()
            .map(|s| s.len() as u128)
            .product()
    }

    pub fn from_json_slice(bytes: &[u8]) -> Result<Self> {
        let file: InstanceFile = serde_json::from_slice(bytes)?;
        Self::from_file(file)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Self::from_json_slice(s.as_bytes())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let bytes = std::fs::read(path)?;
        Self::from_json_slice(&bytes).map_err(|e| match e {
            Error::Json(e) => Error::InvalidInstance(format!("{}: {e}", path.display())),
            Error::InvalidInstance(m) => Error::InvalidInstance(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        let file = InstanceFile {
            a1: self.a1.to_vec(),
            a2: self.a2.to_vec(),
            b1: self.b1.to_vec(),
            b2: self.b2.to_vec(),
            g: self.g,
        };
        serde_json::to_string_pretty(&file).expect("plain numeric data serializes")
    }

    fn from_file(file: InstanceFile) -> Result<Self> {
        let set = |name: &str, v: Vec<f64>| {
            ActionSet::from_unsorted(v).map_err(|e| match e {
                Error::InvalidInstance(m) => Error::InvalidInstance(format!("{name}: {m}")),
                other => other,
            })
        };
        if !file.g.iter().all(|g| g.is_finite()) {
            return Err(Error::InvalidInstance("g must be finite".into()));
        }
        Ok(SystemInstance {
            a1: set("A1", file.a1)?,
            a2: set("A2", file.a2)?,
            b1: set("B1", file.b1)?,
            b2: set("B2", file.b2)?,
            g: file.g,
        })
    }
}

/// Random instance with `1..=max_actions` uniform actions per set and
/// `g ∈ [−1, 1]²`.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, max_actions: usize) -> SystemInstance {
    let set = |rng: &mut R| {
        let n = rng.random_range(1..=max_actions.max(1));
        let v: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        ActionSet::from_unsorted(v).expect("uniform samples lie in [0, 1)")
    };
    let a1 = set(rng);
    let a2 = set(rng);
    let b1 = set(rng);
    let b2 = set(rng);
    let g = [rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)];
    SystemInstance::new(a1, a2, b1, b2, g)
}
