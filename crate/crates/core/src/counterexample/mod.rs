//! The explicit instance: `A_i = {2−√2+4^(−k) : 1 ≤ k ≤ K} ∪ {2−√2}`,
//! `B_i = {0, 1}`, `g = 0`, and the two discount sequences along which the
//! solutions approach different values.
//!
//! Along `λ_n = θ_λ 4^(−n)` the probe `p(λ_n) = 2−√2+4^(−n)` bounds `X_{λ_n}`
//! from above by a quantity tending to `1/√2`. Along `μ_n = θ_μ 2^(−2n−1)`
//! the neighbouring grid points `q(μ_n/2)`, `q(2μ_n)` bound `X_{μ_n}` from
//! below by a quantity tending to about `0.7692`.

mod identities;
mod limits;
mod oscillation;
mod sensitivity;

use std::f64::consts::SQRT_2;
use std::fmt;

pub use identities::{algebraic_identities, IdentityCheck};
pub use limits::{
    exact_policy_value, limit_constant, limit_constant_exact, limit_constants, policy_limit_value,
    policy_limit_value_exact, probe_assignment, x_n_y_n, Component, LimitConstant,
};
pub use oscillation::{
    oscillation_report, solve_sequence, tail_len, tail_max, tail_min, OscillationReport,
    OscillationRow, TAIL,
};
pub use sensitivity::{expected_signs, partials_x, partials_y, Partials, Sign};

use crate::error::{Error, Result};
use crate::exact::QSqrt2;
use crate::game::{ActionSet, ActionValue, SystemInstance};

/// Truncation level used when none is given.
pub const DEFAULT_TRUNCATION: u32 = 25;

/// `2 − √2`, the accumulation point of the action grid.
pub fn limit_point() -> f64 {
    2.0 - SQRT_2
}

/// `4^(−k)`, exact in binary64 for the exponents used here.
pub fn quarter_pow(k: u32) -> f64 {
    0.25f64.powi(k as i32)
}

/// Grid point `2 − √2 + 4^(−k)`. Probes and the action set both come from
/// here, so membership tests are bit-exact.
pub fn grid_point(k: u32) -> f64 {
    limit_point() + quarter_pow(k)
}

pub fn grid_point_exact(k: u32) -> QSqrt2 {
    QSqrt2::int(2) - QSqrt2::sqrt2() + QSqrt2::pow2(-2 * k as i32)
}

/// `{2−√2} ∪ {2−√2+4^(−k) : 1 ≤ k ≤ K}`, ascending.
pub fn truncated_action_set(k_max: u32) -> Result<ActionSet> {
    if k_max < 1 {
        return Err(Error::usage("truncation level K must be at least 1"));
    }
    let mut v = vec![limit_point()];
    v.extend((1..=k_max).rev().map(grid_point));
    ActionSet::new(v)
}

pub fn build_instance(k_max: u32) -> Result<SystemInstance> {
    let a = truncated_action_set(k_max)?;
    let b = ActionSet::new(vec![0.0, 1.0])?;
    Ok(SystemInstance::new(a.clone(), a, b.clone(), b, [0.0, 0.0]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `λ_n = θ_λ 4^(−n)`, `θ_λ = (3/4 − √2/2)^(−1) = 4(3+2√2)`.
    Lambda,
    /// `μ_n = θ_μ 2^(−2n−1)`, `θ_μ = (3/5 − 2√2/5)^(−1) = 5(3+2√2)`.
    Mu,
}

impl SequenceKind {
    pub const BOTH: [SequenceKind; 2] = [SequenceKind::Lambda, SequenceKind::Mu];

    pub fn theta(self) -> f64 {
        match self {
            SequenceKind::Lambda => 4.0 * (3.0 + 2.0 * SQRT_2),
            SequenceKind::Mu => 5.0 * (3.0 + 2.0 * SQRT_2),
        }
    }

    pub fn theta_exact(self) -> QSqrt2 {
        match self {
            SequenceKind::Lambda => QSqrt2::ints(12, 8),
            SequenceKind::Mu => QSqrt2::ints(15, 10),
        }
    }

    /// Smallest `K` whose grid contains the probes at index `n`.
    pub fn required_truncation(self, n: u32) -> u32 {
        match self {
            SequenceKind::Lambda => n,
            SequenceKind::Mu => n + 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SequenceKind::Lambda => "lambda",
            SequenceKind::Mu => "mu",
        }
    }
}

impl fmt::Display for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda" => Ok(SequenceKind::Lambda),
            "mu" => Ok(SequenceKind::Mu),
            _ => Err(Error::usage(format!(
                "unknown sequence {s:?} (expected lambda or mu)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    pub kind: SequenceKind,
    pub n: u32,
}

impl SequenceSpec {
    pub fn new(kind: SequenceKind, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::usage("sequence index must be at least 1"));
        }
        Ok(SequenceSpec { kind, n })
    }

    pub fn theta(&self) -> f64 {
        self.kind.theta()
    }
}

/// `ρ_n = 2^(−2n−2)`.
pub fn rho(n: u32) -> f64 {
    quarter_pow(n + 1)
}

pub fn discount(spec: SequenceSpec) -> f64 {
    match spec.kind {
        SequenceKind::Lambda => spec.theta() * quarter_pow(spec.n),
        SequenceKind::Mu => spec.theta() * quarter_pow(spec.n) * 0.5,
    }
}

pub fn discount_exact(spec: SequenceSpec) -> QSqrt2 {
    let e = match spec.kind {
        SequenceKind::Lambda => -2 * spec.n as i32,
        SequenceKind::Mu => -2 * spec.n as i32 - 1,
    };
    spec.kind.theta_exact() * QSqrt2::pow2(e)
}

/// Probe actions for a sequence point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Probe {
    /// `p(λ_n) = 2−√2+4^(−n)`.
    Single(ActionValue),
    /// `(q(μ_n/2), q(2μ_n)) = (2−√2+4^(−(n+1)), 2−√2+4^(−n))`.
    Pair { low: ActionValue, high: ActionValue },
}

pub fn probe_alpha(spec: SequenceSpec, k_max: u32) -> Result<Probe> {
    let need = spec.kind.required_truncation(spec.n);
    if k_max < need {
        return Err(Error::usage(format!(
            "{} probe at n = {} needs K >= {need}, got K = {k_max}",
            spec.kind, spec.n
        )));
    }
    let av = |k| ActionValue::new(grid_point(k)).expect("grid points lie in (0, 1)");
    Ok(match spec.kind {
        SequenceKind::Lambda => Probe::Single(av(spec.n)),
        SequenceKind::Mu => Probe::Pair {
            low: av(spec.n + 1),
            high: av(spec.n),
        },
    })
}

/// No element of `set` lies strictly between `q(μ_n/2)` and `q(2μ_n)`.
pub fn gap_check(n: u32, set: &ActionSet) -> bool {
    let (low, high) = (grid_point(n + 1), grid_point(n));
    !set.iter().any(|a| a.get() > low && a.get() < high)
}

pub fn gap_check_truncated(n: u32, k_max: u32) -> Result<bool> {
    if k_max < n + 1 {
        return Err(Error::usage(format!(
            "gap check at n = {n} needs K >= {}",
            n + 1
        )));
    }
    Ok(gap_check(n, &truncated_action_set(k_max)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_truncations() {
        let a = truncated_action_set(1).unwrap();
        assert_eq!(a.to_vec(), vec![2.0 - SQRT_2, 2.0 - SQRT_2 + 0.25]);
        let a = truncated_action_set(25).unwrap();
        assert_eq!(a.len(), 26);
        assert_eq!(a.min().get(), 2.0 - SQRT_2);
        assert_eq!(a.max().get(), 2.0 - SQRT_2 + 0.25);
        assert!(a.iter().all(|x| x.get() > 0.0 && x.get() < 1.0));
        assert!(truncated_action_set(0).is_err());
    }

    #[test]
    fn instance_shape() {
        let inst = build_instance(4).unwrap();
        assert_eq!(inst.g(), [0.0, 0.0]);
        assert_eq!(inst.policy_count(), 5 * 2 * 5 * 2);
    }

    #[test]
    fn discounts() {
        let l1 = discount(SequenceSpec::new(SequenceKind::Lambda, 1).unwrap());
        assert!((l1 - (3.0 + 2.0 * SQRT_2)).abs() < 1e-14);
        let m1 = discount(SequenceSpec::new(SequenceKind::Mu, 1).unwrap());
        assert!((m1 - 5.0 * (3.0 + 2.0 * SQRT_2) / 8.0).abs() < 1e-14);
        assert!((m1 - 3.642766952966369).abs() < 1e-12);
        for kind in SequenceKind::BOTH {
            for n in 1..30 {
                let a = discount(SequenceSpec { kind, n });
                let b = discount(SequenceSpec { kind, n: n + 1 });
                assert_eq!(a / b, 4.0);
                let exact = discount_exact(SequenceSpec { kind, n });
                assert!((exact.to_f64() - a).abs() <= 4.0 * f64::EPSILON * a);
            }
        }
        assert!(SequenceSpec::new(SequenceKind::Mu, 0).is_err());
    }

    #[test]
    fn theta_reciprocals() {
        let lam = SequenceKind::Lambda.theta_exact();
        assert_eq!(
            lam.recip(),
            QSqrt2::ratio(3, 4) - QSqrt2::ratio(1, 2) * QSqrt2::sqrt2()
        );
        let mu = SequenceKind::Mu.theta_exact();
        assert_eq!(
            mu.recip(),
            QSqrt2::ratio(3, 5) - QSqrt2::ratio(2, 5) * QSqrt2::sqrt2()
        );
    }

    #[test]
    fn probes_are_members() {
        let a = truncated_action_set(10).unwrap();
        let Probe::Single(p) =
            probe_alpha(SequenceSpec::new(SequenceKind::Lambda, 3).unwrap(), 10).unwrap()
        else {
            panic!("lambda probe is single");
        };
        assert_eq!(
            p.get().to_bits(),
            (2.0 - SQRT_2 + 0.25f64.powi(3)).to_bits()
        );
        assert!(a.contains(p));
        for n in 1..10 {
            let Probe::Pair { low, high } =
                probe_alpha(SequenceSpec::new(SequenceKind::Mu, n).unwrap(), 10).unwrap()
            else {
                panic!("mu probe is a pair");
            };
            assert!(a.contains(low) && a.contains(high) && low < high);
        }
        assert!(probe_alpha(SequenceSpec::new(SequenceKind::Mu, 10).unwrap(), 10).is_err());
        assert!(probe_alpha(SequenceSpec::new(SequenceKind::Lambda, 10).unwrap(), 10).is_ok());
    }

    #[test]
    fn probes_agree_with_the_linear_maps() {
        // p(λ) = 2−√2+λ/θ_λ and q(λ) = 2−√2+λ/θ_μ, in exact arithmetic.
        for n in 1..12 {
            let l = discount_exact(SequenceSpec {
                kind: SequenceKind::Lambda,
                n,
            });
            let p = QSqrt2::ints(2, -1) + l / SequenceKind::Lambda.theta_exact();
            assert_eq!(p, grid_point_exact(n));
            let m = discount_exact(SequenceSpec {
                kind: SequenceKind::Mu,
                n,
            });
            let q = |x: QSqrt2| QSqrt2::ints(2, -1) + x / SequenceKind::Mu.theta_exact();
            assert_eq!(q(&m * QSqrt2::ratio(1, 2)), grid_point_exact(n + 1));
            assert_eq!(q(&m * QSqrt2::int(2)), grid_point_exact(n));
        }
    }

    #[test]
    fn gaps() {
        assert!(gap_check_truncated(2, 10).unwrap());
        assert!(gap_check_truncated(5, 25).unwrap());
        let n = 4;
        let mut v = truncated_action_set(12).unwrap().to_vec();
        v.push(limit_point() + 2.0 * quarter_pow(n + 1));
        let adversarial = ActionSet::from_unsorted(v).unwrap();
        assert!(!gap_check(n, &adversarial));
        assert!(gap_check_truncated(5, 5).is_err());
    }
}
