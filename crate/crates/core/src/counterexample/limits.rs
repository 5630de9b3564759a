use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use super::{discount, discount_exact, grid_point, grid_point_exact, SequenceKind, SequenceSpec};
use crate::error::Result;
use crate::exact::QSqrt2;
use crate::game::ActionValue;
use crate::solver::{closed_form_policy_value, BetaCase};
use crate::ValuePair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    X,
    Y,
}

/// Limit of a frozen-policy value along one of the sequences.
#[derive(Debug, Clone, PartialEq)]
pub struct LimitConstant {
    pub kind: SequenceKind,
    pub case: BetaCase,
    pub component: Component,
    pub expression: &'static str,
    pub value: f64,
}

impl LimitConstant {
    pub fn name(&self) -> String {
        let c = match self.component {
            Component::X => "X",
            Component::Y => "Y",
        };
        format!("{}-{}{}", self.kind, c, self.case.label())
    }
}

/// Offsets `v` in the mu limits `±1/√2 + v`, as (expression, exact value).
fn mu_offset(case: BetaCase) -> (&'static str, QSqrt2) {
    match case {
        // 3/(10(2+√2)) = (6 − 3√2)/20
        BetaCase::ZeroZero => ("3/(10(2+√2))", QSqrt2::ints(6, -3) * QSqrt2::ratio(1, 20)),
        // 3/(5(3√2+4)) = (9√2 − 12)/10
        BetaCase::ZeroOne | BetaCase::OneZero => {
            ("3/(5(3√2+4))", QSqrt2::ints(-12, 9) * QSqrt2::ratio(1, 10))
        }
        // 3/(20(1+√2)) = 3(√2 − 1)/20
        BetaCase::OneOne => ("3/(20(1+√2))", QSqrt2::ints(-3, 3) * QSqrt2::ratio(1, 20)),
    }
}

fn mu_offset_f64(case: BetaCase) -> f64 {
    match case {
        BetaCase::ZeroZero => 3.0 / (10.0 * (2.0 + SQRT_2)),
        BetaCase::ZeroOne | BetaCase::OneZero => 3.0 / (5.0 * (3.0 * SQRT_2 + 4.0)),
        BetaCase::OneOne => 3.0 / (20.0 * (1.0 + SQRT_2)),
    }
}

pub fn limit_constant_exact(kind: SequenceKind, case: BetaCase, component: Component) -> QSqrt2 {
    let half_root = QSqrt2::ratio(1, 2) * QSqrt2::sqrt2();
    let base = match component {
        Component::X => half_root,
        Component::Y => -half_root,
    };
    match kind {
        SequenceKind::Lambda => base,
        SequenceKind::Mu => base + mu_offset(case).1,
    }
}

pub fn limit_constant(kind: SequenceKind, case: BetaCase, component: Component) -> f64 {
    let base = match component {
        Component::X => FRAC_1_SQRT_2,
        Component::Y => -FRAC_1_SQRT_2,
    };
    match kind {
        SequenceKind::Lambda => base,
        SequenceKind::Mu => base + mu_offset_f64(case),
    }
}

/// All sixteen limits: four policy cases × two sequences × two components.
pub fn limit_constants() -> Vec<LimitConstant> {
    let mut out = Vec::with_capacity(16);
    for kind in SequenceKind::BOTH {
        for case in BetaCase::ALL {
            for component in [Component::X, Component::Y] {
                let expression = match (kind, component) {
                    (SequenceKind::Lambda, Component::X) => "1/√2",
                    (SequenceKind::Lambda, Component::Y) => "−1/√2",
                    (SequenceKind::Mu, Component::X) => match case {
                        BetaCase::ZeroZero => "1/√2 + 3/(10(2+√2))",
                        BetaCase::ZeroOne | BetaCase::OneZero => "1/√2 + 3/(5(3√2+4))",
                        BetaCase::OneOne => "1/√2 + 3/(20(1+√2))",
                    },
                    (SequenceKind::Mu, Component::Y) => match case {
                        BetaCase::ZeroZero => "−1/√2 + 3/(10(2+√2))",
                        BetaCase::ZeroOne | BetaCase::OneZero => "−1/√2 + 3/(5(3√2+4))",
                        BetaCase::OneOne => "−1/√2 + 3/(20(1+√2))",
                    },
                };
                out.push(LimitConstant {
                    kind,
                    case,
                    component,
                    expression,
                    value: limit_constant(kind, case, component),
                });
            }
        }
    }
    out
}

/// Grid indices `(k1, k2)` of the actions `(α1, α2)` paired with each case.
///
/// Lambda: both `p(λ_n)`. Mu: `(q(μ_n/2), q(2μ_n))` for (0,0), both
/// `q(μ_n/2)` for (0,1), both `q(2μ_n)` for (1,0), `(q(2μ_n), q(μ_n/2))`
/// for (1,1).
fn probe_indices(kind: SequenceKind, n: u32, case: BetaCase) -> (u32, u32) {
    match kind {
        SequenceKind::Lambda => (n, n),
        SequenceKind::Mu => match case {
            BetaCase::ZeroZero => (n + 1, n),
            BetaCase::ZeroOne => (n + 1, n + 1),
            BetaCase::OneZero => (n, n),
            BetaCase::OneOne => (n, n + 1),
        },
    }
}

pub fn probe_assignment(kind: SequenceKind, n: u32, case: BetaCase) -> (ActionValue, ActionValue) {
    let (k1, k2) = probe_indices(kind, n, case);
    let av = |k| ActionValue::new(grid_point(k)).expect("grid points lie in (0, 1)");
    (av(k1), av(k2))
}

/// Closed-form policy value at the sequence point with the probe actions.
pub fn policy_limit_value(spec: SequenceSpec, case: BetaCase) -> Result<ValuePair> {
    let (a1, a2) = probe_assignment(spec.kind, spec.n, case);
    closed_form_policy_value(discount(spec), a1, a2, case)
}

/// Policy value of the frozen system with `g = 0`, solved by Cramer's rule in
/// `Q(√2)` from the three-term coupling definition.
pub fn exact_policy_value(
    lambda: &QSqrt2,
    alpha1: &QSqrt2,
    alpha2: &QSqrt2,
    case: BetaCase,
) -> (QSqrt2, QSqrt2) {
    let (b1, b2) = case.betas();
    let b1 = QSqrt2::int(b1.get() as i64);
    let b2 = QSqrt2::int(b2.get() as i64);
    let one = QSqrt2::int(1);
    let two = QSqrt2::int(2);
    let coupling = |a: &QSqrt2, b: &QSqrt2| {
        // Diagonal of I + β[[−α, α−1],..] + (1−β)[[α−1, −α],..].
        &one + b * (-a) + (&one - b) * (a - &one)
    };
    let payoff = |a: &QSqrt2, b: &QSqrt2| a * b + &two * (&one - a) * (&one - b);
    let c1 = coupling(alpha1, &b1);
    let c2 = coupling(alpha2, &b2);
    let r1 = payoff(alpha1, &b1);
    let r2 = -payoff(alpha2, &b2);
    let m11 = lambda + &c1;
    let m12 = -&c1;
    let m21 = -&c2;
    let m22 = lambda + &c2;
    let det = &m11 * &m22 - &m12 * &m21;
    let x = (&r1 * &m22 - &m12 * &r2) / &det;
    let y = (&m11 * &r2 - &m21 * &r1) / &det;
    (x, y)
}

pub fn policy_limit_value_exact(spec: SequenceSpec, case: BetaCase) -> (QSqrt2, QSqrt2) {
    let (k1, k2) = probe_indices(spec.kind, spec.n, case);
    exact_policy_value(
        &discount_exact(spec),
        &grid_point_exact(k1),
        &grid_point_exact(k2),
        case,
    )
}

/// `(x_n, y_n)`: minima over the four mu cases of the probe policy values.
pub fn x_n_y_n(n: u32, k_max: u32) -> Result<(f64, f64)> {
    let spec = SequenceSpec::new(SequenceKind::Mu, n)?;
    super::probe_alpha(spec, k_max)?;
    let mut x = f64::INFINITY;
    let mut y = f64::INFINITY;
    for case in BetaCase::ALL {
        let v = policy_limit_value(spec, case)?;
        x = x.min(v.u1);
        y = y.min(v.u2);
    }
    Ok((x, y))
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;

    #[test]
    fn table_shape_and_values() {
        let t = limit_constants();
        assert_eq!(t.len(), 16);
        assert_eq!(
            limit_constant(SequenceKind::Lambda, BetaCase::OneZero, Component::X),
            0.7071067811865476
        );
        let mu_x: Vec<f64> = t
            .iter()
            .filter(|c| c.kind == SequenceKind::Mu && c.component == Component::X)
            .map(|c| c.value)
            .collect();
        let min = mu_x.iter().copied().fold(f64::INFINITY, f64::min);
        assert!((min - 0.769239).abs() < 1e-6, "{min}");
        assert!(mu_x.iter().all(|&v| v > FRAC_1_SQRT_2));
        for c in &t {
            let exact = limit_constant_exact(c.kind, c.case, c.component).to_f64();
            assert!(
                (exact - c.value).abs() <= 4.0 * f64::EPSILON,
                "{}",
                c.name()
            );
        }
    }

    #[test]
    fn exact_values_match_the_closed_forms() {
        for kind in SequenceKind::BOTH {
            for n in [2u32, 5, 9] {
                let spec = SequenceSpec::new(kind, n).unwrap();
                for case in BetaCase::ALL {
                    let (x, y) = policy_limit_value_exact(spec, case);
                    let v = policy_limit_value(spec, case).unwrap();
                    // Closed forms lose ~1e−16/λ to cancellation.
                    let tol = 1e-13 / discount(spec);
                    assert!((x.to_f64() - v.u1).abs() < tol && (y.to_f64() - v.u2).abs() < tol);
                }
            }
        }
    }

    #[test]
    fn constants_are_the_limits() {
        // At n = 40, ρ ≈ 8e−26: the exact values sit within O(ρ) of the limits.
        for kind in SequenceKind::BOTH {
            let spec = SequenceSpec::new(kind, 40).unwrap();
            for case in BetaCase::ALL {
                let (x, y) = policy_limit_value_exact(spec, case);
                let lx = limit_constant_exact(kind, case, Component::X);
                let ly = limit_constant_exact(kind, case, Component::Y);
                assert!((&x - &lx).abs().to_f64() < 1e-20, "{kind} {case:?} X");
                assert!((&y - &ly).abs().to_f64() < 1e-20, "{kind} {case:?} Y");
            }
        }
    }

    #[test]
    fn x_n_y_n_behaviour() {
        let (x2, y2) = x_n_y_n(2, 4).unwrap();
        let (x3, _) = x_n_y_n(3, 5).unwrap();
        assert!(
            (x2 - 0.392).abs() < 1e-3 && (x3 - 0.629).abs() < 1e-3,
            "{x2} {x3}"
        );
        assert!(y2 > -FRAC_1_SQRT_2);
        for n in 4..=12 {
            let (x, y) = x_n_y_n(n, n + 2).unwrap();
            assert!(x > FRAC_1_SQRT_2, "n = {n}");
            assert!(y > -FRAC_1_SQRT_2, "n = {n}");
        }
        let (x, _) = x_n_y_n(14, 16).unwrap();
        assert!((x - 0.769239).abs() < 1e-5);
        assert!(x_n_y_n(6, 6).is_err());
    }
}
