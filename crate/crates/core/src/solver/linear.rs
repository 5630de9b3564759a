use super::check_discount;
use crate::error::{Error, Result};
use crate::game::{
    coupling_matrix, payoff, ActionValue, Equation, PolicyQuadruple, SystemInstance, ValuePair,
};

/// Unique solution `(X, Y)` of the linear system obtained by freezing `policy`:
///
/// ```text
/// λX + c11(α1,β1)X + c12(α1,β1)Y = L_1(α1,β1) + g_1
/// λY + c21(α2,β2)X + c22(α2,β2)Y = L_2(α2,β2) + g_2
/// ```
///
/// Row sums vanish, so the determinant factors as `λ(λ + c11 + c22)`. The
/// difference `X − Y` is solved first, which keeps the residual of the
/// nonlinear system at rounding level even when `λ` is tiny.
pub fn policy_value(
    lambda: f64,
    policy: &PolicyQuadruple,
    instance: &SystemInstance,
) -> Result<ValuePair> {
    check_discount(lambda)?;
    let first = coupling_matrix(policy.alpha1, policy.beta1);
    let second = coupling_matrix(policy.alpha2, policy.beta2);
    let (c1, c2) = (first.c11, second.c22);
    let r1 = payoff(Equation::First, policy.alpha1, policy.beta1) + instance.g_of(Equation::First);
    let r2 =
        payoff(Equation::Second, policy.alpha2, policy.beta2) + instance.g_of(Equation::Second);

    let reduced = lambda + c1 + c2;
    let det = lambda * reduced;
    if det.is_nan() || det <= 0.0 || det.is_infinite() {
        return Err(Error::Internal(format!(
            "singular policy system (determinant {det})"
        )));
    }
    let d = (r1 - r2) / reduced;
    let x = (r1 - c1 * d) / lambda;
    Ok(ValuePair::new(x, x - d))
}

/// Minimizer actions restricted to `{0, 1}` in each equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BetaCase {
    ZeroZero,
    ZeroOne,
    OneZero,
    OneOne,
}

impl BetaCase {
    pub const ALL: [BetaCase; 4] = [
        BetaCase::ZeroZero,
        BetaCase::ZeroOne,
        BetaCase::OneZero,
        BetaCase::OneOne,
    ];

    pub fn from_betas(beta1: f64, beta2: f64) -> Result<Self> {
        match (bit(beta1)?, bit(beta2)?) {
            (false, false) => Ok(BetaCase::ZeroZero),
            (false, true) => Ok(BetaCase::ZeroOne),
            (true, false) => Ok(BetaCase::OneZero),
            (true, true) => Ok(BetaCase::OneOne),
        }
    }

    pub fn betas(self) -> (ActionValue, ActionValue) {
        let v = |b: bool| {
            if b {
                ActionValue::ONE
            } else {
                ActionValue::ZERO
            }
        };
        match self {
            BetaCase::ZeroZero => (v(false), v(false)),
            BetaCase::ZeroOne => (v(false), v(true)),
            BetaCase::OneZero => (v(true), v(false)),
            BetaCase::OneOne => (v(true), v(true)),
        }
    }

    /// The case whose `(β2, β1)` is this case's `(β1, β2)`.
    pub fn swapped(self) -> Self {
        match self {
            BetaCase::ZeroOne => BetaCase::OneZero,
            BetaCase::OneZero => BetaCase::ZeroOne,
            c => c,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            BetaCase::ZeroZero => "(0,0)",
            BetaCase::ZeroOne => "(0,1)",
            BetaCase::OneZero => "(1,0)",
            BetaCase::OneOne => "(1,1)",
        }
    }
}

fn bit(beta: f64) -> Result<bool> {
    if beta == 0.0 {
        Ok(false)
    } else if beta == 1.0 {
        Ok(true)
    } else {
        Err(Error::usage(format!(
            "closed forms need β ∈ {{0, 1}}, got {beta}"
        )))
    }
}

/// Rational closed forms of the policy value for `g = 0` and `β_i ∈ {0, 1}`.
pub fn closed_form_policy_value(
    lambda: f64,
    alpha1: ActionValue,
    alpha2: ActionValue,
    case: BetaCase,
) -> Result<ValuePair> {
    check_discount(lambda)?;
    let (l, a1, a2) = (lambda, alpha1.get(), alpha2.get());
    let (x, y) = match case {
        BetaCase::ZeroZero => {
            let den = l * (a1 + a2 + l);
            (
                -2.0 * (a1 * l + a1 - a2 - l) / den,
                2.0 * (a2 * l + a2 - a1 - l) / den,
            )
        }
        BetaCase::ZeroOne => {
            let den = l * (a1 - a2 + l + 1.0);
            (
                (a1 * a2 - 2.0 * a1 * l - 2.0 * a1 - 2.0 * a2 + 2.0 * l + 2.0) / den,
                (a1 * a2 - 2.0 * a1 - a2 * l - 2.0 * a2 + 2.0) / den,
            )
        }
        BetaCase::OneZero => {
            let den = l * (-a1 + a2 + l + 1.0);
            (
                -(a1 * a2 - a1 * l - 2.0 * a1 - 2.0 * a2 + 2.0) / den,
                -(a1 * a2 - 2.0 * a1 - 2.0 * a2 * l - 2.0 * a2 + 2.0 * l + 2.0) / den,
            )
        }
        BetaCase::OneOne => {
            let den = l * (-a1 - a2 + l + 2.0);
            ((a1 * l + a1 - a2) / den, -(-a1 + a2 * l + a2) / den)
        }
    };
    Ok(ValuePair::new(x, y))
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::game::ActionSet;

    fn av(x: f64) -> ActionValue {
        ActionValue::new(x).unwrap()
    }

    fn homogeneous() -> SystemInstance {
        let s = ActionSet::singleton(ActionValue::ZERO);
        SystemInstance::new(s.clone(), s.clone(), s.clone(), s, [0.0, 0.0])
    }

    #[test]
    fn all_ones_policy_by_hand() {
        let p = PolicyQuadruple::new(
            ActionValue::ONE,
            ActionValue::ONE,
            ActionValue::ONE,
            ActionValue::ONE,
        );
        let u = policy_value(1.0, &p, &homogeneous()).unwrap();
        assert_eq!(u, ValuePair::new(1.0, -1.0));
        let u = closed_form_policy_value(1.0, ActionValue::ONE, ActionValue::ONE, BetaCase::OneOne)
            .unwrap();
        assert_eq!(u, ValuePair::new(1.0, -1.0));
    }

    #[test]
    fn reproduces_linear_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let p = PolicyQuadruple::new(
                av(rng.random()),
                av(rng.random()),
                av(rng.random()),
                av(rng.random()),
            );
            let g = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let inst = homogeneous().with_g(g);
            let lambda = 10f64.powf(rng.random_range(-3.0..0.0));
            let u = policy_value(lambda, &p, &inst).unwrap();
            let c = coupling_matrix(p.alpha1, p.beta1);
            let e1 = lambda * u.u1 + c.c11 * u.u1 + c.c12 * u.u2
                - payoff(Equation::First, p.alpha1, p.beta1)
                - g[0];
            let c = coupling_matrix(p.alpha2, p.beta2);
            let e2 = lambda * u.u2 + c.c21 * u.u1 + c.c22 * u.u2
                - payoff(Equation::Second, p.alpha2, p.beta2)
                - g[1];
            let scale = u.max_abs().max(1.0);
            assert!(
                e1.abs() < 1e-13 * scale && e2.abs() < 1e-13 * scale,
                "{e1} {e2}"
            );
        }
    }

    #[test]
    fn zero_zero_display() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let (a1, a2): (f64, f64) = (rng.random(), rng.random());
            let l = rng.random_range(0.01..1.0);
            let p = PolicyQuadruple::new(av(a1), ActionValue::ZERO, av(a2), ActionValue::ZERO);
            let u = policy_value(l, &p, &homogeneous()).unwrap();
            let x = -2.0 * (a1 * l + a1 - a2 - l) / (l * (a1 + a2 + l));
            assert!((u.u1 - x).abs() <= 1e-11 * x.abs().max(1.0));
        }
    }

    #[test]
    fn beta_case_parsing() {
        assert_eq!(BetaCase::from_betas(1.0, 0.0).unwrap(), BetaCase::OneZero);
        assert!(matches!(
            BetaCase::from_betas(0.5, 0.0),
            Err(Error::Usage(_))
        ));
        for c in BetaCase::ALL {
            let (b1, b2) = c.betas();
            assert_eq!(BetaCase::from_betas(b1.get(), b2.get()).unwrap(), c);
            let (s1, s2) = c.swapped().betas();
            assert_eq!((s1, s2), (b2, b1));
        }
    }
}
