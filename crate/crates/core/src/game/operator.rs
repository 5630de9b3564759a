use super::{
    coupling_matrix, payoff, running_cost, ActionValue, Equation, SystemInstance, ValuePair,
};

/// Value of `A_i(u) = max_{α∈A_i} min_{β∈B_i} b_i(α, β, u)` with the
/// maximizing `α` and the inner minimizer `β` at that `α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellmanValue {
    pub value: f64,
    pub alpha: ActionValue,
    pub beta: ActionValue,
}

/// Ties go to the smallest action in both the outer max and the inner min.
pub fn bellman(eq: Equation, u: ValuePair, instance: &SystemInstance) -> BellmanValue {
    let betas = instance.minimizer_set(eq);
    let mut best: Option<BellmanValue> = None;
    for alpha in instance.maximizer_set(eq).iter() {
        let mut inner: Option<(f64, ActionValue)> = None;
        for beta in betas.iter() {
            let v = running_cost(eq, alpha, beta, u);
            if inner.is_none_or(|(m, _)| v < m) {
                inner = Some((v, beta));
            }
        }
        let (value, beta) = inner.expect("action sets are nonempty");
        if best.is_none_or(|b| value > b.value) {
            best = Some(BellmanValue { value, alpha, beta });
        }
    }
    best.expect("action sets are nonempty")
}

/// `u ↦ (A_1(u), A_2(u))`.
pub fn operator(u: ValuePair, instance: &SystemInstance) -> ValuePair {
    ValuePair::new(
        bellman(Equation::First, u, instance).value,
        bellman(Equation::Second, u, instance).value,
    )
}

/// Max-norm Lipschitz constant of the operator:
/// `max_i max_{(α,β)∈A_i×B_i} |c_i1| + |c_i2|`.
pub fn lipschitz_bound(instance: &SystemInstance) -> f64 {
    Equation::BOTH
        .iter()
        .flat_map(|&eq| {
            instance
                .action_pairs(eq)
                .map(move |(a, b)| coupling_matrix(a, b).row_abs_sum(eq))
        })
        .fold(0.0, f64::max)
}

/// `‖L_i‖_∞` over the instance's action grid `A_i × B_i`.
pub fn payoff_sup_norm(eq: Equation, instance: &SystemInstance) -> f64 {
    instance
        .action_pairs(eq)
        .map(|(a, b)| payoff(eq, a, b).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::ActionSet;

    fn av(x: f64) -> ActionValue {
        ActionValue::new(x).unwrap()
    }

    fn singleton(a: f64, b: f64) -> SystemInstance {
        let a = ActionSet::singleton(av(a));
        let b = ActionSet::singleton(av(b));
        SystemInstance::new(a.clone(), a, b.clone(), b, [0.0, 0.0])
    }

    #[test]
    fn singleton_sets_reduce_to_running_cost() {
        let inst = singleton(0.3, 0.8);
        let u = ValuePair::new(1.7, -0.4);
        for eq in Equation::BOTH {
            let bv = bellman(eq, u, &inst);
            assert_eq!(bv.value, running_cost(eq, av(0.3), av(0.8), u));
            assert_eq!((bv.alpha, bv.beta), (av(0.3), av(0.8)));
        }
    }

    #[test]
    fn ties_pick_smallest_action() {
        // With B = {1}: b_1(α, 1, u) = (1−α)(u1−u2) − α, constant in α when u1 − u2 = −1.
        let a = ActionSet::new(vec![0.1, 0.4, 0.9]).unwrap();
        let b = ActionSet::singleton(ActionValue::ONE);
        let inst = SystemInstance::new(a.clone(), a, b.clone(), b, [0.0, 0.0]);
        let bv = bellman(Equation::First, ValuePair::new(0.0, 1.0), &inst);
        assert_eq!(bv.alpha, av(0.1));
        assert!((bv.value + 1.0).abs() < 1e-15);

        // With α = 0: b_1(0, 0, u) = −2 and b_1(0, 1, u) = u1 − u2, tied at u1 − u2 = −2.
        let a = ActionSet::singleton(ActionValue::ZERO);
        let b = ActionSet::new(vec![0.0, 1.0]).unwrap();
        let inst = SystemInstance::new(a.clone(), a, b.clone(), b, [0.0, 0.0]);
        let bv = bellman(Equation::First, ValuePair::new(0.0, 2.0), &inst);
        assert_eq!((bv.value, bv.beta), (-2.0, ActionValue::ZERO));
    }

    #[test]
    fn lipschitz_of_degenerate_sets() {
        assert_eq!(lipschitz_bound(&singleton(0.0, 0.0)), 0.0);
        assert_eq!(lipschitz_bound(&singleton(1.0, 1.0)), 0.0);
        assert_eq!(lipschitz_bound(&singleton(0.5, 0.5)), 1.0);
    }
}
