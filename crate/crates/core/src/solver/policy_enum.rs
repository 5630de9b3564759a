use super::{
    check_discount, linear::policy_value, residual_unchecked, Method, SolveConfig, SolveReport,
};
use crate::error::{Error, Result};
use crate::game::{Equation, PolicyQuadruple, SystemInstance};

/// Largest number of policy quadruples enumerated.
pub const MAX_POLICY_COUNT: u64 = 10_000_000;

/// Solves every frozen-policy linear system and keeps the candidate with the
/// smallest nonlinear residual.
///
/// At the unique solution the greedy actions freeze a linear system that the
/// solution satisfies, so some candidate reproduces it exactly; the cost does
/// not depend on `λ`.
pub fn policy_enum_solve(
    instance: &SystemInstance,
    lambda: f64,
    config: &SolveConfig,
) -> Result<SolveReport> {
    check_discount(lambda)?;
    config.validate()?;
    let count = instance.policy_count();
    let cap = config.max_iterations.min(MAX_POLICY_COUNT);
    if count > cap as u128 {
        return Err(Error::usage(format!(
            "{count} policy candidates exceed the limit of {cap}"
        )));
    }
    let tol = config.tolerance_for(lambda);

    let mut best: Option<(f64, SolveReport)> = None;
    let mut evaluated = 0;
    for (alpha1, beta1) in instance.action_pairs(Equation::First) {
        for (alpha2, beta2) in instance.action_pairs(Equation::Second) {
            let policy = PolicyQuadruple::new(alpha1, beta1, alpha2, beta2);
            let u = policy_value(lambda, &policy, instance)?;
            evaluated += 1;
            let (r1, r2) = residual_unchecked(u, instance, lambda);
            let r = r1.abs().max(r2.abs());
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                let report = SolveReport {
                    u,
                    residual1: r1,
                    residual2: r2,
                    iterations: 0,
                    method: Method::PolicyEnum,
                    policy,
                    discount: lambda,
                };
                best = Some((r, report));
            }
        }
    }
    let (r, mut report) = best.expect("policy sets are nonempty");
    report.iterations = evaluated;
    if r <= tol {
        Ok(report)
    } else {
        Err(Error::Inconsistent(Box::new(report)))
    }
}
