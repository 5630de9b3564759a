use super::{check_discount, Method, SolveConfig, SolveReport};
use crate::error::{Error, Result};
use crate::game::{operator, SystemInstance, ValuePair};

/// Value iteration from the origin.
pub fn value_iteration(
    instance: &SystemInstance,
    lambda: f64,
    config: &SolveConfig,
) -> Result<SolveReport> {
    value_iteration_from(instance, lambda, config, ValuePair::default())
}

/// Iterates `u ← (g + u − A(u))/(1+λ)` until the residual is within tolerance.
///
/// Per frozen policy `u_i − b_i(α, β, u)` has nonnegative coefficients summing
/// to one, so the map contracts with factor `1/(1+λ)` in the max-norm.
pub fn value_iteration_from(
    instance: &SystemInstance,
    lambda: f64,
    config: &SolveConfig,
    start: ValuePair,
) -> Result<SolveReport> {
    check_discount(lambda)?;
    config.validate()?;
    let tol = config.tolerance_for(lambda);
    let g = instance.g();
    let scale = 1.0 + lambda;
    let mut u = start;
    let mut iterations = 0;
    loop {
        let a = operator(u, instance);
        let (r1, r2) = (lambda * u.u1 + a.u1 - g[0], lambda * u.u2 + a.u2 - g[1]);
        if r1.abs().max(r2.abs()) <= tol {
            return Ok(SolveReport::at(
                u,
                instance,
                lambda,
                Method::ValueIteration,
                iterations,
            ));
        }
        if iterations >= config.max_iterations || !u.is_finite() {
            let report = SolveReport::at(u, instance, lambda, Method::ValueIteration, iterations);
            return Err(Error::NotConverged(Box::new(report)));
        }
        u = ValuePair::new((g[0] + u.u1 - a.u1) / scale, (g[1] + u.u2 - a.u2) / scale);
        iterations += 1;
    }
}
