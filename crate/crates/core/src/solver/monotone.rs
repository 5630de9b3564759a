use super::{a_priori_bound, check_discount, residual_unchecked, Method, SolveConfig, SolveReport};
use crate::error::{Error, Result};
use crate::game::{lipschitz_bound, operator, SystemInstance, ValuePair};

/// Inner iterations allowed per outer step before giving up.
const INNER_BUDGET: u64 = 10_000_000;

/// Outer iterates of [`monotone_solve_traced`] and the constants they used.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneTrace {
    /// `R` with `−(R, R)` the starting subsolution.
    pub bound: f64,
    /// Lipschitz constant `M` of the operator.
    pub lipschitz: f64,
    /// `u^(1) = −(R, R)`, `u^(2)`, … up to the returned solution.
    pub iterates: Vec<ValuePair>,
    pub inner_iterations: u64,
}

pub fn monotone_solve(
    instance: &SystemInstance,
    lambda: f64,
    config: &SolveConfig,
) -> Result<SolveReport> {
    monotone_solve_traced(instance, lambda, config).map(|(report, _)| report)
}

/// Constructive existence scheme: from `u^(1) = −(R, R)`, each outer step
/// solves `(λ+M)u + A(u) = g + M·u^(j−1)` by a Banach iteration. The outer
/// iterates increase componentwise and stay in `[−R, R]²`.
///
/// The inner contraction is either `u ↦ (f − A(u))/(λ+M)` (factor `M/(λ+M)`)
/// or `u ↦ (f + u − A(u))/(1+λ+M)` (factor `1/(1+λ+M)`), whichever is
/// smaller. Both have the same fixed point.
pub fn monotone_solve_traced(
    instance: &SystemInstance,
    lambda: f64,
    config: &SolveConfig,
) -> Result<(SolveReport, MonotoneTrace)> {
    check_discount(lambda)?;
    config.validate()?;
    let tol = config.tolerance_for(lambda);
    let inner_tol = tol / 10.0;
    let bound = a_priori_bound(instance, lambda)?;
    let lip = lipschitz_bound(instance);
    let g = instance.g();
    let shift = lambda + lip;
    let plain = lip / shift <= 1.0 / (1.0 + shift);

    let mut u = ValuePair::new(-bound, -bound);
    let mut trace = MonotoneTrace {
        bound,
        lipschitz: lip,
        iterates: vec![u],
        inner_iterations: 0,
    };
    let mut outer = 0;
    loop {
        let (r1, r2) = residual_unchecked(u, instance, lambda);
        if r1.abs().max(r2.abs()) <= tol {
            let report = SolveReport::at(u, instance, lambda, Method::Monotone, outer);
            return Ok((report, trace));
        }
        if outer >= config.max_iterations {
            let report = SolveReport::at(u, instance, lambda, Method::Monotone, outer);
            return Err(Error::NotConverged(Box::new(report)));
        }

        let f = [g[0] + lip * u.u1, g[1] + lip * u.u2];
        let mut w = u;
        let mut inner = 0;
        loop {
            let a = operator(w, instance);
            let e1 = shift * w.u1 + a.u1 - f[0];
            let e2 = shift * w.u2 + a.u2 - f[1];
            if e1.abs().max(e2.abs()) <= inner_tol {
                break;
            }
            let next = if plain {
                ValuePair::new((f[0] - a.u1) / shift, (f[1] - a.u2) / shift)
            } else {
                let s = 1.0 + shift;
                ValuePair::new((f[0] + w.u1 - a.u1) / s, (f[1] + w.u2 - a.u2) / s)
            };
            inner += 1;
            // Rounding floor: |f| can be ~M·R, far above the absolute inner tolerance.
            let floor = 4.0 * f64::EPSILON * w.max_abs().max(f[0].abs()).max(f[1].abs()).max(1.0);
            let step = next.dist(&w);
            w = next;
            if step <= floor {
                break;
            }
            if inner >= INNER_BUDGET || !w.is_finite() {
                let report = SolveReport::at(w, instance, lambda, Method::Monotone, outer);
                return Err(Error::NotConverged(Box::new(report)));
            }
        }
        trace.inner_iterations += inner;

        let slack = 10.0 * inner_tol.max(4.0 * f64::EPSILON * u.max_abs().max(1.0));
        if w.u1 < u.u1 - slack || w.u2 < u.u2 - slack {
            return Err(Error::Internal(format!(
                "outer iterate decreased at step {}: ({}, {}) -> ({}, {})",
                outer + 1,
                u.u1,
                u.u2,
                w.u1,
                w.u2
            )));
        }
        u = w;
        trace.iterates.push(u);
        outer += 1;
    }
}
