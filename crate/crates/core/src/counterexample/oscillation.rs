use rayon::prelude::*;
use serde::Serialize;

use super::{build_instance, discount, policy_limit_value, x_n_y_n, SequenceKind, SequenceSpec};
use crate::error::{Error, Result};
use crate::game::PolicyQuadruple;
use crate::solver::{solve, BetaCase, SolveConfig};
use crate::ValuePair;

/// Indices at the end of a run used for the limsup/liminf estimates.
pub const TAIL: u32 = 3;

pub fn tail_len(n_min: u32, n_max: u32) -> u32 {
    TAIL.min(n_max + 1 - n_min)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OscillationRow {
    pub kind: SequenceKind,
    pub n: u32,
    pub discount: f64,
    pub u: ValuePair,
    pub residual1: f64,
    pub residual2: f64,
    pub policy: PolicyQuadruple,
    pub iterations: u64,
    /// Lambda rows: the largest probe-policy value over the four cases, an
    /// upper bound for the solution. Mu rows: `(x_n, y_n)`, a lower bound.
    pub bound: ValuePair,
}

impl Serialize for SequenceKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OscillationReport {
    pub k_max: u32,
    pub lambda_rows: Vec<OscillationRow>,
    pub mu_rows: Vec<OscillationRow>,
    /// Maximum of `(X, Y)` over the lambda tail.
    pub limsup_lambda: ValuePair,
    /// Minimum of `(X, Y)` over the mu tail.
    pub liminf_mu: ValuePair,
    /// `liminf_mu − limsup_lambda`, per component.
    pub gap: ValuePair,
}

fn probe_bound(spec: SequenceSpec, k_max: u32) -> Result<ValuePair> {
    match spec.kind {
        SequenceKind::Lambda => {
            let mut b = ValuePair::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
            for case in BetaCase::ALL {
                let v = policy_limit_value(spec, case)?;
                b = ValuePair::new(b.u1.max(v.u1), b.u2.max(v.u2));
            }
            Ok(b)
        }
        SequenceKind::Mu => x_n_y_n(spec.n, k_max).map(ValuePair::from),
    }
}

/// Solves the truncated instance at every sequence point `n_min..=n_max`,
/// in parallel, returning rows ordered by `n`.
pub fn solve_sequence(
    kind: SequenceKind,
    n_min: u32,
    n_max: u32,
    k_max: u32,
    config: &SolveConfig,
) -> Result<Vec<OscillationRow>> {
    if n_min < 1 || n_max < n_min {
        return Err(Error::usage(format!(
            "need 1 <= n-min <= n-max, got {n_min}..{n_max}"
        )));
    }
    let need = kind.required_truncation(n_max);
    if k_max < need {
        return Err(Error::usage(format!(
            "{kind} sequence up to n = {n_max} needs K >= {need}, got K = {k_max}"
        )));
    }
    let instance = build_instance(k_max)?;
    (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let spec = SequenceSpec::new(kind, n)?;
            let lambda = discount(spec);
            let r = solve(&instance, lambda, config)?;
            Ok(OscillationRow {
                kind,
                n,
                discount: lambda,
                u: r.u,
                residual1: r.residual1,
                residual2: r.residual2,
                policy: r.policy,
                iterations: r.iterations,
                bound: probe_bound(spec, k_max)?,
            })
        })
        .collect()
}

fn tail(rows: &[OscillationRow], len: u32) -> &[OscillationRow] {
    &rows[rows.len() - len as usize..]
}

pub fn tail_max(rows: &[OscillationRow], len: u32) -> ValuePair {
    tail(rows, len).iter().fold(
        ValuePair::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        |m, r| ValuePair::new(m.u1.max(r.u.u1), m.u2.max(r.u.u2)),
    )
}

pub fn tail_min(rows: &[OscillationRow], len: u32) -> ValuePair {
    tail(rows, len)
        .iter()
        .fold(ValuePair::new(f64::INFINITY, f64::INFINITY), |m, r| {
            ValuePair::new(m.u1.min(r.u.u1), m.u2.min(r.u.u2))
        })
}

/// Both sequences over `n_min..=n_max` with tail estimates of the upper
/// limit along `λ_n` and the lower limit along `μ_n`.
pub fn oscillation_report(
    n_min: u32,
    n_max: u32,
    k_max: u32,
    config: &SolveConfig,
) -> Result<OscillationReport> {
    if k_max < n_max + 2 {
        return Err(Error::usage(format!(
            "oscillation report up to n = {n_max} needs K >= {}, got K = {k_max}",
            n_max + 2
        )));
    }
    let lambda_rows = solve_sequence(SequenceKind::Lambda, n_min, n_max, k_max, config)?;
    let mu_rows = solve_sequence(SequenceKind::Mu, n_min, n_max, k_max, config)?;
    let len = tail_len(n_min, n_max);
    let limsup_lambda = tail_max(&lambda_rows, len);
    let liminf_mu = tail_min(&mu_rows, len);
    Ok(OscillationReport {
        k_max,
        gap: ValuePair::new(
            liminf_mu.u1 - limsup_lambda.u1,
            liminf_mu.u2 - limsup_lambda.u2,
        ),
        lambda_rows,
        mu_rows,
        limsup_lambda,
        liminf_mu,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::solver::Method;

    #[test]
    fn solutions_respect_probe_bounds() {
        let cfg = SolveConfig::new(Method::PolicyEnum);
        let r = oscillation_report(2, 6, 8, &cfg).unwrap();
        assert_eq!(r.lambda_rows.len(), 5);
        assert_eq!(
            r.lambda_rows.iter().map(|r| r.n).collect::<Vec<_>>(),
            vec![2, 3, 4, 5, 6]
        );
        for row in &r.lambda_rows {
            assert!(
                row.u.u1 <= row.bound.u1 + 1e-9 && row.u.u2 <= row.bound.u2 + 1e-9,
                "{row:?}"
            );
        }
        for row in &r.mu_rows {
            assert!(
                row.u.u1 >= row.bound.u1 - 1e-9 && row.u.u2 >= row.bound.u2 - 1e-9,
                "{row:?}"
            );
        }
        assert!(r.gap.u1 > 0.0);
        assert!(r.limsup_lambda.u1 < FRAC_1_SQRT_2 + 0.02);
    }

    #[test]
    fn truncation_is_checked() {
        let cfg = SolveConfig::new(Method::PolicyEnum);
        assert!(matches!(
            oscillation_report(2, 8, 9, &cfg),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            solve_sequence(SequenceKind::Mu, 2, 8, 8, &cfg),
            Err(Error::Usage(_))
        ));
        assert!(solve_sequence(SequenceKind::Lambda, 2, 8, 8, &cfg).is_ok());
        assert!(matches!(
            solve_sequence(SequenceKind::Mu, 3, 2, 8, &cfg),
            Err(Error::Usage(_))
        ));
        assert_eq!(tail_len(2, 8), 3);
        assert_eq!(tail_len(5, 6), 2);
    }
}
