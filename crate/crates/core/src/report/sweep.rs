use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::num;
use crate::error::{Error, Result};
use crate::game::SystemInstance;
use crate::solver::{solve, Method, SolveConfig};

pub const SWEEP_HEADER: &str =
    "lambda,X,Y,residual1,residual2,alpha1,beta1,alpha2,beta2,solver,iterations";

/// Below this discount the automatic choice is policy enumeration, whose
/// cost does not grow as `λ → 0`.
pub const AUTO_ENUM_BELOW: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Log,
    Linear,
}

impl FromStr for Scale {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Scale::Log),
            "linear" => Ok(Scale::Linear),
            _ => Err(Error::usage(format!(
                "unknown scale {s:?} (expected log or linear)"
            ))),
        }
    }
}

pub fn auto_method(lambda: f64) -> Method {
    if lambda < AUTO_ENUM_BELOW {
        Method::PolicyEnum
    } else {
        Method::ValueIteration
    }
}

/// `points` discounts from `max` down to `min`, endpoints included.
pub fn discount_grid(min: f64, max: f64, points: usize, scale: Scale) -> Result<Vec<f64>> {
    if !(min > 0.0 && min < max && max.is_finite()) {
        return Err(Error::usage(format!(
            "need 0 < lambda-min < lambda-max, got {min} and {max}"
        )));
    }
    if points < 2 {
        return Err(Error::usage("a sweep needs at least 2 points"));
    }
    let last = (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points)
        .map(|i| {
            let t = i as f64 / last;
            match scale {
                Scale::Log => (max.ln() + t * (min.ln() - max.ln())).exp(),
                Scale::Linear => max + t * (min - max),
            }
        })
        .collect();
    grid[0] = max;
    grid[points - 1] = min;
    Ok(grid)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub x: f64,
    pub y: f64,
    pub residual1: f64,
    pub residual2: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
    pub solver: Method,
    pub iterations: u64,
}

/// Solves at every grid point, in parallel, rows in grid order. With
/// `method = None` each point uses [`auto_method`].
pub fn sweep(
    instance: &SystemInstance,
    grid: &[f64],
    method: Option<Method>,
) -> Result<Vec<SweepRow>> {
    grid.par_iter()
        .map(|&lambda| {
            let m = method.unwrap_or_else(|| auto_method(lambda));
            let r = solve(instance, lambda, &SolveConfig::new(m))?;
            Ok(SweepRow {
                lambda,
                x: r.u.u1,
                y: r.u.u2,
                residual1: r.residual1,
                residual2: r.residual2,
                alpha1: r.policy.alpha1.get(),
                beta1: r.policy.beta1.get(),
                alpha2: r.policy.alpha2.get(),
                beta2: r.policy.beta2.get(),
                solver: m,
                iterations: r.iterations,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            num(r.lambda),
            num(r.x),
            num(r.y),
            num(r.residual1),
            num(r.residual2),
            num(r.alpha1),
            num(r.beta1),
            num(r.alpha2),
            num(r.beta2),
            r.solver,
            r.iterations
        )?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::build_instance;

    #[test]
    fn grids() {
        let g = discount_grid(1e-6, 1.0, 7, Scale::Log).unwrap();
        assert_eq!(g.len(), 7);
        assert_eq!((g[0], g[6]), (1.0, 1e-6));
        assert!(g.windows(2).all(|w| w[0] > w[1]));
        assert!((g[3] - 1e-3).abs() < 1e-15);
        let g = discount_grid(0.25, 1.0, 4, Scale::Linear).unwrap();
        assert_eq!(g, vec![1.0, 0.75, 0.5, 0.25]);
        assert!(discount_grid(0.0, 1.0, 4, Scale::Log).is_err());
        assert!(discount_grid(1.0, 0.5, 4, Scale::Log).is_err());
        assert!(discount_grid(0.1, 0.5, 1, Scale::Log).is_err());
        assert!("cubic".parse::<Scale>().is_err());
    }

    #[test]
    fn csv_shape() {
        let inst = build_instance(6).unwrap();
        let rows = sweep(
            &inst,
            &discount_grid(0.1, 1.0, 2, Scale::Linear).unwrap(),
            None,
        )
        .unwrap();
        let mut buf = Vec::new();
        write_sweep_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], SWEEP_HEADER);
        assert!(text.ends_with('\n'));
        for l in &lines[1..] {
            assert_eq!(l.split(',').count(), 11);
            assert!(l.contains(",value-iteration,"));
        }
    }
}
