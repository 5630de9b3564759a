//! Reference computations written out from the definitions, independent of
//! the library's own operator and linear solves.
#![allow(dead_code)]

use shapley_discount::{Equation, SystemInstance, ValuePair};

pub const INV_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// `1 − αβ − (1−α)(1−β)`.
pub fn d(a: f64, b: f64) -> f64 {
    1.0 - a * b - (1.0 - a) * (1.0 - b)
}

/// `αβ + 2(1−α)(1−β)`.
pub fn l1(a: f64, b: f64) -> f64 {
    a * b + 2.0 * (1.0 - a) * (1.0 - b)
}

fn b_value(eq: usize, a: f64, b: f64, u: ValuePair) -> f64 {
    let dd = d(a, b);
    if eq == 0 {
        dd * u.u1 - dd * u.u2 - l1(a, b)
    } else {
        -dd * u.u1 + dd * u.u2 + l1(a, b)
    }
}

pub fn oracle_operator(inst: &SystemInstance, u: ValuePair) -> [f64; 2] {
    let mut out = [0.0; 2];
    for (eq, slot) in out.iter_mut().enumerate() {
        let e = if eq == 0 {
            Equation::First
        } else {
            Equation::Second
        };
        let (aset, bset) = (inst.maximizer_set(e), inst.minimizer_set(e));
        *slot = aset
            .iter()
            .map(|a| {
                bset.iter()
                    .map(|b| b_value(eq, a.get(), b.get(), u))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::NEG_INFINITY, f64::max);
    }
    out
}

pub fn oracle_residual(inst: &SystemInstance, u: ValuePair, lambda: f64) -> [f64; 2] {
    let a = oracle_operator(inst, u);
    let g = inst.g();
    [lambda * u.u1 + a[0] - g[0], lambda * u.u2 + a[1] - g[1]]
}

/// Cramer's rule on the frozen 2×2 system.
pub fn oracle_policy_value(
    lambda: f64,
    a1: f64,
    b1: f64,
    a2: f64,
    b2: f64,
    g: [f64; 2],
) -> (f64, f64) {
    let (d1, d2) = (d(a1, b1), d(a2, b2));
    let (m11, m12, m21, m22) = (lambda + d1, -d1, -d2, lambda + d2);
    let (r1, r2) = (l1(a1, b1) + g[0], -l1(a2, b2) + g[1]);
    let det = m11 * m22 - m12 * m21;
    ((r1 * m22 - m12 * r2) / det, (m11 * r2 - m21 * r1) / det)
}

/// `n` log-spaced points from `hi` down to `lo`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (hi.ln() + (lo.ln() - hi.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

pub fn theta_lambda() -> f64 {
    1.0 / (0.75 - std::f64::consts::SQRT_2 / 2.0)
}

pub fn theta_mu() -> f64 {
    1.0 / (0.6 - 2.0 * std::f64::consts::SQRT_2 / 5.0)
}

pub fn lambda_n(n: u32) -> f64 {
    theta_lambda() * 2f64.powi(-2 * n as i32)
}

pub fn mu_n(n: u32) -> f64 {
    theta_mu() * 2f64.powi(-2 * n as i32 - 1)
}
