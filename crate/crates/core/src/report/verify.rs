use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counterexample::{
    algebraic_identities, build_instance, expected_signs, gap_check_truncated, limit_constant,
    oscillation_report, partials_x, partials_y, policy_limit_value, probe_alpha, solve_sequence,
    truncated_action_set, Component, Probe, SequenceKind, SequenceSpec, Sign,
};
use crate::game::{
    coupling_matrix, operator, random_instance, ActionValue, CouplingMatrix, PolicyQuadruple,
    SystemInstance,
};
use crate::solver::{
    a_priori_bound, check_subsolution, check_supersolution, closed_form_policy_value,
    monotone_solve_traced, policy_value, solve, BetaCase, Method, SolveConfig,
};
use crate::ValuePair;

type CheckResult = std::result::Result<String, String>;

pub struct VerifyOptions {
    pub seed: u64,
    /// Coupling under test; swapping it lets the suite be checked against a
    /// deliberately broken build.
    pub coupling: fn(ActionValue, ActionValue) -> CouplingMatrix,
}

impl VerifyOptions {
    pub fn new(seed: u64) -> Self {
        VerifyOptions {
            seed,
            coupling: coupling_matrix,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Summary on success, witnessing inputs on failure.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub seed: u64,
    pub outcomes: Vec<CheckOutcome>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.outcomes.iter().filter(|o| !o.passed)
    }

    pub fn render(&self) -> String {
        let width = self
            .outcomes
            .iter()
            .map(|o| o.name.len())
            .max()
            .unwrap_or(0);
        let mut s = format!("seed {}\n", self.seed);
        for o in &self.outcomes {
            let tag = if o.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "{tag}  {:<width$}  {}", o.name, o.detail);
        }
        let passed = self.outcomes.iter().filter(|o| o.passed).count();
        let _ = writeln!(s, "{passed}/{} checks passed", self.outcomes.len());
        s
    }
}

struct Check {
    name: &'static str,
    run: fn(&VerifyOptions, &mut ChaCha8Rng) -> CheckResult,
}

const CHECKS: &[Check] = &[
    Check {
        name: "coupling-structure",
        run: coupling_structure,
    },
    Check {
        name: "stationary-point",
        run: stationary_point,
    },
    Check {
        name: "a-priori-bounds",
        run: a_priori_bounds,
    },
    Check {
        name: "solution-bounds",
        run: solution_bounds,
    },
    Check {
        name: "probe-membership",
        run: probe_membership,
    },
    Check {
        name: "lambda-upper-bound",
        run: lambda_upper_bound,
    },
    Check {
        name: "mu-lower-bound",
        run: mu_lower_bound,
    },
    Check {
        name: "oscillation-gap",
        run: oscillation_gap,
    },
    Check {
        name: "policy-limits",
        run: policy_limits,
    },
    Check {
        name: "solver-agreement",
        run: solver_agreement,
    },
    Check {
        name: "comparison-principle",
        run: comparison_principle,
    },
    Check {
        name: "closed-form-fidelity",
        run: closed_form_fidelity,
    },
    Check {
        name: "derivative-signs",
        run: derivative_signs,
    },
    Check {
        name: "algebraic-identities",
        run: identities,
    },
    Check {
        name: "monotone-iterates",
        run: monotone_iterates,
    },
];

/// Runs every check with its own generator seeded from `seed` and the
/// check's position, so results do not depend on which checks ran before.
pub fn run_checks(options: &VerifyOptions) -> VerifySummary {
    let outcomes = CHECKS
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            rng.set_stream(i as u64);
            let r = (c.run)(options, &mut rng);
            CheckOutcome {
                name: c.name,
                passed: r.is_ok(),
                detail: r.unwrap_or_else(|e| e),
            }
        })
        .collect();
    VerifySummary {
        seed: options.seed,
        outcomes,
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn av(x: f64) -> ActionValue {
    ActionValue::new(x).expect("sampled in [0, 1]")
}

fn coupling_structure(opts: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    let steps = 50;
    for i in 0..=steps {
        for j in 0..=steps {
            let (a, b) = (i as f64 / steps as f64, j as f64 / steps as f64);
            let c = (opts.coupling)(av(a), av(b));
            let d = 1.0 - a * b - (1.0 - a) * (1.0 - b);
            let ok = (c.c11 - d).abs() <= 1e-15
                && (c.c22 - d).abs() <= 1e-15
                && c.c12 <= 0.0
                && c.c21 <= 0.0
                && (c.c11 + c.c12).abs() <= 1e-15
                && (c.c21 + c.c22).abs() <= 1e-15
                && (0.0..=1.0).contains(&c.c11);
            if !ok {
                return Err(format!("alpha = {a}, beta = {b}: got {c:?}, expected diagonal {d} and rows summing to 0"));
            }
        }
    }
    Ok(format!(
        "{} (alpha, beta) grid points",
        (steps + 1) * (steps + 1)
    ))
}

fn stationary_point(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    let u = ValuePair::new(FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
    let mut worst: f64 = 0.0;
    for k in [1, 2, 5, 12, 25] {
        let a = operator(u, &build_instance(k).map_err(err)?);
        worst = worst.max(a.max_abs());
        if a.max_abs() > 1e-12 {
            return Err(format!("K = {k}: A(1/√2, −1/√2) = ({}, {})", a.u1, a.u2));
        }
    }
    Ok(format!("max |A_i| = {worst:e}"))
}

fn a_priori_bounds(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    for _ in 0..100 {
        let inst = random_instance(rng, 8);
        let lambda = 10f64.powf(rng.random_range(-3.0..=0.0));
        let r = a_priori_bound(&inst, lambda).map_err(err)?;
        let lo = check_subsolution(ValuePair::new(-r, -r), &inst, lambda).map_err(err)?;
        let hi = check_supersolution(ValuePair::new(r, r), &inst, lambda).map_err(err)?;
        if !(lo && hi) {
            return Err(format!(
                "lambda = {lambda}, R = {r}, instance {}",
                inst.to_json()
            ));
        }
    }
    Ok("±(R, R) sub/supersolutions on 100 random instances".into())
}

fn log_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| (hi.ln() + (lo.ln() - hi.ln()) * i as f64 / (n - 1) as f64).exp())
}

fn solution_bounds(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    let inst = build_instance(12).map_err(err)?;
    let cfg = SolveConfig::new(Method::PolicyEnum);
    for lambda in log_grid(1e-6, 1.0, 50) {
        let u = solve(&inst, lambda, &cfg).map_err(err)?.u;
        let ok = (-1e-9..=SQRT_2 + 1e-9).contains(&u.u1) && (-SQRT_2 - 1e-9..=1e-9).contains(&u.u2);
        if !ok {
            return Err(format!("lambda = {lambda}: (X, Y) = ({}, {})", u.u1, u.u2));
        }
    }
    Ok("0 <= X <= √2, −√2 <= Y <= 0 at 50 discounts in [1e-6, 1]".into())
}

fn probe_membership(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    let k = 12;
    let set = truncated_action_set(k).map_err(err)?;
    for n in 1..k {
        for kind in SequenceKind::BOTH {
            let spec = SequenceSpec::new(kind, n).map_err(err)?;
            let members = match probe_alpha(spec, k).map_err(err)? {
                Probe::Single(p) => set.contains(p),
                Probe::Pair { low, high } => set.contains(low) && set.contains(high),
            };
            if !members {
                return Err(format!("{kind} probe at n = {n} is not in A_{k}"));
            }
        }
        if !gap_check_truncated(n, k).map_err(err)? {
            return Err(format!("A_{k} meets the gap at n = {n}"));
        }
    }
    Ok(format!("probes in A_{k} and gaps empty for n < {k}"))
}

fn sequence_tail(kind: SequenceKind) -> Result<Vec<ValuePair>, String> {
    let rows =
        solve_sequence(kind, 6, 8, 12, &SolveConfig::new(Method::PolicyEnum)).map_err(err)?;
    Ok(rows.iter().map(|r| r.u).collect())
}

fn lambda_upper_bound(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    for (n, u) in (6..).zip(sequence_tail(SequenceKind::Lambda)?) {
        if u.u1 > FRAC_1_SQRT_2 + 0.02 || u.u2 > -FRAC_1_SQRT_2 + 0.02 {
            return Err(format!("n = {n}: (X, Y) = ({}, {})", u.u1, u.u2));
        }
    }
    Ok("X <= 1/√2 + 0.02, Y <= −1/√2 + 0.02 for n = 6..8".into())
}

fn mu_lower_bound(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    for (n, u) in (6..).zip(sequence_tail(SequenceKind::Mu)?) {
        if u.u1 < FRAC_1_SQRT_2 + 0.03 || u.u2 < -FRAC_1_SQRT_2 + 0.03 {
            return Err(format!("n = {n}: (X, Y) = ({}, {})", u.u1, u.u2));
        }
    }
    Ok("X >= 1/√2 + 0.03, Y >= −1/√2 + 0.03 for n = 6..8".into())
}

fn oscillation_gap(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    let r = oscillation_report(2, 8, 12, &SolveConfig::new(Method::PolicyEnum)).map_err(err)?;
    let gap = r
        .mu_rows
        .iter()
        .zip(&r.lambda_rows)
        .filter(|(m, _)| m.n >= 6)
        .map(|(m, l)| m.u.u1 - l.u.u1)
        .fold(f64::INFINITY, f64::min);
    if gap >= 0.03 {
        Ok(format!("min_n (X_mu − X_lambda) = {gap:.6} for n = 6..8"))
    } else {
        Err(format!(
            "gap {gap} < 0.03; tail estimates {:?} vs {:?}",
            r.liminf_mu, r.limsup_lambda
        ))
    }
}

fn policy_limits(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    let mut worst: f64 = 0.0;
    for kind in SequenceKind::BOTH {
        let spec = SequenceSpec::new(kind, 10).map_err(err)?;
        for case in BetaCase::ALL {
            let v = policy_limit_value(spec, case).map_err(err)?;
            for (c, x) in [(Component::X, v.u1), (Component::Y, v.u2)] {
                let e = (x - limit_constant(kind, case, c)).abs();
                worst = worst.max(e);
                if e > 5e-3 {
                    return Err(format!(
                        "{kind} {} {c:?}: value {x} at n = 10, error {e}",
                        case.label()
                    ));
                }
            }
        }
    }
    Ok(format!(
        "16 policy values at n = 10 within {worst:.2e} of their limits"
    ))
}

fn all_methods(inst: &SystemInstance, lambda: f64) -> Result<[ValuePair; 3], String> {
    let mut out = [ValuePair::default(); 3];
    for (slot, m) in out.iter_mut().zip(Method::ALL) {
        let cfg = SolveConfig::new(m).with_max_iterations(match m {
            Method::Monotone => 1_000_000,
            _ => SolveConfig::new(m).max_iterations,
        });
        *slot = solve(inst, lambda, &cfg)
            .map_err(|e| format!("{m} at lambda = {lambda}: {e}; instance {}", inst.to_json()))?
            .u;
    }
    Ok(out)
}

fn spread(v: &[ValuePair; 3]) -> f64 {
    v.iter()
        .flat_map(|a| v.iter().map(move |b| a.dist(b)))
        .fold(0.0, f64::max)
}

fn solver_agreement(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let ce = build_instance(12).map_err(err)?;
    let mut worst: f64 = 0.0;
    for lambda in [1.0, 0.1, 0.01] {
        let s = spread(&all_methods(&ce, lambda)?);
        worst = worst.max(s);
        if s > 1e-9 {
            return Err(format!(
                "counterexample K = 12, lambda = {lambda}: spread {s:e}"
            ));
        }
    }
    for _ in 0..20 {
        let inst = random_instance(rng, 8);
        let lambda = 10f64.powf(rng.random_range(-2.0..=0.0));
        let s = spread(&all_methods(&inst, lambda)?);
        worst = worst.max(s);
        if s > 1e-9 {
            return Err(format!(
                "lambda = {lambda}: spread {s:e}; instance {}",
                inst.to_json()
            ));
        }
    }
    Ok(format!(
        "3 solvers on 23 systems, max disagreement {worst:.1e}"
    ))
}

fn comparison_principle(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let (mut subs, mut supers) = (0, 0);
    for _ in 0..200 {
        let inst = random_instance(rng, 6);
        let lambda = 10f64.powf(rng.random_range(-2.0..=0.0));
        let u = solve(&inst, lambda, &SolveConfig::new(Method::PolicyEnum))
            .map_err(err)?
            .u;
        let v = ValuePair::new(
            u.u1 + rng.random_range(-1.0..=1.0),
            u.u2 + rng.random_range(-1.0..=1.0),
        );
        if check_subsolution(v, &inst, lambda).map_err(err)? {
            subs += 1;
            if v.u1 > u.u1 + 1e-9 || v.u2 > u.u2 + 1e-9 {
                return Err(format!(
                    "subsolution {v:?} above solution {u:?} at lambda = {lambda}"
                ));
            }
        }
        if check_supersolution(v, &inst, lambda).map_err(err)? {
            supers += 1;
            if v.u1 < u.u1 - 1e-9 || v.u2 < u.u2 - 1e-9 {
                return Err(format!(
                    "supersolution {v:?} below solution {u:?} at lambda = {lambda}"
                ));
            }
        }
    }
    Ok(format!(
        "{subs} subsolutions, {supers} supersolutions ordered against the solution"
    ))
}

fn closed_form_fidelity(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let homogeneous = build_instance(1).map_err(err)?;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let lambda = 10f64.powf(rng.random_range(-2.0..=0.0));
        let (a1, a2) = (av(rng.random()), av(rng.random()));
        let case = BetaCase::ALL[rng.random_range(0..4)];
        let (b1, b2) = case.betas();
        let closed = closed_form_policy_value(lambda, a1, a2, case).map_err(err)?;
        let generic = policy_value(lambda, &PolicyQuadruple::new(a1, b1, a2, b2), &homogeneous)
            .map_err(err)?;
        let scale = generic.max_abs().max(1.0);
        let e = closed.dist(&generic) / scale;
        let mirror = closed_form_policy_value(lambda, a2, a1, case.swapped()).map_err(err)?;
        let sym = (closed.u1 + mirror.u2)
            .abs()
            .max((closed.u2 + mirror.u1).abs())
            / scale;
        worst = worst.max(e).max(sym);
        if e > 1e-12 || sym > 1e-12 {
            return Err(format!(
                "lambda = {lambda}, alpha = ({}, {}), case {}: closed {closed:?}, generic {generic:?}, mirror {mirror:?}",
                a1.get(),
                a2.get(),
                case.label()
            ));
        }
    }
    Ok(format!("1000 samples, max relative error {worst:.1e}"))
}

fn derivative_signs(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let h = 1e-6;
    for _ in 0..100 {
        let lambda = rng.random_range(0.01..=1.0);
        let a1 = rng.random_range(0.05..=0.95);
        let a2 = rng.random_range(0.05..=0.95);
        for case in BetaCase::ALL {
            let value =
                |p: f64, q: f64| closed_form_policy_value(lambda, av(p), av(q), case).map_err(err);
            let d1 = {
                let (hi, lo) = (value(a1 + h, a2)?, value(a1 - h, a2)?);
                ValuePair::new((hi.u1 - lo.u1) / (2.0 * h), (hi.u2 - lo.u2) / (2.0 * h))
            };
            let d2 = {
                let (hi, lo) = (value(a1, a2 + h)?, value(a1, a2 - h)?);
                ValuePair::new((hi.u1 - lo.u1) / (2.0 * h), (hi.u2 - lo.u2) / (2.0 * h))
            };
            let ((x1, x2), (y1, y2)) = expected_signs(case);
            let px = partials_x(lambda, a1, a2, case);
            let py = partials_y(lambda, a1, a2, case);
            let fd = [
                (d1.u1, x1, px.d_alpha1),
                (d2.u1, x2, px.d_alpha2),
                (d1.u2, y1, py.d_alpha1),
                (d2.u2, y2, py.d_alpha2),
            ];
            for (k, &(f, sign, closed)) in fd.iter().enumerate() {
                if Sign::of(f) != Some(sign) || (closed - f).abs() > 1e-4 * f.abs() {
                    return Err(format!(
                        "lambda = {lambda}, alpha = ({a1}, {a2}), case {}, partial #{k}: finite difference {f}, closed form {closed}, expected {sign:?}",
                        case.label()
                    ));
                }
            }
        }
    }
    Ok("sign patterns and closed-form partials at 100 samples".into())
}

fn identities(_: &VerifyOptions, _: &mut ChaCha8Rng) -> CheckResult {
    for n in 1..=10 {
        for id in algebraic_identities(n) {
            if !id.holds() {
                return Err(format!(
                    "{} fails at n = {n} (relative error {:e})",
                    id.name,
                    id.relative_error()
                ));
            }
        }
    }
    Ok("4 identities exact in Q(√2) for n = 1..10".into())
}

fn monotone_iterates(_: &VerifyOptions, rng: &mut ChaCha8Rng) -> CheckResult {
    let mut systems = vec![
        (build_instance(12).map_err(err)?, 1.0),
        (build_instance(12).map_err(err)?, 0.1),
    ];
    for _ in 0..10 {
        let inst = random_instance(rng, 6);
        let lambda = 10f64.powf(rng.random_range(-1.5..=0.0));
        systems.push((inst, lambda));
    }
    let cfg = SolveConfig::new(Method::Monotone).with_max_iterations(1_000_000);
    let mut steps = 0;
    for (inst, lambda) in &systems {
        let (_, trace) = monotone_solve_traced(inst, *lambda, &cfg).map_err(err)?;
        let r = trace.bound;
        for (j, w) in trace.iterates.windows(2).enumerate() {
            if w[1].u1 < w[0].u1 - 1e-10 || w[1].u2 < w[0].u2 - 1e-10 {
                return Err(format!(
                    "lambda = {lambda}, step {j}: {:?} -> {:?}",
                    w[0], w[1]
                ));
            }
        }
        if let Some(u) = trace.iterates.iter().find(|u| u.max_abs() > r) {
            return Err(format!(
                "lambda = {lambda}: iterate {u:?} leaves [−{r}, {r}]²"
            ));
        }
        steps += trace.iterates.len();
    }
    Ok(format!(
        "{} systems, {steps} nondecreasing iterates inside [−R, R]²",
        systems.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flipped(alpha: ActionValue, beta: ActionValue) -> CouplingMatrix {
        let c = coupling_matrix(alpha, beta);
        CouplingMatrix { c12: -c.c12, ..c }
    }

    #[test]
    fn default_suite_passes() {
        let s = run_checks(&VerifyOptions::new(1));
        assert!(s.outcomes.len() >= 12);
        assert!(s.all_passed(), "{}", s.render());
    }

    #[test]
    fn flipped_coupling_is_caught() {
        let s = run_checks(&VerifyOptions {
            seed: 1,
            coupling: flipped,
        });
        let failed: Vec<_> = s.failed().map(|o| o.name).collect();
        assert_eq!(failed, vec!["coupling-structure"]);
    }
}
