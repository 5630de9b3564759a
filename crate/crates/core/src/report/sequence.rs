use std::io::Write;

use super::num;
use crate::counterexample::{
    limit_constant, tail_len, tail_max, tail_min, Component, OscillationRow, SequenceKind,
};
use crate::error::Result;
use crate::solver::BetaCase;

pub const SEQUENCE_HEADER: &str =
    "n,lambda,X,Y,residual1,residual2,alpha1,beta1,alpha2,beta2,bound_X,bound_Y";

pub fn write_sequence_csv<W: Write>(rows: &[OscillationRow], mut out: W) -> Result<()> {
    writeln!(out, "{SEQUENCE_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            num(r.discount),
            num(r.u.u1),
            num(r.u.u2),
            num(r.residual1),
            num(r.residual2),
            num(r.policy.alpha1.get()),
            num(r.policy.beta1.get()),
            num(r.policy.alpha2.get()),
            num(r.policy.beta2.get()),
            num(r.bound.u1),
            num(r.bound.u2)
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Tail estimate against the limit constants, as `# `-prefixed lines.
///
/// Along `λ_n` the tail maximum is compared with the common limit `±1/√2`
/// of the probe policies; along `μ_n` the tail minimum is compared with the
/// smallest of the four probe-policy limits.
pub fn sequence_summary(kind: SequenceKind, k_max: u32, rows: &[OscillationRow]) -> String {
    let (Some(first), Some(last)) = (rows.first(), rows.last()) else {
        return String::new();
    };
    let len = tail_len(first.n, last.n);
    let tail_from = last.n + 1 - len;
    let limit = |c: Component| {
        BetaCase::ALL
            .iter()
            .map(|&case| limit_constant(kind, case, c))
            .fold(f64::INFINITY, f64::min)
    };
    let (lx, ly) = (limit(Component::X), limit(Component::Y));
    let (label, est) = match kind {
        SequenceKind::Lambda => ("max", tail_max(rows, len)),
        SequenceKind::Mu => ("min", tail_min(rows, len)),
    };
    let mut s = String::new();
    s.push_str(&format!(
        "# {kind} sequence, n = {}..{}, K = {k_max}\n",
        first.n, last.n
    ));
    s.push_str(&format!(
        "# tail n = {tail_from}..{}: {label} X = {}, {label} Y = {}\n",
        last.n, est.u1, est.u2
    ));
    s.push_str(&format!("# limit X = {lx}, limit Y = {ly}\n"));
    s.push_str(&format!(
        "# tail - limit: X {:+e}, Y {:+e}\n",
        est.u1 - lx,
        est.u2 - ly
    ));
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counterexample::solve_sequence;
    use crate::solver::{Method, SolveConfig};

    #[test]
    fn csv_and_summary() {
        let rows = solve_sequence(
            SequenceKind::Mu,
            2,
            5,
            7,
            &SolveConfig::new(Method::PolicyEnum),
        )
        .unwrap();
        let mut buf = Vec::new();
        write_sequence_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().skip(1).all(|l| l.split(',').count() == 12));
        let summary = sequence_summary(SequenceKind::Mu, 7, &rows);
        assert!(summary.contains("tail n = 3..5: min X"));
        assert!(summary.lines().all(|l| l.starts_with("# ")));
        assert_eq!(sequence_summary(SequenceKind::Mu, 7, &[]), "");
    }
}
