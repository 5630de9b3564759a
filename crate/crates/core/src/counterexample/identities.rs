use super::{discount_exact, SequenceKind, SequenceSpec};
use crate::exact::{relative_gap, QSqrt2};

/// One algebraic identity evaluated exactly at a sequence index.
#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub n: u32,
    pub lhs: QSqrt2,
    pub rhs: QSqrt2,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn relative_error(&self) -> f64 {
        relative_gap(&self.lhs, &self.rhs)
    }
}

/// `t² − 4t + 2`, which vanishes at `2 − √2`.
fn quadratic(t: &QSqrt2) -> QSqrt2 {
    t * t - QSqrt2::int(4) * t + QSqrt2::int(2)
}

/// The identities behind the limit computations, with the probes built from
/// their defining maps `p(λ) = 2−√2+λ/θ_λ`, `q(λ) = 2−√2+λ/θ_μ`.
pub fn algebraic_identities(n: u32) -> Vec<IdentityCheck> {
    let root = QSqrt2::ints(2, -1);
    let s2 = QSqrt2::sqrt2();
    let rho = QSqrt2::pow2(-2 * n as i32 - 2);
    let rho2 = &rho * &rho;

    let lambda_n = discount_exact(SequenceSpec {
        kind: SequenceKind::Lambda,
        n,
    });
    let p = &root + lambda_n / SequenceKind::Lambda.theta_exact();
    let mu_n = discount_exact(SequenceSpec {
        kind: SequenceKind::Mu,
        n,
    });
    let q = |x: QSqrt2| &root + x / SequenceKind::Mu.theta_exact();
    let q_half = q(&mu_n * QSqrt2::ratio(1, 2));
    let q_double = q(&mu_n * QSqrt2::int(2));

    let eight_s2_rho = QSqrt2::int(8) * &s2 * &rho;
    vec![
        IdentityCheck {
            name: "p(λ_n)² − 4p(λ_n) + 2 = −8√2ρ_n + 16ρ_n²",
            n,
            lhs: quadratic(&p),
            rhs: -&eight_s2_rho + QSqrt2::int(16) * &rho2,
        },
        IdentityCheck {
            name: "q(μ_n/2)² − 4q(μ_n/2) + 2 = −2√2ρ_n + ρ_n²",
            n,
            lhs: quadratic(&q_half),
            rhs: -(QSqrt2::int(2) * &s2 * &rho) + &rho2,
        },
        IdentityCheck {
            name: "q(2μ_n)² − 4q(2μ_n) + 2 = −8√2ρ_n + 16ρ_n²",
            n,
            lhs: quadratic(&q_double),
            rhs: -&eight_s2_rho + QSqrt2::int(16) * &rho2,
        },
        IdentityCheck {
            name: "q(μ_n/2)q(2μ_n) − 2q(μ_n/2) − 2q(2μ_n) + 2 = −5√2ρ_n + 4ρ_n²",
            n,
            lhs: &q_half * &q_double - QSqrt2::int(2) * &q_half - QSqrt2::int(2) * &q_double
                + QSqrt2::int(2),
            rhs: -(QSqrt2::int(5) * &s2 * &rho) + QSqrt2::int(4) * &rho2,
        },
    ]
}
