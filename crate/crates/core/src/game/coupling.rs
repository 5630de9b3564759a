use super::{ActionValue, Equation, ValuePair};

/// The 2×2 coupling `C(α, β)`. Rows sum to zero; off-diagonal entries are
/// nonpositive on `[0, 1]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingMatrix {
    pub c11: f64,
    pub c12: f64,
    pub c21: f64,
    pub c22: f64,
}

impl CouplingMatrix {
    /// Entries `(c_i1, c_i2)` of row `eq`.
    pub fn row(&self, eq: Equation) -> (f64, f64) {
        match eq {
            Equation::First => (self.c11, self.c12),
            Equation::Second => (self.c21, self.c22),
        }
    }

    pub fn row_abs_sum(&self, eq: Equation) -> f64 {
        let (a, b) = self.row(eq);
        a.abs() + b.abs()
    }
}

/// `C(α, β) = I + β·[[−α, α−1], [α−1, −α]] + (1−β)·[[α−1, −α], [−α, α−1]]`.
///
/// The diagonal collapses to `1 − αβ − (1−α)(1−β)` and the off-diagonal
/// entries are its negation, so row sums vanish exactly in floating point.
pub fn coupling_matrix(alpha: ActionValue, beta: ActionValue) -> CouplingMatrix {
    let (a, b) = (alpha.get(), beta.get());
    let d = 1.0 - a * b - (1.0 - a) * (1.0 - b);
    CouplingMatrix {
        c11: d,
        c12: -d,
        c21: -d,
        c22: d,
    }
}

/// Running payoff `L_1(α,β) = αβ + 2(1−α)(1−β)`, `L_2 = −L_1`.
pub fn payoff(eq: Equation, alpha: ActionValue, beta: ActionValue) -> f64 {
    let (a, b) = (alpha.get(), beta.get());
    let l1 = a * b + 2.0 * (1.0 - a) * (1.0 - b);
    match eq {
        Equation::First => l1,
        Equation::Second => -l1,
    }
}

/// `b_i(α, β, u) = c_i1 u_1 + c_i2 u_2 − L_i(α, β)`.
pub fn running_cost(eq: Equation, alpha: ActionValue, beta: ActionValue, u: ValuePair) -> f64 {
    let (ci1, ci2) = coupling_matrix(alpha, beta).row(eq);
    ci1 * u.u1 + ci2 * u.u2 - payoff(eq, alpha, beta)
}
