use crate::solver::BetaCase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Positive)
        } else if x < 0.0 {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// Partial derivatives with respect to `α1` and `α2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub d_alpha1: f64,
    pub d_alpha2: f64,
}

impl Partials {
    pub fn signs(&self) -> (Option<Sign>, Option<Sign>) {
        (Sign::of(self.d_alpha1), Sign::of(self.d_alpha2))
    }
}

/// `∂X/∂α1`, `∂X/∂α2` of the closed-form policy value.
pub fn partials_x(lambda: f64, alpha1: f64, alpha2: f64, case: BetaCase) -> Partials {
    let (l, a1, a2) = (lambda, alpha1, alpha2);
    let (d1, d2) = match case {
        BetaCase::ZeroZero => {
            let den = l * (a1 + a2 + l).powi(2);
            (
                -2.0 * (l + 2.0) * (l + a2) / den,
                2.0 * a1 * (l + 2.0) / den,
            )
        }
        BetaCase::ZeroOne => {
            let den = l * (a1 - a2 + l + 1.0).powi(2);
            (
                -(l + 1.0 - a2) * (2.0 * (l + 2.0) - a2) / den,
                -a1 * (l + 3.0 - a1) / den,
            )
        }
        BetaCase::OneZero => {
            let den = l * (-a1 + a2 + l + 1.0).powi(2);
            (
                (l + a2) * (l + 3.0 - a2) / den,
                (1.0 - a1) * (2.0 * (l + 2.0) - a1) / den,
            )
        }
        BetaCase::OneOne => {
            let den = l * (-a1 - a2 + l + 2.0).powi(2);
            (
                (l + 2.0) * (l + 1.0 - a2) / den,
                -(1.0 - a1) * (l + 2.0) / den,
            )
        }
    };
    Partials {
        d_alpha1: d1,
        d_alpha2: d2,
    }
}

/// `∂Y/∂α_k(λ, α1, α2, β1, β2) = −∂X/∂α_{3−k}(λ, α2, α1, β2, β1)`, from the
/// symmetry `Y(α1, α2, β1, β2) = −X(α2, α1, β2, β1)` of the system.
pub fn partials_y(lambda: f64, alpha1: f64, alpha2: f64, case: BetaCase) -> Partials {
    let m = partials_x(lambda, alpha2, alpha1, case.swapped());
    Partials {
        d_alpha1: -m.d_alpha2,
        d_alpha2: -m.d_alpha1,
    }
}

/// Sign patterns `((∂1X, ∂2X), (∂1Y, ∂2Y))` on `(0, 1)²`.
pub fn expected_signs(case: BetaCase) -> ((Sign, Sign), (Sign, Sign)) {
    use Sign::{Negative as N, Positive as P};
    match case {
        BetaCase::ZeroZero => ((N, P), (N, P)),
        BetaCase::ZeroOne => ((N, N), (N, N)),
        BetaCase::OneZero => ((P, P), (P, P)),
        BetaCase::OneOne => ((P, N), (P, N)),
    }
}
