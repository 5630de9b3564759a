//! Exact arithmetic in `Q(√2)`: numbers `a + b√2` with rational `a, b`.
//!
//! Every constant of the counterexample (`2 − √2`, both `θ`, the probes, the
//! discounts) lives in this field, so identities and limits can be checked
//! without rounding.

use std::cmp::Ordering;
use std::f64::consts::SQRT_2;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSqrt2 {
    a: BigRational,
    b: BigRational,
}

impl QSqrt2 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QSqrt2 { a, b }
    }

    pub fn int(a: i64) -> Self {
        QSqrt2::new(BigRational::from_integer(a.into()), BigRational::zero())
    }

    /// `a + b√2` for integers.
    pub fn ints(a: i64, b: i64) -> Self {
        QSqrt2::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        QSqrt2::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn sqrt2() -> Self {
        QSqrt2::ints(0, 1)
    }

    /// `2^e` for any integer `e`.
    pub fn pow2(e: i32) -> Self {
        let p = BigInt::one() << e.unsigned_abs();
        let r = if e >= 0 {
            BigRational::from_integer(p)
        } else {
            BigRational::new(BigInt::one(), p)
        };
        QSqrt2::new(r, BigRational::zero())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn sqrt2_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a − b√2`.
    pub fn conjugate(&self) -> Self {
        QSqrt2::new(self.a.clone(), -self.b.clone())
    }

    /// `a² − 2b²`, the field norm.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            // Opposite signs: the larger of a² and 2b² decides.
            (sa, _) => match self.norm().cmp(&BigRational::zero()) {
                Ordering::Greater => sa,
                Ordering::Less => sa.reverse(),
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "division by zero in Q(√2)");
        QSqrt2::new(&self.a / &n, -(&self.b / &n))
    }

    /// Nearest-ish binary64, avoiding cancellation between `a` and `b√2`.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        if self.a.is_zero() || self.b.is_zero() || self.a.is_positive() == self.b.is_positive() {
            a + b * SQRT_2
        } else {
            // a + b√2 = (a² − 2b²)/(a − b√2); the denominator does not cancel.
            self.norm().to_f64().unwrap_or(f64::NAN) / (a - b * SQRT_2)
        }
    }
}

impl fmt::Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})√2", self.a, self.b)
    }
}

impl PartialOrd for QSqrt2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QSqrt2 {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, |$l:ident, $r:ident| $body:expr) => {
        impl $tr<&QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            #[allow(clippy::suspicious_arithmetic_impl)]
            fn $method(self, rhs: &QSqrt2) -> QSqrt2 {
                let ($l, $r) = (self, rhs);
                $body
            }
        }
        impl $tr<QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QSqrt2> for QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: &QSqrt2) -> QSqrt2 {
                (&self).$method(rhs)
            }
        }
        impl $tr<QSqrt2> for &QSqrt2 {
            type Output = QSqrt2;
            fn $method(self, rhs: QSqrt2) -> QSqrt2 {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |l, r| QSqrt2::new(&l.a + &r.a, &l.b + &r.b));
forward_binop!(Sub, sub, |l, r| QSqrt2::new(&l.a - &r.a, &l.b - &r.b));
forward_binop!(Mul, mul, |l, r| {
    let two = BigRational::from_integer(2.into());
    QSqrt2::new(&l.a * &r.a + two * &l.b * &r.b, &l.a * &r.b + &l.b * &r.a)
});
forward_binop!(Div, div, |l, r| l * r.recip());

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.a, -self.b)
    }
}

impl Neg for &QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        -self.clone()
    }
}

/// Relative distance `|x − y| / |y|` in binary64 (exact difference first).
pub fn relative_gap(x: &QSqrt2, y: &QSqrt2) -> f64 {
    if y.is_zero() {
        return (x - y).abs().to_f64();
    }
    ((x - y).abs() / y.abs()).to_f64()
}
