//! Integer-affine expressions `a·r + b` in the family parameter r. All
//! parameterized weights, degrees and singularity indices are values of this
//! type. Coefficients are stored doubled so half-integer matrix data (the
//! b-vectors of skew formats) stays exact; evaluation carries a parity check
//! that rejects anything non-integral.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinExpr {
    pub slope2: i64,
    pub offset2: i64,
}

impl LinExpr {
    /// slope·r + offset with integer coefficients.
    pub const fn new(slope: i64, offset: i64) -> Self {
        LinExpr {
            slope2: 2 * slope,
            offset2: 2 * offset,
        }
    }

    /// (slope2·r + offset2)/2 from raw doubled coefficients.
    pub const fn half(slope2: i64, offset2: i64) -> Self {
        LinExpr { slope2, offset2 }
    }

    pub const fn c(offset: i64) -> Self {
        LinExpr::new(0, offset)
    }

    pub const fn r() -> Self {
        LinExpr::new(1, 0)
    }

    pub fn is_const(&self) -> bool {
        self.slope2 == 0
    }

    /// Doubled value 2·(self at r); always exact.
    pub fn eval2(&self, r: i64) -> i64 {
        self.slope2 * r + self.offset2
    }

    /// Value at r, or None when the result is a half-integer.
    pub fn eval(&self, r: i64) -> Option<i64> {
        let v2 = self.eval2(r);
        if v2 % 2 == 0 {
            Some(v2 / 2)
        } else {
            None
        }
    }

    /// True when the value is integral for every integer r.
    pub fn always_integral(&self) -> bool {
        self.slope2 % 2 == 0 && self.offset2 % 2 == 0
    }

    /// Exact halving, when self/2 is still a half-integer expression.
    pub fn halve(&self) -> Option<LinExpr> {
        if self.slope2 % 2 == 0 && self.offset2 % 2 == 0 {
            Some(LinExpr::half(self.slope2 / 2, self.offset2 / 2))
        } else {
            None
        }
    }
}

impl Add for LinExpr {
    type Output = LinExpr;
    fn add(self, rhs: LinExpr) -> LinExpr {
        LinExpr::half(self.slope2 + rhs.slope2, self.offset2 + rhs.offset2)
    }
}

impl Sub for LinExpr {
    type Output = LinExpr;
    fn sub(self, rhs: LinExpr) -> LinExpr {
        LinExpr::half(self.slope2 - rhs.slope2, self.offset2 - rhs.offset2)
    }
}

impl Neg for LinExpr {
    type Output = LinExpr;
    fn neg(self) -> LinExpr {
        LinExpr::half(-self.slope2, -self.offset2)
    }
}

impl Mul<i64> for LinExpr {
    type Output = LinExpr;
    fn mul(self, k: i64) -> LinExpr {
        LinExpr::half(self.slope2 * k, self.offset2 * k)
    }
}

impl std::iter::Sum for LinExpr {
    fn sum<I: Iterator<Item = LinExpr>>(iter: I) -> LinExpr {
        iter.fold(LinExpr::c(0), |a, b| a + b)
    }
}

fn fmt_int_affine(slope: i64, offset: i64, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match (slope, offset) {
        (0, b) => write!(f, "{}", b),
        (1, 0) => write!(f, "r"),
        (-1, 0) => write!(f, "-r"),
        (a, 0) => write!(f, "{}r", a),
        (1, b) if b > 0 => write!(f, "r+{}", b),
        (1, b) => write!(f, "r{}", b),
        (-1, b) if b > 0 => write!(f, "-r+{}", b),
        (-1, b) => write!(f, "-r{}", b),
        (a, b) if b > 0 => write!(f, "{}r+{}", a, b),
        (a, b) => write!(f, "{}r{}", a, b),
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.always_integral() {
            fmt_int_affine(self.slope2 / 2, self.offset2 / 2, f)
        } else {
            write!(f, "(")?;
            fmt_int_affine(self.slope2, self.offset2, f)?;
            write!(f, ")/2")
        }
    }
}

impl fmt::Debug for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
