//! Exact arithmetic in Q(sqrt(d)) for a fixed squarefree radicand d.
//!
//! Values are x + y*sqrt(d) with rational x, y. Sign determination uses
//! integer arithmetic only, so positive-definiteness checks downstream
//! are exact. When d = 1 the sqrt coefficient is folded into x and the
//! type degrades to plain rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticReal {
    x: BigRational,
    y: BigRational,
    d: u64,
}

impl QuadraticReal {
    pub fn new(x: BigRational, y: BigRational, d: u64) -> QuadraticReal {
        if d == 1 {
            QuadraticReal {
                x: x + y,
                y: BigRational::zero(),
                d,
            }
        } else {
            QuadraticReal { x, y, d }
        }
    }

    pub fn from_rational(x: BigRational, d: u64) -> QuadraticReal {
        QuadraticReal::new(x, BigRational::zero(), d)
    }

    pub fn from_int(n: i64, d: u64) -> QuadraticReal {
        QuadraticReal::from_rational(BigRational::from_integer(BigInt::from(n)), d)
    }

    /// The element (p/q) * sqrt(d).
    pub fn sqrt_d_times(p: i64, q: i64, d: u64) -> QuadraticReal {
        let coeff = BigRational::new(BigInt::from(p), BigInt::from(q));
        QuadraticReal::new(BigRational::zero(), coeff, d)
    }

    pub fn zero(d: u64) -> QuadraticReal {
        QuadraticReal::from_int(0, d)
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.x
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// Some(x) when the value is rational and an integer.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.y.is_zero() && self.x.is_integer() {
            Some(self.x.to_integer())
        } else {
            None
        }
    }

    /// Exact sign, decided by comparing x^2 against y^2 d when x and y
    /// disagree in sign.
    pub fn sign(&self) -> Ordering {
        let sx = rational_sign(&self.x);
        let sy = rational_sign(&self.y);
        match (sx, sy) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            (a, b) => {
                let x2 = &self.x * &self.x;
                let y2d = &self.y * &self.y * BigRational::from_integer(BigInt::from(self.d));
                match x2.cmp(&y2d) {
                    Ordering::Greater => a,
                    Ordering::Less => b,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn eval(&self) -> f64 {
        self.x.to_f64().unwrap() + self.y.to_f64().unwrap() * (self.d as f64).sqrt()
    }

    fn assert_same_radicand(&self, other: &QuadraticReal) {
        assert_eq!(self.d, other.d, "mixed radicands in quadratic arithmetic");
    }

    pub fn inverse(&self) -> QuadraticReal {
        assert!(!self.is_zero(), "division by zero");
        let d = BigRational::from_integer(BigInt::from(self.d));
        let norm = &self.x * &self.x - &self.y * &self.y * d;
        // norm = 0 would mean sqrt(d) is rational, impossible for squarefree d > 1.
        QuadraticReal::new(&self.x / &norm, -(&self.y) / &norm, self.d)
    }
}

fn rational_sign(r: &BigRational) -> Ordering {
    if r.is_zero() {
        Ordering::Equal
    } else if r.is_positive() {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

impl Add for &QuadraticReal {
    type Output = QuadraticReal;
    fn add(self, rhs: &QuadraticReal) -> QuadraticReal {
        self.assert_same_radicand(rhs);
        QuadraticReal::new(&self.x + &rhs.x, &self.y + &rhs.y, self.d)
    }
}

impl Sub for &QuadraticReal {
    type Output = QuadraticReal;
    fn sub(self, rhs: &QuadraticReal) -> QuadraticReal {
        self.assert_same_radicand(rhs);
        QuadraticReal::new(&self.x - &rhs.x, &self.y - &rhs.y, self.d)
    }
}

impl Mul for &QuadraticReal {
    type Output = QuadraticReal;
    fn mul(self, rhs: &QuadraticReal) -> QuadraticReal {
        self.assert_same_radicand(rhs);
        let d = BigRational::from_integer(BigInt::from(self.d));
        QuadraticReal::new(
            &self.x * &rhs.x + &self.y * &rhs.y * d,
            &self.x * &rhs.y + &self.y * &rhs.x,
            self.d,
        )
    }
}

impl Div for &QuadraticReal {
    type Output = QuadraticReal;
    fn div(self, rhs: &QuadraticReal) -> QuadraticReal {
        self * &rhs.inverse()
    }
}

impl Neg for &QuadraticReal {
    type Output = QuadraticReal;
    fn neg(self) -> QuadraticReal {
        QuadraticReal::new(-(&self.x), -(&self.y), self.d)
    }
}

impl Mul<&BigRational> for &QuadraticReal {
    type Output = QuadraticReal;
    fn mul(self, rhs: &BigRational) -> QuadraticReal {
        QuadraticReal::new(&self.x * rhs, &self.y * rhs, self.d)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serialized as "p/q", "r/s*sqrt(d)", or "p/q+r/s*sqrt(d)" with no
/// whitespace; unit denominators and unit sqrt coefficients are omitted.
impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return f.write_str(&fmt_rational(&self.x));
        }
        let sqrt_term = |y: &BigRational| -> String {
            if y.is_one() {
                format!("sqrt({})", self.d)
            } else {
                format!("{}*sqrt({})", fmt_rational(y), self.d)
            }
        };
        if self.x.is_zero() {
            if self.y.is_negative() {
                return write!(f, "-{}", sqrt_term(&-(&self.y)));
            }
            return f.write_str(&sqrt_term(&self.y));
        }
        if self.y.is_negative() {
            write!(f, "{}-{}", fmt_rational(&self.x), sqrt_term(&-(&self.y)))
        } else {
            write!(f, "{}+{}", fmt_rational(&self.x), sqrt_term(&self.y))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::rational::BigRational;

    fn q(p: i64, q_: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q_))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(QuadraticReal::from_int(1, 2).eval(), 1.0);
        let root2 = QuadraticReal::sqrt_d_times(1, 1, 2);
        assert!((root2.eval() - std::f64::consts::SQRT_2).abs() < 1e-15);
        // 1/2 - (1/4) sqrt(5), high-precision oracle value.
        let v = QuadraticReal::new(q(1, 2), q(-1, 4), 5);
        assert!((v.eval() - (-0.05901699437494742)).abs() < 1e-14);
    }

    #[test]
    fn exact_sign() {
        // 3 - 2 sqrt(2) > 0 but 3 - 3 sqrt(2) < 0.
        assert!(QuadraticReal::new(q(3, 1), q(-2, 1), 2).is_positive());
        assert_eq!(
            QuadraticReal::new(q(3, 1), q(-3, 1), 2).sign(),
            Ordering::Less
        );
        assert_eq!(QuadraticReal::zero(7).sign(), Ordering::Equal);
    }

    #[test]
    fn field_ops() {
        let a = QuadraticReal::new(q(1, 2), q(3, 1), 5);
        let b = QuadraticReal::new(q(-2, 3), q(1, 7), 5);
        let prod = &a * &b;
        let back = &prod / &b;
        assert_eq!(back, a);
        let sum = &a + &b;
        let diff = &sum - &b;
        assert_eq!(diff, a);
    }

    #[test]
    fn radicand_one_degrades_to_rationals() {
        let v = QuadraticReal::new(q(1, 2), q(1, 3), 1);
        assert!(v.is_rational());
        assert_eq!(v.rational_part(), &q(5, 6));
    }

    #[test]
    fn display_tokens() {
        assert_eq!(QuadraticReal::from_int(8, 2).to_string(), "8");
        assert_eq!(QuadraticReal::sqrt_d_times(4, 1, 2).to_string(), "4*sqrt(2)");
        assert_eq!(QuadraticReal::sqrt_d_times(1, 1, 2).to_string(), "sqrt(2)");
        assert_eq!(
            QuadraticReal::new(q(1, 2), q(-1, 4), 5).to_string(),
            "1/2-1/4*sqrt(5)"
        );
        assert_eq!(
            QuadraticReal::new(q(3, 1), q(2, 7), 3).to_string(),
            "3+2/7*sqrt(3)"
        );
    }
}
