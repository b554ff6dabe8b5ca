//! Scalar abstraction for the curvature functionals.
//!
//! Quartic forms with rational coefficients are evaluated over any
//! [`Scalar`]. The root-combinatorial bound functionals only ever multiply
//! by `1` or `sqrt(2)`, so they need [`Sqrt2Scalar`]: machine floats for
//! sampling and optimization, and the exact field Q(sqrt 2) when a
//! certificate is needed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Rational;

pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rational(q: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Equality up to `tol` for inexact types; exact types ignore `tol`.
    fn near(&self, other: &Self, tol: f64) -> bool;

    fn is_exact() -> bool;
}

pub trait Sqrt2Scalar: Scalar {
    fn sqrt2() -> Self;
}

impl Scalar for Rational {
    fn from_rational(q: &Rational) -> Self {
        *q
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn near(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_exact() -> bool {
        true
    }
}

macro_rules! float_scalar {
    ($t:ty, $sqrt2:expr) => {
        impl Scalar for $t {
            fn from_rational(q: &Rational) -> Self {
                (*q.numer() as f64 / *q.denom() as f64) as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn near(&self, other: &Self, tol: f64) -> bool {
                ((*self - *other) as f64).abs() <= tol
            }

            fn is_exact() -> bool {
                false
            }
        }

        impl Sqrt2Scalar for $t {
            fn sqrt2() -> Self {
                $sqrt2
            }
        }
    };
}

float_scalar!(f64, std::f64::consts::SQRT_2);
float_scalar!(f32, std::f32::consts::SQRT_2);

/// An element `a + b*sqrt(2)` of the quadratic extension of a rational type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sqrt2Ext<T> {
    pub a: T,
    pub b: T,
}

impl<T> Sqrt2Ext<T> {
    pub fn new(a: T, b: T) -> Self {
        Sqrt2Ext { a, b }
    }
}

impl<T: Zero> Sqrt2Ext<T> {
    pub fn rational(a: T) -> Self {
        Sqrt2Ext { a, b: T::zero() }
    }
}

impl<T: Clone + Signed + PartialOrd> Sqrt2Ext<T> {
    /// Sign of `a + b*sqrt(2)`, decided exactly.
    pub fn signum_exact(&self) -> Ordering {
        let zero = T::zero();
        let sa = self.a.partial_cmp(&zero).unwrap_or(Ordering::Equal);
        let sb = self.b.partial_cmp(&zero).unwrap_or(Ordering::Equal);
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (x, y) if x == y => x,
            (sa, _) => {
                // opposite signs: compare a^2 with 2 b^2
                let a2 = self.a.clone() * self.a.clone();
                let b2 = self.b.clone() * self.b.clone();
                let two_b2 = b2.clone() + b2;
                match a2.partial_cmp(&two_b2).unwrap_or(Ordering::Equal) {
                    Ordering::Greater => sa,
                    Ordering::Less => sa.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }
}

impl<T: Clone + Add<Output = T>> Add for Sqrt2Ext<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Sqrt2Ext::new(self.a + rhs.a, self.b + rhs.b)
    }
}

impl<T: Clone + Sub<Output = T>> Sub for Sqrt2Ext<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Sqrt2Ext::new(self.a - rhs.a, self.b - rhs.b)
    }
}

impl<T: Neg<Output = T>> Neg for Sqrt2Ext<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Sqrt2Ext::new(-self.a, -self.b)
    }
}

impl<T: Clone + Add<Output = T> + Mul<Output = T>> Mul for Sqrt2Ext<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let bb = self.b.clone() * rhs.b.clone();
        Sqrt2Ext::new(
            self.a.clone() * rhs.a.clone() + bb.clone() + bb,
            self.a * rhs.b + self.b * rhs.a,
        )
    }
}

impl<T: Clone + Zero> Zero for Sqrt2Ext<T> {
    fn zero() -> Self {
        Sqrt2Ext::new(T::zero(), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl<T: Clone + Zero + One + PartialEq> One for Sqrt2Ext<T> {
    fn one() -> Self {
        Sqrt2Ext::new(T::one(), T::zero())
    }
}

impl<T: Clone + Signed + PartialOrd> PartialOrd for Sqrt2Ext<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let diff = Sqrt2Ext::new(
            self.a.clone() - other.a.clone(),
            self.b.clone() - other.b.clone(),
        );
        Some(diff.signum_exact())
    }
}

impl<T: fmt::Display + Zero> fmt::Display for Sqrt2Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

impl Scalar for Sqrt2Ext<Rational> {
    fn from_rational(q: &Rational) -> Self {
        Sqrt2Ext::rational(*q)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(&self.a).unwrap_or(f64::NAN)
            + std::f64::consts::SQRT_2 * ToPrimitive::to_f64(&self.b).unwrap_or(f64::NAN)
    }

    fn near(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_exact() -> bool {
        true
    }
}

impl Sqrt2Scalar for Sqrt2Ext<Rational> {
    fn sqrt2() -> Self {
        Sqrt2Ext::new(Rational::zero(), Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ExactSqrt2;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sqrt2_squares_to_two() {
        let s = ExactSqrt2::sqrt2();
        assert_eq!(s * s, ExactSqrt2::rational(q(2, 1)));
    }

    #[test]
    fn ordering_across_mixed_signs() {
        // 3 - 2 sqrt2 ~ 0.17 > 0
        assert!(ExactSqrt2::new(q(3, 1), q(-2, 1)) > ExactSqrt2::zero());
        // 1 - sqrt2 < 0
        assert!(ExactSqrt2::new(q(1, 1), q(-1, 1)) < ExactSqrt2::zero());
        // -3 + 2 sqrt2 < 0
        assert!(ExactSqrt2::new(q(-3, 1), q(2, 1)) < ExactSqrt2::zero());
        assert!(ExactSqrt2::new(q(7, 5), q(0, 1)) < ExactSqrt2::sqrt2());
        assert!(ExactSqrt2::new(q(3, 2), q(0, 1)) > ExactSqrt2::sqrt2());
    }

    proptest! {
        #[test]
        fn exact_order_agrees_with_float(a in -50i128..50, b in -50i128..50, c in 1i128..9, d in 1i128..9) {
            let x = ExactSqrt2::new(q(a, c), q(b, d));
            let xf = x.to_f64();
            prop_assume!(xf.abs() > 1e-9);
            prop_assert_eq!(x > ExactSqrt2::zero(), xf > 0.0);
        }

        #[test]
        fn multiplication_matches_float(a in -20i128..20, b in -20i128..20, c in -20i128..20, d in -20i128..20) {
            let x = ExactSqrt2::new(q(a, 1), q(b, 1));
            let y = ExactSqrt2::new(q(c, 3), q(d, 2));
            let lhs = (x * y).to_f64();
            prop_assert!((lhs - x.to_f64() * y.to_f64()).abs() < 1e-9 * (1.0 + lhs.abs()));
        }
    }
}
