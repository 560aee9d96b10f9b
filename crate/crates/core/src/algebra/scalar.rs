//! Scalar types for exact computation: arbitrary-precision rationals and
//! Gaussian rationals (the field extension by a square root of -1).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::AlgebraError;

/// Arbitrary-precision rational number, always kept in reduced form with a
/// positive denominator (the `num-rational` canonical form).
pub type Rat = BigRational;

/// Build a rational from an integer numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// An element of the Gaussian rationals: `re + im * i` with rational parts.
///
/// Equality is structural, which is exact equality because both parts are
/// canonical reduced rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussRat::new(rat_int(re), rat_int(im))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Squared absolute value `re^2 + im^2`.
    pub fn norm(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRat {
            re: &self.re / &n,
            im: -&self.im / &n,
        })
    }

    /// The real part, provided the element is real.
    pub fn to_rat(&self) -> Result<Rat, AlgebraError> {
        if self.is_real() {
            Ok(self.re.clone())
        } else {
            Err(AlgebraError::NotReal(self.to_string()))
        }
    }
}

impl fmt::Display for GaussRat {
    /// Canonical form `a+b*i`, with pure-real and pure-imaginary shortening.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", self.re, -self.im.clone())
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for GaussRat {
    type Err = AlgebraError;

    /// Parse the canonical `a+b*i` form (or `a`, `b*i`, `i`, `-i`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let expr = crate::algebra::parse::parse_expr(s)?;
        let rf = expr;
        if rf.den_poly().degree() != Some(0) || rf.num_poly().degree().is_some_and(|d| d > 0) {
            return Err(AlgebraError::Parse(format!("not a scalar: {s}")));
        }
        let num = rf.num_poly().constant_term();
        let den = rf.den_poly().constant_term();
        Ok(num * den.inv().expect("denominator nonzero"))
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::from_ints(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::from_ints(1, 0)
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - rhs.re,
            im: self.im - rhs.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    #[allow(clippy::suspicious_arithmetic_impl)] // division through the inverse
    fn div(self, rhs: GaussRat) -> GaussRat {
        self * rhs.inv().expect("division by zero GaussRat")
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::from_rat(r)
    }
}

/// A commutative ring with exact division, enough for fraction-free
/// determinant elimination. Implemented by the scalar fields and by
/// polynomials over a field.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    /// `self / rhs` when the division is exact in the ring, else `None`.
    fn exact_div(&self, rhs: &Self) -> Option<Self>;
}

/// A field: every nonzero element is invertible.
pub trait FieldScalar: Ring {
    fn inv(&self) -> Option<Self>;
}

impl Ring for Rat {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

impl FieldScalar for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Ring for GaussRat {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|v| self.clone() * v)
    }
}

impl FieldScalar for GaussRat {
    fn inv(&self) -> Option<Self> {
        GaussRat::inv(self)
    }
}
