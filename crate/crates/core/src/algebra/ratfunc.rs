//! Rational functions in one variable over an exact field, normalized so the
//! numerator and denominator are coprime and the denominator is monic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::poly::{CoeffDisplay, Poly};
use crate::algebra::scalar::{FieldScalar, GaussRat, Rat};
use crate::algebra::AlgebraError;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: FieldScalar> RationalFunction<K> {
    /// Build and normalize; errors on a zero denominator.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZeroPoly);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree().is_some_and(|d| d > 0) {
            (num.exact_quotient(&g)?, den.exact_quotient(&g)?)
        } else {
            (num, den)
        };
        let lc_inv = den.leading_coeff().inv().expect("nonzero denominator");
        Ok(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RationalFunction {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn var() -> Self {
        RationalFunction::from_poly(Poly::var())
    }

    pub fn constant(c: K) -> Self {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn num_poly(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den_poly(&self) -> &Poly<K> {
        &self.den
    }

    /// Degree as a map of the sphere: max of numerator and denominator degrees.
    pub fn map_degree(&self) -> usize {
        let n = self.num.degree().unwrap_or(0);
        let d = self.den.degree().unwrap_or(0);
        n.max(d)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Exact composition `self(inner)`. Errors when `inner` is a constant
    /// sitting on a pole of `self` (the composite is not a function).
    pub fn compose(&self, inner: &RationalFunction<K>) -> Result<Self, AlgebraError> {
        let d = self.map_degree();
        let mut num_acc = Poly::zero();
        let mut den_acc = Poly::zero();
        for k in 0..=d {
            let weight = inner.num.pow(k) * inner.den.pow(d - k);
            num_acc = num_acc + weight.clone() * Poly::constant(self.num.coeff(k));
            den_acc = den_acc + weight * Poly::constant(self.den.coeff(k));
        }
        if den_acc.is_zero() {
            return Err(AlgebraError::ComposeAtPole);
        }
        RationalFunction::new(num_acc, den_acc)
    }

    pub fn eval(&self, x: &K) -> Option<K> {
        let d = self.den.eval(x);
        d.inv().map(|di| self.num.eval(x) * di)
    }

    pub fn pow(&self, e: usize) -> Self {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl<K: FieldScalar> Add for RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn add(self, rhs: Self) -> Self {
        RationalFunction::new(
            self.num.clone() * rhs.den.clone() + rhs.num.clone() * self.den.clone(),
            self.den * rhs.den,
        )
        .expect("denominator product nonzero")
    }
}

impl<K: FieldScalar> Sub for RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: FieldScalar> Neg for RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn neg(self) -> Self {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<K: FieldScalar> Mul for RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn mul(self, rhs: Self) -> Self {
        RationalFunction::new(self.num * rhs.num, self.den * rhs.den)
            .expect("denominator product nonzero")
    }
}

impl<K: FieldScalar> Div for RationalFunction<K> {
    type Output = RationalFunction<K>;
    fn div(self, rhs: Self) -> Self {
        RationalFunction::new(self.num * rhs.den, self.den * rhs.num)
            .expect("division by zero rational function")
    }
}

impl RationalFunction<Rat> {
    pub fn to_gauss(&self) -> RationalFunction<GaussRat> {
        RationalFunction {
            num: self.num.to_gauss(),
            den: self.den.to_gauss(),
        }
    }
}

impl<K: FieldScalar + CoeffDisplay> fmt::Display for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl<K: fmt::Debug> fmt::Debug for RationalFunction<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::poly_i64;
    use crate::algebra::scalar::rat_int;
    use proptest::prelude::*;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction<Rat> {
        RationalFunction::new(poly_i64(num), poly_i64(den)).unwrap()
    }

    #[test]
    fn normalization() {
        // (2x^2-2)/(4x-4) reduces to (x+1)/2 with a monic denominator of 1
        let f = rf(&[-2, 0, 2], &[-4, 4]);
        assert_eq!(
            f.num_poly(),
            &poly_i64(&[1, 1]).scale(&crate::algebra::scalar::rat(1, 2))
        );
        assert_eq!(f.den_poly(), &poly_i64(&[1]));
        assert_eq!(f.to_string(), "1/2*x+1/2");
        // a nonconstant denominator stays monic
        let g = rf(&[1], &[2, 4]);
        assert_eq!(g.den_poly(), &poly_i64(&[1, 2]).scale(&rat_int(1)).monic());
        assert_eq!(g.to_string(), "(1/4)/(x+1/2)");
    }

    #[test]
    fn compose_identity_and_degree() {
        // g(y) = 4y/(y+1)^2
        let g = rf(&[0, 4], &[1, 2, 1]);
        let idm = RationalFunction::var();
        assert_eq!(g.compose(&idm).unwrap(), g);
        // x^2 composed with itself: degree multiplies
        let sq = rf(&[0, 0, 1], &[1]);
        assert_eq!(sq.compose(&sq).unwrap().map_degree(), 4);
        assert_eq!(g.compose(&sq).unwrap().map_degree(), 4);
    }

    #[test]
    fn compose_constant_at_pole_errors() {
        // outer 1/x at inner constant 0
        let outer = rf(&[1], &[0, 1]);
        let zero = RationalFunction::constant(rat_int(0));
        assert!(outer.compose(&zero).is_err());
        // but at a regular constant it works
        let two = RationalFunction::constant(rat_int(2));
        let v = outer.compose(&two).unwrap();
        assert_eq!(
            v,
            RationalFunction::constant(crate::algebra::scalar::rat(1, 2))
        );
    }

    #[test]
    fn compose_over_gauss() {
        // x^2 composed with (y-i)/(iy-1), reduced over Q(i)
        let i = GaussRat::i();
        let num = Poly::from_coeffs(vec![-i.clone(), GaussRat::one()]);
        let den = Poly::from_coeffs(vec![-GaussRat::one(), i.clone()]);
        let moebius = RationalFunction::new(num, den).unwrap();
        let sq = RationalFunction::from_poly(Poly::<GaussRat>::var().pow(2));
        let c = sq.compose(&moebius).unwrap();
        assert_eq!(c.map_degree(), 2);
        // the Moebius map is an involution up to this squaring: g(g(y)) = y
        let twice = moebius.compose(&moebius).unwrap();
        assert_eq!(twice, RationalFunction::var());
    }

    fn arb_rf() -> impl Strategy<Value = RationalFunction<Rat>> {
        (
            proptest::collection::vec(-4i64..5, 1..4),
            proptest::collection::vec(-4i64..5, 1..4),
        )
            .prop_filter_map("nonzero, nonconstant", |(n, d)| {
                let num = poly_i64(&n);
                let den = poly_i64(&d);
                if den.is_zero() || num.is_zero() {
                    return None;
                }
                let f = RationalFunction::new(num, den).ok()?;
                if f.is_constant() {
                    None
                } else {
                    Some(f)
                }
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn compose_is_associative(f in arb_rf(), g in arb_rf(), h in arb_rf()) {
            let lhs = f.compose(&g).unwrap().compose(&h).unwrap();
            let rhs = f.compose(&g.compose(&h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn compose_degree_multiplies(f in arb_rf(), g in arb_rf()) {
            let c = f.compose(&g).unwrap();
            prop_assert_eq!(c.map_degree(), f.map_degree() * g.map_degree());
        }
    }
}
