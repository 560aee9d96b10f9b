//! Exact re-derivation of the quotient-curve equations: the hyperelliptic
//! models below the genus-4 curve, the change-of-variable identities, binary
//! quartic and Weierstrass invariants, the 3-division polynomial and a Velu
//! 3-isogeny.
//!
//! Radicals never appear: the conjugate-product trick squares them away, and
//! the square roots in the `(z, w)` rescalings enter only through squared
//! constants.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::poly::{poly_i64, resultant, Poly};
use crate::algebra::scalar::{rat_int, Rat, Ring};
use crate::algebra::AlgebraError;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("expected {0}")]
    WrongShape(String),
    #[error("two independent derivations disagree: {0}")]
    DerivationMismatch(String),
    #[error("identity fails at coefficient of x^{index}: {lhs} vs {rhs}")]
    IdentityMismatch {
        index: usize,
        lhs: String,
        rhs: String,
    },
    #[error("singular quartic: 4I^3 = J^2")]
    SingularQuartic,
    #[error("singular curve: discriminant is zero")]
    SingularCurve,
    #[error("point does not satisfy the curve equation")]
    NotOnCurve,
    #[error("{0} is not a root of the 3-division polynomial")]
    NotDivisionRoot(Rat),
    #[error("y-coordinate is irrational: discriminant {0} is not a rational square")]
    IrrationalY(Rat),
    #[error("kernel point does not have exact order 3")]
    KernelNotOrder3,
    #[error("j-invariant in {{0, 1728}}: extra automorphisms unsupported")]
    ExtraAutomorphisms,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `y^2 = P(x)` with squarefree P of degree 5 or 6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticModel {
    rhs: Poly<Rat>,
}

impl HyperellipticModel {
    pub fn new(rhs: Poly<Rat>) -> Result<Self, CurveError> {
        let d = rhs.degree().unwrap_or(0);
        if d != 5 && d != 6 {
            return Err(CurveError::WrongShape(format!(
                "degree 5 or 6 right-hand side, got {d}"
            )));
        }
        if rhs.gcd(&rhs.derivative()).degree() != Some(0) {
            return Err(CurveError::NotSquarefree);
        }
        Ok(HyperellipticModel { rhs })
    }

    pub fn rhs(&self) -> &Poly<Rat> {
        &self.rhs
    }

    /// Genus of `y^2 = P(x)`: 2 for degree 5 or 6.
    pub fn genus(&self) -> usize {
        (self.rhs.degree().unwrap_or(0) - 1) / 2
    }
}

/// Bivariate polynomials in `(s, t)`: outer variable `s`, inner `t`.
type BiPoly = Poly<Poly<Rat>>;

/// Monomial `c * s^i t^j`.
fn bi_monomial(c: i64, i: usize, j: usize) -> BiPoly {
    Poly::monomial(Poly::monomial(rat_int(c), j), i)
}

/// The symmetric quadratic `3 s^2 + 4 s t + 3 t^2` appearing in the
/// coordinate form of the curve equations.
fn coordinate_quadratic() -> BiPoly {
    bi_monomial(3, 2, 0) + bi_monomial(4, 1, 1) + bi_monomial(3, 0, 2)
}

/// `s^3 + 4 s^2 t + 4 s t^2 + t^3`.
fn coordinate_cubic() -> BiPoly {
    bi_monomial(1, 3, 0) + bi_monomial(4, 2, 1) + bi_monomial(4, 1, 2) + bi_monomial(1, 0, 3)
}

/// Collapse a homogeneous bivariate of total degree `d` to the univariate
/// polynomial in `x = s/t`. Errors if any monomial misses the degree.
fn dehomogenize(p: &BiPoly, d: usize) -> Result<Poly<Rat>, CurveError> {
    let mut out = vec![Rat::zero(); d + 1];
    for (i, inner) in p.coeffs().iter().enumerate() {
        for (j, c) in inner.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i + j != d {
                return Err(CurveError::DerivationMismatch(format!(
                    "elimination left a non-homogeneous term s^{i} t^{j}"
                )));
            }
            out[i] = c.clone();
        }
    }
    Ok(Poly::from_coeffs(out))
}

/// The sextic under the genus-2 model of the order-3 quotient, derived twice:
/// once as the conjugate product
/// `(20x^3+15x^2+15x+20)^2 - (4x^2+2x+4)^2 (-2x^2-x-2)`
/// and once by eliminating `t` from the polynomial system
/// `{3t^2 + 2t(x+1) + x^2+x+1, 4t^3 + 3t^2 + 2t + 1}`.
/// The two routes must agree up to a nonzero constant.
pub fn derive_z3_sextic() -> Result<Poly<Rat>, CurveError> {
    let u = poly_i64(&[20, 15, 15, 20]);
    let v = poly_i64(&[4, 2, 4]);
    let radicand = poly_i64(&[-2, -1, -2]);
    let product = u.clone() * u - v.clone() * v * radicand;

    // elimination route: coefficients are polynomials in x, outer variable t
    let quadratic_in_t: BiPoly = Poly::from_coeffs(vec![
        poly_i64(&[1, 1, 1]),
        poly_i64(&[2, 2]),
        poly_i64(&[3]),
    ]);
    let cubic_in_t: BiPoly = Poly::from_coeffs(vec![
        poly_i64(&[1]),
        poly_i64(&[2]),
        poly_i64(&[3]),
        poly_i64(&[4]),
    ]);
    let eliminated = resultant(&quadratic_in_t, &cubic_in_t)?;

    let scale = product
        .leading_coeff()
        .exact_div(&eliminated.leading_coeff())
        .ok_or_else(|| CurveError::DerivationMismatch("resultant vanished".into()))?;
    if eliminated.scale(&scale) != product {
        return Err(CurveError::DerivationMismatch(
            "conjugate product and resultant differ beyond a constant".into(),
        ));
    }
    Ok(product)
}

/// The two cubics whose product is the genus-2 model of the order-2
/// quotient. Each comes from one branch of the elimination: set one of the
/// two sign coordinates to zero, express its square from the quadratic
/// relation, push it through the cubic relation and dehomogenize.
pub fn derive_z2_cubics() -> Result<(Poly<Rat>, Poly<Rat>), CurveError> {
    let quad = coordinate_quadratic();
    let cubic = coordinate_cubic();
    // u4 = 0: u5^2 = -quad, cubic term -u3 u5^2 becomes + t * quad
    let first = dehomogenize(&(cubic.clone() + bi_monomial(1, 0, 1) * quad.clone()), 3)?;
    // u5 = 0: u4^2 = -quad, cubic term -u2 u4^2 becomes + s * quad
    let second = dehomogenize(&(cubic + bi_monomial(1, 1, 0) * quad), 3)?;
    Ok((first, second))
}

/// Check the exact polynomial identity
/// `lambda_sq * P(x) = (x+1)^deg * R((x-1)/(x+1))`
/// that transports a palindromic model to its even form.
pub fn substitution_identity(
    p: &Poly<Rat>,
    r: &Poly<Rat>,
    lambda_sq: &Rat,
) -> Result<(), CurveError> {
    if p.degree() != Some(6) || r.degree() != Some(6) {
        return Err(CurveError::WrongShape("two sextics".into()));
    }
    let lhs = p.scale(lambda_sq);
    let rhs = r.homogeneous_substitute(&poly_i64(&[-1, 1]), &poly_i64(&[1, 1]));
    if lhs == rhs {
        return Ok(());
    }
    for k in 0..=6 {
        if lhs.coeff(k) != rhs.coeff(k) {
            return Err(CurveError::IdentityMismatch {
                index: k,
                lhs: lhs.coeff(k).to_string(),
                rhs: rhs.coeff(k).to_string(),
            });
        }
    }
    unreachable!("polynomials that differ have a differing coefficient")
}

/// A binary quartic `a x^4 + b x^3 + c x^2 + d x + e` presenting a genus-1
/// curve `y^2 = quartic`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticModel {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
    pub e: Rat,
}

impl QuarticModel {
    pub fn from_poly(p: &Poly<Rat>) -> Result<Self, CurveError> {
        if p.degree() != Some(4) {
            return Err(CurveError::WrongShape("a quartic".into()));
        }
        Ok(QuarticModel {
            a: p.coeff(4),
            b: p.coeff(3),
            c: p.coeff(2),
            d: p.coeff(1),
            e: p.coeff(0),
        })
    }

    pub fn to_poly(&self) -> Poly<Rat> {
        Poly::from_coeffs(vec![
            self.e.clone(),
            self.d.clone(),
            self.c.clone(),
            self.b.clone(),
            self.a.clone(),
        ])
    }

    /// Classical invariant `I = 12ae - 3bd + c^2`.
    pub fn invariant_i(&self) -> Rat {
        rat_int(12) * &self.a * &self.e - rat_int(3) * &self.b * &self.d + &self.c * &self.c
    }

    /// Classical invariant
    /// `J = 72ace + 9bcd - 27ad^2 - 27eb^2 - 2c^3`.
    pub fn invariant_j(&self) -> Rat {
        rat_int(72) * &self.a * &self.c * &self.e + rat_int(9) * &self.b * &self.c * &self.d
            - rat_int(27) * &self.a * &self.d * &self.d
            - rat_int(27) * &self.e * &self.b * &self.b
            - rat_int(2) * &self.c * &self.c * &self.c
    }

    /// j-invariant of the Jacobian: `6912 I^3 / (4I^3 - J^2)`.
    pub fn j_invariant(&self) -> Result<Rat, CurveError> {
        let i = self.invariant_i();
        let j = self.invariant_j();
        let i3 = &i * &i * &i;
        let denom = rat_int(4) * &i3 - &j * &j;
        if denom.is_zero() {
            return Err(CurveError::SingularQuartic);
        }
        Ok(rat_int(6912) * i3 / denom)
    }
}

/// Fold an even sextic `z^6 + A z^4 + B z^2 + C` into the quartic model
/// `y^2 = x (x^3 + A x^2 + B x + C)` of the quotient by `z -> -z`.
pub fn even_quotient_model(r: &Poly<Rat>) -> Result<QuarticModel, CurveError> {
    if r.degree() != Some(6) || !r.leading_coeff().is_one() {
        return Err(CurveError::WrongShape("a monic sextic".into()));
    }
    for k in [1, 3, 5] {
        if !r.coeff(k).is_zero() {
            return Err(CurveError::WrongShape(format!(
                "only even terms (found x^{k})"
            )));
        }
    }
    Ok(QuarticModel {
        a: Rat::one(),
        b: r.coeff(4),
        c: r.coeff(2),
        d: r.coeff(0),
        e: Rat::zero(),
    })
}

/// A long Weierstrass model `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`,
/// nonsingular by construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: Rat,
    pub a2: Rat,
    pub a3: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

/// The standard derived quantities of a Weierstrass model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassInvariants {
    pub b2: Rat,
    pub b4: Rat,
    pub b6: Rat,
    pub b8: Rat,
    pub c4: Rat,
    pub c6: Rat,
    pub disc: Rat,
    pub j: Rat,
}

impl WeierstrassCurve {
    pub fn new(a1: i64, a2: i64, a3: i64, a4: i64, a6: i64) -> Result<Self, CurveError> {
        WeierstrassCurve::from_rats(
            rat_int(a1),
            rat_int(a2),
            rat_int(a3),
            rat_int(a4),
            rat_int(a6),
        )
    }

    pub fn from_rats(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<Self, CurveError> {
        let curve = WeierstrassCurve { a1, a2, a3, a4, a6 };
        if curve.raw_disc().is_zero() {
            return Err(CurveError::SingularCurve);
        }
        Ok(curve)
    }

    fn b2(&self) -> Rat {
        &self.a1 * &self.a1 + rat_int(4) * &self.a2
    }

    fn b4(&self) -> Rat {
        rat_int(2) * &self.a4 + &self.a1 * &self.a3
    }

    fn b6(&self) -> Rat {
        &self.a3 * &self.a3 + rat_int(4) * &self.a6
    }

    fn b8(&self) -> Rat {
        &self.a1 * &self.a1 * &self.a6 + rat_int(4) * &self.a2 * &self.a6
            - &self.a1 * &self.a3 * &self.a4
            + &self.a2 * &self.a3 * &self.a3
            - &self.a4 * &self.a4
    }

    fn raw_disc(&self) -> Rat {
        let (b2, b4, b6, b8) = (self.b2(), self.b4(), self.b6(), self.b8());
        -&b2 * &b2 * &b8 - rat_int(8) * &b4 * &b4 * &b4 - rat_int(27) * &b6 * &b6
            + rat_int(9) * &b2 * &b4 * &b6
    }

    /// All derived quantities, recomputed on demand (never cached).
    pub fn invariants(&self) -> WeierstrassInvariants {
        let b2 = self.b2();
        let b4 = self.b4();
        let b6 = self.b6();
        let b8 = self.b8();
        let c4 = &b2 * &b2 - rat_int(24) * &b4;
        let c6 = -&b2 * &b2 * &b2 + rat_int(36) * &b2 * &b4 - rat_int(216) * &b6;
        let disc = self.raw_disc();
        debug_assert_eq!(rat_int(4) * &b8, &b2 * &b6 - &b4 * &b4);
        debug_assert_eq!(rat_int(1728) * &disc, &c4 * &c4 * &c4 - &c6 * &c6);
        let j = &c4 * &c4 * &c4 / &disc;
        WeierstrassInvariants {
            b2,
            b4,
            b6,
            b8,
            c4,
            c6,
            disc,
            j,
        }
    }

    /// The 3-division polynomial
    /// `psi_3(x) = 3x^4 + b2 x^3 + 3 b4 x^2 + 3 b6 x + b8`,
    /// whose roots are the x-coordinates of the nontrivial 3-torsion.
    pub fn division_poly_3(&self) -> Poly<Rat> {
        Poly::from_coeffs(vec![
            self.b8(),
            rat_int(3) * self.b6(),
            rat_int(3) * self.b4(),
            self.b2(),
            rat_int(3),
        ])
    }

    fn rhs_at(&self, x: &Rat) -> Rat {
        x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        match p {
            RationalPoint::Infinity => true,
            RationalPoint::Affine(x, y) => {
                y * y + &self.a1 * x * y + &self.a3 * y == self.rhs_at(x)
            }
        }
    }

    pub fn negate(&self, p: &RationalPoint) -> RationalPoint {
        match p {
            RationalPoint::Infinity => RationalPoint::Infinity,
            RationalPoint::Affine(x, y) => {
                RationalPoint::Affine(x.clone(), -y.clone() - &self.a1 * x - &self.a3)
            }
        }
    }

    /// Group law in the long Weierstrass model.
    pub fn add(&self, p: &RationalPoint, q: &RationalPoint) -> Result<RationalPoint, CurveError> {
        if !self.contains(p) || !self.contains(q) {
            return Err(CurveError::NotOnCurve);
        }
        let (x1, y1) = match p {
            RationalPoint::Infinity => return Ok(q.clone()),
            RationalPoint::Affine(x, y) => (x.clone(), y.clone()),
        };
        let (x2, y2) = match q {
            RationalPoint::Infinity => return Ok(p.clone()),
            RationalPoint::Affine(x, y) => (x.clone(), y.clone()),
        };
        let lambda = if x1 == x2 {
            if self.negate(p) == *q {
                return Ok(RationalPoint::Infinity);
            }
            let denom = rat_int(2) * &y1 + &self.a1 * &x1 + &self.a3;
            (rat_int(3) * &x1 * &x1 + rat_int(2) * &self.a2 * &x1 + &self.a4 - &self.a1 * &y1)
                / denom
        } else {
            (&y2 - &y1) / (&x2 - &x1)
        };
        let nu = &y1 - &lambda * &x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - &x1 - &x2;
        let y3 = -(&lambda + &self.a1) * &x3 - &nu - &self.a3;
        Ok(RationalPoint::Affine(x3, y3))
    }

    pub fn multiply(&self, p: &RationalPoint, n: usize) -> Result<RationalPoint, CurveError> {
        let mut acc = RationalPoint::Infinity;
        for _ in 0..n {
            acc = self.add(&acc, p)?;
        }
        Ok(acc)
    }
}

/// Serializable curve report: the equation and the derived quantities as
/// exact fractions in string form.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CurveReport {
    pub equation: String,
    pub b2: String,
    pub b4: String,
    pub b6: String,
    pub b8: String,
    pub c4: String,
    pub c6: String,
    pub disc: String,
    pub j: String,
}

impl WeierstrassCurve {
    pub fn report(&self) -> CurveReport {
        let inv = self.invariants();
        CurveReport {
            equation: self.to_string(),
            b2: inv.b2.to_string(),
            b4: inv.b4.to_string(),
            b6: inv.b6.to_string(),
            b8: inv.b8.to_string(),
            c4: inv.c4.to_string(),
            c6: inv.c6.to_string(),
            disc: inv.disc.to_string(),
            j: inv.j.to_string(),
        }
    }
}

impl std::fmt::Display for WeierstrassCurve {
    /// Equation form, e.g. `y^2 + x*y + y = x^3 + 549*x - 2202`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn push_term(out: &mut String, coef: &Rat, monomial: &str) {
            if coef.is_zero() {
                return;
            }
            let (sign, mag) = if coef.is_negative() {
                ("-", -coef.clone())
            } else {
                ("+", coef.clone())
            };
            out.push_str(&format!(" {sign} "));
            if monomial.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(monomial);
            } else {
                out.push_str(&format!("{mag}*{monomial}"));
            }
        }
        let mut lhs = String::from("y^2");
        push_term(&mut lhs, &self.a1, "x*y");
        push_term(&mut lhs, &self.a3, "y");
        let mut rhs = String::from("x^3");
        push_term(&mut rhs, &self.a2, "x^2");
        push_term(&mut rhs, &self.a4, "x");
        push_term(&mut rhs, &self.a6, "");
        write!(f, "{lhs} = {rhs}")
    }
}

/// An exact rational point: affine coordinates or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalPoint {
    Affine(Rat, Rat),
    Infinity,
}

impl std::fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RationalPoint::Infinity => write!(f, "O"),
            RationalPoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

impl RationalPoint {
    pub fn affine_i64(x: i64, y: i64) -> Self {
        RationalPoint::Affine(rat_int(x), rat_int(y))
    }
}

/// Integer square root test for rationals.
fn sqrt_rat(q: &Rat) -> Option<Rat> {
    if q.is_negative() {
        return None;
    }
    let ns = q.numer().sqrt();
    let ds = q.denom().sqrt();
    if &(&ns * &ns) == q.numer() && &(&ds * &ds) == q.denom() {
        Some(Rat::new(ns, ds))
    } else {
        None
    }
}

/// Rational roots of a polynomial by the rational-root theorem over the
/// divisors of the (integerized) constant and leading coefficients. Suitable
/// for the small division polynomials handled here.
pub fn rational_roots(p: &Poly<Rat>) -> Vec<Rat> {
    if p.is_zero() || p.is_constant() {
        return vec![];
    }
    // clear denominators
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        let d = c.denom();
        let g = num_integer::Integer::gcd(&lcm, d);
        lcm = &lcm / g * d;
    }
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rat::from_integer(lcm.clone())).to_integer())
        .collect();
    let mut roots = Vec::new();
    // factor out x^k
    let low = ints.iter().position(|c| !c.is_zero()).unwrap_or(0);
    if low > 0 {
        roots.push(Rat::zero());
    }
    let constant = ints[low].magnitude().clone();
    let leading = ints.last().expect("nonzero").magnitude().clone();
    for p_div in divisors(&constant) {
        for q_div in divisors(&leading) {
            for sign in [1i64, -1] {
                let cand = Rat::new(BigInt::from(sign) * &p_div, q_div.clone());
                if p.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: &num_bigint::BigUint) -> Vec<BigInt> {
    let n: u64 = n.try_into().unwrap_or(u64::MAX);
    let mut out = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}

/// Solve for a rational point with the given 3-division x-coordinate.
/// Errors if `x0` is not a division-polynomial root or the y-coordinate is
/// irrational (carrying the offending discriminant).
pub fn three_torsion_point(
    curve: &WeierstrassCurve,
    x0: &Rat,
) -> Result<RationalPoint, CurveError> {
    if !curve.division_poly_3().eval(x0).is_zero() {
        return Err(CurveError::NotDivisionRoot(x0.clone()));
    }
    // y^2 + (a1 x0 + a3) y - rhs(x0) = 0
    let b = &curve.a1 * x0 + &curve.a3;
    let c = -curve.rhs_at(x0);
    let disc = &b * &b - rat_int(4) * &c;
    let root = sqrt_rat(&disc).ok_or(CurveError::IrrationalY(disc.clone()))?;
    let y = (-&b + root) / rat_int(2);
    let point = RationalPoint::Affine(x0.clone(), y);
    debug_assert!(curve.contains(&point));
    Ok(point)
}

/// A 3-isogeny between explicit Weierstrass models; the map itself is not
/// materialized, only the codomain and the degree bookkeeping.
#[derive(Clone, Debug)]
pub struct ThreeIsogeny {
    pub domain: WeierstrassCurve,
    pub codomain: WeierstrassCurve,
}

impl ThreeIsogeny {
    pub fn degree(&self) -> usize {
        3
    }

    /// The dual isogeny runs backwards with the same degree.
    pub fn dual(&self) -> ThreeIsogeny {
        ThreeIsogeny {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
        }
    }

    /// Degree of a composition of isogenies.
    pub fn compose_degree(&self, other: &ThreeIsogeny) -> usize {
        self.degree() * other.degree()
    }
}

/// Velu's formulas for the quotient by the odd subgroup `{O, P, -P}` of an
/// order-3 point: with `gx = 3x^2 + 2 a2 x + a4 - a1 y`,
/// `gy = -2y - a1 x - a3`, `v = 2 gx - a1 gy` and `w = gy^2 + v x`,
/// the codomain is `[a1, a2, a3, a4 - 5v, a6 - b2 v - 7w]`.
pub fn velu_3_isogeny(
    curve: &WeierstrassCurve,
    kernel: &RationalPoint,
) -> Result<ThreeIsogeny, CurveError> {
    let (x, y) = match kernel {
        RationalPoint::Infinity => return Err(CurveError::KernelNotOrder3),
        RationalPoint::Affine(x, y) => (x.clone(), y.clone()),
    };
    if !curve.contains(kernel) {
        return Err(CurveError::NotOnCurve);
    }
    if curve.multiply(kernel, 3)? != RationalPoint::Infinity {
        return Err(CurveError::KernelNotOrder3);
    }
    let gx = rat_int(3) * &x * &x + rat_int(2) * &curve.a2 * &x + &curve.a4 - &curve.a1 * &y;
    let gy = rat_int(-2) * &y - &curve.a1 * &x - &curve.a3;
    let v = rat_int(2) * &gx - &curve.a1 * &gy;
    let w = &gy * &gy + &v * &x;
    let codomain = WeierstrassCurve::from_rats(
        curve.a1.clone(),
        curve.a2.clone(),
        curve.a3.clone(),
        &curve.a4 - rat_int(5) * &v,
        &curve.a6 - curve.b2() * &v - rat_int(7) * &w,
    )?;
    Ok(ThreeIsogeny {
        domain: curve.clone(),
        codomain,
    })
}

/// Test for isomorphism over the rationals away from `j` 0 and 1728:
/// a rational `u` with `c4' = u^4 c4` and `c6' = u^6 c6`. Returns the
/// (positive) twist scalar when the curves are isomorphic.
pub fn isomorphic_over_q(
    e1: &WeierstrassCurve,
    e2: &WeierstrassCurve,
) -> Result<Option<Rat>, CurveError> {
    let i1 = e1.invariants();
    let i2 = e2.invariants();
    if i1.j.is_zero() || i2.j.is_zero() || i1.j == rat_int(1728) || i2.j == rat_int(1728) {
        return Err(CurveError::ExtraAutomorphisms);
    }
    // u^2 from the ratio of ratios; j != 0, 1728 makes c4, c6 nonzero
    let c4_ratio = &i2.c4 / &i1.c4;
    let c6_ratio = &i2.c6 / &i1.c6;
    let u_squared = &c6_ratio / &c4_ratio;
    let u = match sqrt_rat(&u_squared) {
        Some(u) => u,
        None => return Ok(None),
    };
    if &u_squared * &u_squared == c4_ratio && &u_squared * &u_squared * &u_squared == c6_ratio {
        Ok(Some(u))
    } else {
        Ok(None)
    }
}

/// Prime support of the numerator and denominator of a rational number
/// (trial division; the discriminants here are small).
pub fn prime_support(q: &Rat) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for part in [q.numer().magnitude().clone(), q.denom().magnitude().clone()] {
        let mut n: u64 = (&part).try_into().unwrap_or(u64::MAX);
        let mut p = 2u64;
        while p.saturating_mul(p) <= n {
            if n.is_multiple_of(p) {
                out.insert(p);
                while n.is_multiple_of(p) {
                    n /= p;
                }
            }
            p += 1;
        }
        if n > 1 {
            out.insert(n);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn z3_sextic_expected() -> Poly<Rat> {
        poly_i64(&[432, 648, 945, 1350, 945, 648, 432])
    }

    #[test]
    fn z3_sextic_both_routes() {
        let p = derive_z3_sextic().unwrap();
        assert_eq!(p, z3_sextic_expected());
        assert!(p.is_palindromic());
    }

    #[test]
    fn z3_resultant_route_constant() {
        // the resultant itself is exactly 1/27 of the sextic
        let quadratic_in_t: BiPoly = Poly::from_coeffs(vec![
            poly_i64(&[1, 1, 1]),
            poly_i64(&[2, 2]),
            poly_i64(&[3]),
        ]);
        let cubic_in_t: BiPoly = Poly::from_coeffs(vec![
            poly_i64(&[1]),
            poly_i64(&[2]),
            poly_i64(&[3]),
            poly_i64(&[4]),
        ]);
        let r = resultant(&quadratic_in_t, &cubic_in_t).unwrap();
        assert_eq!(r.scale(&rat_int(27)), z3_sextic_expected());
        assert_eq!(r, poly_i64(&[16, 24, 35, 50, 35, 24, 16]));
    }

    #[test]
    fn z2_cubics_and_product() {
        let (first, second) = derive_z2_cubics().unwrap();
        assert_eq!(first, poly_i64(&[4, 8, 7, 1]));
        assert_eq!(second, poly_i64(&[1, 7, 8, 4]));
        let product = first.clone() * second.clone();
        assert_eq!(product, poly_i64(&[4, 36, 95, 130, 95, 36, 4]));
        // the factors are exchanged by coefficient reversal (x -> 1/x)
        assert_eq!(first.reversed(), second);
    }

    #[test]
    fn substitution_identities() {
        let p_z3 = z3_sextic_expected();
        let r_z3 = poly_i64(&[50, 0, 125, 0, 80, 0, 1]);
        substitution_identity(&p_z3, &r_z3, &rat(16, 27)).unwrap();

        let q_z2 = poly_i64(&[4, 36, 95, 130, 95, 36, 4]);
        let r_z2 = poly_i64(&[-100, 0, 25, 0, 10, 0, 1]);
        substitution_identity(&q_z2, &r_z2, &rat_int(-16)).unwrap();

        // wrong target reports the first differing coefficient
        let wrong = poly_i64(&[49, 0, 125, 0, 80, 0, 1]);
        let err = substitution_identity(&p_z3, &wrong, &rat(16, 27)).unwrap_err();
        assert!(matches!(err, CurveError::IdentityMismatch { index: 0, .. }));
    }

    #[test]
    fn hyperelliptic_models_are_squarefree() {
        let m = HyperellipticModel::new(z3_sextic_expected()).unwrap();
        assert_eq!(m.genus(), 2);
        let sq = poly_i64(&[1, 1]).pow(2) * poly_i64(&[0, 0, 0, 0, 1]);
        assert!(matches!(
            HyperellipticModel::new(sq),
            Err(CurveError::NotSquarefree)
        ));
    }

    #[test]
    fn even_quotient_models() {
        let q = even_quotient_model(&poly_i64(&[50, 0, 125, 0, 80, 0, 1])).unwrap();
        assert_eq!(q.to_poly(), poly_i64(&[0, 50, 125, 80, 1]));
        let q2 = even_quotient_model(&poly_i64(&[-100, 0, 25, 0, 10, 0, 1])).unwrap();
        assert_eq!(q2.to_poly(), poly_i64(&[0, -100, 25, 10, 1]));
        let q3 = even_quotient_model(&poly_i64(&[0, 0, 0, 0, 0, 0, 1])).unwrap();
        assert_eq!(q3.to_poly(), poly_i64(&[0, 0, 0, 0, 1]));
        assert!(even_quotient_model(&poly_i64(&[0, 1, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn quartic_invariants_and_j() {
        let v4 = even_quotient_model(&poly_i64(&[-100, 0, 25, 0, 10, 0, 1])).unwrap();
        assert_eq!(v4.invariant_i(), rat_int(3625));
        assert_eq!(v4.invariant_j(), rat_int(-526250));
        assert_eq!(v4.j_invariant().unwrap(), rat(-121945, 32));

        let s3 = even_quotient_model(&poly_i64(&[50, 0, 125, 0, 80, 0, 1])).unwrap();
        assert_eq!(s3.invariant_i(), rat_int(3625));
        assert_eq!(s3.invariant_j(), rat_int(526250));
        assert_eq!(s3.j_invariant().unwrap(), rat(-121945, 32));

        // lemniscatic control: x^4 + 1 has I = 12, J = 0, j = 1728
        let lem = QuarticModel::from_poly(&poly_i64(&[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(lem.invariant_i(), rat_int(12));
        assert_eq!(lem.invariant_j(), rat_int(0));
        assert_eq!(lem.j_invariant().unwrap(), rat_int(1728));
    }

    #[test]
    fn quartic_j_invariant_under_z_scaling() {
        // scaling z by a nonzero rational rescales the sextic; j must not move
        let base = poly_i64(&[-100, 0, 25, 0, 10, 0, 1]);
        let j0 = even_quotient_model(&base).unwrap().j_invariant().unwrap();
        for s in [rat_int(2), rat(1, 3), rat_int(-5)] {
            // R_s(z) = R(s z) / s^6, still a monic even sextic
            let s2 = &s * &s;
            let scaled = Poly::from_coeffs(
                (0..=6)
                    .map(|k| {
                        let sk = (0..k).fold(Rat::one(), |acc, _| acc * &s);
                        base.coeff(k) * sk / (&s2 * &s2 * &s2)
                    })
                    .collect(),
            );
            let j1 = even_quotient_model(&scaled).unwrap().j_invariant().unwrap();
            assert_eq!(j0, j1, "scaling by {s}");
        }
    }

    #[test]
    fn weierstrass_invariants_of_both_curves() {
        let e = WeierstrassCurve::new(1, 0, 1, -76, 298).unwrap();
        let inv = e.invariants();
        assert_eq!(inv.b2, rat_int(1));
        assert_eq!(inv.b4, rat_int(-151));
        assert_eq!(inv.b6, rat_int(1193));
        assert_eq!(inv.b8, rat_int(-5402));
        assert_eq!(inv.c4, rat_int(3625));
        assert_eq!(inv.c6, rat_int(-263125));
        assert_eq!(inv.disc, rat_int(-12_500_000));
        assert_eq!(inv.j, rat(-121945, 32));

        let e2 = WeierstrassCurve::new(1, 0, 1, 549, -2202).unwrap();
        assert_eq!(e2.invariants().j, rat(46_969_655, 32_768));

        let cubic = WeierstrassCurve::new(0, 0, 0, 0, -1).unwrap();
        assert_eq!(cubic.invariants().j, rat_int(0));

        assert!(matches!(
            WeierstrassCurve::new(0, 0, 0, 0, 0),
            Err(CurveError::SingularCurve)
        ));
    }

    #[test]
    fn division_polynomial_and_roots() {
        let e = WeierstrassCurve::new(1, 0, 1, -76, 298).unwrap();
        let psi3 = e.division_poly_3();
        assert_eq!(psi3, poly_i64(&[-5402, 3579, -453, 1, 3]));
        assert_eq!(rational_roots(&psi3), vec![rat_int(2)]);

        let simple = WeierstrassCurve::new(0, 0, 0, 0, 1).unwrap();
        assert_eq!(simple.division_poly_3(), poly_i64(&[0, 12, 0, 0, 3]));
        assert!(rational_roots(&simple.division_poly_3()).contains(&rat_int(0)));
    }

    #[test]
    fn torsion_point_and_group_law() {
        let e = WeierstrassCurve::new(1, 0, 1, -76, 298).unwrap();
        let p = three_torsion_point(&e, &rat_int(2)).unwrap();
        assert_eq!(p, RationalPoint::affine_i64(2, 11));
        // the other root of y^2 + 3y - 154 is the negation
        assert_eq!(e.negate(&p), RationalPoint::affine_i64(2, -14));
        // order exactly 3 under the group law
        assert_ne!(e.multiply(&p, 1).unwrap(), RationalPoint::Infinity);
        assert_ne!(e.multiply(&p, 2).unwrap(), RationalPoint::Infinity);
        assert_eq!(e.multiply(&p, 3).unwrap(), RationalPoint::Infinity);
        // x = 3 is not a division root
        assert!(matches!(
            three_torsion_point(&e, &rat_int(3)),
            Err(CurveError::NotDivisionRoot(_))
        ));
    }

    #[test]
    fn velu_reaches_the_expected_codomain() {
        let e = WeierstrassCurve::new(1, 0, 1, -76, 298).unwrap();
        let p = three_torsion_point(&e, &rat_int(2)).unwrap();
        let isogeny = velu_3_isogeny(&e, &p).unwrap();
        let expected = WeierstrassCurve::new(1, 0, 1, 549, -2202).unwrap();
        assert_eq!(isogeny.codomain, expected);
        // same codomain from the negated kernel point
        let q = e.negate(&p);
        assert_eq!(velu_3_isogeny(&e, &q).unwrap().codomain, expected);
        // degree bookkeeping: composing with the dual gives degree 9
        assert_eq!(isogeny.compose_degree(&isogeny.dual()), 9);
        // kernel at infinity rejected
        assert!(matches!(
            velu_3_isogeny(&e, &RationalPoint::Infinity),
            Err(CurveError::KernelNotOrder3)
        ));
        // a non-torsion point rejected
        assert!(velu_3_isogeny(&e, &RationalPoint::affine_i64(2, -11)).is_err());
    }

    #[test]
    fn q_isomorphism() {
        let e = WeierstrassCurve::new(1, 0, 1, -76, 298).unwrap();
        let e2 = WeierstrassCurve::new(1, 0, 1, 549, -2202).unwrap();
        let velu = velu_3_isogeny(&e, &three_torsion_point(&e, &rat_int(2)).unwrap())
            .unwrap()
            .codomain;
        assert_eq!(isomorphic_over_q(&velu, &e2).unwrap(), Some(rat_int(1)));
        assert_eq!(isomorphic_over_q(&e, &e2).unwrap(), None);
        assert_eq!(isomorphic_over_q(&e, &e).unwrap(), Some(rat_int(1)));
        // the short model y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic with u = 6
        let short = WeierstrassCurve::from_rats(
            rat_int(0),
            rat_int(0),
            rat_int(0),
            rat_int(-27) * e.invariants().c4,
            rat_int(-54) * e.invariants().c6,
        )
        .unwrap();
        assert_eq!(isomorphic_over_q(&e, &short).unwrap(), Some(rat_int(6)));
        let j0 = WeierstrassCurve::new(0, 0, 0, 0, -1).unwrap();
        assert!(matches!(
            isomorphic_over_q(&j0, &e),
            Err(CurveError::ExtraAutomorphisms)
        ));
    }

    #[test]
    fn velu_discriminant_support() {
        let e = WeierstrassCurve::new(1, 0, 1, -76, 298).unwrap();
        let p = three_torsion_point(&e, &rat_int(2)).unwrap();
        let cod = velu_3_isogeny(&e, &p).unwrap().codomain;
        let dom_support = prime_support(&e.invariants().disc);
        let cod_support = prime_support(&cod.invariants().disc);
        // kernel is integral, so no new primes may appear
        assert!(cod_support.is_subset(&dom_support));
        assert_eq!(dom_support, BTreeSet::from([2, 5]));
    }
}
