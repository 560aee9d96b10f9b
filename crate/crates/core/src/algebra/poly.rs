//! Dense univariate polynomials over an exact ring, with the field-level
//! algorithms the curve derivations need: euclidean division, gcd,
//! squarefree decomposition, Sylvester resultants and discriminants.
//!
//! Bivariate work (elimination of one variable from a pair of curves) reuses
//! the same type as `Poly<Poly<Rat>>`: the outer variable is the one being
//! eliminated and resultants stay fraction-free via Bareiss.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::algebra::scalar::{FieldScalar, GaussRat, Rat, Ring};
use crate::algebra::AlgebraError;

/// The factors of a squarefree decomposition: the leading constant and the
/// `(multiplicity, monic factor)` pairs in ascending multiplicity.
pub type SquarefreeFactors<K> = (K, Vec<(usize, Poly<K>)>);

/// Polynomial with coefficients in ascending degree order; no trailing zeros.
/// The zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Ring> Poly<K> {
    pub fn from_coeffs(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: K) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    /// The variable `x` itself.
    pub fn var() -> Self {
        Poly::monomial(K::one(), 1)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn constant_term(&self) -> K {
        self.coeff(0)
    }

    pub fn leading_coeff(&self) -> K {
        self.coeffs.last().cloned().unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut d = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            let mut m = K::zero();
            for _ in 0..k {
                m = m + c.clone();
            }
            d.push(m);
        }
        Poly::from_coeffs(d)
    }

    pub fn scale(&self, c: &K) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// Coefficient list reversed: `x^d * p(1/x)` for `d = deg p`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Poly::from_coeffs(coeffs)
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.reversed()
    }

    /// Substitute `num/den` for the variable and clear denominators:
    /// `den^d * p(num/den)` with `d = deg p`. The zero polynomial maps to zero.
    pub fn homogeneous_substitute(&self, num: &Poly<K>, den: &Poly<K>) -> Poly<K> {
        let d = match self.degree() {
            None => return Poly::zero(),
            Some(d) => d,
        };
        let mut acc = Poly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let term = num.pow(k) * den.pow(d - k) * Poly::constant(c.clone());
            acc = acc + term;
        }
        acc
    }

    pub fn map_coeffs<L: Ring>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }
}

impl<K: FieldScalar> Poly<K> {
    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Poly<K>) -> Result<(Poly<K>, Poly<K>), AlgebraError> {
        let dd = div.degree().ok_or(AlgebraError::DivisionByZeroPoly)?;
        let lc_inv = div
            .leading_coeff()
            .inv()
            .expect("nonzero polynomial has invertible leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() < div.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let qn = rem.len() - dd;
        let mut quo = vec![K::zero(); qn];
        for k in (0..qn).rev() {
            let c = rem[k + dd].clone() * lc_inv.clone();
            if c.is_zero() {
                continue;
            }
            quo[k] = c.clone();
            for (j, dcof) in div.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dcof.clone();
            }
        }
        Ok((Poly::from_coeffs(quo), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; error when the remainder is nonzero.
    pub fn exact_quotient(&self, div: &Poly<K>) -> Result<Poly<K>, AlgebraError> {
        let (q, r) = self.divrem(div)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Poly<K> {
        match self.leading_coeff().inv() {
            Some(inv) => self.scale(&inv),
            None => Poly::zero(),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly<K>) -> Poly<K> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let b_monic = b.monic();
            let (_, r) = a.divrem(&b_monic).expect("nonzero divisor");
            a = b_monic;
            b = r;
        }
        a.monic()
    }

    /// Squarefree decomposition by Yun's algorithm (characteristic zero):
    /// `p = c * prod f_i^{m_i}` with the `f_i` monic, squarefree and pairwise
    /// coprime. Returns `(c, [(m_i, f_i)])` in ascending multiplicity,
    /// omitting trivial factors.
    pub fn squarefree_decomposition(&self) -> Result<SquarefreeFactors<K>, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let c = self.leading_coeff();
        let f = self.monic();
        if f.is_constant() {
            return Ok((c, vec![]));
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.exact_quotient(&a0)?;
        let mut d = fp.exact_quotient(&a0)? - b.derivative();
        let mut out = Vec::new();
        let mut i = 1usize;
        while !b.is_constant() {
            let ai = b.gcd(&d);
            if ai.degree().is_some_and(|dg| dg > 0) {
                out.push((i, ai.clone()));
            }
            b = b.exact_quotient(&ai)?;
            d = d.exact_quotient(&ai)? - b.derivative();
            i += 1;
        }
        Ok((c, out))
    }

    /// The squarefree part (radical): product of the distinct factors.
    pub fn radical(&self) -> Result<Poly<K>, AlgebraError> {
        let (_, parts) = self.squarefree_decomposition()?;
        Ok(parts.into_iter().fold(Poly::one(), |acc, (_, f)| acc * f))
    }

    /// Test whether `p = c * s^2` for some polynomial `s` and constant `c`;
    /// returns `(true, s, c)` on success.
    pub fn square_up_to_constant(&self) -> Result<Option<(Poly<K>, K)>, AlgebraError> {
        let (c, parts) = self.squarefree_decomposition()?;
        let mut s = Poly::one();
        for (m, f) in parts {
            if m % 2 != 0 {
                return Ok(None);
            }
            s = s * f.pow(m / 2);
        }
        Ok(Some((s, c)))
    }

    /// Discriminant `(-1)^{d(d-1)/2} Res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> Result<K, AlgebraError> {
        let d = self.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        if d < 1 {
            return Err(AlgebraError::ResultantOfConstants);
        }
        let r = resultant(self, &self.derivative())?;
        let r = r
            .exact_div(&self.leading_coeff())
            .expect("leading coefficient divides the resultant");
        Ok(if (d * (d - 1) / 2) % 2 == 1 { -r } else { r })
    }
}

impl Poly<Rat> {
    /// Lift a rational polynomial into the Gaussian rationals.
    pub fn to_gauss(&self) -> Poly<GaussRat> {
        self.map_coeffs(|c| GaussRat::from_rat(c.clone()))
    }
}

impl Poly<GaussRat> {
    /// Project onto a rational polynomial; error if a coefficient is not real.
    pub fn to_rational(&self) -> Result<Poly<Rat>, AlgebraError> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.to_rat()?);
        }
        Ok(Poly::from_coeffs(out))
    }
}

/// Resultant of `p` and `q` as the determinant of their Sylvester matrix,
/// computed by fraction-free Bareiss elimination so that bivariate input
/// (`K = Poly<Rat>`) never leaves the polynomial ring.
pub fn resultant<K: Ring>(p: &Poly<K>, q: &Poly<K>) -> Result<K, AlgebraError> {
    let m = p.degree().ok_or(AlgebraError::ResultantOfConstants)?;
    let n = q.degree().ok_or(AlgebraError::ResultantOfConstants)?;
    if m == 0 && n == 0 {
        return Err(AlgebraError::ResultantOfConstants);
    }
    if m == 0 {
        return Ok(p.leading_coeff().pow_ring(n));
    }
    if n == 0 {
        return Ok(q.leading_coeff().pow_ring(m));
    }
    let size = m + n;
    let mut mat = vec![vec![K::zero(); size]; size];
    for r in 0..n {
        for (j, c) in p.coeffs.iter().rev().enumerate() {
            mat[r][r + j] = c.clone();
        }
    }
    for s in 0..m {
        for (j, c) in q.coeffs.iter().rev().enumerate() {
            mat[n + s][s + j] = c.clone();
        }
    }
    Ok(bareiss_determinant(mat))
}

trait RingPow {
    fn pow_ring(&self, e: usize) -> Self;
}

impl<K: Ring> RingPow for K {
    fn pow_ring(&self, e: usize) -> K {
        let mut acc = K::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// Fraction-free determinant (Bareiss). All divisions are exact over an
/// integral domain; row swaps flip the sign.
fn bareiss_determinant<K: Ring>(mut m: Vec<Vec<K>>) -> K {
    let n = m.len();
    if n == 0 {
        return K::one();
    }
    let mut sign_negative = false;
    let mut prev = K::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return K::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].clone() * m[i][j].clone() - m[i][k].clone() * m[k][j].clone();
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss elimination divides exactly");
            }
            m[i][k] = K::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

impl<K: Ring> Zero for Poly<K> {
    fn zero() -> Self {
        Poly { coeffs: vec![] }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<K: Ring> One for Poly<K> {
    fn one() -> Self {
        Poly::constant(K::one())
    }
}

impl<K: Ring> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Poly<K>) -> Poly<K> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Poly::from_coeffs(long)
    }
}

impl<K: Ring> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Poly<K>) -> Poly<K> {
        self + (-rhs)
    }
}

impl<K: Ring> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<K: Ring> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<K: FieldScalar> Ring for Poly<K> {
    fn exact_div(&self, rhs: &Self) -> Option<Self> {
        self.exact_quotient(rhs).ok()
    }
}

/// How a scalar renders inside a polynomial term.
pub trait CoeffDisplay {
    /// String placed before `*x^k`; parenthesized when composite.
    fn coeff_repr(&self) -> String;
    /// `Some(repr-of-negation)` when the value prints better after a `-`.
    fn negative_repr(&self) -> Option<String>;
}

impl CoeffDisplay for Rat {
    fn coeff_repr(&self) -> String {
        self.to_string()
    }
    fn negative_repr(&self) -> Option<String> {
        use num_traits::Signed;
        if self.is_negative() {
            Some((-self.clone()).to_string())
        } else {
            None
        }
    }
}

impl CoeffDisplay for GaussRat {
    fn coeff_repr(&self) -> String {
        if self.is_real() {
            self.re.to_string()
        } else {
            format!("({})", self)
        }
    }
    fn negative_repr(&self) -> Option<String> {
        use num_traits::Signed;
        if self.is_real() && self.re.is_negative() {
            Some((-self.re.clone()).to_string())
        } else {
            None
        }
    }
}

impl<K: Ring + CoeffDisplay> Poly<K> {
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sep, repr) = match c.negative_repr() {
                Some(r) => ("-", r),
                None => ("+", c.coeff_repr()),
            };
            if !s.is_empty() || sep == "-" {
                s.push_str(sep);
            }
            let unit_coeff = repr == "1";
            match (k, unit_coeff) {
                (0, _) => s.push_str(&repr),
                (1, true) => s.push_str(var),
                (1, false) => {
                    s.push_str(&repr);
                    s.push('*');
                    s.push_str(var);
                }
                (_, true) => {
                    s.push_str(&format!("{var}^{k}"));
                }
                (_, false) => {
                    s.push_str(&format!("{repr}*{var}^{k}"));
                }
            }
        }
        s
    }
}

impl<K: Ring + CoeffDisplay> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_var("x"))
    }
}

impl<K: fmt::Debug> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

/// Convenience: rational polynomial from integer coefficients, ascending.
pub fn poly_i64(coeffs: &[i64]) -> Poly<Rat> {
    Poly::from_coeffs(
        coeffs
            .iter()
            .map(|&c| Rat::from_integer(c.into()))
            .collect(),
    )
}
