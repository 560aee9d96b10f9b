//! Exact arithmetic: arbitrary-precision rationals, Gaussian rationals,
//! polynomials and rational functions, resultants and squarefree structure.

pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod scalar;

pub use parse::{parse_expr, parse_poly, parse_ratfunc};
pub use poly::{poly_i64, resultant, Poly};
pub use ratfunc::RationalFunction;
pub use scalar::{rat, rat_int, FieldScalar, GaussRat, Rat, Ring};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("operation on the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("division left a nonzero remainder")]
    InexactDivision,
    #[error("resultant of two constants is undefined")]
    ResultantOfConstants,
    #[error("composition evaluates a pole")]
    ComposeAtPole,
    #[error("value has a nonzero imaginary part: {0}")]
    NotReal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// The Bring-form discriminant `256 a^5 + 3125 b^4` of `x^5 + a x + b`.
pub fn discriminant_bring(a: &Rat, b: &Rat) -> Rat {
    let a5 = a * a * a * a * a;
    let b4 = b * b * b * b;
    rat_int(256) * a5 + rat_int(3125) * b4
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bring_discriminant_matches_resultant_oracle() {
        // disc(x^5 + a x + b) computed independently through Res(p, p')
        for (a, b) in [(0i64, 1i64), (-1, 0), (0, 0), (2, 3), (-3, 5)] {
            let p = Poly::from_coeffs(vec![
                rat_int(b),
                rat_int(a),
                rat_int(0),
                rat_int(0),
                rat_int(0),
                rat_int(1),
            ]);
            let want = discriminant_bring(&rat_int(a), &rat_int(b));
            if a == 0 && b == 0 {
                assert_eq!(want, rat_int(0));
                continue;
            }
            assert_eq!(p.discriminant().unwrap(), want, "a={a} b={b}");
        }
    }
}
