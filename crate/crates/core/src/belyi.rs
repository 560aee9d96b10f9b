//! Ramification passports of exact rational maps, Belyi certification, and
//! the decomposition identities between the explicit quotient maps.
//!
//! The point at infinity is handled as an explicit fiber member by one
//! degree-comparison rule, never by coordinate flips: a map of degree 12 with
//! a degree-7 denominator has a pole of order 5 at infinity.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::poly::{CoeffDisplay, Poly};
use crate::algebra::ratfunc::RationalFunction;
use crate::algebra::scalar::{FieldScalar, GaussRat, Rat};
use crate::algebra::{parse_expr, parse_ratfunc, AlgebraError};
use crate::dessin::Dessin;

#[derive(Debug, Error)]
pub enum BelyiError {
    #[error("a constant map has no ramification profile")]
    ConstantMap,
    #[error("rational functions differ: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Multiplicities of the preimages of 0, 1 and infinity, each multiset
/// sorted descending and summing to the map degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamificationProfile {
    pub over0: Vec<usize>,
    pub over1: Vec<usize>,
    pub over_inf: Vec<usize>,
}

impl RamificationProfile {
    pub fn degree(&self) -> usize {
        self.over0.iter().sum()
    }

    /// Sum of (multiplicity - 1) across all three fibers.
    pub fn ramification_excess(&self) -> usize {
        [&self.over0, &self.over1, &self.over_inf]
            .iter()
            .flat_map(|v| v.iter())
            .map(|&m| m - 1)
            .sum()
    }
}

fn fiber_side(v: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut idx = 0;
    while idx < v.len() {
        let mut run = 1;
        while idx + run < v.len() && v[idx + run] == v[idx] {
            run += 1;
        }
        if run >= 3 {
            parts.push(format!("{}*{}", v[idx], run));
        } else {
            for _ in 0..run {
                parts.push(v[idx].to_string());
            }
        }
        idx += run;
    }
    parts.join("+")
}

impl fmt::Display for RamificationProfile {
    /// One line per fiber: `0: 5+5+1+1 | 1: 2*6 | inf: 5+5+1+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "0: {} | 1: {} | inf: {}",
            fiber_side(&self.over0),
            fiber_side(&self.over1),
            fiber_side(&self.over_inf)
        )
    }
}

/// Multiplicities of the roots of `p` (over the algebraic closure), from the
/// squarefree decomposition: a factor of degree d and multiplicity m
/// contributes d copies of m.
fn root_multiplicities<K: FieldScalar>(p: &Poly<K>) -> Result<Vec<usize>, AlgebraError> {
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let (_, parts) = p.squarefree_decomposition()?;
    for (m, f) in parts {
        let d = f.degree().unwrap_or(0);
        out.extend(std::iter::repeat_n(m, d));
    }
    Ok(out)
}

/// Ramification profile of a nonconstant rational map over 0, 1, infinity.
pub fn ramification_profile<K: FieldScalar>(
    f: &RationalFunction<K>,
) -> Result<RamificationProfile, BelyiError> {
    if f.is_constant() {
        return Err(BelyiError::ConstantMap);
    }
    let deg = f.map_degree();
    let num = f.num_poly();
    let den = f.den_poly();
    let dn = num.degree().unwrap_or(0);
    let dd = den.degree().unwrap_or(0);

    let mut over0 = root_multiplicities(num)?;
    if dn < deg {
        over0.push(deg - dn); // zero of that order at infinity
    }
    let mut over_inf = root_multiplicities(den)?;
    if dd < deg {
        over_inf.push(deg - dd); // pole of that order at infinity
    }
    let diff = num.clone() - den.clone();
    let mut over1 = root_multiplicities(&diff)?;
    let ddiff = diff.degree().unwrap_or(0);
    if ddiff < deg {
        over1.push(deg - ddiff); // f(inf) = 1 to that order
    }

    over0.sort_unstable_by(|a, b| b.cmp(a));
    over1.sort_unstable_by(|a, b| b.cmp(a));
    over_inf.sort_unstable_by(|a, b| b.cmp(a));
    let profile = RamificationProfile {
        over0,
        over1,
        over_inf,
    };
    debug_assert_eq!(profile.over0.iter().sum::<usize>(), deg);
    debug_assert_eq!(profile.over1.iter().sum::<usize>(), deg);
    debug_assert_eq!(profile.over_inf.iter().sum::<usize>(), deg);
    Ok(profile)
}

/// Belyi criterion for genus-0 maps: the three fibers exhaust the
/// Riemann-Hurwitz budget `2 deg - 2`, leaving no room for critical values
/// outside `{0, 1, inf}`.
pub fn is_belyi_genus0<K: FieldScalar>(f: &RationalFunction<K>) -> Result<bool, BelyiError> {
    let profile = ramification_profile(f)?;
    Ok(profile.ramification_excess() == 2 * f.map_degree() - 2)
}

/// True iff the analytic profile equals the combinatorial passport.
pub fn matches_dessin<K: FieldScalar>(
    f: &RationalFunction<K>,
    d: &Dessin,
) -> Result<bool, BelyiError> {
    let profile = ramification_profile(f)?;
    let passport = d.passport();
    Ok(profile.over0 == passport.black
        && profile.over1 == passport.white
        && profile.over_inf == passport.faces)
}

/// Profile of `1/f` equals the profile of `f` with the 0- and inf-fibers
/// exchanged.
pub fn verify_dual_relation<K: FieldScalar>(f: &RationalFunction<K>) -> Result<bool, BelyiError> {
    let fp = ramification_profile(f)?;
    let rp = ramification_profile(&f.reciprocal().map_err(BelyiError::Algebra)?)?;
    Ok(rp.over0 == fp.over_inf && rp.over_inf == fp.over0 && rp.over1 == fp.over1)
}

/// Source-of-truth table for the explicit maps, in the parser's syntax.
const BETA_I4_Z5_SRC: &str = "-(1/64)*(x-1)^5*(x+1)^5*(x^2-4*x-1)/(x^5*(x^2+x-1))";
const BETA_I4_D10_SRC: &str = "((x-1)^5*((2+i)*x+(2-i)))/((x+1)^5*((2+i)*x-(2-i)))";
const G_UNION_SRC: &str = "4*x/((x+1)^2)";
const G_CONJUGATOR_SRC: &str = "(x-i)/(i*x-1)";

/// The degree-12 Belyi function for the Z5 quotient, over the rationals.
pub fn beta_i4_z5() -> RationalFunction<Rat> {
    parse_ratfunc(BETA_I4_Z5_SRC).expect("table entry parses")
}

/// The degree-6 Belyi function for the D10 quotient, over the Gaussian
/// rationals.
pub fn beta_i4_d10() -> RationalFunction<GaussRat> {
    parse_expr(BETA_I4_D10_SRC).expect("table entry parses")
}

/// `g(y) = 4y/(y+1)^2`, turning a Belyi function for M into one for the
/// union of M with its dual.
pub fn g_union() -> RationalFunction<Rat> {
    parse_ratfunc(G_UNION_SRC).expect("table entry parses")
}

/// The Moebius conjugator `g(y) = (y-i)/(iy-1)` of the D10 diagram.
pub fn g_conjugator() -> RationalFunction<GaussRat> {
    parse_expr(G_CONJUGATOR_SRC).expect("table entry parses")
}

/// Compare two rational functions coefficient by coefficient, reporting the
/// first difference.
pub fn compare_with_report<K: FieldScalar + CoeffDisplay>(
    lhs: &RationalFunction<K>,
    rhs: &RationalFunction<K>,
) -> Result<(), BelyiError> {
    if lhs == rhs {
        return Ok(());
    }
    if lhs.map_degree() != rhs.map_degree() {
        return Err(BelyiError::Mismatch(format!(
            "degree {} vs {}",
            lhs.map_degree(),
            rhs.map_degree()
        )));
    }
    for (side, a, b) in [
        ("numerator", lhs.num_poly(), rhs.num_poly()),
        ("denominator", lhs.den_poly(), rhs.den_poly()),
    ] {
        let d = a.degree().unwrap_or(0).max(b.degree().unwrap_or(0));
        for k in 0..=d {
            if a.coeff(k) != b.coeff(k) {
                return Err(BelyiError::Mismatch(format!(
                    "{side} coefficient of x^{k}: {} vs {}",
                    a.coeff(k).coeff_repr(),
                    b.coeff(k).coeff_repr()
                )));
            }
        }
    }
    Err(BelyiError::Mismatch("normalization differs".into()))
}

/// The commutative square behind the D10 quotient, as one exact identity
/// over the Gaussian rationals:
/// `beta_Z5 (g(y)) = beta_D10 (y^2)`, with the intermediate product form
/// `(y^2-1)^5 ((2+i)y^2+(2-i)) / ((y^2+1)^5 ((2+i)y^2-(2-i)))` checked too.
pub fn verify_d10_diagram() -> Result<(), BelyiError> {
    let lhs = beta_i4_z5().to_gauss().compose(&g_conjugator())?;
    let square = RationalFunction::from_poly(Poly::<GaussRat>::var().pow(2));
    let rhs = beta_i4_d10().compose(&square)?;
    compare_with_report(&lhs, &rhs)?;
    let intermediate: RationalFunction<GaussRat> =
        parse_expr("((y^2-1)^5*((2+i)*y^2+(2-i)))/((y^2+1)^5*((2+i)*y^2-(2-i)))")?;
    compare_with_report(&lhs, &intermediate)
}

/// Compose with `g(y) = 4y/(y+1)^2`: the Belyi function for the union of a
/// dessin with its dual. Degree doubles; every over-1 multiplicity becomes
/// even because g ramifies to order 2 over 1.
pub fn compose_with_g<K>(f: &RationalFunction<K>) -> Result<RationalFunction<K>, BelyiError>
where
    K: FieldScalar + From<Rat>,
{
    let g = g_union();
    let lifted = RationalFunction::new(
        g.num_poly().map_coeffs(|c| K::from(c.clone())),
        g.den_poly().map_coeffs(|c| K::from(c.clone())),
    )
    .map_err(BelyiError::Algebra)?;
    lifted.compose(f).map_err(BelyiError::Algebra)
}

/// Independent Belyi test used as an oracle: every finite critical point
/// (root of the Wronskian numerator) must be a root of `n (n - d) d`, and a
/// multiple point at infinity must sit over 0, 1 or infinity.
pub fn is_belyi_brute_force<K: FieldScalar>(f: &RationalFunction<K>) -> Result<bool, BelyiError> {
    if f.is_constant() {
        return Err(BelyiError::ConstantMap);
    }
    let n = f.num_poly().clone();
    let d = f.den_poly().clone();
    let wronskian = n.derivative() * d.clone() - n.clone() * d.derivative();
    if !wronskian.is_constant() {
        let radical = wronskian.radical()?;
        let product = n.clone() * (n.clone() - d.clone()) * d.clone();
        if product
            .divrem(&radical)
            .map(|(_, r)| !r.is_zero())
            .unwrap_or(true)
        {
            return Ok(false);
        }
    }
    // multiplicity of the point at infinity inside its own fiber
    let deg = f.map_degree();
    let dn = n.degree().unwrap_or(0);
    let dd = d.degree().unwrap_or(0);
    if dn != dd {
        // fiber over 0 or infinity; always allowed
        return Ok(true);
    }
    let c = n.leading_coeff(); // denominator is monic
    let e_inf = deg - (n.clone() - d.scale(&c)).degree().unwrap_or(0);
    if e_inf >= 2 && !c.is_one() {
        // a critical point over the finite value c outside {0, 1}
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::poly_i64;
    use crate::catalog::{build_i4, embed_subgroup, subgroup_spec, SubgroupName};
    use proptest::prelude::*;

    fn quotient_of(name: SubgroupName) -> Dessin {
        build_i4()
            .quotient(&embed_subgroup(&subgroup_spec(name)))
            .unwrap()
    }

    #[test]
    fn profile_of_beta_z5() {
        let f = beta_i4_z5();
        assert_eq!(f.map_degree(), 12);
        let p = ramification_profile(&f).unwrap();
        assert_eq!(p.over0, vec![5, 5, 1, 1]);
        assert_eq!(p.over1, vec![2; 6]);
        assert_eq!(p.over_inf, vec![5, 5, 1, 1]);
        assert!(is_belyi_genus0(&f).unwrap());
        assert_eq!(p.to_string(), "0: 5+5+1+1 | 1: 2*6 | inf: 5+5+1+1");
    }

    #[test]
    fn profile_of_beta_d10() {
        let f = beta_i4_d10();
        assert_eq!(f.map_degree(), 6);
        let p = ramification_profile(&f).unwrap();
        assert_eq!(p.over0, vec![5, 1]);
        assert_eq!(p.over1, vec![2, 2, 1, 1]);
        assert_eq!(p.over_inf, vec![5, 1]);
        assert!(is_belyi_genus0(&f).unwrap());
    }

    #[test]
    fn profile_of_square_map() {
        let f = RationalFunction::new(poly_i64(&[0, 0, 1]), poly_i64(&[1])).unwrap();
        let p = ramification_profile(&f).unwrap();
        assert_eq!(p.over0, vec![2]);
        assert_eq!(p.over1, vec![1, 1]);
        assert_eq!(p.over_inf, vec![2]);
        assert!(is_belyi_genus0(&f).unwrap());
    }

    #[test]
    fn x_squared_plus_x_is_not_belyi() {
        let f = RationalFunction::new(poly_i64(&[0, 1, 1]), poly_i64(&[1])).unwrap();
        assert!(!is_belyi_genus0(&f).unwrap());
        assert!(!is_belyi_brute_force(&f).unwrap());
    }

    #[test]
    fn constant_map_is_rejected() {
        let f = RationalFunction::new(poly_i64(&[3]), poly_i64(&[1])).unwrap();
        assert!(matches!(
            ramification_profile(&f),
            Err(BelyiError::ConstantMap)
        ));
    }

    #[test]
    fn over1_fiber_numerator_is_a_square() {
        let f = beta_i4_z5();
        let diff = f.num_poly().clone() - f.den_poly().clone();
        let (s, _c) = diff.square_up_to_constant().unwrap().unwrap();
        assert_eq!(s.degree(), Some(6));
        assert_eq!(s, poly_i64(&[1, 2, -5, 0, -5, -2, 1]).monic());
    }

    #[test]
    fn maps_match_their_quotient_dessins() {
        assert!(matches_dessin(&beta_i4_z5(), &quotient_of(SubgroupName::Z5)).unwrap());
        assert!(matches_dessin(&beta_i4_d10(), &quotient_of(SubgroupName::D10)).unwrap());
        assert!(!matches_dessin(&beta_i4_z5(), &quotient_of(SubgroupName::D10)).unwrap());
    }

    #[test]
    fn dual_relations() {
        assert!(verify_dual_relation(&beta_i4_z5()).unwrap());
        assert!(verify_dual_relation(&beta_i4_d10()).unwrap());
        let sq = RationalFunction::new(poly_i64(&[0, 0, 1]), poly_i64(&[1])).unwrap();
        assert!(verify_dual_relation(&sq).unwrap());
    }

    #[test]
    fn d10_diagram_commutes() {
        verify_d10_diagram().unwrap();
    }

    #[test]
    fn d10_diagram_negative_controls() {
        // replace g by the identity: the square no longer commutes
        let square = RationalFunction::from_poly(Poly::<GaussRat>::var().pow(2));
        let lhs = beta_i4_z5().to_gauss();
        let rhs = beta_i4_d10().compose(&square).unwrap();
        assert!(matches!(
            compare_with_report(&lhs, &rhs),
            Err(BelyiError::Mismatch(_))
        ));
        // replace y^2 by y^3: degree mismatch
        let cube = RationalFunction::from_poly(Poly::<GaussRat>::var().pow(3));
        let lhs2 = beta_i4_z5().to_gauss().compose(&g_conjugator()).unwrap();
        let rhs2 = beta_i4_d10().compose(&cube).unwrap();
        let err = compare_with_report(&lhs2, &rhs2).unwrap_err();
        assert!(err.to_string().contains("degree 12 vs 18"));
    }

    #[test]
    fn union_composition() {
        // with the identity inner map, the composition is g itself
        let idm = RationalFunction::var();
        assert_eq!(compose_with_g(&idm).unwrap(), g_union());
        let p = ramification_profile(&g_union()).unwrap();
        assert_eq!(p.over1, vec![2]);

        let u5 = compose_with_g(&beta_i4_z5()).unwrap();
        assert_eq!(u5.map_degree(), 24);
        assert!(is_belyi_genus0(&u5).unwrap());
        let p5 = ramification_profile(&u5).unwrap();
        assert!(p5.over1.iter().all(|m| m % 2 == 0));

        let u10 = compose_with_g(&beta_i4_d10()).unwrap();
        assert_eq!(u10.map_degree(), 12);
        assert!(is_belyi_genus0(&u10).unwrap());
    }

    #[test]
    fn profile_invariant_under_moebius_precomposition() {
        let f = beta_i4_z5();
        let base = ramification_profile(&f).unwrap();
        for moebius_src in ["(2*x+3)/(x-1)", "1/x", "x+7"] {
            let m = crate::algebra::parse_ratfunc(moebius_src).unwrap();
            let c = f.compose(&m).unwrap();
            assert_eq!(ramification_profile(&c).unwrap(), base, "{moebius_src}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn belyi_criterion_agrees_with_brute_force(
            n in proptest::collection::vec(-3i64..4, 1..8),
            d in proptest::collection::vec(-3i64..4, 1..8),
        ) {
            let num = poly_i64(&n);
            let den = poly_i64(&d);
            prop_assume!(!num.is_zero() && !den.is_zero());
            let f = RationalFunction::new(num, den).unwrap();
            prop_assume!(!f.is_constant());
            prop_assert_eq!(
                is_belyi_genus0(&f).unwrap(),
                is_belyi_brute_force(&f).unwrap()
            );
        }

        #[test]
        fn profile_sums_to_degree(
            n in proptest::collection::vec(-4i64..5, 1..6),
            d in proptest::collection::vec(-4i64..5, 1..6),
        ) {
            let num = poly_i64(&n);
            let den = poly_i64(&d);
            prop_assume!(!num.is_zero() && !den.is_zero());
            let f = RationalFunction::new(num, den).unwrap();
            prop_assume!(!f.is_constant());
            let p = ramification_profile(&f).unwrap();
            let deg = f.map_degree();
            prop_assert_eq!(p.over0.iter().sum::<usize>(), deg);
            prop_assert_eq!(p.over1.iter().sum::<usize>(), deg);
            prop_assert_eq!(p.over_inf.iter().sum::<usize>(), deg);
        }
    }
}
