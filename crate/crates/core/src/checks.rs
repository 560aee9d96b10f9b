//! The named verification checks behind both the command line and the
//! acceptance suite. Each check pins its expected values in code and runs
//! exactly; only the numeric suite takes a tolerance.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::poly::poly_i64;
use crate::algebra::scalar::{rat, rat_int};
use crate::belyi;
use crate::catalog::{self, check_triangle, subgroup_spec, SubgroupName};
use crate::curves;
use crate::numeric;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

/// One verification outcome.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
    pub wall_seconds: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Failure carrier distinguishing a failed assertion from an internal error.
pub enum CheckFail {
    Failed(String),
    Internal(String),
}

impl CheckFail {
    fn failed(msg: impl Into<String>) -> CheckFail {
        CheckFail::Failed(msg.into())
    }
}

impl<E: std::error::Error> From<E> for CheckFail {
    fn from(e: E) -> Self {
        CheckFail::Internal(e.to_string())
    }
}

type CheckResult = Result<String, CheckFail>;

fn run_check(name: &str, body: impl FnOnce() -> CheckResult) -> Check {
    let start = Instant::now();
    let (status, details) = match body() {
        Ok(details) => (CheckStatus::Pass, details),
        Err(CheckFail::Failed(details)) => (CheckStatus::Fail, details),
        Err(CheckFail::Internal(details)) => (CheckStatus::Error, details),
    };
    Check {
        name: name.to_string(),
        status,
        details,
        wall_seconds: start.elapsed().as_secs_f64(),
    }
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), CheckFail> {
    if cond {
        Ok(())
    } else {
        Err(CheckFail::failed(msg))
    }
}

/// Criterion 1: the genus-4 icosahedron has passport `[5^12|2^30|5^12]`,
/// genus 4, and an automorphism group of order 60 acting freely.
pub fn check_i4_structure() -> Check {
    run_check("i4-structure", || {
        let i4 = catalog::build_i4();
        let p = i4.passport();
        expect(
            p.black == vec![5; 12] && p.white == vec![2; 30] && p.faces == vec![5; 12],
            format!("unexpected passport {p}"),
        )?;
        expect(i4.genus() == 4, format!("genus {} != 4", i4.genus()))?;
        let auts = i4.automorphism_group();
        expect(
            auts.order() == 60,
            format!("|Aut| = {} != 60", auts.order()),
        )?;
        for e in auts.elements() {
            if !e.is_identity() {
                expect(
                    (0..60).all(|d| e.apply(d) != d),
                    "a nontrivial automorphism has a fixed dart",
                )?;
            }
        }
        Ok(format!(
            "passport [{}], genus 4, |Aut| = 60 acting freely",
            p.compact()
        ))
    })
}

/// Criterion 2: the quotient genera table, cross-checked by Riemann-Hurwitz
/// on every quotient.
pub fn check_quotient_genera() -> Check {
    run_check("quotient-genera", || {
        let expected = [
            (SubgroupName::E, 4),
            (SubgroupName::Z2, 2),
            (SubgroupName::Z3, 2),
            (SubgroupName::V4, 1),
            (SubgroupName::Z5, 0),
            (SubgroupName::S3, 1),
            (SubgroupName::D10, 0),
            (SubgroupName::A4, 1),
            (SubgroupName::A5, 0),
        ];
        let family = catalog::quotient_family();
        let i4 = catalog::build_i4();
        let mut parts = Vec::new();
        for (name, genus) in expected {
            let node = family
                .iter()
                .find(|n| n.name == name)
                .ok_or_else(|| CheckFail::failed(format!("missing node {name}")))?;
            expect(
                node.genus == genus,
                format!("genus(I4/{name}) = {} != {genus}", node.genus),
            )?;
            let branch = i4.covering_branch_data(&catalog::embed_subgroup(&subgroup_spec(name)))?;
            expect(
                branch.riemann_hurwitz_holds(),
                format!("Riemann-Hurwitz fails for {name}: {branch:?}"),
            )?;
            parts.push(format!("{name}:{genus}"));
        }
        Ok(format!(
            "genera {{{}}} with Riemann-Hurwitz exact on all nine quotients",
            parts.join(", ")
        ))
    })
}

/// Criterion 3: I4 is isomorphic to its dual.
pub fn check_self_duality() -> Check {
    run_check("self-duality", || {
        let i4 = catalog::build_i4();
        expect(
            i4.is_isomorphic_to(&i4.dual()),
            "I4 and its dual are not isomorphic",
        )?;
        Ok("I4 is isomorphic to dual(I4)".to_string())
    })
}

/// Criterion 4: the degree-12 map is Belyi, its profile equals the Z5
/// quotient passport, and the over-1 numerator is a constant times a square.
pub fn check_beta_z5() -> Check {
    run_check("beta-z5", || {
        let f = belyi::beta_i4_z5();
        expect(f.map_degree() == 12, format!("degree {}", f.map_degree()))?;
        expect(belyi::is_belyi_genus0(&f)?, "not a Belyi function")?;
        let profile = belyi::ramification_profile(&f)?;
        expect(
            profile.over0 == vec![5, 5, 1, 1]
                && profile.over1 == vec![2; 6]
                && profile.over_inf == vec![5, 5, 1, 1],
            format!("profile {profile}"),
        )?;
        let quotient = catalog::build_i4()
            .quotient(&catalog::embed_subgroup(&subgroup_spec(SubgroupName::Z5)))?;
        expect(
            belyi::matches_dessin(&f, &quotient)?,
            "profile does not match the quotient dessin",
        )?;
        let diff = f.num_poly().clone() - f.den_poly().clone();
        let square = diff
            .square_up_to_constant()
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let (s, c) = square.ok_or_else(|| {
            CheckFail::failed("over-1 numerator is not a constant times a square")
        })?;
        expect(s.degree() == Some(6), "square root is not a sextic")?;
        Ok(format!(
            "degree 12 Belyi, profile {profile}, over-1 numerator = {c} * (sextic)^2"
        ))
    })
}

/// Criterion 5: the degree-6 map over Q(i) is Belyi, matches the D10
/// quotient, and the conjugation diagram commutes coefficient-exactly.
pub fn check_beta_d10() -> Check {
    run_check("beta-d10", || {
        let f = belyi::beta_i4_d10();
        expect(f.map_degree() == 6, format!("degree {}", f.map_degree()))?;
        expect(belyi::is_belyi_genus0(&f)?, "not a Belyi function")?;
        let profile = belyi::ramification_profile(&f)?;
        let quotient = catalog::build_i4()
            .quotient(&catalog::embed_subgroup(&subgroup_spec(SubgroupName::D10)))?;
        expect(
            belyi::matches_dessin(&f, &quotient)?,
            format!(
                "profile {profile} does not match quotient passport {}",
                quotient.passport()
            ),
        )?;
        belyi::verify_d10_diagram().map_err(|e| CheckFail::failed(e.to_string()))?;
        Ok(format!(
            "degree 6 Belyi over Q(i), profile {profile}, diagram beta_Z5 o g = beta_D10 o (y -> y^2) exact"
        ))
    })
}

/// Criterion 6: both sextic derivations agree.
pub fn check_z3_sextic() -> Check {
    run_check("z3-sextic", || {
        let p = curves::derive_z3_sextic().map_err(|e| CheckFail::failed(e.to_string()))?;
        let expected = poly_i64(&[432, 648, 945, 1350, 945, 648, 432]);
        expect(p == expected, format!("got {p}"))?;
        Ok(format!("conjugate product and resultant both give {p}"))
    })
}

/// Criterion 7: the elimination cubics and their product.
pub fn check_z2_cubics() -> Check {
    run_check("z2-cubics", || {
        let (first, second) =
            curves::derive_z2_cubics().map_err(|e| CheckFail::failed(e.to_string()))?;
        expect(
            first == poly_i64(&[4, 8, 7, 1]),
            format!("first cubic {first}"),
        )?;
        expect(
            second == poly_i64(&[1, 7, 8, 4]),
            format!("second cubic {second}"),
        )?;
        let product = first.clone() * second.clone();
        let expected = poly_i64(&[4, 36, 95, 130, 95, 36, 4]);
        expect(product == expected, format!("product {product}"))?;
        Ok(format!("({first}) * ({second}) = {product}"))
    })
}

/// Criterion 8: the two substitution identities under `z = (x-1)/(x+1)`.
pub fn check_substitution_identities() -> Check {
    run_check("substitution-identities", || {
        let p_z3 = poly_i64(&[432, 648, 945, 1350, 945, 648, 432]);
        let r_z3 = poly_i64(&[50, 0, 125, 0, 80, 0, 1]);
        curves::substitution_identity(&p_z3, &r_z3, &rat(16, 27))
            .map_err(|e| CheckFail::failed(format!("Z3 case: {e}")))?;
        let q_z2 = poly_i64(&[4, 36, 95, 130, 95, 36, 4]);
        let r_z2 = poly_i64(&[-100, 0, 25, 0, 10, 0, 1]);
        curves::substitution_identity(&q_z2, &r_z2, &rat_int(-16))
            .map_err(|e| CheckFail::failed(format!("Z2 case: {e}")))?;
        Ok("16/27 * P_Z3 = (x+1)^6 R_Z3(z) and -16 * Q_Z2 = (x+1)^6 R_Z2(z)".to_string())
    })
}

/// Criterion 9: both quartics and the Weierstrass model share
/// j = -121945/32.
pub fn check_j_invariants() -> Check {
    run_check("j-invariants", || {
        let expected = rat(-121945, 32);
        let s3 = curves::even_quotient_model(&poly_i64(&[50, 0, 125, 0, 80, 0, 1]))
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let j1 = s3
            .j_invariant()
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        expect(j1 == expected, format!("j(S3 quartic) = {j1}"))?;
        let v4 = curves::even_quotient_model(&poly_i64(&[-100, 0, 25, 0, 10, 0, 1]))
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let j2 = v4
            .j_invariant()
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        expect(j2 == expected, format!("j(V4 quartic) = {j2}"))?;
        let e = curves::WeierstrassCurve::new(1, 0, 1, -76, 298)
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let j3 = e.invariants().j;
        expect(j3 == expected, format!("j(Weierstrass model) = {j3}"))?;
        Ok(format!(
            "j(B/V4) = j(B/S3) = {expected} on all three models"
        ))
    })
}

/// Criterion 10: the 3-isogeny replaces the database lookup: psi_3 root
/// x = 2 with point (2, 11), Velu codomain Q-isomorphic to
/// `[1, 0, 1, 549, -2202]`, equal j on both sides.
pub fn check_isogeny() -> Check {
    run_check("velu-isogeny", || {
        let domain = curves::WeierstrassCurve::new(1, 0, 1, -76, 298)
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let roots = curves::rational_roots(&domain.division_poly_3());
        expect(
            roots.contains(&rat_int(2)),
            format!("psi_3 rational roots {roots:?} miss x = 2"),
        )?;
        let kernel = curves::three_torsion_point(&domain, &rat_int(2))
            .map_err(|e| CheckFail::failed(e.to_string()))?;
        expect(
            kernel == curves::RationalPoint::affine_i64(2, 11),
            format!("kernel point {kernel:?}"),
        )?;
        let isogeny = curves::velu_3_isogeny(&domain, &kernel)
            .map_err(|e| CheckFail::failed(e.to_string()))?;
        let expected = curves::WeierstrassCurve::new(1, 0, 1, 549, -2202)
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let twist = curves::isomorphic_over_q(&isogeny.codomain, &expected)
            .map_err(|e| CheckFail::Internal(e.to_string()))?;
        let u = twist.ok_or_else(|| {
            CheckFail::failed("Velu codomain is not Q-isomorphic to the expected curve")
        })?;
        let want_j = rat(46_969_655, 32_768);
        let j_cod = isogeny.codomain.invariants().j;
        expect(j_cod == want_j, format!("codomain j = {j_cod}"))?;
        expect(
            expected.invariants().j == want_j,
            "expected curve has wrong j",
        )?;
        Ok(format!(
            "kernel (2, 11) of order 3; codomain {} isomorphic with u = {u}; j = {want_j}",
            isogeny.codomain
        ))
    })
}

/// Criterion 11: the four quotient triangles commute and the V4 -> A4 edge
/// is an unbranched covering of index 3.
pub fn check_triangles() -> Check {
    run_check("quotient-triangles", || {
        let pairs = [
            (SubgroupName::Z2, SubgroupName::V4),
            (SubgroupName::Z3, SubgroupName::S3),
            (SubgroupName::Z5, SubgroupName::D10),
            (SubgroupName::V4, SubgroupName::A4),
        ];
        let mut parts = Vec::new();
        for (small, large) in pairs {
            let report = check_triangle(&subgroup_spec(small), &subgroup_spec(large))?;
            expect(
                report.commutes,
                format!("triangle ({small}, {large}) does not commute"),
            )?;
            if (small, large) == (SubgroupName::V4, SubgroupName::A4) {
                expect(
                    report.index == 3,
                    format!("V4 -> A4 index {}", report.index),
                )?;
                expect(
                    report.branch.is_unbranched(),
                    format!("V4 -> A4 covering is branched: {:?}", report.branch),
                )?;
            }
            parts.push(format!("({small},{large}) index {}", report.index));
        }
        Ok(format!(
            "all triangles commute: {}; (V4,A4) unbranched",
            parts.join(", ")
        ))
    })
}

/// Criterion 12: the numeric Bring suite at the given sampling parameters.
pub fn check_bring_numeric(samples: usize, seed: u64, tol: f64) -> Check {
    run_check("bring-numeric", || {
        let special =
            numeric::special_points_check(tol).map_err(|e| CheckFail::Internal(e.to_string()))?;
        expect(
            special.passed(),
            format!("special points failed: {special:?}"),
        )?;
        let report = numeric::identity_suite(samples, seed, tol);
        if let Some(first) = report.failures.first() {
            return Err(CheckFail::failed(format!(
                "{} failures, first: {first}",
                report.failures.len()
            )));
        }
        let max = report.max_residual();
        expect(max <= tol, format!("max residual {max:e} exceeds {tol:e}"))?;
        Ok(format!(
            "{} samples (seed {}): max residual {max:.3e}; special points 0, 1, inf exact within {:.1e}",
            samples, seed, special.tol
        ))
    })
}

/// Every acceptance criterion in order.
pub fn run_all(samples: usize, seed: u64, tol: f64) -> Vec<Check> {
    vec![
        check_i4_structure(),
        check_quotient_genera(),
        check_self_duality(),
        check_beta_z5(),
        check_beta_d10(),
        check_z3_sextic(),
        check_z2_cubics(),
        check_substitution_identities(),
        check_j_invariants(),
        check_isogeny(),
        check_triangles(),
        check_bring_numeric(samples, seed, tol),
    ]
}

/// The curve-level subset (criteria 6..10).
pub fn run_curve_checks() -> Vec<Check> {
    vec![
        check_z3_sextic(),
        check_z2_cubics(),
        check_substitution_identities(),
        check_j_invariants(),
        check_isogeny(),
    ]
}

/// The Belyi-map subset (criteria 3..5).
pub fn run_belyi_checks() -> Vec<Check> {
    vec![check_self_duality(), check_beta_z5(), check_beta_d10()]
}

/// The combinatorial subset (criteria 1, 2, 11).
pub fn run_catalog_checks() -> Vec<Check> {
    vec![
        check_i4_structure(),
        check_quotient_genera(),
        check_triangles(),
    ]
}
