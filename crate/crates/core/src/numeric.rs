//! Floating-point sampling of Bring's curve through quintic roots, and
//! numeric verification of the degree-60 Belyi function identities.
//!
//! The raw formula for the Belyi function is singular at `a = 0`, so it is
//! evaluated through the regularized form `-(125b^2 + D)/(125b^2 - D)`.
//! Because the two factors satisfy `(125b^2+D)(125b^2-D) = -1280 a^5`
//! exactly, whichever factor suffers cancellation can be replaced through
//! the identity; the evaluation below always picks the cancellation-free
//! branch, so residuals stay at machine level across the whole sample box.
//! All residuals are relative to the magnitude of the values compared.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("root finding did not converge (residual {0:e})")]
    NonConvergence(f64),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoeff,
    #[error("point is numerically degenerate: {0}")]
    DegeneratePoint(String),
    #[error("not a Bring point: {0}")]
    InvalidPoint(String),
}

/// A value on the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SphereValue {
    Finite(Complex64),
    Infinity,
}

impl SphereValue {
    pub fn zero() -> Self {
        SphereValue::Finite(Complex64::new(0.0, 0.0))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SphereValue::Infinity)
    }

    pub fn reciprocal(&self) -> SphereValue {
        match self {
            SphereValue::Infinity => SphereValue::zero(),
            SphereValue::Finite(v) if v.norm() == 0.0 => SphereValue::Infinity,
            SphereValue::Finite(v) => SphereValue::Finite(1.0 / v),
        }
    }

    /// Distance relative to the magnitudes compared; infinity matches
    /// infinity at distance 0 and a finite value M at distance `1/(1+|M|)`.
    pub fn relative_distance(&self, other: &SphereValue) -> f64 {
        match (self, other) {
            (SphereValue::Infinity, SphereValue::Infinity) => 0.0,
            (SphereValue::Infinity, SphereValue::Finite(v))
            | (SphereValue::Finite(v), SphereValue::Infinity) => 1.0 / (1.0 + v.norm()),
            (SphereValue::Finite(u), SphereValue::Finite(v)) => {
                (u - v).norm() / 1.0_f64.max(u.norm()).max(v.norm())
            }
        }
    }
}

/// Detection threshold for exact zeros and poles. This is a machine-level
/// constant rather than the identity tolerance: special points produce
/// ratios many orders below it, while honestly small finite values (which
/// the identity checks must keep) stay finite.
pub const DETECTION_EPS: f64 = 1e-12;

/// Classify a quotient `num/den` with the symmetric zero/infinity rule:
/// a denominator below `eps * (|num| + |den|)` means infinity, a numerator
/// below it means zero, both at once is a degenerate point.
fn classify(num: Complex64, den: Complex64) -> Result<SphereValue, NumericError> {
    let n = num.norm();
    let d = den.norm();
    let scale = n + d;
    let num_small = n < DETECTION_EPS * scale || scale == 0.0;
    let den_small = d < DETECTION_EPS * scale || scale == 0.0;
    match (num_small, den_small) {
        (true, true) => Err(NumericError::DegeneratePoint(format!(
            "0/0 with |num| = {n:e}, |den| = {d:e}"
        ))),
        (false, true) => Ok(SphereValue::Infinity),
        (true, false) => Ok(SphereValue::zero()),
        (false, false) => Ok(SphereValue::Finite(num / den)),
    }
}

/// An ordered 5-tuple on Bring's curve with its derived quantities:
/// `a` is the fourth elementary symmetric function, `b` minus the fifth,
/// and `D = sqrt(5) * prod_{i<j} (x_i - x_j)` with the positive real root.
#[derive(Clone, Debug)]
pub struct BringPoint {
    coords: [Complex64; 5],
    a: Complex64,
    b: Complex64,
    big_d: Complex64,
}

impl BringPoint {
    pub fn new(coords: [Complex64; 5], tol: f64) -> Result<Self, NumericError> {
        for k in 1..=3 {
            let sum: Complex64 = coords.iter().map(|x| x.powu(k)).sum();
            let scale: f64 = 1.0 + coords.iter().map(|x| x.norm().powi(k as i32)).sum::<f64>();
            if sum.norm() > tol * scale {
                return Err(NumericError::InvalidPoint(format!(
                    "power sum p{k} = {sum} exceeds tolerance"
                )));
            }
        }
        let a = elementary_symmetric_4(&coords);
        let b = -coords.iter().product::<Complex64>();
        let big_d = 5.0_f64.sqrt() * pairwise_difference_product(&coords);
        // D^2 must reproduce 5 * (256 a^5 + 3125 b^4); the comparison scale
        // is the size of the terms, since the sum may cancel to zero
        let lhs = big_d * big_d;
        let rhs = 5.0 * (256.0 * a.powu(5) + 3125.0 * b.powu(4));
        let scale = 1.0_f64
            .max(lhs.norm())
            .max(5.0 * (256.0 * a.norm().powi(5) + 3125.0 * b.norm().powi(4)));
        if (lhs - rhs).norm() > tol * scale {
            return Err(NumericError::InvalidPoint(format!(
                "D^2 = {lhs} does not match the discriminant form {rhs}"
            )));
        }
        Ok(BringPoint {
            coords,
            a,
            b,
            big_d,
        })
    }

    /// Roots of `x^5 + a x + b`, in the solver's order.
    pub fn from_quintic(a: Complex64, b: Complex64, tol: f64) -> Result<Self, NumericError> {
        let roots = solve_bring_quintic(a, b, tol)?;
        BringPoint::new(roots, tol)
    }

    pub fn coords(&self) -> &[Complex64; 5] {
        &self.coords
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn big_d(&self) -> Complex64 {
        self.big_d
    }

    /// Reorder coordinates by a degree-5 permutation: coordinate `i` moves
    /// to slot `p(i)`.
    pub fn permuted(&self, p: &Permutation, tol: f64) -> Result<BringPoint, NumericError> {
        assert_eq!(p.degree(), 5);
        let mut coords = [Complex64::default(); 5];
        for (i, &x) in self.coords.iter().enumerate() {
            coords[p.apply(i)] = x;
        }
        BringPoint::new(coords, tol)
    }

    /// The Belyi function in the regularized form
    /// `-(125 b^2 + D) / (125 b^2 - D)`, evaluated through whichever of the
    /// two conjugate branches avoids cancellation.
    pub fn beta_i4(&self) -> Result<SphereValue, NumericError> {
        let s = 125.0 * self.b * self.b;
        let plus = s + self.big_d;
        let minus = s - self.big_d;
        let a5 = 1280.0 * self.a.powu(5);
        if plus.norm() >= minus.norm() {
            // minus = -1280 a^5 / plus, so beta = plus^2 / (1280 a^5)
            classify(plus * plus, a5)
        } else {
            // plus = -1280 a^5 / minus, so beta = 1280 a^5 / minus^2
            classify(a5, minus * minus)
        }
    }

    /// The Belyi function of the dessin united with its dual:
    /// `256 a^5 / (256 a^5 + 3125 b^4)`.
    pub fn beta_h(&self) -> Result<SphereValue, NumericError> {
        let num = 256.0 * self.a.powu(5);
        let den = num + 3125.0 * self.b.powu(4);
        classify(num, den)
    }
}

fn elementary_symmetric_4(xs: &[Complex64; 5]) -> Complex64 {
    // e4 = sum over the five products omitting one coordinate
    let full: Complex64 = xs.iter().product();
    let mut e4 = Complex64::default();
    for (i, &x) in xs.iter().enumerate() {
        if x.norm() > 0.0 {
            e4 += full / x;
        } else {
            e4 += xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &y)| y)
                .product::<Complex64>();
        }
    }
    e4
}

fn pairwise_difference_product(xs: &[Complex64; 5]) -> Complex64 {
    let mut prod = Complex64::new(1.0, 0.0);
    for i in 0..5 {
        for j in i + 1..5 {
            prod *= xs[i] - xs[j];
        }
    }
    prod
}

/// All roots of a complex polynomial (ascending coefficients) by the
/// Aberth-Ehrlich iteration with a Newton polish.
pub fn polynomial_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>, NumericError> {
    let n = coeffs.len().saturating_sub(1);
    if n == 0 || coeffs[n].norm() == 0.0 {
        return Err(NumericError::ZeroLeadingCoeff);
    }
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::default();
        let mut dp = Complex64::default();
        for c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let scale = 1.0_f64.max(monic.iter().map(|c| c.norm()).fold(0.0, f64::max));
    let radius = 1.0 + monic.iter().take(n).map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.45;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    for _ in 0..200 {
        let mut max_residual: f64 = 0.0;
        let snapshot = roots.clone();
        for k in 0..n {
            let z = snapshot[k];
            let (p, dp) = eval(z);
            max_residual = max_residual.max(p.norm());
            if p.norm() <= 1e-15 * scale {
                continue;
            }
            let w = if dp.norm() > 0.0 { p / dp } else { p };
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| 1.0 / (z - snapshot[j]))
                .sum();
            let denom = 1.0 - w * s;
            let step = if denom.norm() > 1e-290 { w / denom } else { w };
            roots[k] = z - step;
        }
        if max_residual <= 1e-14 * scale {
            break;
        }
    }
    // Newton polish
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*z);
            if dp.norm() > 0.0 {
                *z -= p / dp;
            }
        }
    }
    let worst = roots.iter().map(|&z| eval(z).0.norm()).fold(0.0, f64::max);
    if worst > tol * scale {
        return Err(NumericError::NonConvergence(worst));
    }
    Ok(roots)
}

/// Roots of the Bring quintic `x^5 + a x + b`.
pub fn solve_bring_quintic(
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<[Complex64; 5], NumericError> {
    let zero = Complex64::default();
    let one = Complex64::new(1.0, 0.0);
    let roots = polynomial_roots(&[b, a, zero, zero, zero, one], tol)?;
    Ok([roots[0], roots[1], roots[2], roots[3], roots[4]])
}

/// The black-vertex representative `(1, z, z^2, z^3, z^4)` with
/// `z = exp(2 pi i / 5)`.
pub fn vertex_point(tol: f64) -> Result<BringPoint, NumericError> {
    let mut coords = [Complex64::default(); 5];
    for (k, slot) in coords.iter_mut().enumerate() {
        *slot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 5.0);
    }
    BringPoint::new(coords, tol)
}

/// The white-vertex representative `(0, 1, -1, i, -i)`.
pub fn white_point(tol: f64) -> Result<BringPoint, NumericError> {
    let coords = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(0.0, -1.0),
    ];
    BringPoint::new(coords, tol)
}

/// The face-center representative: the vertex point with its first two
/// coordinates swapped (an odd permutation).
pub fn face_point(tol: f64) -> Result<BringPoint, NumericError> {
    let v = vertex_point(tol)?;
    let swap = Permutation::from_cycles(5, &[vec![1, 2]]).expect("valid cycle");
    v.permuted(&swap, tol)
}

/// A point with an exactly repeated coordinate: `(t, t, t s1, t s2, t s3)`
/// where the `s_i` are the roots of `s^3 + 2s^2 + 3s + 4`. By construction
/// the quintic is `(x - t)^2 (x^3 + 2t x^2 + 3t^2 x + 4t^3)`, so
/// `a = -5 t^4`, `b = 4 t^5` and `D = 0` exactly.
pub fn repeated_root_point(t: Complex64, tol: f64) -> Result<BringPoint, NumericError> {
    let one = Complex64::new(1.0, 0.0);
    let cubic = [
        Complex64::new(4.0, 0.0),
        Complex64::new(3.0, 0.0),
        Complex64::new(2.0, 0.0),
        one,
    ];
    let s = polynomial_roots(&cubic, tol)?;
    BringPoint::new([t, t, t * s[0], t * s[1], t * s[2]], tol)
}

/// Aggregated residual report of the sampled identity suite.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    /// `beta_H = 4 beta / (beta + 1)^2`
    pub max_union_identity: f64,
    /// beta invariant under even coordinate permutations
    pub max_even_invariance: f64,
    /// beta of an odd permutation is the reciprocal
    pub max_odd_reciprocal: f64,
    /// a and b invariant under all permutations
    pub max_coefficient_invariance: f64,
    /// power sums p1, p2, p3 of the solved roots
    pub max_power_sum: f64,
    /// `(125 b^2 + D)(125 b^2 - D) = -1280 a^5`
    pub max_conjugate_identity: f64,
    /// `beta = -1` on the repeated-root family
    pub max_repeated_root: f64,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.max_union_identity,
            self.max_even_invariance,
            self.max_odd_reciprocal,
            self.max_coefficient_invariance,
            self.max_power_sum,
            self.max_conjugate_identity,
            self.max_repeated_root,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.max_residual() <= self.tol
    }
}

fn uniform_box(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen::<f64>() * 4.0 - 2.0, rng.gen::<f64>() * 4.0 - 2.0)
}

fn random_permutation(rng: &mut ChaCha8Rng, even: bool) -> Permutation {
    let mut images: Vec<usize> = (0..5).collect();
    for i in (1..5).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    let mut p = Permutation::from_images(images).expect("shuffled bijection");
    let want = if even { 1 } else { -1 };
    if p.sign() != want {
        let swap = Permutation::from_cycles(5, &[vec![1, 2]]).expect("valid cycle");
        p = swap.compose(&p);
    }
    p
}

fn apply_g_union(beta: &SphereValue) -> SphereValue {
    match beta {
        SphereValue::Infinity => SphereValue::zero(),
        SphereValue::Finite(v) => {
            let den = (v + 1.0) * (v + 1.0);
            if den.norm() == 0.0 {
                SphereValue::Infinity
            } else {
                SphereValue::Finite(4.0 * v / den)
            }
        }
    }
}

/// Run the sampled identity suite: seed-reproducible random `(a, b)` in the
/// box `[-2, 2]^2`, rejecting near-zero discriminants, plus the
/// repeated-root family.
pub fn identity_suite(samples: usize, seed: u64, tol: f64) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = IdentityReport {
        samples,
        seed,
        tol,
        max_union_identity: 0.0,
        max_even_invariance: 0.0,
        max_odd_reciprocal: 0.0,
        max_coefficient_invariance: 0.0,
        max_power_sum: 0.0,
        max_conjugate_identity: 0.0,
        max_repeated_root: 0.0,
        failures: Vec::new(),
    };
    let five_cycle = Permutation::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).expect("valid");
    let transposition = Permutation::from_cycles(5, &[vec![1, 2]]).expect("valid");

    for sample_idx in 0..samples {
        // rejection sampling on the discriminant; the threshold is relative
        // to the term sizes so the rejected set is exactly the
        // ill-conditioned one (the two agree for a, b of unit size)
        let (a, b) = loop {
            let a = uniform_box(&mut rng);
            let b = uniform_box(&mut rng);
            let disc = 256.0 * a.powu(5) + 3125.0 * b.powu(4);
            let scale = 1.0_f64.max(256.0 * a.norm().powi(5) + 3125.0 * b.norm().powi(4));
            if disc.norm() >= 1e-6 * scale {
                break (a, b);
            }
        };
        let point = match BringPoint::from_quintic(a, b, tol) {
            Ok(p) => p,
            Err(e) => {
                report.failures.push(format!("sample {sample_idx}: {e}"));
                continue;
            }
        };
        if let Err(e) = check_sample(&point, a, b, tol, &mut report, sample_idx) {
            report.failures.push(format!("sample {sample_idx}: {e}"));
        }
        // permutation identities with both fixed and random permutations
        let evens = [five_cycle.clone(), random_permutation(&mut rng, true)];
        let odds = [transposition.clone(), random_permutation(&mut rng, false)];
        if let Err(e) = check_permutations(&point, &evens, &odds, tol, &mut report) {
            report.failures.push(format!("sample {sample_idx}: {e}"));
        }

        // repeated-root family: beta = -1 with an exactly repeated coordinate
        let t = loop {
            let t = uniform_box(&mut rng);
            if t.norm() >= 0.25 {
                break t;
            }
        };
        match repeated_root_point(t, tol) {
            Ok(rp) => match rp.beta_i4() {
                Ok(SphereValue::Finite(v)) => {
                    let res = (v + 1.0).norm();
                    report.max_repeated_root = report.max_repeated_root.max(res);
                    if res > tol {
                        report.failures.push(format!(
                            "sample {sample_idx}: repeated-root beta = {v}, residual {res:e}"
                        ));
                    }
                }
                Ok(SphereValue::Infinity) => report.failures.push(format!(
                    "sample {sample_idx}: repeated-root beta is infinite"
                )),
                Err(e) => report.failures.push(format!("sample {sample_idx}: {e}")),
            },
            Err(e) => report.failures.push(format!("sample {sample_idx}: {e}")),
        }
    }
    report
}

fn check_sample(
    point: &BringPoint,
    a: Complex64,
    b: Complex64,
    tol: f64,
    report: &mut IdentityReport,
    idx: usize,
) -> Result<(), NumericError> {
    // power sums of the solved roots
    for k in 1..=3 {
        let sum: Complex64 = point.coords().iter().map(|x| x.powu(k)).sum();
        let scale = 1.0
            + point
                .coords()
                .iter()
                .map(|x| x.norm().powi(k as i32))
                .sum::<f64>();
        report.max_power_sum = report.max_power_sum.max(sum.norm() / scale);
    }
    // Vieta round trip: the derived a and b match the inputs
    let vieta =
        (point.a() - a).norm().max((point.b() - b).norm()) / 1.0_f64.max(a.norm()).max(b.norm());
    report.max_coefficient_invariance = report.max_coefficient_invariance.max(vieta);

    // conjugate identity (125 b^2 + D)(125 b^2 - D) = -1280 a^5
    let s = 125.0 * point.b() * point.b();
    let lhs = (s + point.big_d()) * (s - point.big_d());
    let rhs = -1280.0 * point.a().powu(5);
    let scale = 1.0_f64
        .max(s.norm() * s.norm())
        .max(point.big_d().norm() * point.big_d().norm())
        .max(rhs.norm());
    let conj = (lhs - rhs).norm() / scale;
    report.max_conjugate_identity = report.max_conjugate_identity.max(conj);

    // beta_H = g(beta)
    let beta = point.beta_i4()?;
    let beta_h = point.beta_h()?;
    let res = beta_h.relative_distance(&apply_g_union(&beta));
    report.max_union_identity = report.max_union_identity.max(res);
    if res > tol {
        report
            .failures
            .push(format!("sample {idx}: union identity residual {res:e}"));
    }
    Ok(())
}

fn check_permutations(
    point: &BringPoint,
    evens: &[Permutation],
    odds: &[Permutation],
    tol: f64,
    report: &mut IdentityReport,
) -> Result<(), NumericError> {
    let beta = point.beta_i4()?;
    for p in evens.iter().chain(odds.iter()) {
        let moved = point.permuted(p, tol)?;
        // a and b are symmetric functions: unchanged by any permutation
        let coeff = (moved.a() - point.a())
            .norm()
            .max((moved.b() - point.b()).norm())
            / 1.0_f64.max(point.a().norm()).max(point.b().norm());
        report.max_coefficient_invariance = report.max_coefficient_invariance.max(coeff);
        let moved_beta = moved.beta_i4()?;
        let res = if p.sign() == 1 {
            moved_beta.relative_distance(&beta)
        } else {
            moved_beta.relative_distance(&beta.reciprocal())
        };
        if p.sign() == 1 {
            report.max_even_invariance = report.max_even_invariance.max(res);
        } else {
            report.max_odd_reciprocal = report.max_odd_reciprocal.max(res);
        }
        if res > tol {
            report.failures.push(format!(
                "permutation {p} (sign {}) residual {res:e}",
                p.sign()
            ));
        }
    }
    Ok(())
}

/// Residuals of the three special points: the vertex orbit maps to 0, the
/// white orbit to 1, the face-center orbit to infinity.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialPointsReport {
    pub vertex_residual: f64,
    pub white_residual: f64,
    pub face_is_infinite: bool,
    pub tol: f64,
}

impl SpecialPointsReport {
    pub fn passed(&self) -> bool {
        self.vertex_residual <= self.tol && self.white_residual <= self.tol && self.face_is_infinite
    }
}

pub fn special_points_check(tol: f64) -> Result<SpecialPointsReport, NumericError> {
    let vertex = vertex_point(tol)?.beta_i4()?;
    let white = white_point(tol)?.beta_i4()?;
    let face = face_point(tol)?.beta_i4()?;
    let one = SphereValue::Finite(Complex64::new(1.0, 0.0));
    Ok(SpecialPointsReport {
        vertex_residual: vertex.relative_distance(&SphereValue::zero()),
        white_residual: white.relative_distance(&one),
        face_is_infinite: face.is_infinity(),
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermGroup;

    const TOL: f64 = 1e-8;

    #[test]
    fn quintic_roots_of_unity() {
        // (a, b) = (0, -1): x^5 - 1
        let roots =
            solve_bring_quintic(Complex64::default(), Complex64::new(-1.0, 0.0), TOL).unwrap();
        for z in roots {
            assert!((z.powu(5) - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn quintic_x5_minus_x() {
        let roots =
            solve_bring_quintic(Complex64::new(-1.0, 0.0), Complex64::default(), TOL).unwrap();
        let expected = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
        ];
        for e in expected {
            assert!(
                roots.iter().any(|z| (z - e).norm() < 1e-10),
                "missing root {e}"
            );
        }
    }

    #[test]
    fn vieta_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = uniform_box(&mut rng);
            let b = uniform_box(&mut rng);
            if (256.0 * a.powu(5) + 3125.0 * b.powu(4)).norm() < 1e-6 {
                continue;
            }
            let p = BringPoint::from_quintic(a, b, TOL).unwrap();
            assert!((p.a() - a).norm() < 1e-10 * (1.0 + a.norm()));
            assert!((p.b() - b).norm() < 1e-10 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn special_points() {
        let report = special_points_check(TOL).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.vertex_residual < 1e-12);
        assert!(report.white_residual < 1e-12);
    }

    #[test]
    fn vertex_point_has_negative_d() {
        // for the canonical ordering, D = -125 b^2 = -125
        let v = vertex_point(TOL).unwrap();
        assert!((v.big_d() - Complex64::new(-125.0, 0.0)).norm() < 1e-9);
        assert!((v.b() - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(v.a().norm() < 1e-12);
    }

    #[test]
    fn beta_h_at_special_points() {
        let one = SphereValue::Finite(Complex64::new(1.0, 0.0));
        let white = white_point(TOL).unwrap().beta_h().unwrap();
        assert!(white.relative_distance(&one) < 1e-12);
        let vertex = vertex_point(TOL).unwrap().beta_h().unwrap();
        assert!(vertex.relative_distance(&SphereValue::zero()) < 1e-12);
        let repeated = repeated_root_point(Complex64::new(1.0, 0.5), TOL)
            .unwrap()
            .beta_h()
            .unwrap();
        assert!(repeated.is_infinity());
    }

    #[test]
    fn repeated_root_beta_is_minus_one() {
        let t = Complex64::new(-0.7, 1.3);
        let p = repeated_root_point(t, TOL).unwrap();
        assert_eq!(p.big_d(), Complex64::default());
        match p.beta_i4().unwrap() {
            SphereValue::Finite(v) => assert!((v + 1.0).norm() < 1e-12),
            SphereValue::Infinity => panic!("expected -1"),
        }
    }

    #[test]
    fn suite_passes_at_spec_defaults() {
        let report = identity_suite(100, 1, 1e-8);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.max_residual() <= 1e-8);
    }

    #[test]
    fn all_120_permutations_split_evenly() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (a, b) = (uniform_box(&mut rng), uniform_box(&mut rng));
        let point = BringPoint::from_quintic(a, b, TOL).unwrap();
        let beta = point.beta_i4().unwrap();
        let recip = beta.reciprocal();
        // S5 as the closure of a transposition and a 5-cycle
        let s5 = PermGroup::closure(&[
            Permutation::from_cycles(5, &[vec![1, 2]]).unwrap(),
            Permutation::from_cycles(5, &[vec![1, 2, 3, 4, 5]]).unwrap(),
        ])
        .unwrap();
        assert_eq!(s5.order(), 120);
        let mut same = 0;
        let mut flipped = 0;
        for p in s5.elements() {
            let v = point.permuted(p, TOL).unwrap().beta_i4().unwrap();
            if v.relative_distance(&beta) < 1e-6 {
                same += 1;
                assert_eq!(p.sign(), 1, "even permutations fix beta");
            } else if v.relative_distance(&recip) < 1e-6 {
                flipped += 1;
                assert_eq!(p.sign(), -1, "odd permutations invert beta");
            } else {
                panic!("beta took a third value under {p}");
            }
        }
        assert_eq!(same, 60);
        assert_eq!(flipped, 60);
    }

    #[test]
    fn solver_reports_non_convergence() {
        // an impossible residual target forces the failure path
        let a = Complex64::new(1.3, -0.4);
        let b = Complex64::new(0.2, 1.9);
        assert!(matches!(
            solve_bring_quintic(a, b, 1e-30),
            Err(NumericError::NonConvergence(_))
        ));
    }

    #[test]
    fn degenerate_point_is_rejected() {
        // a = b = 0 cannot be classified
        let coords = [Complex64::default(); 5];
        let p = BringPoint::new(coords, TOL).unwrap();
        assert!(matches!(p.beta_i4(), Err(NumericError::DegeneratePoint(_))));
        assert!(matches!(p.beta_h(), Err(NumericError::DegeneratePoint(_))));
    }

    #[test]
    fn invalid_point_is_rejected() {
        let coords = [
            Complex64::new(1.0, 0.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(3.0, 0.0),
            Complex64::new(4.0, 0.0),
            Complex64::new(5.0, 0.0),
        ];
        assert!(matches!(
            BringPoint::new(coords, TOL),
            Err(NumericError::InvalidPoint(_))
        ));
    }

    #[test]
    fn regularized_identity_is_exact_symbolically() {
        // 15625 b^4 - D^2 = -1280 a^5 with D^2 = 5 (256 a^5 + 3125 b^4),
        // as an exact identity in the polynomial ring Q[a, b]
        use crate::algebra::poly::Poly;
        use crate::algebra::scalar::{rat_int, Rat};
        type Bi = Poly<Poly<Rat>>; // outer a, inner b
        let a5: Bi = Poly::monomial(Poly::constant(rat_int(1)), 5);
        let b4: Bi = Poly::constant(Poly::monomial(rat_int(1), 4));
        let d_squared = (a5.clone().scale(&Poly::constant(rat_int(256)))
            + b4.clone().scale(&Poly::constant(rat_int(3125))))
        .scale(&Poly::constant(rat_int(5)));
        let lhs = b4.scale(&Poly::constant(rat_int(15625))) - d_squared;
        let rhs = a5.scale(&Poly::constant(rat_int(-1280)));
        assert_eq!(lhs, rhs);
    }
}
