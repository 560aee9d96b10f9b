//! Dessins d'enfants as permutation pairs: passports, genus, automorphisms,
//! quotients, duality and isomorphism testing.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{centralizer_in_symmetric, is_transitive, orbits, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum DessinError {
    #[error("sigma and alpha have different degrees: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("the pair is not transitive; orbits: {0}")]
    NotTransitive(String),
    #[error("{0} is not an automorphism of the dessin")]
    NotAutomorphism(String),
    #[error(transparent)]
    Perm(#[from] crate::perm::PermError),
    #[error("invalid dessin document: {0}")]
    Document(String),
}

/// A dessin: a transitive pair `(sigma, alpha)` acting on `n` darts.
/// `sigma` rotates darts around black vertices, `alpha` around white ones;
/// faces are the cycles of `(sigma * alpha)^{-1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Dessin {
    n: usize,
    sigma: Permutation,
    alpha: Permutation,
}

/// Degree multisets (descending) of black vertices, white vertices and faces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Passport {
    pub black: Vec<usize>,
    pub white: Vec<usize>,
    pub faces: Vec<usize>,
}

impl Passport {
    /// Compact form like `5^12|2^30|5^12`.
    pub fn compact(&self) -> String {
        fn side(v: &[usize]) -> String {
            let mut parts = Vec::new();
            let mut idx = 0;
            while idx < v.len() {
                let mut run = 1;
                while idx + run < v.len() && v[idx + run] == v[idx] {
                    run += 1;
                }
                if run == 1 {
                    parts.push(format!("{}", v[idx]));
                } else {
                    parts.push(format!("{}^{}", v[idx], run));
                }
                idx += run;
            }
            parts.join(",")
        }
        format!(
            "{}|{}|{}",
            side(&self.black),
            side(&self.white),
            side(&self.faces)
        )
    }
}

impl fmt::Display for Passport {
    /// Plain form like `{5,1|2,2,1,1|5,1}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join(v: &[usize]) -> String {
            v.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        write!(
            f,
            "{{{}|{}|{}}}",
            join(&self.black),
            join(&self.white),
            join(&self.faces)
        )
    }
}

/// Branch data of the covering `dessin -> dessin/G`, per cell color.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringBranchData {
    pub group_order: usize,
    pub genus_above: usize,
    pub genus_below: usize,
    /// Sum of (ramification index - 1) over upstairs cells, per color.
    pub branch_black: usize,
    pub branch_white: usize,
    pub branch_faces: usize,
}

impl CoveringBranchData {
    pub fn branch_total(&self) -> usize {
        self.branch_black + self.branch_white + self.branch_faces
    }

    /// The Riemann-Hurwitz relation
    /// `2g - 2 = |G| (2g' - 2) + sum (e - 1)`, checked exactly in integers.
    pub fn riemann_hurwitz_holds(&self) -> bool {
        let lhs = 2 * self.genus_above as i64 - 2;
        let rhs = self.group_order as i64 * (2 * self.genus_below as i64 - 2)
            + self.branch_total() as i64;
        lhs == rhs
    }

    pub fn is_unbranched(&self) -> bool {
        self.branch_total() == 0
    }
}

impl Dessin {
    pub fn new(sigma: Permutation, alpha: Permutation) -> Result<Self, DessinError> {
        if sigma.degree() != alpha.degree() {
            return Err(DessinError::DegreeMismatch(sigma.degree(), alpha.degree()));
        }
        let n = sigma.degree();
        let gens = [sigma.clone(), alpha.clone()];
        if !is_transitive(&gens, n) {
            let os = orbits(&gens, n);
            let report = os
                .iter()
                .map(|o| {
                    let darts: Vec<String> = o.iter().map(|d| (d + 1).to_string()).collect();
                    format!("{{{}}}", darts.join(","))
                })
                .collect::<Vec<_>>()
                .join(" ");
            return Err(DessinError::NotTransitive(report));
        }
        Ok(Dessin { n, sigma, alpha })
    }

    pub fn n_darts(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn alpha(&self) -> &Permutation {
        &self.alpha
    }

    /// `(sigma * alpha)^{-1}`.
    pub fn face_permutation(&self) -> Permutation {
        self.sigma.compose(&self.alpha).inverse()
    }

    pub fn passport(&self) -> Passport {
        Passport {
            black: self.sigma.cycle_type(),
            white: self.alpha.cycle_type(),
            faces: self.face_permutation().cycle_type(),
        }
    }

    /// Genus from the Euler formula
    /// `2 - 2g = #black + #white - n + #faces`.
    pub fn genus(&self) -> usize {
        let p = self.passport();
        let chi =
            p.black.len() as i64 + p.white.len() as i64 - self.n as i64 + p.faces.len() as i64;
        let two_g = 2 - chi;
        assert!(
            two_g >= 0 && two_g % 2 == 0,
            "Euler characteristic {chi} impossible for a valid dessin"
        );
        (two_g / 2) as usize
    }

    /// Automorphisms: permutations commuting with both sigma and alpha.
    /// Acts freely on darts because the pair is transitive.
    pub fn automorphism_group(&self) -> PermGroup {
        centralizer_in_symmetric(&[self.sigma.clone(), self.alpha.clone()], self.n)
            .expect("a dessin is transitive by construction")
    }

    /// Quotient dessin together with the orbit index of each dart.
    ///
    /// Orbits are labeled canonically: sorted by their minimal original dart,
    /// so repeated runs produce identical output.
    pub fn quotient_with_map(
        &self,
        group: &PermGroup,
    ) -> Result<(Dessin, Vec<usize>), DessinError> {
        if group.degree() != self.n {
            return Err(DessinError::DegreeMismatch(group.degree(), self.n));
        }
        for e in group.elements() {
            if e.compose(&self.sigma) != self.sigma.compose(e)
                || e.compose(&self.alpha) != self.alpha.compose(e)
            {
                return Err(DessinError::NotAutomorphism(e.to_string()));
            }
        }
        let orbit_lists = orbits(group.elements(), self.n);
        // orbits() scans darts in increasing order, so orbit k has the k-th
        // smallest minimum; the labeling is already canonical.
        let mut orbit_of = vec![usize::MAX; self.n];
        for (label, orbit) in orbit_lists.iter().enumerate() {
            for &d in orbit {
                orbit_of[d] = label;
            }
        }
        let k = orbit_lists.len();
        let mut qsigma = vec![usize::MAX; k];
        let mut qalpha = vec![usize::MAX; k];
        for d in 0..self.n {
            qsigma[orbit_of[d]] = orbit_of[self.sigma.apply(d)];
            qalpha[orbit_of[d]] = orbit_of[self.alpha.apply(d)];
        }
        let qs = Permutation::from_images(qsigma).expect("induced sigma is a bijection");
        let qa = Permutation::from_images(qalpha).expect("induced alpha is a bijection");
        let q = Dessin::new(qs, qa)?;
        Ok((q, orbit_of))
    }

    pub fn quotient(&self, group: &PermGroup) -> Result<Dessin, DessinError> {
        Ok(self.quotient_with_map(group)?.0)
    }

    /// Branch data of the covering onto the quotient by `group`:
    /// ramification indices are cycle-length drops, color by color.
    pub fn covering_branch_data(
        &self,
        group: &PermGroup,
    ) -> Result<CoveringBranchData, DessinError> {
        let (q, orbit_of) = self.quotient_with_map(group)?;
        let color_branch = |up: &Permutation, down: &Permutation| -> usize {
            let down_len = cycle_length_at(down);
            let mut total = 0;
            for cycle in up.cycles() {
                let rep = cycle[0] - 1;
                let below = down_len[orbit_of[rep]];
                let e = cycle.len() / below;
                assert_eq!(
                    e * below,
                    cycle.len(),
                    "cycle length must drop by a divisor"
                );
                total += e - 1;
            }
            total
        };
        Ok(CoveringBranchData {
            group_order: group.order(),
            genus_above: self.genus(),
            genus_below: q.genus(),
            branch_black: color_branch(&self.sigma, q.sigma()),
            branch_white: color_branch(&self.alpha, q.alpha()),
            branch_faces: color_branch(&self.face_permutation(), &q.face_permutation()),
        })
    }

    /// The dual dessin: black vertices and faces exchange, whites persist.
    /// Construction: `sigma* = (sigma alpha)^{-1}`, `alpha* = alpha`.
    pub fn dual(&self) -> Dessin {
        Dessin::new(self.face_permutation(), self.alpha.clone())
            .expect("dual of a transitive pair is transitive")
    }

    /// True iff a dart relabeling conjugates one pair onto the other.
    /// The search anchors on the image of dart 1 and propagates.
    pub fn is_isomorphic_to(&self, other: &Dessin) -> bool {
        if self.n != other.n {
            return false;
        }
        if self.passport() != other.passport() {
            return false;
        }
        let n = self.n;
        'candidates: for anchor in 0..n {
            let mut map = vec![usize::MAX; n];
            map[0] = anchor;
            let mut stack = vec![0usize];
            while let Some(x) = stack.pop() {
                for (g1, g2) in [(&self.sigma, &other.sigma), (&self.alpha, &other.alpha)] {
                    let pairs = [
                        (g1.apply(x), g2.apply(map[x])),
                        (g1.inverse().apply(x), g2.inverse().apply(map[x])),
                    ];
                    for (from, to) in pairs {
                        if map[from] == usize::MAX {
                            map[from] = to;
                            stack.push(from);
                        } else if map[from] != to {
                            continue 'candidates;
                        }
                    }
                }
            }
            if map.iter().all(|&v| v != usize::MAX) {
                if let Ok(r) = Permutation::from_images(map) {
                    if self.sigma.conjugate_by(&r) == other.sigma
                        && self.alpha.conjugate_by(&r) == other.alpha
                    {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn to_document(&self) -> DessinDocument {
        DessinDocument {
            n: self.n,
            sigma: self.sigma.cycles(),
            alpha: self.alpha.cycles(),
        }
    }

    pub fn from_document(doc: &DessinDocument) -> Result<Dessin, DessinError> {
        let sigma = Permutation::from_cycles(doc.n, &doc.sigma)
            .map_err(|e| DessinError::Document(e.to_string()))?;
        let alpha = Permutation::from_cycles(doc.n, &doc.alpha)
            .map_err(|e| DessinError::Document(e.to_string()))?;
        Dessin::new(sigma, alpha)
    }
}

fn cycle_length_at(p: &Permutation) -> Vec<usize> {
    let mut out = vec![0; p.degree()];
    for cycle in p.cycles() {
        for &d in &cycle {
            out[d - 1] = cycle.len();
        }
    }
    out
}

/// JSON document form: 1-based cycle lists. Fixed points may be omitted on
/// input; output always lists them.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DessinDocument {
    pub n: usize,
    pub sigma: Vec<Vec<usize>>,
    pub alpha: Vec<Vec<usize>>,
}

impl fmt::Debug for Dessin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Dessin(n={}, sigma={}, alpha={})",
            self.n, self.sigma, self.alpha
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let v: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &v).unwrap()
    }

    fn example_dessin() -> Dessin {
        Dessin::new(cyc(6, &[&[2, 3, 4, 5, 6]]), cyc(6, &[&[1, 2], &[4, 5]])).unwrap()
    }

    #[test]
    fn example_passport_and_genus() {
        let d = example_dessin();
        assert_eq!(d.n_darts(), 6);
        let p = d.passport();
        assert_eq!(p.black, vec![5, 1]);
        assert_eq!(p.white, vec![2, 2, 1, 1]);
        assert_eq!(p.faces, vec![5, 1]);
        assert_eq!(d.genus(), 0);
        assert_eq!(p.to_string(), "{5,1|2,2,1,1|5,1}");
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        let e = Dessin::new(Permutation::identity(2), Permutation::identity(2));
        assert!(matches!(e, Err(DessinError::NotTransitive(_))));
        let e2 = Dessin::new(Permutation::identity(2), Permutation::identity(3));
        assert!(matches!(e2, Err(DessinError::DegreeMismatch(2, 3))));
    }

    #[test]
    fn automorphisms_of_example() {
        let d = example_dessin();
        assert_eq!(d.automorphism_group().order(), 1);
    }

    #[test]
    fn dual_exchanges_black_and_faces() {
        let d = example_dessin();
        let dual = d.dual();
        let p = d.passport();
        let pd = dual.passport();
        assert_eq!(pd.black, p.faces);
        assert_eq!(pd.faces, p.black);
        assert_eq!(pd.white, p.white);
        assert!(d.dual().dual().is_isomorphic_to(&d));
    }

    #[test]
    fn isomorphism_basics() {
        let d = example_dessin();
        assert!(d.is_isomorphic_to(&d));
        // relabeled copy: conjugate both permutations by a random relabeling
        let r = cyc(6, &[&[1, 3, 5], &[2, 6]]);
        let d2 = Dessin::new(d.sigma().conjugate_by(&r), d.alpha().conjugate_by(&r)).unwrap();
        assert!(d.is_isomorphic_to(&d2));
    }

    #[test]
    fn quotient_by_trivial_group_is_identity() {
        let d = example_dessin();
        let q = d.quotient(&PermGroup::trivial(6)).unwrap();
        assert_eq!(q, d);
    }

    #[test]
    fn quotient_rejects_non_automorphisms() {
        let d = example_dessin();
        let bad = PermGroup::closure(&[cyc(6, &[&[1, 2]])]).unwrap();
        assert!(matches!(
            d.quotient(&bad),
            Err(DessinError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn document_roundtrip_explicit_fixed_points() {
        let d = example_dessin();
        let doc = d.to_document();
        // fixed points must be explicit on output
        assert!(doc.sigma.contains(&vec![1]));
        assert!(doc.alpha.contains(&vec![3]));
        let back = Dessin::from_document(&doc).unwrap();
        assert_eq!(back, d);
        // omitted fixed points accepted on input
        let partial = DessinDocument {
            n: 6,
            sigma: vec![vec![2, 3, 4, 5, 6]],
            alpha: vec![vec![1, 2], vec![4, 5]],
        };
        assert_eq!(Dessin::from_document(&partial).unwrap(), d);
    }

    #[test]
    fn json_wire_format() {
        let d = example_dessin();
        let text = serde_json::to_string(&d.to_document()).unwrap();
        let doc: DessinDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(Dessin::from_document(&doc).unwrap(), d);
    }
}
