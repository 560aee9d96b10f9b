//! Canonical constructions of the icosahedral dessins I0 and I4, the
//! subgroup lattice of A5, the full quotient family and its diagram.
//!
//! Both dessins are built as regular dessins: darts are the 60 elements of
//! A5, `sigma` and `alpha` act by right multiplication, and subgroups of A5
//! act as automorphisms by left multiplication. This replaces hand-drawn
//! 60-entry dart tables; the acceptance checks pin the resulting passports
//! and genera.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dessin::{CoveringBranchData, Dessin, DessinError, Passport};
use crate::perm::{PermError, PermGroup, Permutation};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0} is not contained in {1} as concrete groups")]
    NotNested(String, String),
    #[error("the action does not descend to the quotient darts")]
    ActionDoesNotDescend,
    #[error(transparent)]
    Dessin(#[from] DessinError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// The subgroups of A5 up to conjugacy, in ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SubgroupName {
    E,
    Z2,
    Z3,
    V4,
    Z5,
    S3,
    D10,
    A4,
    A5,
}

impl SubgroupName {
    pub const ALL: [SubgroupName; 9] = [
        SubgroupName::E,
        SubgroupName::Z2,
        SubgroupName::Z3,
        SubgroupName::V4,
        SubgroupName::Z5,
        SubgroupName::S3,
        SubgroupName::D10,
        SubgroupName::A4,
        SubgroupName::A5,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SubgroupName::E => "e",
            SubgroupName::Z2 => "Z2",
            SubgroupName::Z3 => "Z3",
            SubgroupName::V4 => "V4",
            SubgroupName::Z5 => "Z5",
            SubgroupName::S3 => "S3",
            SubgroupName::D10 => "D10",
            SubgroupName::A4 => "A4",
            SubgroupName::A5 => "A5",
        }
    }

    pub fn expected_order(&self) -> usize {
        match self {
            SubgroupName::E => 1,
            SubgroupName::Z2 => 2,
            SubgroupName::Z3 => 3,
            SubgroupName::V4 => 4,
            SubgroupName::Z5 => 5,
            SubgroupName::S3 => 6,
            SubgroupName::D10 => 10,
            SubgroupName::A4 => 12,
            SubgroupName::A5 => 60,
        }
    }

    pub fn parse(s: &str) -> Option<SubgroupName> {
        SubgroupName::ALL
            .iter()
            .copied()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for SubgroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

/// A named subgroup of A5 with concrete generators in S5.
#[derive(Clone, Debug)]
pub struct SubgroupSpec {
    pub name: SubgroupName,
    pub generators: Vec<Permutation>,
}

impl SubgroupSpec {
    pub fn group(&self) -> PermGroup {
        PermGroup::closure(&self.generators).expect("subgroups of A5 are tiny")
    }
}

fn s5(cycles: &[&[usize]]) -> Permutation {
    let v: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(5, &v).expect("valid cycles")
}

/// Concrete representatives honoring the generators the curve derivations
/// use: `S3 = <(123),(12)(45)>` and `V4 = {(), (24)(35), (23)(45), (25)(34)}`.
pub fn subgroup_representatives() -> Vec<SubgroupSpec> {
    vec![
        SubgroupSpec {
            name: SubgroupName::E,
            generators: vec![Permutation::identity(5)],
        },
        SubgroupSpec {
            name: SubgroupName::Z2,
            generators: vec![s5(&[&[2, 4], &[3, 5]])],
        },
        SubgroupSpec {
            name: SubgroupName::Z3,
            generators: vec![s5(&[&[1, 2, 3]])],
        },
        SubgroupSpec {
            name: SubgroupName::V4,
            generators: vec![s5(&[&[2, 4], &[3, 5]]), s5(&[&[2, 3], &[4, 5]])],
        },
        SubgroupSpec {
            name: SubgroupName::Z5,
            generators: vec![s5(&[&[1, 2, 3, 4, 5]])],
        },
        SubgroupSpec {
            name: SubgroupName::S3,
            generators: vec![s5(&[&[1, 2, 3]]), s5(&[&[1, 2], &[4, 5]])],
        },
        SubgroupSpec {
            name: SubgroupName::D10,
            generators: vec![s5(&[&[1, 2, 3, 4, 5]]), s5(&[&[2, 5], &[3, 4]])],
        },
        SubgroupSpec {
            name: SubgroupName::A4,
            generators: vec![s5(&[&[2, 3, 4]]), s5(&[&[2, 4], &[3, 5]])],
        },
        SubgroupSpec {
            name: SubgroupName::A5,
            generators: vec![s5(&[&[1, 2, 3, 4, 5]]), s5(&[&[1, 2, 3]])],
        },
    ]
}

pub fn subgroup_spec(name: SubgroupName) -> SubgroupSpec {
    subgroup_representatives()
        .into_iter()
        .find(|s| s.name == name)
        .expect("all names are listed")
}

/// The alternating group A5 as an explicit element list (the dart set of the
/// regular dessins).
pub fn alternating_group_5() -> PermGroup {
    subgroup_spec(SubgroupName::A5).group()
}

/// The regular-dessin scaffold: dart `k` is the k-th element of A5 in the
/// deterministic element order; multiplications are looked up by index.
struct RegularScaffold {
    elements: Vec<Permutation>,
    index: BTreeMap<Permutation, usize>,
}

impl RegularScaffold {
    fn new() -> Self {
        let a5 = alternating_group_5();
        let elements = a5.elements().to_vec();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        RegularScaffold { elements, index }
    }

    /// Dart permutation `g -> g * h` (right multiplication).
    fn right_mult(&self, h: &Permutation) -> Permutation {
        let images = self
            .elements
            .iter()
            .map(|g| self.index[&g.compose(h)])
            .collect();
        Permutation::from_images(images).expect("right multiplication is a bijection")
    }

    /// Dart permutation `g -> h * g` (left multiplication).
    fn left_mult(&self, h: &Permutation) -> Permutation {
        let images = self
            .elements
            .iter()
            .map(|g| self.index[&h.compose(g)])
            .collect();
        Permutation::from_images(images).expect("left multiplication is a bijection")
    }
}

fn icosa_sigma_generator() -> Permutation {
    s5(&[&[1, 2, 3, 4, 5]])
}

fn icosa_alpha_generator() -> Permutation {
    s5(&[&[2, 3], &[4, 5]])
}

/// The regular icosahedron with white vertices at edge midpoints:
/// passport `[5^12 | 2^30 | 3^20]`, genus 0.
pub fn build_i0() -> Dessin {
    let scaffold = RegularScaffold::new();
    let sigma = scaffold.right_mult(&icosa_sigma_generator());
    let alpha = scaffold.right_mult(&icosa_alpha_generator());
    Dessin::new(sigma, alpha).expect("the icosahedral pair is transitive")
}

/// The icosahedron of genus 4: same darts, `sigma` squared.
pub fn build_i4() -> Dessin {
    let scaffold = RegularScaffold::new();
    let a = icosa_sigma_generator();
    let sigma = scaffold.right_mult(&a.compose(&a));
    let alpha = scaffold.right_mult(&icosa_alpha_generator());
    Dessin::new(sigma, alpha).expect("the genus-4 pair is transitive")
}

/// Embed a subgroup of A5 into Aut(I4) as left multiplications of darts.
pub fn embed_subgroup(spec: &SubgroupSpec) -> PermGroup {
    let scaffold = RegularScaffold::new();
    let elements = spec
        .group()
        .elements()
        .iter()
        .map(|h| scaffold.left_mult(h))
        .collect();
    PermGroup::from_elements(scaffold.elements.len(), elements)
}

/// One node of the quotient family.
#[derive(Clone)]
pub struct FamilyNode {
    pub name: SubgroupName,
    pub group_order: usize,
    pub dessin: Dessin,
    pub passport: Passport,
    pub genus: usize,
}

/// Quotients of I4 by every subgroup representative, in ascending order.
pub fn quotient_family() -> Vec<FamilyNode> {
    let i4 = build_i4();
    subgroup_representatives()
        .iter()
        .map(|spec| {
            let embedded = embed_subgroup(spec);
            let dessin = i4
                .quotient(&embedded)
                .expect("left multiplications are automorphisms");
            FamilyNode {
                name: spec.name,
                group_order: embedded.order(),
                passport: dessin.passport(),
                genus: dessin.genus(),
                dessin,
            }
        })
        .collect()
}

/// Outcome of a commutative-triangle check `I4 -> I4/N -> I4/NM`.
pub struct TriangleReport {
    /// Index of the second covering, `|NM| / |N|`.
    pub index: usize,
    /// Tower quotient vs direct quotient agree up to isomorphism.
    pub commutes: bool,
    /// Branch data of the covering `I4/N -> I4/NM`.
    pub branch: CoveringBranchData,
}

/// Verify that quotienting in stages agrees with quotienting at once.
/// Requires `n` to be contained in `nm` as concrete groups (all four paper
/// triangles are literally nested and normal).
pub fn check_triangle(n: &SubgroupSpec, nm: &SubgroupSpec) -> Result<TriangleReport, CatalogError> {
    let n_group = n.group();
    let nm_group = nm.group();
    if !n_group.is_subgroup_of(&nm_group) {
        return Err(CatalogError::NotNested(
            n.name.to_string(),
            nm.name.to_string(),
        ));
    }
    let i4 = build_i4();
    let (stage_one, orbit_of) = i4.quotient_with_map(&embed_subgroup(n))?;

    // push the NM action down to N-orbits
    let scaffold = RegularScaffold::new();
    let k = stage_one.n_darts();
    let mut induced = Vec::new();
    for h in nm_group.elements() {
        let up = scaffold.left_mult(h);
        let mut images = vec![usize::MAX; k];
        for d in 0..i4.n_darts() {
            let from = orbit_of[d];
            let to = orbit_of[up.apply(d)];
            if images[from] == usize::MAX {
                images[from] = to;
            } else if images[from] != to {
                return Err(CatalogError::ActionDoesNotDescend);
            }
        }
        induced.push(
            Permutation::from_images(images).map_err(|_| CatalogError::ActionDoesNotDescend)?,
        );
    }
    let induced_group = PermGroup::from_elements(k, induced);
    let branch = stage_one.covering_branch_data(&induced_group)?;
    let tower = stage_one.quotient(&induced_group)?;
    let direct = i4.quotient(&embed_subgroup(nm))?;
    Ok(TriangleReport {
        index: nm_group.order() / n_group.order(),
        commutes: tower.is_isomorphic_to(&direct),
        branch,
    })
}

/// The quotient diagram: family nodes plus containment edges.
pub struct QuotientDiagram {
    pub nodes: Vec<FamilyNode>,
    /// `(from, to, index)` as indices into `nodes`; the arrow points from
    /// the smaller subgroup's quotient to the larger's.
    pub edges: Vec<(usize, usize, usize)>,
}

/// True iff some A5-conjugate of `h1` is contained in `h2`.
fn conjugate_subgroup_of(h1: &PermGroup, h2: &PermGroup, ambient: &PermGroup) -> bool {
    ambient.elements().iter().any(|g| {
        h1.elements()
            .iter()
            .all(|e| h2.contains(&e.conjugate_by(g)))
    })
}

/// Build the full diagram: nodes for every subgroup representative, edges for
/// proper containment up to conjugacy in A5, transitively reduced.
///
/// Only group-quotient arrows appear. Decompositions coming from hidden
/// symmetries of the quotient dessins are not derivable from the subgroup
/// lattice and are intentionally absent.
pub fn build_quotient_diagram() -> QuotientDiagram {
    let nodes = quotient_family();
    let specs = subgroup_representatives();
    let groups: Vec<PermGroup> = specs.iter().map(|s| s.group()).collect();
    let ambient = alternating_group_5();
    let m = nodes.len();
    let mut contained = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            if i != j
                && groups[i].order() < groups[j].order()
                && conjugate_subgroup_of(&groups[i], &groups[j], &ambient)
            {
                contained[i][j] = true;
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if !contained[i][j] {
                continue;
            }
            let redundant = (0..m).any(|k| contained[i][k] && contained[k][j]);
            if !redundant {
                edges.push((i, j, groups[j].order() / groups[i].order()));
            }
        }
    }
    QuotientDiagram { nodes, edges }
}

/// Render the diagram as deterministic Graphviz DOT text.
pub fn diagram_dot(diagram: &QuotientDiagram) -> String {
    let mut out = String::from("digraph quotients {\n");
    for node in &diagram.nodes {
        out.push_str(&format!(
            "    \"I4/{}\" [label=\"I4/{} (genus {}, [{}])\"];\n",
            node.name,
            node.name,
            node.genus,
            node.passport.compact()
        ));
    }
    for &(from, to, index) in &diagram.edges {
        out.push_str(&format!(
            "    \"I4/{}\" -> \"I4/{}\" [label=\"{}\"];\n",
            diagram.nodes[from].name, diagram.nodes[to].name, index
        ));
    }
    out.push_str("}\n");
    out
}

/// JSON-friendly summary of a family node.
#[derive(Serialize)]
pub struct FamilyNodeSummary {
    pub group: String,
    pub order: usize,
    pub n_darts: usize,
    pub genus: usize,
    pub passport: Passport,
}

impl FamilyNode {
    pub fn summary(&self) -> FamilyNodeSummary {
        FamilyNodeSummary {
            group: self.name.to_string(),
            order: self.group_order,
            n_darts: self.dessin.n_darts(),
            genus: self.genus,
            passport: self.passport.clone(),
        }
    }
}
