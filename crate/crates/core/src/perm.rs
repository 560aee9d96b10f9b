//! Exact permutation arithmetic and explicit small-group computations.
//!
//! Darts are 1-based in every external format (cycle lists, JSON, error
//! messages); storage is 0-based. The product convention is fixed once:
//! `(p * q)(x) = p(q(x))`, i.e. the right factor acts first.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PermError {
    #[error("image list is not a bijection on 1..{0}")]
    NotBijection(usize),
    #[error("cycle entry {entry} out of range 1..{degree}")]
    CycleOutOfRange { entry: usize, degree: usize },
    #[error("dart {0} appears in more than one cycle")]
    RepeatedEntry(usize),
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("group order exceeds the safety cap of {0}")]
    OrderCapExceeded(usize),
    #[error("generators are not transitive; orbits: {0}")]
    NotTransitive(String),
    #[error("a group needs at least one generator")]
    NoGenerators,
}

/// A permutation of `{1..n}`, stored as the 0-based image table.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// Build from a 0-based image table.
    pub fn from_images(images: Vec<usize>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(PermError::NotBijection(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from 1-based disjoint cycles; darts not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (k, &entry) in cycle.iter().enumerate() {
                if entry == 0 || entry > n {
                    return Err(PermError::CycleOutOfRange { entry, degree: n });
                }
                if seen[entry - 1] {
                    return Err(PermError::RepeatedEntry(entry));
                }
                seen[entry - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > n {
                    return Err(PermError::CycleOutOfRange {
                        entry: next,
                        degree: n,
                    });
                }
                images[entry - 1] = next - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based dart.
    pub fn apply(&self, dart: usize) -> usize {
        self.images[dart]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self * other)(x) = self(other(x))`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    /// `r * self * r^{-1}`.
    pub fn conjugate_by(&self, r: &Permutation) -> Permutation {
        r.compose(self).compose(&r.inverse())
    }

    /// Disjoint cycles, 1-based, each starting at its minimal dart and the
    /// cycles sorted by that minimum. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cycle.push(cur + 1);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Multiset of cycle lengths, sorted descending. Fixed points count as
    /// length-1 cycles.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// +1 for even permutations, -1 for odd.
    pub fn sign(&self) -> i32 {
        let transpositions = self.degree() - self.cycles().len();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "()");
        }
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            write!(f, "(")?;
            for (k, d) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{d}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Orbits of `{1..n}` under the group generated by `gens` (0-based darts
/// internally; the returned orbits are 0-based and sorted).
pub fn orbits(gens: &[Permutation], n: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for g in gens {
                for y in [g.apply(x), g.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                        stack.push(y);
                    }
                }
            }
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// True iff the group generated by `gens` acts transitively on `{1..n}`.
pub fn is_transitive(gens: &[Permutation], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    orbits(gens, n).len() == 1
}

fn orbits_report(gens: &[Permutation], n: usize) -> String {
    let os = orbits(gens, n);
    let parts: Vec<String> = os
        .iter()
        .map(|o| {
            let darts: Vec<String> = o.iter().map(|d| (d + 1).to_string()).collect();
            format!("{{{}}}", darts.join(","))
        })
        .collect();
    parts.join(" ")
}

/// An explicitly listed permutation group (the element lists stay tiny:
/// everything here lives inside S5 or acts on at most 60 darts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

/// Safety cap for explicit closures.
pub const CLOSURE_CAP: usize = 10_000;

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            elements: vec![Permutation::identity(degree)],
        }
    }

    /// Breadth-first closure of the generators under products.
    pub fn closure(gens: &[Permutation]) -> Result<Self, PermError> {
        let first = gens.first().ok_or(PermError::NoGenerators)?;
        let degree = first.degree();
        for g in gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut elements = BTreeSet::new();
        elements.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let product = e.compose(g);
                if elements.insert(product.clone()) {
                    if elements.len() > CLOSURE_CAP {
                        return Err(PermError::OrderCapExceeded(CLOSURE_CAP));
                    }
                    frontier.push(product);
                }
            }
        }
        Ok(PermGroup {
            degree,
            elements: elements.into_iter().collect(),
        })
    }

    pub fn from_elements(degree: usize, elements: Vec<Permutation>) -> Self {
        let mut set: BTreeSet<Permutation> = elements.into_iter().collect();
        set.insert(Permutation::identity(degree));
        PermGroup {
            degree,
            elements: set.into_iter().collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Elements in a deterministic (lexicographic) order.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }
}

/// All permutations of `{1..n}` commuting with every generator.
///
/// Requires the generated group to be transitive: a commuting element is then
/// determined by the image of dart 1, so the n candidates are each checked by
/// orbit propagation. The result acts freely, hence its order divides n.
pub fn centralizer_in_symmetric(gens: &[Permutation], n: usize) -> Result<PermGroup, PermError> {
    if !is_transitive(gens, n) {
        return Err(PermError::NotTransitive(orbits_report(gens, n)));
    }
    let mut found = Vec::new();
    'candidates: for image_of_first in 0..n {
        let mut map = vec![usize::MAX; n];
        map[0] = image_of_first;
        let mut stack = vec![0usize];
        while let Some(x) = stack.pop() {
            for g in gens {
                // c(g(x)) = g(c(x)) with both directions of g
                for (from, to) in [
                    (g.apply(x), g.apply(map[x])),
                    (g.inverse().apply(x), g.inverse().apply(map[x])),
                ] {
                    if map[from] == usize::MAX {
                        map[from] = to;
                        stack.push(from);
                    } else if map[from] != to {
                        continue 'candidates;
                    }
                }
            }
        }
        if map.contains(&usize::MAX) {
            continue;
        }
        if let Ok(p) = Permutation::from_images(map) {
            if gens.iter().all(|g| p.compose(g) == g.compose(&p)) {
                found.push(p);
            }
        }
    }
    Ok(PermGroup::from_elements(n, found))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let v: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &v).unwrap()
    }

    /// The running example: sigma = (1)(23456), alpha = (12)(3)(45)(6).
    fn example_pair() -> (Permutation, Permutation) {
        (cyc(6, &[&[2, 3, 4, 5, 6]]), cyc(6, &[&[1, 2], &[4, 5]]))
    }

    #[test]
    fn cycle_types() {
        let (sigma, alpha) = example_pair();
        assert_eq!(sigma.cycle_type(), vec![5, 1]);
        assert_eq!(alpha.cycle_type(), vec![2, 2, 1, 1]);
        assert_eq!(Permutation::identity(5).cycle_type(), vec![1, 1, 1, 1, 1]);
        // (sigma alpha)^{-1} = (12643)(5)
        let face = sigma.compose(&alpha).inverse();
        assert_eq!(face.cycle_type(), vec![5, 1]);
        assert_eq!(face.cycles()[0], vec![1, 2, 6, 4, 3]);
    }

    #[test]
    fn product_convention_is_right_factor_first() {
        let (sigma, alpha) = example_pair();
        // (sigma*alpha)(1): alpha sends 1->2, sigma sends 2->3
        assert_eq!(sigma.compose(&alpha).apply(0), 2);
    }

    #[test]
    fn transitivity() {
        let (sigma, alpha) = example_pair();
        assert!(is_transitive(&[sigma, alpha], 6));
        assert!(!is_transitive(&[Permutation::identity(2)], 2));
        assert!(!is_transitive(&[cyc(4, &[&[1, 2], &[3, 4]])], 4));
        assert!(!is_transitive(&[], 2));
        assert!(is_transitive(&[], 1));
    }

    #[test]
    fn closure_orders() {
        let five_cycle = cyc(5, &[&[1, 2, 3, 4, 5]]);
        assert_eq!(
            PermGroup::closure(std::slice::from_ref(&five_cycle))
                .unwrap()
                .order(),
            5
        );
        let s3 = PermGroup::closure(&[cyc(5, &[&[1, 2, 3]]), cyc(5, &[&[1, 2], &[4, 5]])]).unwrap();
        assert_eq!(s3.order(), 6);
        let d10 = PermGroup::closure(&[five_cycle, cyc(5, &[&[2, 5], &[3, 4]])]).unwrap();
        assert_eq!(d10.order(), 10);
        assert!(PermGroup::closure(&[]).is_err());
    }

    #[test]
    fn closure_cap() {
        // S7 has order 5040 < cap; S8 has order 40320 > cap
        let s8 = [cyc(8, &[&[1, 2]]), cyc(8, &[&[1, 2, 3, 4, 5, 6, 7, 8]])];
        assert!(matches!(
            PermGroup::closure(&s8),
            Err(PermError::OrderCapExceeded(_))
        ));
    }

    #[test]
    fn centralizer_of_example_is_trivial() {
        let (sigma, alpha) = example_pair();
        let c = centralizer_in_symmetric(&[sigma, alpha], 6).unwrap();
        assert_eq!(c.order(), 1);
    }

    #[test]
    fn centralizer_of_full_cycle_is_cyclic() {
        for n in 2..=7 {
            let cycle: Vec<usize> = (1..=n).collect();
            let p = Permutation::from_cycles(n, &[cycle]).unwrap();
            let c = centralizer_in_symmetric(std::slice::from_ref(&p), n).unwrap();
            assert_eq!(c.order(), n);
            // it is generated by the cycle itself
            assert!(c.contains(&p));
        }
    }

    #[test]
    fn centralizer_requires_transitivity() {
        let p = cyc(4, &[&[1, 2], &[3, 4]]);
        assert!(centralizer_in_symmetric(&[p], 4).is_err());
    }

    #[test]
    fn centralizer_is_closure_fixed_point() {
        let p = Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap();
        let group = centralizer_in_symmetric(&[p], 6).unwrap();
        let re_closed = PermGroup::closure(group.elements()).unwrap();
        assert_eq!(group, re_closed);
    }

    #[test]
    fn centralizer_elements_act_freely() {
        let p = Permutation::from_cycles(6, &[vec![1, 2, 3, 4, 5, 6]]).unwrap();
        let group = centralizer_in_symmetric(&[p], 6).unwrap();
        for e in group.elements() {
            if !e.is_identity() {
                assert!((0..6).all(|d| e.apply(d) != d));
            }
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just(n).prop_perturb(move |n, mut rng| {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (rng.next_u64() as usize) % (i + 1);
                images.swap(i, j);
            }
            Permutation::from_images(images).unwrap()
        })
    }

    proptest! {
        #[test]
        fn conjugation_preserves_cycle_type(
            p in arb_perm(8),
            q in arb_perm(8),
        ) {
            prop_assert_eq!(p.conjugate_by(&q).cycle_type(), p.cycle_type());
        }

        #[test]
        fn inverse_composes_to_identity(p in arb_perm(9)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            prop_assert!(p.inverse().compose(&p).is_identity());
        }
    }
}
