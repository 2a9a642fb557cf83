use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use super::{GroupError, Perm};

/// Default cap on the size of an element closure.
pub const DEFAULT_CLOSURE_BOUND: usize = 10080;

/// Degrees up to which `S_d` may be scanned exhaustively.
pub const SD_SCAN_DEGREE: usize = 8;

/// A subgroup of `S_d` with its full element list.
///
/// Elements are listed breadth-first from the identity: each layer holds the
/// new products `x·g` of the previous layer with the generators, sorted.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Arc<Vec<Perm>>,
    index: Arc<HashMap<Perm, usize>>,
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Perm>) -> Result<PermGroup, GroupError> {
        Self::with_bound(degree, gens, DEFAULT_CLOSURE_BOUND)
    }

    pub fn with_bound(
        degree: usize,
        gens: Vec<Perm>,
        bound: usize,
    ) -> Result<PermGroup, GroupError> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
        let id = Perm::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut layer = vec![0usize];
        while !layer.is_empty() {
            let mut fresh: BTreeSet<Perm> = BTreeSet::new();
            for &x in &layer {
                for g in &gens {
                    let y = elements[x].mul(g);
                    if !index.contains_key(&y) {
                        fresh.insert(y);
                    }
                }
            }
            if elements.len() + fresh.len() > bound {
                return Err(GroupError::BoundExceeded(bound));
            }
            layer = Vec::with_capacity(fresh.len());
            for y in fresh {
                index.insert(y.clone(), elements.len());
                layer.push(elements.len());
                elements.push(y);
            }
        }
        Ok(PermGroup {
            degree,
            gens,
            elements: Arc::new(elements),
            index: Arc::new(index),
        })
    }

    /// Parse generators in cycle notation.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<PermGroup, GroupError> {
        let gens = gens
            .iter()
            .map(|g| Perm::parse(g, degree))
            .collect::<Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, Vec::new()).expect("trivial group")
    }

    /// The group whose elements are exactly `elems` (assumed closed).
    pub fn from_elements(degree: usize, elems: &[Perm]) -> Result<PermGroup, GroupError> {
        let mut gens: Vec<Perm> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        let bound = elems.len().max(DEFAULT_CLOSURE_BOUND);
        for e in elems {
            if !current.contains(e) {
                gens.push(e.clone());
                current = PermGroup::with_bound(degree, gens.clone(), bound)?;
            }
        }
        if current.order() != elems.len() {
            return Err(GroupError::NotClosed);
        }
        Ok(current)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn position(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .tuple_combinations()
            .all(|(a, b)| a.mul(b) == b.mul(a))
    }

    /// Same element set (generators may differ).
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    /// `self ◁ g`: conjugates of generators by generators stay inside.
    pub fn is_normal_in(&self, g: &PermGroup) -> bool {
        self.is_subgroup_of(g)
            && g.gens
                .iter()
                .all(|x| self.gens.iter().all(|h| self.contains(&x.conjugate(h))))
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: Vec<Perm>) -> Result<PermGroup, GroupError> {
        if let Some(g) = gens.iter().find(|g| !self.contains(g)) {
            return Err(GroupError::NotInGroup(g.to_string()));
        }
        PermGroup::new(self.degree, gens)
    }

    pub fn join(&self, other: &PermGroup) -> Result<PermGroup, GroupError> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        PermGroup::new(self.degree, gens)
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            let mut orb = vec![s];
            seen[s] = true;
            let mut k = 0;
            while k < orb.len() {
                let p = orb[k];
                k += 1;
                for g in &self.gens {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orb.push(q);
                    }
                }
            }
            orb.sort_unstable();
            out.push(orb);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbits().len() == 1
    }

    /// `p · self · p⁻¹`.
    pub fn conjugate_by(&self, p: &Perm) -> PermGroup {
        PermGroup::new(
            self.degree,
            self.gens.iter().map(|g| p.conjugate(g)).collect(),
        )
        .expect("conjugate has the same order")
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|e| other.contains(e))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, &elems).expect("intersection is a group")
    }

    /// Largest normal subgroup of `g` inside `self`.
    pub fn normal_core_in(&self, g: &PermGroup) -> Result<PermGroup, GroupError> {
        if !self.is_subgroup_of(g) {
            return Err(GroupError::NotSubgroup);
        }
        let elems: Vec<Perm> = self
            .elements
            .iter()
            .filter(|h| g.elements.iter().all(|x| self.contains(&x.conjugate(h))))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, &elems)
    }

    /// Elements `x ∈ over` with `x·self·x⁻¹ = self`.
    pub fn normalizer_in(&self, over: &PermGroup) -> PermGroup {
        let elems: Vec<Perm> = over
            .elements
            .iter()
            .filter(|x| self.gens.iter().all(|h| self.contains(&x.conjugate(h))))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, &elems).expect("normalizer is a group")
    }

    pub fn centralizer_in(&self, over: &PermGroup) -> PermGroup {
        let elems: Vec<Perm> = over
            .elements
            .iter()
            .filter(|x| self.gens.iter().all(|h| x.mul(h) == h.mul(x)))
            .cloned()
            .collect();
        PermGroup::from_elements(self.degree, &elems).expect("centralizer is a group")
    }

    fn scan_sd(&self, keep: impl Fn(&Perm) -> bool) -> Result<PermGroup, GroupError> {
        if self.degree > SD_SCAN_DEGREE {
            return Err(GroupError::DegreeTooLarge(self.degree));
        }
        let elems: Vec<Perm> = (0..self.degree)
            .permutations(self.degree)
            .map(|p| Perm::from_images(p).expect("permutation"))
            .filter(|p| keep(p))
            .collect();
        PermGroup::from_elements(self.degree, &elems)
    }

    /// `N_{S_d}(self)`, scanning `S_d` (d ≤ 8) or the given overgroup.
    pub fn normalizer_in_sd(&self, over: Option<&PermGroup>) -> Result<PermGroup, GroupError> {
        match over {
            Some(o) => Ok(self.normalizer_in(o)),
            None => self.scan_sd(|x| self.gens.iter().all(|h| self.contains(&x.conjugate(h)))),
        }
    }

    /// `Cen_{S_d}(self)`, scanning `S_d` (d ≤ 8) or the given overgroup.
    pub fn centralizer_in_sd(&self, over: Option<&PermGroup>) -> Result<PermGroup, GroupError> {
        match over {
            Some(o) => Ok(self.centralizer_in(o)),
            None => self.scan_sd(|x| self.gens.iter().all(|h| x.mul(h) == h.mul(x))),
        }
    }

    pub fn center(&self) -> PermGroup {
        self.centralizer_in(self)
    }

    /// Left cosets `xH` as lists of element indices, ordered by least index;
    /// the first coset is `H` itself.
    pub fn left_cosets(&self, h: &PermGroup) -> Result<Vec<Vec<usize>>, GroupError> {
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotSubgroup);
        }
        let mut label = vec![usize::MAX; self.order()];
        let mut cosets = Vec::new();
        for i in 0..self.order() {
            if label[i] != usize::MAX {
                continue;
            }
            let x = &self.elements[i];
            let mut c: Vec<usize> = h
                .elements
                .iter()
                .map(|k| self.position(&x.mul(k)).expect("closed"))
                .collect();
            c.sort_unstable();
            for &j in &c {
                label[j] = cosets.len();
            }
            cosets.push(c);
        }
        Ok(cosets)
    }

    pub fn index_of(&self, h: &PermGroup) -> Result<usize, GroupError> {
        if !h.is_subgroup_of(self) {
            return Err(GroupError::NotSubgroup);
        }
        Ok(self.order() / h.order())
    }

    /// Every subgroup, built by joining cyclic subgroups; sorted by order then elements.
    pub fn all_subgroups(&self) -> Vec<PermGroup> {
        let key = |g: &PermGroup| {
            let mut v: Vec<usize> = g
                .elements
                .iter()
                .map(|e| self.position(e).expect("sub"))
                .collect();
            v.sort_unstable();
            v
        };
        let mut found: HashMap<Vec<usize>, PermGroup> = HashMap::new();
        let mut cyclic = Vec::new();
        for e in self.elements.iter() {
            let c = PermGroup::new(self.degree, vec![e.clone()]).expect("cyclic");
            let k = key(&c);
            if let std::collections::hash_map::Entry::Vacant(e) = found.entry(k) {
                e.insert(c.clone());
                cyclic.push(c);
            }
        }
        let mut frontier: Vec<PermGroup> = found.values().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for g in &frontier {
                for c in &cyclic {
                    if c.gens.iter().all(|x| g.contains(x)) {
                        continue;
                    }
                    let j = g.join(c).expect("inside self");
                    let k = key(&j);
                    if let std::collections::hash_map::Entry::Vacant(e) = found.entry(k) {
                        e.insert(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<(Vec<usize>, PermGroup)> = found.into_iter().collect();
        out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        out.into_iter().map(|(_, g)| g).collect()
    }

    /// Order of `x` modulo the normal subgroup `n`.
    pub fn order_mod(&self, x: &Perm, n: &PermGroup) -> usize {
        let mut k = 1;
        let mut y = x.clone();
        while !n.contains(&y) {
            y = y.mul(x);
            k += 1;
        }
        k
    }

    /// Same group viewed on `degree` points (`degree ≥ self.degree`).
    pub fn extend(&self, degree: usize) -> PermGroup {
        PermGroup::new(degree, self.gens.iter().map(|g| g.extend(degree)).collect())
            .expect("same order")
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_elements(other)
    }
}

impl Eq for PermGroup {}

impl fmt::Display for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(Perm::to_string).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, {})",
            self.degree,
            self.order(),
            self
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(degree, gens).unwrap()
    }

    #[test]
    fn closures() {
        assert_eq!(g(4, &["(1 2 3 4)"]).order(), 4);
        assert_eq!(g(3, &["(1 2)", "(1 2 3)"]).order(), 6);
        assert_eq!(g(4, &["(1 2)(3 4)", "(1 3)(2 4)"]).order(), 4);
        assert!(matches!(
            PermGroup::with_bound(
                5,
                vec![
                    Perm::parse("(1 2)", 5).unwrap(),
                    Perm::parse("(1 2 3 4 5)", 5).unwrap()
                ],
                100
            ),
            Err(GroupError::BoundExceeded(100))
        ));
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert_eq!(s3.element(0), &Perm::identity(3));
        assert_eq!(
            s3.elements()[1..3],
            [
                Perm::parse("(1 2)", 3).unwrap(),
                Perm::parse("(1 2 3)", 3).unwrap()
            ]
        );
    }

    #[test]
    fn transitivity_and_cores() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        assert!(s3.is_transitive());
        let h = g(3, &["(1 2)"]);
        assert!(h.normal_core_in(&s3).unwrap().is_trivial());
        // oracle: intersect the three conjugates
        let mut core = h.clone();
        for x in s3.elements() {
            core = core.intersection(&h.conjugate_by(x));
        }
        assert!(core.is_trivial());
        let a3 = g(3, &["(1 2 3)"]);
        assert_eq!(a3.normal_core_in(&s3).unwrap(), a3);
        assert!(g(4, &["(1 2)"]).normal_core_in(&s3.extend(4)).is_ok());
        assert!(g(3, &["(1 2)"]).normal_core_in(&a3).is_err());
    }

    #[test]
    fn normalizers_and_centralizers() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        let a3 = g(3, &["(1 2 3)"]);
        assert_eq!(a3.normalizer_in_sd(None).unwrap(), s3);
        let c4 = g(4, &["(1 2 3 4)"]);
        let cen = c4.centralizer_in_sd(None).unwrap();
        assert_eq!(cen, c4);
        // oracle: scan the 24 elements by hand
        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        let brute: Vec<&Perm> = s4
            .elements()
            .iter()
            .filter(|x| x.mul(&c4.gens()[0]) == c4.gens()[0].mul(x))
            .collect();
        assert_eq!(brute.len(), 4);
        assert_eq!(c4.center(), c4);
        assert_eq!(c4.normalizer_in_sd(None).unwrap().order(), 8);
        let big = PermGroup::trivial(9);
        assert!(big.normalizer_in_sd(None).is_err());
        assert_eq!(
            big.normalizer_in_sd(Some(&PermGroup::trivial(9)))
                .unwrap()
                .order(),
            1
        );
    }

    #[test]
    fn cosets_and_subgroups() {
        let s3 = g(3, &["(1 2)", "(1 2 3)"]);
        let h = g(3, &["(1 2)"]);
        let cosets = s3.left_cosets(&h).unwrap();
        assert_eq!(cosets.len(), 3);
        assert!(cosets[0].contains(&0));
        assert_eq!(s3.all_subgroups().len(), 6);
        let s4 = g(4, &["(1 2)", "(1 2 3 4)"]);
        assert_eq!(s4.all_subgroups().len(), 30);
        let d4 = g(4, &["(1 2 3 4)", "(1 3)"]);
        assert_eq!(d4.all_subgroups().len(), 10);
    }
}
