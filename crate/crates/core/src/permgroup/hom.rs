use std::collections::HashSet;
use std::fmt;

use super::{GroupError, Perm, PermGroup};

/// Cap on the number of candidate assignments tried by [`extend_hom`].
pub const EXTENSION_SEARCH_BOUND: usize = 1 << 22;

/// Homomorphism from a permutation group into `S_d`.
#[derive(Clone)]
pub struct GroupHom {
    source: PermGroup,
    target_degree: usize,
    /// Image of every source element, in closure order.
    images: Vec<Perm>,
}

/// Extend images given on a generating list to the whole group, checking
/// every relation along the way.
pub(crate) fn extend_images(source: &PermGroup, gens: &[Perm], imgs: &[Perm]) -> Option<Vec<Perm>> {
    let d = imgs.first().map(Perm::degree)?;
    let mut out: Vec<Option<Perm>> = vec![None; source.order()];
    out[0] = Some(Perm::identity(d));
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (g, im) in gens.iter().zip(imgs) {
            let y = source.position(&source.element(x).mul(g))?;
            let v = out[x].as_ref().expect("visited").mul(im);
            match &out[y] {
                None => {
                    out[y] = Some(v);
                    queue.push(y);
                }
                Some(w) if *w != v => return None,
                Some(_) => {}
            }
        }
    }
    out.into_iter().collect()
}

impl GroupHom {
    /// From images of `source.gens()`; fails unless the relations hold.
    pub fn new(
        source: &PermGroup,
        target_degree: usize,
        gen_images: Vec<Perm>,
    ) -> Result<GroupHom, GroupError> {
        if gen_images.len() != source.gens().len() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} generators but {} images",
                source.gens().len(),
                gen_images.len()
            )));
        }
        if let Some(p) = gen_images.iter().find(|p| p.degree() != target_degree) {
            return Err(GroupError::DegreeMismatch(target_degree, p.degree()));
        }
        let images = if source.gens().is_empty() {
            vec![Perm::identity(target_degree)]
        } else {
            extend_images(source, source.gens(), &gen_images)
                .ok_or_else(|| GroupError::NotHomomorphism("relations fail on the images".into()))?
        };
        Ok(GroupHom {
            source: source.clone(),
            target_degree,
            images,
        })
    }

    pub(crate) fn from_all_images(
        source: &PermGroup,
        target_degree: usize,
        images: Vec<Perm>,
    ) -> GroupHom {
        debug_assert_eq!(images.len(), source.order());
        GroupHom {
            source: source.clone(),
            target_degree,
            images,
        }
    }

    /// Inclusion of a subgroup of `S_d`.
    pub fn inclusion(source: &PermGroup) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target_degree: source.degree(),
            images: source.elements().to_vec(),
        }
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target_degree(&self) -> usize {
        self.target_degree
    }

    pub fn gen_images(&self) -> Vec<Perm> {
        self.source
            .gens()
            .iter()
            .map(|g| self.apply(g).expect("generator").clone())
            .collect()
    }

    pub fn apply(&self, x: &Perm) -> Option<&Perm> {
        self.source.position(x).map(|i| &self.images[i])
    }

    pub fn image_of_index(&self, i: usize) -> &Perm {
        &self.images[i]
    }

    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.target_degree, self.gen_images()).expect("image is a subgroup of S_d")
    }

    pub fn kernel(&self) -> PermGroup {
        let elems: Vec<Perm> = self
            .source
            .elements()
            .iter()
            .zip(&self.images)
            .filter(|(_, im)| im.is_identity())
            .map(|(e, _)| e.clone())
            .collect();
        PermGroup::from_elements(self.source.degree(), &elems).expect("kernel is a group")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// `x ↦ p · self(x) · p⁻¹`.
    pub fn conjugated_by(&self, p: &Perm) -> GroupHom {
        GroupHom {
            source: self.source.clone(),
            target_degree: self.target_degree,
            images: self.images.iter().map(|x| p.conjugate(x)).collect(),
        }
    }

    /// `x ↦ self(u x u⁻¹)` for `u` normalizing the source.
    pub fn precompose_conjugation(&self, u: &Perm) -> Result<GroupHom, GroupError> {
        let images = self
            .source
            .elements()
            .iter()
            .map(|x| {
                self.apply(&u.conjugate(x)).cloned().ok_or_else(|| {
                    GroupError::NotInGroup(format!("{u} does not normalize the source"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupHom {
            source: self.source.clone(),
            target_degree: self.target_degree,
            images,
        })
    }

    pub fn restrict(&self, sub: &PermGroup) -> Result<GroupHom, GroupError> {
        if !sub.is_subgroup_of(&self.source) {
            return Err(GroupError::NotSubgroup);
        }
        let images = sub
            .elements()
            .iter()
            .map(|x| self.apply(x).expect("subgroup").clone())
            .collect();
        Ok(GroupHom {
            source: sub.clone(),
            target_degree: self.target_degree,
            images,
        })
    }

    /// Equal as maps on the same source elements.
    pub fn same_map(&self, other: &GroupHom) -> bool {
        self.source == other.source
            && self.target_degree == other.target_degree
            && self
                .source
                .elements()
                .iter()
                .all(|x| self.apply(x) == other.apply(x))
    }
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .source
            .gens()
            .iter()
            .map(|g| format!("{g} -> {}", self.apply(g).expect("generator")))
            .collect();
        write!(f, "GroupHom[{}]", parts.join(", "))
    }
}

/// Left-translation action on left cosets of `h`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub hom: GroupHom,
    /// Cosets as element indices of `g`; coset `0` (label 1) is `h`.
    pub cosets: Vec<Vec<usize>>,
}

pub fn coset_action(g: &PermGroup, h: &PermGroup) -> Result<CosetAction, GroupError> {
    let cosets = g.left_cosets(h)?;
    Ok(action_on(g, cosets))
}

/// Coset action with label `i` given to `reps[i]·h`; `reps[0]` must lie in `h`.
pub fn coset_action_with_reps(
    g: &PermGroup,
    h: &PermGroup,
    reps: &[Perm],
) -> Result<CosetAction, GroupError> {
    let canonical = g.left_cosets(h)?;
    if reps.len() != canonical.len() {
        return Err(GroupError::NotTransversal(format!(
            "{} representatives for {} cosets",
            reps.len(),
            canonical.len()
        )));
    }
    if !h.contains(&reps[0]) {
        return Err(GroupError::NotTransversal(format!(
            "first representative {} is not in the subgroup",
            reps[0]
        )));
    }
    let mut seen = vec![false; g.order()];
    let mut cosets = Vec::with_capacity(reps.len());
    for r in reps {
        if !g.contains(r) {
            return Err(GroupError::NotInGroup(r.to_string()));
        }
        let mut c: Vec<usize> = h
            .elements()
            .iter()
            .map(|k| g.position(&r.mul(k)).expect("closed"))
            .collect();
        c.sort_unstable();
        if c.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
            return Err(GroupError::NotTransversal(format!("{r} repeats a coset")));
        }
        cosets.push(c);
    }
    Ok(action_on(g, cosets))
}

fn action_on(g: &PermGroup, cosets: Vec<Vec<usize>>) -> CosetAction {
    let mut label = vec![0usize; g.order()];
    for (c, members) in cosets.iter().enumerate() {
        for &x in members {
            label[x] = c;
        }
    }
    let act = |y: &Perm| {
        let imgs: Vec<usize> = cosets
            .iter()
            .map(|c| label[g.position(&y.mul(g.element(c[0]))).expect("closed")])
            .collect();
        Perm::from_images(imgs).expect("translation permutes cosets")
    };
    let images: Vec<Perm> = g.elements().iter().map(act).collect();
    CosetAction {
        hom: GroupHom::from_all_images(g, cosets.len(), images),
        cosets,
    }
}

impl CosetAction {
    /// One representative per coset, in label order.
    pub fn representatives(&self, g: &PermGroup) -> Vec<Perm> {
        self.cosets
            .iter()
            .map(|c| g.element(c[0]).clone())
            .collect()
    }
}

fn check_pair(psi: &GroupHom, psi2: &GroupHom) -> Result<(), GroupError> {
    if psi.source() != psi2.source() || psi.source().degree() != psi2.source().degree() {
        return Err(GroupError::SourceMismatch);
    }
    if psi.target_degree() != psi2.target_degree() {
        return Err(GroupError::DegreeMismatch(
            psi.target_degree(),
            psi2.target_degree(),
        ));
    }
    Ok(())
}

/// Find `φ` with `psi2(x) = φ·psi(x)·φ⁻¹` for all `x`.
///
/// With `search = None` the search ranges over `N_{S_d}(psi(P))`: any
/// conjugator between two homomorphisms with the same image normalizes it,
/// so the normalizer is never materialized and large degrees stay cheap.
pub fn conjugacy_search(
    psi: &GroupHom,
    psi2: &GroupHom,
    search: Option<&PermGroup>,
) -> Result<Option<Perm>, GroupError> {
    check_pair(psi, psi2)?;
    let gens = psi.source().gens().to_vec();
    let a: Vec<Perm> = gens
        .iter()
        .map(|g| psi.apply(g).expect("gen").clone())
        .collect();
    let b: Vec<Perm> = gens
        .iter()
        .map(|g| psi2.apply(g).expect("gen").clone())
        .collect();
    if let Some(set) = search {
        return Ok(set
            .elements()
            .iter()
            .find(|p| a.iter().zip(&b).all(|(x, y)| p.conjugate(x) == *y))
            .cloned());
    }
    let ga = psi.image_group();
    let gb = psi2.image_group();
    if ga != gb {
        return Ok(None);
    }
    Ok(intertwiner(&a, &b, psi.target_degree()))
}

/// A bijection `φ` with `φ∘a_i = b_i∘φ` for all `i`, by backtracking over orbit base points.
pub fn intertwiner(a: &[Perm], b: &[Perm], d: usize) -> Option<Perm> {
    let ga = PermGroup::new(d, a.to_vec()).ok()?;
    let orbits = ga.orbits();
    let mut phi = vec![usize::MAX; d];
    let mut used = vec![false; d];

    fn propagate(
        start: usize,
        img: usize,
        a: &[Perm],
        b: &[Perm],
        phi: &mut [usize],
        used: &mut [bool],
        trail: &mut Vec<usize>,
    ) -> bool {
        if used[img] {
            return false;
        }
        phi[start] = img;
        used[img] = true;
        trail.push(start);
        let mut k = trail.len() - 1;
        while k < trail.len() {
            let p = trail[k];
            k += 1;
            for (x, y) in a.iter().zip(b) {
                let q = x.apply(p);
                let v = y.apply(phi[p]);
                if phi[q] == usize::MAX {
                    if used[v] {
                        return false;
                    }
                    phi[q] = v;
                    used[v] = true;
                    trail.push(q);
                } else if phi[q] != v {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        idx: usize,
        orbits: &[Vec<usize>],
        a: &[Perm],
        b: &[Perm],
        phi: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if idx == orbits.len() {
            return true;
        }
        let base = orbits[idx][0];
        let d = phi.len();
        for cand in 0..d {
            if used[cand] {
                continue;
            }
            let mut trail = Vec::new();
            if propagate(base, cand, a, b, phi, used, &mut trail)
                && search(idx + 1, orbits, a, b, phi, used)
            {
                return true;
            }
            for p in trail {
                used[phi[p]] = false;
                phi[p] = usize::MAX;
            }
        }
        false
    }

    if search(0, &orbits, a, b, &mut phi, &mut used) {
        Perm::from_images(phi).ok()
    } else {
        None
    }
}

/// Every homomorphism `E → target` restricting to `phi` on `P = phi.source()`.
pub fn extend_hom(
    phi: &GroupHom,
    e: &PermGroup,
    target: &PermGroup,
) -> Result<Vec<GroupHom>, GroupError> {
    let p = phi.source();
    if !p.is_subgroup_of(e) {
        return Err(GroupError::NotSubgroup);
    }
    if target.degree() != phi.target_degree() {
        return Err(GroupError::DegreeMismatch(
            target.degree(),
            phi.target_degree(),
        ));
    }
    if let Some(x) = p
        .elements()
        .iter()
        .find(|x| !target.contains(phi.apply(x).expect("src")))
    {
        return Err(GroupError::NotInGroup(format!(
            "image of {x} lies outside the target"
        )));
    }
    // extra generators beyond P
    let mut extras: Vec<Perm> = Vec::new();
    let mut span = p.clone();
    for g in e.gens() {
        if !span.contains(g) {
            extras.push(g.clone());
            let mut gens = span.gens().to_vec();
            gens.push(g.clone());
            span = PermGroup::new(e.degree(), gens)?;
        }
    }
    let pgens = p.gens().to_vec();
    let pimgs: Vec<Perm> = pgens
        .iter()
        .map(|g| phi.apply(g).expect("gen").clone())
        .collect();
    // candidate images per extra generator
    let mut cands: Vec<Vec<Perm>> = Vec::new();
    for t in &extras {
        let k = e.order_mod(t, p);
        let tk = t.pow(k as i64);
        let needed = phi.apply(&tk).cloned();
        let list: Vec<Perm> = target
            .elements()
            .iter()
            .filter(|tau| {
                pgens.iter().zip(&pimgs).all(|(x, im)| {
                    let lhs = tau.conjugate(im);
                    phi.apply(&t.conjugate(x)).is_some_and(|rhs| *rhs == lhs)
                }) && needed.as_ref().is_none_or(|nk| tau.pow(k as i64) == *nk)
            })
            .cloned()
            .collect();
        cands.push(list);
    }
    let total = cands
        .iter()
        .try_fold(1usize, |acc, c| acc.checked_mul(c.len().max(1)));
    if total.is_none_or(|t| t > EXTENSION_SEARCH_BOUND) {
        return Err(GroupError::BoundExceeded(EXTENSION_SEARCH_BOUND));
    }
    if cands.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let mut gens = pgens.clone();
    gens.extend(extras.iter().cloned());
    let d = target.degree();
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let mut choice = vec![0usize; extras.len()];
    loop {
        let mut imgs = pimgs.clone();
        imgs.extend(choice.iter().enumerate().map(|(i, &c)| cands[i][c].clone()));
        let all = if gens.is_empty() {
            Some(vec![Perm::identity(d)])
        } else {
            extend_images(e, &gens, &imgs)
        };
        if let Some(all) = all {
            if seen.insert(all.clone()) {
                out.push(GroupHom::from_all_images(e, d, all));
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < cands[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::library;

    #[test]
    fn hom_construction() {
        let c4 = library::cyclic(4);
        let ok = GroupHom::new(&c4, 2, vec![Perm::parse("(1 2)", 2).unwrap()]).unwrap();
        assert_eq!(ok.kernel().order(), 2);
        let s3 = library::symmetric(3);
        assert!(GroupHom::new(&c4, 3, vec![Perm::parse("(1 2 3)", 3).unwrap()]).is_err());
        assert!(GroupHom::new(&s3, 2, vec![Perm::identity(2)]).is_err());
    }

    #[test]
    fn coset_actions() {
        let s3 = library::symmetric(3);
        let h = PermGroup::from_cycles(3, &["(1 2)"]).unwrap();
        let act = coset_action(&s3, &h).unwrap();
        assert_eq!(act.hom.target_degree(), 3);
        assert!(act.hom.image_group().is_transitive());
        assert!(act.hom.is_injective());
        let c4 = library::cyclic(4);
        let reg = coset_action(&c4, &PermGroup::trivial(4)).unwrap();
        assert_eq!(reg.hom.target_degree(), 4);
        assert!(reg.hom.is_injective());
        let a3 = PermGroup::from_cycles(3, &["(1 2 3)"]).unwrap();
        let sign = coset_action(&s3, &a3).unwrap();
        assert_eq!(sign.hom.target_degree(), 2);
        assert_eq!(sign.hom.kernel(), a3);
        // label 1 is the subgroup: its stabilizer is h
        let stab: Vec<&Perm> = s3
            .elements()
            .iter()
            .filter(|x| act.hom.apply(x).unwrap().apply(0) == 0)
            .collect();
        assert_eq!(stab.len(), 2);
        assert!(stab.iter().all(|x| h.contains(x)));
    }

    #[test]
    fn conjugated_subgroup_actions() {
        let s3 = library::symmetric(3);
        let h = PermGroup::from_cycles(3, &["(1 2)"]).unwrap();
        let n = Perm::parse("(1 2 3)", 3).unwrap();
        let psi = coset_action(&s3, &h).unwrap().hom;
        let psi2 = coset_action(&s3, &h.conjugate_by(&n)).unwrap().hom;
        let phi = conjugacy_search(&psi, &psi2, None).unwrap().unwrap();
        let norm = psi.image_group().normalizer_in_sd(None).unwrap();
        assert!(norm.contains(&phi));
        for x in s3.elements() {
            assert_eq!(
                phi.conjugate(psi.apply(x).unwrap()),
                *psi2.apply(x).unwrap()
            );
        }
        // brute-force oracle over the explicit normalizer gives a witness too
        assert!(conjugacy_search(&psi, &psi2, Some(&norm))
            .unwrap()
            .is_some());
        assert!(conjugacy_search(&psi, &psi, None)
            .unwrap()
            .unwrap()
            .is_identity());
        let c4 = library::cyclic(4);
        let a = GroupHom::new(&c4, 4, vec![Perm::parse("(1 2 3 4)", 4).unwrap()]).unwrap();
        let b = GroupHom::new(&c4, 4, vec![Perm::parse("(1 2)(3 4)", 4).unwrap()]).unwrap();
        assert!(conjugacy_search(&a, &b, None).unwrap().is_none());
        let other = GroupHom::new(
            &library::cyclic(2).extend(4),
            4,
            vec![Perm::parse("(1 2)", 4).unwrap()],
        )
        .unwrap();
        assert!(conjugacy_search(&a, &other, None).is_err());
    }

    #[test]
    fn extensions() {
        let d4 = library::dihedral(4);
        let c4 = PermGroup::from_cycles(4, &["(1 2 3 4)"]).unwrap();
        let phi = GroupHom::inclusion(&c4);
        let target = c4.normalizer_in_sd(None).unwrap();
        let ext = extend_hom(&phi, &d4, &target).unwrap();
        assert!(!ext.is_empty());
        for f in &ext {
            assert!(f.restrict(&c4).unwrap().same_map(&phi));
        }
        let q8 = library::quaternion();
        let i = Perm::parse("(1 2 3 4)(5 6 7 8)", 8).unwrap();
        let p = PermGroup::new(8, vec![i]).unwrap();
        let phi = GroupHom::new(&p, 4, vec![Perm::parse("(1 2 3 4)", 4).unwrap()]).unwrap();
        let target = phi.image_group().normalizer_in_sd(None).unwrap();
        assert!(extend_hom(&phi, &q8, &target).unwrap().is_empty());
        let same = extend_hom(&GroupHom::inclusion(&c4), &c4, &target).unwrap();
        assert_eq!(same.len(), 1);
    }
}
