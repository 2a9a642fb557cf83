//! Finite models of `1 → P → E → Q → 1` carrying covers.
//!
//! `E` plays the role of the ambient fundamental group, `P` the normal
//! subgroup (geometric or base part) and `Q = E/P` the Galois or mapping
//! class quotient. A cover is a pair `H ≤ E`, `R ≤ P`.

use std::fmt;

use thiserror::Error;

use crate::permgroup::{
    conjugacy_search, quotient_group, FinGroup, GroupError, GroupHom, Perm, PermGroup, Quotient,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtensionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("P is not normal in E")]
    NotNormal,
    #[error("{0} is not a subgroup of {1}")]
    NotSubgroup(&'static str, &'static str),
    #[error("invalid transversal: {0}")]
    BadTransversal(String),
    #[error("automorphism does not preserve the normal subgroup")]
    NotPreserved,
    #[error("generator images do not define an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("homomorphism source is not P")]
    SourceNotP,
}

/// `1 → P → E → E/P → 1` with `P` verified normal.
#[derive(Clone, Debug)]
pub struct ExtensionModel {
    e: PermGroup,
    p: PermGroup,
    quotient: Quotient,
}

impl ExtensionModel {
    pub fn new(e: PermGroup, p: PermGroup) -> Result<ExtensionModel, ExtensionError> {
        if !p.is_subgroup_of(&e) {
            return Err(ExtensionError::NotSubgroup("P", "E"));
        }
        if !p.is_normal_in(&e) {
            return Err(ExtensionError::NotNormal);
        }
        let quotient = quotient_group(&e, &p)?;
        Ok(ExtensionModel { e, p, quotient })
    }

    pub fn e(&self) -> &PermGroup {
        &self.e
    }

    pub fn p(&self) -> &PermGroup {
        &self.p
    }

    pub fn q(&self) -> &FinGroup {
        &self.quotient.group
    }

    pub fn quotient(&self) -> &Quotient {
        &self.quotient
    }

    pub fn project(&self, x: &Perm) -> Option<usize> {
        self.e.position(x).map(|i| self.quotient.proj[i])
    }

    /// Least element of the coset `u`; `s(1) = 1`.
    pub fn section(&self, u: usize) -> &Perm {
        self.e.element(self.quotient.reps[u])
    }

    pub fn sections(&self) -> Vec<Perm> {
        (0..self.q().order())
            .map(|u| self.section(u).clone())
            .collect()
    }

    /// Whether a section `Q → E` is a homomorphism.
    pub fn section_is_hom(&self, s: &[Perm]) -> bool {
        let q = self.q();
        s.len() == q.order()
            && s.iter()
                .enumerate()
                .all(|(u, x)| self.project(x) == Some(u))
            && (0..q.order()).all(|u| (0..q.order()).all(|v| s[u].mul(&s[v]) == s[q.mul(u, v)]))
    }

    /// A homomorphic section if the sequence splits.
    pub fn split_section(&self) -> Option<Vec<Perm>> {
        let q = self.q();
        let gens = q.gens().to_vec();
        let cands: Vec<Vec<&Perm>> = gens
            .iter()
            .map(|&g| {
                self.e
                    .elements()
                    .iter()
                    .filter(|x| {
                        self.project(x) == Some(g) && x.pow(q.element_order(g) as i64).is_identity()
                    })
                    .collect()
            })
            .collect();
        if cands.iter().any(Vec::is_empty) {
            return None;
        }
        let mut choice = vec![0usize; gens.len()];
        loop {
            let imgs: Vec<Perm> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| cands[i][c].clone())
                .collect();
            if let Some(s) = extend_on_table(q, &imgs) {
                if self.section_is_hom(&s) {
                    return Some(s);
                }
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return None;
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
}

/// Extend permutation images of `q`'s generators along its table, if consistent.
pub(crate) fn extend_on_table(q: &FinGroup, gen_images: &[Perm]) -> Option<Vec<Perm>> {
    let d = gen_images.first().map(Perm::degree);
    let mut out: Vec<Option<Perm>> = vec![None; q.order()];
    out[0] = Some(match d {
        Some(d) => Perm::identity(d),
        None => return (q.order() == 1).then(Vec::new),
    });
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        for (gi, &g) in q.gens().iter().enumerate() {
            let y = q.mul(x, g);
            let v = out[x].as_ref().expect("visited").mul(&gen_images[gi]);
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

/// A cover in an extension model: `H ≤ E`, `R ≤ P`.
#[derive(Clone, Debug)]
pub struct CoverModel {
    pub ext: ExtensionModel,
    pub h: PermGroup,
    pub r: PermGroup,
}

impl CoverModel {
    pub fn new(
        ext: ExtensionModel,
        h: PermGroup,
        r: PermGroup,
    ) -> Result<CoverModel, ExtensionError> {
        if !h.is_subgroup_of(ext.e()) {
            return Err(ExtensionError::NotSubgroup("H", "E"));
        }
        if !r.is_subgroup_of(ext.p()) {
            return Err(ExtensionError::NotSubgroup("R", "P"));
        }
        Ok(CoverModel { ext, h, r })
    }
}

/// Status of an implication `A ⇒ B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Implication {
    /// Hypothesis false.
    Vacuous,
    Holds,
    Fails,
}

impl fmt::Display for Implication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Implication::Vacuous => "vacuous",
            Implication::Holds => "checked",
            Implication::Fails => "FAILS",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinedOverReport {
    /// `H ∩ P = R`
    pub intersection: bool,
    /// `H ≤ N_E(R)`
    pub normalizes: bool,
    /// `H ◁ E ⇒ R ◁ P`
    pub normality: Implication,
    /// `H → Q` onto with kernel `R`.
    pub regular: bool,
    pub image_order: usize,
    pub quotient_order: usize,
}

impl DefinedOverReport {
    pub fn all_pass(&self) -> bool {
        self.intersection && self.normalizes && self.normality != Implication::Fails && self.regular
    }
}

pub fn defined_over_check(c: &CoverModel) -> DefinedOverReport {
    let ext = &c.ext;
    let hp = c.h.intersection(ext.p());
    let intersection = hp == c.r;
    let normalizes = c.h.gens().iter().all(|x| c.r.conjugate_by(x) == c.r);
    let normality = if c.h.is_normal_in(ext.e()) {
        if c.r.is_normal_in(ext.p()) {
            Implication::Holds
        } else {
            Implication::Fails
        }
    } else {
        Implication::Vacuous
    };
    let mut image: Vec<usize> =
        c.h.elements()
            .iter()
            .map(|x| ext.project(x).expect("H ≤ E"))
            .collect();
    image.sort_unstable();
    image.dedup();
    let regular = image.len() == ext.q().order() && hp == c.r;
    DefinedOverReport {
        intersection,
        normalizes,
        normality,
        regular,
        image_order: image.len(),
        quotient_order: ext.q().order(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub index_e_h: usize,
    pub index_p_r: usize,
}

impl IndexReport {
    pub fn equal(&self) -> bool {
        self.index_e_h == self.index_p_r
    }
}

pub fn regularity_index_check(c: &CoverModel) -> IndexReport {
    IndexReport {
        index_e_h: c.ext.e().order() / c.h.order(),
        index_p_r: c.ext.p().order() / c.r.order(),
    }
}

#[derive(Clone, Debug)]
pub struct ClosureReport {
    pub h_hat: PermGroup,
    pub r_hat: PermGroup,
    /// `Ĥ ∩ P = R̂`
    pub intersection_ok: bool,
    /// `Ĥ·R = H`
    pub regular_closure: bool,
}

pub fn galois_closure(c: &CoverModel) -> Result<ClosureReport, ExtensionError> {
    let h_hat = c.h.normal_core_in(c.ext.e())?;
    let r_hat = c.r.normal_core_in(c.ext.p())?;
    let intersection_ok = h_hat.intersection(c.ext.p()) == r_hat;
    let regular_closure = h_hat.join(&c.r)? == c.h;
    Ok(ClosureReport {
        h_hat,
        r_hat,
        intersection_ok,
        regular_closure,
    })
}

/// `x ↦ Ψ(ĥ x ĥ⁻¹)`.
///
/// Twisting by `ĥ₁` then by `ĥ₂` gives the twist by `ĥ₁ĥ₂`.
pub fn monodromy_twist(psi: &GroupHom, h: &Perm) -> Result<GroupHom, ExtensionError> {
    Ok(psi.precompose_conjugation(h)?)
}

/// Data of a cover satisfying the moduli condition.
#[derive(Clone, Debug)]
pub struct CmodData {
    pub g: PermGroup,
    pub n: PermGroup,
    pub c: PermGroup,
    /// `φ_U` for every element `U` of `E`, indexed like `E`.
    pub phi: Vec<Perm>,
}

#[derive(Clone, Debug)]
pub enum CmodOutcome {
    Holds(CmodData),
    /// No `φ_U ∈ N` for this coset representative.
    Fails {
        u: Perm,
    },
}

/// Search, for each `U` in a transversal of `P` in `E`, for `φ_U ∈ N` with
/// `Ψ(U x U⁻¹) = φ_U Ψ(x) φ_U⁻¹`, then spread to all of `E` by
/// `φ_{pU} = Ψ(p)φ_U` and check that `U ↦ φ_U mod C` is a homomorphism.
pub fn cmod_check(psi: &GroupHom, ext: &ExtensionModel) -> Result<CmodOutcome, ExtensionError> {
    if psi.source() != ext.p() {
        return Err(ExtensionError::SourceNotP);
    }
    let g = psi.image_group();
    let n = g.normalizer_in_sd(None)?;
    let c = g.centralizer_in_sd(Some(&n))?;
    let q = ext.q().order();
    let mut phi_t = Vec::with_capacity(q);
    for u in 0..q {
        let t = ext.section(u);
        let twisted = psi.precompose_conjugation(t)?;
        match conjugacy_search(psi, &twisted, None)? {
            Some(f) => phi_t.push(f),
            None => return Ok(CmodOutcome::Fails { u: t.clone() }),
        }
    }
    let e = ext.e();
    let phi: Vec<Perm> = e
        .elements()
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let u = ext.quotient().proj[i];
            let p = x.mul(&ext.section(u).inverse());
            psi.apply(&p).expect("p ∈ P").mul(&phi_t[u])
        })
        .collect();
    for (i, x) in e.elements().iter().enumerate() {
        for y in e.gens() {
            let j = e.position(&x.mul(y)).expect("closed");
            let k = e.position(y).expect("generator");
            let defect = phi[i].mul(&phi[k]).mul(&phi[j].inverse());
            if !c.contains(&defect) {
                return Err(ExtensionError::Group(GroupError::NotHomomorphism(
                    "U ↦ φ_U mod C".into(),
                )));
            }
        }
    }
    Ok(CmodOutcome::Holds(CmodData { g, n, c, phi }))
}

#[derive(Clone, Debug)]
pub struct AscentReport {
    /// `H′ ∩ P = R`
    pub meets_p_in_r: bool,
    /// `H′ ∩ E = H`
    pub meets_e_in_h: bool,
    /// `H′ → E′/E` is onto
    pub onto_quotient: bool,
}

impl AscentReport {
    pub fn all_pass(&self) -> bool {
        self.meets_p_in_r && self.meets_e_in_h && self.onto_quotient
    }
}

#[derive(Clone, Debug)]
pub enum Ascent {
    Ascended {
        h_prime: PermGroup,
        report: AscentReport,
    },
    /// `ĝ_i` does not normalize `H`.
    NotNormalizing { i: usize },
    /// `ĝ_i ĝ_j` lies outside `ĝ_k H` for the representative `ĝ_k` of its coset.
    CocycleFails { i: usize, j: usize },
}

/// `H′ = ⊔ ĝ_i H` for a transversal `ĝ_1..ĝ_k` of `E` in `big` (indices 0-based).
pub fn ascend_group(
    c: &CoverModel,
    big: &PermGroup,
    transversal: &[Perm],
) -> Result<Ascent, ExtensionError> {
    let e = c.ext.e();
    if !e.is_subgroup_of(big) || !e.is_normal_in(big) {
        return Err(ExtensionError::BadTransversal(
            "E is not normal in the ambient group".into(),
        ));
    }
    let k = big.order() / e.order();
    if transversal.len() != k {
        return Err(ExtensionError::BadTransversal(format!(
            "{} elements for {k} cosets",
            transversal.len()
        )));
    }
    let coset_of = |x: &Perm| -> Option<usize> {
        transversal
            .iter()
            .position(|t| e.contains(&t.inverse().mul(x)))
    };
    for (i, t) in transversal.iter().enumerate() {
        if !big.contains(t) {
            return Err(ExtensionError::BadTransversal(format!(
                "{t} is not in the ambient group"
            )));
        }
        if coset_of(t) != Some(i) {
            return Err(ExtensionError::BadTransversal(format!(
                "{t} repeats a coset"
            )));
        }
    }
    for (i, t) in transversal.iter().enumerate() {
        if c.h.conjugate_by(t) != c.h {
            return Ok(Ascent::NotNormalizing { i });
        }
    }
    for (i, a) in transversal.iter().enumerate() {
        for (j, b) in transversal.iter().enumerate() {
            let ab = a.mul(b);
            let kk = coset_of(&ab).expect("transversal covers");
            if !c.h.contains(&transversal[kk].inverse().mul(&ab)) {
                return Ok(Ascent::CocycleFails { i, j });
            }
        }
    }
    let mut gens = c.h.gens().to_vec();
    gens.extend(transversal.iter().cloned());
    let h_prime = PermGroup::new(big.degree(), gens)?;
    let report = AscentReport {
        meets_p_in_r: h_prime.intersection(c.ext.p()) == c.r,
        meets_e_in_h: h_prime.intersection(e) == c.h,
        onto_quotient: h_prime.order() == k * c.h.order(),
    };
    Ok(Ascent::Ascended { h_prime, report })
}

/// Every transversal (first element the identity) with its ascent verdict;
/// only for `[big : E] ≤ 4`.
pub fn ascend_search(
    c: &CoverModel,
    big: &PermGroup,
) -> Result<Vec<(Vec<Perm>, Ascent)>, ExtensionError> {
    let e = c.ext.e();
    if !e.is_normal_in(big) {
        return Err(ExtensionError::BadTransversal(
            "E is not normal in the ambient group".into(),
        ));
    }
    let cosets = big.left_cosets(e)?;
    if cosets.len() > 4 {
        return Err(ExtensionError::BadTransversal(format!(
            "search mode needs index at most 4, got {}",
            cosets.len()
        )));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; cosets.len()];
    loop {
        let mut tr = vec![big.identity()];
        tr.extend((1..cosets.len()).map(|i| big.element(cosets[i][choice[i]]).clone()));
        let verdict = ascend_group(c, big, &tr)?;
        out.push((tr, verdict));
        let mut i = 1;
        loop {
            if i >= choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < cosets[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Automorphism of `E/n` induced by an automorphism of `E` given on generators.
#[derive(Clone, Debug)]
pub struct QuotientAut {
    pub quotient: Quotient,
    /// Image of each quotient element.
    pub map: Vec<usize>,
}

pub fn induced_quotient_aut(
    e: &PermGroup,
    gen_images: Vec<Perm>,
    n: &PermGroup,
) -> Result<QuotientAut, ExtensionError> {
    if let Some(x) = gen_images.iter().find(|x| !e.contains(x)) {
        return Err(ExtensionError::NotAutomorphism(format!(
            "{x} is outside the group"
        )));
    }
    let h = GroupHom::new(e, e.degree(), gen_images)
        .map_err(|err| ExtensionError::NotAutomorphism(err.to_string()))?;
    if !h.is_injective() {
        return Err(ExtensionError::NotAutomorphism("not injective".into()));
    }
    if n.gens()
        .iter()
        .any(|x| !n.contains(h.apply(x).expect("n ≤ E")))
    {
        return Err(ExtensionError::NotPreserved);
    }
    let quotient = quotient_group(e, n)?;
    let map: Vec<usize> = quotient
        .reps
        .iter()
        .map(|&r| {
            let img = h.image_of_index(r);
            quotient.proj[e.position(img).expect("image in E")]
        })
        .collect();
    // constant on cosets
    for (i, x) in e.elements().iter().enumerate() {
        let img = quotient.proj[e.position(h.apply(x).expect("E")).expect("E")];
        debug_assert_eq!(img, map[quotient.proj[i]]);
    }
    Ok(QuotientAut { quotient, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::library;

    fn d4() -> (PermGroup, PermGroup, Perm, Perm) {
        let e = library::dihedral(4);
        let r = Perm::parse("(1 2 3 4)", 4).unwrap();
        let s = Perm::parse("(2 4)", 4).unwrap();
        let p = PermGroup::new(4, vec![r.clone()]).unwrap();
        (e, p, r, s)
    }

    fn cover(h: &[&Perm], r: &[&Perm]) -> CoverModel {
        let (e, p, ..) = d4();
        let ext = ExtensionModel::new(e, p).unwrap();
        let h = PermGroup::new(4, h.iter().map(|x| (*x).clone()).collect()).unwrap();
        let r = PermGroup::new(4, r.iter().map(|x| (*x).clone()).collect()).unwrap();
        CoverModel::new(ext, h, r).unwrap()
    }

    #[test]
    fn defined_over_conditions() {
        let (_, _, r, s) = d4();
        let galois = cover(&[&r, &s], &[&r]);
        let rep = defined_over_check(&galois);
        assert!(rep.all_pass());
        assert_eq!(rep.normality, Implication::Holds);
        assert!(regularity_index_check(&galois).equal());

        let refl = cover(&[&s], &[]);
        let rep = defined_over_check(&refl);
        assert!(rep.intersection && rep.normalizes && rep.regular);
        assert_eq!(rep.normality, Implication::Vacuous);
        assert_eq!(
            regularity_index_check(&refl),
            IndexReport {
                index_e_h: 4,
                index_p_r: 4
            }
        );

        let r2 = r.pow(2);
        let bad = cover(&[&r2], &[&r2]);
        let rep = defined_over_check(&bad);
        assert!(!rep.regular);
        let idx = regularity_index_check(&bad);
        assert_eq!((idx.index_e_h, idx.index_p_r), (4, 2));
        assert!(!idx.equal());
    }

    #[test]
    fn closures() {
        let (_, _, r, s) = d4();
        let galois = cover(&[&r, &s], &[&r]);
        let cl = galois_closure(&galois).unwrap();
        assert_eq!(cl.h_hat, galois.h);
        assert_eq!(cl.r_hat, galois.r);
        assert!(cl.intersection_ok && cl.regular_closure);

        // S3 × C2 with a non-normal H
        let e = library::direct_product(&library::symmetric(3), &library::cyclic(2));
        let p = PermGroup::from_cycles(5, &["(1 2 3)", "(4 5)"]).unwrap();
        let ext = ExtensionModel::new(e, p).unwrap();
        let h = PermGroup::from_cycles(5, &["(1 2)(4 5)"]).unwrap();
        let r = PermGroup::trivial(5);
        let c = CoverModel::new(ext, h, r).unwrap();
        assert!(defined_over_check(&c).all_pass());
        let cl = galois_closure(&c).unwrap();
        assert!(cl.h_hat.is_trivial());
        assert!(cl.intersection_ok);
    }

    #[test]
    fn twists() {
        let (e, p, r, s) = d4();
        let psi = GroupHom::inclusion(&p);
        assert!(monodromy_twist(&psi, &e.identity()).unwrap().same_map(&psi));
        let t = monodromy_twist(&psi, &r).unwrap();
        assert!(t.same_map(&psi.conjugated_by(psi.apply(&r).unwrap())));
        let inv = monodromy_twist(&psi, &s).unwrap();
        for x in p.elements() {
            assert_eq!(inv.apply(x).unwrap(), &x.inverse());
        }
        for a in e.elements() {
            for b in e.elements() {
                let two = monodromy_twist(&monodromy_twist(&psi, a).unwrap(), b).unwrap();
                assert!(two.same_map(&monodromy_twist(&psi, &a.mul(b)).unwrap()));
            }
        }
    }

    #[test]
    fn cmod() {
        let (e, p, r, s) = d4();
        let ext = ExtensionModel::new(e.clone(), p.clone()).unwrap();
        let psi = GroupHom::inclusion(&p);
        let CmodOutcome::Holds(data) = cmod_check(&psi, &ext).unwrap() else {
            panic!("moduli condition holds");
        };
        let phi_s = &data.phi[e.position(&s).unwrap()];
        for x in p.elements() {
            assert_eq!(phi_s.conjugate(x), x.inverse());
        }
        // no twisting
        let same = ExtensionModel::new(p.clone(), p.clone()).unwrap();
        let CmodOutcome::Holds(data) = cmod_check(&psi, &same).unwrap() else {
            panic!("trivial quotient");
        };
        for (i, u) in p.elements().iter().enumerate() {
            assert!(data
                .c
                .contains(&data.phi[i].inverse().mul(psi.apply(u).unwrap())));
        }
        // P = ⟨r², s⟩ and Ψ with kernel ⟨s⟩: conjugation by r moves s to r²s
        let pk = PermGroup::new(4, vec![r.pow(2), s.clone()]).unwrap();
        let ext = ExtensionModel::new(e, pk.clone()).unwrap();
        let swap = Perm::parse("(1 2)", 2).unwrap();
        let psi = GroupHom::new(
            &pk,
            2,
            pk.gens()
                .iter()
                .map(|g| {
                    if *g == s {
                        Perm::identity(2)
                    } else {
                        swap.clone()
                    }
                })
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            cmod_check(&psi, &ext).unwrap(),
            CmodOutcome::Fails { .. }
        ));
    }

    #[test]
    fn ascent() {
        let (_, _, _, s) = d4();
        let refl = cover(&[&s], &[]);
        assert!(matches!(
            ascend_group(&refl, refl.ext.e(), &[Perm::identity(4)]).unwrap(),
            Ascent::Ascended { ref h_prime, .. } if *h_prime == refl.h
        ));
        // D4 × C4 on 8 points
        let big = library::direct_product(&library::dihedral(4), &library::cyclic(4));
        let e8 = refl.ext.e().extend(8);
        let p8 = refl.ext.p().extend(8);
        let c8 = CoverModel::new(
            ExtensionModel::new(e8, p8.clone()).unwrap(),
            refl.h.extend(8),
            PermGroup::trivial(8),
        )
        .unwrap();
        let t = Perm::parse("(5 6 7 8)", 8).unwrap();
        let tr: Vec<Perm> = (0..4).map(|k| t.pow(k)).collect();
        let Ascent::Ascended { h_prime, report } = ascend_group(&c8, &big, &tr).unwrap() else {
            panic!("compatible transversal");
        };
        assert!(report.all_pass());
        assert_eq!(big.order() / h_prime.order(), 4);
        let ext2 = ExtensionModel::new(big.clone(), p8).unwrap();
        let lifted = CoverModel::new(ext2, h_prime, PermGroup::trivial(8)).unwrap();
        assert!(defined_over_check(&lifted).all_pass());
        // perturb ĝ_2 by the central r²
        let mut bad = tr.clone();
        bad[2] = tr[2].mul(&Perm::parse("(1 3)(2 4)", 8).unwrap());
        assert!(matches!(
            ascend_group(&c8, &big, &bad).unwrap(),
            Ascent::CocycleFails { i: 1, j: 1 }
        ));
        let mut bad = tr.clone();
        bad[1] = tr[1].mul(&Perm::parse("(1 2 3 4)", 8).unwrap());
        assert!(matches!(
            ascend_group(&c8, &big, &bad).unwrap(),
            Ascent::NotNormalizing { i: 1 }
        ));
        let all = ascend_search(&c8, &big).unwrap();
        assert_eq!(all.len(), 8usize.pow(3));
        assert!(all
            .iter()
            .any(|(_, a)| matches!(a, Ascent::Ascended { .. })));
    }

    #[test]
    fn quotient_automorphisms() {
        let c4 = library::cyclic(4);
        let g = c4.gens()[0].clone();
        let c2 = PermGroup::new(4, vec![g.pow(2)]).unwrap();
        let id = induced_quotient_aut(&c4, vec![g.clone()], &c2).unwrap();
        assert_eq!(id.map, vec![0, 1]);
        let inv = induced_quotient_aut(&c4, vec![g.inverse()], &c2).unwrap();
        assert_eq!(inv.map, vec![0, 1]);
        // ℤ²/4 → Klein quotient, swap of factors
        let e = library::direct_product(&library::cyclic(4), &library::cyclic(4));
        let (a, b) = (e.gens()[0].clone(), e.gens()[1].clone());
        let n = PermGroup::new(8, vec![a.pow(2), b.pow(2)]).unwrap();
        let swap = induced_quotient_aut(&e, vec![b.clone(), a.clone()], &n).unwrap();
        let qa = swap.quotient.proj[e.position(&a).unwrap()];
        let qb = swap.quotient.proj[e.position(&b).unwrap()];
        assert_eq!(swap.map[qa], qb);
        assert_eq!(swap.map[qb], qa);
        assert_eq!(swap.quotient.group.describe(), "C2xC2");
        let bad = PermGroup::new(8, vec![a.pow(2)]).unwrap();
        assert_eq!(
            induced_quotient_aut(&e, vec![b, a], &bad).unwrap_err(),
            ExtensionError::NotPreserved
        );
    }
}
