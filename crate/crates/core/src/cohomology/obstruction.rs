//! The obstruction to extending a monodromy `Ψ: P → G ≤ S_d` over
//! `1 → P → E → Q → 1`.
//!
//! With `N = N_{S_d}(G)`, `C = Cen_{S_d}(G)` and `Z(G) = C ∩ G`, the moduli
//! condition gives `φ̄: E → N/C`, hence `λ: Q → N/CG`. A lift
//! `Λ: Q → N/G` of `λ` and a section `s` give
//! `Ω(u,v) = φ_u φ_v φ_{uv}⁻¹ Ψ(s(u)s(v)s(uv)⁻¹)⁻¹ ∈ Z(G)`, a 2-cocycle
//! for `u·z = φ_u z φ_u⁻¹`. Changing `Λ` by a cocycle `θ: Q → CG/G`
//! changes `Ω` by `δ₁θ`. The cover extends over `E` iff some `θ` makes
//! `δ₁θ + Ω` a coboundary.

use thiserror::Error;

use super::{Cochain2, CohomologyError, GModule};
use crate::extension::{
    cmod_check, extend_on_table, CmodData, CmodOutcome, ExtensionError, ExtensionModel,
};
use crate::permgroup::{quotient_group, FinGroup, GroupError, GroupHom, Perm, PermGroup, Quotient};

/// Cap on crossed homomorphisms and lift candidates examined.
pub const LIFT_SEARCH_BOUND: usize = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error("moduli condition fails at U = {0}")]
    CmodFails(String),
    #[error("λ is not well defined: {0}")]
    Lambda(String),
    #[error("no φ_u for u = {u}: {reason}")]
    NoPhi { u: usize, reason: String },
    #[error("value {0} escapes Z(G)")]
    EscapesCenter(String),
    #[error("section is not a homomorphism")]
    SectionNotHom,
    #[error("section must send the identity to the identity and cover each coset")]
    BadSection,
    #[error("search exceeds bound {0}")]
    BoundExceeded(usize),
}

#[derive(Clone, Debug)]
pub struct ObstructionSetup {
    pub ext: ExtensionModel,
    pub psi: GroupHom,
    pub cmod: CmodData,
    pub z: PermGroup,
    pub cg: PermGroup,
    pub n_mod_g: Quotient,
    pub n_mod_cg: Quotient,
    /// `λ: Q → N/CG` as indices into `n_mod_cg`.
    pub lambda: Vec<usize>,
    /// `Z(G)` with the action `L`, indexed like `z`.
    pub zmod: GModule,
}

impl ObstructionSetup {
    pub fn new(ext: &ExtensionModel, psi: &GroupHom) -> Result<ObstructionSetup, ObstructionError> {
        let cmod = match cmod_check(psi, ext)? {
            CmodOutcome::Holds(d) => d,
            CmodOutcome::Fails { u } => return Err(ObstructionError::CmodFails(u.to_string())),
        };
        let (g, n, c) = (&cmod.g, &cmod.n, &cmod.c);
        let z = c.intersection(g);
        let cg = c.join(g)?;
        let n_mod_g = quotient_group(n, g)?;
        let n_mod_cg = quotient_group(n, &cg)?;
        let class_cg = |x: &Perm| n_mod_cg.proj[n.position(x).expect("φ_U ∈ N")];
        let q = ext.q();
        let mut lambda = vec![usize::MAX; q.order()];
        for (i, x) in ext.e().elements().iter().enumerate() {
            let u = ext.quotient().proj[i];
            let k = class_cg(&cmod.phi[i]);
            if lambda[u] == usize::MAX {
                lambda[u] = k;
            } else if lambda[u] != k {
                return Err(ObstructionError::Lambda(format!(
                    "φ̄ differs mod CG on the coset of {x}"
                )));
            }
        }
        let t = &n_mod_cg.group;
        for u in 0..q.order() {
            for v in 0..q.order() {
                if lambda[q.mul(u, v)] != t.mul(lambda[u], lambda[v]) {
                    return Err(ObstructionError::Lambda("not a homomorphism".into()));
                }
            }
        }
        let zfin = FinGroup::from_perm_group(&z);
        let act: Vec<Vec<usize>> = (0..q.order())
            .map(|u| {
                let f = &cmod.phi[ext.quotient().reps[u]];
                z.elements()
                    .iter()
                    .map(|x| z.position(&f.conjugate(x)).expect("N normalizes Z(G)"))
                    .collect()
            })
            .collect();
        let zmod = GModule::new(q.clone(), zfin, act)?;
        Ok(ObstructionSetup {
            ext: ext.clone(),
            psi: psi.clone(),
            cmod,
            z,
            cg,
            n_mod_g,
            n_mod_cg,
            lambda,
            zmod,
        })
    }

    pub fn q(&self) -> &FinGroup {
        self.ext.q()
    }

    pub fn phi_of(&self, x: &Perm) -> &Perm {
        &self.cmod.phi[self.ext.e().position(x).expect("element of E")]
    }

    fn n_elem(&self, idx: usize) -> &Perm {
        self.cmod.n.element(idx)
    }

    /// `N/G → N/CG`.
    pub fn pi(&self, w: usize) -> usize {
        self.n_mod_cg.proj[self.n_mod_g.reps[w]]
    }

    fn check_section(&self, s: &[Perm]) -> Result<(), ObstructionError> {
        let ok = s.len() == self.q().order()
            && s[0].is_identity()
            && s.iter()
                .enumerate()
                .all(|(u, x)| self.ext.project(x) == Some(u));
        ok.then_some(()).ok_or(ObstructionError::BadSection)
    }

    /// `φ_u ∈ N` with `φ_u ≡ Λ(u) mod G` and `φ_u ≡ φ̄(s(u)) mod C`, the
    /// least such permutation; the solution set is checked to be one
    /// `Z(G)`-coset.
    pub fn phi_choices(&self, lift: &[usize], s: &[Perm]) -> Result<Vec<Perm>, ObstructionError> {
        self.check_section(s)?;
        let g = &self.cmod.g;
        let c = &self.cmod.c;
        (0..self.q().order())
            .map(|u| {
                let r = self.n_elem(self.n_mod_g.reps[lift[u]]);
                let target = self.phi_of(&s[u]).inverse();
                let sols: Vec<Perm> = g
                    .elements()
                    .iter()
                    .map(|x| r.mul(x))
                    .filter(|y| c.contains(&target.mul(y)))
                    .collect();
                if sols.len() != self.z.order() {
                    return Err(ObstructionError::NoPhi {
                        u,
                        reason: format!(
                            "{} solutions, expected |Z(G)| = {}",
                            sols.len(),
                            self.z.order()
                        ),
                    });
                }
                Ok(sols.into_iter().min().expect("nonempty"))
            })
            .collect()
    }

    /// `Ω(u,v)` for given `φ_u` and section.
    pub fn omega(&self, s: &[Perm], phis: &[Perm]) -> Result<Cochain2, ObstructionError> {
        self.check_section(s)?;
        let q = self.q();
        let n = q.order();
        let mut values = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                let uv = q.mul(u, v);
                let p = s[u].mul(&s[v]).mul(&s[uv].inverse());
                let psi_p = self.psi.apply(&p).expect("s(u)s(v)s(uv)⁻¹ ∈ P");
                let w = phis[u]
                    .mul(&phis[v])
                    .mul(&phis[uv].inverse())
                    .mul(&psi_p.inverse());
                values[u * n + v] = self
                    .z
                    .position(&w)
                    .ok_or_else(|| ObstructionError::EscapesCenter(w.to_string()))?;
            }
        }
        let omega = Cochain2::new(n, values)?;
        if !self.zmod.is_cocycle2(&omega) {
            return Err(ObstructionError::EscapesCenter(
                "Ω is not a 2-cocycle".into(),
            ));
        }
        Ok(omega)
    }

    /// `Ω_Λ` with the least-element section and least `φ_u`.
    pub fn obstruction_cocycle(&self, lift: &[usize]) -> Result<Cochain2, ObstructionError> {
        let s = self.ext.sections();
        let phis = self.phi_choices(lift, &s)?;
        self.omega(&s, &phis)
    }

    /// Conjugation data of `C` under a lift.
    pub fn connecting(&self, lift: &[usize]) -> Result<ConnectingData, ObstructionError> {
        let c = self.cmod.c.clone();
        let c_mod_z = quotient_group(&c, &self.z)?;
        let act: Vec<Perm> = lift
            .iter()
            .map(|&w| self.n_elem(self.n_mod_g.reps[w]).clone())
            .collect();
        Ok(ConnectingData {
            q: self.q().clone(),
            z: self.z.clone(),
            c,
            c_mod_z,
            act,
        })
    }

    /// Homomorphisms `φ: Q → N` with `φ(u) ≡ φ̄(s(u)) mod C`, for a
    /// homomorphic section `s`.
    pub fn split_criterion(&self, s: &[Perm]) -> Result<Option<SplitLift>, ObstructionError> {
        self.check_section(s)?;
        if !self.ext.section_is_hom(s) {
            return Err(ObstructionError::SectionNotHom);
        }
        let q = self.q();
        let c = &self.cmod.c;
        let gens = q.gens().to_vec();
        let cands: Vec<Vec<Perm>> = gens
            .iter()
            .map(|&g| {
                let f = self.phi_of(&s[g]);
                c.elements().iter().map(|x| f.mul(x)).collect()
            })
            .collect();
        let total = cands.iter().try_fold(1usize, |a, v| a.checked_mul(v.len()));
        if total.is_none_or(|t| t > LIFT_SEARCH_BOUND) {
            return Err(ObstructionError::BoundExceeded(LIFT_SEARCH_BOUND));
        }
        let d = self.psi.target_degree();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let imgs: Vec<Perm> = choice
                .iter()
                .enumerate()
                .map(|(i, &k)| cands[i][k].clone())
                .collect();
            let full = if gens.is_empty() {
                Some(vec![Perm::identity(d)])
            } else {
                extend_on_table(q, &imgs)
            };
            if let Some(phi) = full {
                let congruent =
                    (0..q.order()).all(|u| c.contains(&self.phi_of(&s[u]).inverse().mul(&phi[u])));
                if congruent {
                    let model = self.model_from_split(s, &phi)?;
                    return Ok(Some(SplitLift { phi, model }));
                }
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return Ok(None);
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

    /// `Φ(p·s(u)) = Ψ(p)·φ(u)`, checked to be a homomorphism extending `Ψ`.
    fn model_from_split(&self, s: &[Perm], phi: &[Perm]) -> Result<GroupHom, ObstructionError> {
        let e = self.ext.e();
        let images: Vec<Perm> = e
            .gens()
            .iter()
            .map(|x| {
                let u = self.ext.project(x).expect("E");
                self.psi
                    .apply(&x.mul(&s[u].inverse()))
                    .expect("P")
                    .mul(&phi[u])
            })
            .collect();
        let model = GroupHom::new(e, self.psi.target_degree(), images)?;
        let restricts = self
            .ext
            .p()
            .elements()
            .iter()
            .all(|x| model.apply(x) == self.psi.apply(x));
        if !restricts {
            return Err(ObstructionError::Group(GroupError::NotHomomorphism(
                "split model does not restrict to Ψ".into(),
            )));
        }
        Ok(model)
    }
}

/// A lift `φ: Q → N` of `φ̄ ∘ s` and the resulting extension of `Ψ` to `E`.
#[derive(Clone, Debug)]
pub struct SplitLift {
    pub phi: Vec<Perm>,
    pub model: GroupHom,
}

/// All lifts `Λ: Q → N/G` of `λ`, as index vectors into `n_mod_g`, sorted.
pub fn enumerate_lifts(setup: &ObstructionSetup) -> Result<Vec<Vec<usize>>, ObstructionError> {
    let q = setup.q();
    let target = &setup.n_mod_g.group;
    let gens = q.gens().to_vec();
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            (0..target.order())
                .filter(|&w| setup.pi(w) == setup.lambda[g])
                .collect()
        })
        .collect();
    let total = cands
        .iter()
        .try_fold(1usize, |a, v| a.checked_mul(v.len().max(1)));
    if total.is_none_or(|t| t > LIFT_SEARCH_BOUND) {
        return Err(ObstructionError::BoundExceeded(LIFT_SEARCH_BOUND));
    }
    if cands.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<usize> = choice
            .iter()
            .enumerate()
            .map(|(i, &k)| cands[i][k])
            .collect();
        if let Some(lift) = q.extend_gen_images(target, &imgs) {
            if (0..q.order()).all(|u| setup.pi(lift[u]) == setup.lambda[u]) {
                out.push(lift);
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                out.sort();
                out.dedup();
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

/// `1 → Z(G) → C → C/Z(G) → 1` with `Q` acting on `C` by conjugation
/// through representatives `act[u]` of a lift `Λ(u)`.
#[derive(Clone, Debug)]
pub struct ConnectingData {
    pub q: FinGroup,
    pub z: PermGroup,
    pub c: PermGroup,
    pub c_mod_z: Quotient,
    pub act: Vec<Perm>,
}

impl ConnectingData {
    /// Action of `u` on `C/Z(G)` table indices.
    pub fn act_quotient(&self, u: usize, w: usize) -> usize {
        let x = self.c.element(self.c_mod_z.reps[w]);
        let y = self.act[u].conjugate(x);
        self.c_mod_z.proj[self.c.position(&y).expect("N normalizes C")]
    }

    /// Least representative in `C` of a class of `C/Z(G)`.
    pub fn lift(&self, w: usize) -> &Perm {
        self.c.element(self.c_mod_z.reps[w])
    }
}

/// Crossed homomorphisms `θ: Q → C/Z(G)`, `θ(uv) = θ(u)·(u·θ(v))`, sorted.
pub fn crossed_homs(cd: &ConnectingData) -> Result<Vec<Vec<usize>>, ObstructionError> {
    let q = &cd.q;
    let t = &cd.c_mod_z.group;
    let gens = q.gens().to_vec();
    let k = t.order();
    if (k as u128).pow(gens.len() as u32) > LIFT_SEARCH_BOUND as u128 {
        return Err(ObstructionError::BoundExceeded(LIFT_SEARCH_BOUND));
    }
    let act: Vec<Vec<usize>> = (0..q.order())
        .map(|u| (0..k).map(|w| cd.act_quotient(u, w)).collect())
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut th = vec![usize::MAX; q.order()];
        th[0] = 0;
        let mut queue = vec![0usize];
        let mut i = 0;
        let mut ok = true;
        'bfs: while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (gi, &g) in gens.iter().enumerate() {
                let y = q.mul(x, g);
                let v = t.mul(th[x], act[x][choice[gi]]);
                if th[y] == usize::MAX {
                    th[y] = v;
                    queue.push(y);
                } else if th[y] != v {
                    ok = false;
                    break 'bfs;
                }
            }
        }
        if ok
            && gens.iter().enumerate().all(|(gi, &g)| th[g] == choice[gi])
            && (0..q.order())
                .all(|u| (0..q.order()).all(|v| th[q.mul(u, v)] == t.mul(th[u], act[u][th[v]])))
        {
            out.push(th);
        }
        let mut j = 0;
        loop {
            if j == choice.len() {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            choice[j] += 1;
            if choice[j] < k {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// `δ₁θ(u,v) = θ̃(u)·(u·θ̃(v))·θ̃(uv)⁻¹` for a set-theoretic lift `θ̃: Q → C`,
/// as a cochain in `zmod` (indices of `cd.z`).
pub fn connecting_delta1(
    cd: &ConnectingData,
    lifted: &[Perm],
) -> Result<Cochain2, ObstructionError> {
    let q = &cd.q;
    let n = q.order();
    let mut values = vec![0; n * n];
    for u in 0..n {
        for v in 0..n {
            let uv = q.mul(u, v);
            let w = lifted[u]
                .mul(&cd.act[u].conjugate(&lifted[v]))
                .mul(&lifted[uv].inverse());
            values[u * n + v] =
                cd.z.position(&w)
                    .ok_or_else(|| ObstructionError::EscapesCenter(w.to_string()))?;
        }
    }
    Ok(Cochain2::new(n, values)?)
}

#[derive(Clone, Debug)]
pub struct Definability {
    /// Number of lifts `Λ` of `λ`.
    pub lifts: usize,
    pub lift: Option<Vec<usize>>,
    pub omega: Option<Cochain2>,
    pub omega_trivial: bool,
    /// A crossed homomorphism `θ` with `δ₁θ + Ω ~ 0`.
    pub theta: Option<Vec<usize>>,
    pub definable: bool,
}

/// Decide whether the cover extends over `E`: a lift `Λ` must exist and
/// `−Ω_Λ` must lie in the image of `δ₁`.
pub fn definability_test(setup: &ObstructionSetup) -> Result<Definability, ObstructionError> {
    let lifts = enumerate_lifts(setup)?;
    let Some(lift) = lifts.first().cloned() else {
        return Ok(Definability {
            lifts: 0,
            lift: None,
            omega: None,
            omega_trivial: false,
            theta: None,
            definable: false,
        });
    };
    let omega = setup.obstruction_cocycle(&lift)?;
    let omega_trivial = setup.zmod.is_coboundary2(&omega);
    let cd = setup.connecting(&lift)?;
    let mut theta = None;
    for th in crossed_homs(&cd)? {
        let lifted: Vec<Perm> = th.iter().map(|&w| cd.lift(w).clone()).collect();
        let d = connecting_delta1(&cd, &lifted)?;
        if setup.zmod.is_coboundary2(&setup.zmod.add2(&d, &omega)) {
            theta = Some(th);
            break;
        }
    }
    Ok(Definability {
        lifts: lifts.len(),
        lift: Some(lift),
        omega: Some(omega),
        omega_trivial,
        definable: theta.is_some(),
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::{extend_hom, library};

    fn d4_c4() -> (ExtensionModel, GroupHom) {
        let e = library::dihedral(4);
        let p = PermGroup::from_cycles(4, &["(1 2 3 4)"]).unwrap();
        let ext = ExtensionModel::new(e, p.clone()).unwrap();
        (ext, GroupHom::inclusion(&p))
    }

    fn q8_c4() -> (ExtensionModel, GroupHom) {
        let e = library::quaternion();
        let p = PermGroup::from_cycles(8, &["(1 2 3 4)(5 6 7 8)"]).unwrap();
        let psi = GroupHom::new(&p, 4, vec![Perm::parse("(1 2 3 4)", 4).unwrap()]).unwrap();
        (ExtensionModel::new(e, p).unwrap(), psi)
    }

    #[test]
    fn d4_is_definable() {
        let (ext, psi) = d4_c4();
        let st = ObstructionSetup::new(&ext, &psi).unwrap();
        assert_eq!(st.z.order(), 4);
        assert_eq!(st.n_mod_cg.group.order(), 2);
        assert_eq!(st.lambda, vec![0, 1]);
        let verdict = definability_test(&st).unwrap();
        assert!(verdict.definable && verdict.omega_trivial);
        let s = ext.split_section().unwrap();
        let lift = st.split_criterion(&s).unwrap().unwrap();
        assert!(!extend_hom(&psi, ext.e(), &st.cmod.n).unwrap().is_empty());
        assert!(lift.model.restrict(ext.p()).unwrap().same_map(&psi));
    }

    #[test]
    fn q8_is_obstructed() {
        let (ext, psi) = q8_c4();
        let st = ObstructionSetup::new(&ext, &psi).unwrap();
        assert!(ext.split_section().is_none());
        assert_eq!(
            st.split_criterion(&ext.sections()).unwrap_err(),
            ObstructionError::SectionNotHom
        );
        let verdict = definability_test(&st).unwrap();
        assert!(!verdict.definable);
        assert!(!verdict.omega_trivial);
        assert_eq!(st.zmod.h2().unwrap().order, 2);
        assert!(extend_hom(&psi, ext.e(), &st.cmod.n).unwrap().is_empty());
    }

    #[test]
    fn trivial_quotient() {
        let p = PermGroup::from_cycles(4, &["(1 2 3 4)"]).unwrap();
        let ext = ExtensionModel::new(p.clone(), p.clone()).unwrap();
        let st = ObstructionSetup::new(&ext, &GroupHom::inclusion(&p)).unwrap();
        let lifts = enumerate_lifts(&st).unwrap();
        assert_eq!(lifts, vec![vec![0]]);
        assert!(st.obstruction_cocycle(&lifts[0]).unwrap().is_zero());
        let split = st.split_criterion(&[Perm::identity(4)]).unwrap().unwrap();
        assert!(split.phi[0].is_identity());
    }

    /// `G = ⟨(1 2)(3 4)⟩ ≤ S_4`: `C` is dihedral of order 8 and
    /// `CG/G ≅ C2 × C2`, so nonprincipal `θ` exist.
    #[test]
    fn connecting_map_on_centralizer_instance() {
        let e = PermGroup::from_cycles(6, &["(1 2)(3 4)", "(5 6)"]).unwrap();
        let p = PermGroup::from_cycles(6, &["(1 2)(3 4)"]).unwrap();
        let psi = GroupHom::new(&p, 4, vec![Perm::parse("(1 2)(3 4)", 4).unwrap()]).unwrap();
        let ext = ExtensionModel::new(e, p).unwrap();
        let st = ObstructionSetup::new(&ext, &psi).unwrap();
        assert_eq!(st.cmod.c.order(), 8);
        let lifts = enumerate_lifts(&st).unwrap();
        assert_eq!(lifts.len(), 4);
        let cd = st.connecting(&lifts[0]).unwrap();
        let thetas = crossed_homs(&cd).unwrap();
        assert_eq!(thetas.len(), 4);
        let mut nontrivial = 0;
        for th in &thetas {
            let lifted: Vec<Perm> = th.iter().map(|&w| cd.lift(w).clone()).collect();
            let d = connecting_delta1(&cd, &lifted).unwrap();
            assert!(st.zmod.is_cocycle2(&d));
            if !st.zmod.is_coboundary2(&d) {
                nontrivial += 1;
            }
        }
        // only the class of the 4-cycles squares to (1 2)(3 4)
        assert_eq!(nontrivial, 1);
        assert!(connecting_delta1(&cd, &vec![Perm::identity(4); 2])
            .unwrap()
            .is_zero());
        assert!(definability_test(&st).unwrap().definable);
    }

    #[test]
    fn lift_change_shifts_omega_by_delta1() {
        let e = PermGroup::from_cycles(6, &["(1 2)(3 4)", "(5 6)"]).unwrap();
        let p = PermGroup::from_cycles(6, &["(1 2)(3 4)"]).unwrap();
        let psi = GroupHom::new(&p, 4, vec![Perm::parse("(1 2)(3 4)", 4).unwrap()]).unwrap();
        let ext = ExtensionModel::new(e, p).unwrap();
        let st = ObstructionSetup::new(&ext, &psi).unwrap();
        let s = ext.sections();
        let lifts = enumerate_lifts(&st).unwrap();
        let base = &lifts[0];
        let phis = st.phi_choices(base, &s).unwrap();
        let omega = st.omega(&s, &phis).unwrap();
        let cd = st.connecting(base).unwrap();
        for other in &lifts[1..] {
            let phis2 = st.phi_choices(other, &s).unwrap();
            let omega2 = st.omega(&s, &phis2).unwrap();
            let theta: Vec<Perm> = phis2
                .iter()
                .zip(&phis)
                .map(|(a, b)| a.mul(&b.inverse()))
                .collect();
            assert!(theta.iter().all(|t| st.cmod.c.contains(t)));
            let d = connecting_delta1(&cd, &theta).unwrap();
            assert!(st.zmod.cohomologous2(&omega2, &st.zmod.add2(&d, &omega)));
        }
    }

    #[test]
    fn bad_sections_rejected() {
        let (ext, psi) = d4_c4();
        let st = ObstructionSetup::new(&ext, &psi).unwrap();
        let mut s = ext.sections();
        s.swap(0, 1);
        assert_eq!(
            st.phi_choices(&[0, 1], &s).unwrap_err(),
            ObstructionError::BadSection
        );
    }
}
