//! Permutation groups of small degree: closures, normalizers and
//! centralizers in `S_d`, coset actions, quotients, conjugating-element
//! searches and homomorphism extension.

mod fingroup;
mod group;
mod hom;
pub mod library;
mod perm;

pub use fingroup::{quotient_group, FinGroup, Quotient};
pub use group::{PermGroup, DEFAULT_CLOSURE_BOUND, SD_SCAN_DEGREE};
pub use hom::{
    conjugacy_search, coset_action, coset_action_with_reps, extend_hom, intertwiner, CosetAction,
    GroupHom, EXTENSION_SEARCH_BOUND,
};
pub use perm::Perm;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a bijection: {0}")]
    NotBijection(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("closure exceeds bound {0}")]
    BoundExceeded(usize),
    #[error("element list is not closed under multiplication")]
    NotClosed,
    #[error("{0} is not in the group")]
    NotInGroup(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("degree {0} too large for an exhaustive S_d scan; supply an overgroup")]
    DegreeTooLarge(usize),
    #[error("homomorphisms have different sources")]
    SourceMismatch,
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("not a left transversal: {0}")]
    NotTransversal(String),
    #[error("bad multiplication table: {0}")]
    BadTable(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every subgroup of `S_3` and `S_4`: the coset action is transitive, and
    /// faithful exactly when the normal core is trivial.
    #[test]
    fn coset_action_faithfulness_matches_core() {
        for g in [library::symmetric(3), library::symmetric(4)] {
            for h in g.all_subgroups() {
                let act = coset_action(&g, &h).unwrap();
                assert!(act.hom.image_group().is_transitive());
                let core = h.normal_core_in(&g).unwrap();
                assert_eq!(act.hom.is_injective(), core.is_trivial());
                assert_eq!(act.hom.kernel(), core);
            }
        }
    }

    /// Cosets of `nHn⁻¹` labelled through the representatives `n·g_i·n⁻¹`.
    pub(crate) fn conjugated_action(
        g: &PermGroup,
        h: &PermGroup,
        n: &Perm,
    ) -> (GroupHom, GroupHom) {
        let base = coset_action(g, h).unwrap();
        let reps: Vec<Perm> = base
            .representatives(g)
            .iter()
            .map(|r| n.conjugate(r))
            .collect();
        let moved = coset_action_with_reps(g, &h.conjugate_by(n), &reps).unwrap();
        (base.hom, moved.hom)
    }

    #[test]
    fn conjugated_subgroups_give_normalizer_conjugates() {
        for g in [
            library::symmetric(3),
            library::dihedral(4),
            library::alternating(4),
        ] {
            for h in g.all_subgroups() {
                for n in g.elements() {
                    let (psi, psi2) = conjugated_action(&g, &h, n);
                    let phi = conjugacy_search(&psi, &psi2, None)
                        .unwrap()
                        .expect("conjugate subgroups");
                    assert!(psi.image_group().conjugate_by(&phi) == psi.image_group());
                    let back = conjugacy_search(&psi2, &psi, None)
                        .unwrap()
                        .expect("symmetric");
                    let inv = phi.inverse();
                    for x in g.gens() {
                        assert_eq!(
                            phi.conjugate(psi.apply(x).unwrap()),
                            *psi2.apply(x).unwrap()
                        );
                        assert_eq!(
                            inv.conjugate(psi2.apply(x).unwrap()),
                            *psi.apply(x).unwrap()
                        );
                        assert_eq!(
                            back.conjugate(psi2.apply(x).unwrap()),
                            *psi.apply(x).unwrap()
                        );
                    }
                    // canonical labels may move the image; an S_d intertwiner still exists
                    let canon = coset_action(&g, &h.conjugate_by(n)).unwrap().hom;
                    assert!(intertwiner(
                        &psi.gen_images(),
                        &canon.gen_images(),
                        psi.target_degree()
                    )
                    .is_some());
                }
            }
        }
    }
}
