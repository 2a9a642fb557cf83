//! Fixtures shared by the criterion benches.

use descent_core::extension::ExtensionModel;
use descent_core::permgroup::{library, GroupHom, Perm, PermGroup};

/// Q8 over its cyclic subgroup `⟨i⟩`, with `⟨i⟩` acting regularly on four points.
pub fn quaternion_instance() -> (ExtensionModel, GroupHom) {
    let e = library::quaternion();
    let p = PermGroup::new(8, vec![e.gens()[0].clone()]).expect("subgroup");
    let psi = GroupHom::new(&p, 4, vec![Perm::parse("(1 2 3 4)", 4).expect("cycle")]).expect("hom");
    (ExtensionModel::new(e, p).expect("normal"), psi)
}

/// D4 over its rotations, monodromy the inclusion.
pub fn dihedral_instance() -> (ExtensionModel, GroupHom) {
    let e = library::dihedral(4);
    let p = PermGroup::new(4, vec![e.gens()[0].clone()]).expect("subgroup");
    let psi = GroupHom::inclusion(&p);
    (ExtensionModel::new(e, p).expect("normal"), psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use descent_core::cohomology::{definability_test, ObstructionSetup};

    #[test]
    fn fixtures_have_opposite_verdicts() {
        let verdict = |(ext, psi): (ExtensionModel, GroupHom)| {
            let st = ObstructionSetup::new(&ext, &psi).unwrap();
            definability_test(&st).unwrap().definable
        };
        assert!(!verdict(quaternion_instance()));
        assert!(verdict(dihedral_instance()));
    }
}
