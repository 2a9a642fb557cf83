//! Generated families of small models for exhaustive checks.

use crate::extension::{CoverModel, ExtensionModel};
use crate::permgroup::{coset_action, library, GroupHom, PermGroup};

/// Largest monodromy degree in [`monodromy_corpus`].
pub const MAX_CORPUS_DEGREE: usize = 6;

/// Named groups of order at most 16.
pub fn small_groups() -> Vec<(&'static str, PermGroup)> {
    use library::*;
    vec![
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("C2xC2", klein()),
        ("C6", cyclic(6)),
        ("S3", symmetric(3)),
        ("C8", cyclic(8)),
        ("C2xC4", direct_product(&cyclic(2), &cyclic(4))),
        ("C2xC2xC2", direct_product(&klein(), &cyclic(2))),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
        ("C3xC3", direct_product(&cyclic(3), &cyclic(3))),
        ("D5", dihedral(5)),
        ("D6", dihedral(6)),
        ("A4", alternating(4)),
        ("Dic3", dicyclic(3)),
        ("C2xD4", direct_product(&cyclic(2), &dihedral(4))),
        ("D8", dihedral(8)),
        ("Q16", dicyclic(4)),
        ("C4xC4", direct_product(&cyclic(4), &cyclic(4))),
    ]
}

/// Proper nontrivial normal subgroups.
pub fn normal_subgroups(e: &PermGroup) -> Vec<PermGroup> {
    e.all_subgroups()
        .into_iter()
        .filter(|p| !p.is_trivial() && p.order() < e.order() && p.is_normal_in(e))
        .collect()
}

/// Subgroups of `g`, one per `g`-conjugacy class.
pub fn subgroup_classes(g: &PermGroup) -> Vec<PermGroup> {
    let mut reps: Vec<PermGroup> = Vec::new();
    for h in g.all_subgroups() {
        let fresh = reps
            .iter()
            .all(|k| k.order() != h.order() || g.elements().iter().all(|x| k.conjugate_by(x) != h));
        if fresh {
            reps.push(h);
        }
    }
    reps
}

#[derive(Clone, Debug)]
pub struct MonodromyInstance {
    pub label: String,
    pub ext: ExtensionModel,
    pub psi: GroupHom,
}

/// `(E, P, Ψ)` with `Ψ` the action of `P` on cosets of a subgroup of index
/// `2..=MAX_CORPUS_DEGREE`, subgroups taken up to conjugacy in `P`.
pub fn monodromy_corpus() -> Vec<MonodromyInstance> {
    let mut out = Vec::new();
    for (name, e) in small_groups() {
        for p in normal_subgroups(&e) {
            let ext = ExtensionModel::new(e.clone(), p.clone()).expect("normal");
            for k in subgroup_classes(&p) {
                let d = p.order() / k.order();
                if !(2..=MAX_CORPUS_DEGREE).contains(&d) {
                    continue;
                }
                let psi = coset_action(&p, &k).expect("subgroup").hom;
                out.push(MonodromyInstance {
                    label: format!(
                        "{name} ⊳ P of order {} on {d} cosets of a subgroup of order {}",
                        p.order(),
                        k.order()
                    ),
                    ext: ext.clone(),
                    psi,
                });
            }
        }
    }
    out
}

/// `(E, P, H, R = H ∩ P)` for every subgroup `H` of every listed group.
pub fn cover_corpus() -> Vec<(String, CoverModel)> {
    let mut out = Vec::new();
    for (name, e) in small_groups() {
        let subs = e.all_subgroups();
        for p in normal_subgroups(&e) {
            let ext = ExtensionModel::new(e.clone(), p.clone()).expect("normal");
            for h in &subs {
                let r = h.intersection(&p);
                let label = format!("{name}: |P| = {}, |H| = {}", p.order(), h.order());
                out.push((
                    label,
                    CoverModel::new(ext.clone(), h.clone(), r).expect("subgroups"),
                ));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_sizes() {
        assert!(small_groups().iter().all(|(_, g)| g.order() <= 16));
        assert!(monodromy_corpus().len() >= 50);
        assert!(cover_corpus().len() >= 50);
        assert_eq!(subgroup_classes(&library::symmetric(4)).len(), 11);
    }
}
