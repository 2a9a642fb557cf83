use descent_core::cohomology::{definability_test, ObstructionError, ObstructionSetup};
use descent_core::corpus::{cover_corpus, monodromy_corpus};
use descent_core::extension::{defined_over_check, galois_closure, regularity_index_check};
use descent_core::permgroup::extend_hom;

#[test]
fn regularity_forces_equal_indices() {
    let mut regular = 0;
    for (label, c) in cover_corpus() {
        let rep = defined_over_check(&c);
        if rep.regular {
            regular += 1;
            assert!(regularity_index_check(&c).equal(), "{label}");
        }
    }
    assert!(regular >= 50);
}

#[test]
fn closure_meets_p_in_core_of_r() {
    for (label, c) in cover_corpus() {
        if defined_over_check(&c).all_pass() {
            assert!(galois_closure(&c).unwrap().intersection_ok, "{label}");
        }
    }
}

/// Extension of Ψ over E, the split lift and the δ₁ test agree everywhere.
#[test]
fn obstruction_agrees_with_extension_search() {
    let mut split = 0;
    let mut obstructed = 0;
    for inst in monodromy_corpus() {
        let setup = match ObstructionSetup::new(&inst.ext, &inst.psi) {
            Err(ObstructionError::CmodFails(_)) => {
                continue;
            }
            other => other.unwrap(),
        };
        let extends = !extend_hom(&inst.psi, inst.ext.e(), &setup.cmod.n)
            .unwrap()
            .is_empty();
        let verdict = definability_test(&setup).unwrap();
        assert_eq!(extends, verdict.definable, "{}", inst.label);
        if let Some(s) = inst.ext.split_section() {
            split += 1;
            assert_eq!(
                setup.split_criterion(&s).unwrap().is_some(),
                extends,
                "{}",
                inst.label
            );
        }
        if !extends {
            obstructed += 1;
        }
    }
    assert!(split >= 50);
    assert!(obstructed > 0);
}
