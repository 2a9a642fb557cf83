//! Small named permutation groups.

use super::{Perm, PermGroup};

fn p(degree: usize, cycles: &str) -> Perm {
    Perm::parse(cycles, degree).expect("valid cycle literal")
}

/// Regular cyclic group of order `n` on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let cycle: Vec<usize> = (1..=n).collect();
    let gens = if n > 1 {
        vec![Perm::from_cycles(n, &[cycle]).expect("cycle")]
    } else {
        Vec::new()
    };
    PermGroup::new(n.max(1), gens).expect("cyclic group")
}

/// Dihedral group of order `2n` acting on an `n`-gon (`n ≥ 3`).
pub fn dihedral(n: usize) -> PermGroup {
    let rot: Vec<usize> = (1..=n).collect();
    // i ↦ n + 2 − i fixes point 1
    let refl: Vec<Vec<usize>> = (2..=n)
        .filter_map(|i| {
            let j = n + 2 - i;
            (i < j).then(|| vec![i, j])
        })
        .collect();
    let gens = vec![
        Perm::from_cycles(n, &[rot]).expect("rotation"),
        Perm::from_cycles(n, &refl).expect("reflection"),
    ];
    PermGroup::new(n, gens).expect("dihedral group")
}

pub fn symmetric(d: usize) -> PermGroup {
    if d < 2 {
        return PermGroup::trivial(d.max(1));
    }
    let cycle: Vec<usize> = (1..=d).collect();
    PermGroup::new(
        d,
        vec![
            p(d, "(1 2)"),
            Perm::from_cycles(d, &[cycle]).expect("cycle"),
        ],
    )
    .expect("symmetric group")
}

pub fn alternating(d: usize) -> PermGroup {
    let gens: Vec<Perm> = (3..=d)
        .map(|k| Perm::from_cycles(d, &[vec![1, 2, k]]).expect("3-cycle"))
        .collect();
    PermGroup::new(d.max(1), gens).expect("alternating group")
}

/// Quaternion group in its regular representation on 8 points.
pub fn quaternion() -> PermGroup {
    PermGroup::new(
        8,
        vec![p(8, "(1 2 3 4)(5 6 7 8)"), p(8, "(1 5 3 7)(2 8 4 6)")],
    )
    .expect("quaternion group")
}

/// Dicyclic group of order `4n` (`n = 2` gives `Q8`) in its regular
/// representation; point `k + 2n·e` is `a^k b^e`.
pub fn dicyclic(n: usize) -> PermGroup {
    let m = 2 * n;
    let pt = |k: usize, e: usize| k % m + m * e;
    let mut a = vec![0; 2 * m];
    let mut b = vec![0; 2 * m];
    for k in 0..m {
        a[pt(k, 0)] = pt(k + 1, 0);
        a[pt(k, 1)] = pt(k + 1, 1);
        // b·a^k = a^{-k} b and b² = a^n
        b[pt(k, 0)] = pt(m - k, 1);
        b[pt(k, 1)] = pt(m - k + n, 0);
    }
    let gens = vec![
        Perm::from_images(a).expect("left translation"),
        Perm::from_images(b).expect("left translation"),
    ];
    PermGroup::new(2 * m, gens).expect("dicyclic group")
}

pub fn klein() -> PermGroup {
    PermGroup::new(4, vec![p(4, "(1 2)(3 4)"), p(4, "(1 3)(2 4)")]).expect("Klein group")
}

/// `a × b` acting on disjoint point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let d = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a.gens().iter().map(|g| g.shifted(0, d)).collect();
    gens.extend(b.gens().iter().map(|g| g.shifted(a.degree(), d)));
    PermGroup::new(d, gens).expect("direct product")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::FinGroup;

    #[test]
    fn orders() {
        assert_eq!(cyclic(5).order(), 5);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(dihedral(3).order(), 6);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(klein().order(), 4);
        let q = quaternion();
        assert_eq!(q.order(), 8);
        assert_eq!(FinGroup::from_perm_group(&q).describe(), "Q8");
        assert_eq!(direct_product(&cyclic(2), &cyclic(4)).order(), 8);
        assert_eq!(FinGroup::from_perm_group(&dihedral(4)).describe(), "D4");
        assert_eq!(FinGroup::from_perm_group(&dicyclic(2)).describe(), "Q8");
        let dic3 = dicyclic(3);
        assert_eq!(dic3.order(), 12);
        assert_eq!(dic3.elements().iter().filter(|x| x.order() == 2).count(), 1);
        assert_eq!(dicyclic(4).order(), 16);
    }
}
