//! Cohomology of finite groups with coefficients in finite abelian modules,
//! by explicit enumeration of normalized cochains.
//!
//! Modules are written additively. A 1-cocycle satisfies
//! `c(uv) = c(u) + u·c(v)`, a 2-cocycle
//! `c(u,v) + c(uv,w) = u·c(v,w) + c(u,vw)`, and the coboundary of a
//! normalized 1-cochain is `δf(u,v) = u·f(v) − f(uv) + f(u)`.

mod obstruction;

pub use obstruction::{
    connecting_delta1, crossed_homs, definability_test, enumerate_lifts, ConnectingData,
    Definability, ObstructionError, ObstructionSetup, SplitLift,
};

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::permgroup::FinGroup;

/// Default cap on enumerated cocycles and coboundary candidates.
pub const ENUMERATION_BOUND: usize = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("coefficient group is not abelian")]
    NotAbelian,
    #[error("action is not by automorphisms: {0}")]
    BadAction(String),
    #[error("enumeration exceeds bound {0}")]
    BoundExceeded(usize),
    #[error("cochain is not normalized")]
    NotNormalized,
    #[error("cochain shape does not match the module")]
    Shape,
}

/// A finite abelian group `M` with an action of `Q` by automorphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    q: FinGroup,
    m: FinGroup,
    /// `act[u][x] = u·x`
    act: Vec<Vec<usize>>,
}

impl GModule {
    pub fn new(q: FinGroup, m: FinGroup, act: Vec<Vec<usize>>) -> Result<GModule, CohomologyError> {
        if !m.is_abelian() {
            return Err(CohomologyError::NotAbelian);
        }
        let (nq, nm) = (q.order(), m.order());
        if act.len() != nq || act.iter().any(|a| a.len() != nm) {
            return Err(CohomologyError::BadAction("shape".into()));
        }
        if act[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(CohomologyError::BadAction(
                "identity acts nontrivially".into(),
            ));
        }
        for (u, a) in act.iter().enumerate() {
            let mut seen = vec![false; nm];
            for &y in a {
                if y >= nm || std::mem::replace(&mut seen[y], true) {
                    return Err(CohomologyError::BadAction(format!(
                        "element {u} is not bijective"
                    )));
                }
            }
            for x in 0..nm {
                for y in 0..nm {
                    if a[m.mul(x, y)] != m.mul(a[x], a[y]) {
                        return Err(CohomologyError::BadAction(format!(
                            "element {u} is not additive"
                        )));
                    }
                }
            }
        }
        for u in 0..nq {
            for v in 0..nq {
                let uv = q.mul(u, v);
                if (0..nm).any(|x| act[uv][x] != act[u][act[v][x]]) {
                    return Err(CohomologyError::BadAction(format!(
                        "(uv)·x ≠ u·(v·x) at ({u},{v})"
                    )));
                }
            }
        }
        Ok(GModule { q, m, act })
    }

    pub fn trivial(q: FinGroup, m: FinGroup) -> Result<GModule, CohomologyError> {
        let act = vec![(0..m.order()).collect(); q.order()];
        GModule::new(q, m, act)
    }

    pub fn q(&self) -> &FinGroup {
        &self.q
    }

    pub fn m(&self) -> &FinGroup {
        &self.m
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.m.mul(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.m.inv(a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn act(&self, u: usize, x: usize) -> usize {
        self.act[u][x]
    }

    pub fn is_trivial_action(&self) -> bool {
        self.act
            .iter()
            .all(|a| a.iter().enumerate().all(|(x, &y)| x == y))
    }

    /// `δ` of a normalized 1-cochain.
    pub fn coboundary1(&self, f: &Cochain1) -> Cochain2 {
        let n = self.q.order();
        let mut values = vec![0; n * n];
        for u in 0..n {
            for v in 0..n {
                let uv = self.q.mul(u, v);
                values[u * n + v] = self.add(self.sub(self.act(u, f.get(v)), f.get(uv)), f.get(u));
            }
        }
        Cochain2 { order: n, values }
    }

    /// The principal 1-cocycle `u ↦ m − u·m`.
    pub fn principal(&self, m: usize) -> Cochain1 {
        Cochain1 {
            values: (0..self.q.order())
                .map(|u| self.sub(m, self.act(u, m)))
                .collect(),
        }
    }

    pub fn is_cocycle1(&self, c: &Cochain1) -> bool {
        let n = self.q.order();
        c.values.len() == n
            && (0..n).all(|u| {
                (0..n).all(|v| c.get(self.q.mul(u, v)) == self.add(c.get(u), self.act(u, c.get(v))))
            })
    }

    pub fn is_cocycle2(&self, c: &Cochain2) -> bool {
        let n = self.q.order();
        c.order == n
            && (0..n).all(|u| {
                (0..n).all(|v| {
                    (0..n).all(|w| {
                        let uv = self.q.mul(u, v);
                        let vw = self.q.mul(v, w);
                        self.add(c.get(u, v), c.get(uv, w))
                            == self.add(self.act(u, c.get(v, w)), c.get(u, vw))
                    })
                })
            })
    }

    pub fn add2(&self, a: &Cochain2, b: &Cochain2) -> Cochain2 {
        Cochain2 {
            order: a.order,
            values: a
                .values
                .iter()
                .zip(&b.values)
                .map(|(&x, &y)| self.add(x, y))
                .collect(),
        }
    }

    pub fn neg2(&self, a: &Cochain2) -> Cochain2 {
        Cochain2 {
            order: a.order,
            values: a.values.iter().map(|&x| self.neg(x)).collect(),
        }
    }

    pub fn sub2(&self, a: &Cochain2, b: &Cochain2) -> Cochain2 {
        self.add2(a, &self.neg2(b))
    }

    /// All normalized 1-cochains `f` with `f(xg) = x·f(g) + f(x) − c(x,g)`
    /// for generators `g`, i.e. `δf = c` when `c` is a cocycle.
    fn solve_coboundary(&self, c: &Cochain2, first_only: bool) -> Vec<Cochain1> {
        let q = &self.q;
        let n = q.order();
        let gens = q.gens().to_vec();
        let nm = self.m.order();
        let mut out = Vec::new();
        let mut choice = vec![0usize; gens.len()];
        loop {
            let mut f = vec![usize::MAX; n];
            f[0] = 0;
            let mut ok = true;
            let mut queue = vec![0usize];
            let mut k = 0;
            'bfs: while k < queue.len() {
                let x = queue[k];
                k += 1;
                for (gi, &g) in gens.iter().enumerate() {
                    let y = q.mul(x, g);
                    let v = self.sub(self.add(self.act(x, choice[gi]), f[x]), c.get(x, g));
                    if f[y] == usize::MAX {
                        f[y] = v;
                        queue.push(y);
                    } else if f[y] != v {
                        ok = false;
                        break 'bfs;
                    }
                }
            }
            // f(g) itself must equal the chosen value
            if ok && gens.iter().enumerate().all(|(gi, &g)| f[g] == choice[gi]) {
                let f = Cochain1 { values: f };
                if self.coboundary1(&f) == *c {
                    out.push(f);
                    if first_only {
                        return out;
                    }
                }
            }
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] < nm {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// A normalized `f` with `δf = c`, if `c` is a coboundary.
    pub fn coboundary_witness(&self, c: &Cochain2) -> Option<Cochain1> {
        if c.order != self.q.order() {
            return None;
        }
        self.solve_coboundary(c, true).into_iter().next()
    }

    pub fn is_coboundary2(&self, c: &Cochain2) -> bool {
        self.coboundary_witness(c).is_some()
    }

    pub fn cohomologous2(&self, a: &Cochain2, b: &Cochain2) -> bool {
        self.is_coboundary2(&self.sub2(a, b))
    }

    /// All normalized 1-cocycles, lexicographically sorted.
    pub fn cocycles1(&self) -> Result<Vec<Cochain1>, CohomologyError> {
        let zero = Cochain2::zero(self.q.order());
        let gens = self.q.gens().len() as u32;
        if (self.m.order() as u128).pow(gens) > ENUMERATION_BOUND as u128 {
            return Err(CohomologyError::BoundExceeded(ENUMERATION_BOUND));
        }
        // a crossed hom is δ-closed against the zero 2-cochain
        let mut all = self.solve_coboundary(&zero, false);
        all.sort();
        all.dedup();
        Ok(all)
    }

    /// All normalized 2-cocycles, lexicographically sorted, by backtracking
    /// with the cocycle identity checked as soon as its four entries are set.
    pub fn cocycles2(&self) -> Result<Vec<Cochain2>, CohomologyError> {
        let q = &self.q;
        let n = q.order();
        let nm = self.m.order();
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|u| (1..n).map(move |v| (u, v))).collect();
        let pos = |u: usize, v: usize| -> Option<usize> {
            (u != 0 && v != 0).then(|| (u - 1) * (n - 1) + (v - 1))
        };
        // triples grouped by the last pair index they need
        let mut checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); pairs.len()];
        for u in 1..n {
            for v in 1..n {
                for w in 1..n {
                    let uv = q.mul(u, v);
                    let vw = q.mul(v, w);
                    let need = [pos(u, v), pos(uv, w), pos(v, w), pos(u, vw)];
                    let last = need.iter().flatten().max().copied().expect("u,v ≠ 1");
                    checks[last].push((u, v, w));
                }
            }
        }
        let mut out = Vec::new();
        let mut c = Cochain2::zero(n);
        let mut k = 0usize;
        let mut val = vec![0usize; pairs.len()];
        if pairs.is_empty() {
            return Ok(vec![c]);
        }
        loop {
            // try val[k] at position k
            let (u, v) = pairs[k];
            c.values[u * n + v] = val[k];
            let ok = checks[k].iter().all(|&(a, b, d)| {
                let ab = q.mul(a, b);
                let bd = q.mul(b, d);
                self.add(c.get(a, b), c.get(ab, d))
                    == self.add(self.act(a, c.get(b, d)), c.get(a, bd))
            });
            if ok && k + 1 == pairs.len() {
                out.push(c.clone());
                if out.len() > ENUMERATION_BOUND {
                    return Err(CohomologyError::BoundExceeded(ENUMERATION_BOUND));
                }
            }
            if ok && k + 1 < pairs.len() {
                k += 1;
                val[k] = 0;
                continue;
            }
            // advance
            loop {
                val[k] += 1;
                if val[k] < nm {
                    break;
                }
                let (u, v) = pairs[k];
                c.values[u * n + v] = 0;
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
            }
        }
    }

    /// Representatives (lexicographically least in class) and order of `H¹`.
    pub fn h1(&self) -> Result<CohomologyGroup<Cochain1>, CohomologyError> {
        let z = self.cocycles1()?;
        let b: HashSet<Cochain1> = (0..self.m.order()).map(|m| self.principal(m)).collect();
        let add = |x: &Cochain1, y: &Cochain1| Cochain1 {
            values: x
                .values
                .iter()
                .zip(&y.values)
                .map(|(&a, &c)| self.add(a, c))
                .collect(),
        };
        Ok(classes(z, &b, add))
    }

    pub fn h2(&self) -> Result<CohomologyGroup<Cochain2>, CohomologyError> {
        let z = self.cocycles2()?;
        let n = self.q.order();
        let nm = self.m.order();
        if (nm as u128).pow((n - 1) as u32) > ENUMERATION_BOUND as u128 {
            return Err(CohomologyError::BoundExceeded(ENUMERATION_BOUND));
        }
        let mut b = HashSet::new();
        let mut f = Cochain1 { values: vec![0; n] };
        loop {
            b.insert(self.coboundary1(&f));
            let mut i = 1;
            loop {
                if i >= n {
                    return Ok(classes(z, &b, |x, y| self.add2(x, y)));
                }
                f.values[i] += 1;
                if f.values[i] < nm {
                    break;
                }
                f.values[i] = 0;
                i += 1;
            }
        }
    }
}

fn classes<C: Clone + Eq + std::hash::Hash + Ord>(
    mut z: Vec<C>,
    b: &HashSet<C>,
    add: impl Fn(&C, &C) -> C,
) -> CohomologyGroup<C> {
    z.sort();
    let mut seen: HashSet<C> = HashSet::new();
    let mut reps = Vec::new();
    for c in &z {
        if seen.contains(c) {
            continue;
        }
        reps.push(c.clone());
        for x in b {
            seen.insert(add(c, x));
        }
    }
    CohomologyGroup {
        order: reps.len(),
        cocycles: z.len(),
        coboundaries: b.len(),
        representatives: reps,
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyGroup<C> {
    pub order: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub representatives: Vec<C>,
}

/// Normalized `Q → M` (value `0` at the identity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain1 {
    values: Vec<usize>,
}

impl Cochain1 {
    pub fn new(values: Vec<usize>) -> Result<Cochain1, CohomologyError> {
        if values.first() != Some(&0) {
            return Err(CohomologyError::NotNormalized);
        }
        Ok(Cochain1 { values })
    }

    pub fn zero(order: usize) -> Cochain1 {
        Cochain1 {
            values: vec![0; order],
        }
    }

    pub fn get(&self, u: usize) -> usize {
        self.values[u]
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

/// Normalized `Q × Q → M` (zero when either argument is the identity).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain2 {
    order: usize,
    values: Vec<usize>,
}

impl Cochain2 {
    pub fn new(order: usize, values: Vec<usize>) -> Result<Cochain2, CohomologyError> {
        if values.len() != order * order {
            return Err(CohomologyError::Shape);
        }
        if (0..order).any(|u| values[u] != 0 || values[u * order] != 0) {
            return Err(CohomologyError::NotNormalized);
        }
        Ok(Cochain2 { order, values })
    }

    pub fn from_fn(
        order: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Cochain2, CohomologyError> {
        Cochain2::new(
            order,
            (0..order * order)
                .map(|k| f(k / order, k % order))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Cochain2 {
        Cochain2 {
            order,
            values: vec![0; order * order],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        self.values[u * self.order + v]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .values
            .chunks(self.order)
            .map(|r| r.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" | "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: usize) -> FinGroup {
        FinGroup::cyclic(n)
    }

    #[test]
    fn cocycle_checks() {
        let m = GModule::trivial(c(2), c(2)).unwrap();
        assert!(m.is_cocycle2(&Cochain2::zero(2)));
        assert!(m.is_cocycle1(&Cochain1::zero(2)));
        let nontrivial = Cochain2::new(2, vec![0, 0, 0, 1]).unwrap();
        assert!(m.is_cocycle2(&nontrivial));
        assert!(!m.is_coboundary2(&nontrivial));
        assert!(Cochain2::new(2, vec![1, 0, 0, 0]).is_err());
        // C2 acting on C4 by inversion
        let c4 = c(4);
        let inv: Vec<usize> = (0..4).map(|x| c4.inv(x)).collect();
        let m = GModule::new(c(2), c4, vec![(0..4).collect(), inv]).unwrap();
        for x in 0..4 {
            assert!(m.is_cocycle1(&m.principal(x)));
        }
    }

    #[test]
    fn known_groups() {
        assert_eq!(GModule::trivial(c(2), c(2)).unwrap().h2().unwrap().order, 2);
        assert_eq!(GModule::trivial(c(3), c(2)).unwrap().h2().unwrap().order, 1);
        assert_eq!(
            GModule::trivial(c(3), FinGroup::trivial())
                .unwrap()
                .h1()
                .unwrap()
                .order,
            1
        );
        // H¹(C2, C2) = Hom = C2, H²(C4, C4) = C4
        assert_eq!(GModule::trivial(c(2), c(2)).unwrap().h1().unwrap().order, 2);
        assert_eq!(GModule::trivial(c(4), c(4)).unwrap().h2().unwrap().order, 4);
        // H²(C2 × C2, C2) = C2³
        let v4 = FinGroup::direct_product(&c(2), &c(2));
        assert_eq!(GModule::trivial(v4, c(2)).unwrap().h2().unwrap().order, 8);
        // inversion on C4: H² = M^Q / norm = {0,2}
        let c4 = c(4);
        let inv: Vec<usize> = (0..4).map(|x| c4.inv(x)).collect();
        let m = GModule::new(c(2), c4, vec![(0..4).collect(), inv]).unwrap();
        assert_eq!(m.h2().unwrap().order, 2);
        assert_eq!(m.h1().unwrap().order, 2);
    }

    #[test]
    fn bad_actions_rejected() {
        let c3 = c(3);
        // order-3 permutation of C3 is not additive
        assert!(GModule::new(c(2), c3.clone(), vec![vec![0, 1, 2], vec![1, 2, 0]]).is_err());
        // inversion is not a C3-action of order dividing 3
        assert!(GModule::new(
            c(3),
            c3.clone(),
            vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]]
        )
        .is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        /// Coboundaries are cocycles and are recognized as trivial.
        #[test]
        fn coboundaries_are_trivial(n in 2usize..5, k in 2usize..5, vals in proptest::collection::vec(0usize..60, 4)) {
            let m = GModule::trivial(c(n), c(k)).unwrap();
            let mut f = vec![0usize; n];
            for u in 1..n {
                f[u] = vals[u - 1] % k;
            }
            let d = m.coboundary1(&Cochain1::new(f).unwrap());
            prop_assert!(m.is_cocycle2(&d));
            prop_assert!(m.is_coboundary2(&d));
        }

        /// `|H²(C_n, C_k)| = gcd(n, k)` for the trivial action.
        #[test]
        fn cyclic_h2_order(n in 2usize..5, k in 1usize..5) {
            let m = GModule::trivial(c(n), c(k)).unwrap();
            prop_assert_eq!(m.h2().unwrap().order, num_integer::gcd(n, k));
        }
    }
}
