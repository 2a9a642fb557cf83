use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use super::{FreeMap, Word, WordError};

/// Folded, basepointed Stallings graph of a subgroup of a free group.
///
/// States are numbered in breadth-first order from the basepoint `0`, so two
/// graphs of the same subgroup are structurally identical.
#[derive(Clone, PartialEq, Eq)]
pub struct SubgroupGraph {
    rank: usize,
    /// `out[s][a-1]`: target of the `x_a` edge leaving `s`.
    out: Vec<Vec<Option<usize>>>,
    /// `inc[s][a-1]`: source of the `x_a` edge entering `s`.
    inc: Vec<Vec<Option<usize>>>,
}

/// Index of a subgroup: finite, or infinite when the graph is not complete.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => write!(f, "infinite"),
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.0[hi] = lo;
        true
    }
}

impl SubgroupGraph {
    /// Fold the bouquet of generator loops.
    pub fn from_generators(gens: &[Word], rank: usize) -> Result<SubgroupGraph, WordError> {
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        let mut nstates = 1usize;
        let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (src, label0, dst)
        for g in gens {
            if g.rank() != rank {
                return Err(WordError::RankMismatch(rank, g.rank()));
            }
            if g.is_empty() {
                continue;
            }
            let len = g.len();
            let mut cur = 0usize;
            for (k, &l) in g.letters().iter().enumerate() {
                let next = if k + 1 == len {
                    0
                } else {
                    nstates += 1;
                    nstates - 1
                };
                let a = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    edges.push((cur, a, next));
                } else {
                    edges.push((next, a, cur));
                }
                cur = next;
            }
        }
        Ok(Self::fold(rank, nstates, edges))
    }

    fn fold(rank: usize, nstates: usize, edges: Vec<(usize, usize, usize)>) -> SubgroupGraph {
        let mut uf = UnionFind((0..nstates).collect());
        loop {
            let mut changed = false;
            let mut fwd: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            let mut bwd: BTreeMap<(usize, usize), usize> = BTreeMap::new();
            for &(s, a, t) in &edges {
                let (s, t) = (uf.find(s), uf.find(t));
                if let Some(&t2) = fwd.get(&(s, a)) {
                    changed |= uf.union(t, t2);
                } else {
                    fwd.insert((s, a), t);
                }
                let (s, t) = (uf.find(s), uf.find(t));
                if let Some(&s2) = bwd.get(&(t, a)) {
                    changed |= uf.union(s, s2);
                } else {
                    bwd.insert((t, a), s);
                }
            }
            if !changed {
                break;
            }
        }
        let mut out = vec![vec![None; rank]; nstates];
        let mut inc = vec![vec![None; rank]; nstates];
        for &(s, a, t) in &edges {
            let (s, t) = (uf.find(s), uf.find(t));
            out[s][a] = Some(t);
            inc[t][a] = Some(s);
        }
        // Trim hanging trees, keeping the basepoint.
        let mut alive: Vec<bool> = (0..nstates).map(|s| uf.find(s) == s).collect();
        let degree = |s: usize, out: &Vec<Vec<Option<usize>>>, inc: &Vec<Vec<Option<usize>>>| {
            out[s].iter().filter(|e| e.is_some()).count()
                + inc[s].iter().filter(|e| e.is_some()).count()
        };
        let mut queue: VecDeque<usize> = (1..nstates)
            .filter(|&s| alive[s] && degree(s, &out, &inc) <= 1)
            .collect();
        while let Some(s) = queue.pop_front() {
            if !alive[s] || s == 0 || degree(s, &out, &inc) > 1 {
                continue;
            }
            alive[s] = false;
            for a in 0..rank {
                if let Some(t) = out[s][a].take() {
                    inc[t][a] = None;
                    if t != 0 && alive[t] && degree(t, &out, &inc) <= 1 {
                        queue.push_back(t);
                    }
                }
                if let Some(t) = inc[s][a].take() {
                    out[t][a] = None;
                    if t != 0 && alive[t] && degree(t, &out, &inc) <= 1 {
                        queue.push_back(t);
                    }
                }
            }
        }
        Self::canonical(rank, &out, &inc, 0)
    }

    /// Renumber the component of `base` in breadth-first order.
    fn canonical(
        rank: usize,
        out: &[Vec<Option<usize>>],
        inc: &[Vec<Option<usize>>],
        base: usize,
    ) -> SubgroupGraph {
        let mut order = vec![usize::MAX; out.len()];
        let mut seq = vec![base];
        order[base] = 0;
        let mut head = 0;
        while head < seq.len() {
            let s = seq[head];
            head += 1;
            let nbrs = (0..rank)
                .map(|a| out[s][a])
                .chain((0..rank).map(|a| inc[s][a]));
            for t in nbrs.flatten() {
                if order[t] == usize::MAX {
                    order[t] = seq.len();
                    seq.push(t);
                }
            }
        }
        let mut g = SubgroupGraph {
            rank,
            out: vec![vec![None; rank]; seq.len()],
            inc: vec![vec![None; rank]; seq.len()],
        };
        for &s in &seq {
            for (a, t) in out[s].iter().enumerate() {
                if let Some(t) = *t {
                    g.out[order[s]][a] = Some(order[t]);
                    g.inc[order[t]][a] = Some(order[s]);
                }
            }
        }
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_states(&self) -> usize {
        self.out.len()
    }

    pub fn num_edges(&self) -> usize {
        self.out.iter().flatten().filter(|e| e.is_some()).count()
    }

    /// Follow a letter from a state.
    pub fn step(&self, s: usize, letter: i32) -> Option<usize> {
        let a = letter.unsigned_abs() as usize - 1;
        if letter > 0 {
            self.out[s][a]
        } else {
            self.inc[s][a]
        }
    }

    /// Endpoint of reading `w` from `s`, if the path exists.
    pub fn read_from(&self, s: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(s, |cur, &l| self.step(cur, l))
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.rank() == self.rank && self.read_from(0, w) == Some(0)
    }

    pub fn index(&self) -> Index {
        if self.out.iter().all(|row| row.iter().all(Option::is_some)) {
            Index::Finite(self.num_states())
        } else {
            Index::Infinite
        }
    }

    /// Breadth-first spanning tree: parent edge `(parent, letter)` per state.
    fn spanning_tree(&self, root: usize) -> Vec<Option<(usize, i32)>> {
        let n = self.num_states();
        let mut parent: Vec<Option<(usize, i32)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(s) = queue.pop_front() {
            for l in self.letter_order() {
                if let Some(t) = self.step(s, l) {
                    if !seen[t] {
                        seen[t] = true;
                        parent[t] = Some((s, l));
                        queue.push_back(t);
                    }
                }
            }
        }
        parent
    }

    fn letter_order(&self) -> impl Iterator<Item = i32> {
        let r = self.rank as i32;
        (1..=r).chain((1..=r).map(|a| -a))
    }

    fn tree_paths(&self, root: usize) -> Vec<Word> {
        let parent = self.spanning_tree(root);
        let mut paths: Vec<Option<Word>> = vec![None; self.num_states()];
        paths[root] = Some(Word::identity(self.rank));
        fn path(
            s: usize,
            parent: &[Option<(usize, i32)>],
            paths: &mut Vec<Option<Word>>,
            rank: usize,
        ) -> Word {
            if let Some(p) = &paths[s] {
                return p.clone();
            }
            let (p, l) = parent[s].expect("graph is connected");
            let w = path(p, parent, paths, rank).mul(&Word::reduce(&[l], rank).unwrap());
            paths[s] = Some(w.clone());
            w
        }
        (0..self.num_states())
            .map(|s| path(s, &parent, &mut paths, self.rank))
            .collect()
    }

    /// Words reading from the basepoint to each state along the spanning tree.
    pub fn transversal(&self) -> Vec<Word> {
        self.tree_paths(0)
    }

    /// Free basis: one basepoint loop per edge outside the spanning tree.
    pub fn free_generators(&self) -> Vec<Word> {
        self.free_generators_with_edges()
            .into_iter()
            .map(|(w, _)| w)
            .collect()
    }

    pub(crate) fn free_generators_with_edges(&self) -> Vec<(Word, (usize, usize))> {
        let parent = self.spanning_tree(0);
        let paths = self.tree_paths(0);
        let mut gens = Vec::new();
        for s in 0..self.num_states() {
            for a in 0..self.rank {
                if let Some(t) = self.out[s][a] {
                    if parent[t] == Some((s, (a + 1) as i32)) {
                        continue;
                    }
                    let x = Word::generator(self.rank, a + 1);
                    gens.push((paths[s].mul(&x).mul(&paths[t].inverse()), (s, a)));
                }
            }
        }
        gens
    }

    /// Reidemeister–Schreier free basis; requires finite index.
    pub fn reidemeister_schreier(&self) -> Result<Vec<Word>, WordError> {
        if self.index() == Index::Infinite {
            return Err(WordError::InfiniteIndex);
        }
        Ok(self.free_generators())
    }

    /// Coordinates of a loop in the abelianization, indexed like `free_generators`.
    pub(crate) fn schreier_coordinates(&self, w: &Word) -> Option<Vec<i64>> {
        let edges = self.free_generators_with_edges();
        let mut pos = BTreeMap::new();
        for (k, (_, e)) in edges.iter().enumerate() {
            pos.insert(*e, k);
        }
        let mut coords = vec![0i64; edges.len()];
        let mut cur = 0usize;
        for &l in w.letters() {
            let next = self.step(cur, l)?;
            let a = l.unsigned_abs() as usize - 1;
            let edge = if l > 0 { (cur, a) } else { (next, a) };
            if let Some(&k) = pos.get(&edge) {
                coords[k] += l.signum() as i64;
            }
            cur = next;
        }
        (cur == 0).then_some(coords)
    }

    pub fn image(&self, f: &FreeMap) -> Result<SubgroupGraph, WordError> {
        let gens = self
            .free_generators()
            .iter()
            .map(|w| f.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        SubgroupGraph::from_generators(&gens, self.rank)
    }

    pub fn equals(&self, other: &SubgroupGraph) -> bool {
        self.rank == other.rank
            && self.free_generators().iter().all(|w| other.contains(w))
            && other.free_generators().iter().all(|w| self.contains(w))
    }

    /// Strip the hair at the basepoint: returns the core graph and the
    /// hair word `h` with `self = h · π₁(core, base) · h⁻¹`.
    fn core_with_hair(&self) -> Option<(SubgroupGraph, Word)> {
        if self.num_edges() == 0 {
            return None;
        }
        let mut cur = 0usize;
        let mut hair = Word::identity(self.rank);
        let mut prev: Option<usize> = None;
        loop {
            let nbrs: Vec<(i32, usize)> = self
                .letter_order()
                .filter_map(|l| self.step(cur, l).map(|t| (l, t)))
                .collect();
            let forward: Vec<&(i32, usize)> =
                nbrs.iter().filter(|(_, t)| Some(*t) != prev).collect();
            let is_hair = if cur == 0 {
                nbrs.len() == 1
            } else {
                nbrs.len() == 2
            };
            if !is_hair || forward.len() != 1 || forward[0].1 == cur {
                break;
            }
            let (l, t) = *forward[0];
            hair = hair.mul(&Word::reduce(&[l], self.rank).unwrap());
            prev = Some(cur);
            cur = t;
        }
        Some((
            Self::canonical(self.rank, &self.out, &self.inc, cur).trimmed(),
            hair,
        ))
    }

    /// Drop states that only hang off the current basepoint chain; used after rebasing.
    fn trimmed(self) -> SubgroupGraph {
        let mut edges = Vec::new();
        for s in 0..self.num_states() {
            for a in 0..self.rank {
                if let Some(t) = self.out[s][a] {
                    edges.push((s, a, t));
                }
            }
        }
        Self::fold(self.rank, self.num_states(), edges)
    }

    /// A word `w` with `w · self · w⁻¹ = other`, if the subgroups are conjugate.
    pub fn conjugator_to(&self, other: &SubgroupGraph) -> Result<Option<Word>, WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        let (c1, h1) = match self.core_with_hair() {
            Some(x) => x,
            None => {
                return Ok((other.num_edges() == 0).then(|| Word::identity(self.rank)));
            }
        };
        let (c2, h2) = match other.core_with_hair() {
            Some(x) => x,
            None => return Ok(None),
        };
        if c1.num_states() != c2.num_states() || c1.num_edges() != c2.num_edges() {
            return Ok(None);
        }
        let paths2 = c2.tree_paths(0);
        for (s2, p) in paths2.iter().enumerate() {
            if c1.isomorphic_at(&c2, s2) {
                // loops of c2 at s2 = p⁻¹ · loops at base · p
                let w = h2.mul(p).mul(&h1.inverse());
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// Whether the label-preserving map sending base to `s2` is an isomorphism.
    fn isomorphic_at(&self, other: &SubgroupGraph, s2: usize) -> bool {
        let n = self.num_states();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; other.num_states()];
        map[0] = s2;
        used[s2] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(s) = queue.pop_front() {
            for l in self.letter_order() {
                let a = self.step(s, l);
                let b = other.step(map[s], l);
                match (a, b) {
                    (None, None) => {}
                    (Some(t), Some(u)) => {
                        if map[t] == usize::MAX {
                            if used[u] {
                                return false;
                            }
                            map[t] = u;
                            used[u] = true;
                            queue.push_back(t);
                        } else if map[t] != u {
                            return false;
                        }
                    }
                    _ => return false,
                }
            }
        }
        map.iter().all(|&m| m != usize::MAX)
    }
}

impl fmt::Debug for SubgroupGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "SubgroupGraph(rank {}, {} states)",
            self.rank,
            self.num_states()
        )?;
        for s in 0..self.num_states() {
            for a in 0..self.rank {
                if let Some(t) = self.out[s][a] {
                    writeln!(f, "  {s} -x{}-> {t}", a + 1)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[i32], n: usize) -> Word {
        Word::reduce(raw, n).unwrap()
    }

    fn r2() -> SubgroupGraph {
        let gens = [
            w(&[2, -1], 3),
            w(&[3, -1], 3),
            w(&[1, 1], 3),
            w(&[1, 2], 3),
            w(&[1, 3], 3),
        ];
        SubgroupGraph::from_generators(&gens, 3).unwrap()
    }

    #[test]
    fn cyclic_square() {
        let g = SubgroupGraph::from_generators(&[w(&[1, 1], 1)], 1).unwrap();
        assert_eq!(g.num_states(), 2);
        assert_eq!(g.index(), Index::Finite(2));
        let rs = g.reidemeister_schreier().unwrap();
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].len(), 2);
    }

    #[test]
    fn whole_group() {
        let g = SubgroupGraph::from_generators(&[w(&[1], 2), w(&[2], 2)], 2).unwrap();
        assert_eq!(g.index(), Index::Finite(1));
        assert_eq!(g.reidemeister_schreier().unwrap().len(), 2);
    }

    #[test]
    fn conjugate_generator_membership() {
        let g = SubgroupGraph::from_generators(&[w(&[1], 2), w(&[2, 1, -2], 2)], 2).unwrap();
        assert!(g.contains(&w(&[2, 1, -2], 2)));
        assert!(!g.contains(&w(&[2], 2)));
        assert_eq!(g.index(), Index::Infinite);
    }

    #[test]
    fn even_length_kernel() {
        let g = r2();
        assert_eq!(g.index(), Index::Finite(2));
        assert!(g.contains(&w(&[1, 2], 3)));
        assert!(!g.contains(&w(&[1], 3)));
        let rs = g.reidemeister_schreier().unwrap();
        assert_eq!(rs.len(), 5);
        let again = SubgroupGraph::from_generators(&rs, 3).unwrap();
        assert_eq!(again, g);
        assert!(again.equals(&g));
    }

    #[test]
    fn hanging_trees_are_trimmed() {
        // ⟨x1 x2 x1⁻¹, x1⟩ is the whole group; the x1-prefix folds away.
        let g = SubgroupGraph::from_generators(&[w(&[1, 2, -1], 2), w(&[1, 1, -1], 2)], 2).unwrap();
        assert_eq!(g.num_states(), 1);
        let h = SubgroupGraph::from_generators(&[w(&[1, 2, 2, -1], 2)], 2).unwrap();
        assert_eq!(h.num_states(), 3);
        assert_eq!(h.index(), Index::Infinite);
    }

    #[test]
    fn conjugate_subgroups() {
        let a = SubgroupGraph::from_generators(&[w(&[1], 2)], 2).unwrap();
        let b = SubgroupGraph::from_generators(&[w(&[2, 1, -2], 2)], 2).unwrap();
        let c = a.conjugator_to(&b).unwrap().unwrap();
        assert_eq!(c, w(&[2], 2));
        let d = SubgroupGraph::from_generators(&[w(&[2], 2)], 2).unwrap();
        assert!(a.conjugator_to(&d).unwrap().is_none());
        // finite index, conjugate by x2
        let h = SubgroupGraph::from_generators(&[w(&[1, 1], 2), w(&[2], 2), w(&[1, 2, -1], 2)], 2)
            .unwrap();
        let x = w(&[1, 2], 2);
        let conj = SubgroupGraph::from_generators(
            &h.free_generators()
                .iter()
                .map(|g| x.conjugate(g))
                .collect::<Vec<_>>(),
            2,
        )
        .unwrap();
        let found = h.conjugator_to(&conj).unwrap().unwrap();
        let check = SubgroupGraph::from_generators(
            &h.free_generators()
                .iter()
                .map(|g| found.conjugate(g))
                .collect::<Vec<_>>(),
            2,
        )
        .unwrap();
        assert!(check.equals(&conj));
    }

    #[test]
    fn trivial_subgroup() {
        let t = SubgroupGraph::from_generators(&[], 2).unwrap();
        assert_eq!(t.index(), Index::Infinite);
        assert_eq!(t.conjugator_to(&t).unwrap(), Some(Word::identity(2)));
        assert!(t.reidemeister_schreier().is_err());
    }
}
