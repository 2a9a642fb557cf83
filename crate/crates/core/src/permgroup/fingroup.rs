use std::fmt;

use super::{GroupError, Perm, PermGroup};

/// An abstract finite group given by its multiplication table.
///
/// Element `0` is the identity. Labels are for reports only.
#[derive(Clone, PartialEq, Eq)]
pub struct FinGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
    gens: Vec<usize>,
}

impl FinGroup {
    /// Build from a table, verifying the group axioms.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Vec<String>,
        gens: Vec<usize>,
    ) -> Result<FinGroup, GroupError> {
        let n = table.len();
        if n == 0 || labels.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::BadTable("shape".into()));
        }
        let flat: Vec<usize> = table.concat();
        if flat.iter().any(|&x| x >= n) {
            return Err(GroupError::BadTable("entry out of range".into()));
        }
        if (0..n).any(|a| flat[a] != a || flat[a * n] != a) {
            return Err(GroupError::BadTable("element 0 is not the identity".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .ok_or_else(|| GroupError::BadTable(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(GroupError::BadTable("not associative".into()));
                    }
                }
            }
        }
        let g = FinGroup {
            n,
            table: flat,
            inv,
            labels,
            gens,
        };
        if g.closure(&g.gens).len() != n {
            return Err(GroupError::BadTable("generators do not generate".into()));
        }
        Ok(g)
    }

    fn from_table_unchecked(
        n: usize,
        table: Vec<usize>,
        labels: Vec<String>,
        gens: Vec<usize>,
    ) -> FinGroup {
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group");
        }
        FinGroup {
            n,
            table,
            inv,
            labels,
            gens,
        }
    }

    /// Table of a permutation group in closure order.
    pub fn from_perm_group(g: &PermGroup) -> FinGroup {
        let n = g.order();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = g.position(&g.element(a).mul(g.element(b))).expect("closed");
            }
        }
        let labels = g.elements().iter().map(Perm::to_string).collect();
        let gens = g
            .gens()
            .iter()
            .map(|x| g.position(x).expect("generator"))
            .collect();
        Self::from_table_unchecked(n, table, labels, gens)
    }

    pub fn trivial() -> FinGroup {
        Self::from_table_unchecked(1, vec![0], vec!["1".into()], Vec::new())
    }

    /// `ℤ/n` with labels `0..n-1`.
    pub fn cyclic(n: usize) -> FinGroup {
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let gens = if n > 1 { vec![1] } else { Vec::new() };
        Self::from_table_unchecked(n, table, (0..n).map(|i| i.to_string()).collect(), gens)
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> FinGroup {
        let n = a.n * b.n;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b.n, x % b.n);
                let (y1, y2) = (y / b.n, y % b.n);
                table[x * n + y] = a.mul(x1, y1) * b.n + b.mul(x2, y2);
            }
        }
        let labels = (0..n)
            .map(|x| format!("({},{})", a.labels[x / b.n], b.labels[x % b.n]))
            .collect();
        let mut gens: Vec<usize> = a.gens.iter().map(|&g| g * b.n).collect();
        gens.extend(b.gens.iter().copied());
        Self::from_table_unchecked(n, table, labels, gens)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            k += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_normal_subset(&self, sub: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &s in sub {
            member[s] = true;
        }
        (0..self.n).all(|g| {
            sub.iter()
                .all(|&h| member[self.mul(self.mul(g, h), self.inv(g))])
        })
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&z| (0..self.n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Whether `images[g]` (for every element `g`) defines a homomorphism into `target`.
    pub fn is_hom_to(&self, target: &FinGroup, images: &[usize]) -> bool {
        images.len() == self.n
            && (0..self.n).all(|a| {
                (0..self.n).all(|b| images[self.mul(a, b)] == target.mul(images[a], images[b]))
            })
    }

    /// Extend generator images to all elements, if consistent.
    pub fn extend_gen_images(&self, target: &FinGroup, gen_images: &[usize]) -> Option<Vec<usize>> {
        assert_eq!(gen_images.len(), self.gens.len());
        let mut img = vec![usize::MAX; self.n];
        img[0] = 0;
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for (gi, &g) in self.gens.iter().enumerate() {
                let y = self.mul(x, g);
                let v = target.mul(img[x], gen_images[gi]);
                if img[y] == usize::MAX {
                    img[y] = v;
                    queue.push(y);
                } else if img[y] != v {
                    return None;
                }
            }
        }
        Some(img)
    }

    /// Quotient by a normal subgroup given as an element list.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient, GroupError> {
        if !self.is_normal_subset(normal) || self.closure(normal).len() != normal.len() {
            return Err(GroupError::NotNormal);
        }
        let mut proj = vec![usize::MAX; self.n];
        let mut reps = Vec::new();
        for x in 0..self.n {
            if proj[x] != usize::MAX {
                continue;
            }
            for &h in normal {
                proj[self.mul(x, h)] = reps.len();
            }
            reps.push(x);
        }
        let m = reps.len();
        let table: Vec<usize> = (0..m * m)
            .map(|k| proj[self.mul(reps[k / m], reps[k % m])])
            .collect();
        let labels = reps
            .iter()
            .map(|&r| format!("[{}]", self.labels[r]))
            .collect();
        let mut gens: Vec<usize> = self
            .gens
            .iter()
            .map(|&g| proj[g])
            .filter(|&q| q != 0)
            .collect();
        gens.dedup();
        let group = Self::from_table_unchecked(m, table, labels, gens);
        Ok(Quotient { group, proj, reps })
    }

    /// Regular representation on `order` points.
    pub fn regular_rep(&self) -> PermGroup {
        let gens: Vec<Perm> = self
            .gens
            .iter()
            .map(|&g| {
                Perm::from_images((0..self.n).map(|x| self.mul(g, x)).collect()).expect("bijection")
            })
            .collect();
        PermGroup::new(self.n, gens).expect("regular representation")
    }

    /// An isomorphism `self → other` as an element map, if one exists.
    pub fn isomorphism_to(&self, other: &FinGroup) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let orders: Vec<usize> = (0..other.n).map(|x| other.element_order(x)).collect();
        let cands: Vec<Vec<usize>> = self
            .gens
            .iter()
            .map(|&g| {
                let o = self.element_order(g);
                (0..other.n).filter(|&x| orders[x] == o).collect()
            })
            .collect();
        if cands.iter().any(Vec::is_empty) {
            return None;
        }
        let mut choice = vec![0usize; self.gens.len()];
        loop {
            let imgs: Vec<usize> = choice
                .iter()
                .enumerate()
                .map(|(i, &c)| cands[i][c])
                .collect();
            if let Some(map) = self.extend_gen_images(other, &imgs) {
                let mut hit = vec![false; other.n];
                map.iter().for_each(|&y| hit[y] = true);
                if hit.iter().all(|&h| h) {
                    return Some(map);
                }
            }
            // odometer
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

    /// Short structural name for small groups (`C4`, `C2xC2`, `S3`, ...).
    pub fn describe(&self) -> String {
        let n = self.n;
        if n == 1 {
            return "1".into();
        }
        if (0..n).any(|x| self.element_order(x) == n) {
            return format!("C{n}");
        }
        if self.is_abelian() {
            let mut exps = Vec::new();
            let mut rest = self.clone();
            // invariant factors via repeated max-order cyclic splitting
            let mut order = n;
            while order > 1 {
                let e = (0..rest.n)
                    .map(|x| rest.element_order(x))
                    .max()
                    .unwrap_or(1);
                exps.push(e);
                let x = (0..rest.n).find(|&x| rest.element_order(x) == e).unwrap();
                let q = rest.quotient(&rest.closure(&[x])).expect("abelian");
                rest = q.group;
                order = rest.n;
            }
            exps.sort_unstable();
            return exps
                .iter()
                .map(|e| format!("C{e}"))
                .collect::<Vec<_>>()
                .join("x");
        }
        let involutions = (0..n).filter(|&x| self.element_order(x) == 2).count();
        match n {
            6 => "S3".into(),
            8 if involutions == 1 => "Q8".into(),
            8 => "D4".into(),
            12 if involutions == 3 && (0..n).all(|x| self.element_order(x) != 6) => "A4".into(),
            12 if involutions == 7 => "D6".into(),
            _ => format!("group of order {n}"),
        }
    }
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup(order {}, {})", self.n, self.describe())
    }
}

/// A quotient group with its projection and coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FinGroup,
    /// Parent element index to coset index.
    pub proj: Vec<usize>,
    /// Least parent element index in each coset.
    pub reps: Vec<usize>,
}

/// Quotient of a permutation group by a normal subgroup; indices refer to
/// the closure order of `g`.
pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<Quotient, GroupError> {
    if !n.is_normal_in(g) {
        return Err(GroupError::NotNormal);
    }
    let fg = FinGroup::from_perm_group(g);
    let elems: Vec<usize> = n
        .elements()
        .iter()
        .map(|e| g.position(e).expect("subgroup"))
        .collect();
    let mut sorted = elems;
    sorted.sort_unstable();
    fg.quotient(&sorted)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotients() {
        let s3 = PermGroup::from_cycles(3, &["(1 2)", "(1 2 3)"]).unwrap();
        let a3 = PermGroup::from_cycles(3, &["(1 2 3)"]).unwrap();
        let q = quotient_group(&s3, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        let z = d4.center();
        assert_eq!(z.order(), 2);
        let q = quotient_group(&d4, &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert!((1..4).all(|x| q.group.element_order(x) == 2));
        // explicit coset multiplication agrees with the table
        for a in 0..8 {
            for b in 0..8 {
                let ab = d4.position(&d4.element(a).mul(d4.element(b))).unwrap();
                assert_eq!(q.proj[ab], q.group.mul(q.proj[a], q.proj[b]));
            }
        }
        assert_eq!(quotient_group(&s3, &s3).unwrap().group.order(), 1);
        let h = PermGroup::from_cycles(3, &["(1 2)"]).unwrap();
        assert!(quotient_group(&s3, &h).is_err());
    }

    #[test]
    fn tables() {
        let c = FinGroup::cyclic(4);
        assert_eq!(c.describe(), "C4");
        let k = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        assert_eq!(k.describe(), "C2xC2");
        assert!(c.isomorphism_to(&k).is_none());
        let reg = k.regular_rep();
        assert_eq!(reg.order(), 4);
        assert!(FinGroup::from_perm_group(&reg).isomorphism_to(&k).is_some());
        let bad = FinGroup::from_table(
            vec![vec![0, 1], vec![1, 1]],
            vec!["a".into(), "b".into()],
            vec![1],
        );
        assert!(bad.is_err());
        let d4 = PermGroup::from_cycles(4, &["(1 2 3 4)", "(1 3)"]).unwrap();
        assert_eq!(FinGroup::from_perm_group(&d4).describe(), "D4");
    }
}
