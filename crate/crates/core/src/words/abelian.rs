use crate::linalg::{smith_normal_form, IntMatrix};

use super::{FreeMap, Index, SubgroupGraph, Word, WordError};

/// Action of a subgroup-preserving map on `sub^ab / ⟨relators⟩`, modulo torsion.
#[derive(Clone, Debug)]
pub struct AbelianAction {
    sub: SubgroupGraph,
    /// Schreier coordinates `x` become `y = x·v`; the quotient is diagonal in `y`.
    v: IntMatrix,
    free_cols: Vec<usize>,
    /// Invariant factors greater than one.
    pub torsion: Vec<i64>,
    /// Words whose classes form a basis of the free part.
    pub free_basis: Vec<Word>,
    /// Column `j` is the image of `free_basis[j]`.
    pub matrix: IntMatrix,
}

impl AbelianAction {
    pub fn free_rank(&self) -> usize {
        self.free_cols.len()
    }

    /// Coordinates of the class of `w` in the free part.
    pub fn coordinates(&self, w: &Word) -> Result<Vec<i64>, WordError> {
        let x = self
            .sub
            .schreier_coordinates(w)
            .ok_or_else(|| WordError::NotInSubgroup(w.to_string()))?;
        let y = self.v.apply_row(&x);
        Ok(self.free_cols.iter().map(|&j| y[j]).collect())
    }

    /// The action matrix (column convention) in a user-supplied basis of the free part.
    pub fn matrix_in_basis(&self, basis: &[Word]) -> Result<IntMatrix, WordError> {
        let k = self.free_rank();
        if basis.len() != k {
            return Err(WordError::BadBasis(format!(
                "expected {k} basis words, got {}",
                basis.len()
            )));
        }
        let cols = basis
            .iter()
            .map(|b| self.coordinates(b))
            .collect::<Result<Vec<_>, _>>()?;
        let p = IntMatrix::from_rows(&cols).transpose();
        let pinv = p
            .unimodular_inverse()
            .map_err(|e| WordError::BadBasis(e.to_string()))?;
        Ok(pinv.mul(&self.matrix)?.mul(&p)?)
    }
}

/// The matrix of `f` acting on the abelianization of `sub` modulo the
/// conjugates (inside `sub`) of `relators`.
pub fn abelian_quotient_action(
    sub: &SubgroupGraph,
    relators: &[Word],
    f: &FreeMap,
) -> Result<AbelianAction, WordError> {
    if sub.index() == Index::Infinite {
        return Err(WordError::InfiniteIndex);
    }
    if !sub.image(f)?.equals(sub) {
        return Err(WordError::NotPreserved);
    }
    let gens = sub.free_generators();
    let k = gens.len();
    let mut rel_rows: Vec<Vec<i64>> = Vec::new();
    for t in sub.transversal() {
        for r in relators {
            let c = t.conjugate(r);
            if let Some(x) = sub.schreier_coordinates(&c) {
                rel_rows.push(x);
            }
        }
    }
    if rel_rows.is_empty() {
        rel_rows.push(vec![0; k]);
    }
    let smith = smith_normal_form(&IntMatrix::from_rows(&rel_rows));
    let v = smith.v.clone();
    let vinv = v.unimodular_inverse()?;
    let diag: Vec<i64> = (0..k)
        .map(|j| {
            if j < smith.d.rows() {
                smith.d[(j, j)]
            } else {
                0
            }
        })
        .collect();
    let free_cols: Vec<usize> = (0..k).filter(|&j| diag[j] == 0).collect();
    let torsion: Vec<i64> = diag.iter().copied().filter(|&d| d > 1).collect();

    // f on Schreier coordinates, rows = images of generators
    let f_rows = gens
        .iter()
        .map(|g| {
            let img = f.apply(g)?;
            sub.schreier_coordinates(&img)
                .ok_or_else(|| WordError::NotInSubgroup(img.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let fm = IntMatrix::from_rows(&f_rows);
    let conj = vinv.mul(&fm)?.mul(&v)?;
    let block = conj.submatrix(&free_cols, &free_cols);

    let free_basis = free_cols
        .iter()
        .map(|&j| {
            let mut w = Word::identity(sub.rank());
            for (i, g) in gens.iter().enumerate() {
                w = w.mul(&g.pow(vinv[(j, i)]));
            }
            w
        })
        .collect();
    Ok(AbelianAction {
        sub: sub.clone(),
        v,
        free_cols,
        torsion,
        free_basis,
        matrix: block.transpose(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[i32], n: usize) -> Word {
        Word::reduce(raw, n).unwrap()
    }

    #[test]
    fn free_abelian_identity() {
        let sub = SubgroupGraph::from_generators(&[w(&[1], 2), w(&[2], 2)], 2).unwrap();
        let a = abelian_quotient_action(&sub, &[], &FreeMap::identity(2)).unwrap();
        assert!(a.torsion.is_empty());
        assert!(a.matrix.is_identity());
        assert_eq!(a.free_rank(), 2);
    }

    #[test]
    fn torsion_reported() {
        let sub = SubgroupGraph::from_generators(&[w(&[1], 2), w(&[2], 2)], 2).unwrap();
        let a = abelian_quotient_action(&sub, &[w(&[1, 1, 1], 2)], &FreeMap::identity(2)).unwrap();
        assert_eq!(a.torsion, vec![3]);
        assert_eq!(a.free_rank(), 1);
    }

    #[test]
    fn swap_matrix_in_basis() {
        let sub = SubgroupGraph::from_generators(&[w(&[1], 2), w(&[2], 2)], 2).unwrap();
        let swap = FreeMap::new(vec![w(&[2], 2), w(&[1], 2)]).unwrap();
        let a = abelian_quotient_action(&sub, &[], &swap).unwrap();
        let m = a.matrix_in_basis(&[w(&[1], 2), w(&[2], 2)]).unwrap();
        assert_eq!(m, IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert!(a.matrix_in_basis(&[w(&[1], 2), w(&[1], 2)]).is_err());
    }

    #[test]
    fn unpreserved_subgroup_rejected() {
        let sub =
            SubgroupGraph::from_generators(&[w(&[1, 1], 2), w(&[2], 2), w(&[1, 2, -1], 2)], 2)
                .unwrap();
        let swap = FreeMap::new(vec![w(&[2], 2), w(&[1], 2)]).unwrap();
        assert!(matches!(
            abelian_quotient_action(&sub, &[], &swap),
            Err(WordError::NotPreserved)
        ));
    }
}
