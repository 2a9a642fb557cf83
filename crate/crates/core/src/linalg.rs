//! Small dense integer matrices and Smith normal form.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(i64),
}

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| v[i] * self[(i, j)]).sum())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<i64, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::Dimension(
                "determinant of non-square matrix".into(),
            ));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a: Vec<Vec<i128>> = (0..n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a[k][k] == 0 {
                match (k + 1..n).find(|&i| a[i][k] != 0) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        Ok((sign * a[n - 1][n - 1]) as i64)
    }

    /// Inverse of a unimodular matrix via cofactors.
    pub fn unimodular_inverse(&self) -> Result<IntMatrix, MatrixError> {
        let d = self.det()?;
        if d.abs() != 1 {
            return Err(MatrixError::NotUnimodular(d));
        }
        let n = self.rows;
        let mut inv = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rs: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cs: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.submatrix(&rs, &cs).det()?;
                let s = if (i + j) % 2 == 0 { 1 } else { -1 };
                inv[(i, j)] = s * minor * d;
            }
        }
        Ok(inv)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `U · A · V = D` with `D` diagonal, `d_i | d_{i+1}`, nonnegative entries.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries, in order.
    pub invariants: Vec<i64>,
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    fn swap_rows(x: &mut IntMatrix, i: usize, j: usize) {
        for c in 0..x.cols {
            x.data.swap(i * x.cols + c, j * x.cols + c);
        }
    }
    fn swap_cols(x: &mut IntMatrix, i: usize, j: usize) {
        for r in 0..x.rows {
            x.data.swap(r * x.cols + i, r * x.cols + j);
        }
    }
    // row_i += k * row_j
    fn add_row(x: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for c in 0..x.cols {
            let t = x[(j, c)];
            x[(i, c)] += k * t;
        }
    }
    fn add_col(x: &mut IntMatrix, i: usize, j: usize, k: i64) {
        for r in 0..x.rows {
            let t = x[(r, j)];
            x[(r, i)] += k * t;
        }
    }
    fn neg_row(x: &mut IntMatrix, i: usize) {
        for c in 0..x.cols {
            x[(i, c)] = -x[(i, c)];
        }
    }

    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero absolute value in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if d[(i, j)] != 0 && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                if q != 0 {
                    add_row(&mut d, i, t, -q);
                    add_row(&mut u, i, t, -q);
                }
                if d[(i, t)] != 0 {
                    swap_rows(&mut d, t, i);
                    swap_rows(&mut u, t, i);
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                if q != 0 {
                    add_col(&mut d, j, t, -q);
                    add_col(&mut v, j, t, -q);
                }
                if d[(t, j)] != 0 {
                    swap_cols(&mut d, t, j);
                    swap_cols(&mut v, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let p = d[(t, t)];
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| d[(i, j)] % p != 0);
            match bad {
                Some((i, _)) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[(t, t)] < 0 {
            neg_row(&mut d, t);
            neg_row(&mut u, t);
        }
        t += 1;
    }
    let invariants = (0..m.min(n))
        .map(|i| d[(i, i)])
        .filter(|&x| x != 0)
        .collect();
    Smith {
        u,
        d,
        v,
        invariants,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn det_and_inverse() {
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![-1, 0]]);
        assert_eq!(m.det().unwrap(), 1);
        let inv = m.unimodular_inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        let s = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(s.unimodular_inverse().is_err());
    }

    #[test]
    fn smith_example() {
        let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariants, vec![2, 6, 12]);
        assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d);
    }

    proptest! {
        #[test]
        fn smith_is_a_factorization(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
            let a = IntMatrix::from_rows(&data);
            let s = smith_normal_form(&a);
            prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
            prop_assert_eq!(s.u.det().unwrap().abs(), 1);
            prop_assert_eq!(s.v.det().unwrap().abs(), 1);
            for i in 0..rows {
                for j in 0..cols {
                    if i != j { prop_assert_eq!(s.d[(i, j)], 0); }
                }
            }
            for w in s.invariants.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}
