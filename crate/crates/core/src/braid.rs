//! Artin braid groups acting on free groups.
//!
//! Strand convention: a braid on `s` strands has generators `σ_1..σ_{s-1}`.
//! [`artin_rep`] acts on `F_s` (one loop per strand). [`artin_rep_sphere`]
//! acts on `F_{s-1}`, the fundamental group of the sphere minus `s` points,
//! with the last loop `x_s = (x_1⋯x_{s-1})⁻¹`.

use std::fmt;

use thiserror::Error;

use crate::linalg::IntMatrix;
use crate::words::{
    abelian_quotient_action, boundary_letter, FreeMap, SubgroupGraph, Word, WordError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator s{letter} out of range for {strands} strands")]
    IndexOutOfRange { letter: i32, strands: usize },
    #[error("strand count {strands} outside supported range ({reason})")]
    Unsupported {
        strands: usize,
        reason: &'static str,
    },
    #[error("cannot parse braid word {0:?}")]
    Parse(String),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A word in the Artin generators `σ_i^{±1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(&l) = letters
            .iter()
            .find(|&&l| l == 0 || l.unsigned_abs() as usize >= strands)
        {
            return Err(BraidError::IndexOutOfRange { letter: l, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> BraidWord {
        BraidWord::new(strands, Vec::new()).expect("valid strand count")
    }

    /// Parse `s1 s2 s3^-1 (s1 s2 s3)^4`-free text: tokens `s<i>` or `s<i>^<k>`.
    pub fn parse(strands: usize, text: &str) -> Result<BraidWord, BraidError> {
        let err = || BraidError::Parse(text.to_string());
        let mut letters = Vec::new();
        for tok in text
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|t| !t.is_empty())
        {
            if tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix("σ"))
                .ok_or_else(err)?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i32>().map_err(|_| err())?),
                None => (body, 1),
            };
            let i: i32 = idx.parse().map_err(|_| err())?;
            for _ in 0..exp.unsigned_abs() {
                letters.push(i * exp.signum());
            }
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand mismatch");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> BraidWord {
        let mut out = BraidWord::identity(self.strands);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Underlying strand permutation, tracked directly on endpoints:
    /// `perm[i]` is the final position of the strand starting at `i`.
    pub fn strand_permutation(&self) -> Vec<usize> {
        let mut pos_of: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            for p in pos_of.iter_mut() {
                if *p == i {
                    *p = i + 1;
                } else if *p == i + 1 {
                    *p = i;
                }
            }
        }
        pos_of
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| {
                if l > 0 {
                    format!("s{l}")
                } else {
                    format!("s{}^-1", -l)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BraidWord[{}]({})", self.strands, self)
    }
}

/// Image of one generator `σ_i` (1-based) on `F_rank`, where `x_{rank+1}`,
/// if referenced, is the boundary letter.
fn generator_map(i: usize, rank: usize, sphere: bool) -> FreeMap {
    let x = |j: usize| {
        if sphere && j == rank + 1 {
            boundary_letter(rank)
        } else {
            Word::generator(rank, j)
        }
    };
    let mut images: Vec<Word> = (1..=rank).map(|j| Word::generator(rank, j)).collect();
    let xi = x(i);
    let xi1 = x(i + 1);
    images[i - 1] = xi.mul(&xi1).mul(&xi.inverse());
    if i < rank {
        images[i] = xi.clone();
    }
    FreeMap::new(images).expect("generator images share a rank")
}

fn inverse_generator_map(i: usize, rank: usize, sphere: bool) -> FreeMap {
    let x = |j: usize| {
        if sphere && j == rank + 1 {
            boundary_letter(rank)
        } else {
            Word::generator(rank, j)
        }
    };
    let mut images: Vec<Word> = (1..=rank).map(|j| Word::generator(rank, j)).collect();
    let xi = x(i);
    let xi1 = x(i + 1);
    images[i - 1] = xi1.clone();
    if i < rank {
        images[i] = xi1.inverse().mul(&xi).mul(&xi1);
    }
    FreeMap::new(images).expect("generator images share a rank")
}

fn represent(b: &BraidWord, rank: usize, sphere: bool) -> FreeMap {
    let mut out = FreeMap::identity(rank);
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize;
        let g = if l > 0 {
            generator_map(i, rank, sphere)
        } else {
            inverse_generator_map(i, rank, sphere)
        };
        out = out.compose(&g).expect("same rank");
    }
    out
}

/// Artin representation on `F_strands`: `σ_i(x_i) = x_i x_{i+1} x_i⁻¹`, `σ_i(x_{i+1}) = x_i`.
///
/// A word acts as the composite of its letters, leftmost outermost.
pub fn artin_rep(b: &BraidWord) -> FreeMap {
    represent(b, b.strands, false)
}

/// Artin representation on `F_{strands-1}` with `x_strands = (x_1⋯x_{strands-1})⁻¹`.
pub fn artin_rep_sphere(b: &BraidWord) -> FreeMap {
    represent(b, b.strands - 1, true)
}

/// One braid relation and whether it holds as an equality of free-group maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub lhs: BraidWord,
    pub rhs: BraidWord,
    pub holds: bool,
}

/// Default cap on strands for relation checks.
pub const RELATION_STRAND_BOUND: usize = 8;

pub fn braid_relations_check(strands: usize) -> Result<Vec<RelationCheck>, BraidError> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands));
    }
    if strands > RELATION_STRAND_BOUND {
        return Err(BraidError::Unsupported {
            strands,
            reason: "relation checks are capped at 8 strands",
        });
    }
    let mut out = Vec::new();
    let n = strands as i32 - 1;
    for i in 1..=n {
        for j in i + 1..=n {
            let (lhs, rhs) = if j == i + 1 {
                (vec![i, j, i], vec![j, i, j])
            } else {
                (vec![i, j], vec![j, i])
            };
            let lhs = BraidWord::new(strands, lhs)?;
            let rhs = BraidWord::new(strands, rhs)?;
            let holds = artin_rep(&lhs) == artin_rep(&rhs);
            out.push(RelationCheck { lhs, rhs, holds });
        }
    }
    Ok(out)
}

/// Purity verdict with one conjugator per generator (`w_i x_i w_i⁻¹ = b(x_i)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Purity {
    pub pure: bool,
    pub witnesses: Vec<Option<Word>>,
}

pub fn is_pure(b: &BraidWord) -> Purity {
    let f = artin_rep(b);
    let witnesses: Vec<Option<Word>> = (1..=b.strands)
        .map(|i| {
            f.image(i)
                .conjugator_to(&Word::generator(b.strands, i))
                .expect("same rank")
        })
        .collect();
    Purity {
        pure: witnesses.iter().all(Option::is_some),
        witnesses,
    }
}

/// The kernel of `F_{strands-1} → ℤ/2` sending every loop `x_i` (including the
/// boundary loop) to 1; requires an even number of strands.
pub fn even_kernel(strands: usize) -> Result<SubgroupGraph, BraidError> {
    if strands < 4 || !strands.is_multiple_of(2) {
        return Err(BraidError::Unsupported {
            strands,
            reason: "double cover branched at every point needs an even count of at least 4",
        });
    }
    let rank = strands - 1;
    let mut gens = Vec::new();
    for j in 1..=rank {
        gens.push(Word::generator(rank, 1).mul(&Word::generator(rank, j)));
        if j > 1 {
            gens.push(Word::generator(rank, j).mul(&Word::generator(rank, 1).inverse()));
        }
    }
    Ok(SubgroupGraph::from_generators(&gens, rank)?)
}

/// Relators `x_i²` for every loop including the boundary loop; they cut the
/// even kernel down to the first homology of the branched double cover.
pub fn branch_relators(strands: usize) -> Vec<Word> {
    let rank = strands - 1;
    let mut rels: Vec<Word> = (1..=rank)
        .map(|i| Word::generator(rank, i).pow(2))
        .collect();
    rels.push(boundary_letter(rank).pow(2));
    rels
}

/// The two kernel words `(σ_1⋯σ_{s-1})^s` and `σ_1⋯σ_{s-2}σ_{s-1}²σ_{s-2}⋯σ_1`.
pub fn spherical_kernel_words(strands: usize) -> Vec<BraidWord> {
    let n = strands as i32 - 1;
    let cycle: Vec<i32> = (1..=n).collect();
    let full = BraidWord::new(strands, cycle).expect("valid").pow(strands);
    let mut hook: Vec<i32> = (1..=n).collect();
    hook.extend((1..n).rev());
    hook.insert(n as usize, n);
    vec![full, BraidWord::new(strands, hook).expect("valid")]
}

/// The three levels of triviality for a braid acting on the punctured sphere.
#[derive(Clone, Debug)]
pub struct KernelRow {
    pub braid: BraidWord,
    pub identity_on_free_group: bool,
    pub inner_witness: Option<Word>,
    pub preserves_kernel: bool,
    /// Action on the free part of the branched-cover homology, in the
    /// computed basis; `None` if the kernel is not preserved.
    pub quotient_matrix: Option<IntMatrix>,
}

impl KernelRow {
    pub fn trivial_on_quotient(&self) -> bool {
        self.quotient_matrix
            .as_ref()
            .is_some_and(IntMatrix::is_identity)
    }
}

pub fn kernel_row(b: &BraidWord) -> Result<KernelRow, BraidError> {
    let strands = b.strands;
    let sub = even_kernel(strands)?;
    let f = artin_rep_sphere(b);
    let preserves = sub.image(&f)?.equals(&sub);
    let quotient_matrix = if preserves {
        Some(abelian_quotient_action(&sub, &branch_relators(strands), &f)?.matrix)
    } else {
        None
    };
    Ok(KernelRow {
        braid: b.clone(),
        identity_on_free_group: f.is_identity(),
        inner_witness: f.inner_witness()?,
        preserves_kernel: preserves,
        quotient_matrix,
    })
}

/// Checks both spherical kernel words and the empty braid.
pub fn spherical_kernel_check(strands: usize) -> Result<Vec<KernelRow>, BraidError> {
    let mut rows = Vec::new();
    for b in spherical_kernel_words(strands)
        .into_iter()
        .chain(std::iter::once(BraidWord::identity(strands)))
    {
        rows.push(kernel_row(&b)?);
    }
    Ok(rows)
}

/// One row of the four-point elliptic computation.
#[derive(Clone, Debug)]
pub struct EllipticRow {
    pub label: String,
    pub braid: BraidWord,
    /// Column convention in the basis `(x2 x1, x3 x1)`.
    pub matrix: IntMatrix,
    pub det: i64,
    pub expected: Option<IntMatrix>,
    pub non_faithful_witness: bool,
}

/// Full result of the four-point elliptic computation.
#[derive(Clone, Debug)]
pub struct EllipticScenario {
    pub kernel_generators: Vec<Word>,
    pub kernel_index: usize,
    pub torsion: Vec<i64>,
    pub basis: Vec<Word>,
    pub generators_preserve_kernel: Vec<bool>,
    pub rows: Vec<EllipticRow>,
    pub kernel_rows: Vec<KernelRow>,
    /// Coordinates of `σ2(x2 x1)` in the basis.
    pub sigma2_on_first_basis: Vec<i64>,
    pub sigma2_image_word: Word,
}

impl EllipticScenario {
    pub fn all_expected_match(&self) -> bool {
        self.rows.iter().all(EllipticRow::matches_expected)
    }
}

impl EllipticRow {
    pub fn matches_expected(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| *e == self.matrix)
    }

    /// Agreement in `PSL_2(ℤ)`, i.e. up to the deck involution `-I`.
    pub fn matches_expected_up_to_sign(&self) -> bool {
        self.expected.as_ref().is_none_or(|e| {
            *e == self.matrix
                || e.to_rows()
                    .iter()
                    .flatten()
                    .zip(self.matrix.to_rows().iter().flatten())
                    .all(|(a, b)| *a == -*b)
        })
    }
}

pub fn elliptic_scenario() -> Result<EllipticScenario, BraidError> {
    let strands = 4;
    let sub = even_kernel(strands)?;
    let rels = branch_relators(strands);
    let w = |raw: &[i32]| Word::reduce(raw, 3).expect("valid");
    let basis = vec![w(&[2, 1]), w(&[3, 1])];
    let m = |rows: [[i64; 2]; 2]| IntMatrix::from_rows(&[rows[0].to_vec(), rows[1].to_vec()]);
    let unipotent = m([[1, 1], [0, 1]]);
    let cases: Vec<(&str, Vec<i32>, Option<IntMatrix>)> = vec![
        ("s1", vec![1], Some(unipotent.clone())),
        ("s2", vec![2], Some(m([[2, 1], [-1, 0]]))),
        ("s3", vec![3], Some(unipotent)),
        ("s1*s3^-1", vec![1, -3], Some(IntMatrix::identity(2))),
    ];
    let mut rows = Vec::new();
    let mut torsion = Vec::new();
    for (label, letters, expected) in cases {
        let b = BraidWord::new(strands, letters)?;
        let action = abelian_quotient_action(&sub, &rels, &artin_rep_sphere(&b))?;
        torsion = action.torsion.clone();
        let matrix = action.matrix_in_basis(&basis)?;
        let det = matrix.det().expect("square");
        let non_faithful_witness = matrix.is_identity() && !b.letters.is_empty();
        rows.push(EllipticRow {
            label: label.to_string(),
            braid: b,
            matrix,
            det,
            expected,
            non_faithful_witness,
        });
    }
    let mut kernel_rows = Vec::new();
    for (label, b) in ["(s1*s2*s3)^4", "s1*s2*s3^2*s2*s1"]
        .into_iter()
        .zip(spherical_kernel_words(strands))
    {
        let row = kernel_row(&b)?;
        let action = abelian_quotient_action(&sub, &rels, &artin_rep_sphere(&b))?;
        let matrix = action.matrix_in_basis(&basis)?;
        rows.push(EllipticRow {
            label: label.to_string(),
            braid: b,
            det: matrix.det().expect("square"),
            non_faithful_witness: false,
            expected: Some(IntMatrix::identity(2)),
            matrix,
        });
        kernel_rows.push(row);
    }
    let generators_preserve_kernel = (1..=3)
        .map(|i| {
            let f = artin_rep_sphere(&BraidWord::new(strands, vec![i]).expect("valid"));
            sub.image(&f).map(|g| g.equals(&sub))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let s2 = artin_rep_sphere(&BraidWord::new(strands, vec![2])?);
    let sigma2_image_word = s2.apply(&basis[0])?;
    let action = abelian_quotient_action(&sub, &rels, &FreeMap::identity(3))?;
    let coords = action.coordinates(&sigma2_image_word)?;
    let p = IntMatrix::from_rows(&[
        action.coordinates(&basis[0])?,
        action.coordinates(&basis[1])?,
    ])
    .transpose();
    let pinv = p.unimodular_inverse().map_err(WordError::from)?;
    let sigma2_on_first_basis = pinv.transpose().apply_row(&coords);
    Ok(EllipticScenario {
        kernel_generators: sub.free_generators(),
        kernel_index: sub.num_states(),
        torsion,
        basis,
        generators_preserve_kernel,
        rows,
        kernel_rows,
        sigma2_on_first_basis,
        sigma2_image_word,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(raw: &[i32], n: usize) -> Word {
        Word::reduce(raw, n).unwrap()
    }

    #[test]
    fn sigma1_table() {
        let f = artin_rep(&BraidWord::new(3, vec![1]).unwrap());
        assert_eq!(f.image(1), &w(&[1, 2, -1], 3));
        assert_eq!(f.image(2), &w(&[1], 3));
        assert_eq!(f.image(3), &w(&[3], 3));
        assert!(artin_rep(&BraidWord::identity(4)).is_identity());
    }

    #[test]
    fn sigma3_on_sphere() {
        let f = artin_rep_sphere(&BraidWord::new(4, vec![3]).unwrap());
        assert_eq!(f.image(3), &w(&[-2, -1, -3], 3));
        assert_eq!(f.image(2), &w(&[2], 3));
    }

    #[test]
    fn relation_counts() {
        assert!(braid_relations_check(2).unwrap().is_empty());
        let r3 = braid_relations_check(3).unwrap();
        assert_eq!(r3.len(), 1);
        assert!(r3[0].holds);
        let r4 = braid_relations_check(4).unwrap();
        assert_eq!(r4.len(), 3);
        assert!(r4.iter().all(|r| r.holds));
        assert!(braid_relations_check(9).is_err());
    }

    #[test]
    fn purity() {
        assert!(!is_pure(&BraidWord::new(3, vec![1]).unwrap()).pure);
        let sq = is_pure(&BraidWord::new(3, vec![1, 1]).unwrap());
        assert!(sq.pure);
        assert!(is_pure(&BraidWord::identity(3)).pure);
        let f = artin_rep(&BraidWord::new(3, vec![1, 1]).unwrap());
        for (i, wit) in sq.witnesses.iter().enumerate() {
            let wit = wit.as_ref().unwrap();
            assert_eq!(&wit.conjugate(&Word::generator(3, i + 1)), f.image(i + 1));
        }
    }

    #[test]
    fn kernel_words_levels() {
        let rows = spherical_kernel_check(4).unwrap();
        assert_eq!(rows.len(), 3);
        for r in &rows {
            assert!(r.preserves_kernel);
        }
        // full twist is trivial on the nose
        assert!(rows[0].identity_on_free_group);
        assert!(rows[0].trivial_on_quotient());
        // the hook word is conjugation by x1, an odd loop: it acts as the deck involution
        assert!(!rows[1].identity_on_free_group);
        assert_eq!(rows[1].inner_witness, Some(w(&[1], 3)));
        assert_eq!(
            rows[1].quotient_matrix,
            Some(IntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]))
        );
        assert!(rows[2].identity_on_free_group);
        assert!(rows[2].trivial_on_quotient());
    }

    #[test]
    fn elliptic_matrices() {
        let s = elliptic_scenario().unwrap();
        for r in &s.rows[..5] {
            assert!(r.matches_expected(), "{r:?}");
        }
        assert!(!s.rows[5].matches_expected());
        assert!(s.rows[5].matches_expected_up_to_sign());
        assert!(s.rows.iter().all(|r| r.det == 1));
        assert!(s.torsion.is_empty());
        assert_eq!(s.kernel_index, 2);
        assert_eq!(s.kernel_generators.len(), 5);
        assert_eq!(s.sigma2_on_first_basis, vec![2, -1]);
        assert_eq!(s.sigma2_image_word, w(&[2, 3, -2, 1], 3));
        assert!(s.generators_preserve_kernel.iter().all(|&b| b));
        assert!(s.rows[3].non_faithful_witness);
    }

    #[test]
    fn parse_braid() {
        let b = BraidWord::parse(4, "s1 s2 s3^-1").unwrap();
        assert_eq!(b.letters(), &[1, 2, -3]);
        assert_eq!(BraidWord::parse(4, "s3^2").unwrap().letters(), &[3, 3]);
        assert!(BraidWord::parse(4, "s4").is_err());
        assert!(BraidWord::parse(4, "t1").is_err());
    }

    fn braid(strands: usize) -> impl Strategy<Value = BraidWord> {
        let n = strands as i32 - 1;
        proptest::collection::vec((1..=n, any::<bool>()), 0..=10).prop_map(move |v| {
            BraidWord::new(
                strands,
                v.into_iter().map(|(i, s)| if s { i } else { -i }).collect(),
            )
            .unwrap()
        })
    }

    fn strands_and_pair() -> impl Strategy<Value = (BraidWord, BraidWord)> {
        (2usize..=5).prop_flat_map(|s| (braid(s), braid(s)))
    }

    proptest! {
        #[test]
        fn artin_is_homomorphism((a, b) in strands_and_pair()) {
            let lhs = artin_rep(&a.mul(&b));
            let rhs = artin_rep(&a).compose(&artin_rep(&b)).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert!(artin_rep(&a.mul(&a.inverse())).is_identity());
        }

        #[test]
        fn artin_fixes_boundary_product(a in (2usize..=5).prop_flat_map(braid)) {
            let n = a.strands();
            let prod = Word::reduce(&(1..=n as i32).collect::<Vec<_>>(), n).unwrap();
            prop_assert_eq!(artin_rep(&a).apply(&prod).unwrap(), prod);
        }

        #[test]
        fn purity_matches_strand_permutation(a in (2usize..=5).prop_flat_map(braid)) {
            let perm = a.strand_permutation();
            let trivial = perm.iter().enumerate().all(|(i, &p)| i == p);
            prop_assert_eq!(is_pure(&a).pure, trivial);
        }
    }
}
