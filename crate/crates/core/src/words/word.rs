use std::fmt;

use super::WordError;

/// A freely reduced word in the free group of the given rank.
///
/// Letters are signed generator indices: `i` is `x_i`, `-i` is `x_i⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: usize,
    letters: Vec<i32>,
}

impl Word {
    /// Reduce a raw letter sequence.
    pub fn reduce(raw: &[i32], rank: usize) -> Result<Word, WordError> {
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        let mut letters: Vec<i32> = Vec::with_capacity(raw.len());
        for &l in raw {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(WordError::IndexOutOfRange { letter: l, rank });
            }
            push_reduced(&mut letters, l);
        }
        Ok(Word { rank, letters })
    }

    pub fn identity(rank: usize) -> Word {
        assert!(rank > 0, "free group rank must be positive");
        Word {
            rank,
            letters: Vec::new(),
        }
    }

    /// The generator `x_i` (1-based).
    pub fn generator(rank: usize, i: usize) -> Word {
        assert!(
            i >= 1 && i <= rank,
            "generator x{i} out of range for rank {rank}"
        );
        Word {
            rank,
            letters: vec![i as i32],
        }
    }

    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<i32>) -> Word {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        Word { rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<(), WordError> {
        if self.rank != other.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Word) -> Result<Word, WordError> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Product; panics on rank mismatch.
    pub fn mul(&self, other: &Word) -> Word {
        self.try_mul(other).expect("word rank mismatch")
    }

    fn mul_unchecked(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Word {
            rank: self.rank,
            letters,
        }
    }

    pub fn inverse(&self) -> Word {
        Word {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = out.mul_unchecked(&base);
        }
        out
    }

    /// `self · w · self⁻¹`.
    pub fn conjugate(&self, w: &Word) -> Word {
        self.mul(w).mul(&self.inverse())
    }

    /// Split as `u · core · u⁻¹` with `core` cyclically reduced; returns `(u, core)`.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut i = 0;
        while l.len() >= 2 * i + 2 && l[i] == -l[l.len() - 1 - i] {
            i += 1;
        }
        let u = Word::from_reduced_unchecked(self.rank, l[..i].to_vec());
        let core = Word::from_reduced_unchecked(self.rank, l[i..l.len() - i].to_vec());
        (u, core)
    }

    pub fn cyclic_reduce(&self) -> Word {
        self.cyclic_decomposition().1
    }

    /// Find `w` with `self = w · other · w⁻¹`.
    pub fn conjugator_to(&self, other: &Word) -> Result<Option<Word>, WordError> {
        self.check_rank(other)?;
        let (u, a) = self.cyclic_decomposition();
        let (v, b) = other.cyclic_decomposition();
        if a.len() != b.len() {
            return Ok(None);
        }
        if a.is_empty() {
            return Ok(Some(Word::identity(self.rank)));
        }
        let n = a.len();
        // a = p·s with s·p = b gives a = p·b·p⁻¹.
        for k in 0..n {
            if (0..n).all(|j| a.letters[(k + j) % n] == b.letters[j]) {
                let p = Word::from_reduced_unchecked(self.rank, a.letters[..k].to_vec());
                return Ok(Some(u.mul(&p).mul(&v.inverse())));
            }
        }
        Ok(None)
    }

    /// Exponent sum per generator (image in the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.rank];
        for &l in &self.letters {
            out[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        out
    }
}

fn push_reduced(letters: &mut Vec<i32>, l: i32) {
    if letters.last() == Some(&-l) {
        letters.pop();
    } else {
        letters.push(l);
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        // Runs of the same letter are printed as powers.
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.signum() as i64;
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", l.abs())?;
            } else {
                write!(f, "x{}^{}", l.abs(), e)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word[{}]({})", self.rank, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[i32], n: usize) -> Word {
        Word::reduce(raw, n).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w(&[1, -1, 2], 2).letters(), &[2]);
        assert!(w(&[], 2).is_identity());
        assert_eq!(w(&[1, 2, -2, -1, 3], 3).letters(), &[3]);
        assert!(Word::reduce(&[4], 3).is_err());
        assert!(Word::reduce(&[0], 3).is_err());
    }

    #[test]
    fn group_operations() {
        let x1 = Word::generator(2, 1);
        assert!(x1.mul(&x1.inverse()).is_identity());
        assert_eq!(w(&[1, 2], 2).inverse().letters(), &[-2, -1]);
        assert_eq!(w(&[1, 2, -1], 2).cyclic_reduce().letters(), &[2]);
        assert!(x1.try_mul(&Word::generator(3, 1)).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        let a = w(&[1, 2, -1], 2);
        let b = w(&[2], 2);
        assert_eq!(a.conjugator_to(&b).unwrap().unwrap().letters(), &[1]);
        assert!(w(&[1], 2).conjugator_to(&w(&[2], 2)).unwrap().is_none());
        let c = a.conjugator_to(&b).unwrap().unwrap();
        assert_eq!(c.conjugate(&b), a);
    }

    #[test]
    fn rotation_witness_matches_brute_force() {
        let a = w(&[2, 1], 2);
        let b = w(&[1, 2], 2);
        let found = a.conjugator_to(&b).unwrap().unwrap();
        assert_eq!(found.letters(), &[2]);
        // Independent search over all words of length at most 2.
        let letters = [1, -1, 2, -2];
        let mut brute = Vec::new();
        let mut cands = vec![Word::identity(2)];
        for &l in &letters {
            cands.push(w(&[l], 2));
            for &m in &letters {
                cands.push(w(&[l, m], 2));
            }
        }
        for c in cands {
            if c.conjugate(&b) == a {
                brute.push(c);
            }
        }
        assert!(brute.contains(&found));
    }

    #[test]
    fn display() {
        assert_eq!(w(&[1, 1, -2], 2).to_string(), "x1^2 x2^-1");
        assert_eq!(Word::identity(1).to_string(), "1");
    }
}
