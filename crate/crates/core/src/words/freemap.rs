use std::fmt;

use super::{Word, WordError};

/// An endomorphism of a free group given by the images of its generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeMap {
    rank: usize,
    images: Vec<Word>,
}

impl FreeMap {
    pub fn new(images: Vec<Word>) -> Result<FreeMap, WordError> {
        let rank = images.len();
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        if let Some(w) = images.iter().find(|w| w.rank() != rank) {
            return Err(WordError::RankMismatch(rank, w.rank()));
        }
        Ok(FreeMap { rank, images })
    }

    pub fn identity(rank: usize) -> FreeMap {
        FreeMap {
            rank,
            images: (1..=rank).map(|i| Word::generator(rank, i)).collect(),
        }
    }

    /// Conjugation `x ↦ w x w⁻¹`.
    pub fn inner(w: &Word) -> FreeMap {
        let rank = w.rank();
        FreeMap {
            rank,
            images: (1..=rank)
                .map(|i| w.conjugate(&Word::generator(rank, i)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        if w.rank() != self.rank {
            return Err(WordError::RankMismatch(self.rank, w.rank()));
        }
        let mut out: Vec<i32> = Vec::new();
        let mut tmp = Word::identity(self.rank);
        for &l in w.letters() {
            let img = &self.images[l.unsigned_abs() as usize - 1];
            let piece = if l > 0 { img.clone() } else { img.inverse() };
            tmp = tmp.mul(&piece);
        }
        out.extend_from_slice(tmp.letters());
        Ok(Word::from_reduced_unchecked(self.rank, out))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &FreeMap) -> Result<FreeMap, WordError> {
        if other.rank != self.rank {
            return Err(WordError::RankMismatch(self.rank, other.rank));
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FreeMap {
            rank: self.rank,
            images,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters() == [(i + 1) as i32])
    }

    /// A word `w` with `f(x_i) = w x_i w⁻¹` for all `i`, if one exists.
    pub fn inner_witness(&self) -> Result<Option<Word>, WordError> {
        if let Some(i) = self.images.iter().position(|w| w.is_empty()) {
            return Err(WordError::TrivialImage(i + 1));
        }
        let f1 = &self.images[0];
        let bound = self.images.iter().map(Word::len).max().unwrap_or(0) as i64;
        let x1 = Word::generator(self.rank, 1);
        // Any conjugator is a prefix of f(x1) times a power of x1.
        for k in 0..=f1.len() {
            let prefix = Word::from_reduced_unchecked(self.rank, f1.letters()[..k].to_vec());
            for e in -bound..=bound {
                let cand = prefix.mul(&x1.pow(e));
                if FreeMap::inner(&cand) == *self {
                    return Ok(Some(cand));
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Display for FreeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", i + 1, w)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeMap({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(raw: &[i32], n: usize) -> Word {
        Word::reduce(raw, n).unwrap()
    }

    fn sigma1() -> FreeMap {
        FreeMap::new(vec![w(&[1, 2, -1], 2), w(&[1], 2)]).unwrap()
    }

    #[test]
    fn apply_and_compose() {
        let s = sigma1();
        assert_eq!(s.apply(&w(&[2], 2)).unwrap(), w(&[1], 2));
        let id = FreeMap::identity(2);
        let u = w(&[1, -2, 1], 2);
        assert_eq!(id.apply(&u).unwrap(), u);
        // σ1⁻¹: x1 ↦ x2, x2 ↦ x2⁻¹ x1 x2.
        let sinv = FreeMap::new(vec![w(&[2], 2), w(&[-2, 1, 2], 2)]).unwrap();
        assert!(s.compose(&sinv).unwrap().is_identity());
        assert!(sinv.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn inner_detection() {
        let c = FreeMap::inner(&w(&[1], 2));
        assert_eq!(c.inner_witness().unwrap(), Some(w(&[1], 2)));
        assert_eq!(sigma1().inner_witness().unwrap(), None);
        assert_eq!(
            FreeMap::identity(3).inner_witness().unwrap(),
            Some(Word::identity(3))
        );
        let long = FreeMap::inner(&w(&[2, 1, 1, -3, 1, 1], 3));
        let found = long.inner_witness().unwrap().unwrap();
        assert_eq!(FreeMap::inner(&found), long);
        let bad = FreeMap::new(vec![Word::identity(2), w(&[2], 2)]).unwrap();
        assert!(bad.inner_witness().is_err());
    }
}
