//! Free groups: reduced words, endomorphisms given by generator images,
//! Stallings graphs of finitely generated subgroups, and induced actions on
//! abelianized subgroups.

mod abelian;
mod freemap;
mod graph;
mod word;

pub use abelian::{abelian_quotient_action, AbelianAction};
pub use freemap::FreeMap;
pub use graph::{Index, SubgroupGraph};
pub use word::Word;

use thiserror::Error;

use crate::linalg::MatrixError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} out of range for rank {rank}")]
    IndexOutOfRange { letter: i32, rank: usize },
    #[error("free group rank must be positive")]
    ZeroRank,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("generator x{0} has trivial image")]
    TrivialImage(usize),
    #[error("subgroup has infinite index")]
    InfiniteIndex,
    #[error("map does not preserve the subgroup")]
    NotPreserved,
    #[error("word {0} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("bad basis: {0}")]
    BadBasis(String),
    #[error("cannot parse word {0:?}")]
    Parse(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Parse `x1 x2^-1 x3^2` (also `x1*x2`); `1` or an empty string is the identity.
///
/// Letters `x{rank+1}` expand to `(x1⋯x_rank)⁻¹` when `allow_boundary` is set.
pub fn parse_word(text: &str, rank: usize, allow_boundary: bool) -> Result<Word, WordError> {
    let err = || WordError::Parse(text.to_string());
    let mut out = Word::identity(rank);
    for tok in text
        .split(|c: char| c.is_whitespace() || c == '*')
        .filter(|t| !t.is_empty())
    {
        if tok == "1" {
            continue;
        }
        let body = tok.strip_prefix('x').ok_or_else(err)?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<i64>().map_err(|_| err())?),
            None => (body, 1),
        };
        let i: usize = idx.parse().map_err(|_| err())?;
        let letter = if i >= 1 && i <= rank {
            Word::generator(rank, i)
        } else if allow_boundary && i == rank + 1 {
            boundary_letter(rank)
        } else {
            return Err(WordError::IndexOutOfRange {
                letter: i as i32,
                rank,
            });
        };
        out = out.mul(&letter.pow(exp));
    }
    Ok(out)
}

/// `x_{rank+1} = (x1 x2 ⋯ x_rank)⁻¹`, the extra loop of a punctured sphere.
pub fn boundary_letter(rank: usize) -> Word {
    let prod: Vec<i32> = (1..=rank as i32).collect();
    Word::reduce(&prod, rank).unwrap().inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parsing() {
        let w = parse_word("x1 x2^-1 x2 x3^2", 3, false).unwrap();
        assert_eq!(w.letters(), &[1, 3, 3]);
        assert_eq!(parse_word("x4", 3, true).unwrap().letters(), &[-3, -2, -1]);
        assert!(parse_word("x4", 3, false).is_err());
        assert!(parse_word("y1", 3, false).is_err());
        assert!(parse_word("1", 3, false).unwrap().is_identity());
    }

    fn raw_word(rank: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
        proptest::collection::vec((1..=rank, any::<bool>()), 0..max_len)
            .prop_map(|v| v.into_iter().map(|(i, s)| if s { i } else { -i }).collect())
    }

    proptest! {
        #[test]
        fn reduction_is_idempotent_and_multiplicative(a in raw_word(3, 12), b in raw_word(3, 12)) {
            let wa = Word::reduce(&a, 3).unwrap();
            let wb = Word::reduce(&b, 3).unwrap();
            prop_assert_eq!(Word::reduce(wa.letters(), 3).unwrap(), wa.clone());
            let cat: Vec<i32> = a.iter().chain(b.iter()).copied().collect();
            prop_assert_eq!(Word::reduce(&cat, 3).unwrap(), wa.mul(&wb));
        }

        #[test]
        fn conjugator_is_exact(a in raw_word(3, 8), c in raw_word(3, 5), b in raw_word(3, 8)) {
            let wa = Word::reduce(&a, 3).unwrap();
            let wc = Word::reduce(&c, 3).unwrap();
            let target = wc.conjugate(&wa);
            let found = target.conjugator_to(&wa).unwrap();
            prop_assert!(found.is_some());
            prop_assert_eq!(found.unwrap().conjugate(&wa), target.clone());
            let wb = Word::reduce(&b, 3).unwrap();
            if let Some(w) = wb.conjugator_to(&wa).unwrap() {
                prop_assert_eq!(w.conjugate(&wa), wb);
            }
        }

        #[test]
        fn folding_accepts_short_products(
            gens in proptest::collection::vec(raw_word(2, 5), 1..3),
            picks in proptest::collection::vec((0usize..3, any::<bool>()), 0..6),
        ) {
            let gens: Vec<Word> = gens.iter().map(|g| Word::reduce(g, 2).unwrap()).collect();
            let graph = SubgroupGraph::from_generators(&gens, 2).unwrap();
            let mut w = Word::identity(2);
            for (i, inv) in picks {
                let g = &gens[i % gens.len()];
                w = w.mul(&if inv { g.inverse() } else { g.clone() });
            }
            prop_assert!(graph.contains(&w));
            for g in graph.free_generators() {
                prop_assert!(graph.contains(&g));
            }
            let again = SubgroupGraph::from_generators(&graph.free_generators(), 2).unwrap();
            prop_assert_eq!(again, graph);
        }

        #[test]
        fn image_is_functorial(
            fi in proptest::collection::vec(raw_word(2, 4), 2),
            gi in proptest::collection::vec(raw_word(2, 4), 2),
            h in proptest::collection::vec(raw_word(2, 5), 1..3),
        ) {
            let f = FreeMap::new(fi.iter().map(|w| Word::reduce(w, 2).unwrap()).collect()).unwrap();
            let g = FreeMap::new(gi.iter().map(|w| Word::reduce(w, 2).unwrap()).collect()).unwrap();
            let hs: Vec<Word> = h.iter().map(|w| Word::reduce(w, 2).unwrap()).collect();
            let sub = SubgroupGraph::from_generators(&hs, 2).unwrap();
            let lhs = sub.image(&f.compose(&g).unwrap()).unwrap();
            let rhs = sub.image(&g).unwrap().image(&f).unwrap();
            prop_assert!(lhs.equals(&rhs));
        }
    }

    /// Oracle: enumerate all products of at most `len` generators and inverses.
    fn brute_products(gens: &[Word], len: usize) -> Vec<Word> {
        let mut letters: Vec<Word> = gens.to_vec();
        letters.extend(gens.iter().map(Word::inverse));
        let mut layer = vec![Word::identity(gens[0].rank())];
        let mut all = layer.clone();
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for l in &letters {
                    next.push(w.mul(l));
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        all
    }

    #[test]
    fn folding_matches_brute_force_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ngens = rng.gen_range(1..3);
            let gens: Vec<Word> = (0..ngens)
                .map(|_| {
                    let len = rng.gen_range(1..4);
                    let raw: Vec<i32> = (0..len)
                        .map(|_| {
                            let i = rng.gen_range(1..3);
                            if rng.gen_bool(0.5) {
                                i
                            } else {
                                -i
                            }
                        })
                        .collect();
                    Word::reduce(&raw, 2).unwrap()
                })
                .filter(|w| !w.is_empty())
                .collect();
            if gens.is_empty() {
                continue;
            }
            let graph = SubgroupGraph::from_generators(&gens, 2).unwrap();
            for w in brute_products(&gens, 6) {
                assert!(graph.contains(&w), "{w} missing from {graph:?}");
            }
        }
    }
}
