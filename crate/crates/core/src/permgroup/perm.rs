use std::fmt;

use super::GroupError;

/// A permutation of `{0..d-1}`, printed 1-based in cycle notation.
///
/// Products compose right to left: `(a * b)(i) = a(b(i))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            img: (0..degree as u32).collect(),
        }
    }

    /// From a 0-based image table.
    pub fn from_images(images: Vec<usize>) -> Result<Perm, GroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &i in &images {
            if i >= d || seen[i] {
                return Err(GroupError::NotBijection(format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Perm {
            img: images.into_iter().map(|i| i as u32).collect(),
        })
    }

    /// From 1-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm, GroupError> {
        let mut img: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(GroupError::PointOutOfRange { point: p, degree });
                }
                if touched[p - 1] {
                    return Err(GroupError::NotBijection(format!(
                        "point {p} repeated in {cycles:?}"
                    )));
                }
                touched[p - 1] = true;
                img[p - 1] = c[(k + 1) % c.len()] - 1;
            }
        }
        Perm::from_images(img)
    }

    /// Parse cycle notation such as `(1 2 3)(4 5)`, `(1,2)` or `()`.
    pub fn parse(text: &str, degree: usize) -> Result<Perm, GroupError> {
        let err = |msg: &str| GroupError::Parse(format!("{msg} in {text:?}"));
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(err("empty permutation"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| err("expected '('"))?;
            let close = body.find(')').ok_or_else(|| err("unclosed cycle"))?;
            let inner = &body[..close];
            let pts = inner
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| err("bad point")))
                .collect::<Result<Vec<_>, _>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = body[close + 1..].trim_start();
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.img.len()
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&i| i as usize).collect()
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm {
            img: other.img.iter().map(|&i| self.img[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &j) in self.img.iter().enumerate() {
            img[j as usize] = i as u32;
        }
        Perm { img }
    }

    pub fn pow(&self, k: i64) -> Perm {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.degree());
        for _ in 0..k.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self · x · self⁻¹`.
    pub fn conjugate(&self, x: &Perm) -> Perm {
        self.mul(x).mul(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn order(&self) -> usize {
        let mut o = 1usize;
        for c in self.cycles() {
            o = num_integer::lcm(o, c.len());
        }
        o
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                c.push(p + 1);
                p = self.apply(p);
            }
            out.push(c);
        }
        out
    }

    /// The same permutation on `degree + k` points, fixing the new ones.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut img = self.img.clone();
        img.extend(self.degree() as u32..degree as u32);
        Perm { img }
    }

    /// Shift onto points `offset..offset+d` of a degree-`degree` set.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        assert!(offset + self.degree() <= degree);
        let mut img: Vec<u32> = (0..degree as u32).collect();
        for (i, &j) in self.img.iter().enumerate() {
            img[offset + i] = offset as u32 + j;
        }
        Perm { img }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse("()", 3).unwrap(), Perm::identity(3));
        assert_eq!(Perm::parse("(1,2)", 3).unwrap().to_string(), "(1 2)");
        assert!(Perm::parse("(1 2", 3).is_err());
        assert!(Perm::parse("(1 4)", 3).is_err());
        assert!(Perm::parse("(1 2)(2 3)", 3).is_err());
    }

    #[test]
    fn composition_is_right_to_left() {
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        // a(b(2)) = a(3) = 3
        assert_eq!(a.mul(&b).apply(1), 2);
        assert_eq!(a.mul(&b).to_string(), "(1 2 3)");
        assert!(a.mul(&a.inverse()).is_identity());
        let c = Perm::parse("(1 2 3)", 3).unwrap();
        assert_eq!(c.conjugate(&a), Perm::parse("(2 3)", 3).unwrap());
    }
}
