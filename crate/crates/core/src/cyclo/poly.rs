use std::fmt;

use super::{CycloError, Field};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
///
/// `zero` carries the coefficient field so that the zero polynomial still
/// knows where it lives.
/// `(g, s, t)` from the extended Euclidean algorithm.
pub type Bezout<F> = (Poly<F>, Poly<F>, Poly<F>);

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    zero: F,
}

impl<F: Field> Poly<F> {
    pub fn new(coeffs: Vec<F>, zero: F) -> Poly<F> {
        let mut p = Poly { coeffs, zero };
        p.trim();
        p
    }

    pub fn zero(zero: F) -> Poly<F> {
        Poly {
            coeffs: Vec::new(),
            zero,
        }
    }

    pub fn constant(c: F) -> Poly<F> {
        let zero = c.zero_like();
        Poly::new(vec![c], zero)
    }

    /// `c·x^k`
    pub fn monomial(c: F, k: usize) -> Poly<F> {
        let zero = c.zero_like();
        let mut coeffs = vec![zero.clone(); k];
        coeffs.push(c);
        Poly::new(coeffs, zero)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Field::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn field_zero(&self) -> &F {
        &self.zero
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..n)
                .map(|k| self.coeff(k).plus(&other.coeff(k)))
                .collect(),
            self.zero.clone(),
        )
    }

    pub fn neg(&self) -> Poly<F> {
        Poly::new(
            self.coeffs.iter().map(Field::negated).collect(),
            self.zero.clone(),
        )
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Poly<F> {
        Poly::new(
            self.coeffs.iter().map(|a| a.times(c)).collect(),
            self.zero.clone(),
        )
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.zero.clone());
        }
        let mut out = vec![self.zero.clone(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Poly::new(out, self.zero.clone())
    }

    pub fn pow(&self, k: u32) -> Poly<F> {
        let one = Poly::constant(self.zero.one_like());
        (0..k).fold(one, |acc, _| acc.mul(self))
    }

    pub fn divrem(&self, d: &Poly<F>) -> Result<(Poly<F>, Poly<F>), CycloError> {
        let dd = d.degree().ok_or(CycloError::ZeroInverse)?;
        let lead_inv = d.leading().expect("nonzero").inverse()?;
        let mut r = self.coeffs.clone();
        let mut q = vec![self.zero.clone(); r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = r.last().expect("nonempty").times(&lead_inv);
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] = r[k + j].minus(&c.times(b));
                }
                q[k] = c;
            }
            r.pop();
        }
        Ok((
            Poly::new(q, self.zero.clone()),
            Poly::new(r, self.zero.clone()),
        ))
    }

    pub fn rem(&self, d: &Poly<F>) -> Result<Poly<F>, CycloError> {
        Ok(self.divrem(d)?.1)
    }

    /// `(g, s, t)` with `g = s·a + t·b` and `g` monic (zero if both are zero).
    pub fn ext_gcd(a: &Poly<F>, b: &Poly<F>) -> Result<Bezout<F>, CycloError> {
        let zero = a.zero.clone();
        let one = Poly::constant(zero.one_like());
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), Poly::zero(zero.clone()));
        let (mut t0, mut t1) = (Poly::zero(zero.clone()), one);
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(lc) = r0.leading().cloned() {
            let inv = lc.inverse()?;
            r0 = r0.scale(&inv);
            s0 = s0.scale(&inv);
            t0 = t0.scale(&inv);
        }
        Ok((r0, s0, t0))
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(self.zero.clone(), |acc, c| acc.times(x).plus(c))
    }

    /// Apply `f` to every coefficient.
    pub fn map(&self, f: impl Fn(&F) -> F) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(f).collect(), self.zero.clone())
    }

    /// `p(x^k)`
    pub fn inflate(&self, k: usize) -> Poly<F> {
        let mut out = vec![self.zero.clone(); self.coeffs.len().saturating_sub(1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * k] = c.clone();
        }
        Poly::new(out, self.zero.clone())
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            let cs = c.to_string();
            let part = if k == 0 {
                format!("({cs})")
            } else if c.is_one() {
                mono
            } else {
                format!("({cs})*{mono}")
            };
            parts.push(part);
        }
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{integer, Rational};

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::new(c.iter().map(|&x| integer(x)).collect(), integer(0))
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // x² − 1
        let b = p(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        let (g, s, t) = Poly::ext_gcd(&p(&[1, 0, 1]), &p(&[0, 1])).unwrap();
        assert_eq!(g, p(&[1]));
        assert_eq!(s.mul(&p(&[1, 0, 1])).add(&t.mul(&p(&[0, 1]))), p(&[1]));
        assert_eq!(p(&[1, 1]).inflate(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, 2]).eval(&integer(3)), integer(7));
    }
}
