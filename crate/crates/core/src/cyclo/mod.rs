//! Exact arithmetic in cyclotomic fields `ℚ(ζ_n)` and in simple Kummer
//! extensions `ℚ(ζ_n)[t]/(t^m − c)`, with explicit field automorphisms.

mod cyclotomic;
mod kummer;
mod parse;
mod poly;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, root_of_unity, CycloElem};
pub use kummer::{verify_aut_group, AutGroupReport, FieldAut, KummerElem, KummerField};
pub use parse::{parse_element, parse_rational};
pub use poly::Poly;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    ZeroInverse,
    #[error("not a field: {0}")]
    NotAField(String),
    #[error("conductor {from} does not divide {to}")]
    NotMultiple { from: usize, to: usize },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid automorphism: {0}")]
    BadAut(String),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("conductor must be positive")]
    ZeroConductor,
}

/// Operations shared by the coefficient fields.
///
/// Binary operations panic when the two operands live in different fields.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn inverse(&self) -> Result<Self, CycloError>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn divided(&self, other: &Self) -> Result<Self, CycloError> {
        Ok(self.times(&other.inverse()?))
    }

    fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one_like();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&sq);
            }
            sq = sq.times(&sq);
            k >>= 1;
        }
        Ok(acc)
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self, CycloError> {
        if Zero::is_zero(self) {
            Err(CycloError::ZeroInverse)
        } else {
            Ok(self.recip())
        }
    }
}

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `p/q` or `p` in lowest terms.
pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render `Σ coeff·monomial` with signs folded into the joins.
pub(crate) fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Coefficient times monomial, omitting a unit coefficient.
pub(crate) fn term(coeff: &Rational, monomial: Option<String>) -> (bool, String) {
    let neg = coeff.is_negative();
    let a = coeff.abs();
    let body = match monomial {
        None => fmt_rational(&a),
        Some(m) if One::is_one(&a) => m,
        Some(m) => format!("{}*{m}", fmt_rational(&a)),
    };
    (neg, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_field() {
        let a = rational(2, 4);
        assert_eq!(a, rational(1, 2));
        assert_eq!(a.inverse().unwrap(), integer(2));
        assert!(integer(0).inverse().is_err());
        assert_eq!(Field::pow(&a, -3).unwrap(), integer(8));
        assert_eq!(fmt_rational(&rational(-3, 6)), "-1/2");
    }
}
