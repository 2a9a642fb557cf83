//! Literals such as `z12^5`, `1/3*z4 + 2`, `t`, `(1+z4)*t^2`.
//!
//! Grammar: sums and differences of products and quotients of powers;
//! atoms are integers, `zN` (requiring `N | n`), `t` and parenthesised
//! expressions. Exponents are integers, negative ones invert.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{CycloElem, CycloError, Field, KummerElem, KummerField, Rational};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Zeta(usize),
    T,
    Op(char),
}

fn err(col: usize, msg: impl Into<String>) -> CycloError {
    CycloError::Parse {
        col,
        msg: msg.into(),
    }
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, CycloError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let digits = |mut j: usize| {
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            j
        };
        if c.is_ascii_digit() {
            i = digits(i);
            let lit: String = chars[start..i].iter().collect();
            out.push((start + 1, Tok::Int(BigInt::from_str(&lit).expect("digits"))));
        } else if c == 'z' {
            i = digits(i + 1);
            if i == start + 1 {
                return Err(err(start + 1, "expected a conductor after z"));
            }
            let lit: String = chars[start + 1..i].iter().collect();
            let n = lit
                .parse()
                .map_err(|_| err(start + 1, "conductor too large"))?;
            out.push((start + 1, Tok::Zeta(n)));
        } else if c == 't' {
            out.push((start + 1, Tok::T));
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((start + 1, Tok::Op(c)));
            i += 1;
        } else {
            return Err(err(start + 1, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a Arc<KummerField>,
    end_col: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<KummerElem, CycloError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.plus(&self.term()?);
            } else if self.eat('-') {
                acc = acc.minus(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<KummerElem, CycloError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.times(&self.unary()?);
            } else if self.eat('/') {
                let col = self.col();
                let d = self.unary()?;
                acc = acc.divided(&d).map_err(|e| err(col, e.to_string()))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<KummerElem, CycloError> {
        if self.eat('-') {
            return Ok(self.unary()?.negated());
        }
        self.power()
    }

    fn power(&mut self) -> Result<KummerElem, CycloError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let col = self.col();
        let e = match self.toks.get(self.pos) {
            Some((_, Tok::Int(k))) => {
                self.pos += 1;
                i64::try_from(k.clone()).map_err(|_| err(col, "exponent too large"))?
            }
            _ => return Err(err(col, "expected an integer exponent")),
        };
        base.pow(if neg { -e } else { e })
            .map_err(|e| err(col, e.to_string()))
    }

    fn atom(&mut self) -> Result<KummerElem, CycloError> {
        let col = self.col();
        let tok = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        match tok {
            Some(Tok::Int(k)) => Ok(KummerElem::from_base(
                self.field,
                CycloElem::from_rational(self.field.conductor(), Rational::from_integer(k)),
            )),
            Some(Tok::Zeta(d)) => {
                KummerElem::root_of_unity(self.field, d, 1).map_err(|e| err(col, e.to_string()))
            }
            Some(Tok::T) if self.field.exponent() > 1 => Ok(KummerElem::t(self.field)),
            Some(Tok::T) => Err(err(col, "t is not defined over a cyclotomic field")),
            Some(Tok::Op('(')) => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.col(), "expected )"));
                }
                Ok(inner)
            }
            Some(Tok::Op(c)) => Err(err(col, format!("unexpected {c:?}"))),
            None => Err(err(col, "unexpected end of input")),
        }
    }
}

/// Parse an element of `field`.
pub fn parse_element(s: &str, field: &Arc<KummerField>) -> Result<KummerElem, CycloError> {
    let toks = lex(s)?;
    let mut p = Parser {
        toks,
        pos: 0,
        field,
        end_col: s.chars().count() + 1,
    };
    if p.peek().is_none() {
        return Err(err(1, "empty expression"));
    }
    let x = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.col(), "trailing input"));
    }
    Ok(x)
}

/// Parse `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, CycloError> {
    let f = KummerField::cyclotomic(1)?;
    let x = parse_element(s, &f)?;
    Ok(x.as_base()
        .and_then(CycloElem::as_rational)
        .cloned()
        .expect("ℚ(ζ_1) = ℚ"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::{rational, root_of_unity};
    use proptest::prelude::*;

    fn field() -> Arc<KummerField> {
        KummerField::new(12, 3, CycloElem::from_int(12, 2)).unwrap()
    }

    #[test]
    fn literals() {
        let f = field();
        let z = |k| KummerElem::from_base(&f, root_of_unity(12, k));
        assert_eq!(parse_element("z12^5", &f).unwrap(), z(5));
        assert_eq!(parse_element("z4", &f).unwrap(), z(3));
        let x = parse_element("1/3*z4 + 2", &f).unwrap();
        let expect = z(3).times(&KummerElem::from_base(
            &f,
            CycloElem::from_rational(12, rational(1, 3)),
        ));
        assert_eq!(x, expect.plus(&KummerElem::from_int(&f, 2)));
        let y = parse_element("(1+z4)*t^2", &f).unwrap();
        assert_eq!(y.to_string(), "(1 + z12^3)*t^2");
        assert_eq!(
            parse_element("t^-1", &f).unwrap(),
            parse_element("1/2*t^2", &f).unwrap()
        );
        assert_eq!(parse_element("-z3^2", &f).unwrap(), z(8).negated());
        assert_eq!(parse_rational("-6/4").unwrap(), rational(-3, 2));
    }

    #[test]
    fn parse_errors() {
        let f = field();
        for bad in ["", "z5", "1 +", "(1", "1/0", "x", "z", "2^t", "1 2"] {
            assert!(parse_element(bad, &f).is_err(), "{bad:?} parsed");
        }
        let q = KummerField::cyclotomic(8).unwrap();
        assert!(parse_element("t", &q).is_err());
        match parse_element("1 + q", &f) {
            Err(CycloError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("{other:?}"),
        }
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(cs in prop::collection::vec(prop::collection::vec((-4i64..=4, 1i64..=3), 4), 3)) {
            let f = field();
            let base: Vec<CycloElem> = cs
                .iter()
                .map(|r| CycloElem::from_coeffs(12, &r.iter().map(|&(a, b)| rational(a, b)).collect::<Vec<_>>()))
                .collect();
            let x = KummerElem::from_coeffs(&f, &base);
            prop_assert_eq!(parse_element(&x.to_string(), &f).unwrap(), x);
        }
    }
}
