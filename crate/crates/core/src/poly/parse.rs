use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExponentVector, Polynomial, Rational};
use crate::error::{Error, Result};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn number(&mut self) -> Result<Rational> {
        let n = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.digits()?;
            if d.is_zero() {
                self.pos = at;
                return self.err("zero denominator");
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let at = self.pos;
        let d = self.digits()?;
        let v: i64 = match i64::try_from(d) {
            Ok(v) => v,
            Err(_) => {
                self.pos = at;
                return self.err("exponent out of range");
            }
        };
        if paren {
            if self.peek() != Some(b')') {
                return self.err("expected `)`");
            }
            self.pos += 1;
        }
        Ok(if neg { -v } else { v })
    }

    fn identifier(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        match self.vars.iter().position(|v| v == name) {
            Some(i) => Ok(i),
            None => Err(Error::UnknownVariable(name.to_string())),
        }
    }

    fn term(&mut self) -> Result<(ExponentVector, Rational)> {
        let mut coeff = Rational::one();
        let mut exp = ExponentVector::zero(self.vars.len());
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let v = self.identifier()?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    exp.0[v] += e;
                }
                Some(b'(') => {
                    // parenthesised rational coefficient such as (2/3)
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    let r = self.number()?;
                    if self.peek() != Some(b')') {
                        return self.err("expected `)`");
                    }
                    self.pos += 1;
                    coeff *= if neg { -r } else { r };
                }
                _ => return self.err("expected a number or a variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exp, coeff));
            }
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.vars.len());
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            None => return self.err("empty polynomial"),
            _ => {}
        }
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, c * &sign);
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                Some(_) => return self.err("expected `+`, `-` or end of input"),
            }
        }
    }
}

/// Parses a sum of `coefficient*monomial` terms over the given variables.
///
/// Exponents may be negative (`t1^-1` or `t1^(-1)`); like terms are collected.
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<Polynomial> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: variables };
    p.polynomial()
}

/// Parses a signed rational literal such as `-3/7`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: &[] };
    let neg = match p.peek() {
        Some(b'-') => {
            p.pos += 1;
            true
        }
        Some(b'+') => {
            p.pos += 1;
            false
        }
        _ => false,
    };
    let r = p.number()?;
    if p.peek().is_some() {
        return p.err("trailing characters after rational");
    }
    Ok(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, ratio};

    fn v(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_example_system() {
        let f = parse_polynomial("-1 + t1^2 + t2^2", &v(&["t1", "t2", "t3"])).unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(f.arity(), 3);
        assert_eq!(f.coefficient(&[0, 0, 0]), rat(-1));
    }

    #[test]
    fn parses_zero_and_laurent() {
        assert!(parse_polynomial("0", &v(&["x"])).unwrap().is_zero());
        let f = parse_polynomial("t1^-1 + 2/3*t1", &v(&["t1"])).unwrap();
        assert_eq!(f.coefficient(&[-1]), rat(1));
        assert_eq!(f.coefficient(&[1]), ratio(2, 3));
        let g = parse_polynomial("t1^(-2)*t1", &v(&["t1"])).unwrap();
        assert_eq!(g.coefficient(&[-1]), rat(1));
    }

    #[test]
    fn collects_like_terms() {
        let f = parse_polynomial("x*y + 2*y*x - 3*x*y", &v(&["x", "y"])).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn reports_errors() {
        match parse_polynomial("1 + + x", &v(&["x"])) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            parse_polynomial("1 + z", &v(&["x"])),
            Err(Error::UnknownVariable("z".into()))
        );
        assert!(parse_polynomial("x^", &v(&["x"])).is_err());
        assert!(parse_polynomial("3/0*x", &v(&["x"])).is_err());
        assert!(parse_polynomial("", &v(&["x"])).is_err());
    }

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("12").unwrap(), rat(12));
        assert!(parse_rational("1/2x").is_err());
    }
}
