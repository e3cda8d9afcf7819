use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(
                text.parse().map_err(|_| Error::Parse(text.clone()))?,
            ));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character '{c}' in \"{s}\""
            )));
        }
    }
    Ok(out)
}

struct Parser<'a, S: AsRef<str>> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn arity(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                -&self.term()?
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Parse("division by a non-constant or zero".into()));
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                // juxtaposition, e.g. "2x" or "x y"
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                other => Err(Error::Parse(format!("expected exponent, found {other:?}"))),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(Polynomial::constant(
                self.arity(),
                Rational::from_integer(n),
            )),
            Tok::Ident(name) => {
                let i = self
                    .names
                    .iter()
                    .position(|v| v.as_ref() == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable '{name}'")))?;
                Ok(Polynomial::var(self.arity(), i))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                match self.toks.get(self.pos) {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            Tok::Op('-') => Ok(-&self.power()?),
            Tok::Op(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses a polynomial over the variables `names` (position = variable index).
///
/// Accepts `p/q` coefficients, `^` powers, optional `*` and parentheses.
pub fn parse_poly<S: AsRef<str>>(s: &str, names: &[S]) -> Result<Polynomial> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing input in \"{s}\" at token {:?}",
            p.toks[p.pos]
        )));
    }
    Ok(e)
}

/// Standard variable names `x1..xn`.
pub fn x_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Parses a rational literal such as `-3/4`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let p = parse_poly::<&str>(s, &[])?;
    if p.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(p.constant_term())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_standard_syntax() {
        let n = x_names(3);
        let a = parse_poly("3/4*x1^2*x3 - x2 + 1/2", &n).unwrap();
        let b = parse_poly("-x2 + 3/4 x1^2 x3 + 1/2", &n).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "3/4*x1^2*x3 - x2 + 1/2");
        let c = parse_poly("(x1 + x2)^2", &n).unwrap();
        assert_eq!(c.to_string(), "x1^2 + 2*x1*x2 + x2^2");
    }

    #[test]
    fn rejects_garbage() {
        let n = x_names(2);
        assert!(parse_poly("x3", &n).is_err());
        assert!(parse_poly("x1 +", &n).is_err());
        assert!(parse_poly("x1 / x2", &n).is_err());
        assert!(parse_poly("x1 $ 2", &n).is_err());
    }

    #[test]
    fn display_roundtrips() {
        let n = x_names(3);
        for s in ["x1^3 - 2/3*x1*x2*x3 + 5", "-x3", "0", "7/2"] {
            let p = parse_poly(s, &n).unwrap();
            assert_eq!(parse_poly(&p.to_string(), &n).unwrap(), p);
        }
    }
}
