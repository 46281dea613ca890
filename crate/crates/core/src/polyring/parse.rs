//! Plain-text polynomial grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | name | '(' expr ')' | ('Sigma' | 'Σ') '(' expr ')'
//! ```
//!
//! Names resolve to ring variables first, then to named field elements.
//! Division is only by nonzero constants. `Sigma(m)` is the sum over all
//! distinct permutations of the monomial `m` in the ring's variables.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::{sigma_symmetrize, MPoly, Ring};
use crate::numberfield::{Field, FieldElement};
use crate::rational::parse_rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("unexpected character {ch:?} at {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown name {0:?}")]
    UnknownName(String),
    #[error("division by a non-constant or zero")]
    BadDivision,
    #[error("Sigma expects a single monomial")]
    BadSigma,
    #[error("trailing input at {0}")]
    Trailing(usize),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let mut t = String::new();
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                t.push(chars[k].1);
                k += 1;
            }
            out.push((pos, Tok::Num(t)));
        } else if c.is_alphabetic() || c == '_' {
            let mut t = String::new();
            while k < chars.len() && (chars[k].1.is_alphanumeric() || chars[k].1 == '_') {
                t.push(chars[k].1);
                k += 1;
            }
            out.push((pos, Tok::Name(t)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            k += 1;
        } else {
            return Err(ParseError::UnexpectedChar { ch: c, pos });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Result<Tok, ParseError> {
        let t = self.toks.get(self.pos).map(|t| t.1.clone()).ok_or(ParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let at = self.toks.get(self.pos).map(|t| t.0);
        match self.next()? {
            Tok::Op(d) if d == c => Ok(()),
            _ => Err(ParseError::UnexpectedChar { ch: c, pos: at.unwrap_or(0) }),
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == '*' {
                acc = &acc * &rhs;
            } else {
                let d = rhs.constant_value().filter(|d| !d.is_zero()).ok_or(ParseError::BadDivision)?;
                acc = acc.scale(&d.inverse().map_err(|_| ParseError::BadDivision)?);
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MPoly, ParseError> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let at = self.toks.get(self.pos).map_or(0, |t| t.0);
            match self.next()? {
                Tok::Num(n) => {
                    let e: u32 = n.parse().map_err(|_| ParseError::UnexpectedChar { ch: '^', pos: at })?;
                    return Ok(base.pow(e));
                }
                _ => return Err(ParseError::UnexpectedChar { ch: '^', pos: at }),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        let at = self.toks.get(self.pos).map_or(0, |t| t.0);
        match self.next()? {
            Tok::Num(n) => {
                let r = parse_rat(&n).ok_or(ParseError::UnexpectedChar { ch: '0', pos: at })?;
                Ok(MPoly::constant(self.ring, self.ring.field().from_rat(r)))
            }
            Tok::Op('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Name(name) if name == "Sigma" || name == "Σ" => {
                self.expect('(')?;
                let inner = self.expr()?;
                self.expect(')')?;
                if inner.num_terms() != 1 {
                    return Err(ParseError::BadSigma);
                }
                let (m, c) = inner.leading_term().unwrap();
                Ok(sigma_symmetrize(self.ring, m).scale(c))
            }
            Tok::Name(name) => {
                if let Some(i) = self.ring.var_index(&name) {
                    Ok(MPoly::var(self.ring, i))
                } else if let Some(c) = self.ring.field().named(&name) {
                    Ok(MPoly::constant(self.ring, c))
                } else {
                    Err(ParseError::UnknownName(name))
                }
            }
            Tok::Op(c) => Err(ParseError::UnexpectedChar { ch: c, pos: at }),
        }
    }
}

pub fn parse_poly(ring: &Arc<Ring>, s: &str) -> Result<MPoly, ParseError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, ring };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(ParseError::Trailing(p.toks[p.pos].0));
    }
    Ok(e)
}

/// A constant expression in the named elements of `field`, such as
/// `(1 + sqrt5)/2` or `-i`.
pub fn parse_expr(field: &Field, s: &str) -> Result<FieldElement, ParseError> {
    let ring = Ring::new(field, &[]);
    let p = parse_poly(&ring, s)?;
    p.constant_value().ok_or_else(|| ParseError::UnknownName(s.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;

    #[test]
    fn parses_golden_quadric() {
        let k = fields::golden();
        let r = Ring::new(&k, &["x1", "x2", "x3", "x4", "x5", "x6"]);
        let q1 = parse_poly(&r, "x1^2 + x4^2 - phi*x5^2 + phi*x6^2").unwrap();
        assert_eq!(q1.num_terms(), 4);
        let p = parse_poly(&r, "3/2*phi*x1^2*x4").unwrap();
        assert_eq!(p.num_terms(), 1);
    }

    #[test]
    fn sigma_macro() {
        let r = Ring::new(&Field::rationals(), &["x", "y", "z", "t"]);
        let f = parse_poly(&r, "Sigma(x^4) - 6*Σ(x^2*y^2)").unwrap();
        assert_eq!(f.num_terms(), 10);
        assert_eq!(f.display_sigma(), "Σ(x^4) - 6*Σ(x^2*y^2)");
        assert_eq!(parse_poly(&r, "Sigma(x + y)").unwrap_err(), ParseError::BadSigma);
    }

    #[test]
    fn constants_and_errors() {
        let k = fields::gaussian_golden();
        let phi = parse_expr(&k, "(1 + sqrt5)/2").unwrap();
        assert_eq!(phi, k.named("phi").unwrap());
        assert_eq!(parse_expr(&k, "-i").unwrap(), -k.named("i").unwrap());
        assert!(matches!(parse_expr(&k, "pi"), Err(ParseError::UnknownName(_))));
        let r = Ring::new(&k, &["x"]);
        assert_eq!(parse_poly(&r, "1/x").unwrap_err(), ParseError::BadDivision);
        assert!(matches!(parse_poly(&r, "x +"), Err(ParseError::UnexpectedEnd)));
    }
}
