//! Polynomial and element literals.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := '-' factor | atom ('^' integer)?
//! atom   := 'T' | 'X' | integer | 'g' | '[' integer (',' integer)* ']' | '(' expr ')'
//! ```
//!
//! `g` is the context generator and `[c0,c1,...]` a coefficient vector over
//! `F_p` relative to the context modulus. Whitespace is ignored. The `*` may
//! be omitted before a factor that does not start with a digit, so `2T^2`
//! means `2*T^2`.

use super::field::{FqContext, FqElem};
use super::poly::{FqPoly, MAX_DEGREE};
use crate::error::{Error, Result};

struct Parser<'a> {
    ctx: &'a FqContext,
    toks: Vec<char>,
    pos: usize,
}

fn perr(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(perr(format!("expected an integer at position {start}")));
        }
        let s: String = self.toks[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| perr(format!("integer literal {s} is too large")))
    }

    fn signed_integer(&mut self) -> Result<i64> {
        let neg = self.eat('-');
        let v = self.integer()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn capped(&self, f: FqPoly) -> Result<FqPoly> {
        match f.degree() {
            Some(d) if d > MAX_DEGREE => Err(Error::DegreeTooLarge(d, MAX_DEGREE)),
            _ => Ok(f),
        }
    }

    fn expr(&mut self) -> Result<FqPoly> {
        let mut acc = FqPoly::zero(self.ctx);
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FqPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') || matches!(self.peek(), Some('T' | 'X' | 'g' | '[' | '(')) {
            let f = self.factor()?;
            acc = self.capped(&acc * &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FqPoly> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.integer()?;
            if let Some(d) = base.degree() {
                if d > 0 && (k as u128) * (d as u128) > MAX_DEGREE as u128 {
                    return Err(Error::DegreeTooLarge(
                        (k as u128 * d as u128).min(usize::MAX as u128) as usize,
                        MAX_DEGREE,
                    ));
                }
            }
            if base.is_constant() {
                let c = base.coeff(0);
                return Ok(FqPoly::constant(self.ctx, self.ctx.pow(c, k)));
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FqPoly> {
        let ctx = self.ctx;
        match self.peek() {
            Some('T') | Some('X') => {
                self.pos += 1;
                Ok(FqPoly::t(ctx))
            }
            Some('g') => {
                self.pos += 1;
                Ok(FqPoly::constant(ctx, ctx.generator()))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(FqPoly::constant(ctx, ctx.from_int((v % ctx.p()) as i64)))
            }
            Some('[') => {
                self.pos += 1;
                let mut cs = vec![self.signed_integer()?];
                while self.eat(',') {
                    cs.push(self.signed_integer()?);
                }
                if !self.eat(']') {
                    return Err(perr("unterminated coefficient vector"));
                }
                if cs.len() > ctx.m() as usize {
                    return Err(perr(format!(
                        "coefficient vector has {} entries but {} has degree {} over F_{}",
                        cs.len(),
                        ctx,
                        ctx.m(),
                        ctx.p()
                    )));
                }
                let p = ctx.p() as i64;
                let reduced: Vec<u64> = cs.iter().map(|&c| c.rem_euclid(p) as u64).collect();
                Ok(FqPoly::constant(ctx, ctx.from_coeffs(&reduced)?))
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(perr("missing ')'"));
                }
                Ok(e)
            }
            Some(c) => Err(perr(format!("unexpected '{c}' at position {}", self.pos))),
            None => Err(perr("unexpected end of input")),
        }
    }
}

/// Parses a polynomial literal over `ctx`.
pub fn parse_poly(ctx: &FqContext, s: &str) -> Result<FqPoly> {
    let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if toks.is_empty() {
        return Err(perr("empty polynomial literal"));
    }
    let mut p = Parser { ctx, toks, pos: 0 };
    let f = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(format!(
            "trailing input at position {}: '{}'",
            p.pos,
            p.toks[p.pos..].iter().collect::<String>()
        )));
    }
    p.capped(f)
}

/// Parses an element literal (an integer, `g^k`, a coefficient vector, or
/// any constant expression).
pub fn parse_elem(ctx: &FqContext, s: &str) -> Result<FqElem> {
    let f = parse_poly(ctx, s)?;
    if !f.is_constant() {
        return Err(perr(format!("'{s}' is not a field element")));
    }
    Ok(f.coeff(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        let f3 = FqContext::new(3, 1).unwrap();
        let a = parse_poly(&f3, "T^2*(T^2-T-1)").unwrap();
        assert_eq!(a, FqPoly::from_ints(&f3, &[0, 0, -1, -1, 1]));
        assert_eq!(
            parse_poly(&f3, " T^3 + 2*T + 1 ").unwrap().to_string(),
            "T^3+2*T+1"
        );
        assert_eq!(parse_poly(&f3, "-T").unwrap().to_string(), "2*T");
        assert_eq!(parse_elem(&f3, "-1").unwrap(), f3.from_int(2));
        assert_eq!(
            parse_poly(&f3, "T^3+2T+1").unwrap().to_string(),
            "T^3+2*T+1"
        );
        assert_eq!(
            parse_poly(&f3, "2T(T+1)").unwrap(),
            parse_poly(&f3, "2*T*(T+1)").unwrap()
        );
    }

    #[test]
    fn extension_elements() {
        let f9 = FqContext::new(3, 2).unwrap();
        assert_eq!(parse_elem(&f9, "g").unwrap(), f9.generator());
        assert_eq!(parse_elem(&f9, "g^8").unwrap(), FqElem::ONE);
        assert_eq!(parse_elem(&f9, "[1,1]").unwrap(), f9.generator());
        let p = parse_poly(&f9, "g^3*T+[0,1]").unwrap();
        assert_eq!(parse_poly(&f9, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_malformed() {
        let f3 = FqContext::new(3, 1).unwrap();
        for bad in ["", "T^", "T+*", "(T", "T^2x", "[1,2]", "Y", "T2"] {
            assert!(
                matches!(parse_poly(&f3, bad), Err(Error::Parse(_))),
                "{bad}"
            );
        }
        assert_eq!(parse_poly(&f3, "T^65"), Err(Error::DegreeTooLarge(65, 64)));
        assert!(matches!(parse_elem(&f3, "T"), Err(Error::Parse(_))));
    }
}
