//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT | '(' expr ')'
//! ```
//!
//! The parser produces an [`Expr`] tree so the same grammar can be evaluated
//! in different algebras (scalars here, forms in the exterior module).

use num_bigint::BigInt;

use super::scalar::Scalar;
use super::symbol::Symbol;
use super::ScalarError;

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Ident { name: String, pos: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor position kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn syntax(pos: usize, msg: impl Into<String>) -> ScalarError {
    ScalarError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ScalarError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Int(digits.parse().expect("digits")), pos));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((Tok::Ident(name), pos));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), pos));
            i += 1;
        } else {
            return Err(syntax(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |&(_, p)| p)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ScalarError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.at += 1;
                let pos = self.pos();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ScalarError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ScalarError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let e: u32 = n
                    .try_into()
                    .map_err(|_| syntax(pos, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(syntax(
                pos,
                "exponent must be a non-negative integer literal",
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr, ScalarError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                Ok(Expr::Ident { name, pos })
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(syntax(self.pos(), "expected ')'"));
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => Err(syntax(pos, format!("unexpected '{c}'"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses `text` into an expression tree.
pub fn parse_expr(text: &str) -> Result<Expr, ScalarError> {
    let toks = tokenize(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: text.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates in the scalar field; every identifier is a symbol.
    pub fn to_scalar(&self) -> Result<Scalar, ScalarError> {
        Ok(match self {
            Expr::Int(n) => Scalar::from_bigint(n.clone()),
            Expr::Ident { name, .. } => Scalar::symbol(Symbol::intern(name)?),
            Expr::Neg(a) => -a.to_scalar()?,
            Expr::Add(a, b) => a.to_scalar()? + b.to_scalar()?,
            Expr::Sub(a, b) => a.to_scalar()? - b.to_scalar()?,
            Expr::Mul(a, b) => a.to_scalar()? * b.to_scalar()?,
            Expr::Div(a, b, _) => a.to_scalar()?.checked_div(&b.to_scalar()?)?,
            Expr::Pow(a, e) => a.to_scalar()?.pow(*e),
        })
    }
}

pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    parse_expr(text)?.to_scalar()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let x = parse_scalar("1 + 2*3^2 - -4").unwrap();
        assert_eq!(x, Scalar::from_int(23));
        let y = parse_scalar("-a46^2").unwrap();
        assert_eq!(y, -Scalar::a(4, 6).pow(2));
        let z = parse_scalar("a46/a56/a12").unwrap();
        assert_eq!(z * Scalar::a(5, 6) * Scalar::a(1, 2), Scalar::a(4, 6));
    }

    #[test]
    fn zero() {
        assert!(parse_scalar("0").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_scalar("a46^-1"),
            Err(ScalarError::Syntax {
                pos: 4,
                msg: "exponent must be a non-negative integer literal".into()
            })
        );
        assert!(matches!(parse_scalar("(a46"), Err(ScalarError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_scalar("a46 $"), Err(ScalarError::Syntax { pos: 4, .. })));
        assert!(matches!(parse_scalar(""), Err(ScalarError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_scalar("a46 a56"), Err(ScalarError::Syntax { pos: 4, .. })));
        assert_eq!(parse_scalar("1/(a46-a46)"), Err(ScalarError::DivisionByZero));
    }
}
