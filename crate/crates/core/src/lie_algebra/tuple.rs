//! Tuple notation `(0,0,12,13,14+23,34-25)`: entry `k` lists `de^k` as a
//! combination of `e^{ij}`, written as juxtaposed digit pairs with optional
//! integer coefficients (`2*13`).

use crate::scalars::Scalar;

use super::{LieAlg, LieError};

fn syntax(pos: usize, msg: impl Into<String>) -> LieError {
    LieError::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// One `c * e^{ij}` term with 1-based `i, j` as written.
struct Term {
    coeff: i64,
    i: usize,
    j: usize,
    pos: usize,
}

struct Cursor<'a> {
    text: &'a [u8],
    at: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.at < self.text.len() && self.text[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.at).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), LieError> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            Err(syntax(self.at, format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<(String, usize), LieError> {
        self.skip_ws();
        let start = self.at;
        while self.at < self.text.len() && self.text[self.at].is_ascii_digit() {
            self.at += 1;
        }
        if start == self.at {
            return Err(syntax(start, "expected digits"));
        }
        let s = std::str::from_utf8(&self.text[start..self.at]).expect("ascii digits");
        Ok((s.to_string(), start))
    }

    /// Entry: `0` or a signed sum of terms.
    fn entry(&mut self) -> Result<Vec<Term>, LieError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = 1;
            match self.peek() {
                Some(b'+') if !first => self.at += 1,
                Some(b'-') => {
                    sign = -1;
                    self.at += 1;
                }
                Some(b'+') => self.at += 1,
                _ if !first => return Ok(terms),
                _ => {}
            }
            let (d, pos) = self.digits()?;
            if first && d == "0" && !matches!(self.peek(), Some(b'*')) {
                return Ok(terms);
            }
            first = false;
            let (coeff, pair, pair_pos) = if self.peek() == Some(b'*') {
                self.at += 1;
                let c: i64 = d.parse().map_err(|_| syntax(pos, "coefficient too large"))?;
                let (p, pp) = self.digits()?;
                (c, p, pp)
            } else {
                (1, d, pos)
            };
            if pair.len() != 2 {
                return Err(syntax(pair_pos, format!("'{pair}' is not a pair of basis indices")));
            }
            let b = pair.as_bytes();
            terms.push(Term {
                coeff: sign * coeff,
                i: (b[0] - b'0') as usize,
                j: (b[1] - b'0') as usize,
                pos: pair_pos,
            });
            match self.peek() {
                Some(b'+') | Some(b'-') => {}
                _ => return Ok(terms),
            }
        }
    }
}

/// Parses tuple notation with `de^k` equal to entry `k`; under
/// `de^k = -sum_{i<j} C^k_ij e^{ij}` a term `c*ij` means `C^k_ij = -c`.
pub fn parse_tuple(text: &str) -> Result<LieAlg, LieError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        at: 0,
    };
    cur.expect(b'(')?;
    let mut entries = Vec::new();
    loop {
        entries.push(cur.entry()?);
        match cur.peek() {
            Some(b',') => cur.at += 1,
            Some(b')') => {
                cur.at += 1;
                break;
            }
            _ => return Err(syntax(cur.at, "expected ',' or ')'")),
        }
    }
    if cur.peek().is_some() {
        return Err(syntax(cur.at, "unexpected trailing input"));
    }
    let dim = entries.len();
    let mut l = LieAlg::abelian(dim);
    for (k, terms) in entries.iter().enumerate() {
        for t in terms {
            if t.i == t.j || t.i == 0 || t.j == 0 {
                return Err(syntax(t.pos, format!("invalid index pair {}{}", t.i, t.j)));
            }
            let top = t.i.max(t.j);
            if top > k {
                return Err(LieError::NotNilpotentOrder {
                    entry: k + 1,
                    index: top,
                });
            }
            // e^{ji} = -e^{ij}
            let (i, j, c) = if t.i < t.j {
                (t.i, t.j, t.coeff)
            } else {
                (t.j, t.i, -t.coeff)
            };
            let old = l.c(i - 1, j - 1, k).clone();
            l.set_c(i - 1, j - 1, k, old - Scalar::from_int(c));
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_algebra::series::dims;

    #[test]
    fn structural_equations() {
        let l = parse_tuple("(0,0,0,0,12,34)").unwrap();
        assert_eq!(l.dim(), 6);
        // de^5 = e^{12} means C^5_12 = -1
        assert_eq!(l.c(0, 1, 4), &Scalar::from_int(-1));
        assert_eq!(l.c(2, 3, 5), &Scalar::from_int(-1));
        assert_eq!(l.brackets().len(), 2);
    }

    #[test]
    fn sums_and_differences() {
        let l = parse_tuple("(0, 0, 12, 13, 14+23, 34 -25)").unwrap();
        assert_eq!(l.c(1, 2, 4), &Scalar::from_int(-1));
        assert_eq!(l.c(1, 4, 5), &Scalar::one());
        assert!(l.jacobi_defect().is_empty());
        assert_eq!(dims(&l.lower_central_series()), vec![6, 4, 3, 2, 1, 0]);
        let scaled = parse_tuple("(0,0,0,2*12)").unwrap();
        assert_eq!(scaled.c(0, 1, 3), &Scalar::from_int(-2));
    }

    #[test]
    fn abelian_and_errors() {
        assert!(parse_tuple("(0,0)").unwrap().is_abelian());
        assert_eq!(
            parse_tuple("(0,12)"),
            Err(LieError::NotNilpotentOrder { entry: 2, index: 2 })
        );
        assert!(matches!(parse_tuple("(0,0,123)"), Err(LieError::Syntax { pos: 5, .. })));
        assert!(matches!(parse_tuple("0,0"), Err(LieError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_tuple("(0,0,11)"), Err(LieError::Syntax { .. })));
        assert!(matches!(parse_tuple("(0,0"), Err(LieError::Syntax { pos: 4, .. })));
    }
}
