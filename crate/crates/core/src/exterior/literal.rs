//! Form literals such as `a46*e46 + a56*e56 - e136`: the scalar expression
//! grammar where identifiers `e<digits>` (sorted, 1-based) are basis forms
//! and `*` between forms is the wedge product.

use num_traits::Signed;

use crate::scalars::{parse_expr, Expr, Scalar, ScalarError, Symbol};

use super::{ExteriorError, Form, MultiIndex};

enum Val {
    S(Scalar),
    F(Form),
}

fn syntax(pos: usize, msg: impl Into<String>) -> ExteriorError {
    ExteriorError::Syntax {
        pos,
        msg: msg.into(),
    }
}

impl Val {
    fn into_form(self, dim: usize) -> Form {
        match self {
            Val::S(s) => Form::scalar(dim, s),
            Val::F(f) => f,
        }
    }
}

fn basis_label(name: &str) -> Option<&str> {
    let digits = name.strip_prefix('e')?;
    (!digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())).then_some(digits)
}

fn eval(e: &Expr, dim: usize) -> Result<Val, ExteriorError> {
    Ok(match e {
        Expr::Int(n) => Val::S(Scalar::from_bigint(n.clone())),
        Expr::Ident { name, pos } => match basis_label(name) {
            Some(digits) => {
                let idx: Vec<usize> = digits.bytes().map(|b| (b - b'0') as usize).collect();
                if idx.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(syntax(*pos, format!("basis indices in {name} must be strictly increasing")));
                }
                if idx.iter().any(|&i| i == 0 || i > dim) {
                    return Err(syntax(*pos, format!("{name} is out of range for dimension {dim}")));
                }
                let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
                let m = MultiIndex::from_indices(&zero_based).expect("distinct");
                Val::F(Form::from_terms(dim, m.degree(), [(m, Scalar::one())]))
            }
            None => Val::S(Scalar::symbol(Symbol::intern(name)?)),
        },
        Expr::Neg(a) => match eval(a, dim)? {
            Val::S(s) => Val::S(-s),
            Val::F(f) => Val::F(f.neg()),
        },
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let x = eval(a, dim)?;
            let y = eval(b, dim)?;
            let sub = matches!(e, Expr::Sub(..));
            match (x, y) {
                (Val::S(x), Val::S(y)) => Val::S(if sub { x - y } else { x + y }),
                (x, y) => {
                    let (x, y) = (x.into_form(dim), y.into_form(dim));
                    Val::F(if sub { x.sub(&y)? } else { x.add(&y)? })
                }
            }
        }
        Expr::Mul(a, b) => match (eval(a, dim)?, eval(b, dim)?) {
            (Val::S(x), Val::S(y)) => Val::S(x * y),
            (Val::S(x), Val::F(f)) | (Val::F(f), Val::S(x)) => Val::F(f.scale(&x)),
            (Val::F(f), Val::F(g)) => Val::F(f.wedge(&g)?),
        },
        Expr::Div(a, b, pos) => {
            let Val::S(d) = eval(b, dim)? else {
                return Err(syntax(*pos, "cannot divide by a form"));
            };
            let inv = d.inv()?;
            match eval(a, dim)? {
                Val::S(x) => Val::S(x * inv),
                Val::F(f) => Val::F(f.scale(&inv)),
            }
        }
        Expr::Pow(a, k) => match eval(a, dim)? {
            Val::S(x) => Val::S(x.pow(*k)),
            Val::F(f) => Val::F(f.wedge_power(*k as usize)),
        },
    })
}

/// Parses a form literal in the given ambient dimension. A pure scalar
/// expression yields a 0-form.
pub fn parse_form(text: &str, dim: usize) -> Result<Form, ExteriorError> {
    let expr = parse_expr(text).map_err(|e| match e {
        ScalarError::Syntax { pos, msg } => ExteriorError::Syntax { pos, msg },
        other => ExteriorError::Scalar(other),
    })?;
    Ok(eval(&expr, dim)?.into_form(dim))
}

/// `a46*e46 + a56*e56 - e136`; coefficients that are not a single
/// monomial are parenthesized.
pub(super) fn format_form(f: &Form) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in f.terms().enumerate() {
        let negative = c.numer().lead_coeff().is_negative();
        let c = if negative { -c } else { c.clone() };
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let body = if m.degree() == 0 {
            c.to_string()
        } else if c.is_one() {
            m.label()
        } else if c.is_polynomial() && c.numer().len() == 1 {
            format!("{c}*{}", m.label())
        } else {
            format!("({c})*{}", m.label())
        };
        out.push_str(&body);
    }
    out
}
