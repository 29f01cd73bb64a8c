//! Canonical text rendering. Output re-parses to the same value.

use num_traits::{One, Signed};

use super::monomial::Monomial;
use super::poly::Poly;
use super::scalar::Scalar;

fn format_monomial(m: &Monomial) -> String {
    m.factors()
        .map(|(s, e)| if e == 1 { s.name() } else { format!("{}^{}", s.name(), e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Terms in decreasing order, no spaces: `a46^8+8*a14*a46*a56^6`.
pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let abs = c.abs();
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&format_monomial(m));
        }
    }
    out
}

/// A denominator can go without parentheses only if it is a single factor.
fn is_atomic(p: &Poly) -> bool {
    if p.len() != 1 {
        return false;
    }
    let (m, c) = &p.terms()[0];
    if m.is_one() {
        return c.is_positive();
    }
    c.is_one() && m.factors().count() == 1
}

pub fn format_scalar(x: &Scalar) -> String {
    let num = format_poly(x.numer());
    if x.denom().is_one() {
        return num;
    }
    let num = if x.numer().len() > 1 {
        format!("({num})")
    } else {
        num
    };
    let den = format_poly(x.denom());
    if is_atomic(x.denom()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(s("0").to_string(), "0");
        assert_eq!(s("a56 + a46").to_string(), "a46+a56");
        assert_eq!(s("-a46/a56").to_string(), "-a46/a56");
        assert_eq!(s("5/6").to_string(), "5/6");
        assert_eq!(
            s("(a46^8+8*a56^6*a46*a14)/(8*a56^7)").to_string(),
            "(8*a14*a46*a56^6+a46^8)/(8*a56^7)"
        );
        assert_eq!(s("a46/(a13*a25)").to_string(), "a46/(a13*a25)");
        assert_eq!(s("1/a56^7").to_string(), "1/a56^7");
    }

    #[test]
    fn round_trip() {
        for text in [
            "-1/2",
            "a46^2-a56^2",
            "(a46^4+1)^2/(8*a46^2*a56^4)",
            "-(a46^2-a56^2)/(a13*a24*a56-a13*a25*a46)",
            "3*a12*a13/(-2*a14)",
        ] {
            let x = s(text);
            assert_eq!(s(&x.to_string()), x, "{text}");
        }
    }
}
