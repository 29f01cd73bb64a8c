use std::cmp::Ordering;

use super::symbol::{Symbol, MAX_SYMBOLS};

/// Power product of symbols, stored as a dense exponent vector indexed by
/// [`Symbol::index`].
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared from the lowest symbol index (`a12`) upward.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_SYMBOLS],
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_SYMBOLS],
    };

    pub fn var(s: Symbol, exp: u16) -> Monomial {
        let mut m = Monomial::ONE;
        m.exps[s.index()] = exp;
        m
    }

    #[inline]
    pub fn exp(&self, var: usize) -> u16 {
        self.exps[var]
    }

    #[inline]
    pub fn set_exp(&mut self, var: usize, e: u16) {
        self.exps[var] = e;
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Bitmask of the symbols with non-zero exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for (i, &e) in self.exps.iter().enumerate() {
            if e != 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = o.checked_add(e).expect("monomial exponent overflow");
        }
        out
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            debug_assert!(*o >= e);
            *o -= e;
        }
        out
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (o, &e) in out.exps.iter_mut().zip(other.exps.iter()) {
            *o = (*o).min(e);
        }
        out
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e = e.checked_mul(k).expect("monomial exponent overflow");
        }
        out
    }

    /// Square root if every exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.exps.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let mut out = *self;
        for e in out.exps.iter_mut() {
            *e /= 2;
        }
        Some(out)
    }

    /// Non-zero `(symbol, exponent)` pairs in symbol order.
    pub fn factors(&self) -> impl Iterator<Item = (Symbol, u16)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (Symbol::from_index(i), e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors()
            .map(|(s, e)| if e == 1 { s.name() } else { format!("{}^{}", s.name(), e) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize, j: usize) -> Symbol {
        Symbol::coefficient(i, j)
    }

    #[test]
    fn graded_lex_order() {
        let x = Monomial::var(a(4, 6), 2);
        let y = Monomial::var(a(5, 6), 2);
        let z = Monomial::var(a(1, 2), 1);
        // same degree: lower symbol index dominates
        assert!(x > y);
        // higher degree wins regardless of symbols
        assert!(y > z);
        assert!(Monomial::ONE < z);
    }

    #[test]
    fn divisibility_and_roots() {
        let m = Monomial::var(a(4, 6), 4).mul(&Monomial::var(a(5, 6), 2));
        let d = Monomial::var(a(4, 6), 1);
        assert!(d.divides(&m));
        assert_eq!(m.div(&d).mul(&d), m);
        assert_eq!(m.sqrt().unwrap().pow(2), m);
        assert!(d.sqrt().is_none());
    }
}
