//! Sparse multivariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::symbol::Symbol;

/// Polynomial in `Z[a12, ..., a56, extras]`.
///
/// Terms are kept sorted in strictly decreasing monomial order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::ONE, c)],
            }
        }
    }

    pub fn var(s: Symbol) -> Poly {
        Poly::term(Monomial::var(s, 1), BigInt::one())
    }

    pub fn term(m: Monomial, c: BigInt) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut terms: Vec<(Monomial, BigInt)>) -> Poly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn lead(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.first()
    }

    pub fn lead_coeff(&self) -> BigInt {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    /// Bitmask of symbols that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |acc, (m, _)| acc | m.support())
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mask = self.support();
        (0..32)
            .filter(|i| mask & (1 << i) != 0)
            .map(Symbol::from_index)
            .collect()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0, c));
        }
        Poly { terms: out }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut acc: Vec<(Monomial, BigInt)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_terms(acc)
    }

    /// Multiplication by a single term; order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, cc)| (*m, cc * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_int(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, cc)| {
                    debug_assert!((cc % c).is_zero());
                    (*m, cc / c)
                })
                .collect(),
        }
    }

    /// Exact division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(mm, c)| (mm.div(m), c.clone())).collect(),
        }
    }

    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::ONE;
        };
        let mut g = *first;
        for (m, _) in it {
            g = g.gcd(m);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact quotient `self / divisor` over `Z`, or `None` if it does not exist.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = divisor.constant_value() {
            if self.terms.iter().all(|(_, cc)| (cc % &c).is_zero()) {
                return Some(self.div_int(&c));
            }
            return None;
        }
        let (lm, lc) = divisor.terms[0].clone();
        if divisor.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                if !lm.divides(m) || !(c % &lc).is_zero() {
                    return None;
                }
                out.push((m.div(&lm), c / &lc));
            }
            return Some(Poly { terms: out });
        }
        // a nonzero multiple of a multi-term polynomial has at least two terms
        if divisor.total_degree() > self.total_degree() || self.terms.len() < 2 {
            return None;
        }
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            if !lm.divides(m) {
                return None;
            }
            let (q, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let qm = m.div(&lm);
            rem = rem.sub(&divisor.mul_term(&qm, &q));
            quot.push((qm, q));
        }
        Some(Poly { terms: quot })
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(var) as usize;
            let mut mm = *m;
            mm.set_exp(var, 0);
            buckets[e].push((mm, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                // removing one variable from a sorted list can break graded order
                t.sort_unstable_by(|a, b| b.0.cmp(&a.0));
                Poly { terms: t }
            })
            .collect()
    }

    /// Inverse of [`Poly::coeffs_in`].
    pub fn from_coeffs_in(var: usize, coeffs: &[Poly]) -> Poly {
        let mut acc = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut mm = *m;
                mm.set_exp(var, k as u16);
                acc.push((mm, c.clone()));
            }
        }
        Poly::from_terms(acc)
    }

    /// Evaluates at an exact rational point. Returns the missing symbol if the
    /// point does not assign one that occurs.
    pub fn eval(&self, point: &BTreeMap<Symbol, BigRational>) -> Result<BigRational, Symbol> {
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (s, e) in m.factors() {
                let v = point.get(&s).ok_or(s)?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Value modulo `p` with symbols replaced by the residues in `point`
    /// (indexed by symbol).
    pub(crate) fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        let mut total = 0u64;
        for (m, c) in &self.terms {
            let mut t = bigint_mod(c, p);
            for (s, e) in m.factors() {
                t = mulmod(t, powmod(point[s.index()], e as u64, p), p);
            }
            total = (total + t) % p;
        }
        total
    }

    /// Leading-coefficient sign normalization: returns `(self or -self, flipped)`
    /// so that the leading coefficient is positive.
    pub fn normalize_sign(self) -> (Poly, bool) {
        if self.lead_coeff().is_negative() {
            (self.neg(), true)
        } else {
            (self, false)
        }
    }

    /// Square root over `Z`, if `self` is the square of an integer polynomial.
    /// The root returned has positive leading coefficient.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (m0, c0) = &self.terms[0];
        if c0.is_negative() {
            return None;
        }
        let root_m = m0.sqrt()?;
        let root_c = int_sqrt_exact(c0)?;
        let (mt, _) = self.terms.last().unwrap();
        let bound = mt.sqrt()?;
        let two_lc = &root_c * 2;
        let mut root = vec![(root_m, root_c)];
        loop {
            let r = Poly { terms: root.clone() };
            let rem = self.sub(&r.mul(&r));
            let Some((m, c)) = rem.terms.first() else {
                return Some(r);
            };
            if !root_m.divides(m) {
                return None;
            }
            let (q, rr) = c.div_rem(&two_lc);
            if !rr.is_zero() {
                return None;
            }
            let next = m.div(&root_m);
            if next < bound || next >= root.last().unwrap().0 {
                return None;
            }
            root.push((next, q));
        }
    }
}

fn int_sqrt_exact(c: &BigInt) -> Option<BigInt> {
    if c.is_negative() {
        return None;
    }
    let r = c.sqrt();
    if &r * &r == *c {
        Some(r)
    } else {
        None
    }
}

pub(crate) fn bigint_mod(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.try_into().expect("residue fits in u64")
}

#[inline]
pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", super::format::format_poly(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize, j: usize) -> Poly {
        Poly::var(Symbol::coefficient(i, j))
    }

    fn c(n: i64) -> Poly {
        Poly::constant(BigInt::from(n))
    }

    #[test]
    fn ring_operations() {
        let x = v(4, 6);
        let y = v(5, 6);
        let s = x.add(&y);
        let d = x.sub(&y);
        assert_eq!(s.mul(&d), x.mul(&x).sub(&y.mul(&y)));
        assert!(s.sub(&s).is_zero());
        assert_eq!(s.pow(2), x.pow(2).add(&x.mul(&y).scale(&BigInt::from(2))).add(&y.pow(2)));
    }

    #[test]
    fn exact_division() {
        let x = v(4, 6);
        let y = v(5, 6);
        let num = x.pow(4).sub(&y.pow(4));
        let den = x.pow(2).sub(&y.pow(2));
        assert_eq!(num.div_exact(&den).unwrap(), x.pow(2).add(&y.pow(2)));
        assert!(num.div_exact(&x).is_none());
        assert!(x.scale(&BigInt::from(3)).div_exact(&c(2)).is_none());
    }

    #[test]
    fn coefficient_split_round_trips() {
        let x = v(1, 3);
        let y = v(4, 6);
        let p = x.pow(2).mul(&y).add(&x.mul(&c(5))).add(&y.pow(3)).sub(&c(7));
        let var = Symbol::coefficient(1, 3).index();
        let cs = p.coeffs_in(var);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], y);
        assert_eq!(Poly::from_coeffs_in(var, &cs), p);
    }

    #[test]
    fn square_roots() {
        let x = v(4, 6);
        let y = v(5, 6);
        let d = x.pow(2).sub(&y.pow(2));
        assert_eq!(d.pow(2).sqrt_exact().unwrap(), d);
        assert_eq!(x.pow(4).sqrt_exact().unwrap(), x.pow(2));
        assert_eq!(c(9).sqrt_exact().unwrap(), c(3));
        assert!(d.sqrt_exact().is_none());
        assert!(c(-1).sqrt_exact().is_none());
        let lam = x.pow(4).sub(&x.mul(&v(4, 5)).mul(&y.pow(2)).scale(&BigInt::from(4)));
        assert!(lam.sqrt_exact().is_none());
    }
}
