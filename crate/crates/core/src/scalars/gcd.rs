//! Multivariate polynomial gcd over `Z`.
//!
//! Recursive scheme: strip monomial and integer content, reduce to the symbols
//! shared by both inputs, pick a main variable, split off the content in the
//! remaining symbols and run the subresultant PRS on the primitive parts. A
//! modular image test in front of the PRS settles the (very common) coprime
//! case without any coefficient growth.

use num_integer::Integer;

use super::poly::{mulmod, powmod, Poly};

/// Mersenne prime used for the modular image test.
const PRIME: u64 = (1 << 61) - 1;

/// Greatest common divisor, normalized to a positive leading coefficient.
/// `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().normalize_sign().0;
    }
    if b.is_zero() {
        return a.clone().normalize_sign().0;
    }
    if let (Some(x), Some(y)) = (a.constant_value(), b.constant_value()) {
        return Poly::constant(x.gcd(&y));
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    if a == b || *a == b.neg() {
        return a.clone().normalize_sign().0;
    }

    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let ca = a.content();
    let cb = b.content();
    let int = ca.gcd(&cb);
    let pa = a.div_monomial(&ma).div_int(&ca);
    let pb = b.div_monomial(&mb).div_int(&cb);

    let g = gcd_stripped(&pa, &pb);
    g.mul_term(&mono, &int).normalize_sign().0
}

/// gcd of polynomials with trivial monomial and integer content
/// (not required for correctness, only for speed).
fn gcd_stripped(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    let sa = a.support();
    let sb = b.support();
    // a symbol occurring in only one argument: the gcd lies in the coefficient
    // ring of that symbol, so it divides every coefficient
    if let Some(v) = first_bit(sa & !sb) {
        return gcd_with_coeffs(b, a, v);
    }
    if let Some(v) = first_bit(sb & !sa) {
        return gcd_with_coeffs(a, b, v);
    }

    // main variable: smallest degree keeps the remainder sequence short
    let var = (0..32)
        .filter(|v| sa & (1 << v) != 0)
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("non-constant polynomial has a symbol");

    let ac = a.coeffs_in(var);
    let bc = b.coeffs_in(var);
    let cont_a = gcd_list(&ac);
    let cont_b = gcd_list(&bc);
    let cont = gcd(&cont_a, &cont_b);
    let mut pa: Vec<Poly> = ac.iter().map(|c| exact(c, &cont_a)).collect();
    let mut pb: Vec<Poly> = bc.iter().map(|c| exact(c, &cont_b)).collect();
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    if pb.len() == 1 {
        // primitive of degree zero in var is a unit
        return cont;
    }

    match modular_degree_bound(&pa, &pb, sa | sb, var) {
        Some(0) => return cont,
        Some(d) if d + 1 == pb.len() => {
            // the smaller one may divide the larger
            let big = Poly::from_coeffs_in(var, &pa);
            let small = Poly::from_coeffs_in(var, &pb);
            if big.div_exact(&small).is_some() {
                return small.mul(&cont).normalize_sign().0;
            }
        }
        _ => {}
    }

    let g = subresultant(pa, pb);
    let g_cont = gcd_list(&g);
    let g: Vec<Poly> = g.iter().map(|c| exact(c, &g_cont)).collect();
    Poly::from_coeffs_in(var, &g).mul(&cont).normalize_sign().0
}

fn first_bit(mask: u32) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(mask.trailing_zeros() as usize)
    }
}

fn gcd_with_coeffs(other: &Poly, split: &Poly, var: usize) -> Poly {
    let mut g = other.clone();
    for c in split.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn gcd_list(items: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in items {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn exact(a: &Poly, b: &Poly) -> Poly {
    a.div_exact(b).expect("gcd must divide exactly")
}

/// Upper bound for the degree in `var` of the gcd of two primitive
/// polynomials, from their images modulo a prime at a pseudo-random point.
/// `None` when the point makes a leading coefficient vanish.
fn modular_degree_bound(a: &[Poly], b: &[Poly], support: u32, var: usize) -> Option<usize> {
    let mut point = [0u64; 32];
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ support as u64;
    for (i, slot) in point.iter_mut().enumerate() {
        if support & (1 << i) != 0 && i != var {
            state = splitmix(state);
            *slot = state % PRIME;
        }
    }
    let ia: Vec<u64> = a.iter().map(|c| c.eval_mod(&point, PRIME)).collect();
    let ib: Vec<u64> = b.iter().map(|c| c.eval_mod(&point, PRIME)).collect();
    if *ia.last()? == 0 || *ib.last()? == 0 {
        return None;
    }
    Some(univariate_gcd_degree_mod(ia, ib, PRIME))
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn univariate_gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let inv = powmod(*b.last().unwrap(), p - 2, p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = mulmod(*a.last().unwrap(), inv, p);
            for (i, &bc) in b.iter().enumerate() {
                let t = mulmod(f, bc, p);
                a[i + shift] = (a[i + shift] + p - t) % p;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn degree(p: &[Poly]) -> usize {
    p.len() - 1
}

/// Pseudo-remainder of `a` by `b` as dense coefficient lists over the
/// remaining symbols.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = degree(b);
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    let mut steps = a.len() as i64 - b.len() as i64 + 1;
    while r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lcr));
        }
        debug_assert!(r[dr].is_zero());
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        steps -= 1;
    }
    if steps > 0 && !r.is_empty() {
        let f = lcb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

/// Subresultant PRS; returns the last non-zero remainder (not primitive).
fn subresultant(mut a: Vec<Poly>, mut b: Vec<Poly>) -> Vec<Poly> {
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = degree(&a) - degree(&b);
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let div = g.mul(&h.pow(delta as u32));
        a = b;
        b = r.iter().map(|c| exact(c, &div)).collect();
        g = a[degree(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1)),
        };
    }
}

/// Least common multiple with positive leading coefficient.
pub fn lcm(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    let g = gcd(a, b);
    exact(a, &g).mul(b).normalize_sign().0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::symbol::Symbol;
    use num_bigint::BigInt;

    fn v(i: usize, j: usize) -> Poly {
        Poly::var(Symbol::coefficient(i, j))
    }

    fn c(n: i64) -> Poly {
        Poly::constant(BigInt::from(n))
    }

    #[test]
    fn common_factor_is_recovered() {
        let x = v(4, 6);
        let y = v(5, 6);
        let z = v(1, 3);
        let f = x.add(&y.mul(&z)).sub(&c(1));
        let a = f.mul(&x.pow(2).add(&z));
        let b = f.mul(&y.sub(&z).pow(2));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn coprime_and_content() {
        let x = v(4, 6);
        let y = v(5, 6);
        assert!(gcd(&x.add(&y), &x.sub(&y)).is_one());
        assert_eq!(gcd(&x.scale(&BigInt::from(6)), &y.scale(&BigInt::from(4))), c(2));
        assert_eq!(gcd(&x.pow(3).mul(&y), &x.pow(2).mul(&y.pow(5))), x.pow(2).mul(&y));
        assert_eq!(gcd(&Poly::zero(), &x.neg()), x);
    }

    #[test]
    fn divides_case() {
        let x = v(4, 6);
        let y = v(5, 6);
        let a = x.pow(4).sub(&y.pow(4));
        let b = x.pow(2).sub(&y.pow(2));
        assert_eq!(gcd(&a, &b), b);
        // sign normalization
        assert_eq!(gcd(&a, &b.neg()), b);
    }

    #[test]
    fn symbol_only_in_one_argument() {
        let x = v(1, 2);
        let y = v(2, 3);
        let t = v(3, 4);
        let a = x.add(&y).mul(&t.pow(2).add(&c(1)));
        let b = x.add(&y).mul(&x.sub(&c(3)));
        assert_eq!(gcd(&a, &b), x.add(&y));
    }

    #[test]
    fn lcm_of_shared_factors() {
        let x = v(4, 6);
        let y = v(5, 6);
        assert_eq!(lcm(&x.mul(&y), &y.pow(2)), x.mul(&y.pow(2)));
    }
}
