use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::Poly;
use super::symbol::Symbol;
use super::{Point, ScalarError};

/// Element of `Q(a12, ..., a56, extras)`.
///
/// Stored as a quotient of integer polynomials with `gcd(num, den) = 1`
/// (including integer content) and `den` having a positive leading
/// coefficient. The representation is canonical, so `==` decides equality in
/// the field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar {
            num: Poly::constant(n),
            den: Poly::one(),
        }
    }

    pub fn from_rational(r: &BigRational) -> Scalar {
        // BigRational keeps a positive reduced denominator
        Scalar {
            num: Poly::constant(r.numer().clone()),
            den: Poly::constant(r.denom().clone()),
        }
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn symbol(s: Symbol) -> Scalar {
        Scalar::from_poly(Poly::var(s))
    }

    /// Shorthand for the coefficient symbol `a_ij`.
    pub fn a(i: usize, j: usize) -> Scalar {
        Scalar::symbol(Symbol::coefficient(i, j))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// `num / den`, reduced to canonical form.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Scalar::sign_normalized(num, den)
    }

    fn sign_normalized(num: Poly, den: Poly) -> Scalar {
        if den.lead_coeff().is_negative() {
            Scalar {
                num: num.neg(),
                den: den.neg(),
            }
        } else {
            Scalar { num, den }
        }
    }

    /// Re-normalizes; a no-op on values built through this API.
    pub fn normalize(&self) -> Result<Scalar, ScalarError> {
        Scalar::from_parts(self.num.clone(), self.den.clone())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.constant_value()?;
        let d = self.den.constant_value()?;
        Some(BigRational::new(n, d))
    }

    /// Symbols occurring in numerator or denominator, in canonical order.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mask = self.num.support() | self.den.support();
        (0..32)
            .filter(|i| mask & (1 << i) != 0)
            .map(Symbol::from_index)
            .collect()
    }

    pub fn support(&self) -> u32 {
        self.num.support() | self.den.support()
    }

    /// Rough size measure used for pivot selection.
    pub fn size(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::sign_normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        Scalar {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self * &Scalar::from_int(c)
    }

    /// Exact square root if `self` is a square in the field. The root of a
    /// non-constant value has positive leading coefficient in numerator and
    /// denominator; a rational root is positive.
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        let n = self.num.sqrt_exact()?;
        let d = self.den.sqrt_exact()?;
        Some(Scalar { num: n, den: d })
    }

    pub fn eval(&self, point: &Point) -> Result<BigRational, ScalarError> {
        let missing = |s: Symbol| ScalarError::MissingSymbol(s.name());
        let d = self.den.eval(point).map_err(missing)?;
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        let n = self.num.eval(point).map_err(missing)?;
        Ok(n / d)
    }

    /// Replaces symbols by field elements. Symbols not in `subs` stay.
    pub fn substitute(&self, subs: &BTreeMap<Symbol, Scalar>) -> Result<Scalar, ScalarError> {
        if subs.is_empty() || subs.keys().all(|s| self.support() & (1 << s.index()) == 0) {
            return Ok(self.clone());
        }
        let n = substitute_poly(&self.num, subs);
        let d = substitute_poly(&self.den, subs);
        if d.is_zero() {
            return Err(ScalarError::PoleAtPoint);
        }
        n.checked_div(&d)
    }

    /// Sign of the value at a point (`-1`, `0`, `1`).
    pub fn sign_at(&self, point: &Point) -> Result<i32, ScalarError> {
        let v = self.eval(point)?;
        Ok(if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        })
    }
}

fn substitute_poly(p: &Poly, subs: &BTreeMap<Symbol, Scalar>) -> Scalar {
    let mut total = Scalar::zero();
    let mut powers: BTreeMap<(Symbol, u16), Scalar> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut kept = super::monomial::Monomial::ONE;
        let mut t = Scalar::from_bigint(c.clone());
        for (s, e) in m.factors() {
            match subs.get(&s) {
                Some(v) => {
                    let pw = powers.entry((s, e)).or_insert_with(|| v.pow(e as u32));
                    t = &t * &*pw;
                }
                None => kept.set_exp(s.index(), e),
            }
        }
        if !kept.is_one() {
            t = &t * &Scalar::from_poly(Poly::term(kept, BigInt::one()));
        }
        total = &total + &t;
    }
    total
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.add(&rhs.num));
        }
        if self.den == rhs.den {
            return Scalar::reduce(self.num.add(&rhs.num), self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            // cross terms are already coprime to both denominators
            let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
            if num.is_zero() {
                return Scalar::zero();
            }
            return Scalar::sign_normalized(num, self.den.mul(&rhs.den));
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        if num.is_zero() {
            return Scalar::zero();
        }
        let den = b1.mul(&rhs.den);
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Scalar::sign_normalized(num, den)
        } else {
            Scalar::sign_normalized(
                num.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(self.num.mul(&rhs.num));
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = div(&self.num, &g1).mul(&div(&rhs.num, &g2));
        let den = div(&self.den, &g2).mul(&div(&rhs.den, &g1));
        Scalar::sign_normalized(num, den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| &acc + &x)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::from_int(n)
    }
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format::format_scalar(self))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Scalar, ScalarError> {
        super::parse::parse_scalar(s)
    }
}
