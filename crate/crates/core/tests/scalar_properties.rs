use std::collections::BTreeMap;

use proptest::prelude::*;

use stableforms::scalars::{parse_scalar, Point, Rational, Scalar, ScalarError, Symbol};

fn vars() -> [Symbol; 3] {
    [Symbol::coefficient(1, 2), Symbol::coefficient(1, 3), Symbol::coefficient(4, 6)]
}

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i64..=6, 0u32..=2, 0u32..=2, 0u32..=1), 1..=3).prop_map(|terms| {
        let [x, y, z] = vars().map(Scalar::symbol);
        terms
            .into_iter()
            .map(|(c, i, j, k)| &(&Scalar::from_int(c) * &x.pow(i)) * &(&y.pow(j) * &z.pow(k)))
            .sum()
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| n.checked_div(&d).ok())
}

fn point() -> impl Strategy<Value = Point> {
    prop::array::uniform3((-7i64..=7, 1i64..=4)).prop_map(|vals| {
        vars()
            .into_iter()
            .zip(vals)
            .map(|(s, (n, d))| (s, Rational::new(n.into(), d.into())))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn inverses(x in scalar()) {
        match x.inv() {
            Ok(inv) => prop_assert!((&x * &inv).is_one()),
            Err(e) => {
                prop_assert!(x.is_zero());
                prop_assert_eq!(e, ScalarError::DivisionByZero);
            }
        }
    }

    #[test]
    fn normalization_is_canonical(x in scalar(), y in scalar()) {
        let n = x.normalize().unwrap();
        prop_assert_eq!(&n.normalize().unwrap(), &n);
        prop_assert_eq!((&x - &y).is_zero(), x.normalize().unwrap() == y.normalize().unwrap());
        // a common factor in numerator and denominator disappears
        let f = &Scalar::symbol(vars()[0]) + &Scalar::from_int(3);
        let scaled = Scalar::from_parts(
            x.numer().mul(f.numer()),
            x.denom().mul(f.numer()),
        )
        .unwrap();
        prop_assert_eq!(scaled, x);
    }

    #[test]
    fn evaluation_is_a_homomorphism(x in scalar(), y in scalar(), z in scalar(), p in point()) {
        let lhs = (&(&x * &y) + &z).eval(&p);
        let parts = (x.eval(&p), y.eval(&p), z.eval(&p));
        if let (Ok(a), Ok(b), Ok(c)) = parts {
            if let Ok(lhs) = lhs {
                prop_assert_eq!(lhs, a * b + c);
            }
        }
    }

    #[test]
    fn text_round_trip(x in scalar()) {
        let text = x.to_string();
        prop_assert_eq!(parse_scalar(&text).unwrap(), x.clone());
        prop_assert_eq!(text.parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn substitution_commutes_with_evaluation(x in scalar(), p in point()) {
        let subs: BTreeMap<Symbol, Scalar> =
            p.iter().map(|(s, v)| (*s, Scalar::from_rational(v))).collect();
        if let (Ok(sub), Ok(val)) = (x.substitute(&subs), x.eval(&p)) {
            prop_assert_eq!(sub.as_rational(), Some(val));
        }
    }
}
