use num_bigint::BigInt;
use proptest::prelude::*;
use tropvertex::series::{parse_series, TruncatedSeries};
use tropvertex::Rational;

fn coeff() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn series(order: u32, min_t: u32, max_terms: usize) -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(
        (min_t..=order, -3i32..=3, -3i32..=3, coeff()),
        0..=max_terms,
    )
    .prop_map(move |terms| TruncatedSeries::from_terms(order, terms))
}

/// `1 + v` with `v` divisible by t.
fn unit_one(order: u32) -> impl Strategy<Value = TruncatedSeries> {
    series(order, 1, 4).prop_map(move |v| TruncatedSeries::one(order).add(&v).unwrap())
}

/// `c x^a y^b (1 + v)`.
fn unit(order: u32) -> impl Strategy<Value = TruncatedSeries> {
    (
        unit_one(order),
        coeff().prop_filter("nonzero", |c| *c != Rational::from_integer(0.into())),
        -2i32..=2,
        -2i32..=2,
    )
        .prop_map(|(u, c, a, b)| u.scale(&c).shift(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(a in series(4, 0, 5), b in series(4, 0, 5), c in series(4, 0, 5)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn exp_log_are_inverse(u in unit_one(8), v in series(8, 1, 3)) {
        prop_assert_eq!(u.log().unwrap().exp().unwrap(), u);
        prop_assert_eq!(v.exp().unwrap().log().unwrap(), v);
    }

    #[test]
    fn inverse_is_two_sided(u in unit(6)) {
        let inv = u.inverse().unwrap();
        prop_assert!(u.mul(&inv).unwrap().is_one());
        prop_assert_eq!(u.pow_int(-1).unwrap(), inv);
    }

    #[test]
    fn powers_add(u in unit(5), e1 in -4i64..=4, e2 in -4i64..=4) {
        let lhs = u.pow_int(e1 + e2).unwrap();
        let rhs = u.pow_int(e1).unwrap().mul(&u.pow_int(e2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_coherence(a in series(7, 0, 4), u in unit_one(7), j in 0u32..7) {
        let at = |s: &TruncatedSeries| s.truncate(j);
        prop_assert_eq!(at(&a.mul(&u).unwrap()).order(), j);
        prop_assert_eq!(at(&a.mul(&u).unwrap()), at(&a).mul(&at(&u)).unwrap());
        prop_assert_eq!(at(&a.add(&u).unwrap()), at(&a).add(&at(&u)).unwrap());
        prop_assert_eq!(at(&u.inverse().unwrap()), at(&u).inverse().unwrap());
        prop_assert_eq!(at(&u.log().unwrap()), at(&u).log().unwrap());
        prop_assert_eq!(at(&u.pow_int(3).unwrap()), at(&u).pow_int(3).unwrap());
        let v = u.log().unwrap();
        prop_assert_eq!(at(&v.exp().unwrap()), at(&v).exp().unwrap());
    }

    #[test]
    fn text_round_trip(a in series(6, 0, 6)) {
        let text = a.to_string();
        let back = parse_series(&text, 6).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, a);
    }
}
