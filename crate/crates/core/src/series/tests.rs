use super::*;

fn s(text: &str, order: u32) -> TruncatedSeries {
    parse_series(text, order).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

#[test]
fn add_examples() {
    assert_eq!(
        s("1 + t*x", 3).add(&s("t*x", 3)).unwrap(),
        s("1 + 2*t*x", 3)
    );
    let a = s("1 - 2/3*t^2*y", 4);
    assert_eq!(a.add(&TruncatedSeries::zero(4)).unwrap(), a);
    let z = s("1 + t^2*x^-1*y^-1", 4)
        .add(&s("-1 - t^2*x^-1*y^-1", 4))
        .unwrap();
    assert!(z.is_zero());
    assert_eq!(z.to_string(), "0");
}

#[test]
fn order_mismatch_is_an_error() {
    let e = s("1", 2).add(&s("1", 3)).unwrap_err();
    assert_eq!(e, Error::OrderMismatch(2, 3));
    assert!(s("1", 2).mul(&s("1", 3)).is_err());
}

#[test]
fn mul_examples() {
    let u = "x^-1*y^-1";
    let a = s(&format!("1 + t*{u}"), 2);
    let b = s(&format!("1 - t*{u}"), 2);
    assert_eq!(a.mul(&b).unwrap(), s("1 - t^2*x^-2*y^-2", 2));
    assert_eq!(a.mul(&TruncatedSeries::one(2)).unwrap(), a);
    let c = s("1 + t*x", 1);
    assert_eq!(c.mul(&c).unwrap(), s("1 + 2*t*x", 1));
}

#[test]
fn inverse_examples() {
    assert!(TruncatedSeries::one(5).inverse().unwrap().is_one());
    let inv = s("1 - t^2*x^-1*y^-1", 6).inverse().unwrap();
    assert_eq!(
        inv,
        s("1 + t^2*x^-1*y^-1 + t^4*x^-2*y^-2 + t^6*x^-3*y^-3", 6)
    );

    let u = s("1 + t*x^-1", 3).pow_int(2).unwrap();
    let inv = u.inverse().unwrap();
    // oracle: (1+w)^-2 = sum (-1)^n (n+1) w^n
    let expect = TruncatedSeries::from_terms(
        3,
        (0..=3).map(|n: i64| {
            (
                n as u32,
                -(n as i32),
                0,
                rat(if n % 2 == 0 { n + 1 } else { -(n + 1) }),
            )
        }),
    );
    assert_eq!(inv, expect);
    assert!(u.mul(&inv).unwrap().is_one());
}

#[test]
fn inverse_of_monomial_unit() {
    let u = s("-3*x^2*y + t*x", 4);
    let inv = u.inverse().unwrap();
    assert!(u.mul(&inv).unwrap().is_one());
}

#[test]
fn inverse_rejects_non_units() {
    assert!(matches!(s("1 + x", 3).inverse(), Err(Error::NonUnit(_))));
    assert!(matches!(s("t", 3).inverse(), Err(Error::NonUnit(_))));
}

#[test]
fn log_examples() {
    assert!(TruncatedSeries::one(4).log().unwrap().is_zero());
    let l = s("1 + t^2*x^-1*y^-1", 6).log().unwrap();
    assert_eq!(
        l,
        s("t^2*x^-1*y^-1 - 1/2*t^4*x^-2*y^-2 + 1/3*t^6*x^-3*y^-3", 6)
    );

    let h = s("1 - t^2*x^-1*y^-1", 4).pow_int(-4).unwrap();
    assert_eq!(h.log().unwrap(), s("4*t^2*x^-1*y^-1 + 2*t^4*x^-2*y^-2", 4));
    assert!(matches!(s("2 + t", 3).log(), Err(Error::BadArgument(_))));
}

#[test]
fn exp_examples() {
    assert!(TruncatedSeries::zero(3).exp().unwrap().is_one());
    let v = s("t^2*x^-1*y^-1 - 1/2*t^4*x^-2*y^-2 + 1/3*t^6*x^-3*y^-3", 6);
    assert_eq!(v.exp().unwrap(), s("1 + t^2*x^-1*y^-1", 6));
    assert!(matches!(s("1 + t", 3).exp(), Err(Error::BadArgument(_))));
}

#[test]
fn exp_of_ell3_log_is_ninth_power_of_quartic_series() {
    // g = sum C(4n,n)/(3n+1) u^n with u = t^2/(xy), h = g^9
    let g = TruncatedSeries::from_terms(
        6,
        (0..=3).map(|n| {
            (
                2 * n as u32,
                -(n as i32),
                -(n as i32),
                q(binom(4 * n, n), 3 * n as i64 + 1),
            )
        }),
    );
    let h = g.pow_int(9).unwrap();
    let v = s(
        "9*t^2*x^-1*y^-1 + 63/2*t^4*x^-2*y^-2 + 165*t^6*x^-3*y^-3",
        6,
    );
    assert_eq!(v.exp().unwrap(), h);
}

#[test]
fn pow_examples() {
    let u = s("1 + t*x^-1", 3);
    assert!(u.pow_int(0).unwrap().is_one());
    assert_eq!(
        u.pow_int(3).unwrap(),
        s("1 + 3*t*x^-1 + 3*t^2*x^-2 + t^3*x^-3", 3)
    );
    assert_eq!(u.pow_int(-1).unwrap(), u.inverse().unwrap());
    assert!(matches!(s("x + y", 2).pow_int(-2), Err(Error::NonUnit(_))));
}

#[test]
fn negative_binomial_coefficient() {
    let h = s("1 - t^2*x^-1*y^-1", 6).pow_int(-4).unwrap();
    // oracle: multiply four geometric series by hand
    let geo = TruncatedSeries::from_terms(
        6,
        (0..=3).map(|n| (2 * n, -(n as i32), -(n as i32), rat(1))),
    );
    let brute = geo.mul(&geo).unwrap().mul(&geo).unwrap().mul(&geo).unwrap();
    assert_eq!(brute.coeff(6, -3, -3), rat(20));
    assert_eq!(h.coeff(6, -3, -3), rat(binom(6, 3)));
    assert_eq!(h, brute);
}

#[test]
fn truncation_and_equality() {
    let a = s("1 + t + t^5", 5);
    let b = s("1 + t", 2);
    assert_eq!(a, b);
    assert_eq!(a.truncate(2).order(), 2);
    assert_eq!(a.lift(7).coeff(5, 0, 0), rat(1));
    assert_ne!(a.lift(7), s("1 + t", 7));
}

#[test]
fn display_is_canonical() {
    let a = s("y^-1*t^2*3/2 + 1 - x*t", 4);
    assert_eq!(a.to_string(), "1 - t*x + 3/2*t^2*y^-1");
    assert_eq!(s("-t^2*x^-1*y^-1", 2).to_string(), "-t^2*x^-1*y^-1");
    assert_eq!(s("-2", 2).to_string(), "-2");
    assert_eq!(parse_series(&a.to_string(), 4).unwrap(), a);
}

#[test]
fn parser_drops_terms_above_order() {
    assert_eq!(s("1 + t^3", 2).len(), 1);
}

#[test]
fn parser_reports_columns() {
    match parse_series("1 + t^2*x^", 4) {
        Err(Error::Parse {
            line: 1, col: 11, ..
        }) => {}
        other => panic!("{other:?}"),
    }
    match parse_series("1 +\n t^-1", 4) {
        Err(Error::Parse {
            line: 2, col: 3, ..
        }) => {}
        other => panic!("{other:?}"),
    }
    assert!(parse_series("", 1).is_err());
    assert!(parse_series("1 + z", 1).is_err());
    assert!(parse_series("1/0", 1).is_err());
    assert!(parse_series("1 2", 1).is_ok());
}

#[test]
fn euler_operators() {
    let a = s("3*t*x^2*y^-1 + 5", 2);
    assert_eq!(a.euler_x(), s("6*t*x^2*y^-1", 2));
    assert_eq!(a.euler_y(), s("-3*t*x^2*y^-1", 2));
}
