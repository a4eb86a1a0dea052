use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use tropvertex::scattering::random::random_diagram;
use tropvertex::scattering::*;
use tropvertex::series::{parse_series, TruncatedSeries};
use tropvertex::Rational;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

fn standard(l1: i64, l2: i64, order: u32) -> ScatteringDiagram {
    let f1 = parse_series("1 + t*x^-1", order)
        .unwrap()
        .pow_int(l1)
        .unwrap();
    let f2 = parse_series("1 + t*y^-1", order)
        .unwrap()
        .pow_int(l2)
        .unwrap();
    ScatteringDiagram::new(
        order,
        vec![
            Wall::line((1, 0), f1).unwrap(),
            Wall::line((0, 1), f2).unwrap(),
        ],
    )
}

/// Product of every wall function whose support contains `R_{≥0} dir`.
fn function_on(d: &ScatteringDiagram, dir: Vec2) -> TruncatedSeries {
    let mut f = TruncatedSeries::one(d.order());
    for w in d.walls() {
        if w.support_directions().contains(&dir) {
            f = f.mul(&w.f).unwrap();
        }
    }
    f
}

fn wall_set(d: &ScatteringDiagram) -> BTreeSet<(WallKind, Vec2, String, bool)> {
    d.walls()
        .iter()
        .filter(|w| !w.f.is_one())
        .map(|w| (w.kind, w.m_prim, w.f.to_string(), w.added))
        .collect()
}

fn apply_matrix(a: [[i32; 2]; 2], v: Vec2) -> Vec2 {
    (a[0][0] * v.0 + a[0][1] * v.1, a[1][0] * v.0 + a[1][1] * v.1)
}

fn transform(d: &ScatteringDiagram, a: [[i32; 2]; 2]) -> ScatteringDiagram {
    let walls = d
        .walls()
        .iter()
        .map(|w| {
            let f = TruncatedSeries::from_terms(
                w.f.order(),
                w.f.terms().map(|(k, c)| {
                    let (x, y) = apply_matrix(a, (k.x, k.y));
                    (k.t, x, y, c.clone())
                }),
            );
            let mut out = Wall::new(w.kind, apply_matrix(a, w.m_prim), f).unwrap();
            out.added = w.added;
            out
        })
        .collect();
    ScatteringDiagram::new(d.order(), walls)
}

#[test]
fn ell2_central_and_side_rays() {
    let out = standard(2, 2, 12).scatter().unwrap();
    let central = parse_series("1 - t^2*x^-1*y^-1", 12)
        .unwrap()
        .pow_int(-4)
        .unwrap();
    assert_eq!(out.ray_function((1, 1)), central);
    for n in 1..=2i32 {
        let side = |a: i32, b: i32| {
            let m = TruncatedSeries::monomial(12, q(1, 1), (2 * n + 1) as u32, -a, -b);
            TruncatedSeries::one(12)
                .add(&m)
                .unwrap()
                .pow_int(2)
                .unwrap()
        };
        assert_eq!(out.ray_function((n + 1, n)), side(n + 1, n));
        assert_eq!(out.ray_function((n, n + 1)), side(n, n + 1));
    }
    // family: (n+1, n), (n, n+1) for 2n+1 ≤ 12, and (1,1)
    let mut expected: BTreeSet<Vec2> = [(1, 1)].into();
    for n in 1..=5 {
        expected.insert((n + 1, n));
        expected.insert((n, n + 1));
    }
    let got: BTreeSet<Vec2> = out.added_rays().map(|w| w.dir()).collect();
    assert_eq!(got, expected);
}

#[test]
fn ell3_slope_one_function_is_ninth_power() {
    let k = 10;
    let out = standard(3, 3, k).scatter().unwrap();
    let h = out.ray_function((1, 1));
    let g = h.log().unwrap().scale(&q(1, 9)).exp().unwrap();
    let oracle = TruncatedSeries::from_terms(
        k,
        (0..=5u64).map(|n| {
            (
                2 * n as u32,
                -(n as i32),
                -(n as i32),
                q(binom(4 * n, n), 3 * n as i64 + 1),
            )
        }),
    );
    assert_eq!(g, oracle);
    let relation = parse_series("t^2*x^-1*y^-1", k)
        .unwrap()
        .mul(&g.pow_int(4).unwrap())
        .unwrap()
        .sub(&g)
        .unwrap()
        .add(&TruncatedSeries::one(k))
        .unwrap();
    assert!(relation.is_zero());
}

#[test]
fn ell3_outer_rays_and_periodicity() {
    let k = 12;
    let out = standard(3, 3, k).scatter().unwrap();
    let cube = |a: i32, b: i32| {
        let m = TruncatedSeries::monomial(k, q(1, 1), (a + b) as u32, -a, -b);
        TruncatedSeries::one(k).add(&m).unwrap().pow_int(3).unwrap()
    };
    assert_eq!(out.ray_function((3, 1)), cube(3, 1));
    assert_eq!(out.ray_function((1, 3)), cube(1, 3));

    let a = |m: Vec2| (3 * m.0 - m.1, m.0);
    let a_inv = |m: Vec2| (m.1, 3 * m.1 - m.0);
    let mut dirs: BTreeSet<Vec2> = out.support_directions().into_iter().collect();
    dirs.extend(out.support_directions().into_iter().map(a_inv));
    let mut compared = 0;
    for m in dirs {
        let m2 = a(m);
        if m.0 < 0 || m.1 < 0 || m2.0 < 0 || m2.1 < 0 {
            continue;
        }
        let (f, f2) = (function_on(&out, m), function_on(&out, m2));
        let (w, w2) = (m.0 + m.1, m2.0 + m2.1);
        let mut d = 1;
        while d * w <= k as i32 && d * w2 <= k as i32 {
            let c = f.coeff((d * w) as u32, -d * m.0, -d * m.1);
            let c2 = f2.coeff((d * w2) as u32, -d * m2.0, -d * m2.1);
            assert_eq!(c, c2, "periodicity fails at {m:?} -> {m2:?}, d = {d}");
            compared += 1;
            d += 1;
        }
    }
    assert!(compared >= 5);
}

#[test]
fn gw_extraction_examples() {
    let t = extract_gw(&[((1, 0), 1), ((0, 1), 1)], (1, 1), 12).unwrap();
    for d in 1..=6u32 {
        let sign = if d % 2 == 1 { 1 } else { -1 };
        assert_eq!(t.get(2 * d, d).unwrap().n_tilde, q(sign, (d * d) as i64));
    }
    let t = extract_gw(&[((1, 0), 2), ((0, 1), 2)], (1, 1), 4).unwrap();
    assert_eq!(t.get(2, 1).unwrap().log_coeff, q(4, 1));
    assert_eq!(t.get(4, 2).unwrap().log_coeff, q(2, 1));
    let t = extract_gw(&[((1, 0), 3), ((0, 1), 3)], (1, 1), 6).unwrap();
    let logs: Vec<Rational> = t.rows.iter().map(|r| r.log_coeff.clone()).collect();
    assert_eq!(logs, vec![q(9, 1), q(63, 2), q(165, 1)]);
    assert_eq!(t.get(4, 2).unwrap().n_tilde, q(63, 4));
}

#[test]
fn gw_rejects_out_direction_on_initial_line() {
    let e = extract_gw(&[((1, 0), 1), ((0, 1), 1)], (-1, 0), 4).unwrap_err();
    assert!(matches!(e, tropvertex::Error::Unsupported(_)));
}

#[test]
fn exchange_symmetry_for_unequal_multiplicities() {
    let swap = [[0, 1], [1, 0]];
    let a = standard(1, 2, 8).scatter().unwrap();
    let b = standard(2, 1, 8).scatter().unwrap();
    assert_eq!(wall_set(&transform(&a, swap)), wall_set(&b));
}

#[test]
fn order_stability() {
    let big = standard(2, 3, 9).scatter().unwrap();
    for j in [2, 5, 7] {
        let small = standard(2, 3, j).scatter().unwrap();
        assert_eq!(wall_set(&big.truncate(j)), wall_set(&small));
    }
}

fn gl2() -> impl Strategy<Value = [[i32; 2]; 2]> {
    prop_oneof![
        Just([[1, 1], [0, 1]]),
        Just([[1, 0], [-1, 1]]),
        Just([[0, -1], [1, 0]]),
        Just([[0, 1], [1, 0]]),
        Just([[2, 1], [1, 1]]),
        Just([[-1, 0], [0, 1]]),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scatter_is_consistent_for_several_base_angles(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 3, 4).scatter().unwrap();
        let mut bases: Vec<Vec2> = vec![d.base_angle()];
        for cand in [(7, 3), (-5, 11), (2, -9), (-13, -4), (1, 17)] {
            if d.crossings(cand).is_ok() && bases.len() < 4 {
                bases.push(cand);
            }
        }
        prop_assert!(bases.len() >= 3);
        for b in bases {
            prop_assert!(d.loop_product(b).unwrap().is_identity());
            for th in d.partial_products(b).unwrap() {
                prop_assert!(th.is_symplectic());
            }
        }
    }

    #[test]
    fn first_deviation_is_base_independent(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 3, 4);
        let mut seen = None;
        for b in [(7, 3), (-5, 11), (2, -9), (-13, -4)] {
            if d.crossings(b).is_err() {
                continue;
            }
            let th = d.loop_product(b).unwrap();
            let k = (1..=4).find(|&k| !th.truncate(k).is_identity());
            let rays = k.map(|k| deviation_to_walls(&th.truncate(k), k).unwrap());
            let key = rays.map(|r| r.iter().map(|w| (w.m_prim, w.f.to_string())).collect::<Vec<_>>());
            match &seen {
                None => seen = Some(key),
                Some(prev) => prop_assert_eq!(prev, &key),
            }
        }
    }

    #[test]
    fn crossing_automorphisms_are_symplectic(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 4, 5);
        for th in d.crossing_automorphisms(d.base_angle()).unwrap() {
            prop_assert!(th.is_symplectic());
        }
    }

    #[test]
    fn scatter_commutes_with_gl2(seed in any::<u64>(), a in gl2()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 2, 4);
        let lhs = transform(&d.scatter().unwrap(), a);
        let rhs = transform(&d, a).scatter().unwrap();
        prop_assert_eq!(wall_set(&lhs), wall_set(&rhs));
    }

    #[test]
    fn document_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let d = random_diagram(&mut rng, 3, 3).scatter().unwrap();
        let text = write_diagram(&d);
        let back = parse_diagram(&text, None).unwrap();
        prop_assert_eq!(wall_set(&back), wall_set(&d));
        prop_assert_eq!(write_diagram(&back), text);
    }
}
