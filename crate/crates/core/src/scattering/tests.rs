use super::*;
use crate::series::{parse_series, rat};

fn s(text: &str, order: u32) -> TruncatedSeries {
    parse_series(text, order).unwrap()
}

fn ell1(order: u32) -> ScatteringDiagram {
    ScatteringDiagram::new(
        order,
        vec![
            Wall::line((1, 0), s("1 + t*x^-1", order)).unwrap(),
            Wall::line((0, 1), s("1 + t*y^-1", order)).unwrap(),
        ],
    )
}

fn fold(autos: &[RingAutomorphism], order: u32) -> RingAutomorphism {
    autos
        .iter()
        .fold(RingAutomorphism::identity(order), |acc, th| {
            RingAutomorphism::compose(th, &acc).unwrap()
        })
}

#[test]
fn wall_validation() {
    assert!(Wall::new(WallKind::Ray, (2, 2), s("1", 2)).is_err());
    assert!(Wall::new(WallKind::Ray, (1, 1), s("1 + t*x^-1*y^-1", 2)).is_err());
    assert!(Wall::new(WallKind::Ray, (1, 1), s("2 + t*x*y", 2)).is_err());
    assert!(Wall::new(WallKind::Ray, (1, 1), s("1 + x*y", 2)).is_err());
    let w = Wall::ray((1, 1), s("1 + t^2*x^-1*y^-1", 2)).unwrap();
    assert_eq!(w.m_prim, (-1, -1));
    assert_eq!(w.support_directions(), vec![(1, 1)]);
    let l = Wall::line((1, 0), s("1 + t*x^-1", 2)).unwrap();
    assert_eq!(l.m_prim, (-1, 0));
    assert_eq!(
        Wall::line((-1, 0), s("1 + t*x^-1", 2)).unwrap().m_prim,
        (-1, 0)
    );
}

#[test]
fn crossing_examples() {
    let w = Wall::line((1, 0), s("1 + t*x^-1", 3)).unwrap();
    let th = crossing_automorphism(&w, (0, -1)).unwrap();
    assert!(th.ux.is_one());
    assert_eq!(th.uy, s("1 + t*x^-1", 3).inverse().unwrap());

    let one = Wall::ray((2, 1), TruncatedSeries::one(3)).unwrap();
    assert!(crossing_automorphism(&one, (1, -2)).unwrap().is_identity());

    let r = Wall::ray((1, 1), s("1 + t^2*x^-1*y^-1", 4)).unwrap();
    let th = crossing_automorphism(&r, (1, -1)).unwrap();
    assert_eq!(th.ux, s("1 + t^2*x^-1*y^-1", 4));
    assert_eq!(th.uy, s("1 + t^2*x^-1*y^-1", 4).inverse().unwrap());

    assert!(matches!(
        crossing_automorphism(&r, (1, 0)),
        Err(Error::Geometry(_))
    ));
    assert!(matches!(
        crossing_automorphism(&r, (2, -2)),
        Err(Error::Geometry(_))
    ));
}

#[test]
fn compose_identity_and_inverse() {
    let w = Wall::ray((2, -1), s("1 + 2*t*x^-2*y + t^3*x^-4*y^2", 4)).unwrap();
    let th = crossing_automorphism(&w, (-1, -2)).unwrap();
    let inv = crossing_automorphism(&w, (1, 2)).unwrap();
    let id = RingAutomorphism::identity(4);
    assert_eq!(RingAutomorphism::compose(&th, &id).unwrap(), th);
    assert_eq!(RingAutomorphism::compose(&id, &th).unwrap(), th);
    assert!(RingAutomorphism::compose(&th, &inv).unwrap().is_identity());
    assert!(RingAutomorphism::compose(&th, &RingAutomorphism::identity(3)).is_err());
}

#[test]
fn apply_examples() {
    let x = s("x + t*y^3", 3);
    assert_eq!(RingAutomorphism::identity(3).apply(&x).unwrap(), x);

    let w = Wall::ray((-1, 0), s("1 + t*x", 3)).unwrap();
    assert_eq!(w.m_prim, (1, 0));
    let th = crossing_automorphism(&w, (0, -1)).unwrap();
    let y = s("y", 3);
    assert_eq!(
        th.apply(&y).unwrap(),
        y.mul(&s("1 + t*x", 3).inverse().unwrap()).unwrap()
    );

    let xy = s("x*y", 3);
    let lhs = th.apply(&xy).unwrap();
    let rhs = th
        .apply(&s("x", 3))
        .unwrap()
        .mul(&th.apply(&y).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn loop_product_examples() {
    let empty = ScatteringDiagram::new(3, vec![]);
    assert!(empty.loop_product((1, 0)).unwrap().is_identity());

    let single = ScatteringDiagram::new(
        4,
        vec![Wall::line((1, 0), s("1 + t*x^-1 + 3*t^2*x^-2", 4)).unwrap()],
    );
    assert!(single.loop_product((1, 1)).unwrap().is_identity());
    assert!(single.loop_product((-3, -1)).unwrap().is_identity());

    let d = ell1(2);
    let th = d.loop_product(d.base_angle()).unwrap();
    assert!(!th.is_identity());
    let rays = deviation_to_walls(&th, 2).unwrap();
    assert_eq!(rays.len(), 1);
    assert_eq!(rays[0].dir(), (1, 1));
    assert_eq!(rays[0].f, s("1 + t^2*x^-1*y^-1", 2));
}

#[test]
fn base_point_on_wall_is_rejected() {
    let d = ell1(2);
    assert!(matches!(d.loop_product((2, 0)), Err(Error::BasePoint(_))));
    assert!(matches!(d.loop_product((0, -1)), Err(Error::BasePoint(_))));
    assert!(d.loop_product((0, 0)).is_err());
}

#[test]
fn first_order_deviation_of_ell1_matches_hand_computation() {
    let d = ell1(2);
    for base in [(1, 1), (-1, 1), (-1, -1), (1, -1), (3, 1)] {
        let th = d.loop_product(base).unwrap();
        // the t^2 part is invariant under conjugation by lower-order terms
        assert_eq!(th.ux.degree_part(1), vec![]);
        assert_eq!(th.ux.degree_part(2), vec![(-1, -1, rat(-1))]);
        assert_eq!(th.uy.degree_part(2), vec![(-1, -1, rat(1))]);
    }
}

#[test]
fn fast_loop_matches_composition_fold() {
    let d = ell1(5).scatter().unwrap();
    for base in [(1, 2), (-1, 3), (2, -1)] {
        let fast = d.loop_product(base).unwrap();
        let slow = fold(&d.crossing_automorphisms(base).unwrap(), 5);
        assert_eq!(fast, slow);
        assert!(slow.is_identity());
    }
    let raw = ell1(4);
    let fast = raw.loop_product((1, 1)).unwrap();
    assert_eq!(fast, fold(&raw.crossing_automorphisms((1, 1)).unwrap(), 4));
}

#[test]
fn five_crossings_of_ell1_compose_to_identity() {
    let d = ell1(6).scatter().unwrap();
    let autos = d.crossing_automorphisms((1, 2)).unwrap();
    assert_eq!(autos.len(), 5);
    assert!(fold(&autos, 6).is_identity());
}

#[test]
fn deviation_examples() {
    assert!(deviation_to_walls(&RingAutomorphism::identity(3), 2)
        .unwrap()
        .is_empty());

    let th = RingAutomorphism::new(s("1 - t^2*x^-1*y^-1", 2), s("1 + t^2*x^-1*y^-1", 2)).unwrap();
    let rays = deviation_to_walls(&th, 2).unwrap();
    assert_eq!(rays.len(), 1);
    assert_eq!(rays[0].dir(), (1, 1));
    assert_eq!(rays[0].f, s("1 + t^2*x^-1*y^-1", 2));
    let mut check = ell1(2).walls().to_vec();
    check.extend(rays);
    let d = ScatteringDiagram::new(2, check);
    assert!(d.loop_product(d.base_angle()).unwrap().is_identity());

    // independent monomials x^-1 y^-2 and x^2 y^-1
    let th = RingAutomorphism::new(
        s("1 - 2*t^3*x^-1*y^-2 - t^3*x^2*y^-1", 3),
        s("1 + t^3*x^-1*y^-2 - 2*t^3*x^2*y^-1", 3),
    )
    .unwrap();
    let rays = deviation_to_walls(&th, 3).unwrap();
    assert_eq!(rays.len(), 2);

    let bad = RingAutomorphism::new(s("1 + t^2", 2), s("1", 2)).unwrap();
    assert!(matches!(
        deviation_to_walls(&bad, 2),
        Err(Error::NonHamiltonian(_))
    ));
    let skew = RingAutomorphism::new(s("1 + t^2*x*y", 2), s("1 + t^2*x*y", 2)).unwrap();
    assert!(matches!(
        deviation_to_walls(&skew, 2),
        Err(Error::Internal(_))
    ));
    let low = RingAutomorphism::new(s("1 + t*x*y", 2), s("1 - t*x*y", 2)).unwrap();
    assert!(deviation_to_walls(&low, 2).is_err());
}

#[test]
fn non_primitive_deviation_merges_onto_primitive_ray() {
    let th = RingAutomorphism::new(
        s("1 - t^2*x^-1*y^-1 + 4*t^2*x^-2*y^-2", 2),
        s("1 + t^2*x^-1*y^-1 - 4*t^2*x^-2*y^-2", 2),
    )
    .unwrap();
    let rays = deviation_to_walls(&th, 2).unwrap();
    assert_eq!(rays.len(), 1);
    assert_eq!(rays[0].m_prim, (-1, -1));
    assert_eq!(rays[0].f, s("1 + t^2*x^-1*y^-1 - 4*t^2*x^-2*y^-2", 2));
}

#[test]
fn scatter_ell1_adds_one_ray() {
    for order in 1..=8 {
        let out = ell1(order).scatter().unwrap();
        let added: Vec<_> = out.added_rays().collect();
        if order < 2 {
            assert!(added.is_empty());
            continue;
        }
        assert_eq!(added.len(), 1);
        assert_eq!(added[0].dir(), (1, 1));
        assert_eq!(added[0].f, s("1 + t^2*x^-1*y^-1", order));
        assert_eq!(out.walls().iter().filter(|w| !w.added).count(), 2);
    }
}

#[test]
fn symplectic_examples() {
    assert!(RingAutomorphism::identity(3).is_symplectic());
    let w = Wall::ray((1, 2), s("1 + t*x^-1*y^-2 - 2/3*t^2*x^-2*y^-4", 3)).unwrap();
    assert!(crossing_automorphism(&w, (2, -1)).unwrap().is_symplectic());
    let bad = RingAutomorphism::new(s("1 + t*x", 1), s("1", 1)).unwrap();
    assert!(!bad.is_symplectic());
    let not_unit = RingAutomorphism {
        ux: s("2", 1),
        uy: s("1", 1),
    };
    assert!(!not_unit.is_symplectic());
}

#[test]
fn base_angle_avoids_supports() {
    let f = |m: Vec2| Wall::new(WallKind::Ray, m, TruncatedSeries::one(1)).unwrap();
    let cases: Vec<Vec<Wall>> = vec![
        vec![],
        vec![f((1, 0))],
        vec![f((1, 0)), f((-1, 0))],
        vec![f((1, 0)), f((0, 1))],
        vec![f((1, 0)), f((0, 1)), f((-1, -1))],
        vec![f((1, 2)), f((1, 3)), f((2, 5))],
    ];
    for walls in cases {
        let d = ScatteringDiagram::new(1, walls);
        let b = d.base_angle();
        assert!(d.crossings(b).is_ok(), "{b:?}");
    }
}

#[test]
fn diagram_document_round_trip() {
    let d = ell1(4).scatter().unwrap();
    let text = write_diagram(&d);
    let back = parse_diagram(&text, None).unwrap();
    assert_eq!(write_diagram(&back), text);
    assert!(text.contains("\"f\": \"1 + t^2*x^-1*y^-1\""));
    assert!(text.contains("\"added\": true"));
}

#[test]
fn diagram_parse_errors_have_positions() {
    let src = "{\n  \"order\": 3,\n  \"walls\": [\n    {\"kind\": \"line\", \"dir\": [1, 0], \"f\": \"1 + t*q\"}\n  ]\n}\n";
    match parse_diagram(src, None) {
        Err(Error::Parse { line: 4, col, .. }) => {
            assert_eq!(&src.lines().nth(3).unwrap()[col - 1..col], "q")
        }
        other => panic!("{other:?}"),
    }
    match parse_diagram("{\"order\": 3, \"walls\": [", None) {
        Err(Error::Parse { line: 1, .. }) => {}
        other => panic!("{other:?}"),
    }
    assert!(parse_diagram(
        "{\"order\": 3, \"walls\": [{\"kind\": \"ray\", \"dir\": [2, 2], \"f\": \"1\"}]}",
        None
    )
    .is_err());
}
