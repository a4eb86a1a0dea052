use super::*;
use crate::lattice;

#[test]
fn simplex_face_counts() {
    let p = LatticePolytope::new(&[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
        .unwrap();
    assert_eq!(p.faces().len(), 15);
    let counts: Vec<usize> = (0..=3).map(|k| p.faces_of_dim(k).count()).collect();
    assert_eq!(counts, vec![4, 6, 4, 1]);
    assert_eq!(p.normalized_volume(), 1);
}

#[test]
fn cube_faces_and_volume() {
    let mut pts = Vec::new();
    for a in [0, 2] {
        for b in [0, 2] {
            for c in [0, 2] {
                pts.push(vec![a, b, c]);
            }
        }
    }
    // interior and edge points are not vertices
    pts.push(vec![1, 1, 1]);
    pts.push(vec![1, 0, 0]);
    let p = LatticePolytope::new(&pts).unwrap();
    assert_eq!(p.vertices().len(), 8);
    assert_eq!(p.facets().len(), 6);
    assert_eq!(p.faces_of_dim(1).count(), 12);
    assert_eq!(p.normalized_volume(), 48);
    assert_eq!(p.lattice_points().len(), 27);
}

#[test]
fn hyperplane_chart_is_unimodular() {
    for n in [
        vec![1, 2, 3],
        vec![-1, -1, -1, -1],
        vec![0, 5, 2],
        vec![3, -2],
    ] {
        let h = hyperplane_chart(&n);
        let mut full = h.clone();
        full.push(n.clone());
        assert_eq!(lattice::det(&full).abs(), 1, "{n:?}");
    }
}

#[test]
fn chains_compose() {
    let b = examples::focus_focus();
    let c = b.chain(&["a", "s1", "b", "s2", "a"]).unwrap();
    let twice = c.then(&c);
    assert_eq!(twice.vertices.len(), 5);
    assert_eq!(twice.cells.len(), 4);
    assert_eq!(c.reversed().reversed(), c);
    let t = b.monodromy(&c).unwrap().matrix;
    assert_eq!(b.monodromy(&twice).unwrap().matrix, lattice::mul(&t, &t));
}
