//! Standard complexes used in tests, the acceptance run and the CLI.

use std::collections::BTreeMap;

use super::manifold::{Cell, TropicalManifold};
use super::mpl::MplFunction;
use super::polytope::LatticePolytope;
use crate::lattice::IVec;

const POLYGONS: [&[(i64, i64)]; 16] = [
    &[(-1, 0), (0, -1), (1, 1)],
    &[(-1, 0), (0, -1), (1, 2)],
    &[(-1, 0), (0, -1), (2, 3)],
    &[(-1, -2), (3, 2), (-1, 0)],
    &[(-1, -3), (2, 3), (-1, 0)],
    &[(-1, -1), (0, -1), (1, 2), (-1, 0)],
    &[(-1, 0), (0, -1), (1, -1), (0, 1)],
    &[(-1, -1), (0, -1), (2, 3), (-1, 0)],
    &[(-1, 0), (0, -1), (2, -1), (0, 1)],
    &[(-2, -1), (0, -1), (3, 2), (-1, 0)],
    &[(-1, 0), (0, -1), (1, 0), (0, 1)],
    &[(-1, -2), (1, 0), (1, 2), (-1, 0)],
    &[(-1, -1), (0, -1), (1, 0), (0, 1), (-1, 0)],
    &[(-1, 0), (0, -1), (1, -1), (1, 1), (0, 1)],
    &[(-1, -1), (0, -1), (2, 1), (0, 1), (-1, 0)],
    &[(-1, -1), (0, -1), (1, 0), (1, 1), (0, 1), (-1, 0)],
];

/// The 16 reflexive polygons up to `GL_2(Z)`.
pub fn reflexive_polygons() -> Vec<LatticePolytope> {
    POLYGONS
        .iter()
        .map(|vs| {
            let pts: Vec<IVec> = vs.iter().map(|&(a, b)| vec![a, b]).collect();
            LatticePolytope::new(&pts).expect("polygon")
        })
        .collect()
}

/// `conv{(-1,…,-1), (d,-1,…,-1), …, (-1,…,-1,d)}` in dimension `d`; the
/// anticanonical polytope of `P^d`.
pub fn fano_simplex(d: usize) -> LatticePolytope {
    let mut pts = vec![vec![-1; d]];
    for i in 0..d {
        let mut p = vec![-1; d];
        p[i] = d as i64;
        pts.push(p);
    }
    LatticePolytope::new(&pts).expect("simplex")
}

/// The triangle for `P^2`.
pub fn p2_triangle() -> LatticePolytope {
    fano_simplex(2)
}

/// The tetrahedron whose boundary carries the quartic K3 example.
pub fn quartic_simplex() -> LatticePolytope {
    fano_simplex(3)
}

/// The 4-simplex whose boundary carries the quintic threefold example.
pub fn quintic_simplex() -> LatticePolytope {
    fano_simplex(4)
}

/// Barycentric coordinates `μ ∈ Z^5_{≥0}`, `Σμ = 5`, of a point of the
/// quintic simplex.
pub fn quintic_barycentric(m: &[i64]) -> [i64; 5] {
    [
        1 - m.iter().sum::<i64>(),
        m[0] + 1,
        m[1] + 1,
        m[2] + 1,
        m[3] + 1,
    ]
}

fn from_barycentric(mu: [i64; 5]) -> IVec {
    mu[1..].iter().map(|x| x - 1).collect()
}

/// Triangulation of `∂Δ` into unimodular simplices: on the facet `μ_j = 0`
/// with the remaining indices in cyclic order `k0, …, k3`, the simplices of
/// the staircase triangulation of `{0 ≤ y1 ≤ y2 ≤ y3 ≤ 5}`, where
/// `μ_{k0} = y1`, `μ_{k1} = y2 - y1`, `μ_{k2} = y3 - y2`, `μ_{k3} = 5 - y3`.
pub fn quintic_triangulation() -> Vec<Vec<IVec>> {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut cells = Vec::new();
    for j in 0..5 {
        let ks: Vec<usize> = (1..5).map(|i| (j + i) % 5).collect();
        for a0 in 0..5 {
            for a1 in 0..5 {
                for a2 in 0..5 {
                    for perm in PERMS {
                        let mut y = [a0, a1, a2];
                        let mut simplex = vec![y];
                        for &axis in &perm {
                            y[axis] += 1;
                            simplex.push(y);
                        }
                        if simplex
                            .iter()
                            .all(|y| 0 <= y[0] && y[0] <= y[1] && y[1] <= y[2] && y[2] <= 5)
                        {
                            cells.push(
                                simplex
                                    .iter()
                                    .map(|y| {
                                        let mut mu = [0i64; 5];
                                        let lam = [y[0], y[1] - y[0], y[2] - y[1], 5 - y[2]];
                                        for (k, l) in ks.iter().zip(lam) {
                                            mu[*k] = l;
                                        }
                                        from_barycentric(mu)
                                    })
                                    .collect(),
                            );
                        }
                    }
                }
            }
        }
    }
    cells
}

/// Heights inducing [`quintic_triangulation`] together with strict convexity
/// across the facets: a large constant plus the squares of all cyclic
/// interval sums of `μ`.
pub fn quintic_height(m: &[i64]) -> i64 {
    let mu = quintic_barycentric(m);
    let mut h = 10_000;
    for start in 0..5 {
        let mut s = 0;
        for len in 0..4 {
            s += mu[(start + len) % 5];
            h += s * s;
        }
    }
    h
}

/// Two unit triangles `σ1 = {a,b,c}`, `σ2 = {a,b,d}` in the plane, with the
/// chart at `b` sheared on `σ2`: a single focus-focus singularity on the
/// edge `ab`.
pub fn focus_focus() -> TropicalManifold {
    let names = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let pos = [vec![0, 0], vec![0, 1], vec![-1, 0], vec![1, 0]];
    let cells = vec![
        Cell {
            name: "s1".into(),
            vertices: vec![0, 1, 2],
            coords: vec![pos[0].clone(), pos[1].clone(), pos[2].clone()],
        },
        Cell {
            name: "s2".into(),
            vertices: vec![0, 1, 3],
            coords: vec![pos[0].clone(), pos[1].clone(), pos[3].clone()],
        },
    ];
    let mut fans = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        for (k, &v) in cell.vertices.iter().enumerate() {
            let images = cell
                .coords
                .iter()
                .map(|x| vec![x[0] - cell.coords[k][0], x[1] - cell.coords[k][1]])
                .collect();
            fans.insert((v, ci), images);
        }
    }
    fans.insert((1, 1), vec![vec![0, -1], vec![0, 0], vec![1, 0]]);
    TropicalManifold::new(2, names, cells, fans).expect("focus-focus")
}

/// `R/nZ` cut into unit segments, with `φ` of kink 1 at every vertex.
pub fn circle(n: usize) -> (TropicalManifold, MplFunction) {
    assert!(n >= 3, "cells are determined by their vertex sets");
    let names = (0..n).map(|i| format!("p{i}")).collect();
    let mut cells = Vec::new();
    let mut fans = BTreeMap::new();
    let mut slopes = BTreeMap::new();
    for i in 0..n {
        let j = (i + 1) % n;
        cells.push(Cell {
            name: format!("e{i}"),
            vertices: vec![i, j],
            coords: vec![vec![0], vec![1]],
        });
        fans.insert((i, i), vec![vec![0], vec![1]]);
        fans.insert((j, i), vec![vec![-1], vec![0]]);
        slopes.insert((i, i), vec![1]);
        slopes.insert((j, i), vec![0]);
    }
    let b = TropicalManifold::new(1, names, cells, fans).expect("circle");
    let phi = MplFunction::new(&b, slopes).expect("slopes");
    (b, phi)
}
