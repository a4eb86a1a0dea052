use std::collections::BTreeMap;

use super::manifold::{Cell, TropicalManifold};
use super::polytope::{hyperplane_chart, is_reflexive, LatticePolytope};
use crate::lattice::{self, IMat, IVec};
use crate::{Error, Result};

fn invalid(axiom: &str, msg: impl Into<String>) -> Error {
    Error::Validation {
        axiom: axiom.into(),
        msg: msg.into(),
    }
}

/// Projection `M → M/Rv ≅ Z^{N-1}` used as the chart at a boundary vertex.
pub(crate) fn vertex_chart(v: &[i64]) -> IMat {
    let c = lattice::complete_to_last(v)
        .expect("boundary points of a reflexive polytope are primitive");
    c[..v.len() - 1].to_vec()
}

/// `(B, 𝒫)` with `B = ∂Δ`. Without a subdivision the cells are the facets.
///
/// Cells get facet charts, vertices get the projection along the vertex.
/// A subdivision is checked for the three decomposition axioms: covering
/// (cells are full-dimensional in a facet and fill it), intersection (cells
/// meet in common faces, every codimension-one face lies in two cells),
/// and faces (listed points are vertices).
pub fn boundary_complex(
    delta: &LatticePolytope,
    subdivision: Option<&[Vec<IVec>]>,
) -> Result<TropicalManifold> {
    if !is_reflexive(delta)? {
        return Err(Error::BadArgument(
            "boundary complexes need a reflexive polytope".into(),
        ));
    }
    let n = delta.dim() - 1;
    let facets = delta.facets();
    // (points, facet index) per cell
    let cells: Vec<(Vec<IVec>, usize)> = match subdivision {
        None => facets
            .iter()
            .enumerate()
            .map(|(i, f)| {
                (
                    f.vertices
                        .iter()
                        .map(|&v| delta.vertices()[v].clone())
                        .collect(),
                    i,
                )
            })
            .collect(),
        Some(sub) => validate_subdivision(delta, sub)?,
    };
    let mut index: BTreeMap<IVec, usize> = BTreeMap::new();
    for (pts, _) in &cells {
        for p in pts {
            index.insert(p.clone(), 0);
        }
    }
    let points: Vec<IVec> = index.keys().cloned().collect();
    for (i, p) in points.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    let projections: Vec<IMat> = points.iter().map(|p| vertex_chart(p)).collect();
    let mut out_cells = Vec::with_capacity(cells.len());
    let mut fans = BTreeMap::new();
    for (ci, (pts, fi)) in cells.iter().enumerate() {
        let h = hyperplane_chart(&facets[*fi].normal);
        let vs: Vec<usize> = pts.iter().map(|p| index[p]).collect();
        for &v in &vs {
            let images = pts
                .iter()
                .map(|p| lattice::mul_vec(&projections[v], p))
                .collect();
            fans.insert((v, ci), images);
        }
        out_cells.push(Cell {
            name: format!("c{ci}"),
            vertices: vs,
            coords: pts.iter().map(|p| lattice::mul_vec(&h, p)).collect(),
        });
    }
    let names = (0..points.len()).map(|i| format!("v{i}")).collect();
    let m = TropicalManifold::new(n, names, out_cells, fans)?;
    if subdivision.is_some() {
        for (vs, info) in m.faces() {
            if info.dim + 1 == n && info.cells.len() != 2 {
                return Err(invalid(
                    "intersection",
                    format!(
                        "face {} lies in {} cells",
                        m.face_label(vs),
                        info.cells.len()
                    ),
                ));
            }
        }
    }
    Ok(m.with_embedding(points))
}

fn validate_subdivision(
    delta: &LatticePolytope,
    sub: &[Vec<IVec>],
) -> Result<Vec<(Vec<IVec>, usize)>> {
    let facets = delta.facets();
    let n = delta.dim() - 1;
    let mut out = Vec::with_capacity(sub.len());
    let mut volume = vec![0i64; facets.len()];
    let mut per_facet: Vec<Vec<usize>> = vec![Vec::new(); facets.len()];
    let mut polys = Vec::with_capacity(sub.len());
    for (ci, pts) in sub.iter().enumerate() {
        if pts.iter().any(|p| p.len() != delta.dim()) {
            return Err(Error::BadArgument(format!(
                "cell {ci} has points of the wrong dimension"
            )));
        }
        let Some(fi) = facets
            .iter()
            .position(|f| pts.iter().all(|p| lattice::dot(&f.normal, p) == f.offset))
        else {
            return Err(invalid(
                "covering",
                format!("cell {ci} is not contained in a facet"),
            ));
        };
        let h = hyperplane_chart(&facets[fi].normal);
        let local: Vec<IVec> = pts.iter().map(|p| lattice::mul_vec(&h, p)).collect();
        let poly = LatticePolytope::new(&local)
            .map_err(|_| invalid("covering", format!("cell {ci} is not {n}-dimensional")))?;
        if poly.vertices().len() != pts.len() {
            return Err(invalid(
                "faces",
                format!("cell {ci} lists a point that is not a vertex"),
            ));
        }
        volume[fi] += poly.normalized_volume();
        per_facet[fi].push(ci);
        polys.push((poly, fi, h));
        out.push((pts.clone(), fi));
    }
    for (fi, f) in facets.iter().enumerate() {
        let h = hyperplane_chart(&f.normal);
        let local: Vec<IVec> = f
            .vertices
            .iter()
            .map(|&v| lattice::mul_vec(&h, &delta.vertices()[v]))
            .collect();
        let expected = LatticePolytope::new(&local)?.normalized_volume();
        if volume[fi] != expected {
            return Err(invalid(
                "covering",
                format!(
                    "cells in facet {fi} have total volume {} instead of {expected}",
                    volume[fi]
                ),
            ));
        }
        // a vertex of one cell may only meet another cell at a vertex
        for &a in &per_facet[fi] {
            let (poly, _, h) = &polys[a];
            for &b in &per_facet[fi] {
                if a == b {
                    continue;
                }
                for p in &sub[b] {
                    let x = lattice::mul_vec(h, p);
                    if poly.contains(&x) && !poly.vertices().contains(&x) {
                        return Err(invalid(
                            "intersection",
                            format!("a vertex of cell {b} lies inside cell {a}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(out)
}
