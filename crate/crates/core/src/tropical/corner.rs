use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::curve::{primitive_direction, CurveEdge, Point2, TropicalCurve2D};
use super::polynomial::TropicalPolynomial;
use crate::lattice::{self, IVec};
use crate::{Error, Rational, Result};

/// Two-dimensional cell of the regular subdivision of the Newton polygon.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdivisionCell {
    /// Corners, counterclockwise, starting from the smallest.
    pub polygon: Vec<IVec>,
    /// Every exponent whose lifted point lies on the cell's lower face.
    pub points: Vec<IVec>,
    /// Where the terms of the cell attain the minimum together.
    pub vertex: Point2,
}

fn q(x: i64) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

fn cross(o: &[i64], a: &[i64], b: &[i64]) -> i64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Counterclockwise corners of the convex hull, collinear points dropped.
pub(crate) fn convex_hull(points: &[IVec]) -> Vec<IVec> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<IVec> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<IVec> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn two_dim_terms(g: &TropicalPolynomial) -> Result<Vec<(IVec, Rational)>> {
    if g.nvars() != 2 {
        return Err(Error::BadArgument(format!(
            "expected 2 variables, got {}",
            g.nvars()
        )));
    }
    if g.terms().len() < 2 {
        return Err(Error::BadArgument(
            "a corner locus needs at least two terms".into(),
        ));
    }
    Ok(g.terms()
        .iter()
        .map(|(p, c)| (p.clone(), c.clone()))
        .collect())
}

/// Lower faces of the lifting `p ↦ c_p`. Empty when the exponents are collinear.
pub fn newton_subdivision(g: &TropicalPolynomial) -> Result<Vec<SubdivisionCell>> {
    let pts = two_dim_terms(g)?;
    let n = pts.len();
    let mut faces: BTreeMap<Vec<usize>, [Rational; 2]> = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (pi, pj, pk) = (&pts[i].0, &pts[j].0, &pts[k].0);
                let det = cross(pi, pj, pk);
                if det == 0
                    || faces
                        .keys()
                        .any(|f| [i, j, k].iter().all(|x| f.contains(x)))
                {
                    continue;
                }
                // ⟨α, p⟩ + β = c on the three lifted points
                let (d1, d2) = (lattice::sub_vec(pj, pi), lattice::sub_vec(pk, pi));
                let (r1, r2) = (&pts[j].1 - &pts[i].1, &pts[k].1 - &pts[i].1);
                let det = q(det);
                let alpha = [
                    (&r1 * q(d2[1]) - &r2 * q(d1[1])) / &det,
                    (&r2 * q(d1[0]) - &r1 * q(d2[0])) / &det,
                ];
                let beta = &pts[i].1 - &alpha[0] * q(pi[0]) - &alpha[1] * q(pi[1]);
                let mut on = Vec::new();
                let mut below = false;
                for (m, (p, c)) in pts.iter().enumerate() {
                    let h = &alpha[0] * q(p[0]) + &alpha[1] * q(p[1]) + &beta;
                    if *c < h {
                        below = true;
                        break;
                    }
                    if *c == h {
                        on.push(m);
                    }
                }
                if !below {
                    faces.insert(on, alpha);
                }
            }
        }
    }
    let mut cells: Vec<SubdivisionCell> = faces
        .into_iter()
        .map(|(on, alpha)| {
            let points: Vec<IVec> = on.iter().map(|&m| pts[m].0.clone()).collect();
            SubdivisionCell {
                polygon: convex_hull(&points),
                points,
                vertex: [-&alpha[0], -&alpha[1]],
            }
        })
        .collect();
    cells.sort_by(|a, b| a.vertex.cmp(&b.vertex));
    Ok(cells)
}

/// Non-linearity locus of `g` in `Q²`, one edge per edge of the Newton
/// subdivision with weight its lattice length.
pub fn corner_locus_2d(g: &TropicalPolynomial) -> Result<TropicalCurve2D> {
    let pts = two_dim_terms(g)?;
    let cells = newton_subdivision(g)?;
    if cells.is_empty() {
        return Ok(parallel_lines(&pts));
    }
    let mut owners: BTreeMap<(IVec, IVec), Vec<usize>> = BTreeMap::new();
    for (ci, cell) in cells.iter().enumerate() {
        let m = cell.polygon.len();
        for s in 0..m {
            let (a, b) = (&cell.polygon[s], &cell.polygon[(s + 1) % m]);
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            owners.entry(key).or_default().push(ci);
        }
    }
    let mut edges = Vec::new();
    for ((a, b), owned) in owners {
        let e = lattice::sub_vec(&b, &a);
        let weight = lattice::gcd_vec(&e) as u64;
        let normal = lattice::primitive_vec(&[-e[1], e[0]]);
        match owned.as_slice() {
            [c] => {
                // inner normal of the boundary edge
                let inside = cells[*c]
                    .polygon
                    .iter()
                    .map(|p| lattice::dot(&normal, &lattice::sub_vec(p, &a)))
                    .find(|&s| s != 0);
                let direction = match inside {
                    Some(s) if s > 0 => normal,
                    Some(_) => normal.iter().map(|x| -x).collect(),
                    None => return Err(Error::Internal("degenerate subdivision cell".into())),
                };
                edges.push(CurveEdge::Ray {
                    from: *c,
                    direction,
                    weight,
                });
            }
            [c, d] => {
                let (va, vb) = (&cells[*c].vertex, &cells[*d].vertex);
                let diff = [&vb[0] - &va[0], &vb[1] - &va[1]];
                let direction = primitive_direction(&diff)
                    .ok_or_else(|| Error::Internal("adjacent cells share a vertex".into()))?;
                if lattice::dot(&direction, &e) != 0 {
                    return Err(Error::Internal(
                        "bounded edge is not dual to its Newton edge".into(),
                    ));
                }
                edges.push(CurveEdge::Segment {
                    from: *c,
                    to: *d,
                    direction,
                    weight,
                });
            }
            _ => return Err(Error::Internal("Newton edge in more than two cells".into())),
        }
    }
    edges.sort();
    Ok(TropicalCurve2D {
        vertices: cells.into_iter().map(|c| c.vertex).collect(),
        edges,
    })
}

/// Collinear exponents: the locus is a family of parallel lines.
fn parallel_lines(pts: &[(IVec, Rational)]) -> TropicalCurve2D {
    let origin = &pts[0].0;
    let u = lattice::primitive_vec(&lattice::sub_vec(&pts[1].0, origin));
    // position along the line, reduced to its lower hull in the (s, c) plane
    let mut line: Vec<(i64, Rational)> = pts
        .iter()
        .map(|(p, c)| {
            let d = lattice::sub_vec(p, origin);
            let s = if u[0] != 0 { d[0] / u[0] } else { d[1] / u[1] };
            (s, c.clone())
        })
        .collect();
    line.sort();
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for p in line {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord from a to p
            let lhs = (&b.1 - &a.1) * q(p.0 - a.0);
            let rhs = (&p.1 - &a.1) * q(b.0 - a.0);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let uu = q(lattice::dot(&u, &u));
    let direction = lattice::primitive_vec(&[-u[1], u[0]]);
    let mut edges: Vec<CurveEdge> = hull
        .windows(2)
        .map(|w| {
            let (si, ci) = &w[0];
            let (sj, cj) = &w[1];
            // ⟨p_i, x⟩ + c_i = ⟨p_j, x⟩ + c_j, i.e. ⟨u, x⟩ = t below
            let t = (ci - cj) / q(sj - si);
            let through = [&t * q(u[0]) / &uu, &t * q(u[1]) / &uu];
            CurveEdge::Line {
                through,
                direction: direction.clone(),
                weight: (sj - si) as u64,
            }
        })
        .collect();
    edges.sort();
    TropicalCurve2D {
        vertices: Vec::new(),
        edges,
    }
}
