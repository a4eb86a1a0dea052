use std::collections::{BTreeMap, BTreeSet};

use super::manifold::TropicalManifold;
use super::polytope::LatticePolytope;
use crate::lattice::{self, IMat, IVec};
use crate::{Error, Result};

/// Multi-valued piecewise linear function: at each vertex `v`, one integral
/// slope `s_{v,σ}` per cell `σ ∋ v`, so that `φ_v(y) = ⟨s_{v,σ}, y⟩` on the
/// cone of `σ` in the fan at `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MplFunction {
    slopes: BTreeMap<(usize, usize), IVec>,
}

impl MplFunction {
    pub fn new(b: &TropicalManifold, slopes: BTreeMap<(usize, usize), IVec>) -> Result<Self> {
        for v in 0..b.vertex_names().len() {
            for &c in b.cells_at(v) {
                match slopes.get(&(v, c)) {
                    Some(s) if s.len() == b.dim() => {}
                    _ => {
                        return Err(Error::BadArgument(format!(
                            "missing slope for {} on {}",
                            b.vertex_names()[v],
                            b.cells()[c].name
                        )))
                    }
                }
            }
        }
        if slopes.len() != b.fans().len() {
            return Err(Error::BadArgument(
                "slope given for a vertex outside its cell".into(),
            ));
        }
        Ok(MplFunction { slopes })
    }

    pub fn slope(&self, v: usize, cell: usize) -> &IVec {
        &self.slopes[&(v, cell)]
    }

    pub fn slopes(&self) -> &BTreeMap<(usize, usize), IVec> {
        &self.slopes
    }

    pub fn scaled(&self, c: i64) -> MplFunction {
        let slopes = self
            .slopes
            .iter()
            .map(|(k, s)| (*k, s.iter().map(|x| c * x).collect()))
            .collect();
        MplFunction { slopes }
    }

    /// Function induced on a boundary complex by integer heights on its
    /// vertices: on the cone over `σ` it is the linear form `η_σ` taking the
    /// prescribed heights, read off in the chart at each vertex.
    pub fn from_heights(b: &TropicalManifold, heights: &[i64]) -> Result<Self> {
        let points = b
            .embedding()
            .ok_or_else(|| Error::BadArgument("complex has no polytope embedding".into()))?;
        if heights.len() != points.len() {
            return Err(Error::BadArgument(format!(
                "expected {} heights, got {}",
                points.len(),
                heights.len()
            )));
        }
        let big_n = points[0].len();
        let mut eta = Vec::with_capacity(b.cells().len());
        for cell in b.cells() {
            let p: IMat = (0..big_n)
                .map(|r| cell.vertices.iter().map(|&v| points[v][r]).collect())
                .collect();
            let q: IMat = vec![cell.vertices.iter().map(|&v| heights[v]).collect()];
            let sol = lattice::solve_left(&lattice::to_q(&p), &lattice::to_q(&q))
                .and_then(|x| lattice::from_q(&x))
                .ok_or_else(|| {
                    Error::BadArgument(format!("heights are not integral-linear on {}", cell.name))
                })?;
            eta.push(sol.into_iter().next().expect("one row"));
        }
        let mut slopes = BTreeMap::new();
        for (v, p) in points.iter().enumerate() {
            let chart = lattice::complete_to_last(p).expect("primitive");
            let dual = lattice::transpose(&lattice::inverse(&chart).expect("unimodular"));
            let around = b.cells_at(v);
            let reference = &eta[around[0]];
            for &c in around {
                let xi = lattice::sub_vec(&eta[c], reference);
                let mut s = lattice::mul_vec(&dual, &xi);
                debug_assert_eq!(s.last(), Some(&0));
                s.pop();
                slopes.insert((v, c), s);
            }
        }
        MplFunction::new(b, slopes)
    }

    /// The function with all heights 1 (anticanonical polarisation).
    pub fn batyrev(b: &TropicalManifold) -> Result<Self> {
        let n = b.embedding().map_or(0, |p| p.len());
        MplFunction::from_heights(b, &vec![1; n])
    }
}

/// Strict convexity at one vertex, max convention: for `w` in `σ'`,
/// `⟨s_σ, S_v(w)⟩ ≤ ⟨s_σ', S_v(w)⟩` with equality exactly when `w ∈ σ`.
pub fn is_strictly_convex_at(b: &TropicalManifold, phi: &MplFunction, v: usize) -> bool {
    let around = b.cells_at(v);
    for &other in around {
        let cell = &b.cells()[other];
        let images = b.fan(v, other).expect("fan");
        let own = phi.slope(v, other);
        for &c in around {
            if c == other {
                continue;
            }
            let s = phi.slope(v, c);
            for (k, &w) in cell.vertices.iter().enumerate() {
                let (lo, hi) = (lattice::dot(s, &images[k]), lattice::dot(own, &images[k]));
                let on_both = b.cells()[c].contains(w);
                if (on_both && lo != hi) || (!on_both && lo >= hi) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_strictly_convex(b: &TropicalManifold, phi: &MplFunction) -> bool {
    (0..b.vertex_names().len()).all(|v| is_strictly_convex_at(b, phi, v))
}

/// `v̌ = {x : ⟨x, y⟩ ≥ -φ_v(y)} = conv{-s_{v,σ}}`.
pub fn newton_polytope(
    b: &TropicalManifold,
    phi: &MplFunction,
    v: usize,
) -> Result<LatticePolytope> {
    if !is_strictly_convex_at(b, phi, v) {
        return Err(Error::Convexity(format!(
            "φ is not strictly convex at {}",
            b.vertex_names()[v]
        )));
    }
    let pts: Vec<IVec> = b
        .cells_at(v)
        .iter()
        .map(|&c| phi.slope(v, c).iter().map(|x| -x).collect())
        .collect();
    LatticePolytope::new(&pts).map_err(|e| Error::Convexity(e.to_string()))
}

/// Kink of `φ` across a codimension-one face, measured from vertex `v` and
/// expressed in the dual lattice of the first adjacent cell.
pub fn kink(b: &TropicalManifold, phi: &MplFunction, face: &[usize], v: usize) -> Option<IVec> {
    let (s, t) = b.cells_across(face)?;
    if !face.contains(&v) {
        return None;
    }
    let a = b.chart(v, s)?;
    let d = lattice::sub_vec(phi.slope(v, t), phi.slope(v, s));
    Some(lattice::mul_vec(&lattice::transpose(a), &d))
}

/// The local representatives glue: every kink is the same seen from each
/// vertex of its face.
pub fn kinks_agree(b: &TropicalManifold, phi: &MplFunction) -> bool {
    b.faces()
        .iter()
        .filter(|(_, f)| f.dim + 1 == b.dim() && f.cells.len() == 2)
        .all(|(face, _)| {
            let ks: BTreeSet<IVec> = face.iter().filter_map(|&v| kink(b, phi, face, v)).collect();
            ks.len() == 1
        })
}

/// Newton polytope of a PL function given on an explicit complete fan:
/// `cones[i]` lists the rays of the i-th maximal cone, `slopes[i]` its slope.
pub fn fan_newton_polytope(cones: &[Vec<IVec>], slopes: &[IVec]) -> Result<LatticePolytope> {
    if cones.is_empty() || cones.len() != slopes.len() {
        return Err(Error::Convexity("need one slope per maximal cone".into()));
    }
    let n = slopes[0].len();
    let cones: Vec<Vec<IVec>> = cones
        .iter()
        .map(|c| c.iter().map(|r| lattice::primitive_vec(r)).collect())
        .collect();
    let mut walls: BTreeMap<Vec<IVec>, usize> = BTreeMap::new();
    for cone in &cones {
        if cone.iter().any(|r| r.len() != n) || lattice::rank(cone) != n {
            return Err(Error::Convexity("cones must be full-dimensional".into()));
        }
        for w in cone_facets(cone, n) {
            *walls.entry(w).or_default() += 1;
        }
    }
    if walls.values().any(|&k| k != 2) {
        return Err(Error::Convexity("fan is not complete".into()));
    }
    for (j, cone) in cones.iter().enumerate() {
        for r in cone {
            for (i, other) in cones.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (lo, hi) = (lattice::dot(&slopes[i], r), lattice::dot(&slopes[j], r));
                let shared = other.contains(r);
                if (shared && lo != hi) || (!shared && lo >= hi) {
                    return Err(Error::Convexity(
                        "function is not strictly convex on the fan".into(),
                    ));
                }
            }
        }
    }
    let pts: Vec<IVec> = slopes
        .iter()
        .map(|s| s.iter().map(|x| -x).collect())
        .collect();
    LatticePolytope::new(&pts).map_err(|e| Error::Convexity(e.to_string()))
}

/// Ray subsets spanning the facets of a full-dimensional cone.
fn cone_facets(rays: &[IVec], n: usize) -> BTreeSet<Vec<IVec>> {
    let mut out = BTreeSet::new();
    for idx in lattice::subsets(rays.len(), n - 1) {
        let sub: IMat = idx.iter().map(|&i| rays[i].clone()).collect();
        if !sub.is_empty() && lattice::rank(&sub) != n - 1 {
            continue;
        }
        let k = lattice::integer_kernel(&sub, n);
        if lattice::cols(&k) != 1 {
            continue;
        }
        let u: IVec = k.iter().map(|r| r[0]).collect();
        let vals: Vec<i64> = rays.iter().map(|r| lattice::dot(&u, r)).collect();
        if vals.iter().all(|&x| x >= 0) || vals.iter().all(|&x| x <= 0) {
            let mut face: Vec<IVec> = rays
                .iter()
                .zip(&vals)
                .filter(|(_, &x)| x == 0)
                .map(|(r, _)| r.clone())
                .collect();
            face.sort();
            out.insert(face);
        }
    }
    out
}
