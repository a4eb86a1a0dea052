use std::collections::BTreeSet;

use crate::lattice::{self, IMat, IVec};
use crate::{Error, Result};

/// A supporting hyperplane `⟨normal, x⟩ ≥ offset` with inner primitive normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: IVec,
    pub offset: i64,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// Full-dimensional lattice polytope with its face lattice.
///
/// Vertices are kept in lexicographic order, so two polytopes are equal
/// exactly when their vertex sets agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<IVec>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

impl LatticePolytope {
    /// Convex hull of `points` (duplicates and non-extreme points allowed).
    pub fn new(points: &[IVec]) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::BadArgument("empty point set".into()));
        };
        let dim = first.len();
        if dim == 0 || points.iter().any(|p| p.len() != dim) {
            return Err(Error::BadArgument(
                "points must share a positive dimension".into(),
            ));
        }
        let pts: Vec<IVec> = points
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        if affine_rank(&pts) != dim {
            return Err(Error::BadArgument(format!("points do not span R^{dim}")));
        }
        let planes = supporting_planes(&pts, dim);
        let vertices: Vec<IVec> = pts
            .iter()
            .filter(|p| {
                let normals: IMat = planes
                    .iter()
                    .filter(|(n, c)| lattice::dot(n, p) == *c)
                    .map(|(n, _)| n.clone())
                    .collect();
                lattice::rank(&normals) == dim
            })
            .cloned()
            .collect();
        let facets: Vec<Facet> = planes
            .into_iter()
            .map(|(normal, offset)| {
                let vs = (0..vertices.len())
                    .filter(|&i| lattice::dot(&normal, &vertices[i]) == offset)
                    .collect();
                Facet {
                    normal,
                    offset,
                    vertices: vs,
                }
            })
            .collect();
        let faces = face_lattice(&vertices, &facets);
        Ok(LatticePolytope {
            dim,
            vertices,
            facets,
            faces,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[IVec] {
        &self.vertices
    }

    /// Facets sorted by normal.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// All nonempty faces including the polytope itself.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets
            .iter()
            .all(|f| lattice::dot(&f.normal, x) >= f.offset)
    }

    pub fn is_interior(&self, x: &[i64]) -> bool {
        self.facets
            .iter()
            .all(|f| lattice::dot(&f.normal, x) > f.offset)
    }

    /// Lattice points in lexicographic order.
    pub fn lattice_points(&self) -> Vec<IVec> {
        let lo: IVec = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).min().unwrap_or(0))
            .collect();
        let hi: IVec = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i]).max().unwrap_or(0))
            .collect();
        let mut out = Vec::new();
        let mut cur = lo.clone();
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == self.dim {
                    out.sort();
                    return out;
                }
                if cur[i] < hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = lo[i];
                i += 1;
            }
        }
    }

    /// `dim!` times the Euclidean volume; 1 for a unimodular simplex.
    pub fn normalized_volume(&self) -> i64 {
        normalized_volume(&self.vertices, self.dim)
    }

    /// Vertices of a facet in lattice coordinates on its hyperplane.
    pub fn facet_coordinates(&self, facet: usize) -> Vec<IVec> {
        let f = &self.facets[facet];
        let h = hyperplane_chart(&f.normal);
        f.vertices
            .iter()
            .map(|&i| lattice::mul_vec(&h, &self.vertices[i]))
            .collect()
    }
}

/// `(d-1) × d` matrix restricting to a lattice isomorphism from any level
/// set of `⟨n, ·⟩` onto `Z^{d-1}`; `n` must be primitive.
pub fn hyperplane_chart(n: &[i64]) -> IMat {
    let m = lattice::complete_to_last(n).expect("primitive normal");
    let u = lattice::transpose(&lattice::inverse(&m).expect("unimodular"));
    u[..n.len() - 1].to_vec()
}

pub(crate) fn affine_rank(pts: &[IVec]) -> usize {
    if pts.len() <= 1 {
        return 0;
    }
    let diffs: IMat = pts[1..]
        .iter()
        .map(|p| lattice::sub_vec(p, &pts[0]))
        .collect();
    lattice::rank(&diffs)
}

/// Every facet-defining `(n, c)` with `⟨n, p⟩ ≥ c` on all points.
fn supporting_planes(pts: &[IVec], dim: usize) -> Vec<(IVec, i64)> {
    let mut found = BTreeSet::new();
    for idx in lattice::subsets(pts.len(), dim) {
        let base = &pts[idx[0]];
        let diffs: IMat = idx[1..]
            .iter()
            .map(|&i| lattice::sub_vec(&pts[i], base))
            .collect();
        if !diffs.is_empty() && lattice::rank(&diffs) != dim - 1 {
            continue;
        }
        let k = lattice::integer_kernel(&diffs, dim);
        if lattice::cols(&k) != 1 {
            continue;
        }
        let n: IVec = k.iter().map(|r| r[0]).collect();
        let c = lattice::dot(&n, base);
        let vals: Vec<i64> = pts.iter().map(|p| lattice::dot(&n, p)).collect();
        if vals.iter().all(|&v| v >= c) {
            found.insert((n, c));
        } else if vals.iter().all(|&v| v <= c) {
            found.insert((n.iter().map(|x| -x).collect(), -c));
        }
    }
    found.into_iter().collect()
}

fn face_lattice(vertices: &[IVec], facets: &[Facet]) -> Vec<Face> {
    let mut sets: BTreeSet<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
    let mut frontier: Vec<Vec<usize>> = sets.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        for f in facets {
            let meet: Vec<usize> = s
                .iter()
                .copied()
                .filter(|i| f.vertices.contains(i))
                .collect();
            if !meet.is_empty() && sets.insert(meet.clone()) {
                frontier.push(meet);
            }
        }
    }
    sets.insert((0..vertices.len()).collect());
    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let pts: Vec<IVec> = vs.iter().map(|&i| vertices[i].clone()).collect();
            Face {
                dim: affine_rank(&pts),
                vertices: vs,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    faces
}

pub(crate) fn normalized_volume(vertices: &[IVec], dim: usize) -> i64 {
    match dim {
        0 => 1,
        1 => {
            let xs = vertices.iter().map(|v| v[0]);
            xs.clone().max().unwrap_or(0) - xs.min().unwrap_or(0)
        }
        _ => {
            let planes = supporting_planes(vertices, dim);
            let apex = &vertices[0];
            let mut total = 0;
            for (n, c) in planes {
                let height = lattice::dot(&n, apex) - c;
                if height == 0 {
                    continue;
                }
                let h = hyperplane_chart(&n);
                let face: Vec<IVec> = vertices
                    .iter()
                    .filter(|v| lattice::dot(&n, v) == c)
                    .map(|v| lattice::mul_vec(&h, v))
                    .collect();
                total += height * normalized_volume(&face, dim - 1);
            }
            total
        }
    }
}

/// True iff the origin is interior and every facet sits at lattice distance 1.
pub fn is_reflexive(p: &LatticePolytope) -> Result<bool> {
    let origin = vec![0; p.dim];
    if !p.is_interior(&origin) {
        return Err(Error::BadArgument("origin is not an interior point".into()));
    }
    Ok(p.facets.iter().all(|f| f.offset == -1))
}

/// `{n : ⟨m, n⟩ ≥ -1 for all m ∈ Δ}`, whose vertices are the facet normals.
pub fn polar_dual(p: &LatticePolytope) -> Result<LatticePolytope> {
    if !is_reflexive(p)? {
        return Err(Error::BadArgument("polytope is not reflexive".into()));
    }
    let normals: Vec<IVec> = p.facets.iter().map(|f| f.normal.clone()).collect();
    LatticePolytope::new(&normals)
}
