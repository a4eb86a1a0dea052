use std::collections::{BTreeMap, BTreeSet};

use super::polytope::LatticePolytope;
use crate::lattice::{self, IMat, IVec};
use crate::{Error, Result};

/// A maximal cell with explicit lattice coordinates for its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    /// Global vertex indices, ascending.
    pub vertices: Vec<usize>,
    /// `coords[i]` is the position of `vertices[i]`.
    pub coords: Vec<IVec>,
}

impl Cell {
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.position(v).is_some()
    }
}

/// A face of the decomposition, shared by the cells listed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceInfo {
    pub dim: usize,
    pub cells: Vec<usize>,
}

/// Alternating loop `v0, σ1, v1, σ2, …, σk, v0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub vertices: Vec<usize>,
    pub cells: Vec<usize>,
}

impl Chain {
    pub fn base(&self) -> usize {
        self.vertices[0]
    }

    pub fn reversed(&self) -> Chain {
        Chain {
            vertices: self.vertices.iter().rev().copied().collect(),
            cells: self.cells.iter().rev().copied().collect(),
        }
    }

    /// `self` followed by `other`; both must share the base vertex.
    pub fn then(&self, other: &Chain) -> Chain {
        let mut vertices = self.vertices.clone();
        vertices.extend(&other.vertices[1..]);
        let mut cells = self.cells.clone();
        cells.extend(&other.cells);
        Chain { vertices, cells }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyMatrix {
    pub matrix: IMat,
    pub base: usize,
    pub chain: Chain,
}

/// Integral affine manifold with singularities, presented by maximal cells
/// and a fan structure at every vertex.
///
/// The fan structure at `v` is recorded per cell `σ ∋ v` as the images
/// `S_v(w)` of the vertices `w` of `σ`; the linear part `A_{v,σ}` with
/// `A_{v,σ}(x_w - x_v) = S_v(w)` is the chart transition from `σ` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalManifold {
    dim: usize,
    vertex_names: Vec<String>,
    cells: Vec<Cell>,
    fans: BTreeMap<(usize, usize), Vec<IVec>>,
    charts: BTreeMap<(usize, usize), IMat>,
    inverse_charts: BTreeMap<(usize, usize), IMat>,
    faces: BTreeMap<Vec<usize>, FaceInfo>,
    cells_at: Vec<Vec<usize>>,
    embedding: Option<Vec<IVec>>,
}

fn invalid(axiom: &str, msg: impl Into<String>) -> Error {
    Error::Validation {
        axiom: axiom.into(),
        msg: msg.into(),
    }
}

impl TropicalManifold {
    /// Builds and validates a manifold. `fans[(v, σ)]` lists `S_v(w)` for the
    /// vertices of `σ` in the order they were given in `cells`.
    pub fn new(
        dim: usize,
        vertex_names: Vec<String>,
        cells: Vec<Cell>,
        fans: BTreeMap<(usize, usize), Vec<IVec>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadArgument("dimension must be positive".into()));
        }
        let nv = vertex_names.len();
        if vertex_names.iter().collect::<BTreeSet<_>>().len() != nv {
            return Err(invalid("cells", "duplicate vertex name"));
        }
        if cells.iter().map(|c| &c.name).collect::<BTreeSet<_>>().len() != cells.len() {
            return Err(invalid("cells", "duplicate cell name"));
        }
        let mut sorted_cells = Vec::with_capacity(cells.len());
        let mut sorted_fans = BTreeMap::new();
        for (ci, cell) in cells.into_iter().enumerate() {
            if cell.vertices.len() != cell.coords.len()
                || cell.coords.iter().any(|x| x.len() != dim)
            {
                return Err(invalid(
                    "cells",
                    format!("cell {} has malformed coordinates", cell.name),
                ));
            }
            if cell.vertices.iter().any(|&v| v >= nv) {
                return Err(invalid(
                    "cells",
                    format!("cell {} references an unknown vertex", cell.name),
                ));
            }
            let mut perm: Vec<usize> = (0..cell.vertices.len()).collect();
            perm.sort_by_key(|&i| cell.vertices[i]);
            if perm
                .windows(2)
                .any(|w| cell.vertices[w[0]] == cell.vertices[w[1]])
            {
                return Err(invalid(
                    "cells",
                    format!("cell {} repeats a vertex", cell.name),
                ));
            }
            for &v in &cell.vertices {
                let Some(images) = fans.get(&(v, ci)) else {
                    return Err(invalid(
                        "fan",
                        format!(
                            "missing fan images for {} in {}",
                            vertex_names[v], cell.name
                        ),
                    ));
                };
                if images.len() != perm.len() || images.iter().any(|x| x.len() != dim) {
                    return Err(invalid(
                        "fan",
                        format!(
                            "malformed fan images for {} in {}",
                            vertex_names[v], cell.name
                        ),
                    ));
                }
                sorted_fans.insert(
                    (v, ci),
                    perm.iter().map(|&i| images[i].clone()).collect::<Vec<_>>(),
                );
            }
            sorted_cells.push(Cell {
                name: cell.name,
                vertices: perm.iter().map(|&i| cell.vertices[i]).collect(),
                coords: perm.iter().map(|&i| cell.coords[i].clone()).collect(),
            });
        }
        let mut m = TropicalManifold {
            dim,
            vertex_names,
            cells: sorted_cells,
            fans: sorted_fans,
            charts: BTreeMap::new(),
            inverse_charts: BTreeMap::new(),
            faces: BTreeMap::new(),
            cells_at: vec![Vec::new(); nv],
            embedding: None,
        };
        m.build()?;
        Ok(m)
    }

    fn build(&mut self) -> Result<()> {
        let dim = self.dim;
        let mut seen = BTreeSet::new();
        for (ci, cell) in self.cells.iter().enumerate() {
            if !seen.insert(cell.vertices.clone()) {
                return Err(invalid(
                    "cells",
                    format!("two cells share the vertex set of {}", cell.name),
                ));
            }
            let poly = LatticePolytope::new(&cell.coords)
                .map_err(|e| invalid("cells", format!("cell {}: {e}", cell.name)))?;
            if poly.vertices().len() != cell.coords.len() {
                return Err(invalid(
                    "faces",
                    format!("cell {} lists a point that is not a vertex", cell.name),
                ));
            }
            // polytope vertices are lexicographic; map back to cell order
            let back: Vec<usize> = poly
                .vertices()
                .iter()
                .map(|p| cell.vertices[cell.coords.iter().position(|c| c == p).expect("vertex")])
                .collect();
            for f in poly.faces() {
                let mut vs: Vec<usize> = f.vertices.iter().map(|&i| back[i]).collect();
                vs.sort_unstable();
                let e = self.faces.entry(vs).or_insert(FaceInfo {
                    dim: f.dim,
                    cells: Vec::new(),
                });
                if e.dim != f.dim {
                    return Err(invalid(
                        "intersection",
                        format!("face dimensions disagree in {}", cell.name),
                    ));
                }
                e.cells.push(ci);
            }
            for (k, &v) in cell.vertices.iter().enumerate() {
                self.cells_at[v].push(ci);
                let images = &self.fans[&(v, ci)];
                if images[k].iter().any(|&x| x != 0) {
                    return Err(invalid(
                        "fan",
                        format!(
                            "S_{}({}) is not the origin",
                            self.vertex_names[v], self.vertex_names[v]
                        ),
                    ));
                }
                let diffs: IMat = (0..dim)
                    .map(|r| {
                        cell.coords
                            .iter()
                            .map(|c| c[r] - cell.coords[k][r])
                            .collect()
                    })
                    .collect();
                let imgs: IMat = (0..dim)
                    .map(|r| images.iter().map(|c| c[r]).collect())
                    .collect();
                let a = lattice::solve_left(&lattice::to_q(&diffs), &lattice::to_q(&imgs))
                    .and_then(|a| lattice::from_q(&a))
                    .filter(lattice::is_unimodular)
                    .ok_or_else(|| {
                        invalid(
                            "fan",
                            format!(
                                "fan at {} on {} is not an integral linear isomorphism",
                                self.vertex_names[v], cell.name
                            ),
                        )
                    })?;
                self.inverse_charts
                    .insert((v, ci), lattice::inverse(&a).expect("unimodular"));
                self.charts.insert((v, ci), a);
            }
        }
        if let Some(v) = self.cells_at.iter().position(|c| c.is_empty()) {
            return Err(invalid(
                "cells",
                format!("vertex {} lies in no cell", self.vertex_names[v]),
            ));
        }
        for (vs, info) in &self.faces {
            if info.dim + 1 == dim && info.cells.len() > 2 {
                return Err(invalid(
                    "intersection",
                    format!(
                        "codimension-one face {} lies in more than two cells",
                        self.face_label(vs)
                    ),
                ));
            }
        }
        for v in 0..self.cells_at.len() {
            let around = &self.cells_at[v];
            for (i, &a) in around.iter().enumerate() {
                for &b in &around[i + 1..] {
                    self.check_pair(v, a, b)?;
                }
            }
        }
        Ok(())
    }

    /// Cells `a` and `b` both contain `v`: their intersection must be a common
    /// face on which the two fan descriptions at `v` agree.
    fn check_pair(&self, v: usize, a: usize, b: usize) -> Result<()> {
        let (ca, cb) = (&self.cells[a], &self.cells[b]);
        let common: Vec<usize> = ca
            .vertices
            .iter()
            .copied()
            .filter(|&w| cb.contains(w))
            .collect();
        let ok = self
            .faces
            .get(&common)
            .is_some_and(|f| f.cells.contains(&a) && f.cells.contains(&b));
        if !ok {
            return Err(invalid(
                "intersection",
                format!("{} ∩ {} is not a common face", ca.name, cb.name),
            ));
        }
        let (fa, fb) = (&self.fans[&(v, a)], &self.fans[&(v, b)]);
        for &w in &common {
            if fa[ca.position(w).expect("common")] != fb[cb.position(w).expect("common")] {
                return Err(invalid(
                    "fan",
                    format!(
                        "fan at {} disagrees on {} between {} and {}",
                        self.vertex_names[v], self.vertex_names[w], ca.name, cb.name
                    ),
                ));
            }
        }
        Ok(())
    }

    pub(crate) fn with_embedding(mut self, points: Vec<IVec>) -> Self {
        self.embedding = Some(points);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// Ambient lattice points of the vertices, for complexes built on the
    /// boundary of a polytope.
    pub fn embedding(&self) -> Option<&[IVec]> {
        self.embedding.as_deref()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn cell_index(&self, name: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.name == name)
    }

    /// Cells containing `v`, ascending.
    pub fn cells_at(&self, v: usize) -> &[usize] {
        &self.cells_at[v]
    }

    /// `S_v(w)` for the vertices `w` of `σ`, in the cell's vertex order.
    pub fn fan(&self, v: usize, cell: usize) -> Option<&[IVec]> {
        self.fans.get(&(v, cell)).map(|x| x.as_slice())
    }

    pub fn fans(&self) -> &BTreeMap<(usize, usize), Vec<IVec>> {
        &self.fans
    }

    /// `A_{v,σ}`: differential of the transition from the chart of `σ` to the
    /// chart at `v`.
    pub fn chart(&self, v: usize, cell: usize) -> Option<&IMat> {
        self.charts.get(&(v, cell))
    }

    /// All faces of the decomposition keyed by sorted vertex set.
    pub fn faces(&self) -> &BTreeMap<Vec<usize>, FaceInfo> {
        &self.faces
    }

    pub fn face_label(&self, vs: &[usize]) -> String {
        let names: Vec<&str> = vs.iter().map(|&v| self.vertex_names[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Parses `v0, σ1, v1, …, σk, v0` given by names.
    pub fn chain(&self, names: &[&str]) -> Result<Chain> {
        if names.len() < 3 || names.len().is_multiple_of(2) {
            return Err(Error::BadChain("expected v0, cell, v1, …, cell, v0".into()));
        }
        let mut vertices = Vec::new();
        let mut cells = Vec::new();
        for (i, name) in names.iter().enumerate() {
            let name = name.trim();
            if i % 2 == 0 {
                vertices.push(
                    self.vertex_index(name)
                        .ok_or_else(|| Error::BadChain(format!("unknown vertex {name}")))?,
                );
            } else {
                cells.push(
                    self.cell_index(name)
                        .ok_or_else(|| Error::BadChain(format!("unknown cell {name}")))?,
                );
            }
        }
        let chain = Chain { vertices, cells };
        self.check_chain(&chain)?;
        Ok(chain)
    }

    fn check_chain(&self, chain: &Chain) -> Result<()> {
        if chain.cells.is_empty() || chain.vertices.len() != chain.cells.len() + 1 {
            return Err(Error::BadChain(
                "chain must alternate vertices and cells".into(),
            ));
        }
        if chain.vertices.first() != chain.vertices.last() {
            return Err(Error::BadChain("chain is not closed".into()));
        }
        for (i, &c) in chain.cells.iter().enumerate() {
            let cell = self
                .cells
                .get(c)
                .ok_or_else(|| Error::BadChain(format!("unknown cell index {c}")))?;
            for v in [chain.vertices[i], chain.vertices[i + 1]] {
                if !cell.contains(v) {
                    let name = self.vertex_names.get(v).map_or("?", |s| s.as_str());
                    return Err(Error::BadChain(format!(
                        "{name} is not a vertex of {}",
                        cell.name
                    )));
                }
            }
        }
        Ok(())
    }

    /// Monodromy of `Λ` along the chain, in the lattice of the base chart:
    /// `A_{v0,σk} A_{v_{k-1},σk}^{-1} ⋯ A_{v1,σ1} A_{v0,σ1}^{-1}`.
    pub fn monodromy(&self, chain: &Chain) -> Result<MonodromyMatrix> {
        self.check_chain(chain)?;
        let mut m = lattice::identity(self.dim);
        for (i, &c) in chain.cells.iter().enumerate() {
            let into_cell = &self.inverse_charts[&(chain.vertices[i], c)];
            let out_of_cell = &self.charts[&(chain.vertices[i + 1], c)];
            m = lattice::mul(out_of_cell, &lattice::mul(into_cell, &m));
        }
        Ok(MonodromyMatrix {
            matrix: m,
            base: chain.base(),
            chain: chain.clone(),
        })
    }

    /// The two cells containing a codimension-one face.
    pub fn cells_across(&self, face: &[usize]) -> Option<(usize, usize)> {
        let info = self.faces.get(face)?;
        match (info.dim + 1 == self.dim, info.cells.as_slice()) {
            (true, [a, b]) => Some((*a, *b)),
            _ => None,
        }
    }

    /// Loop `[a, σ, b, σ', a]` through the two cells on either side of the
    /// codimension-one face `face`, which must contain `a` and `b`.
    pub fn loop_through(&self, face: &[usize], a: usize, b: usize) -> Option<Chain> {
        let (s, t) = self.cells_across(face)?;
        (face.contains(&a) && face.contains(&b)).then(|| Chain {
            vertices: vec![a, b, a],
            cells: vec![s, t],
        })
    }
}
