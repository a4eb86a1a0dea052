use std::collections::BTreeMap;

use super::manifold::{Cell, Chain, TropicalManifold};
use super::mpl::{is_strictly_convex, MplFunction};
use crate::lattice::{self, IMat, IVec};
use crate::{Error, Result};

/// `(B̌, 𝒫̌, φ̌)`: vertices of `B̌` are the maximal cells `σ` of `B`, its cells
/// are the Newton polytopes `v̌ = conv{-s_{v,σ}}`, the fan at `σ̌` is the
/// normal fan of `σ`, and `φ̌_σ̌(y) = -min{⟨y, x⟩ : x ∈ σ}`.
///
/// Names carry over (vertex `v` of `B` names the cell `v̌`), and applying the
/// transform twice returns the input exactly.
pub fn discrete_legendre(
    b: &TropicalManifold,
    phi: &MplFunction,
) -> Result<(TropicalManifold, MplFunction)> {
    if !is_strictly_convex(b, phi) {
        return Err(Error::Convexity("φ is not strictly convex".into()));
    }
    let names: Vec<String> = b.cells().iter().map(|c| c.name.clone()).collect();
    let mut cells = Vec::with_capacity(b.vertex_names().len());
    let mut fans = BTreeMap::new();
    for (v, name) in b.vertex_names().iter().enumerate() {
        let around = b.cells_at(v);
        cells.push(Cell {
            name: name.clone(),
            vertices: around.to_vec(),
            coords: around
                .iter()
                .map(|&s| phi.slope(v, s).iter().map(|x| -x).collect())
                .collect(),
        });
        for &s in around {
            let at = lattice::transpose(b.chart(v, s).expect("chart"));
            let images = around
                .iter()
                .map(|&t| {
                    lattice::mul_vec(&at, &lattice::sub_vec(phi.slope(v, s), phi.slope(v, t)))
                })
                .collect();
            fans.insert((s, v), images);
        }
    }
    let dual = TropicalManifold::new(b.dim(), names, cells, fans)?;
    let mut slopes = BTreeMap::new();
    for (s, cell) in b.cells().iter().enumerate() {
        for (k, &v) in cell.vertices.iter().enumerate() {
            slopes.insert((s, v), cell.coords[k].iter().map(|x| -x).collect::<IVec>());
        }
    }
    let dual_phi = MplFunction::new(&dual, slopes)?;
    Ok((dual, dual_phi))
}

/// The loop in `B̌` corresponding to `v0, σ1, v1, …, σk, v0`, namely
/// `σ1, v̌1, σ2, …, σk, v̌0, σ1`.
pub fn dual_chain(chain: &Chain) -> Chain {
    let k = chain.cells.len();
    let mut vertices = chain.cells.clone();
    vertices.push(chain.cells[0]);
    let cells = (1..=k).map(|i| chain.vertices[i % k]).collect();
    Chain { vertices, cells }
}

/// Monodromy in `dual = discrete_legendre(b, …)` along the duals of loops
/// that share a base vertex `u` of `b`. Each dual loop is moved through `ǔ`
/// so that all of them are based at the first cell of the first loop.
pub fn dual_loop_monodromies(
    b: &TropicalManifold,
    dual: &TropicalManifold,
    chains: &[Chain],
) -> Result<Vec<IMat>> {
    let Some(first) = chains.first() else {
        return Ok(Vec::new());
    };
    let (u, base) = (first.base(), first.cells[0]);
    let mut out = Vec::with_capacity(chains.len());
    for chain in chains {
        if chain.base() != u {
            return Err(Error::BadChain("loops must share their base vertex".into()));
        }
        let mut dc = dual_chain(chain);
        if dc.vertices[0] != base {
            dc.vertices.insert(0, base);
            dc.vertices.push(base);
            dc.cells.insert(0, u);
            dc.cells.push(u);
        }
        if dual.vertex_names().get(base) != b.cells().get(base).map(|c| &c.name) {
            return Err(Error::BadArgument(
                "second complex is not the Legendre dual of the first".into(),
            ));
        }
        out.push(dual.monodromy(&dc)?.matrix);
    }
    Ok(out)
}

/// Vertex bijection `a → b` under which cells correspond, each cell is
/// identified by an integral affine isomorphism, the fan structures agree up
/// to one `GL_n(Z)` element per vertex, and the functions (when given) agree
/// up to a linear function at each vertex.
pub fn find_isomorphism(
    a: &TropicalManifold,
    phi_a: Option<&MplFunction>,
    b: &TropicalManifold,
    phi_b: Option<&MplFunction>,
) -> Option<Vec<usize>> {
    let nv = a.vertex_names().len();
    if a.dim() != b.dim() || nv != b.vertex_names().len() || a.cells().len() != b.cells().len() {
        return None;
    }
    let cells_b: BTreeMap<Vec<usize>, usize> = b
        .cells()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.vertices.clone(), i))
        .collect();
    let mut order: Vec<usize> = (0..nv).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.cells_at(v).len()));
    let mut search = Search {
        a,
        b,
        phi_a,
        phi_b,
        cells_b,
        order,
        map: vec![None; nv],
        used: vec![false; nv],
    };
    if search.extend(0) {
        Some(
            search
                .map
                .into_iter()
                .map(|x| x.expect("complete"))
                .collect(),
        )
    } else {
        None
    }
}

pub fn is_isomorphic(
    a: &TropicalManifold,
    phi_a: Option<&MplFunction>,
    b: &TropicalManifold,
    phi_b: Option<&MplFunction>,
) -> bool {
    find_isomorphism(a, phi_a, b, phi_b).is_some()
}

struct Search<'a> {
    a: &'a TropicalManifold,
    b: &'a TropicalManifold,
    phi_a: Option<&'a MplFunction>,
    phi_b: Option<&'a MplFunction>,
    cells_b: BTreeMap<Vec<usize>, usize>,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.geometry_matches();
        }
        let v = self.order[depth];
        for w in 0..self.used.len() {
            if self.used[w] || self.a.cells_at(v).len() != self.b.cells_at(w).len() {
                continue;
            }
            self.map[v] = Some(w);
            self.used[w] = true;
            if self.cells_consistent(v) && self.extend(depth + 1) {
                return true;
            }
            self.used[w] = false;
            self.map[v] = None;
        }
        false
    }

    /// Every fully assigned cell through `v` lands on a cell of `b`.
    fn cells_consistent(&self, v: usize) -> bool {
        self.a.cells_at(v).iter().all(|&c| {
            let image: Option<Vec<usize>> = self.a.cells()[c]
                .vertices
                .iter()
                .map(|&u| self.map[u])
                .collect();
            match image {
                Some(mut vs) => {
                    vs.sort_unstable();
                    self.cells_b.contains_key(&vs)
                }
                None => true,
            }
        })
    }

    fn cell_image(&self, c: usize) -> usize {
        let mut vs: Vec<usize> = self.a.cells()[c]
            .vertices
            .iter()
            .map(|&u| self.map[u].expect("assigned"))
            .collect();
        vs.sort_unstable();
        self.cells_b[&vs]
    }

    fn geometry_matches(&self) -> bool {
        let n = self.a.dim();
        for (c, cell) in self.a.cells().iter().enumerate() {
            let target = &self.b.cells()[self.cell_image(c)];
            let src: Vec<IVec> = cell
                .coords
                .iter()
                .map(|x| lattice::sub_vec(x, &cell.coords[0]))
                .collect();
            let at = |u: usize| {
                &target.coords[target
                    .position(self.map[u].expect("assigned"))
                    .expect("vertex")]
            };
            let origin = at(cell.vertices[0]);
            let dst: Vec<IVec> = cell
                .vertices
                .iter()
                .map(|&u| lattice::sub_vec(at(u), origin))
                .collect();
            if linear_map(&src, &dst, n).is_none() {
                return false;
            }
        }
        for v in 0..self.a.vertex_names().len() {
            let w = self.map[v].expect("assigned");
            let mut src = Vec::new();
            let mut dst = Vec::new();
            for &c in self.a.cells_at(v) {
                let cell = &self.a.cells()[c];
                let tc = self.cell_image(c);
                let target = &self.b.cells()[tc];
                let fa = self.a.fan(v, c).expect("fan");
                let fb = self.b.fan(w, tc).expect("fan");
                for (k, &u) in cell.vertices.iter().enumerate() {
                    src.push(fa[k].clone());
                    dst.push(
                        fb[target
                            .position(self.map[u].expect("assigned"))
                            .expect("vertex")]
                        .clone(),
                    );
                }
            }
            let Some(g) = linear_map(&src, &dst, n) else {
                return false;
            };
            if let (Some(pa), Some(pb)) = (self.phi_a, self.phi_b) {
                // φ_b ∘ G_v - φ_a must be one linear function on all cones
                let gt = lattice::transpose(&g);
                let mut diff: Option<IVec> = None;
                for &c in self.a.cells_at(v) {
                    let pulled = lattice::mul_vec(&gt, pb.slope(w, self.cell_image(c)));
                    let d = lattice::sub_vec(&pulled, pa.slope(v, c));
                    match &diff {
                        None => diff = Some(d),
                        Some(prev) if *prev != d => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// Unimodular `G` with `G src[i] = dst[i]` for all `i`.
fn linear_map(src: &[IVec], dst: &[IVec], n: usize) -> Option<IMat> {
    let p: IMat = (0..n).map(|r| src.iter().map(|x| x[r]).collect()).collect();
    let q: IMat = (0..n).map(|r| dst.iter().map(|x| x[r]).collect()).collect();
    let g = lattice::from_q(&lattice::solve_left(
        &lattice::to_q(&p),
        &lattice::to_q(&q),
    )?)?;
    lattice::is_unimodular(&g).then_some(g)
}
