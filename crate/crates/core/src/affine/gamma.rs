use std::collections::BTreeSet;

use super::manifold::{Chain, TropicalManifold};
use crate::lattice::{self, IMat, IVec};
use crate::{Error, Result};

/// Monodromy at a planar Γ-vertex, in a suitable basis.
pub const PLANAR_FAMILY: [[[i64; 3]; 3]; 3] = [
    [[1, 0, 0], [1, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [1, 0, 1]],
    [[1, 0, 0], [-1, 1, 0], [-1, 0, 1]],
];

/// Monodromy at a Γ-vertex on an edge of the polytope, in a suitable basis.
pub const EDGE_FAMILY: [[[i64; 3]; 3]; 3] = [
    [[1, -1, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, -1], [0, 1, 0], [0, 0, 1]],
    [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
];

pub fn family_matrices(family: &[[[i64; 3]; 3]; 3]) -> Vec<IMat> {
    family
        .iter()
        .map(|m| m.iter().map(|r| r.to_vec()).collect())
        .collect()
}

/// Simplices of the first barycentric subdivision making up Γ: flags of
/// faces whose dimensions all lie in `1..n`, each face given by its
/// vertex set.
pub fn barycentric_gamma(b: &TropicalManifold) -> Vec<Vec<Vec<usize>>> {
    let inner: Vec<&Vec<usize>> = b
        .faces()
        .iter()
        .filter(|(_, f)| f.dim >= 1 && f.dim < b.dim())
        .map(|(vs, _)| vs)
        .collect();
    let mut flags: Vec<Vec<Vec<usize>>> = inner.iter().map(|vs| vec![(*vs).clone()]).collect();
    let mut frontier = flags.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for flag in &frontier {
            let top = flag.last().expect("nonempty");
            for vs in &inner {
                if vs.len() > top.len()
                    && top.iter().all(|v| vs.contains(v))
                    && b.faces()[*vs].dim > b.faces()[top].dim
                {
                    let mut longer = flag.clone();
                    longer.push((*vs).clone());
                    next.push(longer);
                }
            }
        }
        flags.extend(next.iter().cloned());
        frontier = next;
    }
    flags
}

/// A segment of Γ (or a point when `dim B = 2`): the flag `edge ⊂ face` with
/// `face` of codimension one, and the monodromy of the loop around it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantLoop {
    pub edge: [usize; 2],
    pub face: Vec<usize>,
    pub chain: Chain,
    pub matrix: IMat,
}

/// Loops `[a, σ, b, σ', a]` around every barycentric segment `{a,b} ⊂ τ`
/// with `τ` of codimension one, keeping those with nontrivial monodromy.
pub fn effective_gamma(b: &TropicalManifold) -> Vec<DiscriminantLoop> {
    let n = b.dim();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for (face, info) in b.faces() {
        if info.dim + 1 != n || info.cells.len() != 2 {
            continue;
        }
        for (edge, e) in b.faces() {
            if e.dim != 1 || !edge.iter().all(|v| face.contains(v)) {
                continue;
            }
            let chain = b
                .loop_through(face, edge[0], edge[1])
                .expect("codimension-one face");
            let matrix = b.monodromy(&chain).expect("valid chain").matrix;
            if matrix != lattice::identity(n) {
                out.push(DiscriminantLoop {
                    edge: [edge[0], edge[1]],
                    face: face.clone(),
                    chain,
                    matrix,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexType {
    /// The `T_i - I` share a kernel plane (first family).
    Planar,
    /// The `T_i - I` share an image line (second family).
    Edge,
    Degenerate,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleReport {
    pub chains: Vec<Chain>,
    /// Ordered so that `T₁T₂T₃ = I` is the expected relation.
    pub matrices: Vec<IMat>,
    pub product_is_identity: bool,
    pub square_zero: Vec<bool>,
    pub rank_one: Vec<bool>,
    pub vertex_type: VertexType,
    /// `C` with `C⁻¹ T_i C` equal to the matching family matrix.
    pub conjugator: Option<IMat>,
    /// `T_i^{-T}`, the monodromy of the dual local system.
    pub dual_matrices: Vec<IMat>,
    pub dual_type: VertexType,
    pub dual_conjugator: Option<IMat>,
}

impl TripleReport {
    pub fn all_pass(&self) -> bool {
        self.product_is_identity
            && self.square_zero.iter().all(|&x| x)
            && self.rank_one.iter().all(|&x| x)
            && matches!(
                (self.vertex_type, self.dual_type),
                (VertexType::Planar, VertexType::Edge) | (VertexType::Edge, VertexType::Planar)
            )
            && self.conjugator.is_some()
            && self.dual_conjugator.is_some()
    }
}

/// The three loop monodromies at a trivalent Γ-vertex of a 3-dimensional
/// complex. The vertex is named by a face: a triangle (Γ-vertex at its
/// barycenter) or an edge.
pub fn monodromy_triple_check(b: &TropicalManifold, face: &[usize]) -> Result<TripleReport> {
    if b.dim() != 3 {
        return Err(Error::Unsupported(
            "triple check needs a 3-dimensional complex".into(),
        ));
    }
    let mut face = face.to_vec();
    face.sort_unstable();
    let info = b
        .faces()
        .get(&face)
        .ok_or_else(|| Error::BadArgument(format!("{} is not a face", b.face_label(&face))))?;
    let chains = match info.dim {
        2 => triangle_loops(b, &face)?,
        1 => edge_loops(b, &face)?,
        _ => {
            return Err(Error::Unsupported(format!(
                "{} is not a Γ-vertex",
                b.face_label(&face)
            )))
        }
    };
    let matrices: Vec<IMat> = chains
        .iter()
        .map(|c| b.monodromy(c).map(|m| m.matrix))
        .collect::<Result<_>>()?;
    let id = lattice::identity(3);
    if matrices.contains(&id) {
        return Err(Error::Unsupported(format!(
            "{} is not a trivalent Γ-vertex",
            b.face_label(&face)
        )));
    }
    let product = matrices
        .iter()
        .fold(id.clone(), |acc, m| lattice::mul(&acc, m));
    let logs: Vec<IMat> = matrices.iter().map(|m| lattice::sub(m, &id)).collect();
    let dual_matrices: Vec<IMat> = matrices
        .iter()
        .map(|m| lattice::transpose(&lattice::inverse(m).expect("monodromy is unimodular")))
        .collect();
    let vertex_type = classify(&matrices);
    let dual_type = classify(&dual_matrices);
    Ok(TripleReport {
        product_is_identity: product == id,
        square_zero: logs
            .iter()
            .map(|l| lattice::is_zero(&lattice::mul(l, l)))
            .collect(),
        rank_one: logs.iter().map(|l| lattice::rank(l) == 1).collect(),
        conjugator: family_conjugator(&matrices, vertex_type),
        dual_conjugator: family_conjugator(&dual_matrices, dual_type),
        vertex_type,
        dual_type,
        dual_matrices,
        matrices,
        chains,
    })
}

/// `T_uv = [u,σ,v,σ',u]`, `T_vw = [u,σ,w,σ',v,σ,u]`, `T_wu = [u,σ',w,σ,u]`;
/// their product in this order telescopes to the identity.
fn triangle_loops(b: &TropicalManifold, face: &[usize]) -> Result<Vec<Chain>> {
    let (s, t) = b.cells_across(face).ok_or_else(|| {
        Error::Unsupported(format!("{} is not between two cells", b.face_label(face)))
    })?;
    let (u, v, w) = (face[0], face[1], face[2]);
    Ok(vec![
        Chain {
            vertices: vec![u, v, u],
            cells: vec![s, t],
        },
        Chain {
            vertices: vec![u, w, v, u],
            cells: vec![s, t, s],
        },
        Chain {
            vertices: vec![u, w, u],
            cells: vec![t, s],
        },
    ])
}

/// Loops `[w, σ_{j-1}, u, σ_j, w]` for the cells `σ_j` around the edge
/// `{u, w}` in cyclic order; the nontrivial ones, last first, multiply to
/// the identity.
fn edge_loops(b: &TropicalManifold, edge: &[usize]) -> Result<Vec<Chain>> {
    let (u, w) = (edge[0], edge[1]);
    let around: Vec<usize> = b
        .cells_at(u)
        .iter()
        .copied()
        .filter(|&c| b.cells()[c].contains(w))
        .collect();
    let ring = cyclic_order(b, edge, &around).ok_or_else(|| {
        Error::Unsupported(format!(
            "cells around {} do not form a cycle",
            b.face_label(edge)
        ))
    })?;
    let k = ring.len();
    let id = lattice::identity(3);
    let mut chains = Vec::new();
    for j in 0..k {
        let chain = Chain {
            vertices: vec![w, u, w],
            cells: vec![ring[(j + k - 1) % k], ring[j]],
        };
        if b.monodromy(&chain)?.matrix != id {
            chains.push(chain);
        }
    }
    if chains.len() != 3 {
        return Err(Error::Unsupported(format!(
            "{} is not a trivalent Γ-vertex",
            b.face_label(edge)
        )));
    }
    chains.reverse();
    Ok(chains)
}

/// Cells around an edge ordered so consecutive ones share a codimension-one
/// face containing the edge.
fn cyclic_order(b: &TropicalManifold, edge: &[usize], cells: &[usize]) -> Option<Vec<usize>> {
    let shares = |x: usize, y: usize| {
        let (cx, cy) = (&b.cells()[x], &b.cells()[y]);
        let common: Vec<usize> = cx
            .vertices
            .iter()
            .copied()
            .filter(|&v| cy.contains(v))
            .collect();
        edge.iter().all(|v| common.contains(v))
            && b.faces().get(&common).is_some_and(|f| f.dim + 1 == b.dim())
    };
    let mut ring = vec![*cells.first()?];
    let mut left: BTreeSet<usize> = cells[1..].iter().copied().collect();
    while !left.is_empty() {
        let last = *ring.last().expect("nonempty");
        let next = *left.iter().find(|&&c| shares(last, c))?;
        left.remove(&next);
        ring.push(next);
    }
    (ring.len() > 2 && shares(*ring.last()?, ring[0])).then_some(ring)
}

fn row_generator(m: &IMat) -> Option<IVec> {
    let row = m.iter().find(|r| r.iter().any(|&x| x != 0))?;
    Some(sign_normalize(lattice::primitive_vec(row)))
}

fn column_generator(m: &IMat) -> Option<IVec> {
    row_generator(&lattice::transpose(m))
}

fn sign_normalize(v: IVec) -> IVec {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|y| -y).collect(),
        _ => v,
    }
}

/// Planar if the logarithms share a kernel, edge type if they share an image.
pub fn classify(ts: &[IMat]) -> VertexType {
    let n = ts.first().map_or(0, |t| t.len());
    let id = lattice::identity(n);
    let logs: Vec<IMat> = ts.iter().map(|t| lattice::sub(t, &id)).collect();
    if logs.iter().any(|l| lattice::rank(l) != 1) {
        return VertexType::Other;
    }
    let rows: BTreeSet<IVec> = logs.iter().filter_map(row_generator).collect();
    let cols: BTreeSet<IVec> = logs.iter().filter_map(column_generator).collect();
    match (rows.len() == 1, cols.len() == 1) {
        (true, true) => VertexType::Degenerate,
        (true, false) => VertexType::Planar,
        (false, true) => VertexType::Edge,
        (false, false) => VertexType::Other,
    }
}

fn family_conjugator(ts: &[IMat], kind: VertexType) -> Option<IMat> {
    match kind {
        VertexType::Planar => planar_conjugator(ts),
        VertexType::Edge => {
            let duals: Vec<IMat> = ts
                .iter()
                .map(|t| lattice::inverse(t).map(|i| lattice::transpose(&i)))
                .collect::<Option<_>>()?;
            let p = planar_conjugator(&duals)?;
            let c = lattice::transpose(&lattice::inverse(&p)?);
            matches_family(ts, &c, &family_matrices(&EDGE_FAMILY)).then_some(c)
        }
        _ => None,
    }
}

/// For `T_i = I + w_i β` with a common primitive covector `β`: the basis
/// `(f, w_a, w_b)` with `β(f) = 1` conjugates the triple onto the planar
/// family, provided `w_a, w_b` span `ker β ∩ Z³`.
fn planar_conjugator(ts: &[IMat]) -> Option<IMat> {
    if ts.len() != 3 {
        return None;
    }
    let id = lattice::identity(3);
    let logs: Vec<IMat> = ts.iter().map(|t| lattice::sub(t, &id)).collect();
    let beta = row_generator(&logs[0])?;
    let f = lattice::solve_pairing_one(&beta)?;
    let ws: Vec<IVec> = logs.iter().map(|l| lattice::mul_vec(l, &f)).collect();
    let target = family_matrices(&PLANAR_FAMILY);
    for (a, bb) in [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)] {
        let c: IMat = (0..3).map(|r| vec![f[r], ws[a][r], ws[bb][r]]).collect();
        if !lattice::is_unimodular(&c) {
            continue;
        }
        if matches_family(ts, &c, &target) {
            return Some(c);
        }
    }
    None
}

/// `C⁻¹ T_i C` runs over the family (in some order).
fn matches_family(ts: &[IMat], c: &IMat, family: &[IMat]) -> bool {
    let Some(ci) = lattice::inverse(c) else {
        return false;
    };
    let conj: BTreeSet<IMat> = ts
        .iter()
        .map(|t| lattice::mul(&ci, &lattice::mul(t, c)))
        .collect();
    let fam: BTreeSet<IMat> = family.iter().cloned().collect();
    conj == fam
}

/// For a 2×2 unipotent `T ≠ I`: `(k, C)` with `k > 0` and
/// `C⁻¹ T C = (1 k; 0 1)`.
pub fn unipotent_normal_form(t: &IMat) -> Option<(i64, IMat)> {
    if t.len() != 2 {
        return None;
    }
    let n = lattice::sub(t, &lattice::identity(2));
    if lattice::rank(&n) != 1 || !lattice::is_zero(&lattice::mul(&n, &n)) {
        return None;
    }
    let alpha = row_generator(&n)?;
    let mut u = column_generator(&n)?;
    let f = lattice::solve_pairing_one(&alpha)?;
    let nf = lattice::mul_vec(&n, &f);
    let k = if u[0] != 0 {
        nf[0] / u[0]
    } else {
        nf[1] / u[1]
    };
    let k = if k < 0 {
        u = u.iter().map(|x| -x).collect();
        -k
    } else {
        k
    };
    let c = vec![vec![u[0], f[0]], vec![u[1], f[1]]];
    let ci = lattice::inverse(&c)?;
    (lattice::mul(&ci, &lattice::mul(t, &c)) == vec![vec![1, k], vec![0, 1]]).then_some((k, c))
}
