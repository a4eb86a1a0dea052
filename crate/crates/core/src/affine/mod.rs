//! Integral tropical manifolds.
//!
//! Lattice polytopes and reflexivity, the boundary complex `B = ∂Δ` with its
//! vertex fan structures, monodromy of the lattice local system `Λ` along
//! vertex/cell loops, multi-valued piecewise linear functions, Newton
//! polytopes and the discrete Legendre transform.

mod boundary;
mod doc;
pub mod examples;
mod gamma;
mod legendre;
mod manifold;
mod mpl;
mod polytope;

pub use boundary::boundary_complex;
pub use doc::{parse_complex, write_complex, LoadedComplex};
pub use gamma::{
    barycentric_gamma, classify, effective_gamma, family_matrices, monodromy_triple_check,
    unipotent_normal_form, DiscriminantLoop, TripleReport, VertexType, EDGE_FAMILY, PLANAR_FAMILY,
};
pub use legendre::{
    discrete_legendre, dual_chain, dual_loop_monodromies, find_isomorphism, is_isomorphic,
};
pub use manifold::{Cell, Chain, FaceInfo, MonodromyMatrix, TropicalManifold};
pub use mpl::{
    fan_newton_polytope, is_strictly_convex, is_strictly_convex_at, kink, kinks_agree,
    newton_polytope, MplFunction,
};
pub use polytope::{hyperplane_chart, is_reflexive, polar_dual, Face, Facet, LatticePolytope};

#[cfg(test)]
mod tests;
