//! Exact computations around the tropical vertex group.
//!
//! * [`series`]: the truncated ring `Q[x^±1, y^±1][t]/(t^(k+1))`.
//! * [`scattering`]: walls, wall-crossing automorphisms, path-ordered
//!   products and the order-by-order completion of scattering diagrams.
//! * [`affine`]: integral tropical manifolds built from reflexive
//!   polytopes, monodromy, and the discrete Legendre transform.
//! * [`tropical`]: min-plus polynomials, corner loci and balancing.

pub mod affine;
pub mod error;
pub mod lattice;
pub mod scattering;
pub mod series;
pub mod tropical;

pub use error::{Error, Result};

/// Exact rational number used for every coefficient.
pub type Rational = num_rational::BigRational;
