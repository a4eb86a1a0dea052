//! Min-plus tropical polynomials and plane tropical curves.
//!
//! `a ⊕ b = min(a, b)` and `a ⊙ b = a + b` throughout. The corner locus of
//! a polynomial in two variables is read off from the regular subdivision
//! of its Newton polygon. A parameterized curve may mark vertices as
//! singular, which exempts them from balancing; weight-zero edges must be
//! contracted and contribute nothing to the balancing sum.

mod corner;
mod curve;
mod doc;
mod polynomial;

pub use corner::{corner_locus_2d, newton_subdivision, SubdivisionCell};
pub use curve::{
    check_balanced, primitive_direction, CurveEdge, Node, ParamEdge, ParamTropicalCurve, Point2,
    TropicalCurve2D, Violation,
};
pub use doc::{curve_svg, parse_curve, write_curve};
pub use polynomial::{parse_polynomial, trop_eval, TropicalPolynomial};
