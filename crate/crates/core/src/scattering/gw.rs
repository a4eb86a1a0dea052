use num_traits::Zero;

use super::{cross, is_primitive, ScatteringDiagram, Vec2, Wall};
use crate::series::{rat, TruncatedSeries};
use crate::{Error, Rational, Result};

/// One coefficient of `log f` on the outgoing ray.
#[derive(Clone, Debug, PartialEq)]
pub struct GwRow {
    pub t_power: u32,
    /// Multiple of the outgoing direction, i.e. the tangency order.
    pub d: u32,
    pub log_coeff: Rational,
    /// `log_coeff / d`.
    pub n_tilde: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GwTable {
    pub out_dir: Vec2,
    pub rows: Vec<GwRow>,
}

impl GwTable {
    pub fn get(&self, t_power: u32, d: u32) -> Option<&GwRow> {
        self.rows.iter().find(|r| r.t_power == t_power && r.d == d)
    }
}

/// Scatters the lines `(R m_i, (1 + t z^{-m_i})^{ℓ_i})` and reads off the
/// log of the function on `R_{≥0} out_dir`.
pub fn extract_gw(ells: &[(Vec2, u32)], out_dir: Vec2, order: u32) -> Result<GwTable> {
    if !is_primitive(out_dir) {
        return Err(Error::BadArgument(format!("{out_dir:?} is not primitive")));
    }
    let mut walls = Vec::new();
    for &(m, l) in ells {
        if !is_primitive(m) || l == 0 {
            return Err(Error::BadArgument(format!("bad line data {m:?}, ℓ = {l}")));
        }
        if cross(m, out_dir) == 0 {
            return Err(Error::Unsupported(format!(
                "outgoing direction {out_dir:?} coincides with an initial line"
            )));
        }
        let base = TruncatedSeries::one(order).add(&TruncatedSeries::monomial(
            order,
            rat(1),
            1,
            -m.0,
            -m.1,
        ))?;
        walls.push(Wall::line(m, base.pow_int(l as i64)?)?);
    }
    let diagram = ScatteringDiagram::new(order, walls).scatter()?;
    let log = diagram.ray_function(out_dir).log()?;
    let mut rows = Vec::new();
    for (k, c) in log.terms() {
        let d = if out_dir.0 != 0 {
            -k.x / out_dir.0
        } else {
            -k.y / out_dir.1
        };
        if d <= 0 || (k.x, k.y) != (-d * out_dir.0, -d * out_dir.1) {
            return Err(Error::Internal(format!(
                "monomial x^{} y^{} off the ray",
                k.x, k.y
            )));
        }
        if c.is_zero() {
            continue;
        }
        rows.push(GwRow {
            t_power: k.t,
            d: d as u32,
            log_coeff: c.clone(),
            n_tilde: c / rat(d as i64),
        });
    }
    Ok(GwTable { out_dir, rows })
}
