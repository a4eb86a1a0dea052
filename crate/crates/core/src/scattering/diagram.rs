use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;

use super::automorphism::{apply_wall, PowCache};
use super::{cross, crossing_automorphism, dot, primitive, RingAutomorphism, Vec2, Wall, WallKind};
use crate::series::{rat, TruncatedSeries};
use crate::{Error, Rational, Result};

/// One meeting of the loop with a wall support.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub wall: usize,
    /// Primitive direction of the support ray being crossed.
    pub direction: Vec2,
    /// Primitive normal, negative on the counterclockwise tangent.
    pub normal: Vec2,
}

/// Orders directions counterclockwise starting at `base` (inclusive).
pub(crate) fn ccw_cmp(base: Vec2, a: Vec2, b: Vec2) -> Ordering {
    let half = |v: Vec2| {
        let y = cross(base, v);
        if y > 0 || (y == 0 && dot(base, v) > 0) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

fn angle(v: Vec2) -> f64 {
    (v.1 as f64).atan2(v.0 as f64)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScatteringDiagram {
    order: u32,
    walls: Vec<Wall>,
}

impl ScatteringDiagram {
    /// Wall functions are truncated or lifted to `order`.
    pub fn new(order: u32, walls: Vec<Wall>) -> Self {
        let walls = walls
            .into_iter()
            .map(|mut w| {
                w.f = w.f.lift(order);
                w
            })
            .collect();
        ScatteringDiagram { order, walls }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn added_rays(&self) -> impl Iterator<Item = &Wall> {
        self.walls.iter().filter(|w| w.added)
    }

    pub fn truncate(&self, j: u32) -> Self {
        let walls = self
            .walls
            .iter()
            .map(|w| Wall {
                f: w.f.truncate(j),
                ..w.clone()
            })
            .collect();
        ScatteringDiagram {
            order: j.min(self.order),
            walls,
        }
    }

    /// Product of the functions on all rays with support `R_{≥0} dir`.
    pub fn ray_function(&self, dir: Vec2) -> TruncatedSeries {
        let mut f = TruncatedSeries::one(self.order);
        for w in &self.walls {
            if w.kind == WallKind::Ray && w.dir() == dir {
                f = f.mul_raw(&w.f);
            }
        }
        f
    }

    /// Sorts walls counterclockwise by support direction, starting at `(1,0)`.
    pub fn sort_canonical(&mut self) {
        self.walls.sort_by(|a, b| {
            ccw_cmp((1, 0), a.dir(), b.dir())
                .then(a.kind.cmp(&b.kind))
                .then(a.added.cmp(&b.added))
        });
    }

    /// Distinct primitive support directions, counterclockwise from `(1,0)`.
    pub fn support_directions(&self) -> Vec<Vec2> {
        let mut dirs: Vec<Vec2> = self
            .walls
            .iter()
            .flat_map(|w| w.support_directions())
            .collect();
        dirs.sort_by(|&a, &b| ccw_cmp((1, 0), a, b));
        dirs.dedup();
        dirs
    }

    /// A lattice direction inside the largest angular gap between supports.
    pub fn base_angle(&self) -> Vec2 {
        let dirs = self.support_directions();
        match dirs.len() {
            0 => return (1, 0),
            1 => return (-dirs[0].0, -dirs[0].1),
            _ => {}
        }
        let tau = std::f64::consts::TAU;
        let mut best = (0usize, f64::MIN);
        for i in 0..dirs.len() {
            let (u, v) = (dirs[i], dirs[(i + 1) % dirs.len()]);
            let mut gap = angle(v) - angle(u);
            if gap <= 0.0 {
                gap += tau;
            }
            if gap > best.1 {
                best = (i, gap);
            }
        }
        let (u, v) = (dirs[best.0], dirs[(best.0 + 1) % dirs.len()]);
        let sum = (u.0 + v.0, u.1 + v.1);
        match cross(u, v).cmp(&0) {
            Ordering::Greater => primitive(sum).expect("non-parallel"),
            Ordering::Less => primitive((-sum.0, -sum.1)).expect("non-parallel"),
            Ordering::Equal => (-u.1, u.0),
        }
    }

    /// All wall crossings of a counterclockwise loop starting at `base`.
    pub fn crossings(&self, base: Vec2) -> Result<Vec<Crossing>> {
        if base == (0, 0) {
            return Err(Error::BadArgument("base direction is zero".into()));
        }
        let mut out = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            for d in w.support_directions() {
                if cross(base, d) == 0 && dot(base, d) > 0 {
                    return Err(Error::BasePoint(format!(
                        "{base:?} lies on the support of wall {i}"
                    )));
                }
                out.push(Crossing {
                    wall: i,
                    direction: d,
                    normal: (d.1, -d.0),
                });
            }
        }
        out.sort_by(|a, b| ccw_cmp(base, a.direction, b.direction));
        Ok(out)
    }

    /// Path-ordered product `θ_s ∘ ⋯ ∘ θ_1` around the origin.
    pub fn loop_product(&self, base: Vec2) -> Result<RingAutomorphism> {
        Ok(self.run_loop(base, false)?.0)
    }

    /// The partial products `θ_j ∘ ⋯ ∘ θ_1` for every crossing.
    pub fn partial_products(&self, base: Vec2) -> Result<Vec<RingAutomorphism>> {
        Ok(self.run_loop(base, true)?.1)
    }

    /// Individual crossing automorphisms in loop order.
    pub fn crossing_automorphisms(&self, base: Vec2) -> Result<Vec<RingAutomorphism>> {
        self.crossings(base)?
            .iter()
            .map(|c| crossing_automorphism(&self.walls[c.wall], c.normal))
            .collect()
    }

    fn run_loop(
        &self,
        base: Vec2,
        keep: bool,
    ) -> Result<(RingAutomorphism, Vec<RingAutomorphism>)> {
        let crossings = self.crossings(base)?;
        let mut caches: Vec<PowCache> = self.walls.iter().map(|w| PowCache::new(&w.f)).collect();
        let mut theta = RingAutomorphism::identity(self.order);
        let mut partial = Vec::new();
        for c in &crossings {
            if self.walls[c.wall].f.is_one() {
                if keep {
                    partial.push(theta.clone());
                }
                continue;
            }
            let cache = &mut caches[c.wall];
            // x·ux ↦ x f^{n1} θ_c(ux), likewise for y
            let ax = apply_wall(cache, c.normal, &theta.ux)?;
            let ay = apply_wall(cache, c.normal, &theta.uy)?;
            let ux = cache.get(c.normal.0 as i64)?.mul_raw(&ax);
            let uy = cache.get(c.normal.1 as i64)?.mul_raw(&ay);
            theta = RingAutomorphism { ux, uy };
            if keep {
                partial.push(theta.clone());
            }
        }
        Ok((theta, partial))
    }

    /// Completes the diagram order by order so that every loop product is
    /// the identity. Input walls are kept as given; added rays are merged
    /// per support and flagged.
    pub fn scatter(&self) -> Result<Self> {
        let order = self.order;
        let mut added: BTreeMap<Vec2, TruncatedSeries> = BTreeMap::new();
        let with_added = |k: u32, added: &BTreeMap<Vec2, TruncatedSeries>| -> Result<Self> {
            let mut walls: Vec<Wall> = self.walls.clone();
            for (m, f) in added {
                let mut w = Wall::new(WallKind::Ray, *m, f.clone())?;
                w.added = true;
                walls.push(w);
            }
            Ok(ScatteringDiagram::new(order, walls).truncate(k))
        };
        for k in 1..=order {
            let dk = with_added(k, &added)?;
            let theta = dk.loop_product(dk.base_angle())?;
            if theta.is_identity() {
                continue;
            }
            for w in deviation_to_walls(&theta, k)? {
                let f = w.f.lift(order);
                let merged = match added.remove(&w.m_prim) {
                    Some(old) => old.mul_raw(&f),
                    None => f,
                };
                added.insert(w.m_prim, merged);
            }
        }
        let mut out = with_added(order, &added)?;
        let residual = out.loop_product(out.base_angle())?;
        if !residual.is_identity() {
            return Err(Error::Internal(format!(
                "loop product after completion is not the identity: x ↦ x·({})",
                residual.ux
            )));
        }
        out.sort_canonical();
        Ok(out)
    }
}

/// Rays cancelling a deviation `θ ≡ id mod t^k` at order `k`.
pub fn deviation_to_walls(theta: &RingAutomorphism, k: u32) -> Result<Vec<Wall>> {
    let order = theta.order();
    for u in [&theta.ux, &theta.uy] {
        let rest = u.sub(&TruncatedSeries::one(order))?;
        if rest.valuation().is_some_and(|v| v < k) {
            return Err(Error::BadArgument(format!(
                "deviation {u} has terms below t^{k}"
            )));
        }
    }
    let mut monomials: BTreeMap<Vec2, (Rational, Rational)> = BTreeMap::new();
    for (x, y, c) in theta.ux.degree_part(k) {
        monomials
            .entry((x, y))
            .or_insert_with(|| (Rational::zero(), Rational::zero()))
            .0 = c;
    }
    for (x, y, c) in theta.uy.degree_part(k) {
        monomials
            .entry((x, y))
            .or_insert_with(|| (Rational::zero(), Rational::zero()))
            .1 = c;
    }
    let mut by_ray: BTreeMap<Vec2, Vec<(Vec2, Rational)>> = BTreeMap::new();
    for (m, (cx, cy)) in monomials {
        let p = primitive(m).ok_or_else(|| {
            Error::NonHamiltonian(format!("t^{k} term with zero exponent ({cx}, {cy})"))
        })?;
        let (a, b) = (rat(p.0 as i64), rat(p.1 as i64));
        if &cx * &a + &cy * &b != Rational::zero() {
            return Err(Error::Internal(format!(
                "x and y channels disagree at {m:?}: {cx} vs {cy}"
            )));
        }
        let c = if p.1 != 0 { cx / b } else { -cy / a };
        by_ray.entry(p).or_default().push((m, c));
    }
    let build = |eps: i64| -> Result<Vec<Wall>> {
        by_ray
            .iter()
            .map(|(p, terms)| {
                let mut f = TruncatedSeries::one(order);
                for (m, c) in terms {
                    let c = c * rat(eps);
                    f = f.add(&TruncatedSeries::monomial(order, c, k, m.0, m.1))?;
                }
                let mut w = Wall::new(WallKind::Ray, *p, f)?;
                w.added = true;
                Ok(w)
            })
            .collect()
    };
    for eps in [1, -1] {
        let walls = build(eps)?;
        let mut total = theta.truncate(k);
        for w in &walls {
            let d = w.dir();
            let wk = Wall {
                f: w.f.truncate(k),
                ..w.clone()
            };
            let step = crossing_automorphism(&wk, (d.1, -d.0))?;
            total = RingAutomorphism::compose(&total, &step)?;
        }
        if total.is_identity() {
            return Ok(walls);
        }
    }
    Err(Error::Internal(format!(
        "no sign of the inserted rays cancels the t^{k} deviation"
    )))
}
