use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::lattice::{self, IVec};
use crate::{Error, Rational, Result};

pub type Point2 = [Rational; 2];

/// Embedded curve edge; directions are primitive and point away from `from`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum CurveEdge {
    Segment {
        from: usize,
        to: usize,
        direction: IVec,
        weight: u64,
    },
    Ray {
        from: usize,
        direction: IVec,
        weight: u64,
    },
    /// A whole line with no vertex on it, from a one-dimensional Newton polytope.
    Line {
        through: Point2,
        direction: IVec,
        weight: u64,
    },
}

impl CurveEdge {
    pub fn weight(&self) -> u64 {
        match self {
            CurveEdge::Segment { weight, .. }
            | CurveEdge::Ray { weight, .. }
            | CurveEdge::Line { weight, .. } => *weight,
        }
    }
}

/// Planar tropical curve: vertices with weighted segments, rays and lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve2D {
    pub vertices: Vec<Point2>,
    pub edges: Vec<CurveEdge>,
}

impl TropicalCurve2D {
    /// Unbounded directions with weights; a line counts once in each direction.
    pub fn unbounded(&self) -> Vec<(IVec, u64)> {
        let mut out = Vec::new();
        for e in &self.edges {
            match e {
                CurveEdge::Ray {
                    direction, weight, ..
                } => out.push((direction.clone(), *weight)),
                CurveEdge::Line {
                    direction, weight, ..
                } => {
                    out.push((direction.clone(), *weight));
                    out.push((direction.iter().map(|x| -x).collect(), *weight));
                }
                CurveEdge::Segment { .. } => {}
            }
        }
        out.sort();
        out
    }

    pub fn bounded_edges(&self) -> impl Iterator<Item = &CurveEdge> {
        self.edges
            .iter()
            .filter(|e| matches!(e, CurveEdge::Segment { .. }))
    }

    /// The same curve as a parameterized one. Lines become a two-valent node.
    pub fn to_param(&self) -> ParamTropicalCurve {
        let mut nodes: Vec<Node> = self
            .vertices
            .iter()
            .map(|p| Node {
                position: p.clone(),
                singular: false,
            })
            .collect();
        let mut edges = Vec::new();
        for e in &self.edges {
            match e {
                CurveEdge::Segment {
                    from, to, weight, ..
                } => edges.push(ParamEdge::Bounded {
                    a: *from,
                    b: *to,
                    weight: *weight,
                }),
                CurveEdge::Ray {
                    from,
                    direction,
                    weight,
                } => edges.push(ParamEdge::Unbounded {
                    from: *from,
                    direction: direction.clone(),
                    weight: *weight,
                }),
                CurveEdge::Line {
                    through,
                    direction,
                    weight,
                } => {
                    let n = nodes.len();
                    nodes.push(Node {
                        position: through.clone(),
                        singular: false,
                    });
                    let back = direction.iter().map(|x| -x).collect();
                    edges.push(ParamEdge::Unbounded {
                        from: n,
                        direction: direction.clone(),
                        weight: *weight,
                    });
                    edges.push(ParamEdge::Unbounded {
                        from: n,
                        direction: back,
                        weight: *weight,
                    });
                }
            }
        }
        ParamTropicalCurve { nodes, edges }
    }

    pub fn check_balanced(&self) -> Result<Vec<Violation>> {
        let n = self.vertices.len();
        Ok(check_balanced(&self.to_param())?
            .into_iter()
            .filter(|v| v.vertex < n)
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub position: Point2,
    /// Exempt from balancing, e.g. a leg ending at a singular point.
    pub singular: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParamEdge {
    /// A weight-zero edge must be contracted: both ends at one point.
    Bounded { a: usize, b: usize, weight: u64 },
    Unbounded {
        from: usize,
        direction: IVec,
        weight: u64,
    },
}

/// Graph `Γ` with weights `w` and the map `h` on its vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamTropicalCurve {
    pub nodes: Vec<Node>,
    pub edges: Vec<ParamEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub vertex: usize,
    /// `Σ w(E) v_E` over the edges at the vertex.
    pub excess: IVec,
}

/// Smallest integer vector on the ray through a rational vector.
pub fn primitive_direction(v: &[Rational]) -> Option<IVec> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let l = v.iter().fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter().map(|x| (x / &g).to_i64()).collect()
}

/// Vertices of valency above one whose weighted primitive outgoing directions
/// do not sum to zero. Singular nodes are skipped; contracted edges add zero.
pub fn check_balanced(c: &ParamTropicalCurve) -> Result<Vec<Violation>> {
    let n = c.nodes.len();
    let mut sums: Vec<IVec> = vec![vec![0, 0]; n];
    let mut valency = vec![0usize; n];
    let node = |i: usize| {
        c.nodes
            .get(i)
            .ok_or_else(|| Error::MalformedCurve(format!("edge refers to missing vertex {i}")))
    };
    let add = |i: usize, dir: &[i64], w: u64, sums: &mut Vec<IVec>| -> Result<()> {
        let w =
            i64::try_from(w).map_err(|_| Error::MalformedCurve("weight out of range".into()))?;
        for k in 0..2 {
            sums[i][k] = dir[k]
                .checked_mul(w)
                .and_then(|x| x.checked_add(sums[i][k]))
                .ok_or_else(|| Error::MalformedCurve("balancing sum overflows".into()))?;
        }
        Ok(())
    };
    for e in &c.edges {
        match e {
            ParamEdge::Bounded { a, b, weight } => {
                let (pa, pb) = (&node(*a)?.position, &node(*b)?.position);
                let diff = [&pb[0] - &pa[0], &pb[1] - &pa[1]];
                valency[*a] += 1;
                valency[*b] += 1;
                match (primitive_direction(&diff), *weight) {
                    (None, 0) => {}
                    (None, _) => {
                        return Err(Error::MalformedCurve(format!(
                            "edge {a}-{b} has zero direction but weight {weight}"
                        )))
                    }
                    (Some(_), 0) => {
                        return Err(Error::MalformedCurve(format!(
                            "weight-zero edge {a}-{b} is not contracted"
                        )))
                    }
                    (Some(d), w) => {
                        let back: IVec = d.iter().map(|x| -x).collect();
                        add(*a, &d, w, &mut sums)?;
                        add(*b, &back, w, &mut sums)?;
                    }
                }
            }
            ParamEdge::Unbounded {
                from,
                direction,
                weight,
            } => {
                node(*from)?;
                valency[*from] += 1;
                if *weight == 0 {
                    continue;
                }
                if direction.len() != 2 || direction.iter().all(|&x| x == 0) {
                    return Err(Error::MalformedCurve(format!(
                        "unbounded edge at {from} has no direction"
                    )));
                }
                add(
                    *from,
                    &lattice::primitive_vec(direction),
                    *weight,
                    &mut sums,
                )?;
            }
        }
    }
    Ok((0..n)
        .filter(|&i| valency[i] > 1 && !c.nodes[i].singular && sums[i].iter().any(|&x| x != 0))
        .map(|i| Violation {
            vertex: i,
            excess: sums[i].clone(),
        })
        .collect())
}
