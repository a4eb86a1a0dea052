use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::boundary::boundary_complex;
use super::manifold::{Cell, TropicalManifold};
use super::mpl::MplFunction;
use super::polytope::LatticePolytope;
use crate::lattice::IVec;
use crate::scattering::doc::json_error;
use crate::{Error, Result};

#[derive(Deserialize)]
struct KindProbe {
    kind: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoundaryDoc {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    vertices: Vec<IVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cells: Option<Vec<Vec<IVec>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<PhiSpec>,
}

/// `"batyrev"` or `{"heights": [[x1, …, xN, h], …]}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum PhiSpec {
    Named(String),
    Heights { heights: Vec<IVec> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ManifoldDoc {
    #[allow(dead_code)]
    kind: String,
    dim: usize,
    vertices: Vec<String>,
    cells: Vec<CellDoc>,
    fans: Vec<FanDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    phi: Option<Vec<SlopeDoc>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    name: String,
    vertices: Vec<String>,
    coords: Vec<IVec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FanDoc {
    vertex: String,
    cell: String,
    images: Vec<IVec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SlopeDoc {
    vertex: String,
    cell: String,
    slope: IVec,
}

/// A complex read from a document, with its function if one was given.
#[derive(Debug, Clone)]
pub struct LoadedComplex {
    pub manifold: TropicalManifold,
    pub phi: Option<MplFunction>,
}

pub fn parse_complex(src: &str) -> Result<LoadedComplex> {
    let probe: KindProbe = serde_json::from_str(src).map_err(|e| json_error(&e))?;
    match probe.kind.as_str() {
        "polytope-boundary" => {
            load_boundary(serde_json::from_str(src).map_err(|e| json_error(&e))?)
        }
        "tropical-manifold" => {
            load_manifold(serde_json::from_str(src).map_err(|e| json_error(&e))?)
        }
        other => Err(Error::BadArgument(format!(
            "unknown complex kind {other:?}"
        ))),
    }
}

fn load_boundary(d: BoundaryDoc) -> Result<LoadedComplex> {
    if d.vertices.iter().any(|v| v.len() != d.dim) {
        return Err(Error::BadArgument(format!(
            "vertices must have {} coordinates",
            d.dim
        )));
    }
    let delta = LatticePolytope::new(&d.vertices)?;
    let b = boundary_complex(&delta, d.cells.as_deref())?;
    let phi = match d.phi {
        None => None,
        Some(PhiSpec::Named(name)) if name == "batyrev" => Some(MplFunction::batyrev(&b)?),
        Some(PhiSpec::Named(name)) => {
            return Err(Error::BadArgument(format!("unknown function {name:?}")))
        }
        Some(PhiSpec::Heights { heights }) => {
            let points = b.embedding().expect("boundary complex");
            let mut table = BTreeMap::new();
            for row in heights {
                let Some((h, p)) = row.split_last() else {
                    return Err(Error::BadArgument("empty height row".into()));
                };
                table.insert(p.to_vec(), *h);
            }
            let hs = points
                .iter()
                .map(|p| {
                    table
                        .get(p)
                        .copied()
                        .ok_or_else(|| Error::BadArgument(format!("no height for {p:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Some(MplFunction::from_heights(&b, &hs)?)
        }
    };
    Ok(LoadedComplex { manifold: b, phi })
}

fn load_manifold(d: ManifoldDoc) -> Result<LoadedComplex> {
    let vindex: BTreeMap<&str, usize> = d
        .vertices
        .iter()
        .enumerate()
        .map(|(i, n)| (n.as_str(), i))
        .collect();
    let cindex: BTreeMap<&str, usize> = d
        .cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.name.as_str(), i))
        .collect();
    let vertex = |n: &str| {
        vindex
            .get(n)
            .copied()
            .ok_or_else(|| Error::BadArgument(format!("unknown vertex {n:?}")))
    };
    let cell = |n: &str| {
        cindex
            .get(n)
            .copied()
            .ok_or_else(|| Error::BadArgument(format!("unknown cell {n:?}")))
    };
    let cells = d
        .cells
        .iter()
        .map(|c| {
            Ok(Cell {
                name: c.name.clone(),
                vertices: c
                    .vertices
                    .iter()
                    .map(|n| vertex(n))
                    .collect::<Result<_>>()?,
                coords: c.coords.clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut fans = BTreeMap::new();
    for f in &d.fans {
        if fans
            .insert((vertex(&f.vertex)?, cell(&f.cell)?), f.images.clone())
            .is_some()
        {
            return Err(Error::BadArgument(format!(
                "fan at {} on {} given twice",
                f.vertex, f.cell
            )));
        }
    }
    let b = TropicalManifold::new(d.dim, d.vertices.clone(), cells, fans)?;
    let phi = match &d.phi {
        None => None,
        Some(rows) => {
            let mut slopes = BTreeMap::new();
            for r in rows {
                slopes.insert((vertex(&r.vertex)?, cell(&r.cell)?), r.slope.clone());
            }
            Some(MplFunction::new(&b, slopes)?)
        }
    };
    Ok(LoadedComplex { manifold: b, phi })
}

/// Canonical document: cells, fans and slopes in index order, one record
/// per line.
pub fn write_complex(b: &TropicalManifold, phi: Option<&MplFunction>) -> String {
    let names = b.vertex_names();
    let cells: Vec<CellDoc> = b
        .cells()
        .iter()
        .map(|c| CellDoc {
            name: c.name.clone(),
            vertices: c.vertices.iter().map(|&v| names[v].clone()).collect(),
            coords: c.coords.clone(),
        })
        .collect();
    let mut fans = Vec::new();
    let mut slopes = Vec::new();
    for (v, name) in names.iter().enumerate() {
        for &c in b.cells_at(v) {
            let cell = b.cells()[c].name.clone();
            fans.push(FanDoc {
                vertex: name.clone(),
                cell: cell.clone(),
                images: b.fan(v, c).expect("fan").to_vec(),
            });
            if let Some(p) = phi {
                slopes.push(SlopeDoc {
                    vertex: name.clone(),
                    cell,
                    slope: p.slope(v, c).clone(),
                });
            }
        }
    }
    let mut out = String::from("{\n  \"kind\": \"tropical-manifold\",\n");
    out += &format!("  \"dim\": {},\n", b.dim());
    out += &format!("  \"vertices\": {},\n", compact(&names));
    out += &records("cells", cells.iter().map(compact));
    out += ",\n";
    out += &records("fans", fans.iter().map(compact));
    if phi.is_some() {
        out += ",\n";
        out += &records("phi", slopes.iter().map(compact));
    }
    out += "\n}\n";
    out
}

fn records(key: &str, rows: impl Iterator<Item = String>) -> String {
    let rows: Vec<String> = rows.map(|r| format!("    {r}")).collect();
    if rows.is_empty() {
        return format!("  \"{key}\": []");
    }
    format!("  \"{key}\": [\n{}\n  ]", rows.join(",\n"))
}

fn compact<T: Serialize + ?Sized>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}
