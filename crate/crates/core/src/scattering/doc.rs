use serde::{Deserialize, Serialize};

use super::{ScatteringDiagram, Wall, WallKind};
use crate::series::parse_series;
use crate::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    order: u32,
    walls: Vec<WallDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WallDoc {
    kind: WallKind,
    dir: [i32; 2],
    f: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    added: bool,
}

impl Serialize for WallKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            WallKind::Ray => "ray",
            WallKind::Line => "line",
        })
    }
}

impl<'de> Deserialize<'de> for WallKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match String::deserialize(d)?.as_str() {
            "ray" => Ok(WallKind::Ray),
            "line" => Ok(WallKind::Line),
            other => Err(serde::de::Error::custom(format!(
                "unknown wall kind {other:?}"
            ))),
        }
    }
}

pub(crate) fn json_error(e: &serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

/// Line and column (1-based) of byte offset `pos` in `src`.
pub(crate) fn locate(src: &str, pos: usize) -> (usize, usize) {
    let before = &src[..pos.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

/// Reads a diagram document. `order` overrides the order stored in the file.
pub fn parse_diagram(src: &str, order: Option<u32>) -> Result<ScatteringDiagram> {
    let doc: DiagramDoc = serde_json::from_str(src).map_err(|e| json_error(&e))?;
    let order = order.unwrap_or(doc.order);
    let mut walls = Vec::new();
    let mut search_from = 0;
    for w in &doc.walls {
        let quoted = serde_json::to_string(&w.f).expect("string");
        let at = src[search_from..].find(&quoted).map(|i| i + search_from);
        if let Some(i) = at {
            search_from = i + quoted.len();
        }
        let f = parse_series(&w.f, order).map_err(|e| match (e, at) {
            (Error::Parse { line: 1, col, msg }, Some(i)) => {
                let (l, c) = locate(src, i + col);
                Error::parse(l, c, format!("in wall function: {msg}"))
            }
            (e, _) => e,
        })?;
        let dir = (w.dir[0], w.dir[1]);
        if !super::is_primitive(dir) {
            return Err(Error::Geometry(format!(
                "wall direction {dir:?} is not primitive"
            )));
        }
        let mut wall = match w.kind {
            WallKind::Ray => Wall::ray(dir, f)?,
            WallKind::Line => Wall::line(dir, f)?,
        };
        wall.added = w.added;
        walls.push(wall);
    }
    Ok(ScatteringDiagram::new(order, walls))
}

/// Canonical JSON form: walls sorted by support angle.
pub fn write_diagram(d: &ScatteringDiagram) -> String {
    let mut d = d.clone();
    d.sort_canonical();
    let doc = DiagramDoc {
        order: d.order(),
        walls: d
            .walls()
            .iter()
            .map(|w| WallDoc {
                kind: w.kind,
                dir: [w.dir().0, w.dir().1],
                f: w.f.to_string(),
                added: w.added,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}
