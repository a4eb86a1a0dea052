use serde::{Deserialize, Serialize};

use num_traits::ToPrimitive;

use super::curve::{CurveEdge, Point2, TropicalCurve2D};
use super::polynomial::TropicalPolynomial;
use crate::lattice::IVec;
use crate::scattering::doc::json_error;
use crate::{Error, Rational, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    kind: String,
    #[serde(default)]
    #[allow(dead_code)]
    polynomial: Option<String>,
    vertices: Vec<[String; 2]>,
    edges: Vec<EdgeDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    to: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    through: Option<[String; 2]>,
    direction: IVec,
    weight: u64,
}

fn point_text(p: &Point2) -> [String; 2] {
    [p[0].to_string(), p[1].to_string()]
}

fn point_parse(p: &[String; 2]) -> Result<Point2> {
    let one = |s: &String| {
        s.trim()
            .parse::<Rational>()
            .map_err(|_| Error::BadArgument(format!("not a rational: {s:?}")))
    };
    Ok([one(&p[0])?, one(&p[1])?])
}

/// Canonical curve document, one record per line.
pub fn write_curve(c: &TropicalCurve2D, g: Option<&TropicalPolynomial>) -> String {
    let mut out = String::from("{\n  \"kind\": \"tropical-curve\",\n");
    if let Some(g) = g {
        out += &format!(
            "  \"polynomial\": {},\n",
            serde_json::to_string(&g.to_string()).expect("string")
        );
    }
    let vertices: Vec<String> = c
        .vertices
        .iter()
        .map(|p| {
            format!(
                "    {}",
                serde_json::to_string(&point_text(p)).expect("json")
            )
        })
        .collect();
    out += &block("vertices", &vertices);
    out += ",\n";
    let edges: Vec<String> = c
        .edges
        .iter()
        .map(|e| {
            let doc = match e {
                CurveEdge::Segment {
                    from,
                    to,
                    direction,
                    weight,
                } => EdgeDoc {
                    kind: "segment".into(),
                    from: Some(*from),
                    to: Some(*to),
                    through: None,
                    direction: direction.clone(),
                    weight: *weight,
                },
                CurveEdge::Ray {
                    from,
                    direction,
                    weight,
                } => EdgeDoc {
                    kind: "ray".into(),
                    from: Some(*from),
                    to: None,
                    through: None,
                    direction: direction.clone(),
                    weight: *weight,
                },
                CurveEdge::Line {
                    through,
                    direction,
                    weight,
                } => EdgeDoc {
                    kind: "line".into(),
                    from: None,
                    to: None,
                    through: Some(point_text(through)),
                    direction: direction.clone(),
                    weight: *weight,
                },
            };
            format!("    {}", serde_json::to_string(&doc).expect("json"))
        })
        .collect();
    out += &block("edges", &edges);
    out += "\n}\n";
    out
}

fn block(key: &str, rows: &[String]) -> String {
    if rows.is_empty() {
        format!("  \"{key}\": []")
    } else {
        format!("  \"{key}\": [\n{}\n  ]", rows.join(",\n"))
    }
}

pub fn parse_curve(src: &str) -> Result<TropicalCurve2D> {
    let doc: CurveDoc = serde_json::from_str(src).map_err(|e| json_error(&e))?;
    if doc.kind != "tropical-curve" {
        return Err(Error::BadArgument(format!(
            "expected a tropical-curve document, got {:?}",
            doc.kind
        )));
    }
    let vertices = doc
        .vertices
        .iter()
        .map(point_parse)
        .collect::<Result<Vec<_>>>()?;
    let n = vertices.len();
    let index = |i: Option<usize>, what: &str| match i {
        Some(i) if i < n => Ok(i),
        Some(i) => Err(Error::MalformedCurve(format!(
            "{what} vertex {i} does not exist"
        ))),
        None => Err(Error::MalformedCurve(format!("edge is missing {what:?}"))),
    };
    let mut edges = Vec::new();
    for e in doc.edges {
        if e.direction.len() != 2 {
            return Err(Error::MalformedCurve(
                "directions must have two entries".into(),
            ));
        }
        let (direction, weight) = (e.direction, e.weight);
        edges.push(match e.kind.as_str() {
            "segment" => CurveEdge::Segment {
                from: index(e.from, "from")?,
                to: index(e.to, "to")?,
                direction,
                weight,
            },
            "ray" => CurveEdge::Ray {
                from: index(e.from, "from")?,
                direction,
                weight,
            },
            "line" => {
                let Some(p) = &e.through else {
                    return Err(Error::MalformedCurve("line without a point".into()));
                };
                CurveEdge::Line {
                    through: point_parse(p)?,
                    direction,
                    weight,
                }
            }
            other => {
                return Err(Error::MalformedCurve(format!(
                    "unknown edge kind {other:?}"
                )))
            }
        });
    }
    Ok(TropicalCurve2D { vertices, edges })
}

fn f(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

/// Plain SVG drawing; rays and lines are clipped to a padded bounding box,
/// weights above one are written next to their edges.
pub fn curve_svg(c: &TropicalCurve2D) -> String {
    let mut anchors: Vec<(f64, f64)> = c.vertices.iter().map(|p| (f(&p[0]), f(&p[1]))).collect();
    for e in &c.edges {
        if let CurveEdge::Line { through, .. } = e {
            anchors.push((f(&through[0]), f(&through[1])));
        }
    }
    if anchors.is_empty() {
        anchors.push((0.0, 0.0));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &anchors {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let reach = ((x1 - x0).max(y1 - y0)).max(1.0);
    let pad = reach * 0.6;
    let (x0, x1, y0, y1) = (x0 - pad, x1 + pad, y0 - pad, y1 + pad);
    let scale = 400.0 / (x1 - x0).max(y1 - y0);
    let px = |x: f64| (x - x0) * scale;
    let py = |y: f64| (y1 - y) * scale;
    let (w, h) = ((x1 - x0) * scale, (y1 - y0) * scale);
    let far = |p: (f64, f64), d: &IVec| {
        let len = ((d[0] * d[0] + d[1] * d[1]) as f64).sqrt();
        (
            p.0 + d[0] as f64 / len * pad * 0.9,
            p.1 + d[1] as f64 / len * pad * 0.9,
        )
    };
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.1}\" height=\"{h:.1}\" viewBox=\"0 0 {w:.1} {h:.1}\">\n"
    );
    out += "  <g stroke=\"black\" stroke-width=\"2\" fill=\"none\">\n";
    let mut labels = Vec::new();
    for e in &c.edges {
        let (a, b) = match e {
            CurveEdge::Segment { from, to, .. } => (anchors[*from], anchors[*to]),
            CurveEdge::Ray {
                from, direction, ..
            } => (anchors[*from], far(anchors[*from], direction)),
            CurveEdge::Line {
                through, direction, ..
            } => {
                let p = (f(&through[0]), f(&through[1]));
                let back: IVec = direction.iter().map(|x| -x).collect();
                (far(p, &back), far(p, direction))
            }
        };
        out += &format!(
            "    <line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\"/>\n",
            px(a.0),
            py(a.1),
            px(b.0),
            py(b.1)
        );
        if e.weight() > 1 {
            labels.push((px((a.0 + b.0) / 2.0), py((a.1 + b.1) / 2.0), e.weight()));
        }
    }
    out += "  </g>\n";
    for (x, y, wt) in labels {
        out += &format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\">{wt}</text>\n",
            x + 4.0,
            y - 4.0
        );
    }
    for &(x, y) in &anchors[..c.vertices.len()] {
        out += &format!(
            "  <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"black\"/>\n",
            px(x),
            py(y)
        );
    }
    out += "</svg>\n";
    out
}
