use std::fmt::Write;

use tropvertex::scattering::{ScatteringDiagram, WallKind};

/// First `terms` terms of the canonical text, with an ellipsis if cut.
fn label(text: &str, terms: usize) -> String {
    let mut pieces = Vec::new();
    let mut cur = String::new();
    for (i, ch) in text.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && text[..i].ends_with(' ') {
            pieces.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    pieces.push(cur);
    let shown: Vec<&str> = pieces.iter().take(terms.max(1)).map(|s| s.trim()).collect();
    let mut out = shown.join(" ");
    if pieces.len() > shown.len() {
        out += " + …";
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Wall supports through the origin with their functions as labels.
pub fn diagram(d: &ScatteringDiagram, terms: usize) -> String {
    let (size, r) = (600.0, 260.0);
    let c = size / 2.0;
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">\n"
    );
    s += "  <g stroke-width=\"1.5\" font-size=\"10\" font-family=\"monospace\">\n";
    let mut sorted = d.clone();
    sorted.sort_canonical();
    for w in sorted.walls() {
        let (x, y) = w.dir();
        let len = ((x * x + y * y) as f64).sqrt();
        let (ux, uy) = (x as f64 / len, y as f64 / len);
        let end = (c + ux * r, c - uy * r);
        let start = match w.kind {
            WallKind::Line => (c - ux * r, c + uy * r),
            WallKind::Ray => (c, c),
        };
        let colour = if w.added { "crimson" } else { "black" };
        writeln!(
            s,
            "    <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{colour}\"/>",
            start.0, start.1, end.0, end.1
        )
        .unwrap();
        writeln!(
            s,
            "    <text x=\"{:.1}\" y=\"{:.1}\" fill=\"{colour}\">{}</text>",
            end.0 + 4.0 * ux.signum(),
            end.1 - 4.0,
            escape(&label(&w.f.to_string(), terms))
        )
        .unwrap();
    }
    s += "  </g>\n</svg>\n";
    s
}
