use std::fmt::Write;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use tropvertex::affine::{
    discrete_legendre, effective_gamma, monodromy_triple_check, parse_complex,
    unipotent_normal_form, write_complex, TropicalManifold,
};
use tropvertex::lattice::{self, IMat};
use tropvertex::scattering::random::random_diagram;
use tropvertex::scattering::{
    extract_gw, parse_diagram, write_diagram, ScatteringDiagram, Vec2, WallKind,
};
use tropvertex::series::TruncatedSeries;
use tropvertex::tropical::{corner_locus_2d, curve_svg, parse_polynomial, write_curve, CurveEdge};
use tropvertex::Error;

use crate::{
    read_input, svg, ConsistencyArgs, Context, Failure, Format, GwArgs, LegendreArgs,
    MonodromyArgs, ScatterArgs, TropcurveArgs,
};

type Outcome = Result<String, Failure>;

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn unsupported_format(cmd: &str, f: Format) -> Failure {
    Failure::Domain(Error::Unsupported(format!("{cmd} has no {f:?} output")))
}

/// `x·ux` and `y·uy` minus the identity, as text.
fn residual(d: &ScatteringDiagram) -> Result<String, Failure> {
    let th = d.loop_product(d.base_angle())?;
    let one = TruncatedSeries::one(d.order());
    let rx = th.ux.sub(&one)?;
    let ry = th.uy.sub(&one)?;
    Ok(format!("x: {rx}, y: {ry}"))
}

pub fn scatter(ctx: &Context, a: &ScatterArgs) -> Outcome {
    let src = read_input(&a.input)?;
    let initial = parse_diagram(&src, a.order)?;
    let out = initial.scatter()?;
    let consistent = out.loop_product(out.base_angle())?.is_identity();
    if ctx.verbose {
        eprintln!("loop product residual: {}", residual(&out)?);
        eprintln!("added rays: {}", out.added_rays().count());
    }
    if !consistent {
        return Err(Failure::Domain(Error::Internal(
            "completed diagram is not consistent".into(),
        )));
    }
    Ok(match ctx.format {
        Format::Json => write_diagram(&out),
        Format::Svg => svg::diagram(&out, a.svg_terms),
        Format::Text => {
            let mut sorted = out.clone();
            sorted.sort_canonical();
            let mut s = format!("order {}\n", sorted.order());
            for w in sorted.walls() {
                let kind = match (w.kind, w.added) {
                    (WallKind::Line, _) => "line",
                    (WallKind::Ray, true) => "added ray",
                    (WallKind::Ray, false) => "ray",
                };
                let (x, y) = w.dir();
                writeln!(s, "{kind} dir [{x},{y}], f = {}", w.f).unwrap();
            }
            s
        }
    })
}

fn parse_pair(text: &str, what: &str) -> Result<Vec2, Failure> {
    let bad = || {
        Failure::Domain(Error::Parse {
            line: 1,
            col: 1,
            msg: format!("{what}: expected two integers like 1,0, got {text:?}"),
        })
    };
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        _ => Err(bad()),
    }
}

pub fn gw(ctx: &Context, a: &GwArgs) -> Outcome {
    let dirs = a
        .dirs
        .split(';')
        .map(|d| parse_pair(d, "--dirs"))
        .collect::<Result<Vec<_>, _>>()?;
    if dirs.len() != a.ells.len() {
        return Err(Failure::Domain(Error::BadArgument(format!(
            "{} multiplicities for {} directions",
            a.ells.len(),
            dirs.len()
        ))));
    }
    let out_dir = parse_pair(&a.out_dir, "--out")?;
    let ells: Vec<(Vec2, u32)> = dirs.into_iter().zip(a.ells.iter().copied()).collect();
    let table = extract_gw(&ells, out_dir, a.order)?;
    match ctx.format {
        Format::Svg => Err(unsupported_format("gw", ctx.format)),
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "t_power": r.t_power,
                        "d": r.d,
                        "log_coeff": r.log_coeff.to_string(),
                        "n_tilde": r.n_tilde.to_string(),
                    })
                })
                .collect();
            Ok(pretty(
                &json!({ "out_dir": [out_dir.0, out_dir.1], "order": a.order, "rows": rows }),
            ))
        }
        Format::Text => {
            let mut s = format!(
                "# outgoing direction ({}, {}), order {}\n",
                out_dir.0, out_dir.1, a.order
            );
            s += "# t^k\td\tlog coefficient\tN~\n";
            for r in &table.rows {
                writeln!(s, "{}\t{}\t{}\t{}", r.t_power, r.d, r.log_coeff, r.n_tilde).unwrap();
            }
            Ok(s)
        }
    }
}

pub fn legendre(ctx: &Context, a: &LegendreArgs) -> Outcome {
    if ctx.format == Format::Svg {
        return Err(unsupported_format("legendre", ctx.format));
    }
    let loaded = parse_complex(&read_input(&a.input)?)?;
    let Some(mut phi) = loaded.phi else {
        return Err(Failure::Domain(Error::BadArgument(
            "the complex carries no function phi".into(),
        )));
    };
    let mut b = loaded.manifold;
    for _ in 0..a.times {
        (b, phi) = discrete_legendre(&b, &phi)?;
    }
    if ctx.verbose {
        eprintln!(
            "{} vertices, {} cells",
            b.vertex_names().len(),
            b.cells().len()
        );
    }
    Ok(write_complex(&b, Some(&phi)))
}

fn matrix_text(m: &IMat) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    format!("({})", rows.join("; "))
}

fn chain_names(b: &TropicalManifold, chain: &tropvertex::affine::Chain) -> Vec<String> {
    let mut out = Vec::new();
    for (i, &c) in chain.cells.iter().enumerate() {
        out.push(b.vertex_names()[chain.vertices[i]].clone());
        out.push(b.cells()[c].name.clone());
    }
    out.push(b.vertex_names()[*chain.vertices.last().expect("closed chain")].clone());
    out
}

/// Determinant, rank and elementary divisors of `T - I`, and the normal
/// form when `T` is unipotent of rank one.
fn invariants(t: &IMat) -> Value {
    let n = lattice::sub(t, &lattice::identity(t.len()));
    json!({
        "matrix": t,
        "det": lattice::det(t),
        "rank_t_minus_i": lattice::rank(&n),
        "divisors": lattice::elementary_divisors(&n),
        "unipotent_k": unipotent_normal_form(t).map(|(k, _)| k),
    })
}

fn invariants_text(t: &IMat) -> String {
    let n = lattice::sub(t, &lattice::identity(t.len()));
    let mut s = format!("matrix: {}\n", matrix_text(t));
    writeln!(s, "det: {}", lattice::det(t)).unwrap();
    writeln!(s, "rank(T - I): {}", lattice::rank(&n)).unwrap();
    writeln!(
        s,
        "elementary divisors of T - I: {:?}",
        lattice::elementary_divisors(&n)
    )
    .unwrap();
    if let Some((k, _)) = unipotent_normal_form(t) {
        writeln!(s, "conjugate to (1 {k}; 0 1)").unwrap();
    }
    s
}

fn split_names(text: &str) -> Vec<&str> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

pub fn monodromy(ctx: &Context, a: &MonodromyArgs) -> Outcome {
    if ctx.format == Format::Svg {
        return Err(unsupported_format("monodromy", ctx.format));
    }
    let b = parse_complex(&read_input(&a.input)?)?.manifold;
    let json = ctx.format == Format::Json;
    if let Some(text) = &a.chain {
        let chain = b.chain(&split_names(text))?;
        let t = b.monodromy(&chain)?.matrix;
        let names = chain_names(&b, &chain);
        return Ok(if json {
            pretty(&json!({ "chain": names, "monodromy": invariants(&t) }))
        } else {
            format!("chain: {}\n{}", names.join(", "), invariants_text(&t))
        });
    }
    if let Some(text) = &a.triple {
        let mut face = Vec::new();
        for name in split_names(text) {
            face.push(
                b.vertex_index(name)
                    .ok_or_else(|| Error::BadArgument(format!("unknown vertex {name}")))?,
            );
        }
        face.sort_unstable();
        let r = monodromy_triple_check(&b, &face)?;
        let chains: Vec<Vec<String>> = r.chains.iter().map(|c| chain_names(&b, c)).collect();
        if json {
            return Ok(pretty(&json!({
                "face": b.face_label(&face),
                "chains": chains,
                "matrices": r.matrices,
                "product_is_identity": r.product_is_identity,
                "square_zero": r.square_zero,
                "rank_one": r.rank_one,
                "type": format!("{:?}", r.vertex_type),
                "dual_matrices": r.dual_matrices,
                "dual_type": format!("{:?}", r.dual_type),
                "conjugator": r.conjugator,
                "pass": r.all_pass(),
            })));
        }
        let mut s = format!("face {}\n", b.face_label(&face));
        for (c, t) in chains.iter().zip(&r.matrices) {
            writeln!(s, "{}: {}", c.join(", "), matrix_text(t)).unwrap();
        }
        writeln!(s, "T1 T2 T3 = I: {}", r.product_is_identity).unwrap();
        writeln!(s, "(T - I)^2 = 0: {:?}", r.square_zero).unwrap();
        writeln!(s, "rank(T - I) = 1: {:?}", r.rank_one).unwrap();
        writeln!(s, "type: {:?}, dual type: {:?}", r.vertex_type, r.dual_type).unwrap();
        if let Some(c) = &r.conjugator {
            writeln!(s, "conjugator: {}", matrix_text(c)).unwrap();
        }
        writeln!(s, "{}", if r.all_pass() { "PASS" } else { "FAIL" }).unwrap();
        return Ok(s);
    }
    let loops = effective_gamma(&b);
    if json {
        let rows: Vec<Value> = loops
            .iter()
            .map(|l| json!({ "face": b.face_label(&l.face), "chain": chain_names(&b, &l.chain), "monodromy": invariants(&l.matrix) }))
            .collect();
        return Ok(pretty(&json!({ "loops": rows })));
    }
    let mut s = format!("{} loops with nontrivial monodromy\n", loops.len());
    for l in &loops {
        writeln!(
            s,
            "{} around {}: {}",
            chain_names(&b, &l.chain).join(", "),
            b.face_label(&l.face),
            matrix_text(&l.matrix)
        )
        .unwrap();
    }
    Ok(s)
}

pub fn tropcurve(ctx: &Context, a: &TropcurveArgs) -> Outcome {
    let src = match a.polynomial.strip_prefix('@') {
        Some(path) => read_input(path.as_ref())?,
        None => a.polynomial.clone(),
    };
    let g = parse_polynomial(src.trim())?;
    let c = corner_locus_2d(&g)?;
    let violations = c.check_balanced()?;
    if !violations.is_empty() {
        return Err(Failure::Domain(Error::Internal(format!(
            "corner locus is not balanced: {violations:?}"
        ))));
    }
    if ctx.verbose {
        eprintln!(
            "{g}: {} vertices, {} edges, balanced",
            c.vertices.len(),
            c.edges.len()
        );
    }
    Ok(match ctx.format {
        Format::Json => write_curve(&c, Some(&g)),
        Format::Svg => curve_svg(&c),
        Format::Text => {
            let mut s = format!("curve of {g}\n");
            for (i, v) in c.vertices.iter().enumerate() {
                writeln!(s, "vertex {i}: ({}, {})", v[0], v[1]).unwrap();
            }
            for e in &c.edges {
                match e {
                    CurveEdge::Segment {
                        from,
                        to,
                        direction,
                        weight,
                    } => writeln!(
                        s,
                        "segment {from} -> {to}, direction {direction:?}, weight {weight}"
                    )
                    .unwrap(),
                    CurveEdge::Ray {
                        from,
                        direction,
                        weight,
                    } => writeln!(
                        s,
                        "ray from {from}, direction {direction:?}, weight {weight}"
                    )
                    .unwrap(),
                    CurveEdge::Line {
                        through,
                        direction,
                        weight,
                    } => writeln!(
                        s,
                        "line through ({}, {}), direction {direction:?}, weight {weight}",
                        through[0], through[1]
                    )
                    .unwrap(),
                }
            }
            s += "balanced: yes\n";
            s
        }
    })
}

pub fn consistency(ctx: &Context, a: &ConsistencyArgs) -> Outcome {
    if ctx.format == Format::Svg {
        return Err(unsupported_format("consistency", ctx.format));
    }
    let mut rng = StdRng::seed_from_u64(a.seed);
    let mut rows = Vec::new();
    let mut failures = 0;
    for i in 0..a.count {
        let d = random_diagram(&mut rng, a.lines.max(1), a.order).scatter()?;
        let base = d.base_angle();
        let identity = d.loop_product(base)?.is_identity();
        let symplectic = d
            .partial_products(base)?
            .iter()
            .all(|th| th.is_symplectic());
        if !(identity && symplectic) {
            failures += 1;
        }
        if ctx.verbose {
            eprintln!(
                "diagram {i}: {} walls, identity {identity}, symplectic {symplectic}",
                d.walls().len()
            );
        }
        rows.push((i, d.walls().len(), identity, symplectic));
    }
    let text = if ctx.format == Format::Json {
        let list: Vec<Value> = rows
            .iter()
            .map(|(i, w, id, sy)| json!({ "diagram": i, "walls": w, "identity": id, "symplectic": sy }))
            .collect();
        pretty(&json!({ "seed": a.seed, "order": a.order, "diagrams": list, "failures": failures }))
    } else {
        let mut s = String::new();
        for (i, w, id, sy) in &rows {
            let status = if *id && *sy { "PASS" } else { "FAIL" };
            writeln!(s, "{status} diagram {i}: {w} walls").unwrap();
        }
        writeln!(
            s,
            "{} of {} consistent (seed {}, order {})",
            a.count - failures,
            a.count,
            a.seed,
            a.order
        )
        .unwrap();
        s
    };
    if failures > 0 {
        eprint!("{text}");
        return Err(Failure::Domain(Error::Internal(format!(
            "{failures} diagrams failed the loop check"
        ))));
    }
    Ok(text)
}
