//! Text and JSON renderings for the subcommands.

use std::fmt::Write as _;

use anyhow::Result;
use serde_json::{json, Value};

use corect::partitions::staircase_syt_count;
use corect::partitions::{partition_to_indexset, IndexSet};
use corect::plabic::{format_monomial, Flow, FlowPolynomial, PerfectOrientation, PlabicGraph, VertexKind};
use corect::polytope::{f_vector, facets, format_rational, normalized_volume, render_inequality, RationalPolytopeV};
use corect::superpotential::{
    build_superpotential, coordinate_names, enumerate_antichains, format_superpotential, gamma_hrep, gamma_vertices,
    StaircasePoset,
};
use corect::valuation::{compact, delta_vertices, CoordinateSystem, PluckerValuation};

use crate::BudgetExceeded;

fn kind_name(kind: VertexKind) -> String {
    match kind {
        VertexKind::Boundary(label) => format!("boundary {label}"),
        VertexKind::Internal(c) => format!("{c:?}").to_lowercase(),
    }
}

fn vector(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn graph_text(g: &PlabicGraph) -> String {
    let mut out = format!("vertices: {}\n", g.vertices().len());
    for v in g.vertices() {
        let _ = writeln!(out, "  {} {} at ({}, {})", v.name, kind_name(v.kind), v.position.0, v.position.1);
    }
    let _ = writeln!(out, "edges: {}", g.edges().len());
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "  {} -- {}", g.vertices()[a].name, g.vertices()[b].name);
    }
    let _ = writeln!(out, "faces: {}", g.faces().len());
    for f in g.faces() {
        let names: Vec<&str> = f.boundary.iter().map(|&v| g.vertices()[v].name.as_str()).collect();
        let tag = if f.frozen { " frozen" } else { "" };
        let _ = writeln!(out, "  [{}]{tag}: {}", f.label, names.join(" "));
    }
    out
}

pub fn graph_json(g: &PlabicGraph) -> Value {
    let vertices: Vec<Value> = g
        .vertices()
        .iter()
        .map(|v| {
            let (kind, label) = match v.kind {
                VertexKind::Boundary(l) => ("boundary", Some(l)),
                VertexKind::Internal(_) => ("internal", None),
            };
            json!({
                "name": v.name,
                "kind": kind,
                "label": label,
                "color": v.color(),
                "position": [v.position.0, v.position.1],
            })
        })
        .collect();
    let edges: Vec<Value> =
        g.edges().iter().map(|&(a, b)| json!([g.vertices()[a].name, g.vertices()[b].name])).collect();
    json!({ "n": g.n(), "vertices": vertices, "edges": edges, "faces": g.faces_json() })
}

fn directed_edges(g: &PlabicGraph, o: &PerfectOrientation) -> Vec<(String, String)> {
    (0..g.edges().len())
        .map(|e| {
            let (from, to) = o.head_tail(g, e);
            (g.vertices()[from].name.clone(), g.vertices()[to].name.clone())
        })
        .collect()
}

pub fn orientation_text(g: &PlabicGraph, o: &PerfectOrientation) -> String {
    let mut out = format!("sources: {}\n", o.sources);
    for (from, to) in directed_edges(g, o) {
        let _ = writeln!(out, "  {from} -> {to}");
    }
    out
}

pub fn orientation_json(g: &PlabicGraph, o: &PerfectOrientation) -> Value {
    let edges: Vec<Value> = directed_edges(g, o).into_iter().map(|(a, b)| json!([a, b])).collect();
    json!({ "n": g.n(), "sources": o.sources.elements(), "edges": edges })
}

fn path_names(g: &PlabicGraph, vertices: &[usize]) -> Vec<String> {
    vertices.iter().map(|&v| g.vertices()[v].name.clone()).collect()
}

fn face_labels(g: &PlabicGraph, faces: &[usize]) -> Vec<String> {
    faces.iter().map(|&f| g.faces()[f].label.to_string()).collect()
}

fn format_polynomial(poly: &FlowPolynomial) -> String {
    if poly.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = poly
        .iter()
        .map(|(m, &c)| if c == 1 { format_monomial(m) } else { format!("{c} {}", format_monomial(m)) })
        .collect();
    terms.join(" + ")
}

pub fn flows_text(g: &PlabicGraph, target: &IndexSet, flows: &[Flow], poly: &FlowPolynomial) -> String {
    let mut out = format!("flows to {target}: {}\n", flows.len());
    for (k, flow) in flows.iter().enumerate() {
        let _ = writeln!(out, "flow {}: {}", k + 1, format_monomial(&flow.monomial(g)));
        for p in &flow.paths {
            let _ = writeln!(
                out,
                "  {}  | left faces: {}",
                path_names(g, &p.vertices).join(" -> "),
                face_labels(g, &p.left_faces).join(" ")
            );
        }
    }
    let _ = writeln!(out, "polynomial: {}", format_polynomial(poly));
    out
}

pub fn flows_json(g: &PlabicGraph, target: &IndexSet, flows: &[Flow], poly: &FlowPolynomial) -> Value {
    let flows: Vec<Value> = flows
        .iter()
        .map(|f| {
            let paths: Vec<Value> = f
                .paths
                .iter()
                .map(|p| json!({ "vertices": path_names(g, &p.vertices), "left_faces": face_labels(g, &p.left_faces) }))
                .collect();
            json!({ "paths": paths, "monomial": format_monomial(&f.monomial(g)) })
        })
        .collect();
    let terms: Vec<Value> =
        poly.iter().map(|(m, &c)| json!({ "monomial": format_monomial(m), "coefficient": c })).collect();
    json!({ "n": g.n(), "target": target.elements(), "flows": flows, "polynomial": terms })
}

/// Rows keyed by the index sets of both class members, smaller first.
fn valuation_rows(n: usize, rows: &[PluckerValuation]) -> Result<Vec<(Vec<IndexSet>, Vec<i64>)>> {
    let mut out = Vec::new();
    for row in rows {
        let partner = partition_to_indexset(&row.partition.transpose(), n)?;
        let mut sets = vec![row.index_set.clone(), partner];
        sets.sort();
        sets.dedup();
        out.push((sets, row.valuation.clone()));
    }
    out.sort();
    Ok(out)
}

pub fn valuations_text(n: usize, rows: &[PluckerValuation]) -> Result<String> {
    let coords = CoordinateSystem::new(n)?;
    let mut out = format!("coordinates: {}\n", coords.headers().join(" "));
    for (sets, v) in valuation_rows(n, rows)? {
        let key: Vec<String> = sets.iter().map(compact).collect();
        let _ = writeln!(out, "{}  {}", key.join("="), vector(&v));
    }
    Ok(out)
}

pub fn valuations_json(n: usize, rows: &[PluckerValuation]) -> Result<Value> {
    let coords = CoordinateSystem::new(n)?;
    let rows: Vec<Value> = valuation_rows(n, rows)?
        .into_iter()
        .map(|(sets, v)| {
            let sets: Vec<&[usize]> = sets.iter().map(IndexSet::elements).collect();
            json!({ "indexsets": sets, "valuation": v })
        })
        .collect();
    Ok(json!({ "n": n, "coordinates": coords.headers(), "rows": rows }))
}

fn with_coords(value: Value, names: &[String]) -> Value {
    let mut value = value;
    if let Value::Object(map) = &mut value {
        map.insert("coords".into(), json!(names));
    }
    value
}

pub fn gamma(n: usize, vrep: bool, json_out: bool) -> Result<String> {
    let names = coordinate_names(n)?;
    if vrep {
        let poset = StaircasePoset::new(n)?;
        if json_out {
            let v = gamma_vertices(n)?;
            return Ok(serde_json::to_string_pretty(&with_coords(serde_json::to_value(&v)?, &names))? + "\n");
        }
        let mut out = format!("coordinates: {}\n", names.join(" "));
        for a in enumerate_antichains(&poset) {
            let _ = writeln!(out, "{a}  {}", vector(&a.indicator(&poset)));
        }
        return Ok(out);
    }
    let h = gamma_hrep(n)?;
    if json_out {
        return Ok(serde_json::to_string_pretty(&with_coords(serde_json::to_value(&h)?, &names))? + "\n");
    }
    let mut out = format!("W = {}\n", format_superpotential(&build_superpotential(n)?));
    for row in h.rows() {
        let _ = writeln!(out, "{}", render_inequality(row, &names));
    }
    Ok(out)
}

fn delta_polytope(n: usize) -> Result<RationalPolytopeV> {
    let coords = CoordinateSystem::new(n)?;
    let points: Vec<Vec<i64>> = delta_vertices(n)?.into_iter().collect();
    Ok(RationalPolytopeV::from_integer_points(coords.len(), &points)?)
}

pub fn delta(n: usize, hrep: bool, fvector: bool, json_out: bool) -> Result<String> {
    let names: Vec<String> = CoordinateSystem::new(n)?.headers().into_iter().map(|h| format!("p{h}")).collect();
    let p = delta_polytope(n)?;
    if fvector {
        let f = f_vector(&p)?;
        return Ok(if json_out {
            serde_json::to_string_pretty(&json!({ "n": n, "f_vector": f }))? + "\n"
        } else {
            let parts: Vec<String> = f.iter().map(usize::to_string).collect();
            format!("f-vector: ({})\n", parts.join(", "))
        });
    }
    if hrep {
        let h = facets(&p)?;
        if json_out {
            return Ok(serde_json::to_string_pretty(&with_coords(serde_json::to_value(&h)?, &names))? + "\n");
        }
        let mut out = String::new();
        for row in h.rows() {
            let _ = writeln!(out, "{}", render_inequality(row, &names));
        }
        return Ok(out);
    }
    if json_out {
        return Ok(serde_json::to_string_pretty(&with_coords(serde_json::to_value(&p)?, &names))? + "\n");
    }
    let mut out = format!("coordinates: {}\n", names.join(" "));
    for point in p.integer_points().unwrap_or_default() {
        let _ = writeln!(out, "{}", vector(&point));
    }
    Ok(out)
}

/// Runs `f` on a worker thread, giving up after `budget` seconds.
pub fn with_budget<T: Send + 'static>(budget: u64, f: impl FnOnce() -> T + Send + 'static) -> Result<T> {
    let (tx, rx) = std::sync::mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(f());
    });
    rx.recv_timeout(std::time::Duration::from_secs(budget)).map_err(|_| BudgetExceeded(budget).into())
}

pub fn volume(n: usize, json_out: bool, budget: u64) -> Result<String> {
    let (vg, vd) = with_budget(budget, move || -> Result<_> {
        let vg = normalized_volume(&gamma_vertices(n)?)?;
        let vd = normalized_volume(&delta_polytope(n)?)?;
        Ok((format_rational(&vg), format_rational(&vd)))
    })??;
    let expected = staircase_syt_count(n).to_string();
    Ok(if json_out {
        serde_json::to_string_pretty(&json!({ "n": n, "gamma": vg, "delta": vd, "expected": expected }))? + "\n"
    } else {
        format!("gamma: {vg}\ndelta: {vd}\nstaircase SYT: {expected}\n")
    })
}
