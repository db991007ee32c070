//! Plain-text rendering of command results.

use std::fmt::Write;

use serde_json::Value;
use strongtrace::synthesis::{AntiparallelDecision, Witness};
use strongtrace::{ConstructionCertificate, DoubleTrace, EdgeId, EnumerationResult, Graph, TraceReport};

fn edge_name(g: &Graph, e: EdgeId) -> String {
    let (u, v) = g.endpoints(e);
    format!("{}{}", g.label(u), g.label(v))
}

fn edge_list(g: &Graph, edges: &[EdgeId]) -> String {
    edges.iter().map(|&e| edge_name(g, e)).collect::<Vec<_>>().join(" ")
}

pub fn info(json: &Value) -> String {
    let mut out = String::new();
    for key in ["vertices", "edges", "betti", "min_degree", "max_degree", "eulerian", "tree"] {
        writeln!(out, "{key:<11} {}", json[key]).unwrap();
    }
    let bridges: Vec<String> = json["bridges"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|pair| format!("{}{}", pair[0].as_str().unwrap_or(""), pair[1].as_str().unwrap_or("")))
        .collect();
    writeln!(out, "{:<11} {}", "bridges", if bridges.is_empty() { "-".into() } else { bridges.join(" ") }).unwrap();
    out
}

/// The trace as a vertex sequence, then each edge with both traversals.
pub fn trace_block(g: &Graph, trace: &DoubleTrace) -> String {
    let mut out = String::new();
    let mut labels = trace.labels();
    labels.push(labels[0]);
    writeln!(out, "trace ({} steps): {}", trace.len(), labels.join(" ")).unwrap();
    let mut passes = vec![Vec::with_capacity(2); g.edge_count()];
    for s in trace.steps() {
        passes[s.edge].push(format!("{}->{}", g.label(s.tail), g.label(s.head)));
    }
    let tags = trace.edge_tags();
    writeln!(out, "{:<8} {:<10} {:<10} direction", "edge", "first", "second").unwrap();
    for (e, pass) in passes.iter().enumerate() {
        let tag = format!("{:?}", tags[e]).to_lowercase();
        writeln!(out, "{:<8} {:<10} {:<10} {tag}", edge_name(g, e), pass[0], pass[1]).unwrap();
    }
    out
}

fn summary(out: &mut String, report: &TraceReport) {
    let direction = match (report.parallel, report.antiparallel) {
        (true, _) => "parallel",
        (_, true) => "antiparallel",
        _ => "mixed",
    };
    writeln!(out, "strong: {}  max stable d: {}  edges: {direction}", report.strong, report.max_stable_d).unwrap();
}

pub fn check(g: &Graph, trace: &DoubleTrace, report: &TraceReport, d: Option<u64>, holds: bool) -> String {
    let mut out = trace_block(g, trace);
    summary(&mut out, report);
    for (&v, vr) in &report.vertices {
        if vr.cycles > 1 {
            let sets: Vec<String> = vr
                .neighbor_sets
                .iter()
                .map(|set| format!("{{{}}}", set.iter().map(|&u| g.label(u)).collect::<Vec<_>>().join(",")))
                .collect();
            writeln!(out, "vertex {}: {} figure cycles, repetitions on {}", g.label(v), vr.cycles, sets.join(" ")).unwrap();
        }
    }
    let property = d.map_or_else(|| "strong".to_owned(), |d| format!("{d}-stable"));
    writeln!(out, "{property}: {}", if holds { "yes" } else { "no" }).unwrap();
    out
}

pub fn certificate(cert: &ConstructionCertificate, show_witness: bool) -> String {
    let mut out = String::new();
    let kind = serde_json::to_value(cert.kind()).unwrap_or_default();
    write!(out, "kind: {}", kind.as_str().unwrap_or("?")).unwrap();
    if let Some(d) = cert.d() {
        write!(out, "  d: {d}").unwrap();
    }
    writeln!(out, "  verified: {}", cert.verdict().verified).unwrap();
    if let Some(trace) = cert.trace() {
        out.push_str(&trace_block(trace.graph(), trace));
    }
    if let Some(report) = &cert.verdict().report {
        summary(&mut out, report);
    }
    if let Some(s) = &cert.verdict().surface {
        let surface = if s.orientable { "orientable" } else { "nonorientable" };
        writeln!(out, "surface: {surface}, genus {}, {} face", s.genus, s.face_count).unwrap();
    }
    if let Some(emb) = cert.embedding() {
        let g = emb.graph();
        for v in g.vertices() {
            let signs: Vec<String> = emb
                .rotation(v)
                .iter()
                .map(|&e| format!("{}{}", edge_name(g, e), if emb.sign(e).value() < 0 { "-" } else { "" }))
                .collect();
            writeln!(out, "rotation {}: {}", g.label(v), signs.join(" ")).unwrap();
        }
    }
    if show_witness {
        let g = cert.embedding().map(|e| e.graph()).or_else(|| cert.trace().map(|t| t.graph()));
        match (cert.witness(), g) {
            (Witness::SpanningTree { tree }, Some(g)) => {
                writeln!(out, "witness tree: {}", edge_list(g, tree.tree_edges())).unwrap();
                writeln!(out, "cotree: {}", edge_list(g, tree.cotree_edges())).unwrap();
            }
            (Witness::EulerTour { tour, swaps }, Some(g)) => {
                let tour: Vec<&str> = tour.iter().map(|&v| g.label(v)).collect();
                writeln!(out, "euler tour: {}", tour.join(" ")).unwrap();
                for s in swaps {
                    writeln!(
                        out,
                        "swap at {}: e1 {} e2 {} e3 {} f4 {} f5 {}, cycles {} -> {}",
                        g.label(s.vertex),
                        edge_name(g, s.e1),
                        edge_name(g, s.e2),
                        edge_name(g, s.e3),
                        edge_name(g, s.f4),
                        edge_name(g, s.f5),
                        s.cycles_before,
                        s.cycles_after
                    )
                    .unwrap();
                }
            }
            (Witness::Flips { flips }, Some(g)) => {
                for f in flips {
                    writeln!(out, "flip {}: faces {} -> {}", edge_name(g, f.edge), f.faces_before, f.faces_after).unwrap();
                }
            }
            _ => {}
        }
    }
    out
}

pub fn decision(d: &AntiparallelDecision, show_witness: bool) -> String {
    let mut out = String::new();
    writeln!(out, "antiparallel 1-stable trace exists: {}", d.exists).unwrap();
    writeln!(out, "spanning trees examined: {}", d.trees_examined).unwrap();
    if let Some(reason) = &d.refusal {
        writeln!(out, "reason: {reason}").unwrap();
    }
    if let (true, Some(tree)) = (show_witness, &d.witness) {
        writeln!(out, "witness tree edges: {:?}", tree.tree_edges()).unwrap();
    }
    out
}

pub fn enumeration(g: &Graph, results: &[EnumerationResult], expect: Option<usize>) -> String {
    let mut out = String::new();
    writeln!(out, "{:<18} {:>8} {:>9} {:>13} {:>7}", "convention", "count", "parallel", "antiparallel", "mixed").unwrap();
    for r in results {
        let flag = if Some(r.count) == expect { "  <- matches" } else { "" };
        writeln!(
            out,
            "{:<18} {:>8} {:>9} {:>13} {:>7}{flag}",
            r.convention.name(),
            r.count,
            r.classes.parallel,
            r.classes.antiparallel,
            r.classes.mixed
        )
        .unwrap();
    }
    if let [only] = results {
        for rep in only.representatives.iter().flatten() {
            writeln!(out, "{}", rep.iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ")).unwrap();
        }
    }
    out
}
