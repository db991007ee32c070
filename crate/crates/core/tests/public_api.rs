use strongtrace::synthesis::{
    antiparallel_decision, antiparallel_strong_trace, any_double_trace, d_stable_trace, enumerate_strong_traces,
    parallel_strong_trace, strong_trace,
};
use strongtrace::{fixtures, parse_graph, parse_trace, Budget, Convention, EnumerationOptions, SynthesisError};

const BOWTIE: &str = "# two triangles sharing a\na b\nb c\nc a\na d\nd e\ne a\n";

#[test]
fn strong_trace_round_trips_through_its_embedding() {
    let g = parse_graph(BOWTIE).unwrap();
    let cert = strong_trace(&g).unwrap();
    let trace = cert.trace().unwrap();
    assert!(trace.stability().is_strong);
    let emb = trace.to_embedding().unwrap();
    assert_eq!(emb.face_count(), 1);
    let text = trace.labels().join(" ");
    assert_eq!(parse_trace(&g, &text).unwrap().canonical(), trace.canonical());
}

#[test]
fn certificate_json_shape() {
    let g = parse_graph(BOWTIE).unwrap();
    let cert = antiparallel_strong_trace(&g, &Budget::default()).unwrap();
    let json = serde_json::to_value(&cert).unwrap();
    assert_eq!(json["kind"], "antiparallel-strong");
    assert_eq!(json["verified"], true);
    assert_eq!(json["surface"]["orientable"], true);
    assert_eq!(json["surface"]["genus"], 1);
    assert_eq!(json["trace"].as_array().unwrap().len(), 12);
    assert_eq!(json["witness"]["kind"], "spanning-tree");
    assert!(json["embedding"]["rotation"].is_object());
    assert_eq!(serde_json::to_value(cert.without_witness()).unwrap()["witness"]["kind"], "none");
}

#[test]
fn bowtie_tree_certificate() {
    let g = parse_graph(BOWTIE).unwrap();
    let decision = antiparallel_decision(&g, &Budget::default()).unwrap();
    let tree = decision.witness.unwrap();
    let names: Vec<String> = tree
        .tree_edges()
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e);
            format!("{}{}", g.label(u), g.label(v))
        })
        .collect();
    assert_eq!(names, ["ab", "bc", "ad", "de"]);
}

#[test]
fn refusals_are_structured() {
    let k4 = fixtures::complete(4);
    assert_eq!(d_stable_trace(&k4, 3).unwrap_err(), SynthesisError::DegreeTooSmall { vertex: 0, degree: 3, d: 3 });
    let json = serde_json::to_value(parallel_strong_trace(&k4).unwrap_err()).unwrap();
    assert_eq!(json, serde_json::json!({ "error": "not_eulerian", "vertex": 0, "degree": 3 }));
}

#[test]
fn retracing_a_path_is_strong() {
    let g = fixtures::path(3);
    let w = any_double_trace(&g);
    assert_eq!(w.len(), 4);
    assert!(w.stability().is_strong);
    assert_eq!(w.stability().max_stable_d, 0);
}

#[test]
fn enumeration_result_json_shape() {
    let c3 = fixtures::cycle(3);
    let result = enumerate_strong_traces(&c3, Convention::RotationReversal, &EnumerationOptions::default()).unwrap();
    let json = serde_json::to_value(&result).unwrap();
    assert_eq!(json["convention"], "rotation-reversal");
    assert_eq!(json["count"], 1);
    assert_eq!(json["classes"], serde_json::json!({ "parallel": 1, "antiparallel": 0, "mixed": 0 }));
    assert_eq!(json["representatives"], serde_json::json!([[0, 1, 2, 0, 1, 2]]));
}
