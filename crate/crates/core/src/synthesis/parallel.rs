use serde::Serialize;

use super::{euler_tour, ConstructionCertificate, Kind, SynthesisError, Witness};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::trace::{validate_double_trace, DoubleTrace};

/// One subwalk interchange at `vertex`.
///
/// The walk reads `v e2 .. e1 v e3 .. f4 v f5 .. e1` from the first chosen
/// occurrence of `v`; the interchange swaps the first two segments, merging
/// the figure cycles through `e1` and `f4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Swap {
    pub vertex: Vertex,
    pub e1: EdgeId,
    pub e2: EdgeId,
    pub e3: EdgeId,
    pub f4: EdgeId,
    pub f5: EdgeId,
    pub cycles_before: usize,
    pub cycles_after: usize,
}

fn not_eulerian(g: &Graph) -> Option<SynthesisError> {
    g.odd_vertex().map(|vertex| SynthesisError::NotEulerian { vertex, degree: g.degree(vertex) })
}

fn validated<'g>(g: &'g Graph, walk: &[Vertex]) -> Result<DoubleTrace<'g>, SynthesisError> {
    validate_double_trace(g, walk).map_err(|err| SynthesisError::internal(err.to_string()))
}

/// Per edge, the tail of its traversals (equal for both when parallel).
fn directions(w: &DoubleTrace) -> Vec<Vec<Vertex>> {
    let mut tails = vec![Vec::with_capacity(2); w.graph().edge_count()];
    for s in w.steps() {
        tails[s.edge].push(s.tail);
    }
    tails
}

/// Doubles an Euler tour, then interchanges subwalks until every vertex
/// figure is a single cycle.
fn parallel_walk(g: &Graph) -> Result<(DoubleTrace<'_>, Vec<Vertex>, Vec<Swap>), SynthesisError> {
    let tour = euler_tour(g).ok_or_else(|| not_eulerian(g).unwrap_or_else(|| SynthesisError::internal("no tour")))?;
    let mut walk: Vec<Vertex> = tour.iter().chain(&tour).copied().collect();
    let mut trace = validated(g, &walk)?;
    let mut swaps = Vec::new();
    let expected_directions = directions(&trace);
    while let Some(v) = g.vertices().find(|&v| !trace.vertex_figure(v).is_single_cycle()) {
        let before = trace.figure_cycle_total();
        let (next, swap) = interchange(&trace, &walk, v)?;
        let next_trace = validated(g, &next)?;
        let after = next_trace.figure_cycle_total();
        if after + 1 != before {
            return Err(SynthesisError::internal(format!("swap at {v} took {before} figure cycles to {after}")));
        }
        if directions(&next_trace) != expected_directions {
            return Err(SynthesisError::internal(format!("swap at {v} changed an edge direction")));
        }
        swaps.push(Swap { cycles_before: before, cycles_after: after, ..swap });
        walk = next;
        trace = next_trace;
    }
    Ok((trace, tour, swaps))
}

fn interchange(trace: &DoubleTrace, walk: &[Vertex], v: Vertex) -> Result<(Vec<Vertex>, Swap), SynthesisError> {
    let g = trace.graph();
    let n = walk.len();
    let figure = trace.vertex_figure(v);
    let (c1, c2) = match figure.cycles.as_slice() {
        [c1, c2, ..] => (c1, c2),
        _ => return Err(SynthesisError::internal(format!("vertex {v} has a single figure cycle"))),
    };
    let edge = |a: Vertex, b: Vertex| g.edge_between(a, b).expect("consecutive walk vertices are adjacent");
    let passages: Vec<(usize, EdgeId, EdgeId)> = (0..n)
        .filter(|&p| walk[p] == v)
        .map(|p| (p, edge(walk[(p + n - 1) % n], v), edge(v, walk[(p + 1) % n])))
        .collect();
    let e1 = c1
        .iter()
        .copied()
        .filter(|&e| passages.iter().any(|&(_, into, _)| into == e))
        .min()
        .ok_or_else(|| SynthesisError::internal(format!("no entering edge in the first cycle at {v}")))?;
    let entering: Vec<usize> = passages.iter().filter(|&&(_, into, _)| into == e1).map(|&(p, _, _)| p).collect();
    let [mut a, mut b] = entering[..] else {
        return Err(SynthesisError::internal(format!("edge {e1} does not enter {v} twice")));
    };
    let &(c, f4, f5) = passages
        .iter()
        .find(|&&(_, into, _)| c2.contains(&into))
        .ok_or_else(|| SynthesisError::internal(format!("no passage through the second cycle at {v}")))?;
    let offset = |p: usize| (p + n - a) % n;
    if offset(c) < offset(b) {
        std::mem::swap(&mut a, &mut b);
    }
    let offset = |p: usize| (p + n - a) % n;
    let rotated: Vec<Vertex> = walk[a..].iter().chain(&walk[..a]).copied().collect();
    let (b_at, c_at) = (offset(b), offset(c));
    let mut next = Vec::with_capacity(n);
    next.push(v);
    next.extend_from_slice(&rotated[b_at + 1..c_at]);
    next.push(v);
    next.extend_from_slice(&rotated[1..b_at]);
    next.push(v);
    next.extend_from_slice(&rotated[c_at + 1..]);
    let swap = Swap {
        vertex: v,
        e1,
        e2: edge(v, rotated[1]),
        e3: edge(v, rotated[b_at + 1]),
        f4,
        f5,
        cycles_before: 0,
        cycles_after: 0,
    };
    Ok((next, swap))
}

/// A parallel strong trace; exists exactly for Eulerian graphs.
pub fn parallel_strong_trace(g: &Graph) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    if let Some(err) = not_eulerian(g) {
        return Err(err);
    }
    let (trace, tour, swaps) = parallel_walk(g)?;
    let emb = trace.to_embedding().map_err(|err| SynthesisError::internal(err.to_string()))?;
    ConstructionCertificate::seal(g, Kind::ParallelStrong, None, Some(trace), Some(emb), Witness::EulerTour { tour, swaps })
}

/// A parallel `d`-stable trace; exists exactly for Eulerian graphs whose
/// degrees all exceed `d`.
pub fn parallel_d_stable_trace(g: &Graph, d: usize) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    if let Some(err) = not_eulerian(g) {
        return Err(err);
    }
    let vertex = g.min_degree_vertex();
    if g.degree(vertex) <= d {
        return Err(SynthesisError::DegreeTooSmall { vertex, degree: g.degree(vertex), d });
    }
    let (trace, tour, swaps) = parallel_walk(g)?;
    let emb = trace.to_embedding().map_err(|err| SynthesisError::internal(err.to_string()))?;
    ConstructionCertificate::seal(
        g,
        Kind::ParallelDStable,
        Some(d),
        Some(trace),
        Some(emb),
        Witness::EulerTour { tour, swaps },
    )
}
