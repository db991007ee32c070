//! Double traces: validation, vertex figures, repetitions and edge directions.
//!
//! A double trace is a closed walk using every edge exactly twice. At each
//! vertex `v` the pairs of consecutive edges through `v` form the *vertex
//! figure*, a 2-regular multigraph on the edges at `v`. Its cycles carry all
//! of the repetition structure: a set `N` of neighbours admits an
//! `N`-repetition exactly when the edges towards `N` are a union of cycles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::embedding::{embedding_from_walks, Embedding, EmbeddingError};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::walk::{canonical_vertices, steps_from_vertices, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("walk has length {found}, a double trace needs {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("vertices at positions {position} and {next} are not adjacent")]
    NotAWalk { position: usize, next: usize },
    #[error("edge {edge} is traversed {count} times, expected exactly twice")]
    NotDoubleCover { edge: EdgeId, count: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("{set:?} is not a subset of the neighbours of vertex {vertex}")]
    NotANeighborSet { vertex: Vertex, set: Vec<Vertex> },
    #[error("vertex {vertex} has a vertex figure with {cycles} cycles")]
    NotStrong { vertex: Vertex, cycles: usize },
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

/// Checks that `walk` (a cyclic vertex sequence) is a double trace of `g`.
pub fn validate_double_trace<'g>(g: &'g Graph, walk: &[Vertex]) -> Result<DoubleTrace<'g>, TraceError> {
    if walk.is_empty() {
        return Err(TraceError::WrongLength { expected: 2 * g.edge_count(), found: 0 });
    }
    let steps = steps_from_vertices(g, walk).ok_or_else(|| {
        let n = walk.len();
        let position = (0..n)
            .find(|&i| {
                let (a, b) = (walk[i], walk[(i + 1) % n]);
                a >= g.vertex_count() || b >= g.vertex_count() || g.edge_between(a, b).is_none()
            })
            .unwrap_or(0);
        TraceError::NotAWalk { position, next: (position + 1) % n }
    })?;
    let mut count = vec![0usize; g.edge_count()];
    for s in &steps {
        count[s.edge] += 1;
    }
    if let Some((edge, &c)) = count.iter().enumerate().find(|&(_, &c)| c != 2) {
        return Err(TraceError::NotDoubleCover { edge, count: c });
    }
    debug_assert_eq!(steps.len(), 2 * g.edge_count());
    Ok(DoubleTrace { graph: g, steps })
}

/// Parses whitespace-separated vertex labels (lines starting with `#` are
/// skipped) and validates them as a double trace.
pub fn parse_trace<'g>(g: &'g Graph, text: &str) -> Result<DoubleTrace<'g>, TraceError> {
    let walk = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .flat_map(str::split_whitespace)
        .map(|label| g.vertex_by_label(label).ok_or_else(|| TraceError::UnknownLabel(label.to_owned())))
        .collect::<Result<Vec<_>, _>>()?;
    validate_double_trace(g, &walk)
}

/// A validated double trace.
#[derive(Clone, PartialEq, Eq)]
pub struct DoubleTrace<'g> {
    graph: &'g Graph,
    steps: Vec<Step>,
}

impl fmt::Debug for DoubleTrace<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("DoubleTrace").field(&self.vertices()).finish()
    }
}

/// The vertex figure at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFigure {
    pub vertex: Vertex,
    /// `(incoming, outgoing)` edge pairs, one per passage through the vertex.
    pub pairs: Vec<(EdgeId, EdgeId)>,
    /// Cycle decomposition; each cycle starts at its smallest edge, cycles
    /// are ordered by that edge.
    pub cycles: Vec<Vec<EdgeId>>,
}

impl VertexFigure {
    pub fn is_single_cycle(&self) -> bool {
        self.cycles.len() == 1
    }

    /// Index of the cycle holding edge `e`.
    pub fn cycle_of(&self, e: EdgeId) -> Option<usize> {
        self.cycles.iter().position(|c| c.contains(&e))
    }
}

/// Largest `d` for which a trace is `d`-stable, and whether it is strong.
///
/// A trace is `d`-stable when no vertex has a nonempty repetition of order at
/// most `d`. The full neighbourhood `N(v)` counts, so a vertex of degree `k`
/// caps stability at `k - 1` even in a strong trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stability {
    pub is_strong: bool,
    pub max_stable_d: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeTag {
    Parallel,
    Antiparallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexReport {
    pub cycles: usize,
    pub neighbor_sets: Vec<BTreeSet<Vertex>>,
    /// Smallest nontrivial repetition order; `None` for a single-cycle figure.
    pub min_nontrivial_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub strong: bool,
    pub max_stable_d: usize,
    pub parallel: bool,
    pub antiparallel: bool,
    pub edges: BTreeMap<EdgeId, EdgeTag>,
    pub vertices: BTreeMap<Vertex, VertexReport>,
}

impl<'g> DoubleTrace<'g> {
    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The cyclic vertex sequence, closing step implicit.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.tail).collect()
    }

    pub fn labels(&self) -> Vec<&'g str> {
        self.steps.iter().map(|s| self.graph.label(s.tail)).collect()
    }

    /// Least vertex sequence over all rotations and the reversal.
    pub fn canonical(&self) -> Vec<Vertex> {
        canonical_vertices(&self.vertices())
    }

    /// Positions `i` such that step `i` ends at `v` (so `v` sits between
    /// steps `i` and `i + 1`).
    fn passages(&self, v: Vertex) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().enumerate().filter(move |(_, s)| s.head == v).map(|(i, _)| i)
    }

    fn next_index(&self, i: usize) -> usize {
        (i + 1) % self.steps.len()
    }

    pub fn vertex_figure(&self, v: Vertex) -> VertexFigure {
        let pairs: Vec<(EdgeId, EdgeId)> =
            self.passages(v).map(|i| (self.steps[i].edge, self.steps[self.next_index(i)].edge)).collect();
        let cycles = figure_cycles(self.graph, v, &pairs);
        VertexFigure { vertex: v, pairs, cycles }
    }

    /// Does the trace, whenever it enters `v` from `set`, also leave into `set`?
    pub fn has_repetition(&self, v: Vertex, set: &BTreeSet<Vertex>) -> Result<bool, TraceError> {
        if set.iter().any(|&w| self.graph.edge_between(v, w).is_none()) {
            return Err(TraceError::NotANeighborSet { vertex: v, set: set.iter().copied().collect() });
        }
        Ok(self.passages(v).all(|i| {
            let before = self.steps[i].tail;
            let after = self.steps[self.next_index(i)].head;
            set.contains(&before) == set.contains(&after)
        }))
    }

    /// Neighbour sets of the vertex-figure cycles at `v`: the minimal
    /// nonempty sets admitting a repetition.
    pub fn repetition_structure(&self, v: Vertex) -> Vec<BTreeSet<Vertex>> {
        self.vertex_figure(v)
            .cycles
            .iter()
            .map(|c| c.iter().map(|&e| self.graph.opposite(e, v)).collect())
            .collect()
    }

    pub fn stability(&self) -> Stability {
        let mut is_strong = true;
        let mut min_order = usize::MAX;
        for v in self.graph.vertices() {
            let figure = self.vertex_figure(v);
            is_strong &= figure.is_single_cycle();
            let smallest = figure.cycles.iter().map(Vec::len).min().unwrap_or(0);
            min_order = min_order.min(smallest);
        }
        Stability { is_strong, max_stable_d: min_order.saturating_sub(1) }
    }

    pub fn is_d_stable(&self, d: usize) -> bool {
        d <= self.stability().max_stable_d
    }

    /// Direction tag of every edge, by comparing its two traversals.
    pub fn edge_tags(&self) -> Vec<EdgeTag> {
        let mut first_tail: Vec<Option<Vertex>> = vec![None; self.graph.edge_count()];
        let mut tags = vec![EdgeTag::Antiparallel; self.graph.edge_count()];
        for s in &self.steps {
            match first_tail[s.edge] {
                None => first_tail[s.edge] = Some(s.tail),
                Some(t) if t == s.tail => tags[s.edge] = EdgeTag::Parallel,
                Some(_) => {}
            }
        }
        tags
    }

    pub fn is_parallel(&self) -> bool {
        self.edge_tags().iter().all(|&t| t == EdgeTag::Parallel)
    }

    pub fn is_antiparallel(&self) -> bool {
        self.edge_tags().iter().all(|&t| t == EdgeTag::Antiparallel)
    }

    /// Full per-vertex and per-edge analysis.
    pub fn classify_edges(&self) -> TraceReport {
        let tags = self.edge_tags();
        let stability = self.stability();
        let vertices = self
            .graph
            .vertices()
            .map(|v| {
                let sets = self.repetition_structure(v);
                let min_nontrivial_order = (sets.len() > 1).then(|| sets.iter().map(BTreeSet::len).min().unwrap_or(0));
                (v, VertexReport { cycles: sets.len(), neighbor_sets: sets, min_nontrivial_order })
            })
            .collect();
        TraceReport {
            strong: stability.is_strong,
            max_stable_d: stability.max_stable_d,
            parallel: tags.iter().all(|&t| t == EdgeTag::Parallel),
            antiparallel: tags.iter().all(|&t| t == EdgeTag::Antiparallel),
            edges: tags.into_iter().enumerate().collect(),
            vertices,
        }
    }

    /// Total number of vertex-figure cycles over all vertices.
    pub fn figure_cycle_total(&self) -> usize {
        self.graph.vertices().map(|v| self.vertex_figure(v).cycles.len()).sum()
    }

    /// The 1-face embedding whose facial walk is this (strong) trace.
    pub fn to_embedding(&self) -> Result<Embedding<'g>, TraceError> {
        for v in self.graph.vertices() {
            let figure = self.vertex_figure(v);
            if !figure.is_single_cycle() {
                return Err(TraceError::NotStrong { vertex: v, cycles: figure.cycles.len() });
            }
        }
        Ok(embedding_from_walks(self.graph, &[self.vertices()])?)
    }
}

/// Cycle decomposition of the 2-regular multigraph `pairs` on the edges at `v`.
fn figure_cycles(g: &Graph, v: Vertex, pairs: &[(EdgeId, EdgeId)]) -> Vec<Vec<EdgeId>> {
    let local: BTreeMap<EdgeId, usize> = g.incident(v).iter().enumerate().map(|(i, &(e, _))| (e, i)).collect();
    let mut slots: Vec<Vec<usize>> = vec![Vec::with_capacity(2); local.len()];
    for (p, &(a, b)) in pairs.iter().enumerate() {
        slots[local[&a]].push(p);
        slots[local[&b]].push(p);
    }
    let mut used = vec![false; pairs.len()];
    let mut visited = vec![false; local.len()];
    let mut cycles = Vec::new();
    for (&start, &start_idx) in &local {
        if visited[start_idx] {
            continue;
        }
        visited[start_idx] = true;
        let mut cycle = vec![start];
        let mut cur = start;
        while let Some(&p) = slots[local[&cur]].iter().find(|&&p| !used[p]) {
            used[p] = true;
            let (a, b) = pairs[p];
            let next = if a == cur { b } else { a };
            if next == start {
                break;
            }
            visited[local[&next]] = true;
            cycle.push(next);
            cur = next;
        }
        cycles.push(cycle);
    }
    cycles
}
