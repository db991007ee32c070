//! Closed walks as cyclic step sequences, and their canonical forms.

use serde::Serialize;

use crate::graph::{EdgeId, Graph, Vertex};

/// One traversal of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Step {
    pub tail: Vertex,
    pub edge: EdgeId,
    pub head: Vertex,
}

impl Step {
    pub fn reversed(self) -> Step {
        Step { tail: self.head, edge: self.edge, head: self.tail }
    }

    /// True when the step runs from the first to the second stored endpoint of its edge.
    pub fn is_forward(self, g: &Graph) -> bool {
        g.endpoints(self.edge).0 == self.tail
    }
}

/// Lexicographically least rotation of a cyclic sequence.
pub fn least_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let n = seq.len();
    if n == 0 {
        return Vec::new();
    }
    let start = (0..n)
        .min_by(|&a, &b| {
            (0..n).map(|i| &seq[(a + i) % n]).cmp((0..n).map(|i| &seq[(b + i) % n]))
        })
        .unwrap_or(0);
    seq[start..].iter().chain(&seq[..start]).cloned().collect()
}

/// Canonical form of a cyclic step sequence up to rotation and reversal.
pub fn canonical_steps(steps: &[Step]) -> Vec<Step> {
    let forward = least_rotation(steps);
    let reversed: Vec<Step> = steps.iter().rev().map(|s| s.reversed()).collect();
    forward.min(least_rotation(&reversed))
}

/// Canonical form of a cyclic vertex sequence up to rotation and reversal.
pub fn canonical_vertices(vertices: &[Vertex]) -> Vec<Vertex> {
    let forward = least_rotation(vertices);
    let reversed: Vec<Vertex> = vertices.iter().rev().copied().collect();
    forward.min(least_rotation(&reversed))
}

/// Resolves a cyclic vertex sequence into steps; `None` if two cyclically
/// consecutive vertices are not adjacent.
pub fn steps_from_vertices(g: &Graph, vertices: &[Vertex]) -> Option<Vec<Step>> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (tail, head) = (vertices[i], vertices[(i + 1) % n]);
            if tail >= g.vertex_count() || head >= g.vertex_count() {
                return None;
            }
            g.edge_between(tail, head).map(|edge| Step { tail, edge, head })
        })
        .collect()
}
