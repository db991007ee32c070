//! Recovering `(rotation, signature)` from a collection of facial walks.
//!
//! A corner `e v e'` of a walk makes `e` and `e'` neighbours in the cyclic
//! order at `v`. Once an orientation of each cyclic order is fixed, a corner
//! also fixes the sign state the tracing rule must be in at that point: it
//! leaves along the rotation predecessor in state `+1`, along the successor in
//! state `-1`. The sign of an edge is the product of the states at its two
//! ends. At vertices of degree at most two predecessor and successor coincide,
//! so those corner states are free; they are solved as a parity system.

use super::{dart_at, Embedding, EmbeddingError, FacialWalk, Sign};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::walk::{steps_from_vertices, Step};

#[derive(Debug, Clone, Copy)]
struct Corner {
    vertex: Vertex,
    incoming: EdgeId,
    outgoing: EdgeId,
}

/// A corner state: a known sign, optionally multiplied by the unknown of a
/// degree-two vertex.
#[derive(Debug, Clone, Copy)]
struct State {
    sign: Sign,
    unknown: Option<Vertex>,
}

/// Builds an embedding whose facial walks are exactly `walks` (each a cyclic
/// vertex sequence), up to rotation and reversal of each walk.
pub fn embedding_from_walks<'g>(g: &'g Graph, walks: &[Vec<Vertex>]) -> Result<Embedding<'g>, EmbeddingError> {
    let mut resolved: Vec<Vec<Step>> = Vec::with_capacity(walks.len());
    for (w, vertices) in walks.iter().enumerate() {
        let steps = steps_from_vertices(g, vertices).filter(|s| !s.is_empty()).ok_or_else(|| {
            let n = vertices.len().max(1);
            let position = (0..vertices.len())
                .find(|&i| {
                    let (a, b) = (vertices[i], vertices[(i + 1) % n]);
                    a >= g.vertex_count() || b >= g.vertex_count() || g.edge_between(a, b).is_none()
                })
                .unwrap_or(0);
            EmbeddingError::NotAWalk { walk: w, position, next: (position + 1) % n }
        })?;
        resolved.push(steps);
    }

    let mut count = vec![0usize; g.edge_count()];
    for step in resolved.iter().flatten() {
        count[step.edge] += 1;
    }
    if let Some((edge, &c)) = count.iter().enumerate().find(|&(_, &c)| c != 2) {
        return Err(EmbeddingError::NotDoubleCover { edge, count: c });
    }

    // corner `offset[w] + i` sits at the head of step i of walk w
    let mut offset = Vec::with_capacity(resolved.len());
    let mut corners = Vec::new();
    for steps in &resolved {
        offset.push(corners.len());
        let k = steps.len();
        for i in 0..k {
            corners.push(Corner { vertex: steps[i].head, incoming: steps[i].edge, outgoing: steps[(i + 1) % k].edge });
        }
    }

    let rotation = rotations_from_corners(g, &corners)?;
    let provisional = Embedding::build(g, rotation.clone(), vec![Sign::Positive; g.edge_count()]);

    let mut states = Vec::with_capacity(corners.len());
    let mut seen_degree_two = vec![false; g.vertex_count()];
    for c in &corners {
        let state = match g.degree(c.vertex) {
            1 => State { sign: Sign::Positive, unknown: None },
            2 => {
                let first = !seen_degree_two[c.vertex];
                seen_degree_two[c.vertex] = true;
                State { sign: Sign::Positive, unknown: (!first).then_some(c.vertex) }
            }
            _ => {
                let sign = if provisional.rotation_prev(c.vertex, c.incoming) == c.outgoing {
                    Sign::Positive
                } else if provisional.rotation_next(c.vertex, c.incoming) == c.outgoing {
                    Sign::Negative
                } else {
                    return Err(EmbeddingError::InternalInconsistency(format!(
                        "corner at vertex {} is not adjacent in its rotation",
                        c.vertex
                    )));
                };
                State { sign, unknown: None }
            }
        };
        states.push(state);
    }

    // the two traversals of every edge, as (tail corner, head corner)
    let mut traversals: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(2); g.edge_count()];
    for (w, steps) in resolved.iter().enumerate() {
        let k = steps.len();
        for (i, step) in steps.iter().enumerate() {
            traversals[step.edge].push((offset[w] + (i + k - 1) % k, offset[w] + i));
        }
    }

    // Every (dart, state) pair occurs exactly once over the faces and their
    // reversals. Together with the edge signs this is a parity system in the
    // free corner states.
    let ground = g.vertex_count();
    let mut parity = ParityDsu::new(g.vertex_count() + 1);
    for (e, pair) in traversals.iter().enumerate() {
        let (a, b) = pair[0];
        let (c, d) = pair[1];
        // parallel traversals leave the same vertex in opposite states;
        // antiparallel ones leave and re-enter it in the same state
        let direction = if corners[a].vertex == corners[c].vertex {
            constrain(&mut parity, ground, &states, &[a, c], true)
        } else {
            constrain(&mut parity, ground, &states, &[a, d], false)
        };
        if !(direction && constrain(&mut parity, ground, &states, &[a, b, c, d], false)) {
            return Err(EmbeddingError::InternalInconsistency(format!("no signature is consistent at edge {e}")));
        }
    }

    // free components take the value 0 at their root; the ground node is always a root
    let resolve = |parity: &mut ParityDsu, s: State| -> Sign {
        match s.unknown {
            Some(v) if parity.find(v).1 => s.sign.flipped(),
            _ => s.sign,
        }
    };
    let signature: Vec<Sign> = traversals
        .iter()
        .map(|pair| {
            let (a, b) = pair[0];
            resolve(&mut parity, states[a]).times(resolve(&mut parity, states[b]))
        })
        .collect();

    let embedding = Embedding::build(g, rotation, signature);
    let mut wanted: Vec<FacialWalk> = resolved.iter().map(|s| FacialWalk::new(s)).collect();
    wanted.sort();
    if embedding.trace_faces() != wanted {
        return Err(EmbeddingError::InternalInconsistency("reconstructed faces differ from the input walks".into()));
    }
    Ok(embedding)
}

/// Records that the product of the given corner states is negative when
/// `odd`; false on contradiction.
fn constrain(parity: &mut ParityDsu, ground: usize, states: &[State], at: &[usize], odd: bool) -> bool {
    let mut odd = odd;
    let mut unknowns: Vec<Vertex> = Vec::new();
    for &c in at {
        odd ^= states[c].sign == Sign::Negative;
        if let Some(v) = states[c].unknown {
            if let Some(pos) = unknowns.iter().position(|&u| u == v) {
                unknowns.swap_remove(pos);
            } else {
                unknowns.push(v);
            }
        }
    }
    match unknowns.as_slice() {
        [] => !odd,
        [v] => parity.union(*v, ground, odd),
        [v, w] => parity.union(*v, *w, odd),
        _ => false,
    }
}

/// Orders the corner graph at every vertex into one cycle.
fn rotations_from_corners(g: &Graph, corners: &[Corner]) -> Result<Vec<Vec<EdgeId>>, EmbeddingError> {
    // partner edges of each dart through the corners at its vertex
    let mut partners: Vec<Vec<EdgeId>> = vec![Vec::with_capacity(2); 2 * g.edge_count()];
    for c in corners {
        partners[dart_at(g, c.incoming, c.vertex)].push(c.outgoing);
        partners[dart_at(g, c.outgoing, c.vertex)].push(c.incoming);
    }
    let mut rotation = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        let degree = g.degree(v);
        let first = g.incident(v)[0].0;
        let mut order = vec![first];
        let mut prev = first;
        let mut cur = first;
        loop {
            let p = &partners[dart_at(g, cur, v)];
            let next = if p[0] != prev || order.len() == 1 { p[0] } else { p[1] };
            if next == first || order.len() > degree {
                break;
            }
            prev = cur;
            cur = next;
            order.push(cur);
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if order.len() != degree || sorted.len() != degree {
            return Err(EmbeddingError::IncoherentCorners { vertex: v });
        }
        // a 2-regular graph whose walk from `first` visits every node is one cycle
        rotation.push(order);
    }
    Ok(rotation)
}

/// Union-find carrying the parity of each node relative to its root.
struct ParityDsu {
    parent: Vec<usize>,
    odd: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu { parent: (0..n).collect(), odd: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, up) = self.find(self.parent[x]);
        self.odd[x] ^= up;
        self.parent[x] = root;
        (root, self.odd[x])
    }

    /// Records `x xor y == odd`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, odd: bool) -> bool {
        let (rx, px) = self.find(x);
        let (ry, py) = self.find(y);
        if rx == ry {
            return px ^ py == odd;
        }
        // keep the highest id (the ground node) as a root
        let (child, root) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[child] = root;
        self.odd[child] = px ^ py ^ odd;
        true
    }
}
