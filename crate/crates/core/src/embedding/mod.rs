//! Combinatorial embeddings: a rotation system plus an edge signature.
//!
//! Edge ends are handled as *darts*: dart `2e` sits at the first stored
//! endpoint of edge `e`, dart `2e + 1` at the second. Leaving a vertex along
//! a dart and arriving at its partner `d ^ 1` is one step of a walk.
//!
//! Faces are traced with a running sign state `s`, starting at `+1`. After
//! crossing edge `e` the state becomes `s * sign(e)`; at the arrival vertex
//! the walk leaves along the rotation predecessor of the arrival dart when
//! the state is `+1` and along its successor when it is `-1`.

mod reconstruct;

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

pub use reconstruct::embedding_from_walks;

use crate::graph::{EdgeId, Graph, Vertex};
use crate::walk::{canonical_steps, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {vertex} is not a cyclic order of its incident edges")]
    InvalidRotation { vertex: Vertex },
    #[error("signature has {found} entries, graph has {expected} edges")]
    SignatureLength { expected: usize, found: usize },
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("walk {walk}: vertices at positions {position} and {next} are not adjacent")]
    NotAWalk { walk: usize, position: usize, next: usize },
    #[error("edge {edge} is covered {count} times, expected exactly twice")]
    NotDoubleCover { edge: EdgeId, count: usize },
    #[error("corners at vertex {vertex} do not close into a single cyclic order")]
    IncoherentCorners { vertex: Vertex },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// A closed walk produced by face tracing, stored in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FacialWalk {
    steps: Vec<Step>,
}

impl FacialWalk {
    /// Canonicalizes an arbitrary rotation/orientation of a face.
    pub fn new(steps: &[Step]) -> Self {
        FacialWalk { steps: canonical_steps(steps) }
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

    /// The cyclic vertex sequence (tails of the steps).
    pub fn vertices(&self) -> Vec<Vertex> {
        self.steps.iter().map(|s| s.tail).collect()
    }
}

/// Surface classification of an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SurfaceDescriptor {
    pub orientable: bool,
    /// Orientable genus, or nonorientable genus (crosscap number).
    pub genus: usize,
    pub face_count: usize,
}

impl SurfaceDescriptor {
    pub fn euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }
}

impl fmt::Display for SurfaceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.orientable { "orientable" } else { "nonorientable" };
        write!(f, "{kind} genus {} ({} face", self.genus, self.face_count)?;
        if self.face_count != 1 {
            f.write_str("s")?;
        }
        f.write_str(")")
    }
}

/// A rotation system and edge signature on a borrowed graph.
#[derive(Clone)]
pub struct Embedding<'g> {
    graph: &'g Graph,
    /// Cyclic order at each vertex, recorded from its smallest edge id.
    rotation: Vec<Vec<EdgeId>>,
    signature: Vec<Sign>,
    rot_next: Vec<usize>,
    rot_prev: Vec<usize>,
}

impl PartialEq for Embedding<'_> {
    fn eq(&self, other: &Self) -> bool {
        (std::ptr::eq(self.graph, other.graph) || self.graph == other.graph)
            && self.rotation == other.rotation
            && self.signature == other.signature
    }
}

impl Eq for Embedding<'_> {}

impl fmt::Debug for Embedding<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Embedding")
            .field("rotation", &self.rotation)
            .field("signature", &self.signature.iter().map(|s| s.value()).collect::<Vec<_>>())
            .finish()
    }
}

pub(crate) fn dart_at(g: &Graph, e: EdgeId, v: Vertex) -> usize {
    2 * e + usize::from(g.endpoints(e).0 != v)
}

pub(crate) fn dart_vertex(g: &Graph, dart: usize) -> Vertex {
    let (a, b) = g.endpoints(dart / 2);
    if dart & 1 == 0 {
        a
    } else {
        b
    }
}

impl<'g> Embedding<'g> {
    pub fn new(graph: &'g Graph, rotation: Vec<Vec<EdgeId>>, signature: Vec<Sign>) -> Result<Self, EmbeddingError> {
        if signature.len() != graph.edge_count() {
            return Err(EmbeddingError::SignatureLength { expected: graph.edge_count(), found: signature.len() });
        }
        if rotation.len() != graph.vertex_count() {
            return Err(EmbeddingError::InvalidRotation { vertex: rotation.len().min(graph.vertex_count()) });
        }
        for (v, order) in rotation.iter().enumerate() {
            let mut got = order.clone();
            got.sort_unstable();
            let want: Vec<EdgeId> = graph.incident(v).iter().map(|&(e, _)| e).collect();
            if got != want {
                return Err(EmbeddingError::InvalidRotation { vertex: v });
            }
        }
        Ok(Self::build(graph, rotation, signature))
    }

    fn build(graph: &'g Graph, rotation: Vec<Vec<EdgeId>>, signature: Vec<Sign>) -> Self {
        let rotation: Vec<Vec<EdgeId>> = rotation.into_iter().map(|r| crate::walk::least_rotation(&r)).collect();
        let darts = 2 * graph.edge_count();
        let mut rot_next = vec![0; darts];
        let mut rot_prev = vec![0; darts];
        for (v, order) in rotation.iter().enumerate() {
            let k = order.len();
            for i in 0..k {
                let here = dart_at(graph, order[i], v);
                let succ = dart_at(graph, order[(i + 1) % k], v);
                rot_next[here] = succ;
                rot_prev[succ] = here;
            }
        }
        Embedding { graph, rotation, signature, rot_next, rot_prev }
    }

    /// Incident edges in id order at every vertex, every signature positive.
    pub fn initial(graph: &'g Graph) -> Self {
        let rotation = graph.vertices().map(|v| graph.incident(v).iter().map(|&(e, _)| e).collect()).collect();
        Self::build(graph, rotation, vec![Sign::Positive; graph.edge_count()])
    }

    /// All-positive embedding with the given rotation system.
    pub fn orientable(graph: &'g Graph, rotation: Vec<Vec<EdgeId>>) -> Result<Self, EmbeddingError> {
        Self::new(graph, rotation, vec![Sign::Positive; graph.edge_count()])
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn rotation(&self, v: Vertex) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<EdgeId>] {
        &self.rotation
    }

    pub fn sign(&self, e: EdgeId) -> Sign {
        self.signature[e]
    }

    pub fn signature(&self) -> &[Sign] {
        &self.signature
    }

    /// Rotation successor of edge `e` at `v`.
    pub fn rotation_next(&self, v: Vertex, e: EdgeId) -> EdgeId {
        self.rot_next[dart_at(self.graph, e, v)] / 2
    }

    /// Rotation predecessor of edge `e` at `v`.
    pub fn rotation_prev(&self, v: Vertex, e: EdgeId) -> EdgeId {
        self.rot_prev[dart_at(self.graph, e, v)] / 2
    }

    /// One tracing step from `(dart, state)`.
    fn advance(&self, dart: usize, state: Sign) -> (usize, Sign) {
        let state = state.times(self.signature[dart / 2]);
        let arrival = dart ^ 1;
        let next = match state {
            Sign::Positive => self.rot_prev[arrival],
            Sign::Negative => self.rot_next[arrival],
        };
        (next, state)
    }

    /// The same face traversed backwards passes through this state.
    fn reverse_state(&self, dart: usize, state: Sign) -> (usize, Sign) {
        (dart ^ 1, state.times(self.signature[dart / 2]).flipped())
    }

    /// Faces in discovery order, each as the raw step sequence of its first
    /// traced orientation.
    fn traced_faces(&self) -> Vec<Vec<Step>> {
        let darts = 2 * self.graph.edge_count();
        let index = |dart: usize, state: Sign| 2 * dart + usize::from(state == Sign::Negative);
        let mut consumed = vec![false; 2 * darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            for start_state in [Sign::Positive, Sign::Negative] {
                if consumed[index(start, start_state)] {
                    continue;
                }
                let mut steps = Vec::new();
                let (mut dart, mut state) = (start, start_state);
                loop {
                    consumed[index(dart, state)] = true;
                    let (rd, rs) = self.reverse_state(dart, state);
                    consumed[index(rd, rs)] = true;
                    steps.push(Step {
                        tail: dart_vertex(self.graph, dart),
                        edge: dart / 2,
                        head: dart_vertex(self.graph, dart ^ 1),
                    });
                    (dart, state) = self.advance(dart, state);
                    if (dart, state) == (start, start_state) {
                        break;
                    }
                }
                faces.push(steps);
            }
        }
        faces
    }

    /// The complete set of facial walks, canonicalized and sorted.
    pub fn trace_faces(&self) -> Vec<FacialWalk> {
        let mut faces: Vec<FacialWalk> = self.traced_faces().iter().map(|f| FacialWalk::new(f)).collect();
        faces.sort();
        faces
    }

    pub fn face_count(&self) -> usize {
        self.traced_faces().len()
    }

    /// For every edge, the indices (into discovery order) of the faces
    /// holding its two traversals.
    pub fn faces_by_edge(&self) -> Vec<[usize; 2]> {
        let mut out = vec![[usize::MAX; 2]; self.graph.edge_count()];
        for (i, face) in self.traced_faces().iter().enumerate() {
            for step in face {
                let slot = &mut out[step.edge];
                if slot[0] == usize::MAX {
                    slot[0] = i;
                } else {
                    slot[1] = i;
                }
            }
        }
        out
    }

    /// Orientable iff there is a vertex potential `p` with
    /// `sign(uv) = p(u) * p(v)` on every edge, i.e. every cycle carries an
    /// even number of negative edges.
    pub fn is_orientable(&self) -> bool {
        let g = self.graph;
        let mut potential: Vec<Option<Sign>> = vec![None; g.vertex_count()];
        potential[0] = Some(Sign::Positive);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let pv = potential[v].expect("queued vertices carry a potential");
            for &(e, w) in g.incident(v) {
                let want = pv.times(self.signature[e]);
                match potential[w] {
                    None => {
                        potential[w] = Some(want);
                        queue.push_back(w);
                    }
                    Some(pw) if pw != want => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    pub fn surface(&self) -> Result<SurfaceDescriptor, EmbeddingError> {
        let faces = self.face_count();
        let chi = self.graph.vertex_count() as i64 - self.graph.edge_count() as i64 + faces as i64;
        let orientable = self.is_orientable();
        let genus = if orientable {
            if (2 - chi) % 2 != 0 || chi > 2 {
                return Err(EmbeddingError::InternalInconsistency(format!(
                    "orientable embedding with Euler characteristic {chi}"
                )));
            }
            (2 - chi) / 2
        } else {
            if chi > 1 {
                return Err(EmbeddingError::InternalInconsistency(format!(
                    "nonorientable embedding with Euler characteristic {chi}"
                )));
            }
            2 - chi
        };
        Ok(SurfaceDescriptor { orientable, genus: genus as usize, face_count: faces })
    }

    /// The same embedding with the signature of `e` negated.
    pub fn flip_signature(&self, e: EdgeId) -> Result<Self, EmbeddingError> {
        if e >= self.graph.edge_count() {
            return Err(EmbeddingError::UnknownEdge(e));
        }
        let mut out = self.clone();
        out.signature[e] = out.signature[e].flipped();
        Ok(out)
    }

    /// Inverts the rotation at `v` and negates every edge at `v`; the result
    /// is an equivalent embedding with the same facial walks.
    pub fn vertex_switch(&self, v: Vertex) -> Result<Self, EmbeddingError> {
        if v >= self.graph.vertex_count() {
            return Err(EmbeddingError::UnknownVertex(v));
        }
        let mut rotation = self.rotation.clone();
        rotation[v].reverse();
        let mut signature = self.signature.clone();
        for &(e, _) in self.graph.incident(v) {
            signature[e] = signature[e].flipped();
        }
        Ok(Self::build(self.graph, rotation, signature))
    }

    /// Switches so that every edge of a BFS tree from vertex 0 is positive.
    pub fn normalized(&self) -> Self {
        let g = self.graph;
        let mut switch = vec![false; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for &(e, w) in g.incident(v) {
                if !seen[w] {
                    seen[w] = true;
                    switch[w] = switch[v] ^ (self.signature[e] == Sign::Negative);
                    queue.push_back(w);
                }
            }
        }
        let mut out = self.clone();
        for v in g.vertices().filter(|&v| switch[v]) {
            out = out.vertex_switch(v).expect("vertex in range");
        }
        out
    }
}

/// Every cyclic order of `edges`, each listed once starting from `edges[0]`.
pub fn cyclic_orders(edges: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    fn extend(prefix: &mut Vec<EdgeId>, rest: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        if rest.is_empty() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..rest.len() {
            let e = rest.remove(i);
            prefix.push(e);
            extend(prefix, rest, out);
            prefix.pop();
            rest.insert(i, e);
        }
    }
    let Some((&first, tail)) = edges.split_first() else { return vec![Vec::new()] };
    let mut out = Vec::new();
    extend(&mut vec![first], &mut tail.to_vec(), &mut out);
    out
}

/// Iterates over the full product of per-vertex cyclic orders of `g`.
pub fn rotation_systems(g: &Graph) -> impl Iterator<Item = Vec<Vec<EdgeId>>> + '_ {
    let options: Vec<Vec<Vec<EdgeId>>> = g
        .vertices()
        .map(|v| cyclic_orders(&g.incident(v).iter().map(|&(e, _)| e).collect::<Vec<_>>()))
        .collect();
    let mut counter = vec![0usize; options.len()];
    let mut finished = false;
    std::iter::from_fn(move || {
        if finished {
            return None;
        }
        let current = counter.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
        finished = true;
        for (slot, o) in counter.iter_mut().zip(&options) {
            *slot += 1;
            if *slot < o.len() {
                finished = false;
                break;
            }
            *slot = 0;
        }
        Some(current)
    })
}

impl Serialize for Embedding<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rotation: BTreeMap<Vertex, &Vec<EdgeId>> = self.rotation.iter().enumerate().collect();
        let signature: BTreeMap<EdgeId, i8> = self.signature.iter().map(|s| s.value()).enumerate().collect();
        let mut s = serializer.serialize_struct("Embedding", 2)?;
        s.serialize_field("rotation", &rotation)?;
        s.serialize_field("signature", &signature)?;
        s.end()
    }
}
