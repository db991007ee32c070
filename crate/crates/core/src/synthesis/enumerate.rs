use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use super::SynthesisError;
use crate::budget::{Budget, BudgetExceeded};
use crate::embedding::{dart_at, dart_vertex, rotation_systems, Embedding, Sign};
use crate::graph::{spanning_trees, EdgeId, Graph, Vertex};
use crate::trace::{validate_double_trace, EdgeTag};
use crate::walk::least_rotation;

/// When two strong traces count as the same.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Same cyclic sequence, any starting point.
    Rotation,
    /// Additionally, a walk equals its reversal.
    RotationReversal,
    /// Additionally, walks related by a graph automorphism are equal.
    Automorphism,
}

impl Convention {
    pub const ALL: [Convention; 3] = [Convention::Rotation, Convention::RotationReversal, Convention::Automorphism];

    pub fn name(self) -> &'static str {
        match self {
            Convention::Rotation => "rotation",
            Convention::RotationReversal => "rotation-reversal",
            Convention::Automorphism => "automorphism",
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Convention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Convention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown convention {s:?}; expected rotation, rotation-reversal or automorphism"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub budget: Budget,
    /// Worker threads; 0 lets rayon decide. Results do not depend on it.
    pub threads: usize,
    pub representatives: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { budget: Budget::default(), threads: 0, representatives: true }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub parallel: usize,
    pub antiparallel: usize,
    pub mixed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub convention: Convention,
    pub count: usize,
    pub classes: Tally,
    /// Canonical vertex sequence of each class, in increasing order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<Vertex>>>,
}

/// Strong traces of `g`, counted under `convention`. Both enumeration
/// procedures run and must produce the same set of traces.
pub fn enumerate_strong_traces(
    g: &Graph,
    convention: Convention,
    options: &EnumerationOptions,
) -> Result<EnumerationResult, SynthesisError> {
    Ok(enumerate_all(g, &[convention], options)?.remove(0))
}

/// Like [`enumerate_strong_traces`] for several conventions at once.
pub fn enumerate_all(
    g: &Graph,
    conventions: &[Convention],
    options: &EnumerationOptions,
) -> Result<Vec<EnumerationResult>, SynthesisError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.threads)
        .build()
        .map_err(|err| SynthesisError::internal(err.to_string()))?;
    let (walks, embeddings) = pool.install(|| {
        rayon::join(|| strong_traces_by_walks(g, &options.budget), || strong_traces_by_embeddings(g, &options.budget))
    });
    let (walks, embeddings) = (walks?, embeddings?);
    if walks != embeddings {
        return Err(SynthesisError::internal(format!(
            "walk search found {} directed strong traces, embedding search {}",
            walks.len(),
            embeddings.len()
        )));
    }
    let automorphisms = conventions.contains(&Convention::Automorphism).then(|| automorphisms(g));
    Ok(conventions
        .iter()
        .map(|&convention| {
            let classes: BTreeSet<Vec<Vertex>> = walks
                .iter()
                .map(|w| canonical_under(w, convention, automorphisms.as_deref().unwrap_or(&[])))
                .collect();
            let mut tally = Tally::default();
            for w in &classes {
                match direction_class(g, w) {
                    Some(EdgeTag::Parallel) => tally.parallel += 1,
                    Some(EdgeTag::Antiparallel) => tally.antiparallel += 1,
                    None => tally.mixed += 1,
                }
            }
            EnumerationResult {
                convention,
                count: classes.len(),
                classes: tally,
                representatives: options.representatives.then(|| classes.into_iter().collect()),
            }
        })
        .collect())
}

fn canonical_under(w: &[Vertex], convention: Convention, automorphisms: &[Vec<Vertex>]) -> Vec<Vertex> {
    let both = |w: &[Vertex]| {
        let reversed: Vec<Vertex> = w.iter().rev().copied().collect();
        least_rotation(w).min(least_rotation(&reversed))
    };
    match convention {
        Convention::Rotation => least_rotation(w),
        Convention::RotationReversal => both(w),
        Convention::Automorphism => automorphisms
            .iter()
            .map(|sigma| both(&w.iter().map(|&v| sigma[v]).collect::<Vec<_>>()))
            .min()
            .unwrap_or_else(|| both(w)),
    }
}

/// `Some(tag)` when every edge carries `tag`, `None` for a mixed trace.
fn direction_class(g: &Graph, w: &[Vertex]) -> Option<EdgeTag> {
    let tags = validate_double_trace(g, w).expect("enumerated walks are double traces").edge_tags();
    let first = tags[0];
    tags.iter().all(|&t| t == first).then_some(first)
}

/// All automorphisms of `g` as vertex maps, identity first.
pub fn automorphisms(g: &Graph) -> Vec<Vec<Vertex>> {
    fn extend(g: &Graph, image: &mut Vec<Vertex>, used: &mut [bool], out: &mut Vec<Vec<Vertex>>) {
        let v = image.len();
        if v == g.vertex_count() {
            out.push(image.clone());
            return;
        }
        for w in g.vertices() {
            if used[w] || g.degree(w) != g.degree(v) {
                continue;
            }
            let consistent =
                (0..v).all(|u| g.edge_between(u, v).is_some() == g.edge_between(image[u], w).is_some());
            if consistent {
                used[w] = true;
                image.push(w);
                extend(g, image, used, out);
                image.pop();
                used[w] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(g, &mut Vec::with_capacity(g.vertex_count()), &mut vec![false; g.vertex_count()], &mut out);
    out
}

/// Every strong trace as a set of directed classes (least rotation of the
/// vertex sequence), via 1-face embeddings.
///
/// Switching makes the edges of a fixed spanning tree positive, so every
/// class of embeddings is met by some rotation system and some signature on
/// the cotree edges.
pub fn strong_traces_by_embeddings(g: &Graph, budget: &Budget) -> Result<BTreeSet<Vec<Vertex>>, BudgetExceeded> {
    let tree = spanning_trees(g, 1).next().and_then(Result::ok).expect("connected graphs have a spanning tree");
    let cotree = tree.cotree_edges();
    let rotations: Vec<Vec<Vec<EdgeId>>> = rotation_systems(g).collect();
    let total = (rotations.len() as u64).saturating_mul(1u64 << cotree.len().min(63));
    if total > budget.search_nodes {
        return Err(budget.nodes_exceeded());
    }
    Ok(rotations
        .into_par_iter()
        .map(|rotation| {
            let mut found = BTreeSet::new();
            for mask in 0u64..1 << cotree.len() {
                let mut signature = vec![Sign::Positive; g.edge_count()];
                for (i, &e) in cotree.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        signature[e] = Sign::Negative;
                    }
                }
                let emb = Embedding::new(g, rotation.clone(), signature).expect("rotation systems are valid");
                let faces = emb.trace_faces();
                if let [face] = faces.as_slice() {
                    let w = face.vertices();
                    let reversed: Vec<Vertex> = w.iter().rev().copied().collect();
                    found.insert(least_rotation(&w));
                    found.insert(least_rotation(&reversed));
                }
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        }))
}

/// Depth at which the walk search fans out to worker threads.
const SPLIT_DEPTH: usize = 6;

/// Every strong trace as a set of directed classes, by extending walks
/// from edge 0 and keeping each vertex figure a union of paths until it can
/// close into one cycle through all incident edges.
pub fn strong_traces_by_walks(g: &Graph, budget: &Budget) -> Result<BTreeSet<Vec<Vertex>>, BudgetExceeded> {
    let counter = Counter { nodes: AtomicU64::new(0), aborted: AtomicBool::new(false), limit: budget.search_nodes };
    let split = SPLIT_DEPTH.min(2 * g.edge_count());
    let mut prefixes = Vec::new();
    for start in [0, 1] {
        let mut walker = Walker::new(g, &counter);
        walker.start(start);
        walker.collect_prefixes(split, &mut prefixes)?;
    }
    let found = prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut walker = Walker::new(g, &counter);
            walker.replay(&prefix);
            walker.search()?;
            Ok(walker.found)
        })
        .try_reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            Ok(a)
        })?;
    if counter.aborted.load(Ordering::Relaxed) {
        return Err(budget.nodes_exceeded());
    }
    Ok(found)
}

struct Counter {
    nodes: AtomicU64,
    aborted: AtomicBool,
    limit: u64,
}

impl Counter {
    fn tick(&self) -> Result<(), BudgetExceeded> {
        if self.aborted.load(Ordering::Relaxed) || self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.aborted.store(true, Ordering::Relaxed);
            return Err(BudgetExceeded { resource: crate::budget::Resource::SearchNodes, limit: self.limit });
        }
        Ok(())
    }
}

/// Partial walk plus, per vertex figure, the paths formed so far. Figure
/// nodes are darts (edge `e` at vertex `v` is the dart leaving `v` along
/// `e`); path endpoints store their partner endpoint and the path size.
struct Walker<'a> {
    g: &'a Graph,
    counter: &'a Counter,
    used: Vec<u8>,
    darts: Vec<usize>,
    other_end: Vec<usize>,
    size: Vec<usize>,
    undo: Vec<(usize, usize, usize)>,
    found: BTreeSet<Vec<Vertex>>,
}

impl<'a> Walker<'a> {
    fn new(g: &'a Graph, counter: &'a Counter) -> Self {
        let darts = 2 * g.edge_count();
        Walker {
            g,
            counter,
            used: vec![0; g.edge_count()],
            darts: Vec::with_capacity(darts),
            other_end: (0..darts).collect(),
            size: vec![1; darts],
            undo: Vec::new(),
            found: BTreeSet::new(),
        }
    }

    fn start(&mut self, dart: usize) {
        self.used[dart / 2] += 1;
        self.darts.push(dart);
    }

    fn replay(&mut self, prefix: &[usize]) {
        self.start(prefix[0]);
        for &dart in &prefix[1..] {
            let accepted = self.join(self.last_arrival(), dart);
            debug_assert!(accepted, "prefixes are feasible");
            self.used[dart / 2] += 1;
            self.darts.push(dart);
        }
    }

    fn last_arrival(&self) -> usize {
        self.darts[self.darts.len() - 1] ^ 1
    }

    /// Pairs the arrival dart `x` with the departure dart `y` at their
    /// common vertex; false if that closes a figure cycle too early.
    fn join(&mut self, x: usize, y: usize) -> bool {
        let degree = self.g.degree(dart_vertex(self.g, x));
        if x == y {
            return degree == 1;
        }
        if self.other_end[x] == y {
            return self.size[x] == degree;
        }
        let (ox, oy) = (self.other_end[x], self.other_end[y]);
        let total = self.size[x] + self.size[y];
        self.undo.push((ox, self.other_end[ox], self.size[ox]));
        self.undo.push((oy, self.other_end[oy], self.size[oy]));
        self.other_end[ox] = oy;
        self.other_end[oy] = ox;
        self.size[ox] = total;
        self.size[oy] = total;
        true
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            let (node, other, size) = self.undo.pop().expect("undo log is nonempty above the mark");
            self.other_end[node] = other;
            self.size[node] = size;
        }
    }

    /// Feasible continuations from the current walk, as dart sequences.
    fn moves(&self) -> Vec<usize> {
        let v = dart_vertex(self.g, self.last_arrival());
        self.g.incident(v).iter().filter(|&&(e, _)| self.used[e] < 2).map(|&(e, _)| dart_at(self.g, e, v)).collect()
    }

    fn collect_prefixes(&mut self, depth: usize, out: &mut Vec<Vec<usize>>) -> Result<(), BudgetExceeded> {
        if self.darts.len() >= depth {
            out.push(self.darts.clone());
            return Ok(());
        }
        for dart in self.moves() {
            self.counter.tick()?;
            let mark = self.undo.len();
            if self.join(self.last_arrival(), dart) {
                self.used[dart / 2] += 1;
                self.darts.push(dart);
                self.collect_prefixes(depth, out)?;
                self.darts.pop();
                self.used[dart / 2] -= 1;
            }
            self.rollback(mark);
        }
        Ok(())
    }

    fn search(&mut self) -> Result<(), BudgetExceeded> {
        if self.darts.len() == 2 * self.g.edge_count() {
            let mark = self.undo.len();
            let first = self.darts[0];
            if dart_vertex(self.g, first) == dart_vertex(self.g, self.last_arrival()) && self.join(self.last_arrival(), first)
            {
                let walk: Vec<Vertex> = self.darts.iter().map(|&d| dart_vertex(self.g, d)).collect();
                self.found.insert(least_rotation(&walk));
            }
            self.rollback(mark);
            return Ok(());
        }
        for dart in self.moves() {
            self.counter.tick()?;
            let mark = self.undo.len();
            if self.join(self.last_arrival(), dart) {
                self.used[dart / 2] += 1;
                self.darts.push(dart);
                self.search()?;
                self.darts.pop();
                self.used[dart / 2] -= 1;
            }
            self.rollback(mark);
        }
        Ok(())
    }
}
