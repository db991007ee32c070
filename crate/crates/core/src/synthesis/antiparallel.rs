use serde::Serialize;

use super::{ConstructionCertificate, Kind, Refusal, SynthesisError, Witness};
use crate::budget::{Budget, BudgetExceeded};
use crate::embedding::{cyclic_orders, dart_at, dart_vertex, Embedding};
use crate::graph::{cotree_components, cotree_components_even, spanning_trees, EdgeId, Graph, SpanningTree};
use crate::trace::validate_double_trace;

/// Outcome of a spanning-tree decision procedure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntiparallelDecision {
    pub exists: bool,
    pub witness: Option<SpanningTree>,
    pub refusal: Option<Refusal>,
    pub trees_examined: u64,
}

impl AntiparallelDecision {
    fn refused(refusal: Refusal, trees_examined: u64) -> Self {
        AntiparallelDecision { exists: false, witness: None, refusal: Some(refusal), trees_examined }
    }
}

fn first_tree(
    g: &Graph,
    budget: &Budget,
    accept: impl Fn(&SpanningTree) -> bool,
) -> Result<AntiparallelDecision, BudgetExceeded> {
    let mut examined = 0;
    for tree in spanning_trees(g, budget.spanning_trees) {
        let tree = tree?;
        examined += 1;
        if accept(&tree) {
            return Ok(AntiparallelDecision { exists: true, witness: Some(tree), refusal: None, trees_examined: examined });
        }
    }
    Ok(AntiparallelDecision::refused(Refusal::NoTreeCertificate { trees_examined: examined }, examined))
}

/// Is there an antiparallel strong trace? Decided by a spanning tree whose
/// cotree components all have an even number of edges.
pub fn antiparallel_decision(g: &Graph, budget: &Budget) -> Result<AntiparallelDecision, BudgetExceeded> {
    if g.betti() % 2 == 1 {
        return Ok(AntiparallelDecision::refused(Refusal::OddBetti { betti: g.betti() }, 0));
    }
    first_tree(g, budget, |t| cotree_components_even(g, t))
}

/// Is there an antiparallel 1-stable trace? Needs minimum degree at least two
/// and a spanning tree each of whose cotree components has an even number of
/// edges or a vertex of degree at least four. Decision only.
pub fn antiparallel_1stable_decision(g: &Graph, budget: &Budget) -> Result<AntiparallelDecision, BudgetExceeded> {
    let vertex = g.min_degree_vertex();
    if g.degree(vertex) <= 1 {
        return Ok(AntiparallelDecision::refused(Refusal::MinDegree { vertex, degree: g.degree(vertex) }, 0));
    }
    first_tree(g, budget, |t| {
        cotree_components(g, t)
            .iter()
            .all(|(members, edges)| edges % 2 == 0 || members.iter().any(|&v| g.degree(v) >= 4))
    })
}

/// Backtracking over rotation systems with all signatures positive, looking
/// for a single face. A branch dies as soon as a face orbit closes with fewer
/// than `2|E|` steps.
pub fn orientable_one_face_search<'g>(g: &'g Graph, budget: &Budget) -> Result<Option<Embedding<'g>>, BudgetExceeded> {
    let choices: Vec<Vec<Vec<EdgeId>>> = g
        .vertices()
        .map(|v| cyclic_orders(&g.incident(v).iter().map(|&(e, _)| e).collect::<Vec<_>>()))
        .collect();
    let mut search = Search {
        g,
        choices: &choices,
        rot_prev: vec![usize::MAX; 2 * g.edge_count()],
        assigned: vec![false; g.vertex_count()],
        picked: vec![0; g.vertex_count()],
        nodes: 0,
        budget,
    };
    if !search.extend(0)? {
        return Ok(None);
    }
    let rotation = g.vertices().map(|v| choices[v][search.picked[v]].clone()).collect();
    Ok(Embedding::orientable(g, rotation).ok().filter(|e| e.face_count() == 1))
}

struct Search<'a> {
    g: &'a Graph,
    choices: &'a [Vec<Vec<EdgeId>>],
    rot_prev: Vec<usize>,
    assigned: Vec<bool>,
    picked: Vec<usize>,
    nodes: u64,
    budget: &'a Budget,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) -> Result<bool, BudgetExceeded> {
        if v == self.g.vertex_count() {
            return Ok(true);
        }
        for (i, order) in self.choices[v].iter().enumerate() {
            self.nodes += 1;
            if self.nodes > self.budget.search_nodes {
                return Err(self.budget.nodes_exceeded());
            }
            let k = order.len();
            for j in 0..k {
                self.rot_prev[dart_at(self.g, order[(j + 1) % k], v)] = dart_at(self.g, order[j], v);
            }
            self.assigned[v] = true;
            self.picked[v] = i;
            if !self.closes_short_face(v) && self.extend(v + 1)? {
                return Ok(true);
            }
            self.assigned[v] = false;
        }
        Ok(false)
    }

    /// Does some face through a corner at `v` close before covering all darts?
    fn closes_short_face(&self, v: usize) -> bool {
        let full = 2 * self.g.edge_count();
        self.g.incident(v).iter().any(|&(e, _)| {
            let start = dart_at(self.g, e, v);
            let mut dart = start;
            for length in 1..=full {
                let arrival = dart ^ 1;
                if !self.assigned[dart_vertex(self.g, arrival)] {
                    return false;
                }
                dart = self.rot_prev[arrival];
                if dart == start {
                    return length < full;
                }
            }
            false
        })
    }
}

/// An antiparallel strong trace: the facial walk of an orientable 1-face
/// embedding, gated by the spanning-tree decision.
pub fn antiparallel_strong_trace<'g>(
    g: &'g Graph,
    budget: &Budget,
) -> Result<ConstructionCertificate<'g>, SynthesisError> {
    let decision = antiparallel_decision(g, budget)?;
    let (true, Some(tree)) = (decision.exists, decision.witness) else {
        let reason = decision.refusal.unwrap_or(Refusal::NoTreeCertificate { trees_examined: decision.trees_examined });
        return Err(SynthesisError::NoSuchTrace { reason });
    };
    let emb = orientable_one_face_search(g, budget)?
        .ok_or_else(|| SynthesisError::internal("a tree certificate exists but no orientable 1-face embedding"))?;
    let faces = emb.trace_faces();
    let trace = validate_double_trace(g, &faces[0].vertices()).map_err(|err| SynthesisError::internal(err.to_string()))?;
    ConstructionCertificate::seal(g, Kind::AntiparallelStrong, None, Some(trace), Some(emb), Witness::SpanningTree { tree })
}
