use rand::seq::SliceRandom;
use rand::Rng;

use super::{ConstructionCertificate, Kind, SynthesisError, Witness};
use crate::graph::{EdgeId, Graph, Vertex};
use crate::trace::{validate_double_trace, DoubleTrace};

/// Hierholzer's algorithm on the multigraph with `copies` parallel copies of
/// every edge, trying incident edges in the order given by `adjacency`.
/// Returns the closed walk as a cyclic vertex sequence starting at vertex 0.
fn closed_walk(g: &Graph, copies: u8, adjacency: &[Vec<(EdgeId, Vertex)>]) -> Vec<Vertex> {
    let mut remaining = vec![copies; g.edge_count()];
    let mut cursor = vec![0usize; g.vertex_count()];
    let mut stack = vec![0];
    let mut circuit = Vec::with_capacity(copies as usize * g.edge_count() + 1);
    while let Some(&v) = stack.last() {
        let list = &adjacency[v];
        while cursor[v] < list.len() && remaining[list[cursor[v]].0] == 0 {
            cursor[v] += 1;
        }
        match list.get(cursor[v]) {
            Some(&(e, w)) => {
                remaining[e] -= 1;
                stack.push(w);
            }
            None => circuit.push(stack.pop().unwrap_or(v)),
        }
    }
    circuit.reverse();
    circuit.pop();
    circuit
}

fn sorted_adjacency(g: &Graph) -> Vec<Vec<(EdgeId, Vertex)>> {
    g.vertices()
        .map(|v| {
            let mut list = g.incident(v).to_vec();
            list.sort_unstable();
            list
        })
        .collect()
}

/// A double trace from the doubled edge multiset, smallest edge first.
pub fn any_double_trace(g: &Graph) -> DoubleTrace<'_> {
    let walk = closed_walk(g, 2, &sorted_adjacency(g));
    validate_double_trace(g, &walk).expect("an Euler circuit of the doubled graph is a double trace")
}

/// [`any_double_trace`], certified.
pub fn certified_double_trace(g: &Graph) -> Result<ConstructionCertificate<'_>, SynthesisError> {
    ConstructionCertificate::seal(g, Kind::Double, None, Some(any_double_trace(g)), None, Witness::None)
}

/// A double trace from the doubled edge multiset with shuffled edge order.
pub fn random_double_trace<'g>(g: &'g Graph, rng: &mut impl Rng) -> DoubleTrace<'g> {
    let mut adjacency = sorted_adjacency(g);
    for list in &mut adjacency {
        list.shuffle(rng);
    }
    let walk = closed_walk(g, 2, &adjacency);
    validate_double_trace(g, &walk).expect("an Euler circuit of the doubled graph is a double trace")
}

/// Euler circuit from vertex 0, smallest edge first; `None` unless every
/// degree is even.
pub fn euler_tour(g: &Graph) -> Option<Vec<Vertex>> {
    g.is_eulerian().then(|| closed_walk(g, 1, &sorted_adjacency(g)))
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::fixtures;

    #[test]
    fn small_examples() {
        let k2 = fixtures::path(2);
        assert_eq!(any_double_trace(&k2).vertices(), vec![0, 1]);
        let c3 = fixtures::cycle(3);
        assert_eq!(any_double_trace(&c3).len(), 6);
        assert_eq!(euler_tour(&c3).map(|t| t.len()), Some(3));
        assert_eq!(euler_tour(&fixtures::complete(4)), None);
    }

    #[test]
    fn euler_tour_uses_every_edge_once() {
        for g in fixtures::connected_graphs(6).into_iter().filter(Graph::is_eulerian) {
            let tour = euler_tour(&g).unwrap();
            assert_eq!(tour.len(), g.edge_count());
            let mut used = vec![0; g.edge_count()];
            for i in 0..tour.len() {
                used[g.edge_between(tour[i], tour[(i + 1) % tour.len()]).unwrap()] += 1;
            }
            assert!(used.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn every_small_graph_has_double_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for g in fixtures::connected_graphs(6) {
            assert_eq!(any_double_trace(&g).len(), 2 * g.edge_count());
            assert_eq!(random_double_trace(&g, &mut rng).len(), 2 * g.edge_count());
        }
    }
}
