use std::collections::BTreeSet;

use serde::Serialize;

use super::{EdgeId, Graph, Vertex};
use crate::budget::BudgetExceeded;

/// A spanning tree, stored as its sorted edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SpanningTree {
    tree: Vec<EdgeId>,
    cotree: Vec<EdgeId>,
}

impl SpanningTree {
    /// Validates that `edges` form a spanning tree of `g`.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Option<Self> {
        let tree: BTreeSet<EdgeId> = edges.into_iter().collect();
        if tree.len() + 1 != g.vertex_count() || tree.iter().any(|&e| e >= g.edge_count()) {
            return None;
        }
        let mut dsu = Dsu::new(g.vertex_count());
        for &e in &tree {
            let (u, v) = g.endpoints(e);
            if !dsu.union(u, v) {
                return None;
            }
        }
        Some(Self::from_sorted(g, tree.into_iter().collect()))
    }

    fn from_sorted(g: &Graph, tree: Vec<EdgeId>) -> Self {
        let mut in_tree = vec![false; g.edge_count()];
        for &e in &tree {
            in_tree[e] = true;
        }
        let cotree = (0..g.edge_count()).filter(|&e| !in_tree[e]).collect();
        SpanningTree { tree, cotree }
    }

    pub fn tree_edges(&self) -> &[EdgeId] {
        &self.tree
    }

    pub fn cotree_edges(&self) -> &[EdgeId] {
        &self.cotree
    }
}

/// Union-find with union by size and path halving.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Streams every spanning tree of `g` exactly once.
///
/// Edges are decided in id order, "include" before "exclude", so trees come
/// out in lexicographic order of their sorted edge lists. An edge may only be
/// excluded while the undecided edges can still span the graph, so every
/// branch ends in a tree. After `cap` trees the stream yields one
/// `Err(BudgetExceeded)` and stops.
pub fn spanning_trees(g: &Graph, cap: u64) -> SpanningTrees<'_> {
    SpanningTrees {
        graph: g,
        stack: vec![Frame { next_edge: 0, chosen: Vec::new() }],
        emitted: 0,
        cap,
        done: false,
    }
}

struct Frame {
    next_edge: EdgeId,
    chosen: Vec<EdgeId>,
}

pub struct SpanningTrees<'g> {
    graph: &'g Graph,
    stack: Vec<Frame>,
    emitted: u64,
    cap: u64,
    done: bool,
}

impl SpanningTrees<'_> {
    fn creates_cycle(&self, chosen: &[EdgeId], e: EdgeId) -> bool {
        let g = self.graph;
        let mut dsu = Dsu::new(g.vertex_count());
        for &c in chosen {
            let (u, v) = g.endpoints(c);
            dsu.union(u, v);
        }
        let (u, v) = g.endpoints(e);
        dsu.find(u) == dsu.find(v)
    }

    /// Can `chosen` plus the edges after `e` still span the graph?
    fn spannable_without(&self, chosen: &[EdgeId], e: EdgeId) -> bool {
        let g = self.graph;
        let mut dsu = Dsu::new(g.vertex_count());
        let mut components = g.vertex_count();
        for c in chosen.iter().copied().chain(e + 1..g.edge_count()) {
            let (u, v) = g.endpoints(c);
            if dsu.union(u, v) {
                components -= 1;
            }
        }
        components == 1
    }
}

impl Iterator for SpanningTrees<'_> {
    type Item = Result<SpanningTree, BudgetExceeded>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let target = self.graph.vertex_count() - 1;
        while let Some(frame) = self.stack.pop() {
            if frame.chosen.len() == target {
                if self.emitted == self.cap {
                    self.done = true;
                    return Some(Err(BudgetExceeded {
                        resource: crate::budget::Resource::SpanningTrees,
                        limit: self.cap,
                    }));
                }
                self.emitted += 1;
                return Some(Ok(SpanningTree::from_sorted(self.graph, frame.chosen)));
            }
            let e = frame.next_edge;
            if e >= self.graph.edge_count() {
                continue;
            }
            if self.spannable_without(&frame.chosen, e) {
                self.stack.push(Frame { next_edge: e + 1, chosen: frame.chosen.clone() });
            }
            if !self.creates_cycle(&frame.chosen, e) {
                let mut chosen = frame.chosen;
                chosen.push(e);
                self.stack.push(Frame { next_edge: e + 1, chosen });
            }
        }
        self.done = true;
        None
    }
}

/// Does every component of the cotree subgraph `(V, E \ T)` have an even
/// number of edges? Isolated vertices count as components with zero edges.
pub fn cotree_components_even(g: &Graph, t: &SpanningTree) -> bool {
    cotree_components(g, t).into_iter().all(|(_, count)| count % 2 == 0)
}

/// Groups the cotree edges of `t` into connected components, by member vertices.
pub(crate) fn cotree_components(g: &Graph, t: &SpanningTree) -> Vec<(Vec<Vertex>, usize)> {
    let mut dsu = Dsu::new(g.vertex_count());
    for &e in t.cotree_edges() {
        let (u, v) = g.endpoints(e);
        dsu.union(u, v);
    }
    let mut edge_count = vec![0usize; g.vertex_count()];
    let mut touched = vec![false; g.vertex_count()];
    for &e in t.cotree_edges() {
        let (u, v) = g.endpoints(e);
        edge_count[dsu.find(u)] += 1;
        touched[u] = true;
        touched[v] = true;
    }
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); g.vertex_count()];
    for v in g.vertices() {
        if touched[v] {
            let r = dsu.find(v);
            members[r].push(v);
        }
    }
    members
        .into_iter()
        .enumerate()
        .filter(|(_, m)| !m.is_empty())
        .map(|(r, m)| (m, edge_count[r]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    /// Kirchhoff: any cofactor of the Laplacian, by fraction-free elimination.
    fn matrix_tree_count(g: &Graph) -> i128 {
        let n = g.vertex_count() - 1;
        let mut m = vec![vec![0i128; n]; n];
        for &(u, v) in g.edges() {
            for (a, b) in [(u, v), (v, u)] {
                if a < n {
                    m[a][a] += 1;
                    if b < n {
                        m[a][b] -= 1;
                    }
                }
            }
        }
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..n {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else { return 0 };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        if n == 0 {
            1
        } else {
            sign * m[n - 1][n - 1]
        }
    }

    fn all_trees(g: &Graph) -> Vec<SpanningTree> {
        spanning_trees(g, u64::MAX).map(Result::unwrap).collect()
    }

    #[test]
    fn small_counts() {
        assert_eq!(all_trees(&fixtures::cycle(3)).len(), 3);
        assert_eq!(all_trees(&fixtures::complete(4)).len(), 16);
        let path = fixtures::path(4);
        let trees = all_trees(&path);
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].tree_edges(), &[0, 1, 2]);
    }

    #[test]
    fn lexicographic_and_distinct() {
        let trees = all_trees(&fixtures::complete(5));
        assert_eq!(trees.len(), 125);
        for w in trees.windows(2) {
            assert!(w[0].tree_edges() < w[1].tree_edges());
        }
    }

    #[test]
    fn matches_matrix_tree_theorem() {
        for g in fixtures::connected_graphs(6) {
            let trees = all_trees(&g);
            assert_eq!(trees.len() as i128, matrix_tree_count(&g), "{:?}", g.edges());
            for t in &trees {
                assert!(SpanningTree::new(&g, t.tree_edges().iter().copied()).is_some());
                assert_eq!(t.cotree_edges().len(), g.betti());
            }
        }
        assert_eq!(matrix_tree_count(&fixtures::cube()), 384);
        assert_eq!(all_trees(&fixtures::cube()).len(), 384);
    }

    #[test]
    fn cap_is_reported() {
        let k4 = fixtures::complete(4);
        let mut it = spanning_trees(&k4, 5);
        for _ in 0..5 {
            assert!(it.next().unwrap().is_ok());
        }
        assert!(it.next().unwrap().is_err());
        assert!(it.next().is_none());
        // a cap equal to the count is not an overrun
        assert!(spanning_trees(&fixtures::cycle(3), 3).all(|t| t.is_ok()));
    }

    #[test]
    fn rejects_non_trees() {
        let g = fixtures::cycle(3);
        assert!(SpanningTree::new(&g, [0]).is_none());
        assert!(SpanningTree::new(&g, [0, 1, 2]).is_none());
        assert!(SpanningTree::new(&g, [0, 9]).is_none());
    }

    #[test]
    fn cotree_parity_examples() {
        let c3 = fixtures::cycle(3);
        for t in all_trees(&c3) {
            assert!(!cotree_components_even(&c3, &t));
        }
        // star at vertex 0 in K5 leaves a K4 on the other four vertices
        let k5 = fixtures::complete(5);
        let star: Vec<EdgeId> = k5.incident(0).iter().map(|&(e, _)| e).collect();
        let t = SpanningTree::new(&k5, star).unwrap();
        assert!(cotree_components_even(&k5, &t));
        // bowtie with triangles abc, ade and tree {ab, bc, ad, de}
        let bowtie = fixtures::bowtie();
        let t = SpanningTree::new(&bowtie, [0, 1, 3, 4]).unwrap();
        assert_eq!(t.cotree_edges(), &[2, 5]);
        assert!(cotree_components_even(&bowtie, &t));
        assert_eq!(cotree_components(&bowtie, &t), vec![(vec![0, 2, 4], 2)]);
    }

    #[test]
    fn even_cotree_implies_even_betti() {
        for g in fixtures::connected_graphs(6) {
            for t in all_trees(&g) {
                if cotree_components_even(&g, &t) {
                    assert_eq!(g.betti() % 2, 0);
                }
            }
        }
    }
}
