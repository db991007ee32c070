use std::collections::BTreeSet;

use super::{EdgeId, Graph};

/// Bridges of `g` via iterative low-link DFS.
pub fn cut_edges(g: &Graph) -> BTreeSet<EdgeId> {
    let n = g.vertex_count();
    let mut order = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut bridges = BTreeSet::new();
    let mut clock = 0;

    for root in g.vertices() {
        if order[root] != usize::MAX {
            continue;
        }
        order[root] = clock;
        low[root] = clock;
        clock += 1;
        // (vertex, edge used to enter it, next adjacency index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
            if let Some(&(e, w)) = g.incident(v).get(*next) {
                *next += 1;
                if e == parent_edge {
                    continue;
                }
                if order[w] == usize::MAX {
                    order[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, e, 0));
                } else {
                    low[v] = low[v].min(order[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > order[p] {
                        bridges.insert(parent_edge);
                    }
                }
            }
        }
    }
    bridges
}
