//! Named graphs and an exhaustive small-graph corpus for tests and benches.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(n, &edges).expect("complete graph")
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).expect("cycle")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).expect("path")
}

/// `K_{1,leaves}` with the centre at vertex 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star")
}

/// Two triangles `abc` and `ade` sharing the vertex `a`.
pub fn bowtie() -> Graph {
    let labels = ["a", "b", "c", "d", "e"].map(String::from).to_vec();
    Graph::with_labels(labels, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).expect("bowtie")
}

/// The 3-cube `Q3`; vertices are 3-bit words, edges join words at Hamming distance one.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8usize {
        for bit in 0..3 {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(8, &edges).expect("cube")
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).expect("petersen")
}

/// Three triangles glued at one vertex: a degree-6 centre.
pub fn triple_triangle() -> Graph {
    Graph::from_edges(7, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0), (0, 5), (5, 6), (6, 0)])
        .expect("triple triangle")
}

/// All connected simple graphs on `2..=max_vertices` vertices, one per
/// isomorphism class, in order of vertex count and then canonical code.
///
/// Every connected graph on `n` vertices arises from a connected graph on
/// `n - 1` vertices by attaching a new vertex (delete a leaf of any spanning
/// tree), so the classes are grown one vertex at a time and deduplicated by a
/// canonical adjacency code.
pub fn connected_graphs(max_vertices: usize) -> Vec<Graph> {
    assert!(max_vertices <= 8, "corpus generation is meant for desk-scale sizes");
    let mut out = Vec::new();
    let mut layer: BTreeSet<u64> = BTreeSet::new();
    if max_vertices >= 2 {
        layer.insert(canonical_code(&[0b10, 0b01]));
    }
    for n in 2..=max_vertices {
        if n > 2 {
            let mut next = BTreeSet::new();
            for &code in &layer {
                let rows = decode(code, n - 1);
                for mask in 1u32..(1 << (n - 1)) {
                    let mut grown: Vec<u32> = rows.clone();
                    for (v, row) in grown.iter_mut().enumerate() {
                        if mask >> v & 1 == 1 {
                            *row |= 1 << (n - 1);
                        }
                    }
                    grown.push(mask);
                    next.insert(canonical_code(&grown));
                }
            }
            layer = next;
        }
        out.extend(layer.iter().map(|&code| graph_from_rows(&decode(code, n))));
    }
    out
}

fn graph_from_rows(rows: &[u32]) -> Graph {
    let n = rows.len();
    let mut edges = Vec::new();
    for (u, row) in rows.iter().enumerate() {
        for v in u + 1..n {
            if row >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("corpus graph is connected")
}

/// Upper-triangle bits, row by row.
fn encode(rows: &[u32], perm: &[Vertex]) -> u64 {
    let n = rows.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(rows[perm[i]] >> perm[j] & 1);
        }
    }
    code
}

fn decode(code: u64, n: usize) -> Vec<u32> {
    let mut rows = vec![0u32; n];
    let mut bit = n * (n - 1) / 2;
    for i in 0..n {
        for j in i + 1..n {
            bit -= 1;
            if code >> bit & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
        }
    }
    rows
}

/// Maximum adjacency code over all relabelings that respect a colour
/// refinement of the vertices; equal for isomorphic graphs.
fn canonical_code(rows: &[u32]) -> u64 {
    let n = rows.len();
    let mut colour: Vec<usize> = rows.iter().map(|r| r.count_ones() as usize).collect();
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| rows[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let distinct: BTreeSet<&(usize, Vec<usize>)> = signatures.iter().collect();
        let refined: Vec<usize> =
            signatures.iter().map(|s| distinct.iter().position(|d| *d == s).unwrap()).collect();
        let before: BTreeSet<usize> = colour.iter().copied().collect();
        let stable = distinct.len() == before.len();
        colour = refined;
        if stable {
            break;
        }
    }
    // positions are filled cell by cell in colour order
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let max_colour = colour.iter().copied().max().unwrap_or(0);
    for c in 0..=max_colour {
        let cell: Vec<Vertex> = (0..n).filter(|&v| colour[v] == c).collect();
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    let slots: Vec<&[Vertex]> = cells.iter().flat_map(|c| std::iter::repeat_n(c.as_slice(), c.len())).collect();
    let mut best = 0u64;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    search_cells(rows, &slots, &mut perm, &mut used, &mut best);
    best
}

/// `slots[p]` is the cell that position `p` must be filled from.
fn search_cells(rows: &[u32], slots: &[&[Vertex]], perm: &mut Vec<Vertex>, used: &mut [bool], best: &mut u64) {
    if perm.len() == rows.len() {
        *best = (*best).max(encode(rows, perm));
        return;
    }
    for &v in slots[perm.len()] {
        if used[v] {
            continue;
        }
        used[v] = true;
        perm.push(v);
        search_cells(rows, slots, perm, used, best);
        perm.pop();
        used[v] = false;
    }
}
