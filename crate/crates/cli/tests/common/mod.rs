//! Independent oracles and process helpers shared by the CLI test targets.
//!
//! Nothing here calls into the algorithms under test: repetitions are
//! checked straight from their definition, faces are counted as orbits of a
//! flag map, automorphisms and canonical forms are found by brute force.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::Value;
use strongtrace::{EdgeId, Graph, Vertex};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_strongtrace"))
}

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|err| panic!("bad JSON ({err}): {}", self.stdout))
    }
}

pub fn run<I, S>(args: I) -> Run
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    let out = bin().args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

/// Writes `g` as an edge list, one `u v` label pair per line.
pub fn write_graph(dir: &Path, name: &str, g: &Graph) -> PathBuf {
    let text: String = g.edges().iter().map(|&(u, v)| format!("{} {}\n", g.label(u), g.label(v))).collect();
    write_text(dir, name, &text)
}

pub fn write_text(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).expect("temp file writable");
    path
}

pub fn edge_of(g: &Graph, u: Vertex, v: Vertex) -> Option<EdgeId> {
    g.edges().iter().position(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
}

pub fn neighbours(g: &Graph, v: Vertex) -> Vec<Vertex> {
    g.edges()
        .iter()
        .filter_map(|&(a, b)| {
            if a == v {
                Some(b)
            } else if b == v {
                Some(a)
            } else {
                None
            }
        })
        .collect()
}

/// A closed walk covering every edge exactly twice.
pub fn is_double_trace(g: &Graph, walk: &[Vertex]) -> bool {
    let n = walk.len();
    let mut count = vec![0; g.edge_count()];
    for i in 0..n {
        match edge_of(g, walk[i], walk[(i + 1) % n]) {
            Some(e) => count[e] += 1,
            None => return false,
        }
    }
    n > 0 && count.iter().all(|&c| c == 2)
}

/// At every visit of `v`, the previous vertex is in `set` iff the next one is.
pub fn has_repetition(walk: &[Vertex], v: Vertex, set: &BTreeSet<Vertex>) -> bool {
    let n = walk.len();
    (0..n).filter(|&i| walk[i] == v).all(|i| set.contains(&walk[(i + n - 1) % n]) == set.contains(&walk[(i + 1) % n]))
}

fn subsets(items: &[Vertex]) -> impl Iterator<Item = BTreeSet<Vertex>> + '_ {
    (0u32..1 << items.len())
        .map(move |mask| items.iter().enumerate().filter(|&(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
}

/// Sizes of the nonempty neighbour sets with a repetition at `v`, `N(v)` included.
pub fn repetition_orders(g: &Graph, walk: &[Vertex], v: Vertex) -> BTreeSet<usize> {
    let ns = neighbours(g, v);
    subsets(&ns).filter(|s| !s.is_empty() && has_repetition(walk, v, s)).map(|s| s.len()).collect()
}

pub fn has_nontrivial_repetition(g: &Graph, walk: &[Vertex], v: Vertex) -> bool {
    let degree = neighbours(g, v).len();
    repetition_orders(g, walk, v).iter().any(|&k| k < degree)
}

pub fn is_strong(g: &Graph, walk: &[Vertex]) -> bool {
    is_double_trace(g, walk) && g.vertices().all(|v| !has_nontrivial_repetition(g, walk, v))
}

/// No nonempty repetition of order at most `d` anywhere.
pub fn is_d_stable(g: &Graph, walk: &[Vertex], d: usize) -> bool {
    is_double_trace(g, walk) && g.vertices().all(|v| repetition_orders(g, walk, v).iter().all(|&k| k > d))
}

/// Per edge, whether its two traversals share a direction.
pub fn parallel_edges(g: &Graph, walk: &[Vertex]) -> Vec<bool> {
    let n = walk.len();
    let mut tails = vec![Vec::new(); g.edge_count()];
    for i in 0..n {
        tails[edge_of(g, walk[i], walk[(i + 1) % n]).unwrap()].push(walk[i]);
    }
    tails.iter().map(|t| t[0] == t[1]).collect()
}

/// Hierholzer on the doubled edge multiset with shuffled adjacency.
pub fn random_double_trace(g: &Graph, rng: &mut impl Rng) -> Vec<Vertex> {
    let mut remaining = vec![2u8; g.edge_count()];
    let mut adjacency: Vec<Vec<(EdgeId, Vertex)>> = vec![Vec::new(); g.vertex_count()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        adjacency[u].push((e, v));
        adjacency[v].push((e, u));
    }
    for list in &mut adjacency {
        list.shuffle(rng);
    }
    let mut stack = vec![0];
    let mut out = Vec::new();
    while let Some(&v) = stack.last() {
        match adjacency[v].iter().find(|&&(e, _)| remaining[e] > 0) {
            Some(&(e, w)) => {
                remaining[e] -= 1;
                stack.push(w);
            }
            None => out.push(stack.pop().unwrap()),
        }
    }
    out.pop();
    out
}

/// Faces and orientability of a signed rotation system, from the flag map.
///
/// A flag `(v, e, side)` sits at endpoint `v` of `e`; side 1 faces the
/// rotation successor of `e` at `v`. Faces are orbits of the two involutions
/// "cross the corner" and "slide along the edge"; the surface is orientable
/// iff the flag graph of all three involutions is bipartite.
pub struct FlagMap {
    pub faces: usize,
    pub orientable: bool,
}

pub fn flag_map(g: &Graph, rotation: &[Vec<EdgeId>], negative: &[bool]) -> FlagMap {
    let m = g.edge_count();
    let index = |e: EdgeId, end: usize, side: usize| 4 * e + 2 * end + side;
    let end_of = |e: EdgeId, v: Vertex| usize::from(g.edges()[e].0 != v);
    let mut corner = vec![0; 4 * m];
    let mut slide = vec![0; 4 * m];
    let mut flip = vec![0; 4 * m];
    for (v, order) in rotation.iter().enumerate() {
        let k = order.len();
        for i in 0..k {
            let (e, f) = (order[i], order[(i + 1) % k]);
            let a = index(e, end_of(e, v), 1);
            let b = index(f, end_of(f, v), 0);
            corner[a] = b;
            corner[b] = a;
        }
    }
    for e in 0..m {
        for side in 0..2 {
            let other = if negative[e] { side } else { 1 - side };
            slide[index(e, 0, side)] = index(e, 1, other);
            slide[index(e, 1, other)] = index(e, 0, side);
            for end in 0..2 {
                flip[index(e, end, side)] = index(e, end, 1 - side);
            }
        }
    }
    let mut seen = vec![false; 4 * m];
    let mut faces = 0;
    for start in 0..4 * m {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for y in [corner[x], slide[x]] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    let mut colour = vec![u8::MAX; 4 * m];
    let mut orientable = true;
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for y in [corner[x], slide[x], flip[x]] {
            if colour[y] == u8::MAX {
                colour[y] = 1 - colour[x];
                stack.push(y);
            } else if colour[y] == colour[x] {
                orientable = false;
            }
        }
    }
    FlagMap { faces, orientable }
}

fn permutations(items: &[EdgeId]) -> Vec<Vec<EdgeId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Every rotation system of `g`: each vertex's cyclic orders with the first
/// incident edge pinned.
pub fn all_rotation_systems(g: &Graph) -> Vec<Vec<Vec<EdgeId>>> {
    let per_vertex: Vec<Vec<Vec<EdgeId>>> = g
        .vertices()
        .map(|v| {
            let incident: Vec<EdgeId> =
                (0..g.edge_count()).filter(|&e| g.edges()[e].0 == v || g.edges()[e].1 == v).collect();
            permutations(&incident[1..])
                .into_iter()
                .map(|mut rest| {
                    rest.insert(0, incident[0]);
                    rest
                })
                .collect()
        })
        .collect();
    let mut systems = vec![Vec::new()];
    for options in &per_vertex {
        systems = systems
            .into_iter()
            .flat_map(|prefix: Vec<Vec<EdgeId>>| {
                options.iter().map(move |o| {
                    let mut next = prefix.clone();
                    next.push(o.clone());
                    next
                })
            })
            .collect();
    }
    systems
}

pub fn automorphisms(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.vertex_count();
    let edges: BTreeSet<(Vertex, Vertex)> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let ids: Vec<Vertex> = (0..n).collect();
    permutations(&ids)
        .into_iter()
        .filter(|p| edges.iter().all(|&(u, v)| edges.contains(&(p[u].min(p[v]), p[u].max(p[v])))))
        .collect()
}

pub fn least_rotation(seq: &[Vertex]) -> Vec<Vertex> {
    (0..seq.len()).map(|i| seq[i..].iter().chain(&seq[..i]).copied().collect::<Vec<_>>()).min().unwrap_or_default()
}

pub fn rotation_reversal_class(seq: &[Vertex]) -> Vec<Vertex> {
    let mut rev = seq.to_vec();
    rev.reverse();
    least_rotation(seq).min(least_rotation(&rev))
}

pub fn automorphism_class(seq: &[Vertex], autos: &[Vec<Vertex>]) -> Vec<Vertex> {
    autos
        .iter()
        .map(|p| rotation_reversal_class(&seq.iter().map(|&v| p[v]).collect::<Vec<_>>()))
        .min()
        .unwrap_or_default()
}

/// Rotation system and negative-edge mask from an embedding's JSON form.
pub fn embedding_from_json(g: &Graph, json: &Value) -> (Vec<Vec<EdgeId>>, Vec<bool>) {
    let rotation = (0..g.vertex_count())
        .map(|v| {
            json["rotation"][v.to_string()]
                .as_array()
                .expect("rotation per vertex")
                .iter()
                .map(|e| e.as_u64().unwrap() as usize)
                .collect()
        })
        .collect();
    let negative = (0..g.edge_count()).map(|e| json["signature"][e.to_string()].as_i64() == Some(-1)).collect();
    (rotation, negative)
}

/// Euler genus from `V - E + F`, or `None` when it is not a valid surface.
pub fn surface_genus(g: &Graph, faces: usize, orientable: bool) -> Option<usize> {
    let euler_genus = 2 + g.edge_count() as i64 - g.vertex_count() as i64 - faces as i64;
    match (orientable, euler_genus) {
        (_, eg) if eg < 0 => None,
        (true, eg) if eg % 2 == 0 => Some(eg as usize / 2),
        (false, eg) if eg >= 1 => Some(eg as usize),
        _ => None,
    }
}

pub fn vertices_of(g: &Graph, labels: &Value) -> Vec<Vertex> {
    labels
        .as_array()
        .expect("trace is a label list")
        .iter()
        .map(|l| g.vertex_by_label(l.as_str().unwrap()).expect("known label"))
        .collect()
}

/// Number of cycles in the vertex figure at `v`: incident edges joined when
/// consecutive along the walk through `v`.
pub fn figure_cycles(g: &Graph, walk: &[Vertex], v: Vertex) -> usize {
    let n = walk.len();
    let incident: Vec<EdgeId> = (0..g.edge_count()).filter(|&e| g.edges()[e].0 == v || g.edges()[e].1 == v).collect();
    let mut parent: Vec<usize> = (0..incident.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let slot = |e: EdgeId| incident.iter().position(|&f| f == e).unwrap();
    for i in (0..n).filter(|&i| walk[i] == v) {
        let a = slot(edge_of(g, walk[(i + n - 1) % n], v).unwrap());
        let b = slot(edge_of(g, v, walk[(i + 1) % n]).unwrap());
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        parent[ra] = rb;
    }
    (0..incident.len()).filter(|&x| root(&mut parent, x) == x).count()
}
