//! Regular graph generators, girth, and the vertex-as-node code construction.
//!
//! A graph code stores one packet per edge on both of its endpoints, so an
//! `alpha`-regular graph on `n` vertices yields an `(n, alpha, 2)` code.

use std::collections::{BTreeSet, VecDeque};

use crate::arith::is_prime;
use crate::error::{FrError, Result};
use crate::incidence::FrCode;

/// Simple undirected graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    /// Normalized `(min, max)` pairs in lexicographic order.
    edges: BTreeSet<(usize, usize)>,
}

/// Length of the shortest cycle, or `Acyclic` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

impl std::fmt::Display for Girth {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("inf"),
        }
    }
}

impl Graph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(FrError::BadParameters("graph needs at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(FrError::BadParameters(format!("loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(FrError::BadParameters(format!("edge ({u}, {v}) leaves 0..{vertex_count}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(FrError::BadParameters(format!("parallel edge ({u}, {v})")));
            }
        }
        Ok(Graph { vertex_count, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Common degree, or the first vertex that breaks regularity.
    pub fn regular_degree(&self) -> Result<usize> {
        let deg = self.degrees();
        let d = deg[0];
        match deg.iter().position(|&x| x != d) {
            Some(vertex) => Err(FrError::NotRegular { vertex, expected: d, found: deg[vertex] }),
            None => Ok(d),
        }
    }
}

/// Complete `r`-partite graph with equal parts; vertex `v` is in part `v % r`.
pub fn turan_graph(n: usize, r: usize) -> Result<Graph> {
    if n < 2 || r < 2 {
        return Err(FrError::BadParameters(format!("turan graph needs n >= 2 and r >= 2, got ({n}, {r})")));
    }
    if n % r != 0 {
        return Err(FrError::NonDivisible { n, r });
    }
    let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |v| u % r != v % r).map(move |v| (u, v)));
    Graph::new(n, edges)
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(FrError::BadParameters(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(FrError::BadParameters(format!("complete graph needs n >= 2, got {n}")));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
pub fn petersen_graph() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    Graph::new(10, outer.chain(inner).chain(spokes)).expect("petersen graph is simple")
}

/// Vertex `i` adjacent to `i ± off (mod n)` for each offset.
pub fn circulant_graph(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(FrError::BadParameters(format!("circulant needs n >= 3, got {n}")));
    }
    let distinct: BTreeSet<usize> = offsets.iter().copied().collect();
    if distinct.len() != offsets.len() || offsets.is_empty() {
        return Err(FrError::BadParameters("offsets must be nonempty and distinct".into()));
    }
    if let Some(&bad) = offsets.iter().find(|&&o| o == 0 || 2 * o > n) {
        return Err(FrError::BadParameters(format!("offset {bad} outside 1..={}", n / 2)));
    }
    let mut edges = BTreeSet::new();
    for i in 0..n {
        for &o in offsets {
            let j = (i + o) % n;
            edges.insert((i.min(j), i.max(j)));
        }
    }
    Graph::new(n, edges)
}

/// Normalized representatives of the 1-dimensional subspaces of `F_q^dim`:
/// nonzero vectors whose first nonzero coordinate is 1, in lexicographic order.
pub(crate) fn projective_points(q: u64, dim: usize) -> Vec<Vec<u64>> {
    let total = (q as usize).pow(dim as u32);
    (1..total)
        .map(|mut x| {
            let mut v = vec![0u64; dim];
            for slot in v.iter_mut().rev() {
                *slot = (x % q as usize) as u64;
                x /= q as usize;
            }
            v
        })
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect()
}

/// Point-line incidence graph of the projective plane over `Z_q`, `q` prime.
///
/// Points occupy vertices `0..N` and lines `N..2N` with `N = q^2 + q + 1`.
pub fn projective_plane_incidence_graph(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(FrError::NotPrime(q));
    }
    let reps = projective_points(q, 3);
    let count = reps.len();
    let mut edges = Vec::new();
    for (p, x) in reps.iter().enumerate() {
        for (l, a) in reps.iter().enumerate() {
            let dot: u64 = x.iter().zip(a).map(|(u, v)| u * v).sum();
            if dot % q == 0 {
                edges.push((p, count + l));
            }
        }
    }
    Graph::new(2 * count, edges)
}

/// Shortest cycle length via one BFS per root, `O(V * E)`.
pub fn girth(g: &Graph) -> Girth {
    let adj = g.adjacency();
    let n = g.vertex_count;
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            // no shorter cycle can be found past this depth
            if 2 * dist[u] >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}

/// Vertex `v` becomes block `v`; edge `e` (in lexicographic order) becomes point `e`.
pub fn graph_to_fr(g: &Graph) -> Result<FrCode> {
    let alpha = g.regular_degree()?;
    if alpha == 0 {
        return Err(FrError::NotRegular { vertex: 0, expected: 1, found: 0 });
    }
    let mut blocks = vec![Vec::with_capacity(alpha); g.vertex_count];
    for (e, (u, v)) in g.edges().enumerate() {
        blocks[u].push(e as u64);
        blocks[v].push(e as u64);
    }
    FrCode::from_blocks(g.edge_count(), blocks)
}
