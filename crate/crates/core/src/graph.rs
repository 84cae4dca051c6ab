//! Graphs, graph metrics, Rips graphs and the augmentation `A(G)`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::bits::BitSet;
use crate::dist::ExtDist;
use crate::error::{Error, Result};
use crate::metric::{Cover, FiniteMetricSpace};
use crate::verdict::Verdict;

/// A simple undirected graph on named vertices. Edges are stored as sorted
/// pairs `(a, b)` with `a < b`, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Graph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    #[serde(skip)]
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut es = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::OutOfRange { index: v, len: n });
                }
            }
            if a == b {
                return Err(Error::Precondition(format!("loop at vertex `{}`", vertices[a])));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        es.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &es {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { vertices, edges: es, adj })
    }

    /// Vertices named `0..n`.
    pub fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn path(n: usize) -> Self {
        Self::numbered(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs three vertices");
        Self::numbered(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    pub fn complete(n: usize) -> Self {
        Self::numbered(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("valid")
    }

    /// Complete binary tree with `depth` edge levels (`2^(depth+1) − 1`
    /// vertices), heap-numbered from the root `0`.
    pub fn complete_binary_tree(depth: u32) -> Self {
        let n = (1usize << (depth + 1)) - 1;
        Self::numbered(n, (1..n).map(|i| ((i - 1) / 2, i))).expect("valid tree")
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn adjacency_bits(&self) -> Vec<BitSet> {
        let n = self.len();
        let mut out = vec![BitSet::new(n); n];
        for &(a, b) in &self.edges {
            out[a].insert(b);
            out[b].insert(a);
        }
        out
    }

    /// Hop distances from `src`, `None` for unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("visited");
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.len()];
        let mut out = Vec::new();
        for s in 0..self.len() {
            if label[s] != usize::MAX {
                continue;
            }
            let idx = out.len();
            let mut comp = vec![s];
            label[s] = idx;
            let mut k = 0;
            while k < comp.len() {
                for &v in &self.adj[comp[k]] {
                    if label[v] == usize::MAX {
                        label[v] = idx;
                        comp.push(v);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// DOT rendering; deterministic.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph \"{name}\" {{\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{v}\";");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.vertices[a], self.vertices[b]);
        }
        s.push_str("}\n");
        s
    }
}

/// Shortest-path hop metric, infinite across components.
pub fn graph_metric(g: &Graph) -> FiniteMetricSpace {
    use rayon::prelude::*;
    let rows: Vec<Vec<Option<u32>>> = (0..g.len()).into_par_iter().map(|s| g.bfs(s)).collect();
    FiniteMetricSpace::from_fn(g.vertices.clone(), |i, j| {
        rows[i][j].map_or(f64::INFINITY, f64::from)
    })
    .expect("graph vertices are distinct")
}

/// Edges between distinct points at distance at most `t`; `t` must be finite.
pub fn rips_graph_t(space: &FiniteMetricSpace, t: ExtDist) -> Result<Graph> {
    if t.is_inf() {
        return Err(Error::InfiniteScale);
    }
    Ok(rips_graph_at(space, t))
}

/// The Rips graph at `t = INF`: complete on every finite-distance class and
/// also joining points infinitely far apart.
pub fn rips_graph_unbounded(space: &FiniteMetricSpace) -> Graph {
    rips_graph_at(space, ExtDist::INF)
}

fn rips_graph_at(space: &FiniteMetricSpace, t: ExtDist) -> Graph {
    let n = space.len();
    let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| space.within(a, b, t));
    Graph::new(space.ids().to_vec(), edges.collect::<Vec<_>>()).expect("valid pairs")
}

/// Edges between points sharing a cover member.
pub fn rips_graph_cover(space: &FiniteMetricSpace, cover: &Cover) -> Result<Graph> {
    if cover.n_points() != space.len() {
        return Err(Error::CoverMismatch { cover: cover.n_points(), space: space.len() });
    }
    let mut edges = Vec::new();
    for m in cover.members() {
        for (k, &a) in m.iter().enumerate() {
            for &b in &m[k + 1..] {
                edges.push((a, b));
            }
        }
    }
    Graph::new(space.ids().to_vec(), edges)
}

/// `G` plus every pair at graph distance exactly two.
pub fn augment(g: &Graph) -> Graph {
    let mut edges = g.edges.clone();
    for v in 0..g.len() {
        let nb = &g.adj[v];
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                edges.push((a, b));
            }
        }
    }
    Graph::new(g.vertices.clone(), edges).expect("valid pairs")
}

/// Whether the vertex map `f` sends every edge of `g` to an edge of `h` or
/// to a single vertex. Fails with the first offending edge.
pub fn is_short(f: &[usize], g: &Graph, h: &Graph) -> Result<Verdict<(String, String)>> {
    if f.len() != g.len() {
        return Err(Error::PartialMap { expected: g.len(), got: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= h.len()) {
        return Err(Error::OutOfRange { index: bad, len: h.len() });
    }
    Ok(first_long_edge(f, g, h).map(|(a, b)| (g.vertex(a).to_string(), g.vertex(b).to_string())).into())
}

pub(crate) fn first_long_edge(f: &[usize], g: &Graph, h: &Graph) -> Option<(usize, usize)> {
    g.edges
        .iter()
        .copied()
        .find(|&(a, b)| f[a] != f[b] && !h.has_edge(f[a], f[b]))
}
