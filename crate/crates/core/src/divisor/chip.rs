use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use std::collections::HashMap;

/// Integer chip counts indexed by model vertex.
pub type Config = Vec<i64>;
/// Integer function values indexed by model vertex.
pub type LevelMap = Vec<i64>;

/// The discrete multigraph underlying a unit model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChipGraph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    edge_ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
    weights: Vec<u32>,
}

impl ChipGraph {
    /// The discrete graph of a model whose edges all have the same length.
    pub fn from_model(g: &MetricGraph) -> Result<ChipGraph> {
        if let Some(e0) = g.edges().first() {
            if g.edges().iter().any(|e| e.length != e0.length) {
                return Err(Error::NonUniformModel);
            }
        }
        if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
            return Err(Error::SelfLoopInModel(e.id.clone()));
        }
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.from, e.to)).collect();
        let edge_ids = g.edges().iter().map(|e| e.id.clone()).collect();
        let ids: Vec<String> = g.vertices().iter().map(|v| v.id.clone()).collect();
        let weights = g.vertices().iter().map(|v| v.weight).collect();
        Ok(Self::assemble(ids, edge_ids, edges, weights))
    }

    fn assemble(ids: Vec<String>, edge_ids: Vec<String>, edges: Vec<(usize, usize)>, weights: Vec<u32>) -> ChipGraph {
        let mut adj = vec![Vec::new(); ids.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        ChipGraph { ids, index, edge_ids, edges, adj, weights }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edge_ids[e]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbour, edge)` pairs at `v`, one per edge, in edge order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn weight(&self, v: usize) -> u32 {
        self.weights[v]
    }

    pub fn is_connected(&self) -> bool {
        if self.ids.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::DisconnectedInput)
        }
    }

    pub fn genus(&self) -> i64 {
        // connected graphs only
        self.edges.len() as i64 - self.ids.len() as i64 + 1
    }

    /// K(v) = 2h(v) − 2 + val(v).
    pub fn canonical(&self) -> Config {
        (0..self.len()).map(|v| 2 * self.weights[v] as i64 - 2 + self.valence(v) as i64).collect()
    }

    /// F = Adj − diag(val).
    pub fn firing_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.len();
        let mut f = vec![vec![0i64; n]; n];
        for &(a, b) in &self.edges {
            f[a][b] += 1;
            f[b][a] += 1;
            f[a][a] -= 1;
            f[b][b] -= 1;
        }
        f
    }

    /// F·f: each vertex gains f(y) − f(x) per edge to y.
    pub fn div(&self, f: &[i64]) -> Config {
        (0..self.len())
            .map(|x| self.adj[x].iter().map(|&(y, _)| f[y] - f[x]).sum())
            .collect()
    }

    /// Adds m·div(1_A) in place; `in_set` marks A.
    pub fn fire(&self, d: &mut [i64], in_set: &[bool], m: i64) {
        for &(a, b) in &self.edges {
            if in_set[a] != in_set[b] {
                let (inside, outside) = if in_set[a] { (a, b) } else { (b, a) };
                d[inside] -= m;
                d[outside] += m;
            }
        }
    }

    /// Number of edges from `v` to vertices outside the set.
    pub fn out_degree(&self, in_set: &[bool], v: usize) -> i64 {
        self.adj[v].iter().filter(|&&(w, _)| !in_set[w]).count() as i64
    }

    /// Whether A (non-empty) can fire: every vertex of A holds at least its out-degree.
    pub fn can_fire(&self, d: &[i64], in_set: &[bool]) -> bool {
        (0..self.len()).all(|v| !in_set[v] || d[v] >= self.out_degree(in_set, v))
    }

    /// Whether the vertex set induces a connected subgraph.
    pub fn is_connected_set(&self, in_set: &[bool]) -> bool {
        let Some(start) = (0..self.len()).find(|&v| in_set[v]) else { return true };
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(w, _) in &self.adj[u] {
                if in_set[w] && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == in_set.iter().filter(|&&b| b).count()
    }

    /// Every edge split in two through a new vertex `<edge>@1/2`, appended after the originals.
    pub fn doubled(&self) -> ChipGraph {
        let mut ids = self.ids.clone();
        let mut weights = self.weights.clone();
        let mut edges = Vec::with_capacity(2 * self.edges.len());
        let mut edge_ids = Vec::with_capacity(2 * self.edges.len());
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let m = ids.len();
            ids.push(format!("{}@1/2", self.edge_ids[i]));
            weights.push(0);
            edges.push((a, m));
            edge_ids.push(format!("{}#1", self.edge_ids[i]));
            edges.push((m, b));
            edge_ids.push(format!("{}#2", self.edge_ids[i]));
        }
        Self::assemble(ids, edge_ids, edges, weights)
    }

    /// A chip graph from raw parts, for tests and generated examples.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> ChipGraph {
        assert!(edges.iter().all(|&(a, b)| a != b && a < n && b < n));
        let ids = (0..n).map(|i| format!("v{i}")).collect();
        let edge_ids = (0..edges.len()).map(|i| format!("e{i}")).collect();
        Self::assemble(ids, edge_ids, edges.to_vec(), vec![0; n])
    }
}
