//! Metric graphs with exact rational edge lengths, their models and
//! the connectivity queries the rest of the crate leans on.

mod blocks;
mod cycles;
mod refine;

pub use blocks::{blocks_and_bridges, blocks_of, edge_on_simple_cycle, vertex_on_simple_cycle, Blocks};
pub use cycles::{disjoint_cycles, shortest_path_between, Cycle};
pub use refine::Refinement;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, serde_q, Q};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub from: usize,
    pub to: usize,
    pub length: Q,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

/// One end of an edge seen from the vertex it is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfEdge {
    pub edge: usize,
    /// True when the vertex is the edge's `from` end.
    pub at_origin: bool,
}

/// A location on a graph, by id. Edge offsets are measured from the edge's
/// `from` end and are strictly interior.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Vertex(String),
    Edge { edge: String, offset: Q },
}

impl Point {
    pub fn vertex(id: &str) -> Point {
        Point::Vertex(id.to_string())
    }

    pub fn on_edge(edge: &str, offset: Q) -> Point {
        Point::Edge { edge: edge.to_string(), offset }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Vertex(v) => write!(f, "{v}"),
            Point::Edge { edge, offset } => write!(f, "{edge}+{}", fmt_q(offset)),
        }
    }
}

/// A point resolved to indices of a particular graph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Loc {
    Vertex(usize),
    Edge(usize, Q),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    #[serde(default)]
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub from: String,
    pub to: String,
    #[serde(with = "serde_q")]
    pub length: Q,
}

/// The JSON graph description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone)]
pub struct MetricGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vindex: HashMap<String, usize>,
    eindex: HashMap<String, usize>,
    incidence: Vec<Vec<HalfEdge>>,
}

impl PartialEq for MetricGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for MetricGraph {}

impl MetricGraph {
    /// Validates and indexes a graph. Vertices and edges are stored sorted by id.
    pub fn build(spec: &GraphSpec) -> Result<MetricGraph> {
        if spec.vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vs: Vec<Vertex> = spec
            .vertices
            .iter()
            .map(|v| Vertex { id: v.id.clone(), weight: v.weight })
            .collect();
        vs.sort_by(|a, b| a.id.cmp(&b.id));
        for w in vs.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateId(w[0].id.clone()));
            }
        }
        let vindex: HashMap<String, usize> =
            vs.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect();
        let mut es = Vec::with_capacity(spec.edges.len());
        for e in &spec.edges {
            if !e.length.is_positive() {
                return Err(Error::NonPositiveLength(e.id.clone()));
            }
            let end = |id: &String| {
                vindex.get(id).copied().ok_or_else(|| Error::DanglingEndpoint {
                    edge: e.id.clone(),
                    vertex: id.clone(),
                })
            };
            es.push(Edge { id: e.id.clone(), from: end(&e.from)?, to: end(&e.to)?, length: e.length.clone() });
        }
        es.sort_by(|a, b| a.id.cmp(&b.id));
        for w in es.windows(2) {
            if w[0].id == w[1].id {
                return Err(Error::DuplicateId(w[0].id.clone()));
            }
        }
        Ok(Self::assemble(vs, es))
    }

    /// Convenience constructor from `(id, weight)` and `(id, from, to, length)` lists.
    pub fn from_parts(vertices: &[(&str, u32)], edges: &[(&str, &str, &str, Q)]) -> Result<MetricGraph> {
        Self::build(&GraphSpec {
            vertices: vertices.iter().map(|(id, w)| VertexSpec { id: id.to_string(), weight: *w }).collect(),
            edges: edges
                .iter()
                .map(|(id, a, b, l)| EdgeSpec { id: id.to_string(), from: a.to_string(), to: b.to_string(), length: l.clone() })
                .collect(),
        })
    }

    fn assemble(vertices: Vec<Vertex>, edges: Vec<Edge>) -> MetricGraph {
        let vindex = vertices.iter().enumerate().map(|(i, v)| (v.id.clone(), i)).collect();
        let eindex = edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i)).collect();
        let mut incidence = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            incidence[e.from].push(HalfEdge { edge: i, at_origin: true });
            incidence[e.to].push(HalfEdge { edge: i, at_origin: false });
        }
        MetricGraph { vertices, edges, vindex, eindex, incidence }
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.iter().map(|v| VertexSpec { id: v.id.clone(), weight: v.weight }).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    from: self.vertices[e.from].id.clone(),
                    to: self.vertices[e.to].id.clone(),
                    length: e.length.clone(),
                })
                .collect(),
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, id: &str) -> Result<usize> {
        self.vindex.get(id).copied().ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn edge_index(&self, id: &str) -> Result<usize> {
        self.eindex.get(id).copied().ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    /// Half-edges at `v`, in edge order. A self-loop contributes two.
    pub fn half_edges(&self, v: usize) -> &[HalfEdge] {
        &self.incidence[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// The vertex at the far end of a half-edge.
    pub fn far_end(&self, h: HalfEdge) -> usize {
        let e = &self.edges[h.edge];
        if h.at_origin {
            e.to
        } else {
            e.from
        }
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn total_weight(&self) -> u64 {
        self.vertices.iter().map(|v| v.weight as u64).sum()
    }

    /// Component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        uf.labels()
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    /// First Betti number |E| − |V| + #components.
    pub fn genus(&self) -> i64 {
        self.edges.len() as i64 - self.vertices.len() as i64 + self.components().1 as i64
    }

    /// Betti number plus the total vertex weight.
    pub fn arithmetic_genus(&self) -> i64 {
        self.genus() + self.total_weight() as i64
    }

    pub fn locate(&self, p: &Point) -> Result<Loc> {
        match p {
            Point::Vertex(id) => Ok(Loc::Vertex(self.vertex_index(id)?)),
            Point::Edge { edge, offset } => {
                let e = self.edge_index(edge)?;
                if !offset.is_positive() || offset >= &self.edges[e].length {
                    return Err(Error::InvalidOffset { edge: edge.clone(), offset: fmt_q(offset) });
                }
                Ok(Loc::Edge(e, offset.clone()))
            }
        }
    }

    pub fn point(&self, loc: &Loc) -> Point {
        match loc {
            Loc::Vertex(v) => Point::Vertex(self.vertices[*v].id.clone()),
            Loc::Edge(e, t) => Point::Edge { edge: self.edges[*e].id.clone(), offset: t.clone() },
        }
    }

    /// Each edge split into `k` equal pieces; new vertices are named `<edge>@<i>/<k>`.
    pub fn subdivide(&self, k: u32) -> Result<Refinement> {
        assert!(k >= 1, "subdivision factor must be positive");
        let cuts = self
            .edges
            .iter()
            .map(|e| (1..k).map(|i| &e.length * Q::new(i.into(), k.into())).collect())
            .collect();
        Refinement::new(self, cuts, |e, _, i| format!("{}@{}/{}", e.id, i, k))
    }

    /// Refines the model so that every point of `points` becomes a vertex.
    pub fn model_with_breakpoints(&self, points: &[Point]) -> Result<Refinement> {
        let mut cuts: Vec<BTreeSet<Q>> = vec![BTreeSet::new(); self.edges.len()];
        for p in points {
            if let Loc::Edge(e, t) = self.locate(p)? {
                cuts[e].insert(t);
            }
        }
        let cuts = cuts.into_iter().map(|s| s.into_iter().collect()).collect();
        Refinement::new(self, cuts, fraction_name)
    }

    /// Every self-loop replaced by two half-length edges through its midpoint.
    pub fn loopless(&self) -> Result<Refinement> {
        let cuts = self
            .edges
            .iter()
            .map(|e| if e.is_loop() { vec![&e.length / Q::from_integer(2.into())] } else { Vec::new() })
            .collect();
        Refinement::new(self, cuts, fraction_name)
    }

    /// Genus of Γ \ A, obtained from the glueing formula
    /// g(Γ) = g(Γ \ A) + Σ (val(x) − 1) + 1 − N and checked against a direct
    /// count on the cut graph.
    pub fn genus_after_removal(&self, points: &[Point]) -> Result<i64> {
        Ok(self.cut_summary(points)?.genus)
    }

    /// Genus and number of components of Γ \ A.
    pub fn cut_summary(&self, points: &[Point]) -> Result<CutSummary> {
        if !self.is_connected() {
            return Err(Error::DisconnectedInput);
        }
        let r = self.model_with_breakpoints(points)?;
        let m = &r.graph;
        let mut removed = vec![false; m.num_vertices()];
        for p in points {
            if let Loc::Vertex(v) = m.locate(&r.translate(p)?)? {
                removed[v] = true;
            }
        }
        // cut graph: kept vertices, then one leaf per half-edge at a removed vertex
        let mut node_of_half: HashMap<(usize, bool), usize> = HashMap::new();
        let mut nodes = m.num_vertices();
        for (v, hs) in m.incidence.iter().enumerate() {
            if removed[v] {
                for h in hs {
                    node_of_half.insert((h.edge, h.at_origin), nodes);
                    nodes += 1;
                }
            }
        }
        let end_node = |e: usize, at_origin: bool| {
            let v = if at_origin { m.edges[e].from } else { m.edges[e].to };
            if removed[v] {
                node_of_half[&(e, at_origin)]
            } else {
                v
            }
        };
        let mut uf = UnionFind::new(nodes);
        for e in 0..m.num_edges() {
            uf.union(end_node(e, true), end_node(e, false));
        }
        let alive: Vec<usize> = (0..nodes).filter(|&n| n >= m.num_vertices() || !removed[n]).collect();
        let mut roots: Vec<usize> = alive.iter().map(|&n| uf.find(n)).collect();
        roots.sort_unstable();
        roots.dedup();
        let components = roots.len() as i64;
        let direct = m.num_edges() as i64 - alive.len() as i64 + components;
        let correction: i64 = (0..m.num_vertices())
            .filter(|&v| removed[v])
            .map(|v| m.valence(v) as i64 - 1)
            .sum();
        let by_formula = self.genus() - correction - 1 + components;
        debug_assert_eq!(direct, by_formula, "glueing formula disagrees with cut graph");
        Ok(CutSummary { genus: by_formula, direct_genus: direct, components })
    }

    /// Exact distances from a set of sources to every vertex.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<Q>> {
        let n = self.vertices.len();
        let mut dist: Vec<Option<Q>> = vec![None; n];
        let mut done = vec![false; n];
        for &s in sources {
            dist[s] = Some(Q::zero());
        }
        loop {
            let next = (0..n)
                .filter(|&v| !done[v] && dist[v].is_some())
                .min_by(|&a, &b| dist[a].cmp(&dist[b]));
            let Some(u) = next else { break };
            done[u] = true;
            let du = dist[u].clone().unwrap();
            for h in &self.incidence[u] {
                let w = self.far_end(*h);
                let cand = &du + &self.edges[h.edge].length;
                if dist[w].as_ref().is_none_or(|d| &cand < d) {
                    dist[w] = Some(cand);
                }
            }
        }
        dist
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutSummary {
    pub genus: i64,
    pub direct_genus: i64,
    pub components: i64,
}

/// Vertex id for a cut at `offset` on edge `e`: `<edge>@<offset/length>`.
pub(crate) fn fraction_name(e: &Edge, offset: &Q, _: usize) -> String {
    format!("{}@{}", e.id, fmt_q(&(offset / &e.length)))
}

/// A closed subgraph: every edge comes with both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Subgraph {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
}

impl Subgraph {
    pub fn new(g: &MetricGraph, vertices: BTreeSet<usize>, edges: BTreeSet<usize>) -> Result<Subgraph> {
        for &e in &edges {
            let ed = g.edge(e);
            if !vertices.contains(&ed.from) || !vertices.contains(&ed.to) {
                return Err(Error::InvalidArgument(format!("edge `{}` included without its endpoints", ed.id)));
            }
        }
        Ok(Subgraph { vertices, edges })
    }

    pub fn whole(g: &MetricGraph) -> Subgraph {
        Subgraph { vertices: (0..g.num_vertices()).collect(), edges: (0..g.num_edges()).collect() }
    }

    /// The vertices together with every edge joining two of them.
    pub fn spanned(g: &MetricGraph, vertices: impl IntoIterator<Item = usize>) -> Subgraph {
        let vertices: BTreeSet<usize> = vertices.into_iter().collect();
        let edges = (0..g.num_edges())
            .filter(|&e| vertices.contains(&g.edge(e).from) && vertices.contains(&g.edge(e).to))
            .collect();
        Subgraph { vertices, edges }
    }

    /// Number of half-edges at `v` whose edge is outside the subgraph.
    pub fn out_degree(&self, g: &MetricGraph, v: usize) -> usize {
        if !self.vertices.contains(&v) {
            return 0;
        }
        g.half_edges(v).iter().filter(|h| !self.edges.contains(&h.edge)).count()
    }

    pub fn boundary(&self, g: &MetricGraph) -> Vec<usize> {
        self.vertices.iter().copied().filter(|&v| self.out_degree(g, v) > 0).collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for v in 0..n {
            let r = self.find(v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[v] = label[r];
        }
        (out, count)
    }
}

#[cfg(test)]
mod tests;
