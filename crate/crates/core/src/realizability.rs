//! Realizability of effective canonical divisors.
//!
//! D = K + div(f) is realizable iff every inconvenient vertex and every
//! horizontal edge lies on a simple cycle on which f is at least its level.
//! A simple cycle through x inside a subgraph exists iff x belongs to a
//! non-bridge block of that subgraph.

use crate::divisor::{canonical_divisor, chip_firing_pl, linear_equivalence_witness, Divisor, PlFunction, UnitModel};
use crate::error::{Error, Result};
use crate::graph::{blocks_of, disjoint_cycles, shortest_path_between, HalfEdge, MetricGraph, Subgraph};
use crate::rational::{fmt_q, frac, to_int, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// A function together with a model of its host on which it is linear on edges.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    pub graph: MetricGraph,
    pub f: PlFunction,
}

impl LevelGraph {
    /// Refines the host at the bends of f and shifts f to minimum 0.
    pub fn new(g: &MetricGraph, f: &PlFunction) -> Result<LevelGraph> {
        let r = g.model_with_breakpoints(&f.breakpoints(g))?;
        let f = f.refine(&r);
        let f = f.shift(&-f.min_value());
        Ok(LevelGraph { graph: r.graph, f })
    }

    fn slope(&self, h: HalfEdge) -> Result<i64> {
        to_int(&self.f.outgoing_slope(&self.graph, h)).ok_or_else(|| Error::NonIntegralSlope(self.graph.edge(h.edge).id.clone()))
    }

    pub fn level(&self, v: usize) -> &Q {
        self.f.vertex_value(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSlopes {
    pub vertex: String,
    pub weight: u32,
    #[serde(with = "crate::rational::serde_q")]
    pub level: Q,
    /// (edge id, outgoing slope) per half-edge at the vertex.
    pub slopes: Vec<(String, i64)>,
}

impl VertexSlopes {
    /// The enhanced orders k = −s − 1, in decreasing order.
    pub fn orders(&self) -> Vec<i64> {
        let mut k: Vec<i64> = self.slopes.iter().map(|(_, s)| -s - 1).collect();
        k.sort_unstable_by(|a, b| b.cmp(a));
        k
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeProfile {
    #[serde(skip)]
    pub graph: MetricGraph,
    pub vertices: Vec<VertexSlopes>,
}

/// Outgoing slopes at every vertex of the model refined at the bends of f.
pub fn slope_profile(g: &MetricGraph, f: &PlFunction) -> Result<SlopeProfile> {
    profile_of(&LevelGraph::new(g, f)?)
}

fn profile_of(lg: &LevelGraph) -> Result<SlopeProfile> {
    let g = &lg.graph;
    let vertices = (0..g.num_vertices())
        .map(|v| {
            let slopes = g
                .half_edges(v)
                .iter()
                .map(|&h| Ok((g.edge(h.edge).id.clone(), lg.slope(h)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(VertexSlopes { vertex: g.vertex(v).id.clone(), weight: g.vertex(v).weight, level: lg.level(v).clone(), slopes })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SlopeProfile { graph: g.clone(), vertices })
}

/// h(v) = 0, no zero slope, and some −s_i exceeding the sum of the positive slopes.
pub fn is_inconvenient(profile: &SlopeProfile, v: usize) -> bool {
    let vs = &profile.vertices[v];
    if vs.weight > 0 || vs.slopes.iter().any(|&(_, s)| s == 0) {
        return false;
    }
    let up: i64 = vs.slopes.iter().map(|&(_, s)| s).filter(|&s| s > 0).sum();
    vs.slopes.iter().any(|&(_, s)| s < 0 && -s > up)
}

fn require_vertex_bends(g: &MetricGraph, f: &PlFunction) -> Result<()> {
    match (0..g.num_edges()).find(|&e| !f.edge_breaks(e).is_empty()) {
        Some(e) => Err(Error::BendOffModel(g.edge(e).id.clone())),
        None => Ok(()),
    }
}

/// Edges on which f is constant; f must be linear on edges.
pub fn horizontal_edges(g: &MetricGraph, f: &PlFunction) -> Result<BTreeSet<usize>> {
    require_vertex_bends(g, f)?;
    Ok(horizontal(g, f))
}

fn horizontal(g: &MetricGraph, f: &PlFunction) -> BTreeSet<usize> {
    (0..g.num_edges()).filter(|&e| f.vertex_value(g.edge(e).from) == f.vertex_value(g.edge(e).to)).collect()
}

/// The closed subgraph f⁻¹([t, ∞)); f must be linear on edges.
pub fn superlevel_subgraph(g: &MetricGraph, f: &PlFunction, t: &Q) -> Result<Subgraph> {
    require_vertex_bends(g, f)?;
    Ok(superlevel(g, f, t))
}

fn superlevel(g: &MetricGraph, f: &PlFunction, t: &Q) -> Subgraph {
    let vertices: BTreeSet<usize> = (0..g.num_vertices()).filter(|&v| f.vertex_value(v) >= t).collect();
    let edges =
        (0..g.num_edges()).filter(|&e| vertices.contains(&g.edge(e).from) && vertices.contains(&g.edge(e).to)).collect();
    Subgraph { vertices, edges }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationKind {
    InconvenientVertex,
    HorizontalEdge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Vertex or edge id in the model refined at the bends of f.
    pub location: String,
    /// Height above the minimum of f.
    #[serde(with = "crate::rational::serde_q")]
    pub level: Q,
    pub reason: String,
}

/// A satisfied condition and the block of the superlevel subgraph that holds a cycle through it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleWitness {
    pub kind: ViolationKind,
    pub location: String,
    pub block: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityReport {
    pub realizable: bool,
    pub violations: Vec<Violation>,
    pub witnesses: Vec<CycleWitness>,
}

/// f with D = K + div(f), as a function on the host.
pub fn canonical_witness(g: &MetricGraph, d: &Divisor) -> Result<PlFunction> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    d.validate(g)?;
    let k = canonical_divisor(g);
    if !d.is_effective() || d.degree() != k.degree() {
        return Err(Error::NotInCanonicalSystem);
    }
    let model = UnitModel::new(g, &d.support(), 1)?;
    let w = linear_equivalence_witness(&model.chips, &model.config(&k)?, &model.config(d)?)?
        .ok_or(Error::NotInCanonicalSystem)?;
    Ok(model.levels_to_pl(&w))
}

pub fn is_realizable_canonical(g: &MetricGraph, d: &Divisor) -> Result<RealizabilityReport> {
    let f = canonical_witness(g, d)?;
    check(&LevelGraph::new(g, &f)?)
}

/// The criterion for D = K + div(f), given f.
pub fn check_function(g: &MetricGraph, f: &PlFunction) -> Result<RealizabilityReport> {
    check(&LevelGraph::new(g, f)?)
}

fn check(lg: &LevelGraph) -> Result<RealizabilityReport> {
    let g = &lg.graph;
    let profile = profile_of(lg)?;
    let mut violations = Vec::new();
    let mut witnesses = Vec::new();
    let block_ids = |b: &[usize]| b.iter().map(|&e| g.edge(e).id.clone()).collect::<Vec<_>>();
    for v in 0..g.num_vertices() {
        if !is_inconvenient(&profile, v) {
            continue;
        }
        let level = lg.level(v).clone();
        let above = superlevel(g, &lg.f, &level);
        let blocks = blocks_of(g, &above);
        let id = g.vertex(v).id.clone();
        match blocks.cycle_block_at(g, v) {
            Some(b) => witnesses.push(CycleWitness { kind: ViolationKind::InconvenientVertex, location: id, block: block_ids(b) }),
            None => violations.push(Violation {
                kind: ViolationKind::InconvenientVertex,
                location: id,
                reason: format!("no simple cycle at level ≥ {} through the vertex", fmt_q(&level)),
                level,
            }),
        }
    }
    for e in horizontal(g, &lg.f) {
        let level = lg.level(g.edge(e).from).clone();
        let above = superlevel(g, &lg.f, &level);
        let blocks = blocks_of(g, &above);
        let id = g.edge(e).id.clone();
        if blocks.edge_on_cycle(e) {
            let b = blocks.block_of(e).expect("edge lies in a block");
            witnesses.push(CycleWitness { kind: ViolationKind::HorizontalEdge, location: id, block: block_ids(b) });
        } else {
            violations.push(Violation {
                kind: ViolationKind::HorizontalEdge,
                location: id,
                reason: format!("bridge of the subgraph at level ≥ {}", fmt_q(&level)),
                level,
            });
        }
    }
    Ok(RealizabilityReport { realizable: violations.is_empty(), violations, witnesses })
}

/// Whether the horizontal edges of f contain two vertex-disjoint cycles.
pub fn has_disjoint_horizontal_cycles(g: &MetricGraph, f: &PlFunction) -> Result<bool> {
    let lg = LevelGraph::new(g, f)?;
    let edges = horizontal(&lg.graph, &lg.f);
    let vertices = edges.iter().flat_map(|&e| [lg.graph.edge(e).from, lg.graph.edge(e).to]).collect();
    Ok(disjoint_cycles(&lg.graph, &Subgraph { vertices, edges }).is_some())
}

/// Realizability of K + div(f1 ⊕ f2) for realizable D1 = K + div(f1), D2 = K + div(f2).
pub fn convexity_probe(g: &MetricGraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    let f1 = canonical_witness(g, d1)?;
    let f2 = canonical_witness(g, d2)?;
    for f in [&f1, &f2] {
        if !check_function(g, f)?.realizable {
            return Err(Error::InvalidArgument("convexity probe needs realizable inputs".into()));
        }
    }
    Ok(check_function(g, &f1.max(g, &f2))?.realizable)
}

/// Fires two disjoint cycles and a shortest path between them by a third of
/// the shortest edge length. The path's edges become horizontal bridges of
/// every superlevel set containing them, so the result is not realizable.
pub fn disjoint_cycle_construction(g: &MetricGraph) -> Result<Option<Divisor>> {
    let Some((z1, z2)) = disjoint_cycles(g, &Subgraph::whole(g)) else { return Ok(None) };
    let (path_vertices, path_edges) =
        shortest_path_between(g, &z1.vertices, &z2.vertices).ok_or(Error::DisconnectedInput)?;
    let vertices: BTreeSet<usize> = z1.vertices.iter().chain(&z2.vertices).chain(&path_vertices).copied().collect();
    let edges: BTreeSet<usize> = z1.edges.iter().chain(&z2.edges).chain(&path_edges).copied().collect();
    let z = Subgraph::new(g, vertices, edges)?;
    let eps = g.edges().iter().map(|e| e.length.clone()).min().expect("cycles have edges") * frac(1, 3);
    let f = chip_firing_pl(g, &z, &eps)?;
    Ok(Some(canonical_divisor(g).plus(&f.div(g)?)))
}

#[cfg(test)]
mod tests;
