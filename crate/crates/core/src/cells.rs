//! Combinatorial types, cell dimensions and genericity in complete linear systems.
//!
//! Everything is read on the loopless model of the host: self-loops are split
//! at their midpoints, which then count as vertices.

use crate::divisor::{Divisor, PlFunction, UnitModel};
use crate::error::{Error, Result};
use crate::graph::{HalfEdge, Loc, MetricGraph, Refinement, UnionFind};
use crate::rational::to_int;
use crate::reduction::burn;
use crate::tropical::enumerate_linear_system;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

/// The stratum of a divisor: chips on vertices, chips along each edge in the
/// edge's direction, and the slope of the witness function leaving the
/// edge's origin. Edges point from the lexicographically smaller endpoint id.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CombinatorialType {
    #[serde(rename = "mV")]
    pub m_v: BTreeMap<String, i64>,
    #[serde(rename = "mE")]
    pub m_e: BTreeMap<String, Vec<i64>>,
    pub s: BTreeMap<String, i64>,
}

/// Whether loopless edge `e` keeps its stored direction.
fn forward(l: &MetricGraph, e: usize) -> bool {
    let edge = l.edge(e);
    l.vertex(edge.from).id <= l.vertex(edge.to).id
}

/// D on the loopless model: chips per vertex and (offset, chips) per edge.
struct Placed {
    at_vertex: Vec<i64>,
    on_edge: Vec<BTreeMap<crate::Q, i64>>,
}

fn place(r: &Refinement, d: &Divisor) -> Result<Placed> {
    let l = &r.graph;
    let mut at_vertex = vec![0; l.num_vertices()];
    let mut on_edge = vec![BTreeMap::new(); l.num_edges()];
    for (p, m) in d.iter() {
        match r.down(&r.parent.locate(p)?) {
            Loc::Vertex(v) => at_vertex[v] += m,
            Loc::Edge(e, t) => *on_edge[e].entry(t).or_insert(0) += m,
        }
    }
    Ok(Placed { at_vertex, on_edge })
}

pub fn combinatorial_type(g: &MetricGraph, d: &Divisor, f: &PlFunction) -> Result<CombinatorialType> {
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    let r = g.loopless()?;
    let l = &r.graph;
    let placed = place(&r, d)?;
    let f = f.refine(&r);
    let m_v = (0..l.num_vertices()).map(|v| (l.vertex(v).id.clone(), placed.at_vertex[v])).collect();
    let mut m_e = BTreeMap::new();
    let mut s = BTreeMap::new();
    for e in 0..l.num_edges() {
        let fwd = forward(l, e);
        let mut seq: Vec<i64> = placed.on_edge[e].values().copied().collect();
        if !fwd {
            seq.reverse();
        }
        let id = l.edge(e).id.clone();
        let slope = f.outgoing_slope(l, HalfEdge { edge: e, at_origin: fwd });
        s.insert(id.clone(), to_int(&slope).ok_or_else(|| Error::NonIntegralSlope(id.clone()))?);
        m_e.insert(id, seq);
    }
    Ok(CombinatorialType { m_v, m_e, s })
}

/// Components of Γ \ supp D_E: the pieces holding model vertices, joined
/// through edges without chips, plus the open segments between consecutive
/// chips on an edge.
struct Cut {
    labels: Vec<usize>,
    vertex_components: usize,
    segments: usize,
}

fn cut(l: &MetricGraph, placed: &Placed) -> Cut {
    let mut uf = UnionFind::new(l.num_vertices());
    let mut segments = 0;
    for (e, edge) in l.edges().iter().enumerate() {
        let k = placed.on_edge[e].len();
        if k == 0 {
            uf.union(edge.from, edge.to);
        } else {
            segments += k - 1;
        }
    }
    let (labels, vertex_components) = uf.labels();
    Cut { labels, vertex_components, segments }
}

/// #components of Γ \ supp D_E minus one.
pub fn cell_dimension(g: &MetricGraph, d: &Divisor) -> Result<i64> {
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    let r = g.loopless()?;
    let c = cut(&r.graph, &place(&r, d)?);
    Ok((c.vertex_components + c.segments) as i64 - 1)
}

/// deg D − g(Γ) + Σ_C (g(C) − deg D|_C) over the components C of Γ \ supp D_E;
/// only meaningful for generic D.
pub fn dim_via_genus_formula(g: &MetricGraph, d: &Divisor) -> Result<i64> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    if !is_generic(g, d)? {
        return Err(Error::NotGeneric);
    }
    let r = g.loopless()?;
    let l = &r.graph;
    let placed = place(&r, d)?;
    let c = cut(l, &placed);
    let mut verts = vec![0i64; c.vertex_components];
    let mut edges = vec![0i64; c.vertex_components];
    let mut chips = vec![0i64; c.vertex_components];
    for v in 0..l.num_vertices() {
        verts[c.labels[v]] += 1;
        chips[c.labels[v]] += placed.at_vertex[v];
    }
    for (e, edge) in l.edges().iter().enumerate() {
        if placed.on_edge[e].is_empty() {
            edges[c.labels[edge.from]] += 1;
        }
    }
    // segments between chips are open intervals: genus 0, no chips
    let sum: i64 = (0..c.vertex_components).map(|i| (edges[i] - verts[i] + 1) - chips[i]).sum();
    Ok(d.degree() - g.genus() + sum)
}

/// D is generic iff D(x) < val(x) everywhere and no closed subgraph that can
/// fire has a vertex on its boundary.
///
/// Such a subgraph has its boundary in supp D, so it is a union of closed
/// edges of a unit model through supp D; on the doubled model it is a vertex
/// set. If x ∈ V lies on its boundary, next to y outside it, then Dhar's
/// unburned set from y contains it, and so contains x.
pub fn is_generic(g: &MetricGraph, d: &Divisor) -> Result<bool> {
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let r = g.loopless()?;
    let l = &r.graph;
    let placed = place(&r, d)?;
    if (0..l.num_vertices()).any(|v| placed.at_vertex[v] >= l.valence(v) as i64)
        || placed.on_edge.iter().flat_map(|m| m.values()).any(|&m| m >= 2)
    {
        return Ok(false);
    }
    let model = UnitModel::new(g, &d.support(), 1)?;
    let in_v: Vec<bool> = (0..model.len())
        .map(|v| match model.refinement.up(&Loc::Vertex(v)) {
            Loc::Vertex(_) => true,
            Loc::Edge(e, t) => g.edge(e).is_loop() && t * crate::rational::q(2) == g.edge(e).length,
        })
        .collect();
    let h = model.chips.doubled();
    let mut c = model.config(d)?;
    c.resize(h.len(), 0);
    let saturated = (model.len()..h.len()).into_par_iter().any(|y| {
        let ends: Vec<usize> = h.neighbors(y).iter().map(|&(x, _)| x).filter(|&x| in_v[x]).collect();
        if ends.is_empty() {
            return false;
        }
        let m = burn(&h, &c, y);
        ends.iter().any(|&x| m[x])
    });
    Ok(!saturated)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReport {
    pub combinatorial_type: CombinatorialType,
    pub dimension: i64,
    pub representative: Divisor,
    pub is_maximal: bool,
}

impl CellReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.combinatorial_type,
            "dimension": self.dimension,
            "representative": self.representative.to_json(),
            "isMaximal": self.is_maximal,
        })
    }
}

/// Cells of |D| witnessed by grid divisors at one subdivision.
#[derive(Debug, Clone)]
pub struct CellSurvey {
    pub subdivision: u32,
    pub cells: Vec<CellReport>,
}

impl CellSurvey {
    pub fn maximal(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| c.is_maximal)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "survey": format!("grid survey at subdivision {}", self.subdivision),
            "subdivision": self.subdivision,
            "cells": self.cells.iter().map(CellReport::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Groups the grid members of |D| by combinatorial type, one report per type,
/// with the first member (in enumeration order) as representative.
pub fn maximal_cells(g: &MetricGraph, d: &Divisor, k: u32, cap: usize) -> Result<CellSurvey> {
    let sys = enumerate_linear_system(g, d, k, cap)?;
    let typed: Vec<(CombinatorialType, Divisor)> = (0..sys.len())
        .into_par_iter()
        .map(|i| {
            let div = sys.divisor(i);
            Ok((combinatorial_type(g, &div, &sys.function(i))?, div))
        })
        .collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    let reps: Vec<(CombinatorialType, Divisor)> = typed.into_iter().filter(|(t, _)| seen.insert(t.clone())).collect();
    let cells = reps
        .into_par_iter()
        .map(|(t, rep)| {
            Ok(CellReport {
                combinatorial_type: t,
                dimension: cell_dimension(g, &rep)?,
                is_maximal: is_generic(g, &rep)?,
                representative: rep,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellSurvey { subdivision: k, cells })
}
