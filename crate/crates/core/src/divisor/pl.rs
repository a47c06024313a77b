use super::{Divisor, PointRepr};
use crate::rational::serde_q;
use serde::{Deserialize, Serialize};
use crate::error::{Error, Result};
use crate::graph::{HalfEdge, Loc, MetricGraph, Point, Refinement, Subgraph};
use crate::rational::{fmt_q, q, to_int, Q};
use num_traits::Signed;
use std::collections::BTreeSet;

/// A continuous piecewise-linear function on a host graph: a value at every
/// vertex plus, per edge, the interior points where the slope changes.
/// Stored canonically (no breakpoint with equal slopes on both sides), so
/// structural equality is equality of functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlFunction {
    vertex_values: Vec<Q>,
    edge_breaks: Vec<Vec<(Q, Q)>>,
}

impl PlFunction {
    pub fn new(g: &MetricGraph, vertex_values: Vec<Q>, mut edge_breaks: Vec<Vec<(Q, Q)>>) -> Result<PlFunction> {
        if vertex_values.len() != g.num_vertices() || edge_breaks.len() != g.num_edges() {
            return Err(Error::InvalidArgument("function does not match the graph".into()));
        }
        for (e, bs) in edge_breaks.iter_mut().enumerate() {
            bs.sort_by(|a, b| a.0.cmp(&b.0));
            let edge = g.edge(e);
            for w in bs.windows(2) {
                if w[0].0 == w[1].0 {
                    return Err(Error::InvalidArgument(format!("repeated breakpoint on edge `{}`", edge.id)));
                }
            }
            if bs.iter().any(|(t, _)| !t.is_positive() || t >= &edge.length) {
                return Err(Error::InvalidOffset { edge: edge.id.clone(), offset: fmt_q(&bs[0].0) });
            }
        }
        let mut f = PlFunction { vertex_values, edge_breaks };
        f.canonicalize(g);
        Ok(f)
    }

    pub fn constant(g: &MetricGraph, c: Q) -> PlFunction {
        PlFunction { vertex_values: vec![c; g.num_vertices()], edge_breaks: vec![Vec::new(); g.num_edges()] }
    }

    /// From values at points; every vertex must be given.
    pub fn from_points(g: &MetricGraph, pts: &[(Point, Q)]) -> Result<PlFunction> {
        let mut vals: Vec<Option<Q>> = vec![None; g.num_vertices()];
        let mut breaks = vec![Vec::new(); g.num_edges()];
        for (p, x) in pts {
            match g.locate(p)? {
                Loc::Vertex(v) => vals[v] = Some(x.clone()),
                Loc::Edge(e, t) => breaks[e].push((t, x.clone())),
            }
        }
        let vals = vals
            .into_iter()
            .enumerate()
            .map(|(v, x)| x.ok_or_else(|| Error::MissingValue(g.vertex(v).id.clone())))
            .collect::<Result<Vec<_>>>()?;
        PlFunction::new(g, vals, breaks)
    }

    /// Values at every vertex and every breakpoint.
    pub fn points(&self, g: &MetricGraph) -> Vec<(Point, Q)> {
        let mut out: Vec<(Point, Q)> =
            self.vertex_values.iter().enumerate().map(|(v, x)| (g.point(&Loc::Vertex(v)), x.clone())).collect();
        for (e, bs) in self.edge_breaks.iter().enumerate() {
            out.extend(bs.iter().map(|(t, x)| (g.point(&Loc::Edge(e, t.clone())), x.clone())));
        }
        out
    }

    pub fn vertex_value(&self, v: usize) -> &Q {
        &self.vertex_values[v]
    }

    pub fn edge_breaks(&self, e: usize) -> &[(Q, Q)] {
        &self.edge_breaks[e]
    }

    /// Interior breakpoints as host points.
    pub fn breakpoints(&self, g: &MetricGraph) -> Vec<Point> {
        self.edge_breaks
            .iter()
            .enumerate()
            .flat_map(|(e, bs)| bs.iter().map(move |(t, _)| g.point(&Loc::Edge(e, t.clone()))))
            .collect()
    }

    /// (offset, value) along an edge, endpoints included.
    pub fn nodes(&self, g: &MetricGraph, e: usize) -> Vec<(Q, Q)> {
        let edge = g.edge(e);
        let mut out = Vec::with_capacity(self.edge_breaks[e].len() + 2);
        out.push((q(0), self.vertex_values[edge.from].clone()));
        out.extend(self.edge_breaks[e].iter().cloned());
        out.push((edge.length.clone(), self.vertex_values[edge.to].clone()));
        out
    }

    pub fn eval(&self, g: &MetricGraph, loc: &Loc) -> Q {
        match loc {
            Loc::Vertex(v) => self.vertex_values[*v].clone(),
            Loc::Edge(e, t) => eval_nodes(&self.nodes(g, *e), t),
        }
    }

    fn canonicalize(&mut self, g: &MetricGraph) {
        for e in 0..g.num_edges() {
            let nodes = self.nodes(g, e);
            let mut keep = Vec::new();
            for i in 1..nodes.len() - 1 {
                let (a, b, c) = (&nodes[i - 1], &nodes[i], &nodes[i + 1]);
                if slope(a, b) != slope(b, c) {
                    keep.push(b.clone());
                }
            }
            self.edge_breaks[e] = keep;
        }
    }

    pub fn shift(&self, c: &Q) -> PlFunction {
        PlFunction {
            vertex_values: self.vertex_values.iter().map(|x| x + c).collect(),
            edge_breaks: self.edge_breaks.iter().map(|bs| bs.iter().map(|(t, x)| (t.clone(), x + c)).collect()).collect(),
        }
    }

    pub fn neg(&self) -> PlFunction {
        PlFunction {
            vertex_values: self.vertex_values.iter().map(|x| -x).collect(),
            edge_breaks: self.edge_breaks.iter().map(|bs| bs.iter().map(|(t, x)| (t.clone(), -x)).collect()).collect(),
        }
    }

    /// Pointwise combination on the common refinement; with `crossings`
    /// the points where the two functions cross are added first.
    fn combine(&self, g: &MetricGraph, other: &PlFunction, crossings: bool, op: impl Fn(&Q, &Q) -> Q) -> PlFunction {
        let vertex_values = self.vertex_values.iter().zip(&other.vertex_values).map(|(a, b)| op(a, b)).collect();
        let edge_breaks = (0..g.num_edges())
            .map(|e| {
                let (na, nb) = (self.nodes(g, e), other.nodes(g, e));
                let ts = common_offsets(g, e, &na, &nb, crossings);
                ts[1..ts.len() - 1]
                    .iter()
                    .map(|t| (t.clone(), op(&eval_nodes(&na, t), &eval_nodes(&nb, t))))
                    .collect()
            })
            .collect();
        let mut f = PlFunction { vertex_values, edge_breaks };
        f.canonicalize(g);
        f
    }

    /// Tropical sum: pointwise maximum.
    pub fn max(&self, g: &MetricGraph, other: &PlFunction) -> PlFunction {
        self.combine(g, other, true, |a, b| a.max(b).clone())
    }

    pub fn min(&self, g: &MetricGraph, other: &PlFunction) -> PlFunction {
        self.combine(g, other, true, |a, b| a.min(b).clone())
    }

    pub fn add(&self, g: &MetricGraph, other: &PlFunction) -> PlFunction {
        self.combine(g, other, false, |a, b| a + b)
    }

    pub fn sub(&self, g: &MetricGraph, other: &PlFunction) -> PlFunction {
        self.combine(g, other, false, |a, b| a - b)
    }

    pub fn max_value(&self) -> Q {
        self.all_values().max().cloned().expect("graph has a vertex")
    }

    pub fn min_value(&self) -> Q {
        self.all_values().min().cloned().expect("graph has a vertex")
    }

    fn all_values(&self) -> impl Iterator<Item = &Q> {
        self.vertex_values.iter().chain(self.edge_breaks.iter().flatten().map(|(_, x)| x))
    }

    /// ‖f‖∞ = max f − min f.
    pub fn norm_inf(&self) -> Q {
        self.max_value() - self.min_value()
    }

    /// ⟨f, h⟩ = min (f − h).
    pub fn inner(&self, g: &MetricGraph, h: &PlFunction) -> Q {
        self.sub(g, h).min_value()
    }

    /// ⟨f, h⟩ ⊙ h, the largest shift of h below f.
    pub fn project(&self, g: &MetricGraph, h: &PlFunction) -> PlFunction {
        h.shift(&self.inner(g, h))
    }

    /// Pointwise f ≤ h.
    pub fn le(&self, g: &MetricGraph, h: &PlFunction) -> bool {
        !h.sub(g, self).min_value().is_negative()
    }

    /// Outgoing slope along a half-edge.
    pub fn outgoing_slope(&self, g: &MetricGraph, h: HalfEdge) -> Q {
        let nodes = self.nodes(g, h.edge);
        let n = nodes.len();
        if h.at_origin {
            slope(&nodes[0], &nodes[1])
        } else {
            -slope(&nodes[n - 2], &nodes[n - 1])
        }
    }

    fn check_integral(&self, g: &MetricGraph) -> Result<()> {
        for e in 0..g.num_edges() {
            let nodes = self.nodes(g, e);
            if nodes.windows(2).any(|w| to_int(&slope(&w[0], &w[1])).is_none()) {
                return Err(Error::NonIntegralSlope(g.edge(e).id.clone()));
            }
        }
        Ok(())
    }

    /// div(f): at each point, the sum of outgoing slopes.
    pub fn div(&self, g: &MetricGraph) -> Result<Divisor> {
        self.check_integral(g)?;
        let mut d = Divisor::zero();
        for v in 0..g.num_vertices() {
            let s: Q = g.half_edges(v).iter().map(|h| self.outgoing_slope(g, *h)).sum();
            d.add_at(g.point(&Loc::Vertex(v)), to_int(&s).unwrap());
        }
        for e in 0..g.num_edges() {
            let nodes = self.nodes(g, e);
            for i in 1..nodes.len() - 1 {
                let ord = slope(&nodes[i], &nodes[i + 1]) - slope(&nodes[i - 1], &nodes[i]);
                d.add_at(g.point(&Loc::Edge(e, nodes[i].0.clone())), to_int(&ord).unwrap());
            }
        }
        Ok(d)
    }
}

fn slope(a: &(Q, Q), b: &(Q, Q)) -> Q {
    (&b.1 - &a.1) / (&b.0 - &a.0)
}

fn eval_nodes(nodes: &[(Q, Q)], t: &Q) -> Q {
    let i = nodes.partition_point(|(s, _)| s <= t);
    if i == 0 {
        return nodes[0].1.clone();
    }
    if i == nodes.len() || nodes[i - 1].0 == *t {
        return nodes[i - 1].1.clone();
    }
    let (a, b) = (&nodes[i - 1], &nodes[i]);
    &a.1 + slope(a, b) * (t - &a.0)
}

/// Sorted offsets (endpoints included) of both node lists, plus crossings.
fn common_offsets(g: &MetricGraph, e: usize, na: &[(Q, Q)], nb: &[(Q, Q)], crossings: bool) -> Vec<Q> {
    let mut ts: BTreeSet<Q> = na.iter().chain(nb).map(|(t, _)| t.clone()).collect();
    ts.insert(q(0));
    ts.insert(g.edge(e).length.clone());
    if crossings {
        let base: Vec<Q> = ts.iter().cloned().collect();
        for w in base.windows(2) {
            let da = eval_nodes(na, &w[0]) - eval_nodes(nb, &w[0]);
            let db = eval_nodes(na, &w[1]) - eval_nodes(nb, &w[1]);
            if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
                let t = &w[0] + &da * (&w[1] - &w[0]) / (&da - &db);
                ts.insert(t);
            }
        }
    }
    ts.into_iter().collect()
}

/// Every pair of consecutive points of the common refinement of `fs`
/// (including all pairwise crossings), per edge.
pub(crate) fn refinement_offsets(g: &MetricGraph, e: usize, fs: &[&PlFunction]) -> Vec<Q> {
    let nodes: Vec<Vec<(Q, Q)>> = fs.iter().map(|f| f.nodes(g, e)).collect();
    let mut ts: BTreeSet<Q> = nodes.iter().flatten().map(|(t, _)| t.clone()).collect();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            ts.extend(common_offsets(g, e, &nodes[i], &nodes[j], true));
        }
    }
    ts.into_iter().collect()
}

#[derive(Serialize, Deserialize)]
struct ValueEntry {
    at: PointRepr,
    #[serde(with = "serde_q")]
    value: Q,
}

impl PlFunction {
    /// JSON list of `{"at": point, "value": "p/q"}` over vertices and breakpoints.
    pub fn to_json(&self, g: &MetricGraph) -> serde_json::Value {
        let entries: Vec<ValueEntry> =
            self.points(g).iter().map(|(p, x)| ValueEntry { at: PointRepr::from(p), value: x.clone() }).collect();
        serde_json::to_value(entries).expect("function serializes")
    }

    pub fn from_json(g: &MetricGraph, v: &serde_json::Value) -> Result<PlFunction> {
        let entries: Vec<ValueEntry> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let pts = entries.into_iter().map(|e| Ok((e.at.to_point()?, e.value))).collect::<Result<Vec<_>>>()?;
        PlFunction::from_points(g, &pts)
    }

    /// The same function on a finer model of its host.
    pub fn refine(&self, r: &Refinement) -> PlFunction {
        let (host, fine) = (&r.parent, &r.graph);
        let vertex_values = (0..fine.num_vertices()).map(|v| self.eval(host, &r.up(&Loc::Vertex(v)))).collect();
        let edge_breaks = (0..fine.num_edges())
            .map(|p| {
                let (e, start) = r.piece_origin(p);
                let end = start + &fine.edge(p).length;
                self.edge_breaks[e]
                    .iter()
                    .filter(|(t, _)| t > start && *t < end)
                    .map(|(t, x)| (t - start, x.clone()))
                    .collect()
            })
            .collect();
        PlFunction { vertex_values, edge_breaks }
    }

    pub(crate) fn eval_edge(&self, g: &MetricGraph, e: usize, t: &Q) -> Q {
        eval_nodes(&self.nodes(g, e), t)
    }
}

/// CF(Z, ε)(x) = −min(dist(x, Z), ε).
///
/// Requires every vertex outside Z to be at distance at least ε from Z, so
/// that Z_ε \ Z is a union of open intervals along edges leaving Z.
pub fn chip_firing_pl(g: &MetricGraph, z: &Subgraph, eps: &Q) -> Result<PlFunction> {
    if !eps.is_positive() {
        return Err(Error::InvalidFiringDistance(fmt_q(eps)));
    }
    if z.vertices.is_empty() {
        return Err(Error::InvalidArgument("empty subgraph".into()));
    }
    let sources: Vec<usize> = z.vertices.iter().copied().collect();
    let dist = g.distances_from(&sources);
    for v in 0..g.num_vertices() {
        if !z.vertices.contains(&v) && dist[v].as_ref().is_some_and(|d| d < eps) {
            return Err(Error::InvalidFiringDistance(fmt_q(eps)));
        }
    }
    let far = |d: &Option<Q>| d.clone().map_or(eps.clone(), |d| d.min(eps.clone()));
    let vertex_values: Vec<Q> = dist.iter().map(|d| -far(d)).collect();
    let mut breaks = Vec::with_capacity(g.num_edges());
    for (e, edge) in g.edges().iter().enumerate() {
        let mut bs = Vec::new();
        if !z.edges.contains(&e) {
            let l = &edge.length;
            let (a, b) = (z.vertices.contains(&edge.from), z.vertices.contains(&edge.to));
            match (a, b) {
                (true, true) => {
                    if eps * q(2) < *l {
                        bs.push((eps.clone(), -eps.clone()));
                        bs.push((l - eps, -eps.clone()));
                    } else {
                        bs.push((l / q(2), -(l / q(2))));
                    }
                }
                (true, false) => {
                    if eps < l {
                        bs.push((eps.clone(), -eps.clone()));
                    }
                }
                (false, true) => {
                    if eps < l {
                        bs.push((l - eps, -eps.clone()));
                    }
                }
                (false, false) => {}
            }
        }
        breaks.push(bs);
    }
    PlFunction::new(g, vertex_values, breaks)
}

#[cfg(test)]
pub(crate) fn tent(g: &MetricGraph, e: usize) -> PlFunction {
    let mut breaks = vec![Vec::new(); g.num_edges()];
    breaks[e].push((&g.edge(e).length / q(2), &g.edge(e).length / q(2)));
    PlFunction::new(g, vec![q(0); g.num_vertices()], breaks).unwrap()
}
