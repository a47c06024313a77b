use super::chip::{ChipGraph, Config, LevelMap};
use super::pl::PlFunction;
use super::Divisor;
use crate::error::{Error, Result};
use crate::graph::{fraction_name, Loc, MetricGraph, Point, Refinement};
use crate::rational::{gcd_q, q, to_int, Q};
use num_traits::One;
use std::collections::BTreeSet;

/// A unit model of a host graph: every host edge cut into pieces of one common
/// length, with given points and loop midpoints among the vertices.
#[derive(Debug, Clone)]
pub struct UnitModel {
    pub refinement: Refinement,
    pub chips: ChipGraph,
    pub unit: Q,
    pub subdivision: u32,
}

impl UnitModel {
    /// The coarsest unit model containing `points`, further subdivided `k` times.
    pub fn new(host: &MetricGraph, points: &[Point], k: u32) -> Result<UnitModel> {
        if k == 0 {
            return Err(Error::InvalidArgument("subdivision must be at least 1".into()));
        }
        let mut cuts: Vec<BTreeSet<Q>> = host
            .edges()
            .iter()
            .map(|e| if e.is_loop() { BTreeSet::from([&e.length / q(2)]) } else { BTreeSet::new() })
            .collect();
        for p in points {
            if let Loc::Edge(e, t) = host.locate(p)? {
                cuts[e].insert(t);
            }
        }
        let mut pieces = Vec::new();
        for (e, cs) in host.edges().iter().zip(&cuts) {
            let mut prev = q(0);
            for t in cs.iter().chain(std::iter::once(&e.length)) {
                pieces.push(t - &prev);
                prev = t.clone();
            }
        }
        let unit0 = gcd_q(&pieces).unwrap_or_else(Q::one);
        Self::with_unit(host, unit0 / q(k as i64), k)
    }

    /// The unit model with a prescribed unit, which must divide every edge length.
    pub fn with_unit(host: &MetricGraph, unit: Q, k: u32) -> Result<UnitModel> {
        let mut cuts = Vec::with_capacity(host.num_edges());
        for e in host.edges() {
            let steps = to_int(&(&e.length / &unit)).ok_or(Error::NonUniformModel)?;
            cuts.push((1..steps).map(|j| &unit * q(j)).collect());
        }
        let refinement = Refinement::new(host, cuts, fraction_name)?;
        let chips = ChipGraph::from_model(&refinement.graph)?;
        Ok(UnitModel { refinement, chips, unit, subdivision: k })
    }

    pub fn host(&self) -> &MetricGraph {
        &self.refinement.parent
    }

    pub fn graph(&self) -> &MetricGraph {
        &self.refinement.graph
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    /// Model vertex at a host point.
    pub fn vertex_of(&self, p: &Point) -> Result<usize> {
        match self.refinement.down(&self.host().locate(p)?) {
            Loc::Vertex(v) => Ok(v),
            Loc::Edge(..) => Err(Error::PointNotOnGrid(p.to_string())),
        }
    }

    /// Host point of a model vertex.
    pub fn point_of(&self, v: usize) -> Point {
        self.host().point(&self.refinement.up(&Loc::Vertex(v)))
    }

    /// True for model vertices that are vertices of the host.
    pub fn is_host_vertex(&self, v: usize) -> bool {
        matches!(self.refinement.up(&Loc::Vertex(v)), Loc::Vertex(_))
    }

    pub fn config(&self, d: &Divisor) -> Result<Config> {
        let mut c = vec![0; self.len()];
        for (p, m) in d.iter() {
            c[self.vertex_of(p)?] += m;
        }
        Ok(c)
    }

    pub fn divisor(&self, c: &[i64]) -> Divisor {
        Divisor::from_entries(c.iter().enumerate().filter(|(_, &m)| m != 0).map(|(v, &m)| (self.point_of(v), m)))
    }

    /// The PL function on the host taking value unit·f(v) at each model vertex.
    pub fn levels_to_pl(&self, f: &[i64]) -> PlFunction {
        let host = self.host();
        let val = |v: usize| &self.unit * q(f[v]);
        let vertex_values = (0..host.num_vertices()).map(|v| val(self.refinement.vertex(v))).collect();
        let breaks = (0..host.num_edges())
            .map(|e| self.refinement.cut_points(e).map(|(t, v)| (t.clone(), val(v))).collect())
            .collect();
        PlFunction::new(host, vertex_values, breaks).expect("grid function is well formed")
    }

    /// Level map of a PL function whose bends lie on the grid, shifted to minimum 0.
    pub fn pl_to_levels(&self, f: &PlFunction) -> Result<LevelMap> {
        let host = self.host();
        for (e, edge) in host.edges().iter().enumerate() {
            let grid: BTreeSet<&Q> = self.refinement.cut_points(e).map(|(t, _)| t).collect();
            if f.edge_breaks(e).iter().any(|(t, _)| !grid.contains(t)) {
                return Err(Error::BendOffModel(edge.id.clone()));
            }
        }
        let values: Vec<Q> = (0..self.len())
            .map(|v| f.eval(host, &self.refinement.up(&Loc::Vertex(v))))
            .collect();
        let min = values.iter().min().cloned().unwrap_or_else(|| q(0));
        values
            .iter()
            .map(|x| {
                to_int(&((x - &min) / &self.unit)).ok_or_else(|| Error::NonIntegralSlope(String::from("grid")))
            })
            .collect()
    }
}
