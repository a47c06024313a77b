//! Divisors on metric graphs and the discrete/PL machinery around div(f).

mod chip;
mod lattice;
mod model;
mod pl;

pub use chip::{ChipGraph, Config, LevelMap};
pub use lattice::{is_principal, linear_equivalence_witness, LatticeSolver};
pub use model::UnitModel;
pub use pl::{chip_firing_pl, PlFunction};
pub(crate) use pl::refinement_offsets;
#[cfg(test)]
pub(crate) use pl::tent;

use crate::error::{Error, Result};
use crate::graph::{MetricGraph, Point};
use crate::rational::{parse_q, serde_q, Q};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A finitely supported integer combination of points. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Divisor {
    entries: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (Point, i64)>) -> Divisor {
        let mut d = Divisor::zero();
        for (p, m) in entries {
            d.add_at(p, m);
        }
        d
    }

    pub fn add_at(&mut self, p: Point, m: i64) {
        if m == 0 {
            return;
        }
        let slot = self.entries.entry(p.clone()).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.entries.remove(&p);
        }
    }

    pub fn get(&self, p: &Point) -> i64 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, i64)> {
        self.entries.iter().map(|(p, m)| (p, *m))
    }

    pub fn support(&self) -> Vec<Point> {
        self.entries.keys().cloned().collect()
    }

    pub fn degree(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.entries.values().all(|&m| m > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, m) in other.iter() {
            d.add_at(p.clone(), m);
        }
        d
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, m) in other.iter() {
            d.add_at(p.clone(), -m);
        }
        d
    }

    /// Restriction to vertex points (D_V).
    pub fn vertex_part(&self) -> Divisor {
        Divisor::from_entries(self.iter().filter(|(p, _)| matches!(p, Point::Vertex(_))).map(|(p, m)| (p.clone(), m)))
    }

    /// Restriction to edge-interior points (D_E).
    pub fn edge_part(&self) -> Divisor {
        Divisor::from_entries(self.iter().filter(|(p, _)| matches!(p, Point::Edge { .. })).map(|(p, m)| (p.clone(), m)))
    }

    /// Checks that every point is a valid location on `g`.
    pub fn validate(&self, g: &MetricGraph) -> Result<()> {
        for p in self.entries.keys() {
            g.locate(p)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(
            self.iter()
                .map(|(p, m)| DivisorEntry { at: PointRepr::from(p), mult: m })
                .collect::<Vec<_>>(),
        )
        .expect("divisor serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Divisor> {
        let entries: Vec<DivisorEntry> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        entries
            .into_iter()
            .map(|e| Ok((e.at.to_point()?, e.mult)))
            .collect::<Result<Vec<_>>>()
            .map(Divisor::from_entries)
    }
}

/// K(x) = 2h(x) − 2 + val(x) at every vertex.
pub fn canonical_divisor(g: &MetricGraph) -> Divisor {
    Divisor::from_entries((0..g.num_vertices()).map(|v| {
        let x = g.vertex(v);
        (Point::Vertex(x.id.clone()), 2 * x.weight as i64 - 2 + g.valence(v) as i64)
    }))
}

/// JSON form of a point: a vertex id, or `{"edge": .., "offset": "p/q"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointRepr {
    Vertex(String),
    Edge {
        edge: String,
        #[serde(with = "serde_q")]
        offset: Q,
    },
}

impl From<&Point> for PointRepr {
    fn from(p: &Point) -> Self {
        match p {
            Point::Vertex(v) => PointRepr::Vertex(v.clone()),
            Point::Edge { edge, offset } => PointRepr::Edge { edge: edge.clone(), offset: offset.clone() },
        }
    }
}

impl PointRepr {
    pub fn to_point(self) -> Result<Point> {
        Ok(match self {
            PointRepr::Vertex(v) => Point::Vertex(v),
            PointRepr::Edge { edge, offset } => Point::Edge { edge, offset },
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct DivisorEntry {
    at: PointRepr,
    mult: i64,
}

/// Parses `p/q` or fails with the offending text.
pub fn parse_offset(s: &str) -> Result<Q> {
    parse_q(s)
}

#[cfg(test)]
mod tests;
