//! The tropical semimodule R(D) of functions f with D + div(f) ≥ 0.

mod depend;
mod linsys;

pub use depend::{find_tropical_dependence, verify_tropical_dependence, DEPENDENCE_BUDGET};
pub use linsys::{
    can_fire, enumerate_configs, enumerate_linear_system, extremals, firable_sets, is_extremal, is_extremal_config,
    LinearSystem, Member, Scope, DEFAULT_STATE_CAP,
};

use crate::divisor::{ChipGraph, Divisor, PlFunction};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::rational::Q;

/// ⟨f, g⟩ = min over Γ of f − g.
pub fn inner(g: &MetricGraph, f: &PlFunction, h: &PlFunction) -> Q {
    f.inner(g, h)
}

/// ⟨f, h⟩ ⊙ h: the largest tropical multiple of h lying below f.
pub fn project(g: &MetricGraph, f: &PlFunction, h: &PlFunction) -> PlFunction {
    f.project(g, h)
}

/// Generators of a finitely generated submodule of R(D).
#[derive(Debug, Clone)]
pub struct TropicalSpan {
    pub divisor: Divisor,
    pub generators: Vec<PlFunction>,
}

impl TropicalSpan {
    pub fn new(g: &MetricGraph, divisor: Divisor, generators: Vec<PlFunction>) -> Result<TropicalSpan> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("a span needs at least one generator".into()));
        }
        for f in &generators {
            if !divisor.plus(&f.div(g)?).is_effective() {
                return Err(Error::NotEffective);
            }
        }
        Ok(TropicalSpan { divisor, generators })
    }

    /// The span of arbitrary functions, with no divisor attached.
    pub fn of(generators: Vec<PlFunction>) -> Result<TropicalSpan> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("a span needs at least one generator".into()));
        }
        Ok(TropicalSpan { divisor: Divisor::zero(), generators })
    }

    /// ⊕ ⟨f, g⟩ ⊙ g over the generators.
    pub fn reconstruct(&self, g: &MetricGraph, f: &PlFunction) -> PlFunction {
        let mut it = self.generators.iter().map(|h| f.project(g, h));
        let first = it.next().expect("non-empty span");
        it.fold(first, |acc, p| acc.max(g, &p))
    }
}

/// f lies in the span iff it equals the sum of its projections.
pub fn in_span(g: &MetricGraph, f: &PlFunction, span: &TropicalSpan) -> bool {
    span.reconstruct(g, f) == *f
}

/// The same test for level maps on a unit model, where every function is
/// linear on model edges: f is reconstructed on an edge iff one projection
/// is tight at both of its ends.
pub fn in_span_levels(cg: &ChipGraph, f: &[i64], generators: &[&[i64]]) -> bool {
    if generators.is_empty() {
        return false;
    }
    let shifts: Vec<i64> =
        generators.iter().map(|h| f.iter().zip(h.iter()).map(|(a, b)| a - b).min().unwrap_or(0)).collect();
    let tight = |i: usize, v: usize| generators[i][v] + shifts[i] == f[v];
    (0..cg.len()).all(|v| (0..generators.len()).any(|i| tight(i, v)))
        && cg.edges().iter().all(|&(a, b)| (0..generators.len()).any(|i| tight(i, a) && tight(i, b)))
}
