use crate::divisor::{refinement_offsets, PlFunction};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::rational::{q, Q};
use std::collections::BTreeSet;

pub const DEPENDENCE_BUDGET: usize = 200_000;

/// Whether min_i (f_i + a_i) is attained at least twice at every point of Γ.
///
/// On each piece of the common refinement (all bends and pairwise crossings)
/// the order of the functions is fixed, so it is enough to look at the
/// refinement points and at one interior point per piece.
pub fn verify_tropical_dependence(g: &MetricGraph, fns: &[PlFunction], coeffs: &[Q]) -> Result<bool> {
    if fns.len() != coeffs.len() || fns.len() < 2 {
        return Err(Error::InvalidArgument("need at least two functions with one coefficient each".into()));
    }
    let shifted: Vec<PlFunction> = fns.iter().zip(coeffs).map(|(f, a)| f.shift(a)).collect();
    let tied = |vals: Vec<Q>| {
        let mut v = vals;
        v.sort();
        v[0] == v[1]
    };
    for v in 0..g.num_vertices() {
        if !tied(shifted.iter().map(|f| f.vertex_value(v).clone()).collect()) {
            return Ok(false);
        }
    }
    let refs: Vec<&PlFunction> = shifted.iter().collect();
    for e in 0..g.num_edges() {
        let ts = refinement_offsets(g, e, &refs);
        let mut probes: Vec<Q> = ts.clone();
        probes.extend(ts.windows(2).map(|w| (&w[0] + &w[1]) / q(2)));
        for t in &probes {
            if !tied(shifted.iter().map(|f| f.eval_edge(g, e, t)).collect()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for coefficients making `fns` tropically dependent.
///
/// The first active function gets coefficient 0; each later one either meets
/// an earlier active function at a vertex or bend of some function, or is
/// lifted above everything (inactive). `None` means this candidate set is
/// exhausted.
pub fn find_tropical_dependence(g: &MetricGraph, fns: &[PlFunction], budget: usize) -> Result<Option<Vec<Q>>> {
    if fns.len() < 2 {
        return Err(Error::InvalidArgument("need at least two functions".into()));
    }
    // values of every function at every vertex and bend of any function
    let mut table: Vec<Vec<Q>> = (0..g.num_vertices())
        .map(|v| fns.iter().map(|f| f.vertex_value(v).clone()).collect())
        .collect();
    for e in 0..g.num_edges() {
        let ts: BTreeSet<Q> = fns.iter().flat_map(|f| f.edge_breaks(e).iter().map(|(t, _)| t.clone())).collect();
        for t in ts {
            table.push(fns.iter().map(|f| f.eval_edge(g, e, &t)).collect());
        }
    }
    let mut search = Search { g, fns, table, budget, calls: 0 };
    for pivot in 0..fns.len() - 1 {
        let mut coeffs: Vec<Option<Q>> = vec![None; fns.len()];
        coeffs[pivot] = Some(q(0));
        if let Some(found) = search.extend(&mut coeffs, pivot + 1)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

struct Search<'a> {
    g: &'a MetricGraph,
    fns: &'a [PlFunction],
    table: Vec<Vec<Q>>,
    budget: usize,
    calls: usize,
}

impl Search<'_> {
    fn extend(&mut self, coeffs: &mut Vec<Option<Q>>, i: usize) -> Result<Option<Vec<Q>>> {
        if i == coeffs.len() {
            if coeffs.iter().filter(|c| c.is_some()).count() < 2 {
                return Ok(None);
            }
            self.calls += 1;
            if self.calls > self.budget {
                return Err(Error::BudgetExceeded { what: "dependence candidates", cap: self.budget });
            }
            let full = self.complete(coeffs);
            return Ok(verify_tropical_dependence(self.g, self.fns, &full)?.then_some(full));
        }
        let mut cands = BTreeSet::new();
        for row in &self.table {
            for (j, c) in coeffs[..i].iter().enumerate() {
                if let Some(a) = c {
                    cands.insert(&row[j] + a - &row[i]);
                }
            }
        }
        for a in cands {
            coeffs[i] = Some(a);
            if let Some(found) = self.extend(coeffs, i + 1)? {
                return Ok(Some(found));
            }
        }
        coeffs[i] = None;
        self.extend(coeffs, i + 1)
    }

    /// Inactive functions are lifted strictly above every active one.
    fn complete(&self, coeffs: &[Option<Q>]) -> Vec<Q> {
        let top = self
            .table
            .iter()
            .flat_map(|row| row.iter().zip(coeffs).filter_map(|(x, c)| c.as_ref().map(|a| x + a)))
            .max()
            .expect("an active function");
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                Some(a) => a.clone(),
                None => {
                    let low = self.table.iter().map(|row| &row[i]).min().expect("a vertex");
                    &top - low + q(1)
                }
            })
            .collect()
    }
}
