use crate::divisor::{ChipGraph, Config, Divisor, LevelMap, PlFunction, UnitModel};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::reduction::{burn, reduce};
use rayon::prelude::*;
use std::collections::HashMap;

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// Whether the vertices `set` can fire together from `d`.
pub fn can_fire(cg: &ChipGraph, d: &[i64], set: &[usize]) -> bool {
    let mut mask = vec![false; cg.len()];
    for &v in set {
        mask[v] = true;
    }
    cg.can_fire(d, &mask)
}

/// Every connected proper vertex set that can fire from an effective `d`.
///
/// A firable set A contains a chipless vertex only together with all its
/// neighbours, so A is its chip-carrying part T plus whole chipless components
/// whose neighbourhoods lie in T.
pub fn firable_sets(cg: &ChipGraph, d: &[i64]) -> Vec<Vec<bool>> {
    let n = cg.len();
    let support: Vec<usize> = (0..n).filter(|&v| d[v] > 0).collect();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if d[s] > 0 || comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut i = 0;
        while i < members.len() {
            for &(w, _) in cg.neighbors(members[i]) {
                if d[w] == 0 && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
            i += 1;
        }
        comps.push(members);
    }
    // edges from each chipless component to each support vertex
    let links: Vec<HashMap<usize, i64>> = comps
        .iter()
        .map(|members| {
            let mut m = HashMap::new();
            for &x in members {
                for &(w, _) in cg.neighbors(x) {
                    if d[w] > 0 {
                        *m.entry(w).or_insert(0) += 1;
                    }
                }
            }
            m
        })
        .collect();

    let mut out = Vec::new();
    for bits in 1u64..(1u64 << support.len()) {
        let mut mask = vec![false; n];
        for (i, &s) in support.iter().enumerate() {
            if bits >> i & 1 == 1 {
                mask[s] = true;
            }
        }
        let eligible: Vec<usize> =
            (0..comps.len()).filter(|&c| links[c].keys().all(|&s| mask[s])).collect();
        for &c in &eligible {
            for &x in &comps[c] {
                mask[x] = true;
            }
        }
        let mut slack: HashMap<usize, i64> = HashMap::new();
        let mut feasible = true;
        for &s in &support {
            if mask[s] {
                let room = d[s] - cg.out_degree(&mask, s);
                if room < 0 {
                    feasible = false;
                    break;
                }
                slack.insert(s, room);
            }
        }
        if !feasible {
            continue;
        }
        exclude(cg, &comps, &links, &eligible, 0, &mut mask, &mut slack, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn exclude(
    cg: &ChipGraph,
    comps: &[Vec<usize>],
    links: &[HashMap<usize, i64>],
    eligible: &[usize],
    i: usize,
    mask: &mut Vec<bool>,
    slack: &mut HashMap<usize, i64>,
    out: &mut Vec<Vec<bool>>,
) {
    if i == eligible.len() {
        if mask.iter().any(|&b| !b) && cg.is_connected_set(mask) {
            out.push(mask.clone());
        }
        return;
    }
    exclude(cg, comps, links, eligible, i + 1, mask, slack, out);
    let c = eligible[i];
    if links[c].iter().all(|(s, k)| slack[s] >= *k) {
        for (s, k) in &links[c] {
            *slack.get_mut(s).unwrap() -= k;
        }
        for &x in &comps[c] {
            mask[x] = false;
        }
        exclude(cg, comps, links, eligible, i + 1, mask, slack, out);
        for &x in &comps[c] {
            mask[x] = true;
        }
        for (s, k) in &links[c] {
            *slack.get_mut(s).unwrap() += k;
        }
    }
}

/// All effective configurations equivalent to `d`, each with a level map w
/// such that config = d + div(w), sorted by configuration.
pub fn enumerate_configs(cg: &ChipGraph, d: &[i64], cap: usize) -> Result<Vec<(Config, LevelMap)>> {
    cg.require_connected()?;
    let start = reduce(cg, d, 0)?;
    if start.reduced[0] < 0 {
        return Ok(Vec::new());
    }
    let mut seen: HashMap<Config, LevelMap> = HashMap::new();
    seen.insert(start.reduced.clone(), start.witness.clone());
    let mut frontier = vec![(start.reduced, start.witness)];
    if d.iter().sum::<i64>() == 0 {
        frontier.clear();
    }
    while !frontier.is_empty() {
        let next: Vec<(Config, LevelMap)> = frontier
            .par_iter()
            .flat_map_iter(|(c, w)| {
                firable_sets(cg, c).into_iter().map(move |set| {
                    let mut c2 = c.clone();
                    cg.fire(&mut c2, &set, 1);
                    let w2: LevelMap = w.iter().zip(&set).map(|(x, &b)| x + b as i64).collect();
                    (c2, w2)
                })
            })
            .collect();
        frontier = Vec::new();
        for (c, w) in next {
            if !seen.contains_key(&c) {
                seen.insert(c.clone(), w.clone());
                frontier.push((c, w));
                if seen.len() > cap {
                    return Err(Error::BudgetExceeded { what: "linear system states", cap });
                }
            }
        }
    }
    let mut out: Vec<(Config, LevelMap)> = seen
        .into_iter()
        .map(|(c, w)| {
            let m = w.iter().copied().min().unwrap_or(0);
            (c, w.into_iter().map(|x| x - m).collect())
        })
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Member {
    pub config: Config,
    /// Level map w with config = base + div(w), minimum 0.
    pub witness: LevelMap,
}

/// The effective divisors of |D| supported on a unit model.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    pub model: UnitModel,
    pub base: Config,
    pub members: Vec<Member>,
}

impl LinearSystem {
    pub fn divisor(&self, i: usize) -> Divisor {
        self.model.divisor(&self.members[i].config)
    }

    pub fn divisors(&self) -> Vec<Divisor> {
        (0..self.members.len()).map(|i| self.divisor(i)).collect()
    }

    /// The witness as a function on the host graph.
    pub fn function(&self, i: usize) -> PlFunction {
        self.model.levels_to_pl(&self.members[i].witness)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = self.model.host();
        serde_json::json!({
            "subdivision": self.model.subdivision,
            "count": self.members.len(),
            "members": (0..self.members.len()).map(|i| serde_json::json!({
                "divisor": self.divisor(i).to_json(),
                "witness": self.function(i).to_json(g),
            })).collect::<Vec<_>>(),
        })
    }
}

/// |D| on the k-subdivided unit model containing supp D.
pub fn enumerate_linear_system(g: &MetricGraph, d: &Divisor, k: u32, cap: usize) -> Result<LinearSystem> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let model = UnitModel::new(g, &d.support(), k)?;
    let base = model.config(d)?;
    let members = enumerate_configs(&model.chips, &base, cap)?
        .into_iter()
        .map(|(config, witness)| Member { config, witness })
        .collect();
    Ok(LinearSystem { model, base, members })
}

/// Which closed subgraphs count when testing extremality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Subgraphs spanned by model vertices: extremality among grid functions.
    Grid,
    /// All closed subgraphs of the metric graph.
    Continuum,
}

/// f ∈ R(D) with D' = D + div(f) is not extremal iff it is a tropical sum of
/// strictly smaller elements, i.e. iff the tight sets of those elements cover
/// every vertex and edge. A tight set is a proper set that can fire from D',
/// and the largest one avoiding x is Dhar's unburned set from x, so f is not
/// extremal iff the unburned sets together cover everything. Grid functions
/// are linear on model edges, so an edge only counts as covered when both ends
/// lie in one set. Subgraphs of the metric graph have boundary in supp D',
/// hence are unions of closed model edges; the doubled model represents all of
/// them.
pub fn is_extremal_config(cg: &ChipGraph, d: &[i64], scope: Scope) -> bool {
    let (h, c) = match scope {
        Scope::Grid => (cg.clone(), d.to_vec()),
        Scope::Continuum => {
            let h = cg.doubled();
            let mut c = d.to_vec();
            c.resize(h.len(), 0);
            (h, c)
        }
    };
    let sets: Vec<Vec<bool>> = (0..h.len()).into_par_iter().map(|x| burn(&h, &c, x)).collect();
    let vertices_covered = (0..h.len()).all(|v| sets.iter().any(|s| s[v]));
    let edges_covered = h.edges().iter().all(|&(u, w)| sets.iter().any(|s| s[u] && s[w]));
    !(vertices_covered && edges_covered)
}

/// Extremality of f ∈ R(D), on the k-subdivided model containing the supports
/// of D and D + div(f) and the bends of f.
pub fn is_extremal(g: &MetricGraph, d: &Divisor, f: &PlFunction, scope: Scope, k: u32) -> Result<bool> {
    let dp = d.plus(&f.div(g)?);
    if !dp.is_effective() {
        return Err(Error::NotEffective);
    }
    let mut pts = dp.support();
    pts.extend(f.breakpoints(g));
    let model = UnitModel::new(g, &pts, k)?;
    Ok(is_extremal_config(&model.chips, &model.config(&dp)?, scope))
}

/// The members of |D| on the grid whose witnesses are extremal among grid functions.
pub fn extremals(g: &MetricGraph, d: &Divisor, k: u32, cap: usize) -> Result<LinearSystem> {
    let mut sys = enumerate_linear_system(g, d, k, cap)?;
    let cg = &sys.model.chips;
    let keep: Vec<bool> = sys.members.par_iter().map(|m| is_extremal_config(cg, &m.config, Scope::Grid)).collect();
    let mut it = keep.into_iter();
    sys.members.retain(|_| it.next().unwrap());
    Ok(sys)
}
