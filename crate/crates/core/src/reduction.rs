//! Dhar's burning algorithm, v-reduced divisors and rank.

use crate::divisor::{ChipGraph, Config, Divisor, LevelMap, UnitModel};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

/// A v-reduced representative and how it was reached: `reduced = input + div(witness)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionResult {
    pub reduced: Config,
    pub witness: LevelMap,
    /// Fired vertex sets with their multipliers, in order.
    pub fired_sequence: Vec<(Vec<usize>, i64)>,
}

/// The maximal subset of V \ {v} that can fire; empty iff D is v-reduced.
pub fn dhar_unburned(g: &ChipGraph, d: &[i64], v: usize) -> Result<Vec<bool>> {
    if let Some(x) = (0..g.len()).find(|&x| x != v && d[x] < 0) {
        return Err(Error::NotEffectiveAway(g.id(x).to_string()));
    }
    Ok(burn(g, d, v))
}

/// Burning from `v`; assumes D effective away from v. Returns the unburned mask.
pub(crate) fn burn(g: &ChipGraph, d: &[i64], v: usize) -> Vec<bool> {
    let n = g.len();
    let mut unburned = vec![true; n];
    let mut hits = vec![0i64; n];
    unburned[v] = false;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if unburned[w] {
                hits[w] += 1;
                if hits[w] > d[w] {
                    unburned[w] = false;
                    queue.push_back(w);
                }
            }
        }
    }
    unburned
}

/// Fires the layers A_i = {x : d(v, x) ≤ i} outward-in until D is effective away from v.
pub fn make_effective_away(g: &ChipGraph, d: &[i64], v: usize) -> Result<(Config, LevelMap, Vec<(Vec<usize>, i64)>)> {
    g.require_connected()?;
    let n = g.len();
    let mut dist = vec![usize::MAX; n];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &(w, _) in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let depth = dist.iter().copied().max().unwrap_or(0);
    let mut cur = d.to_vec();
    let mut witness = vec![0i64; n];
    let mut fired = Vec::new();
    for i in 1..=depth {
        let inner = depth - i;
        let shell_min = (0..n).filter(|&x| dist[x] == inner + 1).map(|x| cur[x]).min().unwrap_or(0);
        let m = (-shell_min).max(0);
        if m > 0 {
            let set: Vec<bool> = dist.iter().map(|&dx| dx <= inner).collect();
            g.fire(&mut cur, &set, m);
            for x in 0..n {
                if set[x] {
                    witness[x] += m;
                }
            }
            fired.push(((0..n).filter(|&x| set[x]).collect(), m));
        }
    }
    Ok((cur, witness, fired))
}

pub fn reduce(g: &ChipGraph, d: &[i64], v: usize) -> Result<ReductionResult> {
    let (mut cur, mut witness, mut fired) = make_effective_away(g, d, v)?;
    loop {
        let set = burn(g, &cur, v);
        if !set.iter().any(|&b| b) {
            break;
        }
        let m = (0..g.len())
            .filter(|&x| set[x])
            .filter_map(|x| {
                let out = g.out_degree(&set, x);
                (out > 0).then(|| cur[x] / out)
            })
            .min()
            .expect("a proper subset has a boundary");
        g.fire(&mut cur, &set, m);
        for x in 0..g.len() {
            if set[x] {
                witness[x] += m;
            }
        }
        fired.push(((0..g.len()).filter(|&x| set[x]).collect(), m));
    }
    Ok(ReductionResult { reduced: cur, witness, fired_sequence: fired })
}

/// The v-reduced representative only, without bookkeeping.
pub fn reduced(g: &ChipGraph, d: &[i64], v: usize) -> Result<Config> {
    Ok(reduce(g, d, v)?.reduced)
}

pub fn is_v_reduced(g: &ChipGraph, d: &[i64], v: usize) -> bool {
    (0..g.len()).all(|x| x == v || d[x] >= 0) && !burn(g, d, v).iter().any(|&b| b)
}

pub fn has_effective_representative(g: &ChipGraph, d: &[i64]) -> Result<bool> {
    g.require_connected()?;
    if d.iter().sum::<i64>() < 0 {
        return Ok(false);
    }
    Ok(reduced(g, d, 0)?[0] >= 0)
}

/// Rank on the vertices of a chip graph: the largest r such that D − E has an
/// effective representative for every effective E of degree r; −1 if |D| is empty.
pub fn rank_on(g: &ChipGraph, d: &[i64]) -> Result<i64> {
    if !has_effective_representative(g, d)? {
        return Ok(-1);
    }
    let deg: i64 = d.iter().sum();
    for k in 1..=deg {
        let combos = multisets(g.len(), k as usize);
        let fails = combos.par_iter().any(|e| {
            let mut c = d.to_vec();
            for &x in e {
                c[x] -= 1;
            }
            !has_effective_representative(g, &c).expect("connected")
        });
        if fails {
            return Ok(k - 1);
        }
    }
    Ok(deg)
}

/// All multisets of size k over 0..n, as sorted index lists.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, k, x, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub rank: i64,
    pub subdivision: u32,
}

/// Rank of a divisor on a metric graph, with test divisors E restricted to the
/// vertices of the k-subdivided unit model containing supp D.
pub fn rank(g: &MetricGraph, d: &Divisor, k: u32) -> Result<RankReport> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let m = UnitModel::new(g, &d.support(), k)?;
    Ok(RankReport { rank: rank_on(&m.chips, &m.config(d)?)?, subdivision: k })
}

/// r(D) − r(K − D) − deg D + g − 1, with g the arithmetic genus.
pub fn riemann_roch_residual(g: &MetricGraph, d: &Divisor, k: u32) -> Result<i64> {
    if !g.is_connected() {
        return Err(Error::DisconnectedInput);
    }
    let m = UnitModel::new(g, &d.support(), k)?;
    let c = m.config(d)?;
    Ok(residual_on(&m.chips, &c, g.arithmetic_genus()))
}

pub(crate) fn residual_on(g: &ChipGraph, d: &[i64], genus: i64) -> i64 {
    let kd: Config = g.canonical().iter().zip(d).map(|(a, b)| a - b).collect();
    let deg: i64 = d.iter().sum();
    rank_on(g, d).unwrap() - rank_on(g, &kd).unwrap() - deg + genus - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::divisor::{canonical_divisor, is_principal};
    use crate::graph::Point;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn theta() -> ChipGraph {
        ChipGraph::from_model(&catalog::theta()).unwrap()
    }

    fn mask(m: &[bool]) -> Vec<usize> {
        (0..m.len()).filter(|&i| m[i]).collect()
    }

    #[test]
    fn dhar_examples() {
        let t = theta();
        assert!(mask(&dhar_unburned(&t, &[0, 2], 0).unwrap()).is_empty());
        assert_eq!(mask(&dhar_unburned(&t, &[0, 3], 0).unwrap()), vec![1]);
        let star = ChipGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        assert!(mask(&dhar_unburned(&star, &[0; 4], 1).unwrap()).is_empty());
        assert!(matches!(dhar_unburned(&t, &[0, -1], 0), Err(Error::NotEffectiveAway(_))));
    }

    #[test]
    fn effective_away_examples() {
        let t = theta();
        let (d, w, _) = make_effective_away(&t, &[1, 1], 0).unwrap();
        assert_eq!((d, w), (vec![1, 1], vec![0, 0]));
        let (d, w, _) = make_effective_away(&t, &[3, -1], 0).unwrap();
        assert!(d[1] >= 0);
        assert_eq!(d.iter().sum::<i64>(), 2);
        let back: Vec<i64> = t.div(&w).iter().zip(&[3, -1]).map(|(a, b)| a + b).collect();
        assert_eq!(back, d);
        let p = ChipGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let (d, _, _) = make_effective_away(&p, &[0, 0, -1], 0).unwrap();
        assert!(d[1] >= 0 && d[2] >= 0);
        assert_eq!(d.iter().sum::<i64>(), -1);
    }

    #[test]
    fn reduce_examples() {
        let t = theta();
        let r = reduce(&t, &[0, 3], 0).unwrap();
        assert_eq!(r.reduced, vec![3, 0]);
        assert!(is_v_reduced(&t, &r.reduced, 0));
        let r = reduce(&t, &[1, 1], 0).unwrap();
        assert_eq!(r.reduced, vec![1, 1]);
        assert!(r.fired_sequence.is_empty());
        assert!(is_v_reduced(&t, &[0, 0], 0));
        assert!(!is_v_reduced(&t, &[0, 3], 0));
    }

    #[test]
    fn effective_representatives() {
        let t = theta();
        assert!(has_effective_representative(&t, &[2, 0]).unwrap());
        assert!(!has_effective_representative(&t, &[1, -1]).unwrap());
        assert_eq!(is_principal(&t, &[1, -1]).unwrap(), None);
        assert!(!has_effective_representative(&t, &[0, -1]).unwrap());
    }

    #[test]
    fn rank_examples() {
        let g = catalog::theta();
        let k = canonical_divisor(&g);
        assert_eq!(rank(&g, &k, 1).unwrap().rank, 1);
        let d = Divisor::from_entries([(Point::vertex("v1"), 1), (Point::vertex("v2"), -1)]);
        assert_eq!(rank(&g, &d, 1).unwrap().rank, -1);
        let dumbbell = catalog::dumbbell();
        let d = Divisor::from_entries([(Point::on_edge("bridge", frac(1, 2)), 3)]);
        assert_eq!(rank(&dumbbell, &d, 1).unwrap().rank, 1);
        assert_eq!(riemann_roch_residual(&g, &k, 1).unwrap(), 0);
        assert_eq!(riemann_roch_residual(&g, &Divisor::zero(), 1).unwrap(), 0);
    }

    #[test]
    fn rank_does_not_increase_under_refinement() {
        for (_, g) in catalog::standard().into_iter().take(4) {
            let k = canonical_divisor(&g);
            let rs: Vec<i64> = (1..=3).map(|s| rank(&g, &k, s).unwrap().rank).collect();
            assert!(rs.windows(2).all(|w| w[1] <= w[0]), "{rs:?}");
        }
    }

    fn chip_graph() -> impl Strategy<Value = ChipGraph> {
        (2usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..10).prop_map(move |es| {
                let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
                edges.extend(es.into_iter().filter(|(a, b)| a != b));
                ChipGraph::from_edges(n, &edges)
            })
        })
    }

    proptest! {
        #[test]
        fn reduction_invariants(g in chip_graph(), raw in proptest::collection::vec(-3i64..5, 7), f in proptest::collection::vec(-3i64..4, 7), v in 0usize..7) {
            let n = g.len();
            let v = v % n;
            let d: Vec<i64> = raw[..n].to_vec();
            let r = reduce(&g, &d, v).unwrap();
            prop_assert!(is_v_reduced(&g, &r.reduced, v));
            let moved: Vec<i64> = g.div(&r.witness).iter().zip(&d).map(|(a, b)| a + b).collect();
            prop_assert_eq!(&moved, &r.reduced);
            let mut sum = vec![0i64; n];
            for (set, m) in &r.fired_sequence {
                for &x in set { sum[x] += m; }
            }
            prop_assert_eq!(&sum, &r.witness);
            // idempotent
            let again = reduce(&g, &r.reduced, v).unwrap();
            prop_assert_eq!(&again.reduced, &r.reduced);
            prop_assert!(again.fired_sequence.is_empty());
            // class invariant
            let shifted: Vec<i64> = g.div(&f[..n]).iter().zip(&d).map(|(a, b)| a + b).collect();
            prop_assert_eq!(reduce(&g, &shifted, v).unwrap().reduced, r.reduced);
            // trivial class
            prop_assert!(reduce(&g, &g.div(&f[..n]), v).unwrap().reduced.iter().all(|&x| x == 0));
        }

        #[test]
        fn dhar_matches_brute_force(g in chip_graph(), raw in proptest::collection::vec(0i64..4, 7), v in 0usize..7) {
            let n = g.len();
            let v = v % n;
            let d = &raw[..n];
            let mut best = vec![false; n];
            for bits in 1u32..(1 << n) {
                if bits >> v & 1 == 1 { continue; }
                let set: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                if g.can_fire(d, &set) {
                    for i in 0..n { best[i] |= set[i]; }
                }
            }
            prop_assert_eq!(dhar_unburned(&g, d, v).unwrap(), best);
        }
    }
}
