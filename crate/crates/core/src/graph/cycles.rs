use super::{MetricGraph, Subgraph};
use std::collections::VecDeque;

/// A simple cycle: vertices in order and the edges joining consecutive ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Two vertex-disjoint cycles inside `h`, if there are any.
pub fn disjoint_cycles(g: &MetricGraph, h: &Subgraph) -> Option<(Cycle, Cycle)> {
    let n = g.num_vertices();
    let mut vmask = vec![false; n];
    let mut emask = vec![false; g.num_edges()];
    for &v in &h.vertices {
        vmask[v] = true;
    }
    for &e in &h.edges {
        emask[e] = true;
    }
    prune_to_core(g, &mut vmask, &mut emask);
    let mut found = None;
    for s in 0..n {
        if !vmask[s] {
            continue;
        }
        let mut path = vec![s];
        let mut path_edges = Vec::new();
        let mut on_path = vec![false; n];
        on_path[s] = true;
        let mut visit = |c: Cycle| {
            let mut rest_v = vmask.clone();
            for &v in &c.vertices {
                rest_v[v] = false;
            }
            let rest_e: Vec<bool> = (0..g.num_edges())
                .map(|e| emask[e] && rest_v[g.edge(e).from] && rest_v[g.edge(e).to])
                .collect();
            match find_cycle(g, &rest_v, &rest_e) {
                Some(other) => {
                    found = Some((c, other));
                    true
                }
                None => false,
            }
        };
        if extend(g, &vmask, &emask, s, &mut path, &mut path_edges, &mut on_path, &mut visit) {
            return found;
        }
    }
    None
}

/// Depth-first listing of simple cycles whose smallest vertex is `s`.
/// Stops as soon as `visit` returns true.
#[allow(clippy::too_many_arguments)]
fn extend(
    g: &MetricGraph,
    vmask: &[bool],
    emask: &[bool],
    s: usize,
    path: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    on_path: &mut [bool],
    visit: &mut impl FnMut(Cycle) -> bool,
) -> bool {
    let u = *path.last().unwrap();
    for h in g.half_edges(u) {
        let e = h.edge;
        if !emask[e] || path_edges.contains(&e) {
            continue;
        }
        let w = g.far_end(*h);
        if w == s {
            // a loop at s, or a closing edge different from the first one
            if path.len() == 1 && !g.edge(e).is_loop() {
                continue;
            }
            if path.len() == 1 && !h.at_origin {
                continue;
            }
            let mut edges = path_edges.clone();
            edges.push(e);
            if visit(Cycle { vertices: path.clone(), edges }) {
                return true;
            }
        } else if w > s && vmask[w] && !on_path[w] {
            path.push(w);
            path_edges.push(e);
            on_path[w] = true;
            if extend(g, vmask, emask, s, path, path_edges, on_path, visit) {
                return true;
            }
            on_path[w] = false;
            path.pop();
            path_edges.pop();
        }
    }
    false
}

/// Some cycle in the masked graph.
pub(crate) fn find_cycle(g: &MetricGraph, vmask: &[bool], emask: &[bool]) -> Option<Cycle> {
    for e in 0..g.num_edges() {
        if emask[e] && g.edge(e).is_loop() {
            return Some(Cycle { vertices: vec![g.edge(e).from], edges: vec![e] });
        }
    }
    let n = g.num_vertices();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if !vmask[root] || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for h in g.half_edges(u) {
                let e = h.edge;
                if !emask[e] || parent[u].is_some_and(|(_, pe)| pe == e) {
                    continue;
                }
                let w = g.far_end(*h);
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some((u, e));
                    queue.push_back(w);
                } else {
                    return Some(close_cycle(&parent, u, w, e));
                }
            }
        }
    }
    None
}

fn close_cycle(parent: &[Option<(usize, usize)>], u: usize, w: usize, e: usize) -> Cycle {
    let chain = |mut x: usize| {
        let mut vs = vec![x];
        let mut es = Vec::new();
        while let Some((p, pe)) = parent[x] {
            vs.push(p);
            es.push(pe);
            x = p;
        }
        (vs, es)
    };
    let (mut cu, mut eu) = chain(u);
    let (mut cw, mut ew) = chain(w);
    // strip the common tail above the lowest common ancestor
    while cu.len() > 1 && cw.len() > 1 && cu[cu.len() - 2] == cw[cw.len() - 2] {
        cu.pop();
        cw.pop();
        eu.pop();
        ew.pop();
    }
    let mut vertices: Vec<usize> = cu.clone();
    let mut edges = eu;
    cw.pop();
    vertices.extend(cw.iter().rev());
    edges.extend(ew.iter().rev());
    edges.push(e);
    Cycle { vertices, edges }
}

fn prune_to_core(g: &MetricGraph, vmask: &mut [bool], emask: &mut [bool]) {
    loop {
        let mut changed = false;
        for v in 0..g.num_vertices() {
            if !vmask[v] {
                continue;
            }
            let deg = g.half_edges(v).iter().filter(|h| emask[h.edge]).count();
            if deg <= 1 {
                vmask[v] = false;
                for h in g.half_edges(v) {
                    emask[h.edge] = false;
                }
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// A shortest (by edge count) path from a vertex of `from` to a vertex of `to`.
/// Returns its vertices and edges; a single vertex if the sets meet.
pub fn shortest_path_between(g: &MetricGraph, from: &[usize], to: &[usize]) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.num_vertices();
    let mut target = vec![false; n];
    for &t in to {
        target[t] = true;
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in from {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        if target[u] {
            let mut vs = vec![u];
            let mut es = Vec::new();
            let mut x = u;
            while let Some((p, e)) = parent[x] {
                vs.push(p);
                es.push(e);
                x = p;
            }
            vs.reverse();
            es.reverse();
            return Some((vs, es));
        }
        for h in g.half_edges(u) {
            let w = g.far_end(*h);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((u, h.edge));
                queue.push_back(w);
            }
        }
    }
    None
}
