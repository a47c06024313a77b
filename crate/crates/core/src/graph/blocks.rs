use super::{MetricGraph, Subgraph};

/// Biconnected components of a (sub)graph, as edge lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub blocks: Vec<Vec<usize>>,
    pub bridges: Vec<usize>,
    on_cycle: Vec<bool>,
}

impl Blocks {
    pub fn is_bridge(&self, e: usize) -> bool {
        self.bridges.binary_search(&e).is_ok()
    }

    /// True iff `e` belongs to the graph and lies in a non-bridge block.
    pub fn edge_on_cycle(&self, e: usize) -> bool {
        self.on_cycle[e]
    }

    /// The block containing edge `e`, if any.
    pub fn block_of(&self, e: usize) -> Option<&[usize]> {
        self.blocks.iter().find(|b| b.contains(&e)).map(|b| b.as_slice())
    }

    /// A non-bridge block with an edge at `v`, if any.
    pub fn cycle_block_at(&self, g: &MetricGraph, v: usize) -> Option<&[usize]> {
        g.half_edges(v)
            .iter()
            .find(|h| self.on_cycle[h.edge])
            .and_then(|h| self.block_of(h.edge))
    }
}

pub fn blocks_and_bridges(g: &MetricGraph) -> Blocks {
    blocks_of(g, &Subgraph::whole(g))
}

pub fn blocks_of(g: &MetricGraph, h: &Subgraph) -> Blocks {
    let n = g.num_vertices();
    let mut in_edge = vec![false; g.num_edges()];
    for &e in &h.edges {
        in_edge[e] = true;
    }
    let mut st = State { disc: vec![usize::MAX; n], low: vec![0; n], time: 0, stack: Vec::new(), blocks: Vec::new() };
    for &e in &h.edges {
        if g.edge(e).is_loop() {
            st.blocks.push(vec![e]);
        }
    }
    for &v in &h.vertices {
        if st.disc[v] == usize::MAX {
            dfs(g, &in_edge, &mut st, v, usize::MAX);
        }
    }
    let mut blocks = st.blocks;
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    let mut on_cycle = vec![false; g.num_edges()];
    let mut bridges = Vec::new();
    for b in &blocks {
        if b.len() == 1 && !g.edge(b[0]).is_loop() {
            bridges.push(b[0]);
        } else {
            for &e in b {
                on_cycle[e] = true;
            }
        }
    }
    bridges.sort_unstable();
    Blocks { blocks, bridges, on_cycle }
}

struct State {
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

fn dfs(g: &MetricGraph, in_edge: &[bool], st: &mut State, u: usize, parent_edge: usize) {
    st.disc[u] = st.time;
    st.low[u] = st.time;
    st.time += 1;
    for h in g.half_edges(u) {
        let e = h.edge;
        if !in_edge[e] || e == parent_edge || g.edge(e).is_loop() {
            continue;
        }
        let w = g.far_end(*h);
        if st.disc[w] == usize::MAX {
            st.stack.push(e);
            dfs(g, in_edge, st, w, e);
            st.low[u] = st.low[u].min(st.low[w]);
            if st.low[w] >= st.disc[u] {
                let mut block = Vec::new();
                while let Some(f) = st.stack.pop() {
                    block.push(f);
                    if f == e {
                        break;
                    }
                }
                st.blocks.push(block);
            }
        } else if st.disc[w] < st.disc[u] {
            st.stack.push(e);
            st.low[u] = st.low[u].min(st.disc[w]);
        }
    }
}

/// True iff `v` lies on a simple cycle of `h`, i.e. in a non-bridge block.
pub fn vertex_on_simple_cycle(g: &MetricGraph, h: &Subgraph, v: usize) -> bool {
    h.vertices.contains(&v) && blocks_of(g, h).cycle_block_at(g, v).is_some()
}

/// True iff `e` lies on a simple cycle of `h`, i.e. is not a bridge of `h`.
pub fn edge_on_simple_cycle(g: &MetricGraph, h: &Subgraph, e: usize) -> bool {
    h.edges.contains(&e) && blocks_of(g, h).edge_on_cycle(e)
}
