use super::*;
use crate::catalog;
use crate::rational::{frac, q};

fn path3() -> MetricGraph {
    MetricGraph::from_parts(&[("v1", 0), ("v2", 0), ("v3", 0)], &[("a", "v1", "v2", q(1)), ("b", "v2", "v3", q(1))]).unwrap()
}

#[test]
fn theta_is_valid() {
    let g = catalog::theta();
    assert_eq!(g.num_vertices(), 2);
    assert_eq!(g.valence(0), 3);
    assert_eq!(g.valence(1), 3);
    assert_eq!(g.genus(), 2);
}

#[test]
fn rejects_bad_input() {
    let err = MetricGraph::from_parts(&[("a", 0), ("b", 0)], &[("e", "a", "b", q(0))]).unwrap_err();
    assert_eq!(err, Error::NonPositiveLength("e".into()));
    let err = MetricGraph::from_parts(&[("a", 0), ("a", 0)], &[]).unwrap_err();
    assert_eq!(err, Error::DuplicateId("a".into()));
    let err = MetricGraph::from_parts(&[("a", 0)], &[("e", "a", "z", q(1))]).unwrap_err();
    assert!(matches!(err, Error::DanglingEndpoint { .. }));
}

#[test]
fn dumbbell_loops() {
    let g = catalog::dumbbell();
    assert!(g.has_loops());
    assert_eq!(g.valence(g.vertex_index("v1").unwrap()), 3);
    let r = g.loopless().unwrap();
    assert!(!r.graph.has_loops());
    assert_eq!(r.graph.num_vertices(), 4);
    assert_eq!(r.graph.genus(), 2);
}

#[test]
fn genus_examples() {
    assert_eq!(catalog::k4().genus(), 3);
    assert_eq!(path3().genus(), 0);
    assert_eq!(catalog::k33().genus(), 4);
    assert_eq!(catalog::genus4_span().genus(), 4);
    assert_eq!(catalog::two_cycles_two_bridges().genus(), 3);
}

#[test]
fn removal_genus() {
    let g = catalog::theta();
    let m1 = Point::on_edge("e1", frac(1, 2));
    let m2 = Point::on_edge("e2", frac(1, 2));
    assert_eq!(g.genus_after_removal(std::slice::from_ref(&m1)).unwrap(), 1);
    let s = g.cut_summary(&[m1, m2]).unwrap();
    assert_eq!((s.genus, s.direct_genus, s.components), (0, 0, 1));
    assert_eq!(g.genus_after_removal(&[]).unwrap(), 2);
    let s = g.cut_summary(&[Point::vertex("v1")]).unwrap();
    assert_eq!((s.genus, s.components), (0, 1));
}

#[test]
fn removal_genus_exhaustive_small_sets() {
    for (_, g) in catalog::standard() {
        let r = g.subdivide(2).unwrap();
        let pts: Vec<Point> = (0..r.graph.num_vertices()).map(|v| r.graph.point(&Loc::Vertex(v))).collect();
        let m = &r.graph;
        for i in 0..pts.len() {
            for j in i..pts.len() {
                let s = m.cut_summary(&[pts[i].clone(), pts[j].clone()]).unwrap();
                assert_eq!(s.genus, s.direct_genus);
            }
        }
    }
}

#[test]
fn subdivision() {
    let g = catalog::theta();
    let r1 = g.subdivide(1).unwrap();
    assert_eq!(r1.graph, g);
    let r2 = g.subdivide(2).unwrap();
    assert_eq!((r2.graph.num_vertices(), r2.graph.num_edges(), r2.graph.genus()), (5, 6, 2));
    assert!(r2.graph.vertex_index("e1@1/2").is_ok());
    let single = MetricGraph::from_parts(&[("a", 0), ("b", 0)], &[("e", "a", "b", q(1))]).unwrap();
    let r3 = single.subdivide(3).unwrap();
    assert_eq!(r3.graph.num_edges(), 3);
    assert!(r3.graph.edges().iter().all(|e| e.length == frac(1, 3)));
    assert_eq!(r3.translate(&Point::on_edge("e", frac(1, 3))).unwrap(), Point::vertex("e@1/3"));
    assert_eq!(r3.translate(&Point::on_edge("e", frac(1, 2))).unwrap(), Point::on_edge("e#2", frac(1, 6)));
    assert_eq!(r3.lift(&Point::on_edge("e#2", frac(1, 6))).unwrap(), Point::on_edge("e", frac(1, 2)));
}

#[test]
fn breakpoints() {
    let g = catalog::theta();
    let r = g.model_with_breakpoints(&[Point::on_edge("e1", frac(1, 2))]).unwrap();
    assert_eq!((r.graph.num_vertices(), r.graph.num_edges()), (3, 4));
    let r = g.model_with_breakpoints(&[Point::vertex("v1")]).unwrap();
    assert_eq!(r.graph, g);
    let r = g
        .model_with_breakpoints(&[Point::on_edge("e2", frac(2, 3)), Point::on_edge("e2", frac(1, 3))])
        .unwrap();
    let pieces = r.pieces(g.edge_index("e2").unwrap());
    assert_eq!(pieces.len(), 3);
    assert!(pieces.iter().all(|&p| r.graph.edge(p).length == frac(1, 3)));
}

#[test]
fn breakpoints_preserve_distances() {
    let g = MetricGraph::from_parts(
        &[("a", 0), ("b", 0), ("c", 0)],
        &[("x", "a", "b", frac(3, 2)), ("y", "b", "c", q(2)), ("z", "a", "c", frac(5, 2))],
    )
    .unwrap();
    let r = g
        .model_with_breakpoints(&[Point::on_edge("x", frac(1, 2)), Point::on_edge("z", frac(7, 4))])
        .unwrap();
    for v in 0..g.num_vertices() {
        let d0 = g.distances_from(&[v]);
        let d1 = r.graph.distances_from(&[r.vertex(v)]);
        for w in 0..g.num_vertices() {
            assert_eq!(d0[w], d1[r.vertex(w)]);
        }
    }
}

#[test]
fn blocks_examples() {
    let g = catalog::dumbbell();
    let r = g.loopless().unwrap();
    let b = blocks_and_bridges(&r.graph);
    let bridge = r.graph.edge_index("bridge").unwrap();
    assert_eq!(b.bridges, vec![bridge]);
    assert_eq!(b.blocks.len(), 3);
    let b = blocks_and_bridges(&g);
    assert_eq!(b.bridges, vec![g.edge_index("bridge").unwrap()]);
    let t = catalog::theta();
    let b = blocks_and_bridges(&t);
    assert_eq!(b.blocks.len(), 1);
    assert!(b.bridges.is_empty());
    let p = path3();
    assert_eq!(blocks_and_bridges(&p).bridges, vec![0, 1]);
}

#[test]
fn simple_cycle_queries() {
    let t = catalog::theta();
    let whole = Subgraph::whole(&t);
    assert!(vertex_on_simple_cycle(&t, &whole, 0));
    let d = catalog::dumbbell();
    let whole = Subgraph::whole(&d);
    assert!(!edge_on_simple_cycle(&d, &whole, d.edge_index("bridge").unwrap()));
    assert!(edge_on_simple_cycle(&d, &whole, d.edge_index("loop1").unwrap()));
    let p = path3();
    let whole = Subgraph::whole(&p);
    assert!((0..3).all(|v| !vertex_on_simple_cycle(&p, &whole, v)));
}

#[test]
fn disjoint_cycle_search() {
    let d = catalog::dumbbell();
    let (c1, c2) = disjoint_cycles(&d, &Subgraph::whole(&d)).unwrap();
    assert!(c1.vertices.iter().all(|v| !c2.vertices.contains(v)));
    assert!(disjoint_cycles(&catalog::theta(), &Subgraph::whole(&catalog::theta())).is_none());
    assert!(disjoint_cycles(&catalog::k4(), &Subgraph::whole(&catalog::k4())).is_none());
    let g = catalog::two_cycles_two_bridges();
    assert!(disjoint_cycles(&g, &Subgraph::whole(&g)).is_some());
    let g = catalog::k33();
    assert!(disjoint_cycles(&g, &Subgraph::whole(&g)).is_none());
    let g = catalog::genus4_span();
    assert!(disjoint_cycles(&g, &Subgraph::whole(&g)).is_some());
}

#[test]
fn json_round_trip() {
    for (_, g) in catalog::standard() {
        let text = serde_json::to_string(&g.to_spec()).unwrap();
        let back: GraphSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(MetricGraph::build(&back).unwrap(), g);
    }
    let spec: GraphSpec = serde_json::from_str(
        r#"{"vertices":[{"id":"v1"},{"id":"v2","weight":1}],"edges":[{"id":"e1","from":"v1","to":"v2","length":"3/2"},{"id":"e2","from":"v1","to":"v2","length":2}]}"#,
    )
    .unwrap();
    let g = MetricGraph::build(&spec).unwrap();
    assert_eq!(g.edge(0).length, frac(3, 2));
    assert_eq!(g.vertex(1).weight, 1);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn multigraph() -> impl Strategy<Value = MetricGraph> {
        (2usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 1i64..4), 1..12).prop_map(move |es| {
                let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let vs: Vec<(&str, u32)> = names.iter().map(|s| (s.as_str(), 0)).collect();
                let ids: Vec<String> = (0..es.len()).map(|i| format!("e{i:02}")).collect();
                let edges: Vec<_> = es
                    .iter()
                    .zip(&ids)
                    .map(|((a, b, l), id)| (id.as_str(), names[*a].as_str(), names[*b].as_str(), frac(*l, 2)))
                    .collect();
                MetricGraph::from_parts(&vs, &edges).unwrap()
            })
        })
    }

    fn bridges_by_deletion(g: &MetricGraph) -> Vec<usize> {
        let (_, c0) = g.components();
        (0..g.num_edges())
            .filter(|&e| {
                let mut uf = UnionFind::new(g.num_vertices());
                for f in 0..g.num_edges() {
                    if f != e {
                        uf.union(g.edge(f).from, g.edge(f).to);
                    }
                }
                uf.labels().1 > c0
            })
            .collect()
    }

    proptest! {
        #[test]
        fn subdivision_keeps_genus(g in multigraph(), k in 1u32..4) {
            prop_assert_eq!(g.subdivide(k).unwrap().graph.genus(), g.genus());
        }

        #[test]
        fn bridges_match_deletion_test(g in multigraph()) {
            prop_assert_eq!(blocks_and_bridges(&g).bridges, bridges_by_deletion(&g));
        }
    }
}
