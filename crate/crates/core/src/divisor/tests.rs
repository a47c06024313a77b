use super::pl::tent;
use super::*;
use crate::catalog;
use crate::graph::{Loc, Subgraph};
use crate::rational::{frac, q};

fn path3() -> ChipGraph {
    ChipGraph::from_edges(3, &[(0, 1), (1, 2)])
}

fn theta_chips() -> ChipGraph {
    ChipGraph::from_model(&catalog::theta()).unwrap()
}

#[test]
fn canonical_examples() {
    let k = canonical_divisor(&catalog::theta());
    assert_eq!(k, Divisor::from_entries([(Point::vertex("v1"), 1), (Point::vertex("v2"), 1)]));
    let k = canonical_divisor(&catalog::banana(4));
    assert_eq!(k.degree(), 4);
    assert_eq!(k.get(&Point::vertex("v1")), 2);
    let r = catalog::theta().subdivide(2).unwrap();
    let k = canonical_divisor(&r.graph);
    assert_eq!(k.get(&Point::vertex("e1@1/2")), 0);
    let weighted = MetricGraph::from_parts(&[("a", 1), ("b", 0)], &[("e", "a", "b", q(1))]).unwrap();
    let k = canonical_divisor(&weighted);
    assert_eq!(k.degree(), 2 * weighted.arithmetic_genus() - 2);
}

#[test]
fn firing_matrix_examples() {
    assert_eq!(theta_chips().firing_matrix(), vec![vec![-3, 3], vec![3, -3]]);
    assert_eq!(path3().firing_matrix(), vec![vec![-1, 1, 0], vec![1, -2, 1], vec![0, 1, -1]]);
    assert_eq!(ChipGraph::from_edges(2, &[(0, 1)]).firing_matrix(), vec![vec![-1, 1], vec![1, -1]]);
    let bad = MetricGraph::from_parts(&[("a", 0), ("b", 0)], &[("x", "a", "b", q(1)), ("y", "a", "b", q(2))]).unwrap();
    assert_eq!(ChipGraph::from_model(&bad).unwrap_err(), Error::NonUniformModel);
}

#[test]
fn level_map_divisors() {
    assert_eq!(theta_chips().div(&[1, 0]), vec![-3, 3]);
    assert_eq!(theta_chips().div(&[5, 5]), vec![0, 0]);
    assert_eq!(path3().div(&[0, 1, 0]), vec![1, -2, 1]);
}

#[test]
fn principality_examples() {
    let t = theta_chips();
    assert_eq!(is_principal(&t, &[1, -1]).unwrap(), None);
    assert_eq!(is_principal(&t, &[-3, 3]).unwrap(), Some(vec![1, 0]));
    assert_eq!(is_principal(&t, &[0, 0]).unwrap(), Some(vec![0, 0]));
    assert_eq!(linear_equivalence_witness(&t, &[1, 1], &[1, 1]).unwrap(), Some(vec![0, 0]));
    assert_eq!(linear_equivalence_witness(&t, &[2, 0], &[1, 1]).unwrap(), None);
    let disconnected = ChipGraph::from_edges(3, &[(0, 1)]);
    assert_eq!(is_principal(&disconnected, &[0, 0, 0]).unwrap_err(), Error::DisconnectedInput);
}

#[test]
fn theta_two_interior_chips_are_canonical() {
    let g = catalog::theta();
    let k = canonical_divisor(&g);
    let d = Divisor::from_entries([(Point::on_edge("e1", frac(1, 3)), 1), (Point::on_edge("e1", frac(2, 3)), 1)]);
    let mut pts = k.support();
    pts.extend(d.support());
    let m = UnitModel::new(&g, &pts, 1).unwrap();
    let w = linear_equivalence_witness(&m.chips, &m.config(&k).unwrap(), &m.config(&d).unwrap()).unwrap();
    let w = w.expect("equivalent");
    let f = m.levels_to_pl(&w);
    assert_eq!(k.plus(&f.div(&g).unwrap()), d);
}

#[test]
fn unit_model_construction() {
    let g = catalog::dumbbell();
    let m = UnitModel::new(&g, &[], 1).unwrap();
    assert_eq!(m.unit, frac(1, 2));
    assert_eq!(m.len(), 5);
    let mid = Point::on_edge("bridge", frac(1, 2));
    assert_eq!(m.point_of(m.vertex_of(&mid).unwrap()), mid);
    let m = UnitModel::new(&catalog::theta(), &[Point::on_edge("e2", frac(2, 5))], 1).unwrap();
    assert_eq!(m.unit, frac(1, 5));
    assert_eq!(m.len(), 2 + 3 * 4);
    let m2 = UnitModel::new(&catalog::theta(), &[], 3).unwrap();
    assert_eq!(m2.unit, frac(1, 3));
    assert!(m2.graph().vertex_index("e3@2/3").is_ok());
}

#[test]
fn pl_div_examples() {
    let g = catalog::theta();
    assert!(PlFunction::constant(&g, q(3)).div(&g).unwrap().is_zero());
    let f = PlFunction::new(&g, vec![q(0), q(-1)], vec![Vec::new(); 3]).unwrap();
    assert_eq!(
        f.div(&g).unwrap(),
        Divisor::from_entries([(Point::vertex("v1"), -3), (Point::vertex("v2"), 3)])
    );
    let t = tent(&g, 0);
    assert_eq!(
        t.div(&g).unwrap(),
        Divisor::from_entries([
            (Point::vertex("v1"), 1),
            (Point::vertex("v2"), 1),
            (Point::on_edge("e1", frac(1, 2)), -2)
        ])
    );
    let bad = PlFunction::new(&g, vec![q(0), frac(1, 2)], vec![Vec::new(); 3]).unwrap();
    assert_eq!(bad.div(&g).unwrap_err(), Error::NonIntegralSlope("e1".into()));
}

#[test]
fn pl_max_crossing() {
    let g = MetricGraph::from_parts(&[("a", 0), ("b", 0)], &[("e", "a", "b", q(1))]).unwrap();
    let up = PlFunction::new(&g, vec![q(0), q(1)], vec![vec![]]).unwrap();
    let down = PlFunction::new(&g, vec![q(1), q(0)], vec![vec![]]).unwrap();
    let m = up.max(&g, &down);
    assert_eq!(m.edge_breaks(0), &[(frac(1, 2), frac(1, 2))]);
    assert_eq!(up.max(&g, &up), up);
    assert_eq!(up.max(&g, &up.shift(&q(-1))), up);
}

#[test]
fn norms() {
    let g = catalog::theta();
    assert_eq!(PlFunction::constant(&g, q(2)).norm_inf(), q(0));
    let t = tent(&g, 1);
    assert_eq!(t.norm_inf(), frac(1, 2));
    assert_eq!(t.shift(&q(7)).norm_inf(), frac(1, 2));
}

#[test]
fn chip_firing_examples() {
    let g = catalog::theta();
    let zero = chip_firing_pl(&g, &Subgraph::whole(&g), &q(1)).unwrap();
    assert!(zero.div(&g).unwrap().is_zero());
    let z = Subgraph::spanned(&g, [0]);
    let cf = chip_firing_pl(&g, &z, &frac(1, 2)).unwrap();
    assert_eq!(cf.norm_inf(), frac(1, 2));
    let mut expected = Divisor::from_entries([(Point::vertex("v1"), -3)]);
    for e in ["e1", "e2", "e3"] {
        expected.add_at(Point::on_edge(e, frac(1, 2)), 1);
    }
    assert_eq!(cf.div(&g).unwrap(), expected);
    assert_eq!(cf.eval(&g, &Loc::Vertex(1)), frac(-1, 2));
    assert!(matches!(chip_firing_pl(&g, &z, &q(2)), Err(Error::InvalidFiringDistance(_))));
}

#[test]
fn discrete_firing_matches_unit_distance_firing() {
    let g = catalog::k4();
    let c = ChipGraph::from_model(&g).unwrap();
    for mask in 1u32..15 {
        let set: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
        let f: Vec<i64> = set.iter().map(|&b| b as i64).collect();
        let cf = chip_firing_pl(&g, &Subgraph::spanned(&g, (0..4).filter(|&i| set[i])), &q(1)).unwrap();
        let m = UnitModel::new(&g, &[], 1).unwrap();
        assert_eq!(m.divisor(&c.div(&f)), cf.div(&g).unwrap());
    }
}

#[test]
fn divisor_json_round_trip() {
    let d = Divisor::from_entries([(Point::vertex("v1"), 1), (Point::on_edge("e1", frac(2, 5)), -2)]);
    let v = d.to_json();
    assert_eq!(v.to_string(), r#"[{"at":"v1","mult":1},{"at":{"edge":"e1","offset":"2/5"},"mult":-2}]"#);
    assert_eq!(Divisor::from_json(&v).unwrap(), d);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn chip_graph() -> impl Strategy<Value = ChipGraph> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 1..14).prop_map(move |es| {
                let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
                edges.extend(es.into_iter().filter(|(a, b)| a != b));
                ChipGraph::from_edges(n, &edges)
            })
        })
    }

    fn pl_on_unit(g: &MetricGraph) -> impl Strategy<Value = PlFunction> {
        let m = UnitModel::new(g, &[], 2).unwrap();
        proptest::collection::vec(-3i64..4, m.len()).prop_map(move |f| m.levels_to_pl(&f))
    }

    proptest! {
        #[test]
        fn firing_matrix_symmetric_zero_rows(g in chip_graph()) {
            let f = g.firing_matrix();
            for i in 0..g.len() {
                prop_assert_eq!(f[i].iter().sum::<i64>(), 0);
                for j in 0..g.len() {
                    prop_assert_eq!(f[i][j], f[j][i]);
                }
            }
        }

        #[test]
        fn principal_solver_recovers_level_maps(g in chip_graph(), seed in proptest::collection::vec(-4i64..5, 8)) {
            let f: Vec<i64> = (0..g.len()).map(|i| seed[i]).collect();
            let d = g.div(&f);
            prop_assert_eq!(d.iter().sum::<i64>(), 0);
            let back = is_principal(&g, &d).unwrap().unwrap();
            let shift = f[0] - back[0];
            prop_assert!(f.iter().zip(&back).all(|(a, b)| a - b == shift));
        }

        #[test]
        fn tropical_sum_stays_in_r_of_d(f in pl_on_unit(&catalog::theta()), h in pl_on_unit(&catalog::theta())) {
            let g = catalog::theta();
            // D chosen so that both f and h lie in R(D)
            let df = f.div(&g).unwrap();
            let dh = h.div(&g).unwrap();
            let mut d = Divisor::zero();
            for (p, m) in df.iter().chain(dh.iter()) {
                if m < 0 {
                    d.add_at(p.clone(), -m);
                }
            }
            let s = f.max(&g, &h);
            let ds = d.plus(&s.div(&g).unwrap());
            prop_assert!(ds.is_effective() || ds.is_zero());
            prop_assert_eq!(s.div(&g).unwrap().degree(), 0);
        }

        #[test]
        fn chip_firing_order_at_boundary(mask in 1u32..15, eps in 1i64..4) {
            let g = catalog::k4();
            let set: Vec<usize> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
            let z = Subgraph::spanned(&g, set.iter().copied());
            let eps = frac(eps, 4);
            let cf = chip_firing_pl(&g, &z, &eps).unwrap();
            let d = cf.div(&g).unwrap();
            for v in z.boundary(&g) {
                prop_assert_eq!(d.get(&g.point(&Loc::Vertex(v))), -(z.out_degree(&g, v) as i64));
            }
            prop_assert_eq!(cf.norm_inf(), if set.len() == 4 { q(0) } else { eps });
        }
    }
}
