use super::*;
use crate::catalog;
use crate::divisor::tent;
use crate::graph::Point;
use crate::rational::q;
use crate::tropical::{enumerate_linear_system, DEFAULT_STATE_CAP};

fn vals(g: &MetricGraph, xs: &[i64]) -> PlFunction {
    PlFunction::new(g, xs.iter().map(|&x| q(x)).collect(), vec![Vec::new(); g.num_edges()]).unwrap()
}

fn slopes_at(p: &SlopeProfile, id: &str) -> Vec<i64> {
    let mut s: Vec<i64> = p.vertices.iter().find(|v| v.vertex == id).unwrap().slopes.iter().map(|x| x.1).collect();
    s.sort();
    s
}

#[test]
fn profile_examples() {
    let g = catalog::theta();
    let p = slope_profile(&g, &PlFunction::constant(&g, q(4))).unwrap();
    assert!(p.vertices.iter().all(|v| v.slopes.iter().all(|s| s.1 == 0)));
    let p = slope_profile(&g, &vals(&g, &[0, -1])).unwrap();
    assert_eq!(slopes_at(&p, "v1"), vec![-1, -1, -1]);
    assert_eq!(slopes_at(&p, "v2"), vec![1, 1, 1]);
    let p = slope_profile(&g, &tent(&g, 0)).unwrap();
    assert_eq!(slopes_at(&p, "e1@1/2"), vec![-1, -1]);
    assert_eq!(slopes_at(&p, "v1"), vec![0, 0, 1]);
    let v1 = p.vertices.iter().find(|v| v.vertex == "v1").unwrap();
    assert_eq!(v1.orders(), vec![-1, -1, -2]);
}

#[test]
fn inconvenient_examples() {
    let star = MetricGraph::from_parts(
        &[("a", 0), ("b", 0), ("c", 0), ("v", 0)],
        &[("va", "v", "a", q(1)), ("vb", "v", "b", q(1)), ("vc", "v", "c", q(1))],
    )
    .unwrap();
    let f = vals(&star, &[-3, 1, 1, 0]);
    let p = slope_profile(&star, &f).unwrap();
    let v = star.vertex_index("v").unwrap();
    assert_eq!(slopes_at(&p, "v"), vec![-3, 1, 1]);
    assert!(is_inconvenient(&p, v));
    let p = slope_profile(&star, &vals(&star, &[-3, 1, 0, 0])).unwrap();
    assert!(!is_inconvenient(&p, v));
    let p = slope_profile(&star, &vals(&star, &[-1, -1, 2, 0])).unwrap();
    assert!(!is_inconvenient(&p, v));
    let weighted = MetricGraph::from_parts(
        &[("a", 0), ("b", 0), ("c", 0), ("v", 1)],
        &[("va", "v", "a", q(1)), ("vb", "v", "b", q(1)), ("vc", "v", "c", q(1))],
    )
    .unwrap();
    let p = slope_profile(&weighted, &f).unwrap();
    assert!(!is_inconvenient(&p, v));
}

#[test]
fn horizontal_and_superlevel_examples() {
    let g = catalog::theta();
    assert_eq!(horizontal_edges(&g, &PlFunction::constant(&g, q(0))).unwrap().len(), 3);
    let f = vals(&g, &[0, -1]);
    assert!(horizontal_edges(&g, &f).unwrap().is_empty());
    let d = catalog::dumbbell();
    assert_eq!(horizontal_edges(&d, &PlFunction::constant(&d, q(0))).unwrap().len(), 3);
    assert_eq!(superlevel_subgraph(&g, &f, &q(-1)).unwrap(), Subgraph::whole(&g));
    assert!(superlevel_subgraph(&g, &f, &q(1)).unwrap().vertices.is_empty());
    let top = superlevel_subgraph(&g, &f, &q(0)).unwrap();
    assert_eq!(top.vertices, BTreeSet::from([0]));
    assert!(top.edges.is_empty());
    assert!(matches!(horizontal_edges(&g, &tent(&g, 0)), Err(Error::BendOffModel(_))));
}

#[test]
fn canonical_ground_truths() {
    let g = catalog::theta();
    let r = is_realizable_canonical(&g, &canonical_divisor(&g)).unwrap();
    assert!(r.realizable);
    assert_eq!(r.witnesses.len(), 3);

    let g = catalog::dumbbell();
    let r = is_realizable_canonical(&g, &canonical_divisor(&g)).unwrap();
    assert!(!r.realizable);
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.violations[0].kind, ViolationKind::HorizontalEdge);
    assert_eq!(r.violations[0].location, "bridge");

    let g = catalog::two_cycles_two_bridges();
    assert!(is_realizable_canonical(&g, &canonical_divisor(&g)).unwrap().realizable);
}

#[test]
fn rejects_divisors_outside_the_canonical_system() {
    let g = catalog::theta();
    let d = Divisor::from_entries([(Point::vertex("v1"), 2)]);
    assert_eq!(is_realizable_canonical(&g, &d).unwrap_err(), Error::NotInCanonicalSystem);
    let d = Divisor::from_entries([(Point::vertex("v1"), 1)]);
    assert_eq!(is_realizable_canonical(&g, &d).unwrap_err(), Error::NotInCanonicalSystem);
    let two = MetricGraph::from_parts(&[("a", 0), ("b", 0)], &[]).unwrap();
    assert_eq!(is_realizable_canonical(&two, &Divisor::zero()).unwrap_err(), Error::DisconnectedInput);
}

#[test]
fn disjoint_horizontal_cycles_examples() {
    let g = catalog::theta();
    assert!(!has_disjoint_horizontal_cycles(&g, &PlFunction::constant(&g, q(0))).unwrap());
    assert!(!has_disjoint_horizontal_cycles(&g, &vals(&g, &[0, -1])).unwrap());
    let d = catalog::dumbbell();
    assert!(has_disjoint_horizontal_cycles(&d, &PlFunction::constant(&d, q(0))).unwrap());
}

#[test]
fn convexity_probe_examples() {
    let g = catalog::theta();
    let k = canonical_divisor(&g);
    assert!(convexity_probe(&g, &k, &k).unwrap());
    let d = catalog::dumbbell();
    let kd = canonical_divisor(&d);
    assert!(matches!(convexity_probe(&d, &kd, &kd), Err(Error::InvalidArgument(_))));
}

#[test]
fn disjoint_cycle_construction_is_not_realizable() {
    assert_eq!(disjoint_cycle_construction(&catalog::theta()).unwrap(), None);
    assert_eq!(disjoint_cycle_construction(&catalog::k33()).unwrap(), None);
    for g in [catalog::dumbbell(), catalog::two_cycles_two_bridges(), catalog::genus4_span()] {
        let d = disjoint_cycle_construction(&g).unwrap().unwrap();
        assert!(d.is_effective());
        let r = is_realizable_canonical(&g, &d).unwrap();
        assert!(!r.realizable);
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::HorizontalEdge));
    }
}

#[test]
fn enumerated_canonical_divisors() {
    for (name, g) in catalog::standard() {
        let k = canonical_divisor(&g);
        let disjoint = disjoint_cycles(&g, &Subgraph::whole(&g)).is_some();
        for sub in 1..=2 {
            let sys = enumerate_linear_system(&g, &k, sub, DEFAULT_STATE_CAP).unwrap();
            for i in 0..sys.len() {
                let f = sys.function(i);
                let report = check_function(&g, &f).unwrap();
                assert_eq!(report, check_function(&g, &f.shift(&q(7))).unwrap());
                assert_eq!(report, is_realizable_canonical(&g, &sys.divisor(i)).unwrap(), "{name}");
                if !has_disjoint_horizontal_cycles(&g, &f).unwrap() {
                    assert!(report.realizable, "{name} {:?}", sys.divisor(i));
                }
                if !disjoint {
                    assert!(report.realizable, "{name}");
                }
            }
        }
    }
}
