//! Built-in example graphs. All edges have unit length.

use crate::error::{Error, Result};
use crate::graph::MetricGraph;
use crate::rational::q;

pub const NAMES: &[&str] = &[
    "theta",
    "dumbbell",
    "banana(n)",
    "K4",
    "K33",
    "cycle(n)",
    "two-cycles-two-bridges",
    "genus4-span",
];

fn unit(vertices: &[&str], edges: &[(&str, &str, &str)]) -> MetricGraph {
    let vs: Vec<(&str, u32)> = vertices.iter().map(|v| (*v, 0)).collect();
    let es: Vec<_> = edges.iter().map(|(id, a, b)| (*id, *a, *b, q(1))).collect();
    MetricGraph::from_parts(&vs, &es).expect("catalog graph is valid")
}

pub fn theta() -> MetricGraph {
    unit(&["v1", "v2"], &[("e1", "v1", "v2"), ("e2", "v1", "v2"), ("e3", "v1", "v2")])
}

/// Two loops joined by a bridge.
pub fn dumbbell() -> MetricGraph {
    unit(&["v1", "v2"], &[("bridge", "v1", "v2"), ("loop1", "v1", "v1"), ("loop2", "v2", "v2")])
}

/// Two vertices joined by `n` parallel edges.
pub fn banana(n: usize) -> MetricGraph {
    let ids: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let es: Vec<_> = ids.iter().map(|id| (id.as_str(), "v1", "v2")).collect();
    unit(&["v1", "v2"], &es)
}

pub fn k4() -> MetricGraph {
    let vs = ["v1", "v2", "v3", "v4"];
    let ids: Vec<(String, &str, &str)> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| (format!("e{}{}", i + 1, j + 1), vs[i], vs[j]))
        .collect();
    let es: Vec<_> = ids.iter().map(|(id, a, b)| (id.as_str(), *a, *b)).collect();
    unit(&vs, &es)
}

pub fn k33() -> MetricGraph {
    let a = ["a1", "a2", "a3"];
    let b = ["b1", "b2", "b3"];
    let ids: Vec<(String, &str, &str)> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| (format!("{x}{y}"), *x, *y)))
        .collect();
    let es: Vec<_> = ids.iter().map(|(id, x, y)| (id.as_str(), *x, *y)).collect();
    unit(&["a1", "a2", "a3", "b1", "b2", "b3"], &es)
}

pub fn cycle(n: usize) -> MetricGraph {
    let vs: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let es: Vec<(String, &str, &str)> = (0..n)
        .map(|i| (format!("e{}", i + 1), vs[i].as_str(), vs[(i + 1) % n].as_str()))
        .collect();
    let vr: Vec<&str> = vs.iter().map(|s| s.as_str()).collect();
    let er: Vec<_> = es.iter().map(|(id, a, b)| (id.as_str(), *a, *b)).collect();
    unit(&vr, &er)
}

/// Two 2-cycles joined by a pair of edges.
pub fn two_cycles_two_bridges() -> MetricGraph {
    unit(
        &["v00", "v01", "v10", "v11"],
        &[
            ("c0a", "v00", "v01"),
            ("c0b", "v00", "v01"),
            ("c1a", "v10", "v11"),
            ("c1b", "v10", "v11"),
            ("j0", "v00", "v10"),
            ("j1", "v01", "v11"),
        ],
    )
}

/// Genus-4 graph carrying a realizable canonical divisor outside the span of
/// the realizable extremals.
pub fn genus4_span() -> MetricGraph {
    unit(
        &["a", "b", "c", "d", "e", "f"],
        &[
            ("ab", "a", "b"),
            ("bc", "b", "c"),
            ("cd", "c", "d"),
            ("da", "d", "a"),
            ("ac", "a", "c"),
            ("be", "b", "e"),
            ("ed", "e", "d"),
            ("ef", "e", "f"),
            ("ff", "f", "f"),
        ],
    )
}

/// Looks up a catalog graph; parametrized families accept `banana4`, `banana(4)` or `banana:4`.
pub fn by_name(name: &str) -> Result<MetricGraph> {
    let param = |prefix: &str| -> Option<usize> {
        let rest = name.strip_prefix(prefix)?;
        let rest = rest.trim_start_matches([':', '(']).trim_end_matches(')');
        rest.parse().ok()
    };
    let unknown = || Error::InvalidArgument(format!("unknown catalog graph `{name}`"));
    match name {
        "theta" => Ok(theta()),
        "dumbbell" => Ok(dumbbell()),
        "K4" | "k4" => Ok(k4()),
        "K33" | "k33" | "K3,3" => Ok(k33()),
        "two-cycles-two-bridges" => Ok(two_cycles_two_bridges()),
        "genus4-span" => Ok(genus4_span()),
        _ => {
            if let Some(n) = param("banana") {
                if n >= 1 {
                    return Ok(banana(n));
                }
            }
            if let Some(n) = param("cycle") {
                if n >= 1 {
                    return Ok(cycle(n));
                }
            }
            Err(unknown())
        }
    }
}

/// The fixed list of catalog instances used by surveys and tests.
pub fn standard() -> Vec<(&'static str, MetricGraph)> {
    vec![
        ("theta", theta()),
        ("dumbbell", dumbbell()),
        ("banana(4)", banana(4)),
        ("K4", k4()),
        ("K33", k33()),
        ("cycle(3)", cycle(3)),
        ("two-cycles-two-bridges", two_cycles_two_bridges()),
        ("genus4-span", genus4_span()),
    ]
}
