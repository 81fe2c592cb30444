#![allow(dead_code)]

use ftpaths::{Element, FaultSet, Graph, Vertex};
use proptest::prelude::*;

/// Weighted digraph on `2..=max_n` vertices with weights in `lo..=hi`.
pub fn weighted_graph(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Graph<i64>> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n, lo..=hi), 0..=n * 3)
            .prop_map(move |edges| Graph::from_edges(n, edges.into_iter().filter(|e| e.0 != e.1)).unwrap())
    })
}

pub fn unit_graph(max_n: usize) -> impl Strategy<Value = Graph<u64>> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 3)
            .prop_map(move |edges| Graph::unit(n, edges.into_iter().filter(|e| e.0 != e.1)).unwrap())
    })
}

/// Weighted digraph with negative edges but no negative cycle: reduced
/// weights `r ≥ 0` shifted by a random potential.
pub fn potential_graph(max_n: usize) -> impl Strategy<Value = Graph<i64>> {
    (2..=max_n).prop_flat_map(move |n| {
        (
            proptest::collection::vec(-8i64..=8, n),
            proptest::collection::vec((0..n, 0..n, 0i64..=10), 0..=n * 3),
        )
            .prop_map(move |(p, edges)| {
                let edges = edges
                    .into_iter()
                    .filter(|e| e.0 != e.1)
                    .map(|(u, v, r)| (u, v, r - p[u] + p[v]));
                Graph::from_edges(n, edges).unwrap()
            })
    })
}

pub fn faults(items: &[Element]) -> FaultSet {
    items.iter().copied().collect()
}

/// Every element of `g`.
pub fn all_elements<W: ftpaths::Weight>(g: &Graph<W>) -> Vec<Element> {
    let mut out: Vec<Element> = (0..g.n()).map(Element::Vertex).collect();
    out.extend(g.edges().map(|(u, v, _)| Element::Edge(u, v)));
    out
}

pub fn edge_faults(path: &[Vertex], i: usize) -> FaultSet {
    faults(&[Element::Edge(path[i], path[i + 1])])
}
