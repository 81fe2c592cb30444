//! Deterministic distance sensitivity oracle for weighted digraphs.
//!
//! Preprocessing builds `FT^{L,f}(u,v)` for every ordered pair and a greedy
//! pivot set `B` hitting every stored path with at least `⌈L/2⌉` edges. A
//! query for `(s, t, F)` asks each tree between vertices of `B ∪ {s,t}` for
//! its `L`-hop distance avoiding `F` and runs Dijkstra on the resulting dense
//! graph. Any shortest path avoiding `F` breaks at pivots into pieces of at
//! most `L` edges, so the dense distance is exact.
//!
//! Negative weights are handled by a price function; trees store reduced
//! weights and answers are translated back.

mod persist;
mod tree;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Element, FaultSet, Graph, Vertex};
use crate::hitting::{greedy_pivot_selection, HittingError, PathFamily, PivotSet};
use crate::sssp::{johnson_reweight, NegativeCycle, PriceFunction};
use crate::weight::Weight;

pub use persist::{graph_checksum, load_dso, save_dso, DsoHeader, PersistError, FORMAT_VERSION};
pub use tree::{
    build_ft_trees, collect_long_stored_paths, estimated_nodes, query_ft_tree, FtNode, FtTree, FtTrees, NodeId,
};

/// Default node budget for [`build_dso`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum DsoError {
    #[error("estimated {estimate:.3e} tree nodes exceeds the budget of {budget}")]
    CapacityExceeded { estimate: f64, budget: u64 },
    #[error(transparent)]
    NegativeCycle(#[from] NegativeCycle),
    #[error("fault-tolerant trees need non-negative weights")]
    NegativeWeights,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{given} failures exceed the oracle's f = {f}")]
    TooManyFailures { given: usize, f: usize },
    #[error("vertex {vertex} out of range for an oracle on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error(transparent)]
    Hitting(#[from] HittingError),
}

/// `L = ⌈n^{ε/f}⌉`, at least 2.
pub fn hop_parameter(n: usize, epsilon: f64, f: usize) -> usize {
    if f == 0 {
        return n.max(2);
    }
    let l = (n as f64).powf(epsilon / f as f64).ceil();
    (l as usize).max(2)
}

#[derive(Debug, Clone)]
pub struct DsoOptions {
    pub budget: u64,
}

impl Default for DsoOptions {
    fn default() -> Self {
        DsoOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// A built oracle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dso<W> {
    pub n: usize,
    pub l: usize,
    pub f: usize,
    /// Trees over reduced weights when `price` is set.
    pub trees: FtTrees<W>,
    pub pivots: PivotSet,
    pub price: Option<PriceFunction<W>>,
    /// Checksum of the graph it was built from.
    pub graph_sha256: String,
}

/// The dense graph `H` on `B ∪ {s,t}` for one query.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseGraph<W> {
    pub vertices: Vec<Vertex>,
    /// Row-major `|V(H)|²` matrix of `d^L(u, v, F)`.
    pub weights: Vec<Option<W>>,
}

impl<W: Weight> DenseGraph<W> {
    pub fn weight(&self, a: usize, b: usize) -> Option<W> {
        self.weights[a * self.vertices.len() + b]
    }

    /// Dijkstra from vertex index `a` to `b`.
    pub fn distance(&self, a: usize, b: usize) -> Option<W> {
        let k = self.vertices.len();
        let mut dist: Vec<Option<W>> = vec![None; k];
        let mut done = vec![false; k];
        dist[a] = Some(W::zero());
        loop {
            let mut next: Option<(W, usize)> = None;
            for (i, d) in dist.iter().enumerate() {
                if let (false, Some(d)) = (done[i], *d) {
                    if next.is_none_or(|(bd, _)| d < bd) {
                        next = Some((d, i));
                    }
                }
            }
            let Some((du, u)) = next else { break };
            if u == b {
                return Some(du);
            }
            done[u] = true;
            for v in 0..k {
                if let (false, Some(w)) = (done[v], self.weight(u, v)) {
                    let cand = du + w;
                    if dist[v].is_none_or(|dv| cand < dv) {
                        dist[v] = Some(cand);
                    }
                }
            }
        }
        dist[b]
    }
}

/// Builds the oracle with the default budget.
pub fn build_dso<W: Weight>(g: &Graph<W>, l: usize, f: usize) -> Result<Dso<W>, DsoError> {
    build_dso_with(g, l, f, &DsoOptions::default())
}

pub fn build_dso_with<W: Weight>(g: &Graph<W>, l: usize, f: usize, opts: &DsoOptions) -> Result<Dso<W>, DsoError> {
    if l < 2 {
        return Err(DsoError::InvalidParameter(format!(
            "L must be at least 2, got {l}"
        )));
    }
    let (reduced, price) = if g.has_negative_weight() {
        let (r, p) = johnson_reweight(g)?;
        (r, Some(p))
    } else {
        (g.clone(), None)
    };
    let trees = build_ft_trees(&reduced, l, f, opts.budget)?;
    let pivots = greedy_pivot_selection(&collect_long_stored_paths(&trees), g.n())?;
    Ok(Dso {
        n: g.n(),
        l,
        f,
        trees,
        pivots,
        price,
        graph_sha256: graph_checksum(g),
    })
}

impl<W: Weight> Dso<W> {
    fn check(&self, s: Vertex, t: Vertex, faults: &FaultSet) -> Result<(), DsoError> {
        if faults.len() > self.f {
            return Err(DsoError::TooManyFailures {
                given: faults.len(),
                f: self.f,
            });
        }
        let out_of_range = faults
            .iter()
            .flat_map(|e| match *e {
                Element::Vertex(v) => vec![v],
                Element::Edge(u, v) => vec![u, v],
            })
            .chain([s, t])
            .find(|&v| v >= self.n);
        match out_of_range {
            Some(vertex) => Err(DsoError::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(()),
        }
    }

    /// The dense graph for `(s, t, F)`, weights in reduced units.
    pub fn dense_graph(&self, s: Vertex, t: Vertex, faults: &FaultSet) -> Result<DenseGraph<W>, DsoError> {
        self.check(s, t, faults)?;
        let mut vertices = self.pivots.sorted();
        vertices.extend([s, t]);
        vertices.sort_unstable();
        vertices.dedup();
        let weights = vertices
            .iter()
            .flat_map(|&u| vertices.iter().map(move |&v| (u, v)))
            .map(|(u, v)| query_ft_tree(self.trees.get(u, v), faults))
            .collect();
        Ok(DenseGraph { vertices, weights })
    }

    /// `d_G(s, t, F)`, or `None` if `F` disconnects `t` from `s`.
    pub fn query(&self, s: Vertex, t: Vertex, faults: &FaultSet) -> Result<Option<W>, DsoError> {
        self.check(s, t, faults)?;
        if faults.contains_vertex(s) || faults.contains_vertex(t) {
            return Ok(None);
        }
        let h = self.dense_graph(s, t, faults)?;
        let idx = |v: Vertex| h.vertices.binary_search(&v).expect("s and t are in H");
        let d = h.distance(idx(s), idx(t));
        Ok(d.map(|d| match &self.price {
            Some(p) => p.recover(s, t, d),
            None => d,
        }))
    }

    /// The pivot family the oracle was built with.
    pub fn long_paths(&self) -> PathFamily {
        collect_long_stored_paths(&self.trees)
    }
}

/// Free-function form of [`Dso::query`].
pub fn query_dso<W: Weight>(dso: &Dso<W>, s: Vertex, t: Vertex, faults: &FaultSet) -> Result<Option<W>, DsoError> {
    dso.query(s, t, faults)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hitting::{greedy_bound, verify_hitting};
    use crate::oracle::naive_dso_distance;
    use crate::sssp::dijkstra;

    #[test]
    fn rejects_l_below_two() {
        let g = Graph::from_edges(2, [(0, 1, 5i64)]).unwrap();
        assert!(matches!(build_dso(&g, 1, 1), Err(DsoError::InvalidParameter(_))));
    }

    #[test]
    fn edgeless_graph() {
        let g = Graph::<i64>::from_edges(4, []).unwrap();
        let dso = build_dso(&g, 2, 1).unwrap();
        assert!(dso.pivots.is_empty());
        for s in 0..4 {
            for t in 0..4 {
                let root = dso.trees.get(s, t).root();
                assert_eq!(root.is_empty(), s != t);
            }
        }
        assert_eq!(dso.query(0, 1, &FaultSet::new()).unwrap(), None);
        assert_eq!(dso.query(2, 2, &FaultSet::new()).unwrap(), Some(0));
    }

    #[test]
    fn two_vertex_example() {
        let g = Graph::from_edges(2, [(0, 1, 5i64)]).unwrap();
        let dso = build_dso(&g, 2, 1).unwrap();
        assert!(dso.pivots.pivots.iter().all(|&b| b <= 1));
        assert!(verify_hitting(&dso.long_paths(), &dso.pivots));
        assert_eq!(dso.query(0, 1, &FaultSet::new()).unwrap(), Some(5));
        let f: FaultSet = [Element::Vertex(1)].into_iter().collect();
        assert_eq!(dso.query(0, 1, &f).unwrap(), None);
    }

    #[test]
    fn empty_fault_set_is_dijkstra() {
        let g = crate::gen::gnp(15, 0.2, Some((1, 20)), 9);
        let dso = build_dso(&g, 3, 1).unwrap();
        for s in 0..15 {
            let tree = dijkstra(&g, s);
            for t in 0..15 {
                assert_eq!(dso.query(s, t, &FaultSet::new()).unwrap(), tree.dist[t]);
            }
        }
    }

    #[test]
    fn pivots_within_greedy_bound() {
        let g = crate::gen::gnp(20, 0.15, Some((1, 20)), 2);
        let dso = build_dso(&g, 3, 2).unwrap();
        let fam = dso.long_paths();
        assert!(verify_hitting(&fam, &dso.pivots));
        assert!(dso.pivots.len() <= greedy_bound(20, fam.l, fam.q()));
    }

    #[test]
    fn negative_weights_round_trip() {
        let g = Graph::from_edges(4, [(0, 1, 4i64), (1, 2, -3), (0, 2, 2), (2, 3, 1), (1, 3, 0)]).unwrap();
        let dso = build_dso(&g, 2, 1).unwrap();
        assert!(dso.price.is_some());
        for s in 0..4 {
            for t in 0..4 {
                for e in [None, Some(Element::Vertex(2)), Some(Element::Edge(1, 2))] {
                    let f: FaultSet = e.into_iter().collect();
                    assert_eq!(dso.query(s, t, &f).unwrap(), naive_dso_distance(&g, s, t, &f));
                }
            }
        }
        let cyc = Graph::from_edges(2, [(0, 1, 1i64), (1, 0, -2)]).unwrap();
        assert_eq!(build_dso(&cyc, 2, 1).unwrap_err(), DsoError::NegativeCycle(NegativeCycle));
    }

    #[test]
    fn too_many_failures() {
        let g = Graph::from_edges(3, [(0, 1, 1i64), (1, 2, 1)]).unwrap();
        let dso = build_dso(&g, 2, 1).unwrap();
        let f: FaultSet = [Element::Vertex(1), Element::Vertex(2)].into_iter().collect();
        assert_eq!(dso.query(0, 2, &f).unwrap_err(), DsoError::TooManyFailures { given: 2, f: 1 });
        assert!(matches!(dso.query(0, 9, &FaultSet::new()), Err(DsoError::VertexOutOfRange { .. })));
    }

    #[test]
    fn hop_parameter_examples() {
        assert_eq!(hop_parameter(100, 1.0, 1), 100);
        assert_eq!(hop_parameter(100, 1.0, 2), 10);
        assert_eq!(hop_parameter(16, 0.5, 2), 2);
        assert_eq!(hop_parameter(3, 0.1, 4), 2);
    }
}
