//! Compressed adjacency digraph, paths, and failure sets.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::Weight;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("edge ({u}, {v}) has an incomparable weight")]
    BadWeight { u: Vertex, v: Vertex },
    #[error("({u}, {v}) is not an edge of the graph")]
    MissingEdge { u: Vertex, v: Vertex },
    #[error("path is empty")]
    EmptyPath,
}

/// Directed graph with dense vertex ids `0..n`.
///
/// Out-neighbours of each vertex are stored in strictly ascending target
/// order, parallel edges are collapsed to their minimum weight, and a reverse
/// adjacency mirror is kept for backward searches.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph<W> {
    n: usize,
    unit: bool,
    out_offsets: Vec<usize>,
    out_targets: Vec<Vertex>,
    out_weights: Vec<W>,
    in_offsets: Vec<usize>,
    in_sources: Vec<Vertex>,
    in_weights: Vec<W>,
}

impl<W: Weight> Graph<W> {
    /// Builds a graph from an edge list. Parallel edges keep the smallest weight.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex, W)>,
    {
        let mut list: Vec<(Vertex, Vertex, W)> = Vec::new();
        for (u, v, w) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if !w.is_comparable() {
                return Err(GraphError::BadWeight { u, v });
            }
            list.push((u, v, w));
        }
        list.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)).then(a.2.cmp_total(&b.2)));
        list.dedup_by(|later, earlier| later.0 == earlier.0 && later.1 == earlier.1);
        let unit = list.iter().all(|e| e.2 == W::one());
        Ok(Self::from_sorted(n, unit, &list))
    }

    /// Unweighted graph: every edge gets weight one.
    pub fn unit<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, W::one())))
    }

    fn from_sorted(n: usize, unit: bool, list: &[(Vertex, Vertex, W)]) -> Self {
        let mut out_offsets = vec![0usize; n + 1];
        let mut in_offsets = vec![0usize; n + 1];
        for &(u, v, _) in list {
            out_offsets[u + 1] += 1;
            in_offsets[v + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
            in_offsets[i + 1] += in_offsets[i];
        }
        let out_targets = list.iter().map(|e| e.1).collect();
        let out_weights = list.iter().map(|e| e.2).collect();

        // sources arrive in ascending order per target because `list` is
        // sorted by source first
        let mut cursor = in_offsets.clone();
        let mut in_sources = vec![0; list.len()];
        let mut in_weights = vec![W::zero(); list.len()];
        for &(u, v, w) in list {
            in_sources[cursor[v]] = u;
            in_weights[cursor[v]] = w;
            cursor[v] += 1;
        }
        Graph {
            n,
            unit,
            out_offsets,
            out_targets,
            out_weights,
            in_offsets,
            in_sources,
            in_weights,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.out_targets.len()
    }

    /// `true` when every edge has weight one.
    pub fn is_unit(&self) -> bool {
        self.unit
    }

    /// Out-edges of `u` as `(target, weight)` in ascending target order.
    pub fn out_edges(&self, u: Vertex) -> impl Iterator<Item = (Vertex, W)> + '_ {
        let range = self.out_offsets[u]..self.out_offsets[u + 1];
        self.out_targets[range.clone()]
            .iter()
            .copied()
            .zip(self.out_weights[range].iter().copied())
    }

    /// In-edges of `v` as `(source, weight)` in ascending source order.
    pub fn in_edges(&self, v: Vertex) -> impl Iterator<Item = (Vertex, W)> + '_ {
        let range = self.in_offsets[v]..self.in_offsets[v + 1];
        self.in_sources[range.clone()]
            .iter()
            .copied()
            .zip(self.in_weights[range].iter().copied())
    }

    pub fn out_degree(&self, u: Vertex) -> usize {
        self.out_offsets[u + 1] - self.out_offsets[u]
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.in_offsets[v + 1] - self.in_offsets[v]
    }

    pub fn edge_weight(&self, u: Vertex, v: Vertex) -> Option<W> {
        let range = self.out_offsets[u]..self.out_offsets[u + 1];
        let targets = &self.out_targets[range.clone()];
        targets
            .binary_search(&v)
            .ok()
            .map(|i| self.out_weights[range.start + i])
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edge_weight(u, v).is_some()
    }

    /// All edges in `(source, target)` order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex, W)> + '_ {
        (0..self.n).flat_map(move |u| self.out_edges(u).map(move |(v, w)| (u, v, w)))
    }

    /// Subgraph keeping exactly the edges accepted by `keep`, with the weight
    /// it returns.
    pub fn filter_map<X, F>(&self, mut keep: F) -> Graph<X>
    where
        X: Weight,
        F: FnMut(Vertex, Vertex, W) -> Option<X>,
    {
        let list: Vec<(Vertex, Vertex, X)> = self
            .edges()
            .filter_map(|(u, v, w)| keep(u, v, w).map(|x| (u, v, x)))
            .collect();
        let unit = list.iter().all(|e| e.2 == X::one());
        Graph::from_sorted(self.n, unit, &list)
    }

    /// Same edges with every weight passed through `f`.
    pub fn map_weights<X: Weight>(&self, mut f: impl FnMut(W) -> X) -> Graph<X> {
        self.filter_map(|_, _, w| Some(f(w)))
    }

    /// The graph with vertices and edges of `faults` removed. Removed
    /// vertices stay in the id space but lose all incident edges.
    pub fn without(&self, faults: &FaultSet) -> Graph<W> {
        self.filter_map(|u, v, w| faults.allows_edge(u, v).then_some(w))
    }

    /// The same graph with every edge reversed.
    pub fn reversed(&self) -> Graph<W> {
        let mut list: Vec<(Vertex, Vertex, W)> = self.edges().map(|(u, v, w)| (v, u, w)).collect();
        list.sort_by_key(|a| (a.0, a.1));
        Graph::from_sorted(self.n, self.unit, &list)
    }

    pub fn has_negative_weight(&self) -> bool {
        self.out_weights.iter().any(|w| w.is_negative_weight())
    }

    pub fn min_weight(&self) -> Option<W> {
        self.out_weights
            .iter()
            .copied()
            .min_by(|a, b| a.cmp_total(b))
    }
}

/// A failed graph element. Vertices order before edges, each ascending by
/// label; this is the canonical scan order used by fault-tolerant queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Element {
    Vertex(Vertex),
    Edge(Vertex, Vertex),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v:{v}"),
            Element::Edge(u, v) => write!(f, "e:{u}-{v}"),
        }
    }
}

/// A set of failed vertices and edges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FaultSet {
    elements: BTreeSet<Element>,
}

impl FaultSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, e: Element) -> bool {
        self.elements.insert(e)
    }

    pub fn remove(&mut self, e: &Element) -> bool {
        self.elements.remove(e)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.elements.contains(e)
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.elements.contains(&Element::Vertex(v))
    }

    /// `true` when the edge and both endpoints survive.
    pub fn allows_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.elements.is_empty()
            || !(self.contains_vertex(u)
                || self.contains_vertex(v)
                || self.elements.contains(&Element::Edge(u, v)))
    }

    /// Elements in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = &Element> {
        self.elements.iter()
    }

    /// Checks that every element references a vertex (or edge) of `g`.
    pub fn validate<W: Weight>(&self, g: &Graph<W>) -> Result<(), GraphError> {
        for e in &self.elements {
            match *e {
                Element::Vertex(v) if v >= g.n() => {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() })
                }
                Element::Edge(u, v) => {
                    for x in [u, v] {
                        if x >= g.n() {
                            return Err(GraphError::VertexOutOfRange { vertex: x, n: g.n() });
                        }
                    }
                    if !g.has_edge(u, v) {
                        return Err(GraphError::MissingEdge { u, v });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }
}

impl FromIterator<Element> for FaultSet {
    fn from_iter<T: IntoIterator<Item = Element>>(iter: T) -> Self {
        FaultSet {
            elements: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a FaultSet {
    type Item = &'a Element;
    type IntoIter = std::collections::btree_set::Iter<'a, Element>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// A walk in a graph with its cached hop count and weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path<W> {
    vertices: Vec<Vertex>,
    weight: W,
}

impl<W: Weight> Path<W> {
    /// Single-vertex path.
    pub fn trivial(v: Vertex) -> Self {
        Path {
            vertices: vec![v],
            weight: W::zero(),
        }
    }

    /// Builds a path, checking every consecutive pair against `g`.
    pub fn from_vertices(g: &Graph<W>, vertices: Vec<Vertex>) -> Result<Self, GraphError> {
        if vertices.is_empty() {
            return Err(GraphError::EmptyPath);
        }
        let mut weight = W::zero();
        for pair in vertices.windows(2) {
            let w = g
                .edge_weight(pair[0], pair[1])
                .ok_or(GraphError::MissingEdge { u: pair[0], v: pair[1] })?;
            weight = weight + w;
        }
        if vertices[0] >= g.n() {
            return Err(GraphError::VertexOutOfRange { vertex: vertices[0], n: g.n() });
        }
        Ok(Path { vertices, weight })
    }

    /// Trusted constructor for algorithm internals that already know the weight.
    pub(crate) fn from_parts(vertices: Vec<Vertex>, weight: W) -> Self {
        debug_assert!(!vertices.is_empty());
        Path { vertices, weight }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    pub fn hops(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn weight(&self) -> W {
        self.weight
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().expect("paths are non-empty")
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices.windows(2).map(|p| (p[0], p[1]))
    }

    /// Every vertex and edge of the path.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.vertices
            .iter()
            .map(|&v| Element::Vertex(v))
            .chain(self.edges().map(|(u, v)| Element::Edge(u, v)))
    }

    /// Concatenation: `other` must start where `self` ends, or at a vertex
    /// adjacent to it in `g`.
    pub fn concat(&self, other: &Path<W>, g: &Graph<W>) -> Result<Path<W>, GraphError> {
        let (end, start) = (self.last(), other.first());
        let mut vertices = self.vertices.clone();
        let mut weight = self.weight + other.weight;
        if end == start {
            vertices.extend_from_slice(&other.vertices[1..]);
        } else {
            let w = g
                .edge_weight(end, start)
                .ok_or(GraphError::MissingEdge { u: end, v: start })?;
            weight = weight + w;
            vertices.extend_from_slice(&other.vertices);
        }
        Ok(Path { vertices, weight })
    }

    /// `true` when the walk never repeats a vertex.
    pub fn is_simple(&self) -> bool {
        let mut seen: Vec<Vertex> = self.vertices.clone();
        seen.sort_unstable();
        seen.windows(2).all(|p| p[0] != p[1])
    }

    /// Recomputes the weight from `g`; `None` if some edge is missing.
    pub fn recompute_weight(&self, g: &Graph<W>) -> Option<W> {
        let mut weight = W::zero();
        for (u, v) in self.edges() {
            weight = weight + g.edge_weight(u, v)?;
        }
        Some(weight)
    }

    pub fn avoids(&self, faults: &FaultSet) -> bool {
        faults.is_empty() || self.elements().all(|e| !faults.contains(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_edges_keep_minimum() {
        let g = Graph::from_edges(3, [(0, 1, 5.0), (0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(g.edge_weight(0, 1), Some(2.0));
    }

    #[test]
    fn adjacency_is_sorted_and_mirrored() {
        let g = Graph::<i64>::unit(4, [(0, 3), (0, 1), (2, 1), (0, 2)]).unwrap();
        let outs: Vec<_> = g.out_edges(0).map(|e| e.0).collect();
        assert_eq!(outs, vec![1, 2, 3]);
        let ins: Vec<_> = g.in_edges(1).map(|e| e.0).collect();
        assert_eq!(ins, vec![0, 2]);
        assert!(g.is_unit());
    }

    #[test]
    fn rejects_out_of_range_and_nan() {
        assert!(matches!(
            Graph::<i64>::unit(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        ));
        assert!(matches!(
            Graph::from_edges(2, [(0, 1, f64::NAN)]),
            Err(GraphError::BadWeight { .. })
        ));
    }

    #[test]
    fn path_weight_and_elements() {
        let g = Graph::from_edges(3, [(0, 1, 2), (1, 2, 3)]).unwrap();
        let p = Path::from_vertices(&g, vec![0, 1, 2]).unwrap();
        assert_eq!(p.hops(), 2);
        assert_eq!(p.weight(), 5);
        let els: Vec<_> = p.elements().collect();
        assert_eq!(els.len(), 5);
        assert!(Path::from_vertices(&g, vec![0, 2]).is_err());
        let q = Path::from_vertices(&g, vec![1, 2]).unwrap();
        let joined = Path::from_vertices(&g, vec![0, 1]).unwrap().concat(&q, &g).unwrap();
        assert_eq!(joined.vertices(), &[0, 1, 2]);
    }

    #[test]
    fn fault_set_order_and_filtering() {
        let f: FaultSet = [Element::Edge(0, 1), Element::Vertex(5), Element::Vertex(2)]
            .into_iter()
            .collect();
        let order: Vec<_> = f.iter().copied().collect();
        assert_eq!(
            order,
            vec![Element::Vertex(2), Element::Vertex(5), Element::Edge(0, 1)]
        );
        assert!(!f.allows_edge(0, 1));
        assert!(!f.allows_edge(2, 3));
        assert!(f.allows_edge(1, 0));
    }
}
