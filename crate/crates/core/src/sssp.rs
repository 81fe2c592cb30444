//! Single-source shortest paths with a canonical tie-break.
//!
//! Paths are compared by [`PathKey`] (weight, then hop count). Among
//! predecessors that realise the same key, the one with the smallest label
//! becomes the parent. Every routine here follows that rule, so the trees they
//! produce agree with each other vertex for vertex.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{FaultSet, Graph, Path, Vertex};
use crate::weight::{PathKey, Weight};

/// Priority-queue and edge-relaxation tallies, the benchmark currency.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpCounter {
    pub pq_ops: u64,
    pub relaxations: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.pq_ops + self.relaxations
    }

    pub fn absorb(&mut self, other: OpCounter) {
        self.pq_ops += other.pq_ops;
        self.relaxations += other.relaxations;
    }
}

/// Result of a shortest-path search.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPathTree<W> {
    pub dist: Vec<Option<W>>,
    pub hops: Vec<usize>,
    pub parent: Vec<Option<Vertex>>,
    /// Source whose tree branch contains the vertex (multi-source searches).
    pub origin: Vec<Option<Vertex>>,
}

impl<W: Weight> ShortestPathTree<W> {
    fn empty(n: usize) -> Self {
        ShortestPathTree {
            dist: vec![None; n],
            hops: vec![0; n],
            parent: vec![None; n],
            origin: vec![None; n],
        }
    }

    pub fn key(&self, v: Vertex) -> Option<PathKey<W>> {
        self.dist[v].map(|weight| PathKey {
            weight,
            hops: self.hops[v],
        })
    }

    /// Vertex sequence from the tree root down to `v`.
    pub fn vertices_to(&self, v: Vertex) -> Option<Vec<Vertex>> {
        self.dist[v]?;
        let mut out = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out.reverse();
        Some(out)
    }

    /// Tree path to `v` with weights taken from `g`.
    pub fn path_to(&self, g: &Graph<W>, v: Vertex) -> Option<Path<W>> {
        let vertices = self.vertices_to(v)?;
        Path::from_vertices(g, vertices).ok()
    }
}

/// Dijkstra from `source`. Weights must be non-negative.
pub fn dijkstra<W: Weight>(g: &Graph<W>, source: Vertex) -> ShortestPathTree<W> {
    dijkstra_counted(g, source, &mut OpCounter::default())
}

pub fn dijkstra_counted<W: Weight>(
    g: &Graph<W>,
    source: Vertex,
    ops: &mut OpCounter,
) -> ShortestPathTree<W> {
    dijkstra_multi(g, &[(source, PathKey::zero())], ops)
}

/// Dijkstra seeded with several sources, each with its own starting key.
///
/// This is the search from a virtual root joined to every seed: a seed's
/// starting key plays the role of the root edge, and the root is never a
/// parent. A seed reached more cheaply through the graph loses its root edge.
pub fn dijkstra_multi<W: Weight>(
    g: &Graph<W>,
    seeds: &[(Vertex, PathKey<W>)],
    ops: &mut OpCounter,
) -> ShortestPathTree<W> {
    let n = g.n();
    let mut tree = ShortestPathTree::empty(n);
    let mut best: Vec<Option<PathKey<W>>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();

    for &(v, key) in seeds {
        if best[v].is_none_or(|b| key < b) {
            best[v] = Some(key);
            tree.origin[v] = Some(v);
            heap.push(Reverse((key, v)));
            ops.pq_ops += 1;
        }
    }

    while let Some(Reverse((key, u))) = heap.pop() {
        ops.pq_ops += 1;
        if settled[u] || best[u] != Some(key) {
            continue;
        }
        settled[u] = true;
        for (v, w) in g.out_edges(u) {
            ops.relaxations += 1;
            if settled[v] {
                continue;
            }
            let cand = key.extend(w);
            match best[v] {
                Some(b) if cand > b => {}
                Some(b) if cand == b => {
                    // tight predecessor; keep the smaller label
                    if tree.parent[v].is_some_and(|p| u < p) {
                        tree.parent[v] = Some(u);
                        tree.origin[v] = tree.origin[u];
                    }
                }
                _ => {
                    best[v] = Some(cand);
                    tree.parent[v] = Some(u);
                    tree.origin[v] = tree.origin[u];
                    heap.push(Reverse((cand, v)));
                    ops.pq_ops += 1;
                }
            }
        }
    }

    for v in 0..n {
        if let Some(k) = best[v] {
            tree.dist[v] = Some(k.weight);
            tree.hops[v] = k.hops;
        }
    }
    tree
}

/// Unweighted distances from `source`.
pub fn bfs<W: Weight>(g: &Graph<W>, source: Vertex) -> Vec<Option<usize>> {
    bfs_tree(g, source).0
}

/// BFS distances plus canonical parents (smallest-label predecessor one
/// layer up).
pub fn bfs_tree<W: Weight>(g: &Graph<W>, source: Vertex) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
    let mut ops = OpCounter::default();
    bfs_tree_counted(g, source, &mut ops)
}

pub fn bfs_tree_counted<W: Weight>(
    g: &Graph<W>,
    source: Vertex,
    ops: &mut OpCounter,
) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
    let dist = bfs_counted(g, source, ops);
    let mut parent = vec![None; g.n()];
    for v in 0..g.n() {
        if let Some(d) = dist[v] {
            if d > 0 {
                parent[v] = g
                    .in_edges(v)
                    .map(|(u, _)| u)
                    .find(|&u| dist[u] == Some(d - 1));
            }
        }
    }
    (dist, parent)
}

/// BFS distances, counting queue operations and edge scans.
pub fn bfs_counted<W: Weight>(g: &Graph<W>, source: Vertex, ops: &mut OpCounter) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    ops.pq_ops += 1;
    while let Some(u) = queue.pop_front() {
        ops.pq_ops += 1;
        let du = dist[u].expect("queued vertices are reached");
        for (v, _) in g.out_edges(u) {
            ops.relaxations += 1;
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
                ops.pq_ops += 1;
            }
        }
    }
    dist
}

/// Hop-bounded search result: the best key over at most `r` hops for every
/// round `r` up to the bound.
#[derive(Debug, Clone)]
pub struct HopBoundedTree<W> {
    rounds: Vec<Vec<Option<PathKey<W>>>>,
    g_rev: Vec<Vec<(Vertex, W)>>,
}

impl<W: Weight> HopBoundedTree<W> {
    fn last(&self) -> &[Option<PathKey<W>>] {
        self.rounds.last().expect("round zero always exists")
    }

    fn round(&self, r: usize) -> &[Option<PathKey<W>>] {
        &self.rounds[r.min(self.rounds.len() - 1)]
    }

    pub fn dist(&self, v: Vertex) -> Option<W> {
        self.last()[v].map(|k| k.weight)
    }

    pub fn key(&self, v: Vertex) -> Option<PathKey<W>> {
        self.last()[v]
    }

    /// Canonical path to `v`: walking backwards, the predecessor is the
    /// smallest label whose best path one hop shorter realises the key.
    pub fn path_to(&self, v: Vertex) -> Option<Path<W>> {
        let key = self.last()[v]?;
        let mut out = vec![v];
        let mut cur = v;
        let mut k = key;
        while k.hops > 0 {
            let prev = self.round(k.hops - 1);
            let (u, ku) = self.g_rev[cur]
                .iter()
                .find_map(|&(u, w)| prev[u].filter(|ku| ku.extend(w) == k).map(|ku| (u, ku)))
                .expect("every reached vertex has a tight predecessor");
            out.push(u);
            cur = u;
            k = ku;
        }
        out.reverse();
        Some(Path::from_parts(out, key.weight))
    }
}

/// `L` rounds of Bellman–Ford from `s` in `G \ F`.
///
/// Works with negative weights provided there is no negative cycle. Paths
/// follow the smallest-label rule among predecessors realising the optimal
/// key, matching [`dijkstra`] on non-negative graphs.
pub fn hop_bounded_tree<W: Weight>(
    g: &Graph<W>,
    s: Vertex,
    hop_bound: usize,
    forbidden: &FaultSet,
) -> HopBoundedTree<W> {
    let n = g.n();
    let g_rev: Vec<Vec<(Vertex, W)>> = (0..n)
        .map(|v| {
            g.in_edges(v)
                .filter(|&(u, _)| forbidden.allows_edge(u, v))
                .collect()
        })
        .collect();
    let mut key: Vec<Option<PathKey<W>>> = vec![None; n];
    if !forbidden.contains_vertex(s) {
        key[s] = Some(PathKey::zero());
    }
    let mut rounds = vec![key];
    for _ in 0..hop_bound {
        let prev = rounds.last().expect("non-empty");
        let mut next = prev.clone();
        let mut changed = false;
        for v in 0..n {
            for &(u, w) in &g_rev[v] {
                let Some(ku) = prev[u] else { continue };
                let cand = ku.extend(w);
                if next[v].is_none_or(|b| cand < b) {
                    next[v] = Some(cand);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        rounds.push(next);
    }
    HopBoundedTree { rounds, g_rev }
}

/// `d^L_G(s, t, F)`: lightest `s`-`t` path with at most `L` edges in `G \ F`.
pub fn hop_bounded_distance<W: Weight>(
    g: &Graph<W>,
    s: Vertex,
    t: Vertex,
    hop_bound: usize,
    forbidden: &FaultSet,
) -> Option<W> {
    if forbidden.contains_vertex(t) {
        return None;
    }
    hop_bounded_tree(g, s, hop_bound, forbidden).dist(t)
}

/// The canonical path realising [`hop_bounded_distance`].
pub fn hop_bounded_path<W: Weight>(
    g: &Graph<W>,
    s: Vertex,
    t: Vertex,
    hop_bound: usize,
    forbidden: &FaultSet,
) -> Option<Path<W>> {
    if forbidden.contains_vertex(t) {
        return None;
    }
    hop_bounded_tree(g, s, hop_bound, forbidden).path_to(t)
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph contains a negative-weight cycle")]
pub struct NegativeCycle;

/// Vertex potentials `φ` with `ω(u,v) + φ(u) − φ(v) ≥ 0` on every edge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceFunction<W> {
    pub phi: Vec<W>,
}

impl<W: Weight> PriceFunction<W> {
    pub fn zero(n: usize) -> Self {
        PriceFunction {
            phi: vec![W::zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.phi.iter().all(|p| *p == W::zero())
    }

    pub fn reduced(&self, u: Vertex, v: Vertex, w: W) -> W {
        w + self.phi[u] - self.phi[v]
    }

    /// Original distance from a reduced one.
    pub fn recover(&self, s: Vertex, t: Vertex, reduced: W) -> W {
        reduced - self.phi[s] + self.phi[t]
    }

    /// `true` when every reduced weight of `g` is non-negative.
    pub fn is_feasible(&self, g: &Graph<W>) -> bool {
        g.edges()
            .all(|(u, v, w)| !self.reduced(u, v, w).is_negative_weight())
    }
}

/// Johnson's reduction to non-negative weights.
///
/// Bellman–Ford from a virtual source with zero-weight edges to every vertex
/// yields `φ`; the returned graph carries the reduced weights.
pub fn johnson_reweight<W: Weight>(g: &Graph<W>) -> Result<(Graph<W>, PriceFunction<W>), NegativeCycle> {
    let n = g.n();
    let mut phi = vec![W::zero(); n];
    let mut stable = false;
    for _ in 0..=n {
        let mut changed = false;
        for (u, v, w) in g.edges() {
            let cand = phi[u] + w;
            if cand < phi[v] {
                phi[v] = cand;
                changed = true;
            }
        }
        if !changed {
            stable = true;
            break;
        }
    }
    if !stable {
        return Err(NegativeCycle);
    }
    let price = PriceFunction { phi };
    let reduced = g.filter_map(|u, v, w| Some(price.reduced(u, v, w)));
    Ok((reduced, price))
}
