//! Replacement paths in unweighted digraphs.
//!
//! For the canonical shortest path `P = <v_0, …, v_k>` from `s` to `t`, the
//! length of a shortest `s`-`t` path avoiding each edge `e_i = (v_i, v_{i+1})`
//! is the smaller of two candidates:
//!
//! * short detours (at most `c = ⌈√n⌉` edges), read off the table built by
//!   [`compute_rd_table`] with a sliding window in [`short_detour_lengths`];
//! * long detours, which must contain a pivot of `R`. `R` is a greedy hitting
//!   set for the detour set (one `c`-edge path per vertex of `V_√n`, see
//!   [`DetourSet`]), and [`long_detour_lengths`] routes through every pivot.
//!
//! Everything is deterministic.

mod detour;
mod long;
mod short;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Path, Vertex};
use crate::hitting::{greedy_pivot_selection, HittingError, PathFamily, PivotSet};
use crate::sssp::{bfs_tree, bfs_tree_counted, OpCounter};
use crate::weight::Weight;

pub use detour::{compute_detour_set_decremental, compute_detour_set_trees, DecrementalStats};
pub use long::{long_detour_lengths, LongVia};
pub use short::{compute_rd_table, short_detour_lengths, RdTable, ShortVia};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RpError {
    #[error("no path from {s} to {t}")]
    NoPath { s: Vertex, t: Vertex },
    #[error("replacement paths need a unit-weight graph")]
    NotUnitWeighted,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
}

/// `⌈√n⌉`, the short/long threshold.
pub fn sqrt_threshold(n: usize) -> usize {
    let mut c = (n as f64).sqrt() as usize;
    while c * c < n {
        c += 1;
    }
    while c > 1 && (c - 1) * (c - 1) >= n {
        c -= 1;
    }
    c.max(1)
}

/// The canonical shortest `s`-`t` path and its position index.
#[derive(Debug, Clone, PartialEq)]
pub struct BasePath {
    path: Path<u64>,
    pos: Vec<Option<usize>>,
}

impl BasePath {
    pub fn path(&self) -> &Path<u64> {
        &self.path
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.path.vertices()
    }

    /// Number of edges `k`.
    pub fn k(&self) -> usize {
        self.path.hops()
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.path.vertices()[i]
    }

    pub fn s(&self) -> Vertex {
        self.path.first()
    }

    pub fn t(&self) -> Vertex {
        self.path.last()
    }

    /// Index of `v` on the path, if any.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.pos[v]
    }

    pub fn is_path_edge(&self, u: Vertex, v: Vertex) -> bool {
        matches!((self.pos[u], self.pos[v]), (Some(a), Some(b)) if a + 1 == b)
    }

    fn from_vertices(g: &Graph<u64>, vertices: Vec<Vertex>) -> Self {
        let mut pos = vec![None; g.n()];
        for (i, &v) in vertices.iter().enumerate() {
            pos[v] = Some(i);
        }
        let weight = (vertices.len() - 1) as u64;
        BasePath {
            path: Path::from_parts(vertices, weight),
            pos,
        }
    }
}

fn unit_copy<W: Weight>(g: &Graph<W>) -> Result<Graph<u64>, RpError> {
    if !g.is_unit() {
        return Err(RpError::NotUnitWeighted);
    }
    Ok(g.map_weights(|_| 1u64))
}

fn check_vertex(n: usize, v: Vertex) -> Result<(), RpError> {
    if v >= n {
        return Err(RpError::VertexOutOfRange { vertex: v, n });
    }
    Ok(())
}

/// Canonical shortest `s`-`t` path by BFS parent trace (smallest-label parent
/// one layer up).
pub fn compute_base_path<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex) -> Result<BasePath, RpError> {
    let ug = unit_copy(g)?;
    base_path_of(&ug, s, t, &mut OpCounter::default())
}

fn base_path_of(g: &Graph<u64>, s: Vertex, t: Vertex, ops: &mut OpCounter) -> Result<BasePath, RpError> {
    check_vertex(g.n(), s)?;
    check_vertex(g.n(), t)?;
    let (dist, parent) = bfs_tree_counted(g, s, ops);
    dist[t].ok_or(RpError::NoPath { s, t })?;
    let mut vertices = vec![t];
    let mut cur = t;
    while let Some(p) = parent[cur] {
        vertices.push(p);
        cur = p;
    }
    vertices.reverse();
    Ok(BasePath::from_vertices(g, vertices))
}

/// Shared per-instance data: the unit graph, the base path and `G'`.
pub(crate) struct Instance {
    pub g: Graph<u64>,
    pub base: BasePath,
    pub gp: Graph<u64>,
    pub gp_rev: Graph<u64>,
    pub c: usize,
}

impl Instance {
    fn new(g: Graph<u64>, base: BasePath) -> Self {
        let gp = g.filter_map(|u, v, w| (!base.is_path_edge(u, v)).then_some(w));
        let gp_rev = gp.reversed();
        let c = sqrt_threshold(g.n());
        Instance {
            g,
            base,
            gp,
            gp_rev,
            c,
        }
    }

    pub(crate) fn build<W: Weight>(g: &Graph<W>, base: &BasePath) -> Result<Self, RpError> {
        let ug = unit_copy(g)?;
        Ok(Instance::new(ug, base.clone()))
    }
}

/// One entry of the detour set: `x ∈ V_√n`, its index `ρ(x)`, and a path of
/// exactly `c` edges from `v_ρ` to `x` in `G'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DetourEntry {
    pub x: Vertex,
    pub rho: usize,
    pub path: Vec<Vertex>,
}

/// The detour set `𝒟ₙ`, one entry per vertex, sorted by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct DetourSet {
    pub c: usize,
    pub entries: Vec<DetourEntry>,
}

impl DetourSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `x ↦ ρ(x)`.
    pub fn pairs(&self) -> BTreeMap<Vertex, usize> {
        self.entries.iter().map(|e| (e.x, e.rho)).collect()
    }

    /// The paths as a hitting-set family with `L = c + 1` vertices each.
    pub fn family(&self) -> PathFamily {
        PathFamily {
            members: self.entries.iter().map(|e| e.path.clone()).collect(),
            l: self.c + 1,
        }
    }

    fn from_map(c: usize, map: BTreeMap<Vertex, (usize, Vec<Vertex>)>) -> Self {
        DetourSet {
            c,
            entries: map
                .into_iter()
                .map(|(x, (rho, path))| DetourEntry { x, rho, path })
                .collect(),
        }
    }
}

/// Greedy pivots hitting every detour path (`L = ⌈√n⌉ + 1` vertices each).
pub fn select_long_pivots(d: &DetourSet, n: usize) -> Result<PivotSet, HittingError> {
    greedy_pivot_selection(&d.family(), n)
}

/// Which algorithm computes the detour set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetourAlgo {
    #[default]
    Trees,
    Decremental,
}

#[derive(Debug, Clone, Default)]
pub struct RpOptions {
    pub algo: DetourAlgo,
    /// Test hook: adds one to every finite off-diagonal short-detour entry so
    /// the verifier has something to catch.
    #[doc(hidden)]
    pub corrupt_rd: bool,
}

/// How the reported length for an edge was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    /// `P[s, v_a] ∘ (shortest v_a→v_b path in G') ∘ P[v_b, t]`.
    Short { a: usize, b: usize },
    /// `P[s, v_enter] ∘ (v_enter→r in G') ∘ (r→v_exit in G') ∘ P[v_exit, t]`.
    Long { pivot: Vertex, enter: usize, exit: usize },
}

/// Operation tallies per stage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct RpCounters {
    pub base: OpCounter,
    pub rd: OpCounter,
    pub window: OpCounter,
    pub detour: OpCounter,
    pub long: OpCounter,
}

impl RpCounters {
    pub fn total(&self) -> OpCounter {
        let mut t = OpCounter::default();
        for c in [self.base, self.rd, self.window, self.detour, self.long] {
            t.absorb(c);
        }
        t
    }
}

/// Full replacement-paths output.
#[derive(Debug, Clone)]
pub struct RpResult {
    pub base: BasePath,
    /// `d_G(s, t, e_i)` for every path edge, `None` when `t` becomes unreachable.
    pub lengths: Vec<Option<usize>>,
    pub provenance: Vec<Option<Provenance>>,
    pub short: Vec<Option<usize>>,
    pub long: Vec<Option<usize>>,
    pub detours: DetourSet,
    pub pivots: PivotSet,
    pub counters: RpCounters,
    pub decremental: Option<DecrementalStats>,
    gp: Graph<u64>,
}

impl RpResult {
    /// Rebuilds a concrete replacement path for edge `i`.
    pub fn witness(&self, i: usize) -> Option<Path<u64>> {
        let prov = self.provenance[i]?;
        let p = self.base.vertices();
        let k = self.base.k();
        let mut out: Vec<Vertex> = Vec::new();
        let push_gp = |from: Vertex, to: Vertex, out: &mut Vec<Vertex>| -> Option<()> {
            let (_, parent) = bfs_tree(&self.gp, from);
            let mut seg = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur]?;
                seg.push(cur);
            }
            seg.reverse();
            out.extend_from_slice(&seg[1..]);
            Some(())
        };
        match prov {
            Provenance::Short { a, b } => {
                out.extend_from_slice(&p[..=a]);
                push_gp(p[a], p[b], &mut out)?;
                out.extend_from_slice(&p[b + 1..=k]);
            }
            Provenance::Long { pivot, enter, exit } => {
                out.extend_from_slice(&p[..=enter]);
                push_gp(p[enter], pivot, &mut out)?;
                push_gp(pivot, p[exit], &mut out)?;
                out.extend_from_slice(&p[exit + 1..=k]);
            }
        }
        let weight = (out.len() - 1) as u64;
        Some(Path::from_parts(out, weight))
    }

    /// `G' = G` minus the base path edges.
    pub fn g_prime(&self) -> &Graph<u64> {
        &self.gp
    }
}

/// Replacement paths with the default (trees) detour-set algorithm.
pub fn replacement_paths<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex) -> Result<RpResult, RpError> {
    replacement_paths_with(g, s, t, &RpOptions::default())
}

pub fn replacement_paths_with<W: Weight>(
    g: &Graph<W>,
    s: Vertex,
    t: Vertex,
    opts: &RpOptions,
) -> Result<RpResult, RpError> {
    let ug = unit_copy(g)?;
    let mut counters = RpCounters::default();
    let base = base_path_of(&ug, s, t, &mut counters.base)?;
    let inst = Instance::new(ug, base);
    let k = inst.base.k();

    let (mut rd, forests) = short::rd_table_and_forests(&inst, &mut counters.rd);
    if opts.corrupt_rd {
        rd.corrupt();
    }
    let (short, short_via) = short::sliding_window(&inst.base, &rd, &mut counters.window);

    let (detours, decremental) = match opts.algo {
        DetourAlgo::Trees => (detour::trees_from_forests(&inst, &forests), None),
        DetourAlgo::Decremental => {
            let (d, stats) = detour::decremental(&inst, &mut counters.detour);
            (d, Some(stats))
        }
    };
    let pivots = select_long_pivots(&detours, inst.g.n()).expect("detour paths have c + 1 distinct vertices");
    let (long, long_via) = long::through_pivots(&inst, &pivots, &mut counters.long);

    let mut lengths = Vec::with_capacity(k);
    let mut provenance = Vec::with_capacity(k);
    for i in 0..k {
        let pick = match (short[i], long[i]) {
            (Some(a), Some(b)) if b < a => Some((b, long_via[i].map(LongVia::provenance))),
            (Some(a), _) => Some((a, short_via[i].map(ShortVia::provenance))),
            (None, Some(b)) => Some((b, long_via[i].map(LongVia::provenance))),
            (None, None) => None,
        };
        lengths.push(pick.map(|p| p.0));
        provenance.push(pick.and_then(|p| p.1));
    }

    Ok(RpResult {
        base: inst.base,
        lengths,
        provenance,
        short,
        long,
        detours,
        pivots,
        counters,
        decremental,
        gp: inst.gp,
    })
}

/// Length of the second simple shortest `s`-`t` path, `None` if there is none.
pub fn second_shortest_path<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex) -> Result<Option<usize>, RpError> {
    let r = replacement_paths(g, s, t)?;
    Ok(r.lengths.iter().flatten().copied().min())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_vertex() -> Graph<u64> {
        Graph::unit(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap()
    }

    #[test]
    fn base_path_examples() {
        let g = Graph::<u64>::unit(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(compute_base_path(&g, 0, 2).unwrap().vertices(), &[0, 1, 2]);
        let diamond = Graph::<u64>::unit(4, [(0, 2), (0, 1), (2, 3), (1, 3)]).unwrap();
        assert_eq!(compute_base_path(&diamond, 0, 3).unwrap().vertices(), &[0, 1, 3]);
        assert_eq!(
            compute_base_path(&g, 2, 0),
            Err(RpError::NoPath { s: 2, t: 0 })
        );
    }

    #[test]
    fn rejects_weighted_input() {
        let g = Graph::from_edges(2, [(0, 1, 2u64)]).unwrap();
        assert_eq!(replacement_paths(&g, 0, 1).err(), Some(RpError::NotUnitWeighted));
    }

    #[test]
    fn single_edge() {
        let g = Graph::<u64>::unit(2, [(0, 1)]).unwrap();
        let r = replacement_paths(&g, 0, 1).unwrap();
        assert_eq!(r.lengths, vec![None]);
        assert_eq!(second_shortest_path(&g, 0, 1).unwrap(), None);
    }

    #[test]
    fn four_vertex_example() {
        let g = four_vertex();
        for algo in [DetourAlgo::Trees, DetourAlgo::Decremental] {
            let r = replacement_paths_with(&g, 0, 2, &RpOptions { algo, ..Default::default() }).unwrap();
            assert_eq!(r.lengths, vec![Some(2), Some(2)]);
            assert!(r.detours.is_empty());
            let w = r.witness(0).unwrap();
            assert_eq!(w.vertices(), &[0, 3, 2]);
        }
        assert_eq!(second_shortest_path(&g, 0, 2).unwrap(), Some(2));
    }

    #[test]
    fn triangle_second_shortest() {
        let g = Graph::<u64>::unit(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        // the base path is the direct edge; its only replacement has length 2
        assert_eq!(second_shortest_path(&g, 0, 2).unwrap(), Some(2));
    }

    #[test]
    fn corrupt_hook_changes_output() {
        let g = four_vertex();
        let opts = RpOptions {
            corrupt_rd: true,
            ..Default::default()
        };
        let r = replacement_paths_with(&g, 0, 2, &opts).unwrap();
        assert_eq!(r.lengths, vec![Some(3), Some(3)]);
    }

    #[test]
    fn threshold_values() {
        assert_eq!(sqrt_threshold(1), 1);
        assert_eq!(sqrt_threshold(4), 2);
        assert_eq!(sqrt_threshold(5), 3);
        assert_eq!(sqrt_threshold(6400), 80);
    }
}
