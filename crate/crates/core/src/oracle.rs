//! Brute-force references.
//!
//! Nothing here depends on [`crate::rp`] or [`crate::dso`]; the functions use
//! only the graph primitives, plain searches and exhaustive enumeration.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Element, FaultSet, Graph, Vertex};
use crate::sssp::{bfs, dijkstra, NegativeCycle};
use crate::weight::{min_dist, Weight};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("no path from {s} to {t}")]
    NoPath { s: Vertex, t: Vertex },
}

/// Per-edge replacement lengths along the canonical shortest path.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveRp<W> {
    pub path: Vec<Vertex>,
    pub lengths: Vec<Option<W>>,
}

/// Canonical shortest `s`-`t` path by Dijkstra parent trace.
pub fn canonical_path<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex) -> Option<Vec<Vertex>> {
    dijkstra(g, s).vertices_to(t)
}

/// `d_G(s, t, F)` by Dijkstra on `G \ F` (Bellman–Ford if weights are
/// negative).
pub fn naive_dso_distance<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex, faults: &FaultSet) -> Option<W> {
    if faults.contains_vertex(s) || faults.contains_vertex(t) {
        return None;
    }
    let h = g.without(faults);
    if h.has_negative_weight() {
        bellman_ford(&h, s).expect("no negative cycle")[t]
    } else {
        dijkstra(&h, s).dist[t]
    }
}

/// Runs Dijkstra once per edge of the canonical path, with that edge removed.
pub fn naive_replacement_paths<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex) -> Result<NaiveRp<W>, OracleError> {
    let path = canonical_path(g, s, t).ok_or(OracleError::NoPath { s, t })?;
    let lengths = path
        .windows(2)
        .map(|e| {
            let f: FaultSet = [Element::Edge(e[0], e[1])].into_iter().collect();
            naive_dso_distance(g, s, t, &f)
        })
        .collect();
    Ok(NaiveRp { path, lengths })
}

/// Single-source Bellman–Ford.
pub fn bellman_ford<W: Weight>(g: &Graph<W>, s: Vertex) -> Result<Vec<Option<W>>, NegativeCycle> {
    let n = g.n();
    let mut dist: Vec<Option<W>> = vec![None; n];
    dist[s] = Some(W::zero());
    for round in 0..=n {
        let mut changed = false;
        for (u, v, w) in g.edges() {
            if let Some(du) = dist[u] {
                if dist[v].is_none_or(|dv| du + w < dv) {
                    dist[v] = Some(du + w);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(dist);
        }
        if round == n {
            break;
        }
    }
    Err(NegativeCycle)
}

/// Every simple `s`-`t` path in `G \ F` with at most `max_hops` edges.
pub fn simple_paths<W: Weight>(
    g: &Graph<W>,
    s: Vertex,
    t: Vertex,
    max_hops: usize,
    faults: &FaultSet,
) -> Vec<Vec<Vertex>> {
    fn go<W: Weight>(
        g: &Graph<W>,
        t: Vertex,
        max_hops: usize,
        faults: &FaultSet,
        on: &mut Vec<bool>,
        cur: &mut Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let u = *cur.last().expect("non-empty");
        if u == t {
            out.push(cur.clone());
            return;
        }
        if cur.len() > max_hops {
            return;
        }
        for (v, _) in g.out_edges(u) {
            if on[v] || !faults.allows_edge(u, v) {
                continue;
            }
            on[v] = true;
            cur.push(v);
            go(g, t, max_hops, faults, on, cur, out);
            cur.pop();
            on[v] = false;
        }
    }
    let mut out = Vec::new();
    if faults.contains_vertex(s) || faults.contains_vertex(t) {
        return out;
    }
    let mut on = vec![false; g.n()];
    on[s] = true;
    go(g, t, max_hops, faults, &mut on, &mut vec![s], &mut out);
    out
}

/// Lightest simple `s`-`t` path with at most `max_hops` edges, by enumeration.
pub fn enumerated_distance<W: Weight>(
    g: &Graph<W>,
    s: Vertex,
    t: Vertex,
    max_hops: usize,
    faults: &FaultSet,
) -> Option<W> {
    simple_paths(g, s, t, max_hops, faults)
        .into_iter()
        .map(|p| {
            p.windows(2)
                .map(|e| g.edge_weight(e[0], e[1]).expect("enumerated edges exist"))
                .fold(W::zero(), |a, b| a + b)
        })
        .fold(None, |best, w| min_dist(best, Some(w)))
}

/// `⌈√n⌉`.
pub fn ceil_sqrt(n: usize) -> usize {
    let mut c = (n as f64).sqrt() as usize;
    while c * c < n {
        c += 1;
    }
    while c > 0 && (c - 1) * (c - 1) >= n {
        c -= 1;
    }
    c
}

/// Position of every vertex on `path`.
fn positions(n: usize, path: &[Vertex]) -> Vec<Option<usize>> {
    let mut pos = vec![None; n];
    for (i, &v) in path.iter().enumerate() {
        pos[v] = Some(i);
    }
    pos
}

/// `G' = G` minus the edges of `path`.
pub fn without_path_edges<W: Weight>(g: &Graph<W>, path: &[Vertex]) -> Graph<W> {
    let pos = positions(g.n(), path);
    g.filter_map(|u, v, w| {
        let on_path = matches!((pos[u], pos[v]), (Some(a), Some(b)) if a + 1 == b);
        (!on_path).then_some(w)
    })
}

/// Minimum number of detour edges over all optimal replacement paths for the
/// `i`-th edge of `path`, where the detour is what remains after removing the
/// longest common prefix and suffix with `path`. `None` if the edge has no
/// replacement path.
///
/// Runs a three-phase (prefix, middle, suffix) dynamic program over the DAG of
/// shortest `s`-`t` paths in `G \ {e_i}`, which ranges over every optimal
/// replacement path at once.
pub fn min_detour_edges<W: Weight>(g: &Graph<W>, path: &[Vertex], i: usize) -> Option<usize> {
    let (s, t) = (path[0], *path.last().expect("non-empty"));
    let pos = positions(g.n(), path);
    let f: FaultSet = [Element::Edge(path[i], path[i + 1])].into_iter().collect();
    let h = g.without(&f);
    let ds = bfs(&h, s);
    let dt = bfs(&h.reversed(), t);
    let total = ds[t]?;
    let on_dag = |v: Vertex| matches!((ds[v], dt[v]), (Some(a), Some(b)) if a + b == total);

    let mut order: Vec<Vertex> = (0..g.n()).filter(|&v| on_dag(v)).collect();
    order.sort_by_key(|&v| ds[v]);
    const INF: usize = usize::MAX;
    let mut cost = vec![[INF; 3]; g.n()];
    cost[s][0] = 0;
    for &u in &order {
        let cu = cost[u];
        for (v, _) in h.out_edges(u) {
            if !on_dag(v) || ds[v] != ds[u].map(|d| d + 1) {
                continue;
            }
            let is_path_edge = matches!((pos[u], pos[v]), (Some(a), Some(b)) if a + 1 == b);
            let relax = |slot: &mut usize, c: usize| {
                if c < *slot {
                    *slot = c;
                }
            };
            if cu[0] != INF {
                if is_path_edge {
                    relax(&mut cost[v][0], cu[0]);
                    relax(&mut cost[v][2], cu[0]);
                }
                relax(&mut cost[v][1], cu[0] + 1);
            }
            if cu[1] != INF {
                relax(&mut cost[v][1], cu[1] + 1);
                if is_path_edge {
                    relax(&mut cost[v][2], cu[1]);
                }
            }
            if cu[2] != INF && is_path_edge {
                relax(&mut cost[v][2], cu[2]);
            }
        }
    }
    let best = cost[t].iter().copied().min().unwrap_or(INF);
    (best != INF).then_some(best)
}

/// Indices `i` of path edges whose every optimal replacement path has a
/// detour of more than `⌈√n⌉` edges. Edges without any replacement path are
/// left out.
pub fn enumerate_long_triples<W: Weight>(g: &Graph<W>, s: Vertex, t: Vertex) -> Result<Vec<usize>, OracleError> {
    let path = canonical_path(g, s, t).ok_or(OracleError::NoPath { s, t })?;
    let c = ceil_sqrt(g.n());
    Ok((0..path.len() - 1)
        .filter(|&i| min_detour_edges(g, &path, i).is_some_and(|d| d > c))
        .collect())
}

/// Hop distances in `G'` from every path vertex: `table[i][x] = d_{G'}(v_i, x)`.
pub fn path_vertex_distances<W: Weight>(g: &Graph<W>, path: &[Vertex]) -> Vec<Vec<Option<usize>>> {
    let gp = without_path_edges(g, path);
    path.iter().map(|&v| bfs(&gp, v)).collect()
}

/// `V_√n` with `ρ`, straight from the definitions: `x` is off the path, and
/// the first path index `i` with `d_{G'}(v_i, x) ≤ ⌈√n⌉` has equality.
pub fn definitional_detour_set<W: Weight>(g: &Graph<W>, path: &[Vertex]) -> BTreeMap<Vertex, usize> {
    let c = ceil_sqrt(g.n());
    let table = path_vertex_distances(g, path);
    let pos = positions(g.n(), path);
    let mut out = BTreeMap::new();
    for x in 0..g.n() {
        if pos[x].is_some() {
            continue;
        }
        let first = (0..path.len()).find(|&i| table[i][x].is_some_and(|d| d <= c));
        if let Some(i) = first {
            if table[i][x] == Some(c) {
                out.insert(x, i);
            }
        }
    }
    out
}

/// Like [`definitional_detour_set`], but under the distance of paths that are
/// internally disjoint from `path` (no intermediate path vertex).
pub fn disjoint_detour_set<W: Weight>(g: &Graph<W>, path: &[Vertex]) -> BTreeMap<Vertex, usize> {
    let c = ceil_sqrt(g.n());
    let pos = positions(g.n(), path);
    let gp = without_path_edges(g, path).filter_map(|_, v, w| pos[v].is_none().then_some(w));
    let table: Vec<Vec<Option<usize>>> = path.iter().map(|&v| bfs(&gp, v)).collect();
    let mut out = BTreeMap::new();
    for x in 0..g.n() {
        if pos[x].is_some() {
            continue;
        }
        let first = (0..path.len()).find(|&i| table[i][x].is_some_and(|d| d <= c));
        if let Some(i) = first {
            if table[i][x] == Some(c) {
                out.insert(x, i);
            }
        }
    }
    out
}
