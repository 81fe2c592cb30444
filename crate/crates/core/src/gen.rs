//! Seeded random graph generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// Generator RNG: ChaCha8, so streams are stable across platforms.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` digraph without self-loops. With `weights = Some((lo, hi))`
/// every edge gets a uniform integer weight in `lo..=hi`, otherwise weight 1.
pub fn gnp(n: usize, p: f64, weights: Option<(i64, i64)>, seed: u64) -> Graph<i64> {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p.clamp(0.0, 1.0)) {
                let w = match weights {
                    Some((lo, hi)) => rng.gen_range(lo..=hi),
                    None => 1,
                };
                edges.push((u, v, w));
            }
        }
    }
    Graph::from_edges(n, edges).expect("generated vertices are in range")
}

/// A generated instance with a designated source and target.
#[derive(Debug, Clone)]
pub struct PathPlus {
    pub graph: Graph<i64>,
    pub s: Vertex,
    pub t: Vertex,
}

/// Unit digraph built around the path `0 → 1 → … → h−1`, `h = ⌈n/2⌉`, plus up
/// to `q` extra edges.
///
/// Every off-path vertex gets a random anchor position on the path, and an
/// extra edge may only move forward by at most one position. No walk can
/// therefore beat the prefix path, which stays the canonical shortest
/// `0`-to-`h−1` path, while detours around any of its edges abound.
pub fn path_plus(n: usize, q: usize, seed: u64) -> PathPlus {
    let mut rng = rng(seed);
    let h = n.div_ceil(2).max(1);
    let mut pos = vec![0usize; n];
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); h];
    for (v, slot) in pos.iter_mut().enumerate() {
        *slot = if v < h { v } else { rng.gen_range(0..h) };
        buckets[*slot].push(v);
    }

    let mut edges: Vec<(Vertex, Vertex)> = (1..h).map(|i| (i - 1, i)).collect();
    let mut present: std::collections::HashSet<(Vertex, Vertex)> = edges.iter().copied().collect();
    let mut added = 0;
    let mut attempts = 0;
    while added < q && attempts < 20 * q + 100 && n > h {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let delta: i64 = rng.gen_range(-1..=1);
        let target = pos[u] as i64 + delta;
        if target < 0 || target >= h as i64 {
            continue;
        }
        let Some(&v) = buckets[target as usize].choose(&mut rng) else {
            continue;
        };
        if u == v || (u < h && v < h) || !present.insert((u, v)) {
            continue;
        }
        edges.push((u, v));
        added += 1;
    }
    let graph = Graph::unit(n, edges).expect("generated vertices are in range");
    PathPlus { graph, s: 0, t: h - 1 }
}

/// Unit digraph on the path `0 → … → h−1`, `h = ⌈n/2⌉`, where the remaining
/// vertices form off-path chains. A chain of `ℓ` edges leaves the path at
/// `v_a` and rejoins at `v_b` with `0 < b − a < ℓ`, so the prefix path stays
/// the unique shortest `0`-to-`h−1` path. Chains run up to `2⌈√n⌉` edges,
/// which plants long detours.
pub fn planted(n: usize, seed: u64) -> PathPlus {
    let mut rng = rng(seed);
    let h = n.div_ceil(2).max(1);
    let c = crate::rp::sqrt_threshold(n);
    let mut off: Vec<Vertex> = (h..n).collect();
    off.shuffle(&mut rng);
    let mut edges: Vec<(Vertex, Vertex)> = (1..h).map(|i| (i - 1, i)).collect();
    while !off.is_empty() && h >= 2 {
        let inner = rng.gen_range(1..=2 * c).min(off.len());
        let len = inner + 1;
        let a = rng.gen_range(0..h - 1);
        let b = a + rng.gen_range(1..=(len - 1).min(h - 1 - a));
        let chain: Vec<Vertex> = off.drain(..inner).collect();
        let mut prev = a;
        for &w in &chain {
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, b));
    }
    let graph = Graph::unit(n, edges).expect("generated vertices are in range");
    PathPlus { graph, s: 0, t: h - 1 }
}

/// A replacement-paths test case.
#[derive(Debug, Clone)]
pub struct RpCase {
    pub label: String,
    pub graph: Graph<i64>,
    pub s: Vertex,
    pub t: Vertex,
}

/// Vertex farthest from `s` in hops (smallest label on ties), or `s` itself.
pub fn farthest_from(g: &Graph<i64>, s: Vertex) -> Vertex {
    let dist = crate::sssp::bfs(g, s);
    let mut best = (0, s);
    for (v, d) in dist.iter().enumerate() {
        if let Some(d) = *d {
            if d > best.0 {
                best = (d, v);
            }
        }
    }
    best.1
}

/// The standard replacement-paths suite: 300 `G(n, p)` digraphs with
/// `n ∈ [5, 120]` and `p` cycling through 0.05, 0.1, 0.3 (queried from 0 to
/// the farthest reachable vertex), then 50 `path-plus` instances.
pub fn rp_suite() -> Vec<RpCase> {
    let mut meta = rng(0x5eed);
    let mut out = Vec::with_capacity(350);
    for idx in 0..300u64 {
        let n = meta.gen_range(5..=120);
        let p = [0.05, 0.1, 0.3][(idx % 3) as usize];
        let graph = gnp(n, p, None, 1000 + idx);
        let t = farthest_from(&graph, 0);
        out.push(RpCase {
            label: format!("gnp n={n} p={p} seed={}", 1000 + idx),
            graph,
            s: 0,
            t,
        });
    }
    for idx in 0..50u64 {
        let n = meta.gen_range(10..=120);
        let q = 2 * n;
        let inst = path_plus(n, q, 5000 + idx);
        out.push(RpCase {
            label: format!("path-plus n={n} q={q} seed={}", 5000 + idx),
            graph: inst.graph,
            s: inst.s,
            t: inst.t,
        });
    }
    out
}
