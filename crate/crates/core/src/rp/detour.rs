//! The detour set `𝒟ₙ`, computed two ways.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::sssp::{OpCounter, ShortestPathTree};
use crate::weight::Weight;

use super::{short, BasePath, DetourSet, Instance, RpError};

/// From the `2c` phase forests: for every off-path vertex `x`, the smallest
/// path index `i` such that some forest reaches `x` from root `v_i` with
/// exactly `c` edges, with that tree path.
pub fn compute_detour_set_trees<W: Weight>(g: &Graph<W>, base: &BasePath) -> Result<DetourSet, RpError> {
    let inst = Instance::build(g, base)?;
    let (_, forests) = short::rd_table_and_forests(&inst, &mut OpCounter::default());
    Ok(trees_from_forests(&inst, &forests))
}

pub(crate) fn trees_from_forests(inst: &Instance, forests: &[ShortestPathTree<u64>]) -> DetourSet {
    let c = inst.c;
    let mut chosen: BTreeMap<Vertex, (usize, Vec<Vertex>)> = BTreeMap::new();
    for x in 0..inst.g.n() {
        if inst.base.position(x).is_some() {
            continue;
        }
        let mut best: Option<(usize, usize)> = None;
        for (z, tree) in forests.iter().enumerate() {
            let (Some(d), Some(root)) = (tree.dist[x], tree.origin[x]) else {
                continue;
            };
            let i = inst.base.position(root).expect("roots are path vertices");
            let offset = ((i - z) / (2 * c) * c) as u64;
            if d == offset + c as u64 && best.is_none_or(|(bi, _)| i < bi) {
                best = Some((i, z));
            }
        }
        if let Some((i, z)) = best {
            let path = forests[z].vertices_to(x).expect("reached");
            debug_assert_eq!(path.len(), c + 1);
            chosen.insert(x, (i, path));
        }
    }
    DetourSet::from_map(c, chosen)
}

/// Work instrumentation for the decremental algorithm.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DecrementalStats {
    /// Per vertex: number of iterations in which it was in the recomputed subtree.
    pub memberships: Vec<usize>,
    /// Dijkstra runs over recomputed subtrees.
    pub recomputations: usize,
}

impl DecrementalStats {
    pub fn max_membership(&self) -> usize {
        self.memberships.iter().copied().max().unwrap_or(0)
    }
}

/// `(unit edges, path edges)`: stands in for path edges of weight `ε < 1/n`.
type Lex = (usize, usize);

/// Removes path vertices from the back, maintaining a shortest-path tree
/// from `s` trimmed at `c` unit edges. A vertex whose distance has exactly `c`
/// unit edges joins `V_√n` with `ρ` equal to its count of path edges, and the
/// last `c` tree edges become its detour path.
pub fn compute_detour_set_decremental<W: Weight>(
    g: &Graph<W>,
    base: &BasePath,
) -> Result<(DetourSet, DecrementalStats), RpError> {
    let inst = Instance::build(g, base)?;
    Ok(decremental(&inst, &mut OpCounter::default()))
}

struct Trimmed<'a> {
    inst: &'a Instance,
    dist: Vec<Option<Lex>>,
    parent: Vec<Option<Vertex>>,
    children: Vec<BTreeSet<Vertex>>,
    removed: Vec<bool>,
}

impl Trimmed<'_> {
    fn edge_cost(&self, u: Vertex, v: Vertex) -> Lex {
        if self.inst.base.is_path_edge(u, v) {
            (0, 1)
        } else {
            (1, 0)
        }
    }

    fn add(a: Lex, b: Lex) -> Lex {
        (a.0 + b.0, a.1 + b.1)
    }

    fn detach(&mut self, v: Vertex) {
        if let Some(p) = self.parent[v].take() {
            self.children[p].remove(&v);
        }
    }

    fn attach(&mut self, v: Vertex, p: Vertex) {
        self.parent[v] = Some(p);
        self.children[p].insert(v);
    }

    /// Last `c` edges of the tree path to `x`.
    fn tail(&self, x: Vertex) -> Vec<Vertex> {
        let c = self.inst.c;
        let mut out = vec![x];
        let mut cur = x;
        while out.len() <= c {
            cur = self.parent[cur].expect("tree path has at least c edges");
            out.push(cur);
        }
        out.reverse();
        out
    }

    /// Lex Dijkstra over `region`, seeded through in-edges from live vertices
    /// outside it. Ties go to the smaller predecessor label.
    fn settle(&mut self, region: &[Vertex], inside: &[bool], ops: &mut OpCounter) {
        let g = &self.inst.g;
        let mut best: BTreeMap<Vertex, (Lex, Vertex)> = BTreeMap::new();
        let mut heap = BinaryHeap::new();
        for &x in region {
            for (u, _) in g.in_edges(x) {
                ops.relaxations += 1;
                if inside[u] || self.removed[u] {
                    continue;
                }
                let Some(du) = self.dist[u] else { continue };
                let cand = Self::add(du, self.edge_cost(u, x));
                let better = match best.get(&x) {
                    None => true,
                    Some(&(b, p)) => cand < b || (cand == b && u < p),
                };
                if better {
                    best.insert(x, (cand, u));
                }
            }
            if let Some(&(d, _)) = best.get(&x) {
                heap.push(Reverse((d, x)));
                ops.pq_ops += 1;
            }
        }
        let mut done = BTreeSet::new();
        while let Some(Reverse((d, u))) = heap.pop() {
            ops.pq_ops += 1;
            if done.contains(&u) || best.get(&u).map(|b| b.0) != Some(d) {
                continue;
            }
            done.insert(u);
            for (v, _) in g.out_edges(u) {
                ops.relaxations += 1;
                if !inside[v] || done.contains(&v) {
                    continue;
                }
                let cand = Self::add(d, self.edge_cost(u, v));
                let better = match best.get(&v) {
                    None => true,
                    Some(&(b, p)) => cand < b || (cand == b && u < p),
                };
                if better {
                    let push = best.get(&v).is_none_or(|&(b, _)| cand < b);
                    best.insert(v, (cand, u));
                    if push {
                        heap.push(Reverse((cand, v)));
                        ops.pq_ops += 1;
                    }
                }
            }
        }
        for &x in region {
            match best.get(&x) {
                Some(&(d, p)) if d.0 <= self.inst.c => {
                    self.dist[x] = Some(d);
                    self.attach(x, p);
                }
                _ => self.dist[x] = None,
            }
        }
    }
}

pub(crate) fn decremental(inst: &Instance, ops: &mut OpCounter) -> (DetourSet, DecrementalStats) {
    let n = inst.g.n();
    let c = inst.c;
    let k = inst.base.k();
    let mut tr = Trimmed {
        inst,
        dist: vec![None; n],
        parent: vec![None; n],
        children: vec![BTreeSet::new(); n],
        removed: vec![false; n],
    };
    let mut stats = DecrementalStats {
        memberships: vec![0; n],
        recomputations: 0,
    };
    let mut chosen: BTreeMap<Vertex, (usize, Vec<Vertex>)> = BTreeMap::new();

    // initial tree: everything except s is a region reached from s
    let s = inst.base.s();
    tr.dist[s] = Some((0, 0));
    let region: Vec<Vertex> = (0..n).filter(|&v| v != s).collect();
    let mut inside = vec![true; n];
    inside[s] = false;
    tr.settle(&region, &inside, ops);
    for &x in &region {
        if tr.dist[x].is_some_and(|d| d.0 == c) {
            chosen.insert(x, (tr.dist[x].expect("checked").1, tr.tail(x)));
        }
    }
    inside.iter_mut().for_each(|f| *f = false);

    for i in (0..k).rev() {
        let gone = inst.base.vertex(i + 1);
        // subtree of v_{i+1}, without v_{i+1} itself
        let mut sub = Vec::new();
        let mut stack: Vec<Vertex> = tr.children[gone].iter().copied().collect();
        while let Some(v) = stack.pop() {
            sub.push(v);
            stack.extend(tr.children[v].iter().copied());
        }
        tr.removed[gone] = true;
        tr.dist[gone] = None;
        for v in std::iter::once(gone).chain(sub.iter().copied()) {
            tr.detach(v);
            tr.children[v].clear();
        }
        if sub.is_empty() {
            continue;
        }
        sub.sort_unstable();
        stats.recomputations += 1;
        for &v in &sub {
            inside[v] = true;
            stats.memberships[v] += 1;
            tr.dist[v] = None;
        }
        tr.settle(&sub, &inside, ops);
        for &v in &sub {
            inside[v] = false;
        }
        for &x in &sub {
            if let Some((a, b)) = tr.dist[x] {
                if a == c {
                    chosen.insert(x, (b, tr.tail(x)));
                }
            }
        }
    }
    (DetourSet::from_map(c, chosen), stats)
}
