//! Short detours: the `RD` table and the sliding window over it.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};
use crate::sssp::{dijkstra_multi, OpCounter, ShortestPathTree};
use crate::weight::{PathKey, Weight};

use super::{BasePath, Instance, Provenance, RpError};

/// `rd[i][j] = d_{G'}(v_i, v_{i+j})` when that is at most `c`, else `None`.
///
/// `j` runs up to `c` inclusive: a detour of exactly `c` edges may rejoin the
/// path `c` positions later.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RdTable {
    pub c: usize,
    rows: Vec<Vec<Option<usize>>>,
}

impl RdTable {
    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.rows.get(i).and_then(|r| r.get(j).copied().flatten())
    }

    /// Number of path vertices `k + 1`.
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn corrupt(&mut self) {
        for row in &mut self.rows {
            for e in row.iter_mut().skip(1).flatten() {
                *e += 1;
            }
        }
    }
}

/// Builds the table with `2c` multi-source Dijkstra phases in `G'`.
pub fn compute_rd_table<W: Weight>(g: &Graph<W>, base: &BasePath) -> Result<RdTable, RpError> {
    let inst = Instance::build(g, base)?;
    Ok(rd_table_and_forests(&inst, &mut OpCounter::default()).0)
}

/// The table plus the phase shortest-path forests, which the trees variant
/// of the detour set reuses.
pub(crate) fn rd_table_and_forests(inst: &Instance, ops: &mut OpCounter) -> (RdTable, Vec<ShortestPathTree<u64>>) {
    let c = inst.c;
    let k = inst.base.k();
    let mut rows = vec![vec![None; c + 1]; k + 1];
    let mut forests = Vec::with_capacity(2 * c);
    for p in 0..2 * c {
        if p > k {
            break;
        }
        // phase p: root edges (r, v_{p+2qc}) of weight qc
        let seeds: Vec<(Vertex, PathKey<u64>)> = (0..)
            .map(|q| (q, p + 2 * q * c))
            .take_while(|&(_, i)| i <= k)
            .map(|(q, i)| {
                (
                    inst.base.vertex(i),
                    PathKey {
                        weight: (q * c) as u64,
                        hops: 1,
                    },
                )
            })
            .collect();
        let tree = dijkstra_multi(&inst.gp, &seeds, ops);
        for (q, i) in (0..).map(|q| (q, p + 2 * q * c)).take_while(|&(_, i)| i <= k) {
            let offset = (q * c) as u64;
            for j in 0..=c.min(k - i) {
                let Some(d) = tree.dist[inst.base.vertex(i + j)] else {
                    continue;
                };
                if d <= offset + c as u64 {
                    rows[i][j] = Some((d - offset) as usize);
                }
            }
        }
        forests.push(tree);
    }
    (RdTable { c, rows }, forests)
}

/// Window pair realising a short-detour value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShortVia {
    pub a: usize,
    pub b: usize,
}

impl ShortVia {
    pub(crate) fn provenance(self) -> Provenance {
        Provenance::Short { a: self.a, b: self.b }
    }
}

/// Best short-detour replacement length per path edge.
pub fn short_detour_lengths(base: &BasePath, rd: &RdTable) -> Vec<Option<usize>> {
    sliding_window(base, rd, &mut OpCounter::default()).0
}

/// For every edge `e_i`, the minimum of `a + rd[a][b−a] + (k−b)` over
/// `i−c ≤ a ≤ i < b ≤ i+c`, maintained in an ordered set.
pub(crate) fn sliding_window(
    base: &BasePath,
    rd: &RdTable,
    ops: &mut OpCounter,
) -> (Vec<Option<usize>>, Vec<Option<ShortVia>>) {
    let k = base.k();
    let c = rd.c;
    let mut queue: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let key = |a: usize, b: usize| rd.get(a, b - a).map(|d| a + d + (k - b));
    let mut lengths = Vec::with_capacity(k);
    let mut via = Vec::with_capacity(k);
    for i in 0..k {
        for b in i + 1..=(i + c).min(k) {
            if let Some(x) = key(i, b) {
                queue.insert((x, i, b));
                ops.pq_ops += 1;
            }
        }
        for a in i.saturating_sub(c)..i {
            if let Some(x) = key(a, i) {
                queue.remove(&(x, a, i));
                ops.pq_ops += 1;
            }
        }
        ops.pq_ops += 1;
        match queue.first() {
            Some(&(x, a, b)) => {
                lengths.push(Some(x));
                via.push(Some(ShortVia { a, b }));
            }
            None => {
                lengths.push(None);
                via.push(None);
            }
        }
    }
    (lengths, via)
}
