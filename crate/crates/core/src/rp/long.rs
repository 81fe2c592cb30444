//! Long detours through pivots.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vertex};
use crate::hitting::PivotSet;
use crate::sssp::{bfs_counted, OpCounter};
use crate::weight::Weight;

use super::{BasePath, Instance, Provenance, RpError};

/// Pivot and path indices realising a long-detour value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LongVia {
    pub pivot: Vertex,
    pub enter: usize,
    pub exit: usize,
}

impl LongVia {
    pub(crate) fn provenance(self) -> Provenance {
        Provenance::Long {
            pivot: self.pivot,
            enter: self.enter,
            exit: self.exit,
        }
    }
}

/// For every path edge, the shortest replacement forced through some pivot.
pub fn long_detour_lengths<W: Weight>(
    g: &Graph<W>,
    base: &BasePath,
    pivots: &PivotSet,
) -> Result<Vec<Option<usize>>, RpError> {
    let inst = Instance::build(g, base)?;
    Ok(through_pivots(&inst, pivots, &mut OpCounter::default()).0)
}

pub(crate) fn through_pivots(
    inst: &Instance,
    pivots: &PivotSet,
    ops: &mut OpCounter,
) -> (Vec<Option<usize>>, Vec<Option<LongVia>>) {
    let k = inst.base.k();
    let mut best: Vec<Option<(usize, LongVia)>> = vec![None; k];
    for &r in &pivots.pivots {
        let from_r = bfs_counted(&inst.gp, r, ops);
        let to_r = bfs_counted(&inst.gp_rev, r, ops);
        let v = |j: usize| inst.base.vertex(j);

        // Q_in holds j ≤ i keyed j + d(v_j, r); Q_out holds j > i keyed
        // d(r, v_j) + (k − j)
        let mut q_in: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut q_out: BTreeSet<(usize, usize)> = BTreeSet::new();
        let in_key = |j: usize| to_r[v(j)].map(|d| j + d);
        let out_key = |j: usize| from_r[v(j)].map(|d| d + (k - j));
        for j in 1..=k {
            if let Some(x) = out_key(j) {
                q_out.insert((x, j));
                ops.pq_ops += 1;
            }
        }
        for i in 0..k {
            if let Some(x) = in_key(i) {
                q_in.insert((x, i));
                ops.pq_ops += 1;
            }
            if i > 0 {
                if let Some(x) = out_key(i) {
                    q_out.remove(&(x, i));
                    ops.pq_ops += 1;
                }
            }
            ops.pq_ops += 2;
            if let (Some(&(a, enter)), Some(&(b, exit))) = (q_in.first(), q_out.first()) {
                let cand = a + b;
                if best[i].is_none_or(|(x, _)| cand < x) {
                    best[i] = Some((cand, LongVia { pivot: r, enter, exit }));
                }
            }
        }
    }
    best.into_iter().map(|b| (b.map(|x| x.0), b.map(|x| x.1))).unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rp::compute_base_path;

    #[test]
    fn no_pivots_means_no_long_detours() {
        let g = Graph::<u64>::unit(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        let base = compute_base_path(&g, 0, 2).unwrap();
        let r = long_detour_lengths(&g, &base, &PivotSet::default()).unwrap();
        assert_eq!(r, vec![None, None]);
    }

    #[test]
    fn four_vertex_through_three() {
        let g = Graph::<u64>::unit(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        let base = compute_base_path(&g, 0, 2).unwrap();
        let r = long_detour_lengths(&g, &base, &PivotSet { pivots: vec![3] }).unwrap();
        assert_eq!(r, vec![Some(2), Some(2)]);
    }
}
