//! Deterministic greedy hitting sets.
//!
//! Given `q` vertex sets of size at least `L` over a universe of `n` vertices,
//! the greedy rule (repeatedly take the vertex contained in the most sets not
//! yet hit) returns at most `⌈(n/L)·ln q⌉ + 1` vertices.

use std::cmp::Reverse;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HittingError {
    #[error("family member {index} is empty")]
    EmptyMember { index: usize },
    #[error("family member {index} has {size} distinct vertices, fewer than L = {l}")]
    MemberTooSmall { index: usize, size: usize, l: usize },
    #[error("vertex {vertex} is outside the universe of {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("counter of vertex {vertex} is {counter}, but {actual} surviving members contain it")]
    CounterDrift {
        vertex: Vertex,
        counter: usize,
        actual: usize,
    },
}

/// A family of vertex sets, each guaranteed to hold at least `l` vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PathFamily {
    pub members: Vec<Vec<Vertex>>,
    pub l: usize,
}

impl PathFamily {
    pub fn new(l: usize) -> Self {
        PathFamily {
            members: Vec::new(),
            l,
        }
    }

    pub fn push(&mut self, member: Vec<Vertex>) {
        self.members.push(member);
    }

    pub fn q(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// A set of pivots, kept in the order greedy selected them.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PivotSet {
    pub pivots: Vec<Vertex>,
}

impl PivotSet {
    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.pivots.contains(&v)
    }

    pub fn sorted(&self) -> Vec<Vertex> {
        let mut v = self.pivots.clone();
        v.sort_unstable();
        v
    }

    /// Membership bitmap over `0..n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &p in &self.pivots {
            m[p] = true;
        }
        m
    }
}

/// `⌈(n/L)·ln q⌉ + 1`, or 0 for an empty family.
pub fn greedy_bound(n: usize, l: usize, q: usize) -> usize {
    if q == 0 {
        return 0;
    }
    let x = (n as f64 / l as f64) * (q as f64).ln();
    x.ceil().max(0.0) as usize + 1
}

/// `true` iff every member contains a pivot.
pub fn verify_hitting(family: &PathFamily, pivots: &PivotSet) -> bool {
    let set: BTreeSet<Vertex> = pivots.pivots.iter().copied().collect();
    family
        .members
        .iter()
        .all(|m| m.iter().any(|v| set.contains(v)))
}

/// Greedy pivot selection. Each member is cut to its first `L` distinct
/// vertices; ties for the largest counter go to the smallest label.
pub fn greedy_pivot_selection(family: &PathFamily, n: usize) -> Result<PivotSet, HittingError> {
    select(family, n, false)
}

/// As [`greedy_pivot_selection`], re-checking after every pick that each
/// counter equals the number of surviving members containing its vertex.
pub fn greedy_pivot_selection_audited(
    family: &PathFamily,
    n: usize,
) -> Result<PivotSet, HittingError> {
    select(family, n, true)
}

fn truncate(member: &[Vertex], l: usize, seen: &mut [bool]) -> Vec<Vertex> {
    let mut out = Vec::with_capacity(l);
    for &v in member {
        if out.len() == l {
            break;
        }
        if !seen[v] {
            seen[v] = true;
            out.push(v);
        }
    }
    for &v in &out {
        seen[v] = false;
    }
    out
}

fn select(family: &PathFamily, n: usize, audit: bool) -> Result<PivotSet, HittingError> {
    let l = family.l.max(1);
    let mut seen = vec![false; n];
    let mut sets: Vec<Vec<Vertex>> = Vec::with_capacity(family.q());
    for (index, member) in family.members.iter().enumerate() {
        if member.is_empty() {
            return Err(HittingError::EmptyMember { index });
        }
        if let Some(&vertex) = member.iter().find(|&&v| v >= n) {
            return Err(HittingError::VertexOutOfRange { vertex, n });
        }
        let cut = truncate(member, l, &mut seen);
        if cut.len() < family.l {
            return Err(HittingError::MemberTooSmall {
                index,
                size: cut.len(),
                l: family.l,
            });
        }
        sets.push(cut);
    }

    // lists[v]: members containing v; count[v]: how many of them survive
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in sets.iter().enumerate() {
        for &v in s {
            lists[v].push(i);
        }
    }
    let mut count: Vec<usize> = lists.iter().map(Vec::len).collect();
    let mut index: BTreeSet<(Reverse<usize>, Vertex)> = (0..n)
        .filter(|&v| count[v] > 0)
        .map(|v| (Reverse(count[v]), v))
        .collect();
    let mut alive = vec![true; sets.len()];
    let mut pivots = Vec::new();

    while let Some((_, v)) = index.pop_first() {
        pivots.push(v);
        for &d in &lists[v] {
            if !alive[d] {
                continue;
            }
            alive[d] = false;
            for &u in &sets[d] {
                if u != v {
                    index.remove(&(Reverse(count[u]), u));
                }
                count[u] -= 1;
                if u != v && count[u] > 0 {
                    index.insert((Reverse(count[u]), u));
                }
            }
        }
        if audit {
            for u in 0..n {
                let actual = lists[u].iter().filter(|&&d| alive[d]).count();
                if actual != count[u] {
                    return Err(HittingError::CounterDrift {
                        vertex: u,
                        counter: count[u],
                        actual,
                    });
                }
            }
        }
    }
    Ok(PivotSet { pivots })
}
