//! Fault-tolerant trees `FT^{L,f}(s,t)`.
//!
//! The root of the tree for `(s,t)` holds the lightest `s`-`t` path with at
//! most `L` edges. Below a node with path `P` there is one child per vertex and
//! per edge `a` of `P`, holding the lightest such path that also avoids `a`,
//! down to depth `f`. A query for `F` walks down from the root, each time
//! following the first element of `F` that lies on the current path.
//!
//! All trees for hop bound `i + 1` are computed from the trees for `i` by
//! the one-edge recurrence `d^{i+1}(u,v,A) = min_z ω(u,z) + d^i(z,v,A)`, where
//! the right-hand side is a query on the level-`i` tree of `(z,v)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{Element, FaultSet, Graph, Vertex};
use crate::hitting::PathFamily;
use crate::weight::{PathKey, Weight};

use super::DsoError;

pub type NodeId = u32;

/// A node of a fault-tolerant tree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtNode<W> {
    /// Key of `path`, `None` for EMPTY.
    pub key: Option<PathKey<W>>,
    pub path: Vec<Vertex>,
    /// One child per entry of [`FtNode::members`]; empty at depth `f` and
    /// below EMPTY nodes.
    pub children: Vec<NodeId>,
    #[serde(skip)]
    members: Vec<Element>,
}

impl<W: Weight> FtNode<W> {
    fn new(key: Option<PathKey<W>>, path: Vec<Vertex>) -> Self {
        let mut node = FtNode {
            key,
            path,
            children: Vec::new(),
            members: Vec::new(),
        };
        node.reindex();
        node
    }

    fn empty() -> Self {
        FtNode::new(None, Vec::new())
    }

    pub(crate) fn reindex(&mut self) {
        let mut members: Vec<Element> = self.path.iter().map(|&v| Element::Vertex(v)).collect();
        members.extend(self.path.windows(2).map(|p| Element::Edge(p[0], p[1])));
        members.sort_unstable();
        self.members = members;
    }

    pub fn dist(&self) -> Option<W> {
        self.key.map(|k| k.weight)
    }

    pub fn is_empty(&self) -> bool {
        self.key.is_none()
    }

    pub fn hops(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    /// Vertices and edges of the path in canonical order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    /// Index of the first element of `faults` on this node's path.
    fn first_hit(&self, faults: &FaultSet) -> Option<usize> {
        faults.iter().find_map(|e| self.members.binary_search(e).ok())
    }
}

/// `FT^{L,f}(s,t)` as an arena; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtTree<W> {
    pub s: Vertex,
    pub t: Vertex,
    pub nodes: Vec<FtNode<W>>,
}

impl<W: Weight> FtTree<W> {
    pub fn root(&self) -> &FtNode<W> {
        &self.nodes[0]
    }

    /// The node a query for `faults` ends at. With `|faults| ≤ f` its path
    /// avoids `faults` and is the lightest such path with at most `L` edges.
    pub fn locate(&self, faults: &FaultSet) -> &FtNode<W> {
        let mut node = self.root();
        while !node.children.is_empty() {
            match node.first_hit(faults) {
                Some(i) => node = &self.nodes[node.children[i] as usize],
                None => break,
            }
        }
        node
    }

    /// Every node with its root-to-node list of avoided elements.
    pub fn walk(&self) -> Vec<(Vec<Element>, &FtNode<W>)> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(Vec::new(), 0 as NodeId)];
        while let Some((avoided, id)) = stack.pop() {
            let node = &self.nodes[id as usize];
            for (e, &c) in node.members.iter().zip(&node.children).rev() {
                let mut a = avoided.clone();
                a.push(*e);
                stack.push((a, c));
            }
            out.push((avoided, node));
        }
        out
    }
}

/// `d^L(s,t,F)` read off the tree, `None` for infinity. Requires `|F| ≤ f`.
pub fn query_ft_tree<W: Weight>(tree: &FtTree<W>, faults: &FaultSet) -> Option<W> {
    tree.locate(faults).dist()
}

/// All `n²` trees for one `(L, f)`, indexed by `s·n + t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FtTrees<W> {
    pub n: usize,
    pub l: usize,
    pub f: usize,
    pub trees: Vec<FtTree<W>>,
}

impl<W: Weight> FtTrees<W> {
    pub fn get(&self, s: Vertex, t: Vertex) -> &FtTree<W> {
        &self.trees[s * self.n + t]
    }

    pub fn node_count(&self) -> usize {
        self.trees.iter().map(|t| t.nodes.len()).sum()
    }

    /// Distinct non-empty stored paths.
    pub fn distinct_paths(&self) -> usize {
        let set: BTreeSet<&[Vertex]> = self
            .trees
            .iter()
            .flat_map(|t| t.nodes.iter())
            .filter(|n| !n.is_empty())
            .map(|n| n.path.as_slice())
            .collect();
        set.len()
    }

    pub(crate) fn reindex(&mut self) {
        for node in self.trees.iter_mut().flat_map(|t| t.nodes.iter_mut()) {
            node.reindex();
        }
    }
}

/// The `n²·(L(L+1))^f` node estimate checked against the budget.
pub fn estimated_nodes(n: usize, l: usize, f: usize) -> f64 {
    (n as f64).powi(2) * ((l * (l + 1)) as f64).powi(f as i32)
}

/// Builds every `FT^{L,f}(u,v)` for non-negative `g`.
pub fn build_ft_trees<W: Weight>(g: &Graph<W>, l: usize, f: usize, budget: u64) -> Result<FtTrees<W>, DsoError> {
    if g.has_negative_weight() {
        return Err(DsoError::NegativeWeights);
    }
    let estimate = estimated_nodes(g.n(), l, f);
    if estimate > budget as f64 {
        return Err(DsoError::CapacityExceeded { estimate, budget });
    }
    let n = g.n();
    let mut level: Vec<FtTree<W>> = Vec::new();
    for i in 0..=l {
        let prev = (i > 0).then_some(level.as_slice());
        let next: Vec<FtTree<W>> = (0..n * n)
            .map(|idx| Builder { g, prev, f }.tree(idx / n, idx % n))
            .collect();
        level = next;
    }
    Ok(FtTrees { n, l, f, trees: level })
}

struct Builder<'a, W> {
    g: &'a Graph<W>,
    prev: Option<&'a [FtTree<W>]>,
    f: usize,
}

impl<W: Weight> Builder<'_, W> {
    fn tree(&self, u: Vertex, v: Vertex) -> FtTree<W> {
        let mut nodes = Vec::new();
        let mut avoided = FaultSet::new();
        self.grow(u, v, &mut avoided, &mut nodes);
        FtTree { s: u, t: v, nodes }
    }

    fn grow(&self, u: Vertex, v: Vertex, avoided: &mut FaultSet, nodes: &mut Vec<FtNode<W>>) -> NodeId {
        let id = nodes.len();
        nodes.push(self.solve(u, v, avoided));
        if nodes[id].is_empty() || avoided.len() >= self.f {
            return id as NodeId;
        }
        let members = nodes[id].members.clone();
        let mut children = Vec::with_capacity(members.len());
        for e in members {
            avoided.insert(e);
            children.push(self.grow(u, v, avoided, nodes));
            avoided.remove(&e);
        }
        nodes[id].children = children;
        id as NodeId
    }

    /// Lightest `u`-`v` path avoiding `avoided` with at most one more edge than
    /// the previous level allows. Ties go to the smallest next vertex.
    fn solve(&self, u: Vertex, v: Vertex, avoided: &FaultSet) -> FtNode<W> {
        if avoided.contains_vertex(u) || avoided.contains_vertex(v) {
            return FtNode::empty();
        }
        if u == v {
            return FtNode::new(Some(PathKey::zero()), vec![u]);
        }
        let Some(prev) = self.prev else {
            return FtNode::empty();
        };
        let n = self.g.n();
        let mut best: Option<(PathKey<W>, &FtNode<W>)> = None;
        for (z, w) in self.g.out_edges(u) {
            if !avoided.allows_edge(u, z) {
                continue;
            }
            let sub = prev[z * n + v].locate(avoided);
            let Some(k) = sub.key else { continue };
            let cand = k.extend(w);
            if best.is_none_or(|(b, _)| cand < b) {
                best = Some((cand, sub));
            }
        }
        match best {
            Some((key, sub)) => {
                let mut path = Vec::with_capacity(sub.path.len() + 1);
                path.push(u);
                path.extend_from_slice(&sub.path);
                FtNode::new(Some(key), path)
            }
            None => FtNode::empty(),
        }
    }
}

/// Every distinct stored path with at least `⌈L/2⌉` edges, as a hitting-set
/// family with `⌈L/2⌉ + 1` vertices per member.
pub fn collect_long_stored_paths<W: Weight>(trees: &FtTrees<W>) -> PathFamily {
    let threshold = trees.l.div_ceil(2);
    let set: BTreeSet<&[Vertex]> = trees
        .trees
        .iter()
        .flat_map(|t| t.nodes.iter())
        .filter(|n| !n.is_empty() && n.hops() >= threshold)
        .map(|n| n.path.as_slice())
        .collect();
    PathFamily {
        members: set.into_iter().map(<[Vertex]>::to_vec).collect(),
        l: threshold + 1,
    }
}
