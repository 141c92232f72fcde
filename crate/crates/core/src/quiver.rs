//! Finite acyclic quivers without multiple arrows, and their paths.
//!
//! Paths are stored as node sequences in travel order, `[v0, v1, ..., vd]`
//! for a path of length `d`. Since there is at most one arrow between two
//! nodes the node sequence determines the path.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::SimplicialComplex;
use crate::perversity::Perversity;

pub type NodeId = usize;
pub type ArrowId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("arrow {0}->{1} references a missing node")]
    UnknownNode(NodeId, NodeId),
    #[error("loop at node {0}")]
    Loop(NodeId),
    #[error("duplicate arrow {0}->{1}")]
    DuplicateArrow(NodeId, NodeId),
    #[error("quiver has an oriented cycle through node {0}")]
    Cycle(NodeId),
}

/// A path in travel order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<NodeId>);

impl Path {
    pub fn new(nodes: Vec<NodeId>) -> Self {
        assert!(!nodes.is_empty(), "a path visits at least one node");
        Path(nodes)
    }

    pub fn trivial(v: NodeId) -> Self {
        Path(vec![v])
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }

    /// Number of arrows.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn source(&self) -> NodeId {
        self.0[0]
    }

    pub fn target(&self) -> NodeId {
        *self.0.last().unwrap()
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Follow `self`, then `next`. Requires `self.target() == next.source()`.
    pub fn then(&self, next: &Path) -> Path {
        assert_eq!(self.target(), next.source(), "paths do not compose");
        let mut nodes = self.0.clone();
        nodes.extend_from_slice(&next.0[1..]);
        Path(nodes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    names: Vec<String>,
    levels: Option<Vec<i64>>,
    arrows: Vec<(NodeId, NodeId)>,
    lookup: HashMap<(NodeId, NodeId), ArrowId>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

impl Quiver {
    /// Build from explicit arrows. Arrows are sorted; loops, duplicates and
    /// oriented cycles are rejected.
    pub fn from_arrows(names: Vec<String>, arrows: Vec<(NodeId, NodeId)>) -> Result<Self, QuiverError> {
        let n = names.len();
        let mut sorted = arrows;
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(QuiverError::DuplicateArrow(w[0].0, w[0].1));
            }
        }
        for &(s, t) in &sorted {
            if s >= n || t >= n {
                return Err(QuiverError::UnknownNode(s, t));
            }
            if s == t {
                return Err(QuiverError::Loop(s));
            }
        }
        let quiver = Self::assemble(names, None, sorted);
        quiver.check_acyclic()?;
        Ok(quiver)
    }

    fn assemble(names: Vec<String>, levels: Option<Vec<i64>>, arrows: Vec<(NodeId, NodeId)>) -> Self {
        let n = names.len();
        let lookup = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, &(s, t)) in arrows.iter().enumerate() {
            outgoing[s].push(i);
            incoming[t].push(i);
        }
        Quiver { names, levels, arrows, lookup, outgoing, incoming }
    }

    fn check_acyclic(&self) -> Result<(), QuiverError> {
        let mut indegree: Vec<usize> = self.incoming.iter().map(Vec::len).collect();
        let mut ready: Vec<NodeId> = (0..self.len()).filter(|&v| indegree[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = ready.pop() {
            seen += 1;
            for &a in &self.outgoing[v] {
                let t = self.arrows[a].1;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
        if seen == self.len() {
            Ok(())
        } else {
            Err(QuiverError::Cycle((0..self.len()).find(|&v| indegree[v] > 0).unwrap()))
        }
    }

    /// Nodes are the simplices; an arrow runs from `s` to `t` when
    /// `δ(s) = δ(t) + 1` and one of them is a proper face of the other.
    pub fn of_complex(complex: &SimplicialComplex, perversity: &Perversity) -> Self {
        let level = |s| perversity.at(complex.dim(s));
        let mut arrows = Vec::new();
        for s in complex.ids() {
            for t in complex.ids() {
                if level(s) == level(t) + 1 && (complex.is_proper_face(s, t) || complex.is_proper_face(t, s)) {
                    arrows.push((s, t));
                }
            }
        }
        let names = complex.ids().map(|s| complex.key(s)).collect();
        let levels = complex.ids().map(level).collect();
        Self::assemble(names, Some(levels), arrows)
    }

    /// The quiver of the subdivision under the bottom perversity: nodes are
    /// flags, with an arrow from each flag to every flag having it as a
    /// codimension-one face.
    pub fn of_subdivision(complex: &SimplicialComplex) -> Self {
        let sd = complex.subdivision();
        let mut arrows = Vec::new();
        for f in 0..sd.len() {
            for &g in sd.cofacets(f) {
                arrows.push((f, g));
            }
        }
        arrows.sort_unstable();
        let names = (0..sd.len()).map(|f| sd.key(complex, f)).collect();
        let levels = sd.flags().iter().map(|f| -(f.dim() as i64)).collect();
        Self::assemble(names, Some(levels), arrows)
    }

    /// All arrows reversed; levels negated.
    pub fn opposite(&self) -> Self {
        let mut arrows: Vec<(NodeId, NodeId)> = self.arrows.iter().map(|&(s, t)| (t, s)).collect();
        arrows.sort_unstable();
        let levels = self.levels.as_ref().map(|l| l.iter().map(|x| -x).collect());
        Self::assemble(self.names.clone(), levels, arrows)
    }

    /// Full subquiver on `nodes`; returns it with the old id of each new node.
    pub fn induced(&self, nodes: &BTreeSet<NodeId>) -> (Self, Vec<NodeId>) {
        let old: Vec<NodeId> = nodes.iter().copied().collect();
        let new_of: HashMap<NodeId, NodeId> = old.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let arrows = self.arrows.iter().filter_map(|&(s, t)| Some((*new_of.get(&s)?, *new_of.get(&t)?))).collect();
        let names = old.iter().map(|&v| self.names[v].clone()).collect();
        let levels = self.levels.as_ref().map(|l| old.iter().map(|&v| l[v]).collect());
        (Self::assemble(names, levels, arrows), old)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn level(&self, v: NodeId) -> Option<i64> {
        self.levels.as_ref().map(|l| l[v])
    }

    pub fn node_by_name(&self, name: &str) -> Option<NodeId> {
        self.names.iter().position(|n| n == name)
    }

    pub fn arrows(&self) -> &[(NodeId, NodeId)] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> (NodeId, NodeId) {
        self.arrows[a]
    }

    pub fn arrow_id(&self, s: NodeId, t: NodeId) -> Option<ArrowId> {
        self.lookup.get(&(s, t)).copied()
    }

    pub fn has_arrow(&self, s: NodeId, t: NodeId) -> bool {
        self.lookup.contains_key(&(s, t))
    }

    pub fn outgoing(&self, v: NodeId) -> &[ArrowId] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: NodeId) -> &[ArrowId] {
        &self.incoming[v]
    }

    pub fn arrow_name(&self, a: ArrowId) -> String {
        let (s, t) = self.arrows[a];
        format!("{}->{}", self.names[s], self.names[t])
    }

    /// All paths of length `len`, sorted.
    pub fn paths(&self, len: usize) -> Vec<Path> {
        let mut current: Vec<Path> = (0..self.len()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &current {
                for &a in &self.outgoing[p.target()] {
                    let mut nodes = p.0.clone();
                    nodes.push(self.arrows[a].1);
                    next.push(Path(nodes));
                }
            }
            current = next;
        }
        current.sort();
        current
    }

    /// Every path from `s` to `t` of any length, sorted.
    pub fn paths_between(&self, s: NodeId, t: NodeId) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![vec![s]];
        while let Some(nodes) = stack.pop() {
            let last = *nodes.last().unwrap();
            if last == t {
                out.push(Path(nodes));
                continue;
            }
            for &a in &self.outgoing[last] {
                let mut longer = nodes.clone();
                longer.push(self.arrows[a].1);
                stack.push(longer);
            }
        }
        out.sort();
        out
    }

    /// Length-2 paths grouped by endpoints; only nonempty groups.
    pub fn length_two_blocks(&self) -> BTreeMap<(NodeId, NodeId), Vec<Path>> {
        let mut blocks: BTreeMap<(NodeId, NodeId), Vec<Path>> = BTreeMap::new();
        for p in self.paths(2) {
            blocks.entry((p.source(), p.target())).or_default().push(p);
        }
        blocks
    }

    /// `a ≤ b` in the reflexive-transitive closure of the arrows.
    pub fn reaches(&self, a: NodeId, b: NodeId) -> bool {
        if a == b {
            return true;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![a];
        while let Some(v) = stack.pop() {
            for &arrow in &self.outgoing[v] {
                let t = self.arrows[arrow].1;
                if t == b {
                    return true;
                }
                if !std::mem::replace(&mut seen[t], true) {
                    stack.push(t);
                }
            }
        }
        false
    }

    /// Length of the longest path.
    pub fn longest_path(&self) -> usize {
        let mut len = 0;
        while !self.paths(len + 1).is_empty() {
            len += 1;
        }
        len
    }
}
