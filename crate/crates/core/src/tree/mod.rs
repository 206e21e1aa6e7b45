//! Decorated `(m+1)`-ary trees.
//!
//! A vertex is identified by its path word from the root: the sequence of
//! child ranks taken. The total order on vertices used by all the maps
//! compares the weighted length of the words first (sum of ranks), then
//! prefixes, then the first differing rank with the *larger* rank first.

mod enumerate;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub use enumerate::{enumerate_trees, ordered_set_partitions, shapes};
pub use text::{parse_tree, render_tree};

/// Path word of a vertex: the ranks of the edges from the root.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexRef(pub Vec<usize>);

impl VertexRef {
    pub fn root() -> Self {
        VertexRef(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    /// Weighted length: sum of the ranks along the path.
    pub fn rhodot(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn child(&self, rank: usize) -> Self {
        let mut p = self.0.clone();
        p.push(rank);
        VertexRef(p)
    }

    pub fn parent(&self) -> Option<Self> {
        let (_, init) = self.0.split_last()?;
        Some(VertexRef(init.to_vec()))
    }

    /// Rank among siblings; `None` for the root.
    pub fn rank(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn is_proper_prefix_of(&self, other: &Self) -> bool {
        self.0.len() < other.0.len() && other.0.starts_with(&self.0)
    }
}

impl Ord for VertexRef {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rhodot().cmp(&other.rhodot()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a != b {
                    // larger rank comes first at the first difference
                    return b.cmp(a);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for VertexRef {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|r| format!("E{r}")).collect();
        f.write_str(&parts.join(""))
    }
}

/// A node: its label set, whether the edge from its parent is dashed, and
/// `m+1` children (`None` is a leaf).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub labels: Vec<usize>,
    pub captive: bool,
    pub children: Vec<Option<Node>>,
}

impl Node {
    /// A node whose children are all leaves.
    pub fn new(labels: impl IntoIterator<Item = usize>, m: usize) -> Self {
        let mut labels: Vec<usize> = labels.into_iter().collect();
        labels.sort_unstable();
        Node {
            labels,
            captive: false,
            children: vec![None; m + 1],
        }
    }

    pub fn with_child(mut self, rank: usize, child: Node) -> Self {
        self.children[rank] = Some(child);
        self
    }

    pub fn dashed(mut self) -> Self {
        self.captive = true;
        self
    }

    /// Rank of the rightmost child node of rank > 0.
    pub fn cadet_rank(&self) -> Option<usize> {
        (1..self.children.len())
            .rev()
            .find(|&r| self.children[r].is_some())
    }

    pub fn captive_child_rank(&self) -> Option<usize> {
        self.children
            .iter()
            .position(|c| c.as_ref().is_some_and(|c| c.captive))
    }

    fn visit<'a>(&'a self, path: &mut Vec<usize>, f: &mut impl FnMut(&[usize], Option<&'a Node>)) {
        f(path, Some(self));
        for (r, c) in self.children.iter().enumerate() {
            path.push(r);
            match c {
                Some(node) => node.visit(path, f),
                None => f(path, None),
            }
            path.pop();
        }
    }

    fn count_nodes(&self) -> usize {
        1 + self
            .children
            .iter()
            .flatten()
            .map(Node::count_nodes)
            .sum::<usize>()
    }
}

/// An `[n]`-decorated `(m+1)`-ary tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedTree {
    m: usize,
    n: usize,
    root: Node,
}

/// What sits at a vertex.
#[derive(Debug, Clone, Copy)]
pub enum Vertex<'a> {
    Leaf,
    Node(&'a Node),
}

impl DecoratedTree {
    /// Validates the shape, the label partition of `[n]` (with `n` the number
    /// of labels) and that every dashed edge is a cadet edge.
    pub fn new(m: usize, root: Node) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidTree("m must be at least 1".into()));
        }
        if root.captive {
            return Err(Error::InvalidTree("the root cannot be captive".into()));
        }
        let mut seen = BTreeSet::new();
        let mut problem = None;
        let mut total = 0usize;
        root.visit(&mut Vec::new(), &mut |path, node| {
            let Some(node) = node else { return };
            if problem.is_some() {
                return;
            }
            let here = VertexRef(path.to_vec());
            if node.children.len() != m + 1 {
                problem = Some(format!(
                    "node at {here} has {} children, expected {}",
                    node.children.len(),
                    m + 1
                ));
            } else if node.labels.is_empty() {
                problem = Some(format!("node at {here} has an empty label"));
            } else if node.labels.windows(2).any(|w| w[0] >= w[1]) {
                problem = Some(format!("label of node at {here} is not strictly ascending"));
            } else if let Some(r) = node.captive_child_rank() {
                if r == 0 || node.cadet_rank() != Some(r) {
                    problem = Some(format!(
                        "dashed edge to {} is not a cadet edge",
                        here.child(r)
                    ));
                }
            }
            for &l in &node.labels {
                total += 1;
                if !seen.insert(l) && problem.is_none() {
                    problem = Some(format!("label {l} appears twice"));
                }
            }
        });
        if let Some(p) = problem {
            return Err(Error::InvalidTree(p));
        }
        let n = total;
        if seen.iter().next() != Some(&1) || seen.iter().next_back() != Some(&n) {
            return Err(Error::InvalidTree(format!(
                "labels do not form a partition of [{n}]"
            )));
        }
        Ok(DecoratedTree { m, n, root })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    pub fn get(&self, v: &VertexRef) -> Option<Vertex<'_>> {
        let mut cur = &self.root;
        for (depth, &r) in v.0.iter().enumerate() {
            match cur.children.get(r)? {
                Some(next) => cur = next,
                None => {
                    return (depth + 1 == v.0.len()).then_some(Vertex::Leaf);
                }
            }
        }
        Some(Vertex::Node(cur))
    }

    fn require(&self, v: &VertexRef) -> Result<Vertex<'_>> {
        self.get(v).ok_or_else(|| Error::ForeignVertex(v.to_string()))
    }

    pub fn node(&self, v: &VertexRef) -> Option<&Node> {
        match self.get(v)? {
            Vertex::Node(n) => Some(n),
            Vertex::Leaf => None,
        }
    }

    pub fn is_leaf(&self, v: &VertexRef) -> Result<bool> {
        Ok(matches!(self.require(v)?, Vertex::Leaf))
    }

    /// All vertices in preorder.
    pub fn vertices(&self) -> Vec<VertexRef> {
        let mut out = Vec::new();
        self.root
            .visit(&mut Vec::new(), &mut |p, _| out.push(VertexRef(p.to_vec())));
        out
    }

    /// All nodes (non-leaf vertices) in preorder.
    pub fn nodes(&self) -> Vec<(VertexRef, &Node)> {
        let mut out = Vec::new();
        self.root.visit(&mut Vec::new(), &mut |p, node| {
            if let Some(node) = node {
                out.push((VertexRef(p.to_vec()), node));
            }
        });
        out
    }

    /// Vertices sorted by the tree order.
    pub fn vertex_order(&self) -> Vec<VertexRef> {
        let mut v = self.vertices();
        v.sort();
        v
    }

    pub fn prec(&self, v: &VertexRef, w: &VertexRef) -> Result<Ordering> {
        self.require(v)?;
        self.require(w)?;
        Ok(v.cmp(w))
    }

    /// The node whose label contains `i`.
    pub fn locate(&self, i: usize) -> Result<VertexRef> {
        if i == 0 || i > self.n {
            return Err(Error::LabelOutOfRange(i));
        }
        self.nodes()
            .into_iter()
            .find(|(_, node)| node.labels.binary_search(&i).is_ok())
            .map(|(v, _)| v)
            .ok_or(Error::LabelOutOfRange(i))
    }

    /// The child of rank `s` of node `v`.
    pub fn child(&self, v: &VertexRef, s: usize) -> Result<VertexRef> {
        match self.require(v)? {
            Vertex::Leaf => Err(Error::LeafHasNoChildren(v.to_string())),
            Vertex::Node(_) if s > self.m => Err(Error::ForeignVertex(v.child(s).to_string())),
            Vertex::Node(_) => Ok(v.child(s)),
        }
    }

    /// A node joined to its parent by a dashed edge. Leaves are never captive.
    pub fn is_captive(&self, v: &VertexRef) -> Result<bool> {
        Ok(match self.require(v)? {
            Vertex::Node(n) => n.captive,
            Vertex::Leaf => false,
        })
    }

    /// A node that is not captive.
    pub fn is_free(&self, v: &VertexRef) -> Result<bool> {
        Ok(match self.require(v)? {
            Vertex::Node(n) => !n.captive,
            Vertex::Leaf => false,
        })
    }

    /// A leaf with a captive node among its left siblings.
    pub fn is_dead_leaf(&self, v: &VertexRef) -> Result<bool> {
        if !self.is_leaf(v)? {
            return Ok(false);
        }
        let (Some(parent), Some(rank)) = (v.parent(), v.rank()) else {
            return Ok(false);
        };
        let parent = self.node(&parent).expect("parent of a vertex is a node");
        Ok(parent.children[..rank]
            .iter()
            .any(|c| c.as_ref().is_some_and(|c| c.captive)))
    }

    /// The least live vertex that is not below `v` in the tree order.
    pub fn nextlive(&self, v: &VertexRef) -> Result<VertexRef> {
        self.require(v)?;
        let order = self.vertex_order();
        let start = order.iter().position(|w| w == v).expect("vertex is in the tree");
        for w in &order[start..] {
            if !self.is_dead_leaf(w)? {
                return Ok(w.clone());
            }
        }
        // the maximal vertex is the end of the all-rank-m path, never dead
        unreachable!("the maximum vertex of a tree is live")
    }

    /// Sum of the ranks along a parent-to-child path.
    pub fn drift(&self, path: &[VertexRef]) -> Result<usize> {
        for v in path {
            self.require(v)?;
        }
        for w in path.windows(2) {
            if w[1].parent().as_ref() != Some(&w[0]) {
                return Err(Error::NotAPath(format!("{} is not a child of {}", w[1], w[0])));
            }
        }
        Ok(path.iter().skip(1).map(|v| v.rank().unwrap_or(0)).sum())
    }

    /// Whether the edge into the node `child` is a descent: max(parent label) > min(child label).
    pub fn is_descent(&self, child: &VertexRef) -> Result<bool> {
        let parent = child
            .parent()
            .ok_or_else(|| Error::NotAPath("the root has no parent edge".into()))?;
        let (Some(p), Some(c)) = (self.node(&parent), self.node(child)) else {
            return Err(Error::NotAPath(format!("{child} is not an internal edge")));
        };
        Ok(p.labels.last() > c.labels.first())
    }

    /// All internal edges of rank `m` are descents.
    pub fn is_shi_type(&self) -> bool {
        self.nodes().iter().all(|(_, node)| match &node.children[self.m] {
            Some(c) => node.labels.last() > c.labels.first(),
            None => true,
        })
    }

    pub fn node_count(&self) -> usize {
        self.root.count_nodes()
    }

    pub fn captive_count(&self) -> usize {
        self.nodes().iter().filter(|(_, n)| n.captive).count()
    }

    pub fn free_node_count(&self) -> usize {
        self.node_count() - self.captive_count()
    }

    /// Whether `w` is reached from `v` by a nonempty path of dashed edges.
    pub fn has_dashed_path(&self, v: &VertexRef, w: &VertexRef) -> bool {
        if !v.is_proper_prefix_of(w) {
            return false;
        }
        (v.0.len() + 1..=w.0.len()).all(|len| {
            self.node(&VertexRef(w.0[..len].to_vec()))
                .is_some_and(|n| n.captive)
        })
    }

    pub(crate) fn layout(&self) -> Layout {
        Layout::new(self)
    }
}

impl fmt::Display for DecoratedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_tree(self))
    }
}

/// Precomputed order positions for the label-level queries of the face maps.
pub(crate) struct Layout {
    pub order: Vec<VertexRef>,
    pub pos: HashMap<VertexRef, usize>,
    /// position of `v_T(i)`, indexed by label - 1
    pub node_pos: Vec<usize>,
    /// for each position, the position of the least live vertex at or after it
    pub nextlive: Vec<usize>,
}

impl Layout {
    fn new(t: &DecoratedTree) -> Self {
        let order = t.vertex_order();
        let pos: HashMap<VertexRef, usize> =
            order.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let mut node_pos = vec![0; t.n()];
        for (v, node) in t.nodes() {
            for &l in &node.labels {
                node_pos[l - 1] = pos[&v];
            }
        }
        let mut nextlive = vec![usize::MAX; order.len()];
        let mut next = usize::MAX;
        for idx in (0..order.len()).rev() {
            if !t.is_dead_leaf(&order[idx]).expect("own vertex") {
                next = idx;
            }
            nextlive[idx] = next;
        }
        Layout {
            order,
            pos,
            node_pos,
            nextlive,
        }
    }
}
