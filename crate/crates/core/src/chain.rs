//! Shi-type trees, marked singleton trees, Cayley foliages and marked
//! Prüfer functions, with the bijections between them.
//!
//! * `t_to_u` splits every label `{s_1 < … < s_p}` into an increasing left
//!   path of marked singletons and trades each dashed edge for a mark.
//! * `u_to_v` turns rank-`i < m` children into color-`i` edges to their whole
//!   right path and hangs the root's right path from the new vertex `n + 1`.
//! * `v_to_w` reads a colored Prüfer sequence by deleting the least leaf.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::tree::{DecoratedTree, Node};

/// Node of a marked tree with singleton labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UNode {
    pub label: usize,
    pub marked: bool,
    pub children: Vec<Option<UNode>>,
}

impl UNode {
    fn has_small_child(&self, m: usize) -> bool {
        self.children[..m].iter().any(Option::is_some)
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a UNode)) {
        f(self);
        for c in self.children.iter().flatten() {
            c.visit(f);
        }
    }
}

/// An `(m+1)`-ary tree on `n` singleton-labeled nodes with marks, whose
/// rank-`m` internal edges are descents and whose marked nodes each have a
/// node child of rank `< m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedAryTree {
    m: usize,
    n: usize,
    root: UNode,
}

impl MarkedAryTree {
    pub fn new(m: usize, root: UNode) -> Result<Self> {
        let mut labels = BTreeSet::new();
        let mut problem = None;
        root.visit(&mut |v| {
            if problem.is_some() {
                return;
            }
            if v.children.len() != m + 1 {
                problem = Some(format!("node {} has {} children", v.label, v.children.len()));
            } else if !labels.insert(v.label) {
                problem = Some(format!("label {} repeats", v.label));
            } else if v.children[m].as_ref().is_some_and(|c| c.label > v.label) {
                problem = Some(format!("rank-{m} edge below {} is an ascent", v.label));
            } else if v.marked && !v.has_small_child(m) {
                problem = Some(format!("marked node {} has no child of rank < {m}", v.label));
            }
        });
        if let Some(p) = problem {
            return Err(Error::InvalidObject(p));
        }
        let n = labels.len();
        if m == 0 || labels.first() != Some(&1) || labels.last() != Some(&n) {
            return Err(Error::InvalidObject("labels must be exactly 1..=n".into()));
        }
        Ok(MarkedAryTree { m, n, root })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &UNode {
        &self.root
    }

    pub fn marked(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.root.visit(&mut |v| {
            if v.marked {
                out.insert(v.label);
            }
        });
        out
    }
}

fn render_unode(v: &UNode, out: &mut String) {
    out.push('(');
    out.push_str(&v.label.to_string());
    if v.marked {
        out.push('*');
    }
    for c in &v.children {
        out.push(' ');
        match c {
            Some(c) => render_unode(c, out),
            None => out.push('.'),
        }
    }
    out.push(')');
}

impl fmt::Display for MarkedAryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render_unode(&self.root, &mut s);
        f.write_str(&s)
    }
}

/// A tree on `[n + 1]` with edge colors in `[0, m - 1]`, color 0 at `n + 1`,
/// and marked vertices of degree at least 2 among `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CayleyFoliage {
    n: usize,
    m: usize,
    /// `(a, b) -> color` with `a < b`
    edges: BTreeMap<(usize, usize), usize>,
    marked: BTreeSet<usize>,
}

impl CayleyFoliage {
    pub fn new(
        n: usize,
        m: usize,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
        marked: BTreeSet<usize>,
    ) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidObject("need n, m >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (a, b, c) in edges {
            let key = (a.min(b), a.max(b));
            if a == b || key.1 > n + 1 || key.0 == 0 {
                return Err(Error::InvalidObject(format!("bad edge {a}-{b}")));
            }
            if c >= m || (key.1 == n + 1 && c != 0) {
                return Err(Error::InvalidObject(format!("bad color {c} on edge {a}-{b}")));
            }
            if map.insert(key, c).is_some() {
                return Err(Error::InvalidObject(format!("repeated edge {a}-{b}")));
            }
        }
        if map.len() != n {
            return Err(Error::InvalidObject(format!("{} edges on {} vertices", map.len(), n + 1)));
        }
        let f = CayleyFoliage {
            n,
            m,
            edges: map,
            marked,
        };
        // n edges on n + 1 vertices form a tree iff connected
        let adj = f.adjacency();
        let mut seen = vec![false; n + 2];
        let mut stack = vec![n + 1];
        seen[n + 1] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::InvalidObject("edges do not form a tree".into()));
        }
        if let Some(&v) = f.marked.iter().find(|&&v| v == 0 || v > n || adj[v].len() < 2) {
            return Err(Error::InvalidObject(format!("marked vertex {v} must be internal in [n]")));
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.edges.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn marked(&self) -> &BTreeSet<usize> {
        &self.marked
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.keys().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Neighbors with edge colors, indexed by vertex (index 0 unused).
    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.n + 2];
        for (&(a, b), &c) in &self.edges {
            adj[a].push((b, c));
            adj[b].push((a, c));
        }
        adj
    }
}

impl fmt::Display for CayleyFoliage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().map(|(a, b, c)| format!("{a}-{b}:{c}")).collect();
        let marked: Vec<String> = self.marked.iter().map(usize::to_string).collect();
        write!(f, "{} marked={{{}}}", edges.join(" "), marked.join(","))
    }
}

/// A pair `(f, S)`: `f` is stored as `f_hat(i) = (vertex, color)` with the
/// vertex in `[n + 1]`; `S` is the set of marked levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkedFunction {
    n: usize,
    m: usize,
    f_hat: Vec<(usize, usize)>,
    s: BTreeSet<usize>,
}

#[derive(Serialize)]
struct MarkedFunctionJson<'a> {
    n: usize,
    m: usize,
    f: Vec<usize>,
    f_hat: &'a [(usize, usize)],
    #[serde(rename = "S")]
    s: &'a BTreeSet<usize>,
}

impl MarkedFunction {
    /// Checks the value ranges and that every `i` in `S` occurs as the vertex of some `f_hat` value.
    pub fn new(n: usize, m: usize, f_hat: Vec<(usize, usize)>, s: BTreeSet<usize>) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::InvalidObject("need n, m >= 1".into()));
        }
        if f_hat.len() != n - 1 {
            return Err(Error::InvalidObject(format!(
                "f has {} values, expected {}",
                f_hat.len(),
                n - 1
            )));
        }
        for &(v, c) in &f_hat {
            let ok = (1..=n).contains(&v) && c < m || (v == n + 1 && c == 0);
            if !ok {
                return Err(Error::InvalidObject(format!("value {v}@{c} out of range")));
            }
        }
        if let Some(i) = s.iter().find(|&&i| !f_hat.iter().any(|&(v, _)| v == i)) {
            return Err(Error::InvalidObject(format!(
                "{i} is in S but f never hits [{}, {}]",
                (i - 1) * m + 1,
                i * m
            )));
        }
        Ok(MarkedFunction { n, m, f_hat, s })
    }

    /// From plain values `f(i)` in `[mn + 1]`.
    pub fn from_values(n: usize, m: usize, f: &[usize], s: BTreeSet<usize>) -> Result<Self> {
        let f_hat = f
            .iter()
            .map(|&x| {
                if x == m * n + 1 {
                    Ok((n + 1, 0))
                } else if (1..=m * n).contains(&x) {
                    Ok(((x - 1) / m + 1, (x - 1) % m))
                } else {
                    Err(Error::InvalidObject(format!("value {x} outside [1, {}]", m * n + 1)))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, m, f_hat, s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn f_hat(&self) -> &[(usize, usize)] {
        &self.f_hat
    }

    /// The plain values, `(i, c) -> (i - 1)m + c + 1` and `(n + 1, 0) -> mn + 1`.
    pub fn values(&self) -> Vec<usize> {
        self.f_hat
            .iter()
            .map(|&(v, c)| {
                if v == self.n + 1 {
                    self.m * self.n + 1
                } else {
                    (v - 1) * self.m + c + 1
                }
            })
            .collect()
    }

    pub fn s(&self) -> &BTreeSet<usize> {
        &self.s
    }

    /// `n - |S|`, the dimension of the matching face.
    pub fn k(&self) -> usize {
        self.n - self.s.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MarkedFunctionJson {
            n: self.n,
            m: self.m,
            f: self.values(),
            f_hat: &self.f_hat,
            s: &self.s,
        })
        .expect("plain data")
    }

    /// Parses `f=a,b,… S={…}`. Values are vertices, with an `@c` color
    /// suffix allowed (and needed for nonzero colors when `m > 1`).
    pub fn parse(text: &str, m: usize) -> Result<Self> {
        let text = text.trim();
        let rest = text
            .strip_prefix("f=")
            .ok_or_else(|| ParseError::new(0, "expected 'f='"))?;
        let s_at = rest
            .find("S=")
            .ok_or_else(|| ParseError::new(text.len(), "expected 'S='"))?;
        let f_text = rest[..s_at].trim();
        let offset = 2;
        let mut f_hat = Vec::new();
        if !f_text.is_empty() {
            let mut pos = offset;
            for part in f_text.split(',') {
                let (v, c) = match part.trim().split_once('@') {
                    Some((v, c)) => (v.trim(), c.trim()),
                    None => (part.trim(), "0"),
                };
                let v: usize = v
                    .parse()
                    .map_err(|_| ParseError::new(pos, format!("bad vertex {v:?}")))?;
                let c: usize = c
                    .parse()
                    .map_err(|_| ParseError::new(pos, format!("bad color {c:?}")))?;
                f_hat.push((v, c));
                pos += part.len() + 1;
            }
        }
        let s_pos = offset + s_at + 2;
        let s_text = rest[s_at + 2..].trim();
        let inner = s_text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| ParseError::new(s_pos, "expected '{…}' after 'S='"))?;
        let mut s = BTreeSet::new();
        for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let i: usize = part
                .parse()
                .map_err(|_| ParseError::new(s_pos, format!("bad element {part:?}")))?;
            s.insert(i);
        }
        let n = f_hat.len() + 1;
        Self::new(n, m, f_hat, s)
    }
}

impl fmt::Display for MarkedFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let values: Vec<String> = self
            .f_hat
            .iter()
            .map(|&(v, c)| {
                if self.m == 1 {
                    v.to_string()
                } else {
                    format!("{v}@{c}")
                }
            })
            .collect();
        let s: Vec<String> = self.s.iter().map(usize::to_string).collect();
        write!(f, "f={} S={{{}}}", values.join(","), s.join(","))
    }
}

fn t_node_to_u(node: &Node, m: usize) -> UNode {
    let mut children: Vec<Option<UNode>> = node.children.iter().map(|c| c.as_ref().map(|c| t_node_to_u(c, m))).collect();
    let mut marked = false;
    if node.captive_child_rank().is_some() {
        marked = true;
        if children[..m].iter().all(Option::is_none) {
            children.swap(0, m);
        }
    }
    let (&last, init) = node.labels.split_last().expect("nonempty label");
    let mut cur = UNode {
        label: last,
        marked,
        children,
    };
    for &l in init.iter().rev() {
        let mut kids = vec![None; m + 1];
        kids[0] = Some(cur);
        cur = UNode {
            label: l,
            marked: true,
            children: kids,
        };
    }
    cur
}

/// Splits labels into marked left paths and replaces dashes by marks.
pub fn t_to_u(tree: &DecoratedTree) -> Result<MarkedAryTree> {
    if !tree.is_shi_type() {
        return Err(Error::InvalidObject("tree is not of Shi type".into()));
    }
    MarkedAryTree::new(tree.m(), t_node_to_u(tree.root(), tree.m()))
}

fn u_node_to_t(v: &UNode, m: usize) -> Result<Node> {
    let mut children = v
        .children
        .iter()
        .map(|c| c.as_ref().map(|c| u_node_to_t(c, m)).transpose())
        .collect::<Result<Vec<_>>>()?;
    if !v.marked {
        return Ok(Node {
            labels: vec![v.label],
            captive: false,
            children,
        });
    }
    // a node child of positive rank: the mark stands for a dashed cadet
    if let Some(r) = (1..=m).rev().find(|&r| v.children[r].is_some()) {
        children[r].as_mut().expect("node child").captive = true;
        return Ok(Node {
            labels: vec![v.label],
            captive: false,
            children,
        });
    }
    let first = v.children[0]
        .as_ref()
        .ok_or_else(|| Error::InvalidObject(format!("marked node {} has no node child", v.label)))?;
    if first.label < v.label {
        // descent at rank 0: undo the swap and restore the dash
        children.swap(0, m);
        children[m].as_mut().expect("moved node").captive = true;
        Ok(Node {
            labels: vec![v.label],
            captive: false,
            children,
        })
    } else {
        // ascent: merge into the sole child
        let mut merged = children[0].take().expect("node child");
        merged.labels.insert(0, v.label);
        Ok(merged)
    }
}

pub fn u_to_t(u: &MarkedAryTree) -> Result<DecoratedTree> {
    DecoratedTree::new(u.m(), u_node_to_t(u.root(), u.m())?)
}

fn rightpath(v: &UNode, m: usize) -> Vec<usize> {
    let mut out = vec![v.label];
    let mut cur = v;
    while let Some(next) = &cur.children[m] {
        out.push(next.label);
        cur = next;
    }
    out
}

pub fn u_to_v(u: &MarkedAryTree) -> Result<CayleyFoliage> {
    let (n, m) = (u.n(), u.m());
    let mut edges = Vec::new();
    for w in rightpath(u.root(), m) {
        edges.push((n + 1, w, 0));
    }
    u.root().visit(&mut |v| {
        for (i, c) in v.children[..m].iter().enumerate() {
            if let Some(c) = c {
                for w in rightpath(c, m) {
                    edges.push((v.label, w, i));
                }
            }
        }
    });
    CayleyFoliage::new(n, m, edges, u.marked())
}

pub fn v_to_u(v: &CayleyFoliage) -> Result<MarkedAryTree> {
    let (n, m) = (v.n(), v.m());
    let adj = v.adjacency();
    fn build(
        label: usize,
        parent: usize,
        adj: &[Vec<(usize, usize)>],
        m: usize,
        marked: &BTreeSet<usize>,
        next_right: Option<UNode>,
    ) -> UNode {
        let mut children: Vec<Option<UNode>> = vec![None; m + 1];
        for (color, slot) in children.iter_mut().enumerate().take(m) {
            let mut group: Vec<usize> = adj[label]
                .iter()
                .filter(|&&(w, c)| w != parent && c == color)
                .map(|&(w, _)| w)
                .collect();
            group.sort_unstable();
            // chain by decreasing label: the smallest is deepest on the right path
            let mut chain = None;
            for &w in &group {
                chain = Some(build(w, label, adj, m, marked, chain));
            }
            *slot = chain;
        }
        children[m] = next_right;
        UNode {
            label,
            marked: marked.contains(&label),
            children,
        }
    }
    let mut tops: Vec<usize> = adj[n + 1].iter().map(|&(w, _)| w).collect();
    tops.sort_unstable();
    let mut root = None;
    for &w in &tops {
        root = Some(build(w, n + 1, &adj, m, v.marked(), root));
    }
    MarkedAryTree::new(m, root.expect("n + 1 has a neighbor"))
}

/// Colored Prüfer code: repeatedly delete the least leaf and record its
/// neighbor and the color of the deleted edge.
pub fn v_to_w(v: &CayleyFoliage) -> Result<MarkedFunction> {
    let n = v.n();
    let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n + 2];
    for (a, b, c) in v.edges() {
        adj[a].insert(b, c);
        adj[b].insert(a, c);
    }
    let mut leaves: BTreeSet<usize> = (1..=n + 1).filter(|&x| adj[x].len() == 1).collect();
    let mut f_hat = Vec::with_capacity(n.saturating_sub(1));
    for _ in 1..n {
        let leaf = leaves.pop_first().expect("a tree has leaves");
        let (&nb, &c) = adj[leaf].iter().next().expect("leaf has a neighbor");
        adj[leaf].clear();
        adj[nb].remove(&leaf);
        if adj[nb].len() == 1 {
            leaves.insert(nb);
        }
        f_hat.push((nb, c));
    }
    MarkedFunction::new(n, v.m(), f_hat, v.marked().clone())
}

pub fn w_to_v(w: &MarkedFunction) -> Result<CayleyFoliage> {
    let n = w.n();
    let mut degree = vec![1usize; n + 2];
    for &(x, _) in w.f_hat() {
        degree[x] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=n + 1).filter(|&x| degree[x] == 1).collect();
    let mut edges = Vec::with_capacity(n);
    for &(x, c) in w.f_hat() {
        let leaf = leaves.pop_first().expect("a tree has leaves");
        edges.push((leaf, x, c));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    if last.len() != 2 || last[1] != n + 1 {
        return Err(Error::InvalidObject("sequence does not decode to a tree".into()));
    }
    edges.push((last[0], last[1], 0));
    CayleyFoliage::new(n, w.m(), edges, w.s().clone())
}

pub fn t_to_w(tree: &DecoratedTree) -> Result<MarkedFunction> {
    v_to_w(&u_to_v(&t_to_u(tree)?)?)
}

pub fn w_to_t(w: &MarkedFunction) -> Result<DecoratedTree> {
    u_to_t(&v_to_u(&w_to_v(w)?)?)
}

/// All marked functions with `|S| = n - k`, ordered by values then `S`.
pub fn enumerate_marked_functions(n: usize, m: usize, k: usize) -> Vec<MarkedFunction> {
    if n == 0 || m == 0 || k == 0 || k > n {
        return Vec::new();
    }
    let top = m * n + 1;
    let mut out = Vec::new();
    let mut values = vec![1usize; n - 1];
    loop {
        let probe = MarkedFunction::from_values(n, m, &values, BTreeSet::new()).expect("in range");
        let hit: Vec<usize> = (1..=n)
            .filter(|&i| probe.f_hat.iter().any(|&(v, _)| v == i))
            .collect();
        for s in subsets_of_size(&hit, n - k) {
            out.push(MarkedFunction {
                s,
                ..probe.clone()
            });
        }
        // odometer over [1, top]^(n-1)
        let mut pos = values.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if values[pos] < top {
                values[pos] += 1;
                break;
            }
            values[pos] = 1;
        }
    }
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<BTreeSet<usize>> {
    if size == 0 {
        return vec![BTreeSet::new()];
    }
    if items.len() < size {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (idx, &first) in items.iter().enumerate() {
        for mut rest in subsets_of_size(&items[idx + 1..], size - 1) {
            rest.insert(first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_trees, parse_tree};

    fn t(text: &str, m: usize) -> DecoratedTree {
        parse_tree(text, m).unwrap()
    }

    #[test]
    fn dashed_pair_chain() {
        let tree = t("({2} . ~({1}))", 1);
        let u = t_to_u(&tree).unwrap();
        assert_eq!(u.to_string(), "(2* (1 . .) .)");
        let v = u_to_v(&u).unwrap();
        assert_eq!(v.to_string(), "1-2:0 2-3:0 marked={2}");
        let w = v_to_w(&v).unwrap();
        assert_eq!(w.to_string(), "f=2 S={2}");
        assert_eq!(w_to_t(&w).unwrap(), tree);
    }

    #[test]
    fn merged_pair_chain() {
        let tree = t("({1,2})", 1);
        let u = t_to_u(&tree).unwrap();
        assert_eq!(u.to_string(), "(1* (2 . .) .)");
        let v = u_to_v(&u).unwrap();
        assert_eq!(v.to_string(), "1-2:0 1-3:0 marked={1}");
        assert_eq!(v_to_w(&v).unwrap().to_string(), "f=1 S={1}");
    }

    #[test]
    fn plain_pair_chain() {
        let tree = t("({1} ({2}) .)", 1);
        let u = t_to_u(&tree).unwrap();
        assert_eq!(u.to_string(), "(1 (2 . .) .)");
        let v = u_to_v(&u).unwrap();
        assert_eq!(v.to_string(), "1-2:0 1-3:0 marked={}");
        assert_eq!(v_to_w(&v).unwrap().to_string(), "f=1 S={}");
    }

    #[test]
    fn rank_m_dash_with_left_node_keeps_children() {
        // dashed rank-m edge next to a node child of rank 0: marked, no swap
        let tree = t("({3} ({1}) ~({2}))", 1);
        let u = t_to_u(&tree).unwrap();
        assert_eq!(u.to_string(), "(3* (1 . .) (2 . .))");
        assert_eq!(u_to_t(&u).unwrap(), tree);
    }

    #[test]
    fn rejects_non_shi_trees() {
        assert!(t_to_u(&t("({1} . ({2}))", 1)).is_err());
    }

    #[test]
    fn round_trips_small() {
        for (n, m) in [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2)] {
            for tree in enumerate_trees(n, m, true) {
                let w = t_to_w(&tree).unwrap();
                assert_eq!(w.k(), tree.free_node_count());
                assert_eq!(w_to_t(&w).unwrap(), tree, "{tree}");
            }
        }
    }

    #[test]
    fn marked_function_counts() {
        assert_eq!(enumerate_marked_functions(2, 1, 2).len(), 3);
        assert_eq!(enumerate_marked_functions(2, 1, 1).len(), 2);
        assert_eq!(enumerate_marked_functions(3, 1, 3).len(), 16);
        let one = enumerate_marked_functions(1, 3, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].to_string(), "f= S={}");
    }

    #[test]
    fn parse_and_render() {
        let w = MarkedFunction::parse("f=2 S={2}", 1).unwrap();
        assert_eq!(w.values(), vec![2]);
        let w = MarkedFunction::parse("f=3@1,4@0 S={3}", 2).unwrap();
        assert_eq!(w.to_string(), "f=3@1,4@0 S={3}");
        assert_eq!(w.values(), vec![6, 7]);
        assert_eq!(MarkedFunction::parse("f= S={}", 1).unwrap().n(), 1);
        assert!(MarkedFunction::parse("f=1 S={2}", 1).is_err());
        assert!(MarkedFunction::parse("f=4@1 S={}", 2).is_err());
        assert!(MarkedFunction::parse("g=1 S={}", 1).is_err());
    }

    #[test]
    fn encoding() {
        let w = MarkedFunction::from_values(3, 2, &[1, 7], BTreeSet::new()).unwrap();
        assert_eq!(w.f_hat(), &[(1, 0), (4, 0)]);
        let w = MarkedFunction::from_values(3, 2, &[6, 2], BTreeSet::from([3])).unwrap();
        assert_eq!(w.f_hat(), &[(3, 1), (1, 1)]);
        assert!(MarkedFunction::from_values(3, 2, &[8, 2], BTreeSet::new()).is_err());
    }

    #[test]
    fn foliage_validation() {
        assert!(CayleyFoliage::new(2, 1, [(1, 2, 0), (2, 3, 0)], BTreeSet::from([1])).is_err());
        assert!(CayleyFoliage::new(2, 2, [(1, 2, 1), (2, 3, 1)], BTreeSet::new()).is_err());
        assert!(CayleyFoliage::new(2, 1, [(1, 2, 0), (1, 2, 0)], BTreeSet::new()).is_err());
        assert!(CayleyFoliage::new(3, 1, [(1, 2, 0), (2, 1, 0), (3, 4, 0)], BTreeSet::new()).is_err());
    }
}
