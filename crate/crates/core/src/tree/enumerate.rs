use super::{DecoratedTree, Node};

/// All unlabelled `(m+1)`-ary tree shapes with `i` nodes (labels empty, no dashes).
pub fn shapes(i: usize, m: usize) -> Vec<Node> {
    let mut memo: Vec<Vec<Option<Node>>> = Vec::new();
    subtrees(i, m, &mut memo)
        .into_iter()
        .flatten()
        .collect()
}

/// Subtrees with exactly `i` nodes; `i == 0` is the single leaf.
fn subtrees(i: usize, m: usize, memo: &mut Vec<Vec<Option<Node>>>) -> Vec<Option<Node>> {
    while memo.len() <= i {
        let k = memo.len();
        let list = if k == 0 {
            vec![None]
        } else {
            let mut out = Vec::new();
            for children in forests(m + 1, k - 1, m, memo) {
                out.push(Some(Node {
                    labels: Vec::new(),
                    captive: false,
                    children,
                }));
            }
            out
        };
        memo.push(list);
    }
    memo[i].clone()
}

/// Sequences of `slots` subtrees whose node counts sum to `total`.
fn forests(
    slots: usize,
    total: usize,
    m: usize,
    memo: &mut Vec<Vec<Option<Node>>>,
) -> Vec<Vec<Option<Node>>> {
    if slots == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        let heads = subtrees(first, m, memo);
        let tails = forests(slots - 1, total - first, m, memo);
        for h in &heads {
            for t in &tails {
                let mut seq = Vec::with_capacity(slots);
                seq.push(h.clone());
                seq.extend(t.iter().cloned());
                out.push(seq);
            }
        }
    }
    out
}

/// Ordered set partitions of `[n]` into `k` nonempty blocks, each block sorted.
pub fn ordered_set_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    if k == 0 || k > n {
        return out;
    }
    let mut assign = vec![0usize; n];
    loop {
        let mut blocks = vec![Vec::new(); k];
        for (idx, &b) in assign.iter().enumerate() {
            blocks[b].push(idx + 1);
        }
        if blocks.iter().all(|b| !b.is_empty()) {
            out.push(blocks);
        }
        // odometer increment
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            assign[pos] += 1;
            if assign[pos] < k {
                break;
            }
            assign[pos] = 0;
        }
    }
}

fn with_labels(shape: &Node, blocks: &[Vec<usize>]) -> Node {
    let mut t = shape.clone();
    let mut idx = 0;
    label_rec(&mut t, blocks, &mut idx);
    t
}

fn label_rec(node: &mut Node, blocks: &[Vec<usize>], idx: &mut usize) {
    node.labels = blocks[*idx].clone();
    *idx += 1;
    for c in node.children.iter_mut().flatten() {
        label_rec(c, blocks, idx);
    }
}

fn cadet_owner_paths(node: &Node, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if node.cadet_rank().is_some() {
        out.push(path.clone());
    }
    for (r, c) in node.children.iter().enumerate() {
        if let Some(c) = c {
            path.push(r);
            cadet_owner_paths(c, path, out);
            path.pop();
        }
    }
}

fn node_at_mut<'a>(mut node: &'a mut Node, path: &[usize]) -> &'a mut Node {
    for &r in path {
        node = node.children[r].as_mut().expect("path follows nodes");
    }
    node
}

/// Every way of dashing a subset of cadet edges of `shape`.
fn dash_variants(shape: &Node) -> Vec<Node> {
    let mut owners = Vec::new();
    cadet_owner_paths(shape, &mut Vec::new(), &mut owners);
    let mut out = Vec::with_capacity(1 << owners.len());
    for mask in 0u64..(1u64 << owners.len()) {
        let mut t = shape.clone();
        for (bit, path) in owners.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                let node = node_at_mut(&mut t, path);
                let r = node.cadet_rank().expect("owner has a cadet");
                node.children[r].as_mut().expect("cadet is a node").captive = true;
            }
        }
        out.push(t);
    }
    out
}

/// All `[n]`-decorated `(m+1)`-ary trees, grouped by node count. With
/// `shi_only` only trees whose rank-`m` internal edges are descents are kept.
pub fn enumerate_trees(n: usize, m: usize, shi_only: bool) -> Vec<DecoratedTree> {
    let mut out = Vec::new();
    for k in 1..=n {
        let partitions = ordered_set_partitions(n, k);
        for shape in shapes(k, m) {
            for dashed in dash_variants(&shape) {
                for blocks in &partitions {
                    let t = DecoratedTree::new(m, with_labels(&dashed, blocks))
                        .expect("enumerated trees are valid");
                    if !shi_only || t.is_shi_type() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}
