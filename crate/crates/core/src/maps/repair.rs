use crate::arrangement::{restrict_to_shi, FaceCode, Kind};
use crate::error::{Error, Result};
use crate::oracle::FaceCensus;
use crate::tree::{DecoratedTree, Node, VertexRef};

use super::{code_to_tree, phi_catalan, shirank, MCatalanCode};

fn node_at_mut<'a>(mut node: &'a mut Node, path: &VertexRef) -> &'a mut Node {
    for &r in &path.0 {
        node = node.children[r].as_mut().expect("path follows nodes");
    }
    node
}

/// The first rank-`m` internal edge (by tree order of its child) that is not a descent.
fn first_violation(tree: &DecoratedTree) -> Option<VertexRef> {
    let m = tree.m();
    let mut bad: Vec<VertexRef> = tree
        .nodes()
        .into_iter()
        .filter_map(|(v, node)| {
            let child = node.children[m].as_ref()?;
            (node.labels.last() < child.labels.first()).then(|| v.child(m))
        })
        .collect();
    bad.sort();
    bad.into_iter().next()
}

/// One rotation at the non-descent edge into `w`: the rank-0 subtree of `w`
/// takes its place, and the live leaf just before `w` becomes a node with
/// `w`'s label, a leaf at rank 0 and `w`'s other subtrees.
fn rotate(tree: &DecoratedTree, w: &VertexRef) -> Result<DecoratedTree> {
    let order = tree.vertex_order();
    let at = order.iter().position(|x| x == w).expect("w is a vertex");
    let leaf = order[at - 1].clone();
    if !tree.is_leaf(&leaf)? || tree.is_dead_leaf(&leaf)? {
        return Err(Error::InvalidTree(format!(
            "vertex {leaf} before {w} is not a live leaf"
        )));
    }
    let v = w.parent().expect("w is not the root");
    let m = tree.m();
    let mut root = tree.root().clone();
    let w_node = node_at_mut(&mut root, &v).children[m]
        .take()
        .expect("w is a node");
    let mut children = w_node.children.into_iter();
    let t0 = children.next().expect("m + 1 children");
    node_at_mut(&mut root, &v).children[m] = t0;
    let mut replacement = Node {
        labels: w_node.labels,
        captive: false,
        children: Vec::with_capacity(m + 1),
    };
    replacement.children.push(None);
    replacement.children.extend(children);
    let parent = leaf.parent().expect("a leaf has a parent");
    let rank = leaf.rank().expect("a leaf has a rank");
    node_at_mut(&mut root, &parent).children[rank] = Some(replacement);
    DecoratedTree::new(m, root)
}

/// The trees visited while rotating `tree` into Shi type, starting with `tree`.
/// Each rotation strictly increases the shirank of the Catalan face.
pub fn shi_repair_steps(tree: &DecoratedTree) -> Result<Vec<DecoratedTree>> {
    let mut steps = vec![tree.clone()];
    let mut rank = shirank(&phi_catalan(tree))?;
    while let Some(w) = first_violation(steps.last().expect("nonempty")) {
        let next = rotate(steps.last().expect("nonempty"), &w)?;
        let next_rank = shirank(&phi_catalan(&next))?;
        if next_rank <= rank {
            return Err(Error::InvalidTree(format!(
                "rotation at {w} did not raise the shirank ({rank} -> {next_rank})"
            )));
        }
        rank = next_rank;
        steps.push(next);
    }
    Ok(steps)
}

/// The Shi-type tree with the same m-Shi face as `tree`.
pub fn shi_repair(tree: &DecoratedTree) -> Result<DecoratedTree> {
    Ok(shi_repair_steps(tree)?.pop().expect("nonempty"))
}

/// The Shi-type tree of an m-Shi face, found from any m-Catalan face of
/// `census` inside it.
pub fn shi_tree_of_face(shi_code: &FaceCode, census: &FaceCensus) -> Result<DecoratedTree> {
    let arr = shi_code.arrangement();
    if arr.kind() != Kind::MShi {
        return Err(Error::WrongKind {
            expected: Kind::MShi,
            got: arr.kind(),
        });
    }
    let cat = census.arrangement();
    if cat.kind() != Kind::MCatalan || cat.n() != arr.n() || cat.m() != arr.m() {
        return Err(Error::ArrangementMismatch(format!("{arr} vs census over {cat}")));
    }
    let face = census
        .faces()
        .find(|f| restrict_to_shi(f).is_ok_and(|r| &r == shi_code))
        .ok_or_else(|| Error::NonRealizable("no Catalan face lies in this Shi face".into()))?;
    shi_repair(&code_to_tree(&MCatalanCode::of_face(face)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{face_code_of_point, Arrangement, RationalPoint};
    use crate::maps::phi_shi;
    use crate::oracle::{enumerate_faces, GridParams};
    use crate::tree::parse_tree;

    fn t(text: &str) -> DecoratedTree {
        parse_tree(text, 1).unwrap()
    }

    #[test]
    fn fixed_point_on_shi_type() {
        let tree = t("({2} . ~({1}))");
        assert_eq!(shi_repair_steps(&tree).unwrap(), vec![tree]);
    }

    #[test]
    fn single_rotations() {
        let target = t("({1} ({2}) .)");
        for text in ["({1} . ({2}))", "({1} . ~({2}))"] {
            let tree = t(text);
            let steps = shi_repair_steps(&tree).unwrap();
            assert_eq!(steps.len(), 2);
            assert_eq!(steps[1], target);
            assert_eq!(phi_shi(&tree), phi_shi(&target));
        }
    }

    #[test]
    fn faces_to_trees() {
        let cat = Arrangement::catalan(2, 1).unwrap();
        let census = enumerate_faces(&cat, &GridParams::minimal(&cat)).unwrap();
        let shi = Arrangement::shi(2, 1).unwrap();
        let at = |a: i64, b: i64| face_code_of_point(&shi, &RationalPoint::from_integers(&[a, b], 4)).unwrap();
        assert_eq!(shi_tree_of_face(&at(0, 1), &census).unwrap(), t("({1} ({2}) .)"));
        assert_eq!(shi_tree_of_face(&at(4, 0), &census).unwrap(), t("({2} . ~({1}))"));
        assert!(shi_tree_of_face(&phi_catalan(&t("({1,2})")), &census).is_err());
    }
}
