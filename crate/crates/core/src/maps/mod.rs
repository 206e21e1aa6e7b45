//! Maps between decorated trees and faces.

mod budding;
mod code;
mod repair;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arrangement::{restrict_to_shi, Arrangement, FaceCode, Kind, RationalPoint};
use crate::error::{Error, Result};
use crate::tree::{DecoratedTree, VertexRef};

pub use budding::{code_to_tree, point_to_tree};
pub use code::MCatalanCode;
pub use repair::{shi_repair, shi_repair_steps, shi_tree_of_face};

/// The m-Catalan face of a decorated tree.
pub fn phi_catalan(tree: &DecoratedTree) -> FaceCode {
    let arr = Arrangement::catalan(tree.n(), tree.m()).expect("tree has n, m >= 1");
    let layout = tree.layout();
    let vertex = |i: usize| &layout.order[layout.node_pos[i - 1]];
    // side of x_a - x_b relative to s, for s >= 0
    let delta = |a: usize, b: usize, s: usize| -> Ordering {
        let pa = layout.node_pos[a - 1];
        if s == 0 {
            return pa.cmp(&layout.node_pos[b - 1]);
        }
        let target = vertex(b).child(s);
        let pt = layout.pos[&target];
        if pa < pt {
            Ordering::Less
        } else if pa == layout.nextlive[pt] && tree.has_dashed_path(vertex(b), vertex(a)) {
            Ordering::Equal
        } else {
            Ordering::Greater
        }
    };
    FaceCode::from_fn(arr, |h| {
        if h.s >= 0 {
            delta(h.i, h.j, h.s as usize)
        } else {
            delta(h.j, h.i, (-h.s) as usize).reverse()
        }
    })
}

/// The m-Shi face of a tree: the restriction of its m-Catalan face.
pub fn phi_shi(tree: &DecoratedTree) -> FaceCode {
    restrict_to_shi(&phi_catalan(tree)).expect("phi_catalan yields a Catalan code")
}

/// `2^-(q+2)`.
fn epsilon(q: usize) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << (q + 2))
}

/// A point inside `phi_catalan(tree)`.
///
/// `p_i = eps_0 + rhodot(v(i)) + sum of eps_q` over the solid internal edges
/// on the root path of `v(i)`, where the `q`-th solid internal edge in tree
/// order carries `eps_q`.
pub fn witness_point(tree: &DecoratedTree) -> RationalPoint {
    let mut solid: Vec<VertexRef> = tree
        .nodes()
        .into_iter()
        .filter(|(v, node)| !v.is_root() && !node.captive)
        .map(|(v, _)| v)
        .collect();
    solid.sort();
    let weight = |v: &VertexRef| -> BigRational {
        match solid.binary_search(v) {
            Ok(q) => epsilon(q + 1),
            Err(_) => BigRational::zero(),
        }
    };
    let mut coords = vec![BigRational::zero(); tree.n()];
    for (v, node) in tree.nodes() {
        let mut x = epsilon(0) + BigRational::from_integer(BigInt::from(v.rhodot()));
        for len in 1..=v.0.len() {
            x += weight(&VertexRef(v.0[..len].to_vec()));
        }
        for &l in &node.labels {
            coords[l - 1] = x.clone();
        }
    }
    RationalPoint::new(coords)
}

/// Number of pairs `i < j` with `x_i + m > x_j` on the face.
pub fn shirank(code: &FaceCode) -> Result<usize> {
    let arr = code.arrangement();
    if arr.kind() != Kind::MCatalan {
        return Err(Error::WrongKind {
            expected: Kind::MCatalan,
            got: arr.kind(),
        });
    }
    let m = arr.m() as i64;
    Ok(code
        .iter()
        .filter(|(h, o)| h.s == -m && *o == Ordering::Greater)
        .count())
}
