use std::cmp::Ordering;
use std::collections::BTreeMap;

use shi_faces::maps::{phi_catalan, witness_point, MCatalanCode};
use shi_faces::oracle::{for_each_grid_point, GridParams};
use shi_faces::{enumerate_trees, face_code_of_point, Arrangement, DecoratedTree, FaceCode, RationalPoint, VertexRef};

const SCALES: &[(usize, usize)] = &[(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2), (2, 3)];

fn all_trees() -> impl Iterator<Item = DecoratedTree> {
    SCALES.iter().flat_map(|&(n, m)| enumerate_trees(n, m, false))
}

#[test]
fn order_root_is_minimum() {
    for t in all_trees() {
        assert!(t.vertex_order()[0].is_root(), "{t}");
    }
}

#[test]
fn order_node_then_rank_zero_child() {
    for t in all_trees() {
        let order = t.vertex_order();
        for (v, _) in t.nodes() {
            let at = order.iter().position(|x| x == &v).unwrap();
            assert_eq!(order[at + 1], v.child(0), "{t} at {v}");
        }
    }
}

#[test]
fn order_compatible_with_left_siblings() {
    let left = |v: &VertexRef| {
        let r = v.rank().unwrap();
        v.parent().unwrap().child(r - 1)
    };
    for t in all_trees() {
        let ranked: Vec<VertexRef> = t.vertices().into_iter().filter(|v| v.rank().is_some_and(|r| r > 0)).collect();
        for v in &ranked {
            for w in &ranked {
                assert_eq!(t.prec(v, w).unwrap(), t.prec(&left(v), &left(w)).unwrap(), "{t}: {v} vs {w}");
            }
        }
    }
}

#[test]
fn order_is_total_and_matches_prec() {
    for t in all_trees() {
        let order = t.vertex_order();
        for (a, v) in order.iter().enumerate() {
            for (b, w) in order.iter().enumerate() {
                assert_eq!(t.prec(v, w).unwrap(), a.cmp(&b));
            }
        }
    }
}

/// A dead leaf `k` places right of a captive sibling is followed by that
/// sibling's rank-`k` child.
#[test]
fn successor_of_dead_leaf() {
    let mut seen = 0;
    for t in all_trees() {
        let order = t.vertex_order();
        for (at, l) in order.iter().enumerate() {
            if !t.is_dead_leaf(l).unwrap() {
                continue;
            }
            seen += 1;
            let parent = l.parent().unwrap();
            let r = l.rank().unwrap();
            let captive = (0..r)
                .map(|c| parent.child(c))
                .find(|v| t.is_captive(v).unwrap())
                .expect("a dead leaf has a captive left sibling");
            let k = r - captive.rank().unwrap();
            assert_eq!(order[at + 1], captive.child(k), "{t} at {l}");
        }
    }
    assert!(seen > 0);
}

fn dashed_drift(t: &DecoratedTree, from: &VertexRef, to: &VertexRef) -> Option<usize> {
    if !t.has_dashed_path(from, to) {
        return None;
    }
    let path: Vec<VertexRef> = (from.0.len()..=to.0.len()).map(|l| VertexRef(to.0[..l].to_vec())).collect();
    Some(t.drift(&path).unwrap())
}

#[test]
fn drift_law_at_witness_points() {
    for t in all_trees() {
        let p = witness_point(&t);
        let (n, m) = (t.n(), t.m());
        for i in 1..=n {
            for j in 1..=n {
                let (vi, vj) = (t.locate(i).unwrap(), t.locate(j).unwrap());
                let drift = if vi == vj { None } else { dashed_drift(&t, &vj, &vi) };
                for s in 1..=m {
                    let equal = p.coords()[i - 1] == &p.coords()[j - 1] + num_rational::BigRational::from_integer(s.into());
                    assert_eq!(equal, drift == Some(s), "{t}: p_{i} = p_{j} + {s}");
                }
            }
        }
    }
}

fn grid_points(n: usize, m: usize) -> (Arrangement, Vec<RationalPoint>) {
    let arr = Arrangement::catalan(n, m).unwrap();
    let params = GridParams::minimal(&arr);
    let mut out = Vec::new();
    for_each_grid_point(&arr, &params, |nums| out.push(RationalPoint::from_integers(nums, params.denominator)))
        .unwrap();
    (arr, out)
}

#[test]
fn dash_sites_detect_equalities() {
    for (n, m) in [(3, 1), (2, 2), (2, 3)] {
        let (_, points) = grid_points(n, m);
        for p in points {
            let code = MCatalanCode::of_point(&p, m).unwrap();
            for i in 1..=n {
                for j in 1..=n {
                    for s in 1..=m {
                        let (lo, hi) = (code.eta(s, j), code.eta(0, i));
                        let law = lo < hi && (lo..hi).all(|t| code.is_dash_site(t));
                        let equal = p.coords()[i - 1] == &p.coords()[j - 1] + num_rational::BigRational::from_integer(s.into());
                        assert_eq!(law, equal, "{p:?}: p_{i} = p_{j} + {s}");
                    }
                }
            }
        }
    }
}

#[test]
fn code_determines_face() {
    for (n, m) in [(3, 1), (2, 2)] {
        let (arr, points) = grid_points(n, m);
        let mut by_face: BTreeMap<FaceCode, MCatalanCode> = BTreeMap::new();
        for p in points {
            let face = face_code_of_point(&arr, &p).unwrap();
            let code = MCatalanCode::of_point(&p, m).unwrap();
            match by_face.get(&face) {
                Some(c) => assert_eq!(c, &code, "two codes on one face"),
                None => {
                    by_face.insert(face, code);
                }
            }
        }
        let codes: Vec<&MCatalanCode> = by_face.values().collect();
        for (a, c) in codes.iter().enumerate() {
            assert!(codes[a + 1..].iter().all(|d| d != c), "one code on two faces");
        }
    }
}

#[test]
fn witness_lies_in_tree_face() {
    for t in all_trees() {
        let arr = Arrangement::catalan(t.n(), t.m()).unwrap();
        let face = face_code_of_point(&arr, &witness_point(&t)).unwrap();
        assert_eq!(face, phi_catalan(&t), "{t}");
    }
}

#[test]
fn root_precedes_everything() {
    let t = shi_faces::parse_tree("({1} ({2}) ({3}))", 1).unwrap();
    for v in t.vertices().iter().skip(1) {
        assert_eq!(t.prec(&VertexRef::root(), v).unwrap(), Ordering::Less);
    }
}
