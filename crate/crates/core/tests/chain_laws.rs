use std::collections::BTreeSet;

use shi_faces::chain::{
    enumerate_marked_functions, t_to_u, u_to_t, u_to_v, v_to_u, v_to_w, w_to_v, CayleyFoliage, MarkedFunction,
};
use shi_faces::enumerate_trees;

const SCALES: &[(usize, usize)] = &[(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2), (4, 2), (3, 3)];

#[test]
fn every_step_inverts_from_the_tree_side() {
    for &(n, m) in SCALES {
        for t in enumerate_trees(n, m, true) {
            let u = t_to_u(&t).unwrap();
            assert_eq!(u_to_t(&u).unwrap(), t);
            let v = u_to_v(&u).unwrap();
            assert_eq!(v_to_u(&v).unwrap(), u, "{t}");
            let w = v_to_w(&v).unwrap();
            assert_eq!(w_to_v(&w).unwrap(), v, "{t}");
        }
    }
}

#[test]
fn every_step_inverts_from_the_function_side() {
    for &(n, m) in SCALES {
        for k in 1..=n {
            for w in enumerate_marked_functions(n, m, k) {
                let v = w_to_v(&w).unwrap();
                assert_eq!(v_to_w(&v).unwrap(), w);
                let u = v_to_u(&v).unwrap();
                assert_eq!(u_to_v(&u).unwrap(), v, "{w}");
                let t = u_to_t(&u).unwrap();
                assert_eq!(t_to_u(&t).unwrap(), u, "{w}");
                assert!(t.is_shi_type(), "{w} -> {t}");
                assert_eq!(t.free_node_count(), k, "{w} -> {t}");
            }
        }
    }
}

/// Textbook Pruefer code: repeatedly drop the smallest leaf and record its neighbour.
fn pruefer(vertices: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); vertices + 1];
    for &(a, b) in edges {
        adj[a].insert(b);
        adj[b].insert(a);
    }
    let mut out = Vec::new();
    for _ in 0..vertices.saturating_sub(2) {
        let leaf = (1..=vertices).find(|&v| adj[v].len() == 1).unwrap();
        let nb = *adj[leaf].iter().next().unwrap();
        out.push(nb);
        adj[nb].remove(&leaf);
        adj[leaf].clear();
    }
    out
}

#[test]
fn m1_is_the_classical_pruefer_code() {
    for n in 1..=4 {
        for t in enumerate_trees(n, 1, true) {
            let v = u_to_v(&t_to_u(&t).unwrap()).unwrap();
            let edges: Vec<(usize, usize)> = v.edges().map(|(a, b, _)| (a, b)).collect();
            assert_eq!(v_to_w(&v).unwrap().values(), pruefer(n + 1, &edges), "{t}");
        }
    }
}

fn check_marks(v: &CayleyFoliage, w: &MarkedFunction) {
    for &s in v.marked() {
        assert!(v.degree(s) >= 2, "{v}: marked {s} has degree {}", v.degree(s));
        assert!(w.f_hat().iter().any(|&(i, _)| i == s), "{w}: mark {s} outside the image");
    }
    assert_eq!(v.marked(), w.s());
}

#[test]
fn marks_sit_on_inner_vertices_and_in_the_image() {
    for &(n, m) in SCALES {
        for t in enumerate_trees(n, m, true) {
            let v = u_to_v(&t_to_u(&t).unwrap()).unwrap();
            check_marks(&v, &v_to_w(&v).unwrap());
        }
    }
}

#[test]
fn one_dimensional_count() {
    for (n, m) in [(1usize, 1usize), (3, 1), (4, 1), (2, 2), (3, 2), (3, 3)] {
        let want: usize = (1..=n).product::<usize>() * m.pow(n as u32 - 1);
        assert_eq!(enumerate_marked_functions(n, m, 1).len(), want);
    }
}
