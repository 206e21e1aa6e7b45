//! Cross-checks between the oracle, the tree bijections, the code chain and
//! the closed-form counts.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrangement::{face_dimension, restrict_to_shi, Arrangement, FaceCode, Kind};
use crate::chain::{enumerate_marked_functions, t_to_w, w_to_t};
use crate::counting::{self, face_count, IdentityReport};
use crate::error::Result;
use crate::maps::{code_to_tree, phi_catalan, phi_shi, point_to_tree, shi_repair_steps, witness_point, MCatalanCode};
use crate::oracle::{census_diff, enumerate_faces, FaceCensus, GridParams};
use crate::tree::{enumerate_trees, DecoratedTree};

/// How many counterexamples a suite keeps.
const MAX_FAILURES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: impl Into<String>) -> Self {
        SuiteReport {
            name: name.into(),
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.failures.len() < MAX_FAILURES {
            self.failures.push(failure());
        }
    }

    fn absorb(&mut self, results: Vec<std::result::Result<(), String>>) {
        for r in results {
            self.check(r.is_ok(), || r.err().unwrap_or_default());
        }
    }

    fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        SuiteReport {
            name: name.into(),
            checked: 1,
            failures: vec![err.to_string()],
        }
    }

    /// A summary line such as `PASS catalan bijection n=3 m=1 (42 checks)`.
    pub fn summary(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut line = format!("{status} {} ({} checks)", self.name, self.checked);
        if let Some(first) = self.failures.first() {
            line.push_str(": ");
            line.push_str(first);
        }
        line
    }
}

impl From<IdentityReport> for SuiteReport {
    fn from(r: IdentityReport) -> Self {
        SuiteReport {
            name: r.name,
            checked: r.checked,
            failures: r.first_failure.into_iter().collect(),
        }
    }
}

fn census(kind: Kind, n: usize, m: usize) -> Result<FaceCensus> {
    let arr = Arrangement::new(kind, n, m)?;
    enumerate_faces(&arr, &GridParams::minimal(&arr))
}

fn shi_trees(n: usize, m: usize) -> Vec<DecoratedTree> {
    enumerate_trees(n, m, true)
}

/// Oracle counts by dimension against the closed forms.
pub fn census_counts(kind: Kind, n: usize, m: usize) -> SuiteReport {
    let name = format!("{kind} census counts n={n} m={m}");
    let census = match census(kind, n, m) {
        Ok(c) => c,
        Err(e) => return SuiteReport::error(name, e),
    };
    let mut report = SuiteReport::new(name);
    for k in 0..=n {
        let formula = face_count(kind, n, k, m);
        let oracle = BigInt::from(census.count(k));
        report.check(formula == oracle, || format!("dimension {k}: formula {formula}, oracle {oracle}"));
    }
    report
}

fn describe_diff(what: &str, codes: &[FaceCode]) -> String {
    format!("{} {what}, first {:?}", codes.len(), codes[0].describe())
}

/// `phi_catalan` hits every oracle face exactly once, with dimension equal to
/// the number of free nodes.
pub fn catalan_bijection(n: usize, m: usize) -> SuiteReport {
    let name = format!("catalan bijection n={n} m={m}");
    let census = match census(Kind::MCatalan, n, m) {
        Ok(c) => c,
        Err(e) => return SuiteReport::error(name, e),
    };
    let trees = enumerate_trees(n, m, false);
    let codes: Vec<FaceCode> = trees.par_iter().map(phi_catalan).collect();
    bijection_report(name, &census, &trees, &codes)
}

/// `phi_shi` on Shi-type trees hits every oracle Shi face exactly once.
pub fn shi_bijection(n: usize, m: usize) -> SuiteReport {
    let name = format!("shi bijection n={n} m={m}");
    let census = match census(Kind::MShi, n, m) {
        Ok(c) => c,
        Err(e) => return SuiteReport::error(name, e),
    };
    let trees = shi_trees(n, m);
    let codes: Vec<FaceCode> = trees.par_iter().map(phi_shi).collect();
    bijection_report(name, &census, &trees, &codes)
}

fn bijection_report(name: String, census: &FaceCensus, trees: &[DecoratedTree], codes: &[FaceCode]) -> SuiteReport {
    let mut report = SuiteReport::new(name);
    match census_diff(census, codes) {
        Ok(diff) => {
            report.check(diff.missing.is_empty(), || describe_diff("faces without a tree", &diff.missing));
            report.check(diff.extra.is_empty(), || describe_diff("tree faces not in the census", &diff.extra));
        }
        Err(e) => report.check(false, || e.to_string()),
    }
    let mut seen: BTreeMap<&FaceCode, &DecoratedTree> = BTreeMap::new();
    for (tree, code) in trees.iter().zip(codes) {
        let first = seen.insert(code, tree);
        report.check(first.is_none(), || format!("{tree} and {} share a face", first.unwrap()));
        let dim = face_dimension(code);
        let free = tree.free_node_count();
        report.check(dim.as_ref().is_ok_and(|&d| d == free), || {
            format!("{tree}: {free} free nodes but face dimension {dim:?}")
        });
    }
    report
}

/// `point_to_tree(witness_point(T)) = T` for every tree.
pub fn witness_round_trip(n: usize, m: usize) -> SuiteReport {
    let mut report = SuiteReport::new(format!("witness round trip n={n} m={m}"));
    let results = enumerate_trees(n, m, false)
        .par_iter()
        .map(|tree| {
            let p = witness_point(tree);
            match point_to_tree(&p, m) {
                Ok(back) if &back == tree => Ok(()),
                Ok(back) => Err(format!("{tree} -> {p:?} -> {back}")),
                Err(e) => Err(format!("{tree} -> {p:?}: {e}")),
            }
        })
        .collect();
    report.absorb(results);
    report
}

/// Every Shi face contains exactly one Catalan face whose tree is of Shi type,
/// and repair reaches that tree from every constituent.
pub fn shi_repair_uniqueness(n: usize, m: usize) -> SuiteReport {
    let name = format!("shi repair n={n} m={m}");
    let (cat, shi) = match (census(Kind::MCatalan, n, m), census(Kind::MShi, n, m)) {
        (Ok(c), Ok(s)) => (c, s),
        (Err(e), _) | (_, Err(e)) => return SuiteReport::error(name, e),
    };
    let mut report = SuiteReport::new(name);
    let mut groups: BTreeMap<FaceCode, Vec<&FaceCode>> = BTreeMap::new();
    for face in cat.faces() {
        match restrict_to_shi(face) {
            Ok(r) => groups.entry(r).or_default().push(face),
            Err(e) => report.check(false, || e.to_string()),
        }
    }
    report.check(groups.len() == shi.len(), || {
        format!("{} restricted faces, {} Shi faces", groups.len(), shi.len())
    });
    let results: Vec<_> = groups
        .par_iter()
        .map(|(shi_face, members)| check_group(shi_face, members))
        .collect();
    report.absorb(results);
    report
}

fn check_group(shi_face: &FaceCode, members: &[&FaceCode]) -> std::result::Result<(), String> {
    let trees = members
        .iter()
        .map(|f| MCatalanCode::of_face(f).and_then(|c| code_to_tree(&c)))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| e.to_string())?;
    let shi_type: Vec<&DecoratedTree> = trees.iter().filter(|t| t.is_shi_type()).collect();
    let [target] = shi_type.as_slice() else {
        return Err(format!(
            "Shi face {:?} has {} Shi-type constituents",
            shi_face.describe(),
            shi_type.len()
        ));
    };
    let shi_dim = face_dimension(shi_face).map_err(|e| e.to_string())?;
    let max_dim = trees.iter().map(DecoratedTree::free_node_count).max().unwrap_or(0);
    if shi_dim != max_dim || shi_dim != target.free_node_count() {
        return Err(format!(
            "Shi face {:?} has dimension {shi_dim}, constituents reach {max_dim}, Shi-type tree {target} has {}",
            shi_face.describe(),
            target.free_node_count()
        ));
    }
    for tree in &trees {
        let steps = shi_repair_steps(tree).map_err(|e| format!("{tree}: {e}"))?;
        let end = steps.last().expect("nonempty");
        if end != *target {
            return Err(format!("{tree} repairs to {end}, expected {target}"));
        }
        if phi_shi(end) != *shi_face {
            return Err(format!("{end} left its Shi face"));
        }
    }
    Ok(())
}

/// `t_to_w` and `w_to_t` are mutually inverse, and the image sizes per
/// dimension match the closed form and the direct count of marked functions.
pub fn code_chain(n: usize, m: usize) -> SuiteReport {
    let mut report = SuiteReport::new(format!("code chain n={n} m={m}"));
    let trees = shi_trees(n, m);
    let forward: Vec<std::result::Result<(usize, String), String>> = trees
        .par_iter()
        .map(|tree| {
            let w = t_to_w(tree).map_err(|e| format!("{tree}: {e}"))?;
            match w_to_t(&w) {
                Ok(back) if &back == tree => Ok((w.k(), w.to_string())),
                Ok(back) => Err(format!("{tree} -> {w} -> {back}")),
                Err(e) => Err(format!("{tree} -> {w}: {e}")),
            }
        })
        .collect();
    let mut image: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for r in forward {
        match r {
            Ok((k, w)) => {
                report.check(true, String::new);
                image.entry(k).or_default().insert(w);
            }
            Err(e) => report.check(false, || e),
        }
    }
    for k in 1..=n {
        let all = enumerate_marked_functions(n, m, k);
        let backward: Vec<_> = all
            .par_iter()
            .map(|w| match w_to_t(w).and_then(|t| t_to_w(&t)) {
                Ok(back) if &back == w => Ok(()),
                Ok(back) => Err(format!("{w} -> {back}")),
                Err(e) => Err(format!("{w}: {e}")),
            })
            .collect();
        report.absorb(backward);
        let formula = counting::shi_face_count(n, k, m);
        let hit = image.get(&k).map_or(0, BTreeSet::len);
        report.check(formula == BigInt::from(hit) && hit == all.len(), || {
            format!("k={k}: formula {formula}, image {hit}, marked functions {}", all.len())
        });
    }
    report
}

/// Generating-function identities and the integer cross-identities.
pub fn series_suites(m: usize, order: usize) -> Vec<SuiteReport> {
    vec![
        counting::verify_catalan_gf(m, order).into(),
        counting::verify_shi_gf(m, order).into(),
        counting::verify_dash_tree_gf(m, order).into(),
        counting::verify_catalan_from_dash_trees(m, order).into(),
    ]
}

/// Every suite at `n <= n_max`, `m <= m_max`.
pub fn run_all(n_max: usize, m_max: usize) -> Vec<SuiteReport> {
    let mut out = Vec::new();
    for m in 1..=m_max {
        for n in 1..=n_max {
            for kind in [Kind::Braid, Kind::MCatalan, Kind::MShi] {
                if kind != Kind::Braid || m == 1 {
                    out.push(census_counts(kind, n, m));
                }
            }
            out.push(catalan_bijection(n, m));
            out.push(shi_bijection(n, m));
            out.push(witness_round_trip(n, m));
            out.push(shi_repair_uniqueness(n, m));
            out.push(code_chain(n, m));
        }
        out.extend(series_suites(m, n_max.max(1)));
        out.push(counting::verify_catalan_via_dash_trees(n_max, m).into());
    }
    out.push(counting::verify_m1_simplification(n_max).into());
    out.push(counting::verify_twodim(n_max, m_max).into());
    out
}

/// One row of `counts.csv`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub kind: Kind,
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub formula_count: String,
    pub oracle_count: Option<usize>,
    pub tree_count: Option<usize>,
    pub w_count: Option<usize>,
}

impl CountRow {
    pub const CSV_HEADER: &'static str = "kind,m,n,k,formula_count,oracle_count,tree_count,w_count";

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.kind,
            self.m,
            self.n,
            self.k,
            self.formula_count,
            opt(self.oracle_count),
            opt(self.tree_count),
            opt(self.w_count)
        )
    }
}

/// Counts for dimensions `1..=n` from every available source. The oracle
/// and the enumerations run only when `exhaustive` is set.
pub fn count_rows(kind: Kind, n: usize, m: usize, exhaustive: bool) -> Result<Vec<CountRow>> {
    let oracle = if exhaustive { Some(census(kind, n, m)?) } else { None };
    let trees = match (exhaustive, kind) {
        (true, Kind::MCatalan) => Some(enumerate_trees(n, m, false)),
        (true, Kind::MShi) => Some(shi_trees(n, m)),
        _ => None,
    };
    Ok((1..=n)
        .map(|k| CountRow {
            kind,
            m,
            n,
            k,
            formula_count: face_count(kind, n, k, m).to_string(),
            oracle_count: oracle.as_ref().map(|c| c.count(k)),
            tree_count: trees
                .as_ref()
                .map(|ts| ts.iter().filter(|t| t.free_node_count() == k).count()),
            w_count: (exhaustive && kind == Kind::MShi).then(|| enumerate_marked_functions(n, m, k).len()),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        for r in run_all(2, 2) {
            assert!(r.passed(), "{}", r.summary());
            assert!(r.checked > 0, "{}", r.name);
        }
    }

    #[test]
    fn rows_agree() {
        let rows = count_rows(Kind::MShi, 3, 1, true).unwrap();
        let got: Vec<_> = rows
            .iter()
            .map(|r| (r.formula_count.as_str(), r.oracle_count, r.tree_count, r.w_count))
            .collect();
        assert_eq!(
            got,
            vec![
                ("6", Some(6), Some(6), Some(6)),
                ("21", Some(21), Some(21), Some(21)),
                ("16", Some(16), Some(16), Some(16)),
            ]
        );
        assert_eq!(rows[1].to_csv(), "m_shi,1,3,2,21,21,21,21");
    }

    #[test]
    fn failure_summary_names_the_counterexample() {
        let mut r = SuiteReport::new("probe");
        r.check(false, || "tree ({1}) broke".into());
        assert_eq!(r.summary(), "FAIL probe (1 checks): tree ({1}) broke");
    }
}
