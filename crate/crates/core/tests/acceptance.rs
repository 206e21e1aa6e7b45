//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test -p shi-faces --test acceptance -- --nocapture`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use shi_faces::counting::{self, shi_face_count};
use shi_faces::maps::{phi_catalan, point_to_tree, MCatalanCode};
use shi_faces::oracle::{enumerate_faces, GridParams};
use shi_faces::verify::{self, SuiteReport};
use shi_faces::{face_code_of_point, render_tree, Arrangement, Kind, RationalPoint};

/// The scales at which the bijections are certified exhaustively.
const SCALES: &[(usize, usize)] = &[(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2)];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    failures: Vec<String>,
    checks: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            failures: Vec::new(),
            checks: 0,
        }
    }

    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn suite(&mut self, r: SuiteReport) {
        self.checks += r.checked;
        if !r.passed() {
            self.failures.push(r.summary());
        }
    }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// Catalan numbers from the ballot recurrence, independent of the library.
fn catalan_number(n: u64) -> u64 {
    let mut c = vec![1u64];
    for i in 1..=n as usize {
        c.push((0..i).map(|j| c[j] * c[i - 1 - j]).sum());
    }
    c[n as usize]
}

fn census_counts(kind: Kind, n: usize, m: usize) -> Vec<usize> {
    let arr = Arrangement::new(kind, n, m).unwrap();
    let c = enumerate_faces(&arr, &GridParams::minimal(&arr)).unwrap();
    (1..=n).map(|k| c.count(k)).collect()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for n in 2..=4u64 {
        let shi = census_counts(Kind::MShi, n as usize, 1);
        let want = (n + 1).pow(n as u32 - 1) as usize;
        o.expect(shi[n as usize - 1] == want, format!("Shi regions n={n}: {} vs {want}", shi[n as usize - 1]));
        let cat = census_counts(Kind::MCatalan, n as usize, 1);
        let want = (factorial(n) * catalan_number(n)) as usize;
        o.expect(cat[n as usize - 1] == want, format!("Catalan regions n={n}: {} vs {want}", cat[n as usize - 1]));
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let want = vec![6, 21, 16];
    let oracle = census_counts(Kind::MShi, 3, 1);
    o.expect(oracle == want, format!("oracle {oracle:?}"));
    o.expect(oracle.iter().sum::<usize>() == 43, "oracle total is not 43");
    let trees = shi_faces::enumerate_trees(3, 1, true);
    let by_tree: Vec<usize> = (1..=3)
        .map(|k| trees.iter().filter(|t| t.free_node_count() == k).count())
        .collect();
    o.expect(by_tree == want, format!("Shi-type trees {by_tree:?}"));
    o.suite(verify::shi_bijection(3, 1));
    let formula: Vec<BigInt> = (1..=3).map(|k| shi_face_count(3, k, 1)).collect();
    o.expect(
        formula == want.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>(),
        format!("formula {formula:?}"),
    );
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for &(n, m) in SCALES {
        o.suite(verify::catalan_bijection(n, m));
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for &(n, m) in SCALES {
        o.suite(verify::witness_round_trip(n, m));
    }
    let p: RationalPoint = "1.0,1.0,1.1,2.0,2.2,4.0".parse().unwrap();
    o.expect(p.coords()[2] == BigRational::new(11.into(), 10.into()), "decimal parsing is not exact");
    let code = MCatalanCode::of_point(&p, 1).unwrap();
    o.expect(code.eta_row(0) == [1, 1, 2, 4, 6, 9], format!("eta_0 {:?}", code.eta_row(0)));
    o.expect(code.eta_row(1) == [3, 3, 5, 7, 8, 10], format!("eta_1 {:?}", code.eta_row(1)));
    o.expect(code.dashed(1).iter().copied().eq([4]), format!("D_1 {:?}", code.dashed(1)));
    o.expect(code.dash_sites() == [3], format!("dash sites {:?}", code.dash_sites()));
    let tree = point_to_tree(&p, 1).unwrap();
    let text = render_tree(&tree);
    o.expect(text == "({1,2} ({3} . ({5} . ({6} . .))) ~({4} . .))", format!("tree {text}"));
    let face = face_code_of_point(&Arrangement::catalan(6, 1).unwrap(), &p).unwrap();
    o.expect(phi_catalan(&tree) == face, "the tree's face does not contain the point");
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for &(n, m) in SCALES {
        o.suite(verify::shi_repair_uniqueness(n, m));
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let scales = [(1, 1), (2, 1), (3, 1), (4, 1), (1, 2), (2, 2), (3, 2), (3, 3)];
    for (n, m) in scales {
        o.suite(verify::code_chain(n, m));
        let lines = shi_faces::chain::enumerate_marked_functions(n, m, 1).len();
        let want = factorial(n as u64) * (m as u64).pow(n as u32 - 1);
        o.expect(lines as u64 == want, format!("one-dimensional n={n} m={m}: {lines} vs {want}"));
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    for (m, order) in [(1, 6), (2, 5)] {
        for r in [counting::verify_catalan_gf(m, order), counting::verify_shi_gf(m, order)] {
            o.expect(r.max_discrepancy == "0", format!("{} discrepancy {}", r.name, r.max_discrepancy));
            o.suite(r.into());
        }
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for m in 1..=3 {
        o.suite(counting::verify_catalan_via_dash_trees(6, m).into());
    }
    o.suite(counting::verify_m1_simplification(12).into());
    o.suite(counting::verify_twodim(8, 3).into());
    o
}

/// Grid sufficiency: a finer and wider grid finds no additional faces.
fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    for (kind, n, m) in [(Kind::MShi, 3, 1), (Kind::MCatalan, 3, 1), (Kind::MCatalan, 2, 2), (Kind::MShi, 2, 3)] {
        let arr = Arrangement::new(kind, n, m).unwrap();
        let minimal = GridParams::minimal(&arr);
        let coarse = enumerate_faces(&arr, &minimal).unwrap();
        let finer = GridParams::new(
            2 * minimal.denominator + 1,
            &minimal.half_span + BigRational::from_integer(2.into()),
        );
        let fine = enumerate_faces(&arr, &finer).unwrap();
        o.expect(
            coarse.faces().eq(fine.faces()),
            format!("{kind} n={n} m={m}: {} faces on the minimal grid, {} on the finer one", coarse.len(), fine.len()),
        );
    }
    o
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("region counts", criterion_1),
        ("Shi face table n=3", criterion_2),
        ("Catalan bijection", criterion_3),
        ("inverse and worked example", criterion_4),
        ("Shi uniqueness and repair", criterion_5),
        ("code chain round trips", criterion_6),
        ("generating functions", criterion_7),
        ("formula cross-identities", criterion_8),
        ("grid sufficiency", criterion_9),
    ];
    let mut failed = Vec::new();
    for (idx, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let status = if outcome.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({name}): {status} [{} checks, {:.2?}]",
            idx + 1,
            outcome.checks,
            start.elapsed()
        );
        for f in &outcome.failures {
            println!("    {f}");
        }
        if !outcome.failures.is_empty() {
            failed.push(idx + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
