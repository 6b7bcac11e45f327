//! Acceptance suite: one PASS/FAIL line per criterion. Everything is exact,
//! so every comparison is an equality.

use std::process::ExitCode;

use num_bigint::BigInt;
use quasitoric_cli::document::InputDocument;
use quasitoric_cli::examples::generate_example;
use quasitoric_cli::report::{
    build_pair, check_document, run_report, ReportDocument, ReportError, ReportOptions,
};
use quasitoric_core::algebra::Rational;
use quasitoric_core::char_pair::{index_lambda, index_mu, CharError, CharacteristicPair};
use quasitoric_core::equivariant::{default_samples, rigidity_check};
use quasitoric_core::genera::{chi_y, generic_nu_samples, genus_report, nu_invariance_check};
use quasitoric_core::polytope::{Facet, Orientation, PolytopeError};

const NU_TRIALS: usize = 100;
const SEED: u64 = 2024;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example(name: &str) -> InputDocument {
    generate_example(name).expect("built-in example")
}

fn pair(name: &str) -> CharacteristicPair {
    build_pair(&example(name)).expect("valid example")
}

fn report_with_nu(doc: &InputDocument, nu: &[i64]) -> Result<ReportDocument, String> {
    let options = ReportOptions {
        nu: Some(nu.iter().map(|&x| BigInt::from(x)).collect()),
        ..ReportOptions::default()
    };
    run_report(doc, &options).map_err(|e| e.to_string())
}

/// Rows for the vertices (0,0), (1,0), (0,1) of the triangle, in that order.
fn triangle_rows(r: &ReportDocument) -> Vec<(i8, usize)> {
    [["0/1", "0/1"], ["1/1", "0/1"], ["0/1", "1/1"]]
        .iter()
        .map(|c| {
            let row = r
                .vertices
                .iter()
                .find(|v| v.coordinates == c)
                .expect("triangle vertex");
            (row.sigma, row.index)
        })
        .collect()
}

fn int(x: &quasitoric_cli::num::Int) -> i64 {
    i64::try_from(&x.0).expect("small value")
}

struct Expected {
    sigma: [i8; 3],
    index: Option<[usize; 3]>,
    signature: i64,
    todd: i64,
    top_chern: Option<i64>,
    euler: Option<u64>,
}

fn triangle(doc: &InputDocument, e: Expected) -> Check {
    let r = report_with_nu(doc, &[1, 2])?;
    let rows = triangle_rows(&r);
    let sigma: Vec<i8> = rows.iter().map(|r| r.0).collect();
    let index: Vec<usize> = rows.iter().map(|r| r.1).collect();
    ensure(sigma == e.sigma, || {
        format!("sigma {sigma:?}, expected {:?}", e.sigma)
    })?;
    if let Some(ind) = e.index {
        ensure(index == ind, || {
            format!("indices {index:?}, expected {ind:?}")
        })?;
    }
    ensure(int(&r.signature) == e.signature, || {
        format!("signature {}", r.signature)
    })?;
    ensure(int(&r.todd) == e.todd, || format!("todd {}", r.todd))?;
    if let Some(c) = e.top_chern {
        ensure(int(&r.top_chern) == c, || format!("c_n {}", r.top_chern))?;
    }
    if let Some(x) = e.euler {
        ensure(r.euler == x, || format!("euler {}", r.euler))?;
    }
    Ok(())
}

fn criterion_1() -> Check {
    triangle(
        &example("cp2"),
        Expected {
            sigma: [1, 1, 1],
            index: Some([0, 1, 2]),
            signature: 1,
            todd: 1,
            top_chern: Some(3),
            euler: Some(3),
        },
    )
}

fn reversed_cp2() -> Expected {
    Expected {
        sigma: [-1, -1, -1],
        index: None,
        signature: -1,
        todd: -1,
        top_chern: None,
        euler: None,
    }
}

fn criterion_2a() -> Check {
    triangle(&example("cp2-bar"), reversed_cp2())?;
    let mut reversed = example("cp2");
    reversed.orientation = Orientation::Reversed;
    triangle(&reversed, reversed_cp2())?;
    let a = report_with_nu(&example("cp2-bar"), &[1, 2])?;
    let b = report_with_nu(&reversed, &[1, 2])?;
    ensure(a.chi_y == b.chi_y, || {
        "cp2-bar and reversed cp2 differ".into()
    })
}

/// Negates every column of the cp2 matrix, keeps the standard
/// orientation, and compares with the reversed-orientation report.
fn criterion_2b() -> Check {
    let mut negated = example("cp2");
    for col in negated.lambda.as_mut().expect("lambda") {
        for x in col.iter_mut() {
            *x = -x.clone();
        }
    }
    let want = report_with_nu(&example("cp2-bar"), &[1, 2])?;
    let got = report_with_nu(&negated, &[1, 2])?;
    let (ws, gs) = (triangle_rows(&want), triangle_rows(&got));
    ensure(
        ws == gs
            && want.chi_y == got.chi_y
            && want.signature == got.signature
            && want.todd == got.todd,
        || {
            format!(
                "negated columns give sigma/index {gs:?}, chi_y {}, signature {}, todd {}; \
                 reversed report has {ws:?}, chi_y {}, signature {}, todd {}",
                got.chi_y_text, got.signature, got.todd, want.chi_y_text, want.signature, want.todd
            )
        },
    )
}

fn criterion_3() -> Check {
    triangle(
        &example("cp2-eta"),
        Expected {
            sigma: [1, -1, -1],
            index: Some([0, 0, 1]),
            signature: 1,
            todd: 0,
            top_chern: Some(-1),
            euler: Some(3),
        },
    )?;
    let r = report_with_nu(&example("cp2-eta"), &[1, 2])?;
    ensure(int(&r.top_chern) != r.euler as i64, || {
        "c_n equals euler".into()
    })
}

const FIXTURES: [&str; 6] = ["cp2", "cp2-bar", "cp2-eta", "simplex-3", "cube-2", "cube-3"];

fn criterion_4() -> Check {
    for name in FIXTURES {
        let p = pair(name);
        let r = nu_invariance_check(p.frames(), NU_TRIALS, SEED).map_err(|e| e.to_string())?;
        ensure(r.trials == NU_TRIALS, || {
            format!("{name}: only {} trials", r.trials)
        })?;
        if let Some(m) = r.first_mismatch {
            return Err(format!(
                "{name}: nu {:?} gives {} instead of {}",
                m.nu.as_slice(),
                m.chi_y,
                r.reference
            ));
        }
    }
    Ok(())
}

fn all_fixtures() -> Vec<&'static str> {
    let mut v = FIXTURES.to_vec();
    v.extend([
        "simplex-1",
        "simplex-2",
        "simplex-4",
        "cube-1",
        "cp2*simplex-1",
        "cp2-eta*cp2-bar",
    ]);
    v
}

fn criterion_5() -> Check {
    for name in all_fixtures() {
        let p = pair(name);
        for nu in generic_nu_samples(p.frames(), NU_TRIALS, SEED) {
            for f in p.frames() {
                let a = index_mu(f, &nu).map_err(|e| e.to_string())?.index;
                let b = index_lambda(f, &nu).map_err(|e| e.to_string())?;
                ensure(a == b, || {
                    format!(
                        "{name}, vertex {}, nu {:?}: {a} vs {b}",
                        f.vertex,
                        nu.as_slice()
                    )
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    for name in all_fixtures() {
        let p = pair(name);
        let g = genus_report(&p, None).map_err(|e| e.to_string())?;
        let r = rigidity_check(p.frames(), &g.nu_used, &default_samples())
            .map_err(|e| e.to_string())?;
        ensure(r.samples.len() == 5, || "expected five samples".into())?;
        for s in &r.samples {
            ensure(s.agrees, || format!("{name}: mismatch at q = {}", s.q))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let expected_signature = [
        ("simplex-1", 0),
        ("simplex-2", 1),
        ("simplex-3", 0),
        ("simplex-4", 1),
        ("cube-1", 0),
        ("cube-2", 0),
        ("cube-3", 0),
    ];
    for (name, sig) in expected_signature {
        let r = run_report(&example(name), &ReportOptions::default()).map_err(|e| e.to_string())?;
        let t = r
            .toric
            .as_ref()
            .ok_or_else(|| format!("{name}: no toric checks"))?;
        ensure(t.passed, || format!("{name}: {:?}", t.failure))?;
        ensure(int(&r.todd) == 1, || format!("{name}: todd {}", r.todd))?;
        ensure(r.vertices.iter().all(|v| v.sigma == 1), || {
            format!("{name}: sign -1")
        })?;
        ensure(
            r.vertices.iter().filter(|v| v.index == 0).count() == 1,
            || format!("{name}: index-0 vertices"),
        )?;
        let h: Vec<i64> = r.morse_counts.iter().map(|&c| c as i64).collect();
        ensure(h == r.h_vector, || {
            format!("{name}: counts {h:?} vs h {:?}", r.h_vector)
        })?;
        let alt: i64 = r
            .h_vector
            .iter()
            .enumerate()
            .map(|(k, h)| if k % 2 == 0 { *h } else { -h })
            .sum();
        ensure(int(&r.signature) == alt && alt == sig, || {
            format!(
                "{name}: signature {}, alternating h-sum {alt}, expected {sig}",
                r.signature
            )
        })?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    for name in all_fixtures() {
        let p = pair(name);
        let g = genus_report(&p, None).map_err(|e| e.to_string())?;
        let sigma_sum: i64 = p.frames().iter().map(|f| f.sigma as i64).sum();
        ensure(g.chi_y.eval(1) == g.signature, || {
            format!("{name}: chi_y(1)")
        })?;
        ensure(g.chi_y.eval(0) == g.todd, || format!("{name}: chi_y(0)"))?;
        ensure(
            g.chi_y.eval(-1) == g.top_chern && g.top_chern == BigInt::from(sigma_sum),
            || format!("{name}: chi_y(-1)"),
        )?;
        let rev = p.reversed().map_err(|e| e.to_string())?;
        let nu = g.nu_used.clone();
        let reversed = chi_y(rev.frames(), &nu).map_err(|e| e.to_string())?;
        ensure(reversed == g.chi_y.negated(), || {
            format!("{name}: reversed {} vs {}", reversed, g.chi_y)
        })?;
        ensure(g.h_vector.is_symmetric(), || {
            format!("{name}: h {:?}", g.h_vector.0)
        })?;
    }
    Ok(())
}

fn facet(n: &[i64], a: i64) -> Facet {
    Facet::new(
        n.iter().map(|&x| BigInt::from(x)).collect(),
        Rational::from_integer(a.into()),
    )
}

fn criterion_9() -> Check {
    let mut bad = example("cp2");
    bad.lambda.as_mut().expect("lambda")[0] = vec![BigInt::from(-2), BigInt::from(-1)];
    let v = check_document(&bad).map_err(|e| e.to_string())?;
    ensure(!v.unimodular, || "non-unimodular matrix accepted".into())?;
    let p = build_pair(&example("cp2")).map_err(|e| e.to_string())?;
    let named: Vec<Vec<String>> = v
        .offending_vertices
        .iter()
        .map(|&i| {
            p.polytope().vertices()[i]
                .coords
                .iter()
                .map(|c| c.to_string())
                .collect()
        })
        .collect();
    ensure(
        named == vec![vec!["1".to_string(), "0".to_string()]],
        || format!("offending vertices {named:?}"),
    )?;
    match build_pair(&bad) {
        Err(ReportError::Char(CharError::NonUnimodularAtVertex(d))) if d.len() == 1 => {}
        other => return Err(format!("pair construction gave {:?}", other.map(|_| ()))),
    }

    // octahedron: every vertex lies on four facets
    let mut facets = Vec::new();
    for s in 0..8 {
        let sign = |b: i64| if (s >> b) & 1 == 1 { 1 } else { -1 };
        facets.push(facet(&[sign(0), sign(1), sign(2)], 1));
    }
    let octahedron = InputDocument {
        dim: 3,
        lambda: Some(facets.iter().map(|f| f.normal.clone()).collect()),
        facets,
        orientation: Orientation::Standard,
        nu: None,
        mode: quasitoric_cli::Mode::Quasitoric,
    };
    match check_document(&octahedron) {
        Err(ReportError::Polytope(PolytopeError::NonSimplePolytope { tight: 4, .. })) => Ok(()),
        other => Err(format!("octahedron gave {other:?}")),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1  cp2: signs, indices, genera", criterion_1),
        ("2a cp2-bar and reversed cp2", criterion_2a),
        (
            "2b cp2 with all columns negated, standard orientation",
            criterion_2b,
        ),
        ("3  cp2-eta: signs, indices, genera", criterion_3),
        ("4  chi_y independent of nu (100 trials)", criterion_4),
        ("5  index definitions agree (100 trials)", criterion_5),
        ("6  equivariant rigidity", criterion_6),
        ("7  toric invariants", criterion_7),
        ("8  identity suite", criterion_8),
        ("9  validation", criterion_9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
