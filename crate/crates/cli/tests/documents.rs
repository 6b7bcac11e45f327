use num_bigint::BigInt;
use proptest::prelude::*;
use quasitoric_cli::document::{parse_input, InputDocument, Mode};
use quasitoric_cli::examples::generate_example;
use quasitoric_cli::report::{run_report, ReportDocument, ReportOptions};
use quasitoric_core::algebra::Rational;
use quasitoric_core::polytope::{Facet, Orientation};

fn big() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        (-50i64..50).prop_map(BigInt::from),
        any::<i64>().prop_map(|x| BigInt::from(x) * BigInt::from(x) * 3),
    ]
}

fn rational() -> impl Strategy<Value = Rational> {
    (big(), 1i64..20).prop_map(|(p, q)| Rational::new(p, q.into()))
}

/// Documents that satisfy the schema; they need not describe a polytope.
fn document() -> impl Strategy<Value = InputDocument> {
    (
        1usize..4,
        2usize..6,
        any::<bool>(),
        any::<bool>(),
        any::<bool>(),
    )
        .prop_flat_map(|(dim, m, toric, reversed, with_nu)| {
            let facets = prop::collection::vec(
                (prop::collection::vec(big(), dim), rational()).prop_map(|(n, a)| Facet::new(n, a)),
                m,
            );
            let lambda = prop::collection::vec(prop::collection::vec(big(), dim), m);
            let nu = prop::collection::vec(big(), dim);
            (facets, lambda, nu).prop_map(move |(facets, lambda, nu)| InputDocument {
                dim,
                facets,
                lambda: (!toric).then_some(lambda),
                orientation: if reversed {
                    Orientation::Reversed
                } else {
                    Orientation::Standard
                },
                nu: with_nu.then_some(nu),
                mode: if toric { Mode::Toric } else { Mode::Quasitoric },
            })
        })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(doc in document()) {
        prop_assert_eq!(parse_input(&doc.to_json()).unwrap(), doc);
    }
}

#[test]
fn examples_round_trip_through_files() {
    for name in [
        "cp2",
        "cp2-bar",
        "cp2-eta",
        "simplex-4",
        "cube-3",
        "cp2*cube-1",
    ] {
        let doc = generate_example(name).unwrap();
        assert_eq!(parse_input(&doc.to_json()).unwrap(), doc, "{name}");
    }
}

#[test]
fn reports_round_trip() {
    for name in ["cp2-eta", "simplex-2*cube-1", "cp2-bar*cp2"] {
        let r = run_report(&generate_example(name).unwrap(), &ReportOptions::default()).unwrap();
        let back = ReportDocument::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r, "{name}");
        assert_eq!(back.to_json(), r.to_json());
    }
}

#[test]
fn cp2_document_file() {
    let text = r#"{
        "dim": 2,
        "facets": [
            {"normal": [-1, -1], "offset": "1/1"},
            {"normal": [1, 0], "offset": 0},
            {"normal": [0, 1], "offset": 0}
        ],
        "lambda": [[-1, -1], [1, 0], [0, 1]]
    }"#;
    assert_eq!(parse_input(text).unwrap(), generate_example("cp2").unwrap());
}
