//! Report generation: runs the whole pipeline on an input document and
//! collects the results, a per-vertex table and the cross-checks.

use std::fmt::Write as _;

use num_bigint::BigInt;
use quasitoric_core::algebra::{det, Rational};
use quasitoric_core::char_pair::{
    index_lambda, index_mu, validate_characteristic, CharError, CharMatrix, CharacteristicPair,
    NuVector,
};
use quasitoric_core::equivariant::{default_samples, rigidity_check, EquivariantError};
use quasitoric_core::genera::{
    genus_report, morse_counts, nu_invariance_check, signature_oriented,
};
use quasitoric_core::polytope::{primitive_direction, PolytopeError, SimplePolytope};
use quasitoric_core::toric::{lambda_from_normals, toric_report, IntegralPolytope, ToricError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{InputDocument, Mode};
use crate::num::{format_rational, ints, Int};

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("polytope: {0}")]
    Polytope(#[from] PolytopeError),
    #[error("characteristic matrix: {0}")]
    Char(#[from] CharError),
    #[error("toric: {0}")]
    Toric(#[from] ToricError),
    #[error("equivariant: {0}")]
    Equivariant(#[from] EquivariantError),
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Overrides the `nu` of the document.
    pub nu: Option<Vec<BigInt>>,
    pub samples: Vec<Rational>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self {
            nu: None,
            samples: default_samples(),
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Validation {
    pub unimodular: bool,
    /// `det Lambda_(p)` for each vertex, minor columns in increasing facet order.
    pub minor_determinants: Vec<Int>,
    pub offending_vertices: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRow {
    pub vertex: usize,
    pub coordinates: Vec<String>,
    pub tight_facets: Vec<usize>,
    pub ordered_facets: Vec<usize>,
    pub sigma: i8,
    pub index: usize,
    pub index_lambda: usize,
    pub weights: Vec<Int>,
    pub mu: Vec<Vec<Int>>,
    /// Primitive direction of the edge leaving the vertex off each ordered facet.
    pub edge_vectors: Vec<Vec<Int>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRow {
    pub q: String,
    pub value: Vec<String>,
    pub agrees: bool,
    pub todd_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rigidity {
    pub passed: bool,
    pub samples: Vec<SampleRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuInvariance {
    pub passed: bool,
    pub trials: usize,
    pub seed: u64,
    pub first_mismatch: Option<Vec<Int>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricChecks {
    pub passed: bool,
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub mode: String,
    pub dim: usize,
    pub facet_count: usize,
    pub orientation: i8,
    pub validation: Validation,
    pub nu_used: Vec<Int>,
    /// Coefficients of `1, y, y^2, ...`.
    pub chi_y: Vec<Int>,
    pub chi_y_text: String,
    pub signature: Int,
    pub signature_oriented: Int,
    pub todd: Int,
    pub top_chern: Int,
    pub euler: u64,
    pub f_vector: Vec<u64>,
    pub h_vector: Vec<i64>,
    pub morse_counts: Vec<u64>,
    pub vertices: Vec<VertexRow>,
    pub rigidity: Rigidity,
    pub nu_invariance: NuInvariance,
    pub toric: Option<ToricChecks>,
}

impl ReportDocument {
    /// True when every cross-check in the report holds.
    pub fn checks_passed(&self) -> bool {
        self.rigidity.passed
            && self.nu_invariance.passed
            && self.vertices.iter().all(|v| v.index == v.index_lambda)
            && self.toric.as_ref().is_none_or(|t| t.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn simple_polytope(doc: &InputDocument) -> Result<SimplePolytope, ReportError> {
    Ok(SimplePolytope::analyze(doc.hpolytope()?)?)
}

fn char_matrix(doc: &InputDocument, p: &SimplePolytope) -> Result<CharMatrix, ReportError> {
    match doc.mode {
        Mode::Toric => {
            let ip = IntegralPolytope::new(p.clone())?;
            Ok(lambda_from_normals(&ip)?)
        }
        Mode::Quasitoric => Ok(doc
            .char_matrix()
            .expect("quasitoric documents carry lambda")?),
    }
}

/// Builds the characteristic pair described by a document.
pub fn build_pair(doc: &InputDocument) -> Result<CharacteristicPair, ReportError> {
    let p = simple_polytope(doc)?;
    let lambda = char_matrix(doc, &p)?;
    Ok(CharacteristicPair::new(p, lambda, doc.orientation)?)
}

/// Validation only: the polytope is simple and bounded; the result lists
/// every vertex minor and the vertices where it is not unimodular.
pub fn check_document(doc: &InputDocument) -> Result<Validation, ReportError> {
    let p = simple_polytope(doc)?;
    let lambda = char_matrix(doc, &p)?;
    match validate_characteristic(&p, &lambda) {
        Ok(v) => Ok(Validation {
            unimodular: true,
            minor_determinants: ints(&v.determinants),
            offending_vertices: Vec::new(),
        }),
        Err(CharError::NonUnimodularAtVertex(defects)) => {
            let dets = p
                .vertices()
                .iter()
                .map(|v| det(&lambda.minor(&v.tight_facets)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CharError::from)?;
            Ok(Validation {
                unimodular: false,
                minor_determinants: ints(&dets),
                offending_vertices: defects.iter().map(|d| d.vertex).collect(),
            })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn run_report(
    doc: &InputDocument,
    options: &ReportOptions,
) -> Result<ReportDocument, ReportError> {
    let pair = build_pair(doc)?;
    let nu = match options.nu.clone().or_else(|| doc.nu.clone()) {
        Some(v) => Some(NuVector::new(v)?),
        None => None,
    };
    let genus = genus_report(&pair, nu.as_ref())?;
    let nu = &genus.nu_used;
    let frames = pair.frames();
    let poly = pair.polytope();

    let vertices = frames
        .iter()
        .zip(pair.geometry())
        .map(|(frame, geom)| {
            let data = index_mu(frame, nu)?;
            let vertex = &poly.vertices()[frame.vertex];
            Ok(VertexRow {
                vertex: frame.vertex,
                coordinates: vertex.coords.iter().map(format_rational).collect(),
                tight_facets: vertex.tight_facets.clone(),
                ordered_facets: frame.ordered_facets.clone(),
                sigma: frame.sigma,
                index: data.index,
                index_lambda: index_lambda(frame, nu)?,
                weights: ints(&data.weights),
                mu: frame.mus().map(|m| ints(&m)).collect(),
                edge_vectors: geom
                    .outward_dirs
                    .iter()
                    .map(|d| ints(&primitive_direction(d)))
                    .collect(),
            })
        })
        .collect::<Result<Vec<_>, CharError>>()?;

    let rigidity = rigidity_check(frames, nu, &options.samples)?;
    let invariance = nu_invariance_check(frames, options.trials, options.seed)?;
    let toric = match doc.mode {
        Mode::Quasitoric => None,
        Mode::Toric => {
            let ip = IntegralPolytope::new(poly.clone())?;
            Some(match toric_report(&ip, Some(nu)) {
                Ok(_) => ToricChecks {
                    passed: true,
                    failure: None,
                },
                Err(ToricError::InvariantViolated(what)) => ToricChecks {
                    passed: false,
                    failure: Some(what.to_string()),
                },
                Err(e) => return Err(e.into()),
            })
        }
    };

    Ok(ReportDocument {
        mode: doc.mode.as_str().to_string(),
        dim: pair.dim(),
        facet_count: pair.lambda().facet_count(),
        orientation: pair.orientation().sign(),
        validation: Validation {
            unimodular: true,
            minor_determinants: ints(&pair.validation().determinants),
            offending_vertices: Vec::new(),
        },
        nu_used: ints(nu.as_slice()),
        chi_y: ints(genus.chi_y.coeffs()),
        chi_y_text: genus.chi_y.to_string(),
        signature: genus.signature.clone().into(),
        signature_oriented: signature_oriented(frames, nu)?.into(),
        todd: genus.todd.clone().into(),
        top_chern: genus.top_chern.clone().into(),
        euler: genus.euler,
        f_vector: genus.f_vector.0.clone(),
        h_vector: genus.h_vector.0.clone(),
        morse_counts: morse_counts(frames, nu)?,
        vertices,
        rigidity: Rigidity {
            passed: rigidity.passed(),
            samples: rigidity
                .samples
                .iter()
                .map(|s| SampleRow {
                    q: format_rational(&s.q),
                    value: s.value.coeffs.iter().map(format_rational).collect(),
                    agrees: s.agrees,
                    todd_agrees: s.todd_agrees,
                })
                .collect(),
        },
        nu_invariance: NuInvariance {
            passed: invariance.passed(),
            trials: invariance.trials,
            seed: options.seed,
            first_mismatch: invariance.first_mismatch.map(|m| ints(m.nu.as_slice())),
        },
        toric,
    })
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

/// Human-readable rendering.
pub fn render_text(r: &ReportDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "mode            {}", r.mode);
    let _ = writeln!(s, "dimension       {} ({} facets)", r.dim, r.facet_count);
    let _ = writeln!(s, "orientation     {:+}", r.orientation);
    let _ = writeln!(s, "nu              ({})", join(&r.nu_used));
    let _ = writeln!(s, "chi_y           {}", r.chi_y_text);
    let _ = writeln!(s, "signature       {}", r.signature);
    let _ = writeln!(s, "signature (or.) {}", r.signature_oriented);
    let _ = writeln!(s, "todd            {}", r.todd);
    let _ = writeln!(s, "top chern       {}", r.top_chern);
    let _ = writeln!(s, "euler           {}", r.euler);
    let _ = writeln!(s, "f-vector        ({})", join(&r.f_vector));
    let _ = writeln!(s, "h-vector        ({})", join(&r.h_vector));
    let _ = writeln!(s, "index counts    ({})", join(&r.morse_counts));
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "vertex  coordinates       facets     sigma  ind  weights"
    );
    for v in &r.vertices {
        let _ = writeln!(
            s,
            "{:<7} {:<17} {:<10} {:>+5}  {:>3}  ({})",
            v.vertex,
            format!("({})", v.coordinates.join(", ")),
            format!("{:?}", v.ordered_facets),
            v.sigma,
            v.index,
            join(&v.weights)
        );
    }
    let _ = writeln!(s);
    let _ = writeln!(
        s,
        "rigidity        {} ({} samples)",
        ok(r.rigidity.passed),
        r.rigidity.samples.len()
    );
    let _ = writeln!(
        s,
        "nu invariance   {} ({} trials)",
        ok(r.nu_invariance.passed),
        r.nu_invariance.trials
    );
    if let Some(t) = &r.toric {
        match &t.failure {
            None => {
                let _ = writeln!(s, "toric checks    ok");
            }
            Some(f) => {
                let _ = writeln!(s, "toric checks    FAILED: {f}");
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::examples::generate_example;

    fn report(name: &str) -> ReportDocument {
        run_report(&generate_example(name).unwrap(), &ReportOptions::default()).unwrap()
    }

    #[test]
    fn triangle_values() {
        let r = report("cp2");
        assert_eq!(
            (
                r.signature.0.clone(),
                r.todd.0.clone(),
                r.top_chern.0.clone(),
                r.euler
            ),
            (1.into(), 1.into(), 3.into(), 3)
        );
        let r = report("cp2-bar");
        assert_eq!(
            (r.signature.0.clone(), r.todd.0.clone()),
            ((-1).into(), (-1).into())
        );
        let r = report("cp2-eta");
        assert_eq!(
            (
                r.signature.0.clone(),
                r.todd.0.clone(),
                r.top_chern.0.clone()
            ),
            (1.into(), 0.into(), (-1).into())
        );
        assert!(r.checks_passed());
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let r = report("cube-2");
        let text = r.to_json();
        assert_eq!(ReportDocument::from_json(&text).unwrap(), r);
        assert_eq!(report("cube-2").to_json(), text);
        assert!(r.toric.unwrap().passed);
    }

    #[test]
    fn user_nu_is_recorded_and_checked() {
        let doc = generate_example("cp2").unwrap();
        let opts = ReportOptions {
            nu: Some(vec![1.into(), 2.into()]),
            ..ReportOptions::default()
        };
        let r = run_report(&doc, &opts).unwrap();
        assert_eq!(r.nu_used, vec![Int::from(1), Int::from(2)]);
        assert_eq!(
            r.vertices.iter().map(|v| v.index).collect::<Vec<_>>(),
            vec![0, 2, 1]
        );
        let opts = ReportOptions {
            nu: Some(vec![1.into(), 1.into()]),
            ..ReportOptions::default()
        };
        assert!(matches!(
            run_report(&doc, &opts),
            Err(ReportError::Char(CharError::NonGenericNu { .. }))
        ));
    }

    #[test]
    fn text_rendering_mentions_everything() {
        let t = render_text(&report("cp2"));
        assert!(t.contains("1 - y + y^2"));
        assert!(t.contains("rigidity        ok"));
    }
}
