//! Built-in example documents.
//!
//! | name | description |
//! |------|-------------|
//! | `cp2` | the triangle with the standard toric characteristic matrix |
//! | `cp2-bar` | the same triangle with `(1,-1), (-1,0), (0,1)` |
//! | `cp2-eta` | first column replaced by `(1,1)` |
//! | `simplex-N` | the standard N-simplex, toric |
//! | `cube-N` | the unit N-cube, toric |
//! | `A*B` | product of two examples |

use num_bigint::BigInt;
use quasitoric_core::algebra::Rational;
use quasitoric_core::polytope::{Facet, Orientation};
use thiserror::Error;

use crate::document::{InputDocument, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExampleError {
    #[error("unknown example `{0}` (try cp2, cp2-bar, cp2-eta, simplex-N, cube-N, A*B)")]
    UnknownExample(String),
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn facet(normal: Vec<BigInt>, offset: i64) -> Facet {
    Facet::new(normal, Rational::from_integer(offset.into()))
}

fn unit(n: usize, i: usize, value: i64) -> Vec<BigInt> {
    let mut v = vec![BigInt::from(0); n];
    v[i] = value.into();
    v
}

fn triangle(lambda: &[[i64; 2]]) -> InputDocument {
    InputDocument {
        dim: 2,
        facets: vec![
            facet(ints(&[-1, -1]), 1),
            facet(ints(&[1, 0]), 0),
            facet(ints(&[0, 1]), 0),
        ],
        lambda: Some(lambda.iter().map(|c| ints(c)).collect()),
        orientation: Orientation::Standard,
        nu: None,
        mode: Mode::Quasitoric,
    }
}

/// Facet 0 is `-sum x_i >= -1`, facet `i` is `x_i >= 0`.
pub fn simplex(n: usize) -> InputDocument {
    let mut facets = vec![facet(vec![BigInt::from(-1); n], 1)];
    facets.extend((0..n).map(|i| facet(unit(n, i, 1), 0)));
    toric_doc(n, facets)
}

/// Facet `2i` is `x_i >= 0`, facet `2i+1` is `-x_i >= -1`.
pub fn cube(n: usize) -> InputDocument {
    let facets = (0..n)
        .flat_map(|i| [facet(unit(n, i, 1), 0), facet(unit(n, i, -1), 1)])
        .collect();
    toric_doc(n, facets)
}

fn toric_doc(dim: usize, facets: Vec<Facet>) -> InputDocument {
    InputDocument {
        dim,
        facets,
        lambda: None,
        orientation: Orientation::Standard,
        nu: None,
        mode: Mode::Toric,
    }
}

fn pad(v: &[BigInt], before: usize, after: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); before];
    out.extend(v.iter().cloned());
    out.resize(before + v.len() + after, BigInt::from(0));
    out
}

/// Product of two documents: facets and columns of `a` come first.
/// The result is toric only when both factors are.
pub fn product(a: &InputDocument, b: &InputDocument) -> InputDocument {
    let (n, k) = (a.dim, b.dim);
    let facets = a
        .facets
        .iter()
        .map(|f| Facet::new(pad(&f.normal, 0, k), f.offset.clone()))
        .chain(
            b.facets
                .iter()
                .map(|f| Facet::new(pad(&f.normal, n, 0), f.offset.clone())),
        )
        .collect();
    let mode = if a.mode == Mode::Toric && b.mode == Mode::Toric {
        Mode::Toric
    } else {
        Mode::Quasitoric
    };
    let lambda = match mode {
        Mode::Toric => None,
        Mode::Quasitoric => {
            let cols = |d: &InputDocument| {
                d.lambda.clone().unwrap_or_else(|| {
                    // toric factor: primitive normals
                    d.facets.iter().map(|f| f.primitive().normal).collect()
                })
            };
            let la = cols(a).into_iter().map(|c| pad(&c, 0, k));
            let lb = cols(b).into_iter().map(|c| pad(&c, n, 0));
            Some(la.chain(lb).collect())
        }
    };
    InputDocument {
        dim: n + k,
        facets,
        lambda,
        orientation: a.orientation.compose(b.orientation),
        nu: None,
        mode,
    }
}

fn sized(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok().filter(|&n| n > 0)
}

pub fn generate_example(name: &str) -> Result<InputDocument, ExampleError> {
    let name = name.trim();
    if let Some((a, b)) = name.split_once('*') {
        return Ok(product(&generate_example(a)?, &generate_example(b)?));
    }
    match name {
        "cp2" => Ok(triangle(&[[-1, -1], [1, 0], [0, 1]])),
        "cp2-bar" => Ok(triangle(&[[1, -1], [-1, 0], [0, 1]])),
        "cp2-eta" => Ok(triangle(&[[1, 1], [1, 0], [0, 1]])),
        _ => {
            if let Some(n) = sized(name, "simplex-") {
                Ok(simplex(n))
            } else if let Some(n) = sized(name, "cube-") {
                Ok(cube(n))
            } else {
                Err(ExampleError::UnknownExample(name.to_string()))
            }
        }
    }
}
