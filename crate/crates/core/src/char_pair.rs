//! Characteristic matrices over a simple polytope and the local data they
//! induce at each vertex: the facet-vector minor, the edge vectors (rows of
//! its inverse), the vertex sign and the index with respect to a circle.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::{
    self, det, dot, solve_rational, unimodular_inverse, AlgebraError, IntMatrix, QVector,
};
use crate::polytope::{Orientation, PolytopeError, SimplePolytope, VertexGeometry};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("characteristic matrix has {found} columns, polytope has {expected} facets")]
    ColumnCount { expected: usize, found: usize },
    #[error("column {column} has length {found}, expected {expected}")]
    ColumnLength {
        column: usize,
        expected: usize,
        found: usize,
    },
    #[error("column {0} is not primitive")]
    NonPrimitiveColumn(usize),
    #[error("vertex minors are not unimodular at {}", describe_defects(.0))]
    NonUnimodularAtVertex(Vec<UnimodularityDefect>),
    #[error("nu has length {found}, expected {expected}")]
    NuLength { expected: usize, found: usize },
    #[error("nu must be a primitive integer vector")]
    NuNotPrimitive,
    #[error("nu is orthogonal to the edge vector at vertex {vertex} paired with facet {facet}")]
    NonGenericNu { vertex: usize, facet: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn describe_defects(defects: &[UnimodularityDefect]) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::new();
    for (i, d) in defects.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "vertex {} (det {})", d.vertex, d.det);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularityDefect {
    pub vertex: usize,
    pub det: BigInt,
}

/// `n x m` integer matrix whose `i`-th column is the signed facet vector of
/// facet `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharMatrix {
    n: usize,
    columns: Vec<Vec<BigInt>>,
}

impl CharMatrix {
    pub fn new(n: usize, columns: Vec<Vec<BigInt>>) -> Result<Self, CharError> {
        for (i, c) in columns.iter().enumerate() {
            if c.len() != n {
                return Err(CharError::ColumnLength {
                    column: i,
                    expected: n,
                    found: c.len(),
                });
            }
            if !algebra::is_primitive(c) {
                return Err(CharError::NonPrimitiveColumn(i));
            }
        }
        Ok(Self { n, columns })
    }

    pub fn from_i64_columns(n: usize, columns: &[&[i64]]) -> Result<Self, CharError> {
        Self::new(
            n,
            columns
                .iter()
                .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn facet_count(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, i: usize) -> &[BigInt] {
        &self.columns[i]
    }

    pub fn columns(&self) -> &[Vec<BigInt>] {
        &self.columns
    }

    pub fn minor(&self, facets: &[usize]) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = facets.iter().map(|&i| self.columns[i].clone()).collect();
        IntMatrix::from_columns(&cols).expect("columns have length n")
    }

    /// Copy with column `i` negated.
    pub fn with_negated_column(&self, i: usize) -> Self {
        let mut out = self.clone();
        for x in out.columns[i].iter_mut() {
            *x = -x.clone();
        }
        out
    }

    /// Left-multiplies every column by `g`, which should be unimodular.
    pub fn transformed(&self, g: &IntMatrix) -> Result<Self, CharError> {
        let columns = self
            .columns
            .iter()
            .map(|c| g.apply(c))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.n, columns)
    }

    /// Block-diagonal characteristic matrix of a product; columns of `self`
    /// come first.
    pub fn product(&self, other: &CharMatrix) -> CharMatrix {
        let n = self.n + other.n;
        let mut columns = Vec::with_capacity(self.columns.len() + other.columns.len());
        for c in &self.columns {
            let mut v = c.clone();
            v.resize(n, BigInt::zero());
            columns.push(v);
        }
        for c in &other.columns {
            let mut v = alloc::vec![BigInt::zero(); self.n];
            v.extend(c.iter().cloned());
            columns.push(v);
        }
        CharMatrix { n, columns }
    }
}

/// Successful validation: the determinant of each vertex minor (tight
/// facets in ascending order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub determinants: Vec<BigInt>,
}

pub fn validate_characteristic(
    p: &SimplePolytope,
    lambda: &CharMatrix,
) -> Result<ValidationReport, CharError> {
    if lambda.facet_count() != p.polytope().facet_count() {
        return Err(CharError::ColumnCount {
            expected: p.polytope().facet_count(),
            found: lambda.facet_count(),
        });
    }
    if lambda.dim() != p.dim() {
        return Err(CharError::ColumnLength {
            column: 0,
            expected: p.dim(),
            found: lambda.dim(),
        });
    }
    if let Some(i) = (0..lambda.facet_count()).find(|&i| !algebra::is_primitive(lambda.column(i))) {
        return Err(CharError::NonPrimitiveColumn(i));
    }
    let determinants: Vec<BigInt> = p
        .vertices()
        .iter()
        .map(|v| det(&lambda.minor(&v.tight_facets)))
        .collect::<Result<_, _>>()?;
    let defects: Vec<UnimodularityDefect> = determinants
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.abs().is_one())
        .map(|(vertex, d)| UnimodularityDefect {
            vertex,
            det: d.clone(),
        })
        .collect();
    if defects.is_empty() {
        Ok(ValidationReport { determinants })
    } else {
        Err(CharError::NonUnimodularAtVertex(defects))
    }
}

/// Facet and edge vectors at one vertex, both in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalFrame {
    pub vertex: usize,
    pub ordered_facets: Vec<usize>,
    /// Columns are the facet vectors of `ordered_facets`.
    pub lambda_minor: IntMatrix,
    /// Columns are the edge vectors; `mu_matrix^T * lambda_minor = E`.
    pub mu_matrix: IntMatrix,
    pub sigma: i8,
}

impl LocalFrame {
    pub fn dim(&self) -> usize {
        self.ordered_facets.len()
    }

    /// Edge vector paired with the `k`-th ordered facet.
    pub fn mu(&self, k: usize) -> Vec<BigInt> {
        self.mu_matrix.column(k)
    }

    pub fn mus(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        (0..self.dim()).map(|k| self.mu(k))
    }

    /// Weights `<mu_k, nu>` of the circle representation at this vertex.
    pub fn weights(&self, nu: &NuVector) -> Vec<BigInt> {
        self.mus().map(|m| dot(&m, nu.as_slice())).collect()
    }
}

/// Builds the frame at a vertex. The edge vectors are the rows of the
/// inverse of the facet minor, which pins their signs so that
/// `<mu_k, lambda_l> = delta_kl`.
pub fn local_frame(geom: &VertexGeometry, lambda: &CharMatrix) -> Result<LocalFrame, CharError> {
    let lambda_minor = lambda.minor(&geom.ordered_facets);
    let mu_matrix = unimodular_inverse(&lambda_minor)?.transpose();
    let d = det(&mu_matrix)?;
    let sigma = if d.is_positive() { 1 } else { -1 } * geom.parity;
    Ok(LocalFrame {
        vertex: geom.vertex,
        ordered_facets: geom.ordered_facets.clone(),
        lambda_minor,
        mu_matrix,
        sigma,
    })
}

/// Primitive integer vector selecting a circle in the torus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NuVector(Vec<BigInt>);

impl NuVector {
    pub fn new(v: Vec<BigInt>) -> Result<Self, CharError> {
        if !algebra::is_primitive(&v) {
            return Err(CharError::NuNotPrimitive);
        }
        Ok(Self(v))
    }

    pub fn from_i64(v: &[i64]) -> Result<Self, CharError> {
        Self::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }
}

/// Index together with the weights it was counted from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexData {
    pub index: usize,
    pub weights: Vec<BigInt>,
}

fn check_nu_dim(frame: &LocalFrame, nu: &NuVector) -> Result<(), CharError> {
    if nu.dim() != frame.dim() {
        return Err(CharError::NuLength {
            expected: frame.dim(),
            found: nu.dim(),
        });
    }
    Ok(())
}

/// Number of negative weights `<mu_k, nu>`.
pub fn index_mu(frame: &LocalFrame, nu: &NuVector) -> Result<IndexData, CharError> {
    check_nu_dim(frame, nu)?;
    let weights = frame.weights(nu);
    if let Some(k) = weights.iter().position(Zero::is_zero) {
        return Err(CharError::NonGenericNu {
            vertex: frame.vertex,
            facet: frame.ordered_facets[k],
        });
    }
    let index = weights.iter().filter(|w| w.is_negative()).count();
    Ok(IndexData { index, weights })
}

/// Number of negative coefficients of `nu` in the basis of facet vectors,
/// found by solving `lambda_minor * c = nu` without touching edge vectors.
pub fn index_lambda(frame: &LocalFrame, nu: &NuVector) -> Result<usize, CharError> {
    check_nu_dim(frame, nu)?;
    let c = solve_rational(&frame.lambda_minor, &QVector::from_ints(nu.as_slice()))?;
    if let Some(k) = c.iter().position(Zero::is_zero) {
        return Err(CharError::NonGenericNu {
            vertex: frame.vertex,
            facet: frame.ordered_facets[k],
        });
    }
    Ok(c.iter().filter(|x| x.is_negative()).count())
}

pub fn check_generic(frames: &[LocalFrame], nu: &NuVector) -> Result<(), CharError> {
    frames.iter().try_for_each(|f| index_mu(f, nu).map(|_| ()))
}

/// Deterministic generic circle: `(1, N, N^2, ...)` with `N` larger than any
/// edge-vector entry, so every pairing is a nonzero base-`N` expansion.
pub fn find_generic_nu(frames: &[LocalFrame]) -> NuVector {
    let n = frames.first().map_or(1, LocalFrame::dim);
    let bound = frames
        .iter()
        .flat_map(|f| f.mus().flatten())
        .map(|x| x.abs())
        .max()
        .unwrap_or_default();
    let mut base = core::cmp::max(BigInt::from(2), bound + 1);
    loop {
        let mut v = Vec::with_capacity(n);
        let mut pow = BigInt::one();
        for _ in 0..n {
            v.push(pow.clone());
            pow *= &base;
        }
        let nu = NuVector(v);
        if check_generic(frames, &nu).is_ok() {
            return nu;
        }
        base += 1;
    }
}

/// A polytope with a validated characteristic matrix and orientation, and
/// the local frame at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicPair {
    polytope: SimplePolytope,
    lambda: CharMatrix,
    orientation: Orientation,
    geometry: Vec<VertexGeometry>,
    frames: Vec<LocalFrame>,
    validation: ValidationReport,
}

impl CharacteristicPair {
    pub fn new(
        polytope: SimplePolytope,
        lambda: CharMatrix,
        orientation: Orientation,
    ) -> Result<Self, CharError> {
        let validation = validate_characteristic(&polytope, &lambda)?;
        let geometry = polytope.all_geometry(orientation)?;
        let frames = geometry
            .iter()
            .map(|g| local_frame(g, &lambda))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            polytope,
            lambda,
            orientation,
            geometry,
            frames,
            validation,
        })
    }

    pub fn polytope(&self) -> &SimplePolytope {
        &self.polytope
    }

    pub fn lambda(&self) -> &CharMatrix {
        &self.lambda
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn geometry(&self) -> &[VertexGeometry] {
        &self.geometry
    }

    pub fn frames(&self) -> &[LocalFrame] {
        &self.frames
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.validation
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    /// Same polytope and facet vectors with the other ambient orientation.
    pub fn reversed(&self) -> Result<Self, CharError> {
        Self::new(
            self.polytope.clone(),
            self.lambda.clone(),
            self.orientation.reversed(),
        )
    }

    /// Distinct edge vectors seen anywhere, up to the sign fixed per vertex.
    pub fn edge_vectors(&self) -> BTreeSet<Vec<BigInt>> {
        self.frames.iter().flat_map(LocalFrame::mus).collect()
    }
}
