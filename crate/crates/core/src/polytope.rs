//! Simple polytopes given by half-spaces `<l_i, x> >= -a_i`.
//!
//! Vertices are found by scanning every n-subset of facets with an exact
//! solve, edges are vertex pairs sharing `n - 1` tight facets, and faces of
//! every codimension are identified with subsets of vertex tight sets. This
//! is only sound for simple polytopes, which is checked on the way.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{self, cross_product, det, dot, solve_rational, IntMatrix, QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolytopeError {
    #[error("dimension must be positive")]
    ZeroDimension,
    #[error("an {n}-polytope needs at least {} facets, got {m}", n + 1)]
    TooFewFacets { n: usize, m: usize },
    #[error("facet {facet}: normal has length {found}, expected {expected}")]
    NormalLength {
        facet: usize,
        expected: usize,
        found: usize,
    },
    #[error("facet {0}: normal is zero")]
    ZeroNormal(usize),
    #[error("polytope is not simple: vertex {coords:?} lies on {tight} facets")]
    NonSimplePolytope { coords: QVector, tight: usize },
    #[error("polytope is empty or unbounded")]
    EmptyOrUnbounded,
    #[error("inequality {0} does not support a facet")]
    RedundantInequality(usize),
    #[error("vertex {vertex} has {edges} incident edges, expected {expected}")]
    InconsistentLattice {
        vertex: usize,
        edges: usize,
        expected: usize,
    },
    #[error("vertex {vertex}: zero edge direction opposite facet {facet}")]
    DegenerateEdge { vertex: usize, facet: usize },
    #[error("vertex {vertex}: no edge leaves the vertex off facet {facet}")]
    MissingEdge { vertex: usize, facet: usize },
}

/// One inequality `<normal, x> >= -offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: Vec<BigInt>, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// `<normal, x> + offset`, nonnegative exactly on the half-space.
    pub fn slack(&self, x: &QVector) -> Rational {
        x.pair(&self.normal) + &self.offset
    }

    /// The same half-space with the normal divided by its content.
    pub fn primitive(&self) -> Facet {
        let g = algebra::content(&self.normal);
        if g.is_zero() {
            return self.clone();
        }
        Facet {
            normal: self.normal.iter().map(|x| x / &g).collect(),
            offset: &self.offset / Rational::from_integer(g),
        }
    }
}

/// Half-space description of a polytope in `R^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

impl HPolytope {
    /// Checks shapes only; geometry is validated by [`SimplePolytope::analyze`].
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self, PolytopeError> {
        if dim == 0 {
            return Err(PolytopeError::ZeroDimension);
        }
        if facets.len() < dim + 1 {
            return Err(PolytopeError::TooFewFacets {
                n: dim,
                m: facets.len(),
            });
        }
        for (i, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(PolytopeError::NormalLength {
                    facet: i,
                    expected: dim,
                    found: f.normal.len(),
                });
            }
            if f.normal.iter().all(Zero::is_zero) {
                return Err(PolytopeError::ZeroNormal(i));
            }
        }
        Ok(Self { dim, facets })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet(&self, i: usize) -> &Facet {
        &self.facets[i]
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.facets.iter().all(|f| !f.slack(x).is_negative())
    }

    /// Cartesian product; facets of `self` come first.
    pub fn product(&self, other: &HPolytope) -> HPolytope {
        let n = self.dim + other.dim;
        let mut facets = Vec::with_capacity(self.facets.len() + other.facets.len());
        for f in &self.facets {
            let mut normal = f.normal.clone();
            normal.resize(n, BigInt::zero());
            facets.push(Facet::new(normal, f.offset.clone()));
        }
        for f in &other.facets {
            let mut normal = alloc::vec![BigInt::zero(); self.dim];
            normal.extend(f.normal.iter().cloned());
            facets.push(Facet::new(normal, f.offset.clone()));
        }
        HPolytope { dim: n, facets }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub coords: QVector,
    /// Sorted indices of the facets through this vertex.
    pub tight_facets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub endpoints: (usize, usize),
    pub common_facets: Vec<usize>,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.endpoints.0 == v {
            self.endpoints.1
        } else {
            self.endpoints.0
        }
    }
}

/// `f_k` = number of faces of codimension `k + 1`, for `k = 0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HVector(pub Vec<i64>);

impl HVector {
    pub fn is_symmetric(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// `sum_k (-1)^k h_k`.
    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, h)| if k % 2 == 0 { *h } else { -*h })
            .sum()
    }
}

/// Ambient orientation of `R^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Orientation {
    #[default]
    Standard,
    Reversed,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Standard => 1,
            Orientation::Reversed => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Standard),
            -1 => Some(Orientation::Reversed),
            _ => None,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Standard => Orientation::Reversed,
            Orientation::Reversed => Orientation::Standard,
        }
    }

    pub fn compose(self, other: Orientation) -> Orientation {
        Orientation::from_sign(i64::from(self.sign() * other.sign())).unwrap()
    }
}

/// Oriented local picture at a vertex: tight facets in canonical order and,
/// for each, the direction of the edge leaving the vertex off that facet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGeometry {
    pub vertex: usize,
    pub ordered_facets: Vec<usize>,
    pub outward_dirs: Vec<QVector>,
    /// Sign of `orientation * det(outward_dirs)`. Always `+1` for `n >= 2`,
    /// where reordering can fix it; in dimension one there is nothing to
    /// reorder and a vertex whose only edge points backwards carries `-1`.
    pub parity: i8,
}

/// Every k-subset of `0..m` in lexicographic order.
pub(crate) fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + m - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn tight_facets(p: &HPolytope, x: &QVector) -> Vec<usize> {
    p.facets()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.slack(x).is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// All vertices, sorted by coordinates.
pub fn enumerate_vertices(p: &HPolytope) -> Result<Vec<Vertex>, PolytopeError> {
    let n = p.dim();
    let mut found: BTreeMap<QVector, ()> = BTreeMap::new();
    for subset in combinations(p.facet_count(), n) {
        let normals: Vec<BigInt> = subset
            .iter()
            .flat_map(|&i| p.facet(i).normal.iter().cloned())
            .collect();
        let a = IntMatrix::new(n, n, normals).expect("shape checked at construction");
        if det(&a).expect("square").is_zero() {
            continue;
        }
        let b = QVector(subset.iter().map(|&i| -p.facet(i).offset.clone()).collect());
        let x = solve_rational(&a, &b).expect("nonsingular");
        if p.contains(&x) {
            found.insert(x, ());
        }
    }
    if found.is_empty() {
        return Err(PolytopeError::EmptyOrUnbounded);
    }
    let mut vertices = Vec::with_capacity(found.len());
    for (coords, ()) in found {
        let tight = tight_facets(p, &coords);
        if tight.len() != n {
            return Err(PolytopeError::NonSimplePolytope {
                coords,
                tight: tight.len(),
            });
        }
        vertices.push(Vertex {
            coords,
            tight_facets: tight,
        });
    }
    Ok(vertices)
}

/// Nonzero direction `d` with `<l_i, d> >= 0` for every facet, if any.
///
/// When the normals span `R^n` the recession cone is pointed, so it is
/// nonzero iff it has an extreme ray, and every extreme ray is cut out by
/// `n - 1` independent normals. Scanning those candidates is complete.
pub fn recession_direction(p: &HPolytope) -> Option<Vec<BigInt>> {
    let n = p.dim();
    for subset in combinations(p.facet_count(), n - 1) {
        let normals: Vec<Vec<BigInt>> = subset.iter().map(|&i| p.facet(i).normal.clone()).collect();
        let d = cross_product(&normals, n);
        if d.iter().all(Zero::is_zero) {
            continue;
        }
        for cand in [d.clone(), d.iter().map(|x| -x).collect()] {
            if p.facets()
                .iter()
                .all(|f| !dot(&f.normal, &cand).is_negative())
            {
                return Some(cand);
            }
        }
    }
    None
}

pub fn enumerate_edges(p: &HPolytope, vs: &[Vertex]) -> Result<Vec<Edge>, PolytopeError> {
    let n = p.dim();
    let mut edges = Vec::new();
    let mut degree = alloc::vec![0usize; vs.len()];
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let common: Vec<usize> = vs[i]
                .tight_facets
                .iter()
                .filter(|f| vs[j].tight_facets.contains(f))
                .copied()
                .collect();
            if common.len() == n - 1 {
                degree[i] += 1;
                degree[j] += 1;
                edges.push(Edge {
                    endpoints: (i, j),
                    common_facets: common,
                });
            }
        }
    }
    if let Some((vertex, &edges)) = degree.iter().enumerate().find(|(_, &d)| d != n) {
        return Err(PolytopeError::InconsistentLattice {
            vertex,
            edges,
            expected: n,
        });
    }
    Ok(edges)
}

/// Face counts by codimension, reading faces off as subsets of tight sets.
pub fn f_vector(n: usize, vs: &[Vertex]) -> FVector {
    FVector(
        (1..=n)
            .map(|codim| {
                let faces: BTreeSet<Vec<usize>> = vs
                    .iter()
                    .flat_map(|v| {
                        combinations(n, codim)
                            .into_iter()
                            .map(|s| s.iter().map(|&k| v.tight_facets[k]).collect::<Vec<_>>())
                    })
                    .collect();
                faces.len() as u64
            })
            .collect(),
    )
}

/// Expands `(t-1)^n + f_0 (t-1)^(n-1) + ... + f_(n-1)` and reads off
/// `h_0 t^n + ... + h_n`.
pub fn h_vector(f: &FVector) -> HVector {
    let n = f.0.len();
    // coefficients by descending power of t: h[i] multiplies t^(n-i)
    let mut h = alloc::vec![0i64; n + 1];
    let leading = core::iter::once(1i64).chain(f.0.iter().map(|&x| x as i64));
    for (k, fk) in leading.enumerate() {
        // term fk * (t-1)^j with j = n - k
        let j = n - k;
        let mut binom = 1i64;
        for i in 0..=j {
            // coefficient of t^(j-i) in (t-1)^j is C(j,i) (-1)^i
            let c = if i % 2 == 0 { binom } else { -binom };
            h[n - (j - i)] += fk * c;
            binom = binom * (j - i) as i64 / (i + 1) as i64;
        }
    }
    HVector(h)
}

/// A validated simple polytope with its vertices and edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePolytope {
    polytope: HPolytope,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl SimplePolytope {
    pub fn analyze(polytope: HPolytope) -> Result<Self, PolytopeError> {
        let vertices = enumerate_vertices(&polytope)?;
        if recession_direction(&polytope).is_some() {
            return Err(PolytopeError::EmptyOrUnbounded);
        }
        let mut used = alloc::vec![false; polytope.facet_count()];
        for v in &vertices {
            for &f in &v.tight_facets {
                used[f] = true;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(PolytopeError::RedundantInequality(i));
        }
        let edges = enumerate_edges(&polytope, &vertices)?;
        let mut incident = alloc::vec![Vec::new(); vertices.len()];
        for (e, edge) in edges.iter().enumerate() {
            incident[edge.endpoints.0].push(e);
            incident[edge.endpoints.1].push(e);
        }
        Ok(Self {
            polytope,
            vertices,
            edges,
            incident,
        })
    }

    pub fn polytope(&self) -> &HPolytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.polytope.dim()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.incident[v].iter().map(move |&e| &self.edges[e])
    }

    pub fn vertex_index(&self, coords: &QVector) -> Option<usize> {
        self.vertices.iter().position(|v| &v.coords == coords)
    }

    pub fn f_vector(&self) -> FVector {
        f_vector(self.dim(), &self.vertices)
    }

    pub fn h_vector(&self) -> HVector {
        h_vector(&self.f_vector())
    }

    /// The edge at `v` that leaves facet `facet` (the only incident edge not
    /// contained in it).
    fn edge_off_facet(&self, v: usize, facet: usize) -> Option<&Edge> {
        self.incident_edges(v)
            .find(|e| !e.common_facets.contains(&facet))
    }

    /// Canonical ordering of the tight facets at `v`: the lexicographically
    /// smallest permutation for which the paired outward edge directions
    /// form a basis of the requested orientation.
    pub fn vertex_geometry(
        &self,
        v: usize,
        orientation: Orientation,
    ) -> Result<VertexGeometry, PolytopeError> {
        let vertex = &self.vertices[v];
        let mut ordered = vertex.tight_facets.clone();
        let mut dirs = Vec::with_capacity(ordered.len());
        for &facet in &ordered {
            let edge = self
                .edge_off_facet(v, facet)
                .ok_or(PolytopeError::MissingEdge { vertex: v, facet })?;
            let dir = self.vertices[edge.other(v)].coords.sub(&vertex.coords);
            if dir.is_zero() {
                return Err(PolytopeError::DegenerateEdge { vertex: v, facet });
            }
            dirs.push(dir);
        }
        let sign = algebra::det_sign_rational(&dirs) * orientation.sign();
        // Sorted order is the smallest permutation and is even; the next one
        // swaps the last two entries and is odd. One of them has the right sign.
        let n = ordered.len();
        let parity = if sign < 0 && n >= 2 {
            ordered.swap(n - 2, n - 1);
            dirs.swap(n - 2, n - 1);
            1
        } else {
            sign
        };
        Ok(VertexGeometry {
            vertex: v,
            ordered_facets: ordered,
            outward_dirs: dirs,
            parity,
        })
    }

    pub fn all_geometry(
        &self,
        orientation: Orientation,
    ) -> Result<Vec<VertexGeometry>, PolytopeError> {
        (0..self.vertices.len())
            .map(|v| self.vertex_geometry(v, orientation))
            .collect()
    }

    /// Every vertex has integer coordinates.
    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.coords.is_integral())
    }
}

/// Integer vector `v / gcd(v)` for a nonzero rational direction, i.e. the
/// primitive lattice vector along it.
pub fn primitive_direction(dir: &QVector) -> Vec<BigInt> {
    let l = dir
        .0
        .iter()
        .fold(BigInt::from(1), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = dir
        .0
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = algebra::content(&ints);
    ints.iter().map(|x| x / &g).collect()
}
