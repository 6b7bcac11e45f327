//! Smooth projective toric varieties from integral simple polytopes: the
//! characteristic matrix is given by the primitive inward facet normals.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::algebra::{self, det};
use crate::char_pair::{CharError, CharMatrix, CharacteristicPair, NuVector};
use crate::genera::{genus_report, morse_counts, GenusReport};
use crate::polytope::{HPolytope, Orientation, PolytopeError, SimplePolytope};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToricError {
    #[error("vertex {vertex} has non-integer coordinates")]
    NonIntegral { vertex: usize },
    #[error("not smooth at vertex {vertex}: normal minor has determinant {det}")]
    NonSmoothToric { vertex: usize, det: BigInt },
    #[error("toric identity failed: {0}")]
    InvariantViolated(&'static str),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// A simple polytope whose vertices are lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralPolytope(SimplePolytope);

impl IntegralPolytope {
    pub fn new(p: SimplePolytope) -> Result<Self, ToricError> {
        if let Some(vertex) = p.vertices().iter().position(|v| !v.coords.is_integral()) {
            return Err(ToricError::NonIntegral { vertex });
        }
        Ok(Self(p))
    }

    /// Analyzes `p` after dividing every inequality by the content of its
    /// normal.
    pub fn from_hpolytope(p: &HPolytope) -> Result<Self, ToricError> {
        let facets = p.facets().iter().map(|f| f.primitive()).collect();
        let p = HPolytope::new(p.dim(), facets)?;
        Self::new(SimplePolytope::analyze(p)?)
    }

    pub fn simple(&self) -> &SimplePolytope {
        &self.0
    }

    pub fn into_simple(self) -> SimplePolytope {
        self.0
    }
}

/// Columns are the primitive inward normals `l_i / gcd(l_i)`.
pub fn lambda_from_normals(p: &IntegralPolytope) -> Result<CharMatrix, ToricError> {
    let poly = p.simple();
    let columns: Vec<Vec<BigInt>> = poly
        .polytope()
        .facets()
        .iter()
        .map(|f| {
            let g = algebra::content(&f.normal);
            f.normal.iter().map(|x| x / &g).collect()
        })
        .collect();
    let lambda = CharMatrix::new(poly.dim(), columns)?;
    for (vertex, v) in poly.vertices().iter().enumerate() {
        let d = det(&lambda.minor(&v.tight_facets)).map_err(CharError::from)?;
        if !d.abs().is_one() {
            return Err(ToricError::NonSmoothToric { vertex, det: d });
        }
    }
    Ok(lambda)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricReport {
    pub genus: GenusReport,
    /// Entry `k` is the number of vertices of index `k`.
    pub morse_counts: Vec<u64>,
}

/// Builds the toric characteristic pair with the standard orientation.
pub fn toric_pair(p: &IntegralPolytope) -> Result<CharacteristicPair, ToricError> {
    let lambda = lambda_from_normals(p)?;
    Ok(CharacteristicPair::new(
        p.simple().clone(),
        lambda,
        Orientation::Standard,
    )?)
}

/// Genus report plus the checks that hold for every smooth toric variety:
/// all signs `+1`, one vertex of index zero, index counts equal to the
/// h-vector, `td = 1` and `sign = sum (-1)^k h_k`.
pub fn toric_report(
    p: &IntegralPolytope,
    nu: Option<&NuVector>,
) -> Result<ToricReport, ToricError> {
    let pair = toric_pair(p)?;
    let genus = genus_report(&pair, nu)?;
    let counts = morse_counts(pair.frames(), &genus.nu_used)?;
    if pair.frames().iter().any(|f| f.sigma != 1) {
        return Err(ToricError::InvariantViolated("every vertex sign is +1"));
    }
    if counts.first() != Some(&1) {
        return Err(ToricError::InvariantViolated(
            "exactly one vertex of index 0",
        ));
    }
    let h = &genus.h_vector;
    if counts.iter().map(|&c| c as i64).ne(h.0.iter().copied()) {
        return Err(ToricError::InvariantViolated(
            "index counts equal the h-vector",
        ));
    }
    if !genus.todd.is_one() {
        return Err(ToricError::InvariantViolated("todd genus is 1"));
    }
    if genus.signature != BigInt::from(h.alternating_sum()) {
        return Err(ToricError::InvariantViolated(
            "signature is the alternating h-sum",
        ));
    }
    Ok(ToricReport {
        genus,
        morse_counts: counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rational;
    use crate::genera::YPolynomial;
    use crate::polytope::Facet;
    use alloc::vec;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn facet(n: &[i64], a: i64) -> Facet {
        Facet::new(
            n.iter().map(|&x| bi(x)).collect(),
            Rational::from_integer(bi(a)),
        )
    }

    fn simplex(scale: i64) -> HPolytope {
        HPolytope::new(
            2,
            vec![
                facet(&[-1, -1], scale),
                facet(&[1, 0], 0),
                facet(&[0, 1], 0),
            ],
        )
        .unwrap()
    }

    fn columns(l: &CharMatrix) -> Vec<Vec<i64>> {
        l.columns()
            .iter()
            .map(|c| c.iter().map(|x| i64::try_from(x).unwrap()).collect())
            .collect()
    }

    #[test]
    fn simplex_normals() {
        let p = IntegralPolytope::from_hpolytope(&simplex(1)).unwrap();
        let l = lambda_from_normals(&p).unwrap();
        assert_eq!(columns(&l), vec![vec![-1, -1], vec![1, 0], vec![0, 1]]);
        // dilation leaves the normals alone
        let p2 = IntegralPolytope::from_hpolytope(&simplex(2)).unwrap();
        assert_eq!(lambda_from_normals(&p2).unwrap(), l);
    }

    #[test]
    fn non_primitive_normals_are_divided() {
        let h = HPolytope::new(
            2,
            vec![
                facet(&[2, 0], 0),
                facet(&[-3, 0], 3),
                facet(&[0, 4], 0),
                facet(&[0, -1], 1),
            ],
        )
        .unwrap();
        let p = IntegralPolytope::from_hpolytope(&h).unwrap();
        assert_eq!(
            columns(&lambda_from_normals(&p).unwrap()),
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]]
        );
    }

    #[test]
    fn singular_and_non_integral_are_rejected() {
        // weighted projective plane P(1,1,2): triangle (0,0),(2,0),(0,1)
        let h = HPolytope::new(
            2,
            vec![facet(&[-1, -2], 2), facet(&[1, 0], 0), facet(&[0, 1], 0)],
        )
        .unwrap();
        let p = IntegralPolytope::from_hpolytope(&h).unwrap();
        assert!(matches!(
            lambda_from_normals(&p),
            Err(ToricError::NonSmoothToric { .. })
        ));

        let h = HPolytope::new(
            2,
            vec![facet(&[-2, -2], 1), facet(&[1, 0], 0), facet(&[0, 1], 0)],
        )
        .unwrap();
        assert!(matches!(
            IntegralPolytope::from_hpolytope(&h),
            Err(ToricError::NonIntegral { .. })
        ));
    }

    #[test]
    fn simplex_report() {
        let p = IntegralPolytope::from_hpolytope(&simplex(1)).unwrap();
        let r = toric_report(&p, None).unwrap();
        assert_eq!(r.genus.chi_y, YPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(r.genus.signature, bi(1));
        assert_eq!(r.morse_counts, vec![1, 1, 1]);
    }

    #[test]
    fn square_report() {
        let h = HPolytope::new(
            2,
            vec![
                facet(&[1, 0], 0),
                facet(&[-1, 0], 1),
                facet(&[0, 1], 0),
                facet(&[0, -1], 1),
            ],
        )
        .unwrap();
        let r = toric_report(&IntegralPolytope::from_hpolytope(&h).unwrap(), None).unwrap();
        assert_eq!(r.genus.todd, bi(1));
        assert_eq!(r.genus.signature, bi(0));
        assert_eq!(r.morse_counts, vec![1, 2, 1]);
    }

    #[test]
    fn hirzebruch_surface_report() {
        // trapezoid (0,0),(3,0),(0,1),(1,1): the Hirzebruch surface H_2
        let h = HPolytope::new(
            2,
            vec![
                facet(&[1, 0], 0),
                facet(&[0, 1], 0),
                facet(&[0, -1], 1),
                facet(&[-1, -2], 3),
            ],
        )
        .unwrap();
        let r = toric_report(&IntegralPolytope::from_hpolytope(&h).unwrap(), None).unwrap();
        assert_eq!(r.morse_counts, vec![1, 2, 1]);
        assert_eq!(r.genus.signature, bi(0));
    }
}
