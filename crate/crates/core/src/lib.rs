//! Exact computation of the chi_y-genus, signature, Todd genus and top
//! Chern number of a multioriented quasitoric manifold from its
//! combinatorial data: an oriented simple polytope and a characteristic
//! matrix of signed facet vectors.
//!
//! The genus is a sum of vertex contributions `(-y)^ind(p) sigma(p)`, where
//! `sigma(p)` is the sign of the vertex and `ind(p)` counts the negative
//! weights of a generic circle at the corresponding fixed point. All
//! arithmetic is exact.
//!
//! ```
//! use quasitoric_core::prelude::*;
//! use num_bigint::BigInt;
//!
//! let f = |n: [i64; 2], a: i64| {
//!     Facet::new(n.iter().map(|&x| BigInt::from(x)).collect(), Rational::from_integer(a.into()))
//! };
//! let triangle = HPolytope::new(2, vec![f([-1, -1], 1), f([1, 0], 0), f([0, 1], 0)]).unwrap();
//! let lambda = CharMatrix::from_i64_columns(2, &[&[-1, -1], &[1, 0], &[0, 1]]).unwrap();
//! let pair = CharacteristicPair::new(
//!     SimplePolytope::analyze(triangle).unwrap(),
//!     lambda,
//!     Orientation::Standard,
//! )
//! .unwrap();
//! let report = genus_report(&pair, None).unwrap();
//! assert_eq!(report.chi_y.to_string(), "1 - y + y^2");
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod algebra;
pub mod char_pair;
pub mod equivariant;
pub mod genera;
pub mod polytope;
pub mod toric;

pub mod prelude {
    pub use crate::algebra::{IntMatrix, QVector, Rational};
    pub use crate::char_pair::{
        find_generic_nu, index_lambda, index_mu, local_frame, validate_characteristic, CharError,
        CharMatrix, CharacteristicPair, LocalFrame, NuVector,
    };
    pub use crate::equivariant::{equivariant_chi_y_at, rigidity_check, EquivariantError};
    pub use crate::genera::{
        chi_y, genus_report, nu_invariance_check, signature, signature_oriented, todd, top_chern,
        GenusReport, YPolynomial,
    };
    pub use crate::polytope::{
        FVector, Facet, HPolytope, HVector, Orientation, PolytopeError, SimplePolytope,
    };
    pub use crate::toric::{
        lambda_from_normals, toric_report, IntegralPolytope, ToricError, ToricReport,
    };
}
