//! Equivariant chi_y-genus evaluated at exact rational points `q`:
//!
//! `chi_y(q) = sum_p sigma(p) prod_k (1 + y q^(w_k)) / (1 - q^(w_k))`
//!
//! where `w_k = <mu_k, nu>` are the weights at vertex `p`. Each summand is a
//! genuine rational function of `q`; only the full sum collapses to the
//! q-independent integer polynomial, which makes this a strong cross-check
//! of the combinatorial formula.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::Rational;
use crate::char_pair::{index_mu, CharError, LocalFrame, NuVector};
use crate::genera::{chi_y, todd, YPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error("sample point q = 0 is not allowed")]
    ZeroSample,
    #[error("pole at q = {q}: 1 - q^{weight} vanishes at vertex {vertex}")]
    PoleAtQ {
        q: Rational,
        vertex: usize,
        weight: BigInt,
    },
    #[error("weight {0} is too large to exponentiate")]
    WeightTooLarge(BigInt),
    #[error(transparent)]
    Char(#[from] CharError),
}

/// Polynomial in `y` with rational coefficients; `coeffs[k]` multiplies `y^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QYPolynomial {
    pub coeffs: Vec<Rational>,
}

impl QYPolynomial {
    fn constant(n: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    /// Multiplies in place by `a + b y`, dropping anything past the stored
    /// degree (never reached: a vertex has exactly `n` factors).
    fn mul_linear(&mut self, a: &Rational, b: &Rational) {
        let n = self.coeffs.len();
        let mut out = vec![Rational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out[k] += c * a;
            if k + 1 < n {
                out[k + 1] += c * b;
            }
        }
        self.coeffs = out;
    }

    fn add_scaled(&mut self, other: &QYPolynomial, s: i8) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if s > 0 {
                *a += b;
            } else {
                *a -= b;
            }
        }
    }

    /// Integer polynomial if every coefficient is integral.
    pub fn to_integer(&self) -> Option<YPolynomial> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(YPolynomial::new)
    }

    pub fn matches(&self, p: &YPolynomial) -> bool {
        self.coeffs.len() == p.coeffs().len()
            && self
                .coeffs
                .iter()
                .zip(p.coeffs())
                .all(|(a, b)| *a == Rational::from_integer(b.clone()))
    }
}

/// `q^w` for a signed integer exponent; `q` must be nonzero.
pub fn rational_pow(q: &Rational, w: &BigInt) -> Result<Rational, EquivariantError> {
    let e = w
        .abs()
        .to_u32()
        .ok_or_else(|| EquivariantError::WeightTooLarge(w.clone()))?;
    let base = if w.is_negative() {
        q.recip()
    } else {
        q.clone()
    };
    Ok(Rational::new(base.numer().pow(e), base.denom().pow(e)))
}

/// Contribution of one vertex, before the sign `sigma(p)`.
pub fn vertex_summand(
    frame: &LocalFrame,
    nu: &NuVector,
    q: &Rational,
) -> Result<QYPolynomial, EquivariantError> {
    if q.is_zero() {
        return Err(EquivariantError::ZeroSample);
    }
    let weights = index_mu(frame, nu)?.weights;
    let mut acc = QYPolynomial::constant(frame.dim(), Rational::one());
    for w in &weights {
        let qw = rational_pow(q, w)?;
        let denom = Rational::one() - &qw;
        if denom.is_zero() {
            return Err(EquivariantError::PoleAtQ {
                q: q.clone(),
                vertex: frame.vertex,
                weight: w.clone(),
            });
        }
        let inv = denom.recip();
        let b = &qw * &inv;
        acc.mul_linear(&inv, &b);
    }
    Ok(acc)
}

pub fn equivariant_chi_y_at(
    frames: &[LocalFrame],
    nu: &NuVector,
    q: &Rational,
) -> Result<QYPolynomial, EquivariantError> {
    let n = frames.first().map_or(0, LocalFrame::dim);
    let mut total = QYPolynomial::constant(n, Rational::zero());
    for f in frames {
        total.add_scaled(&vertex_summand(f, nu, q)?, f.sigma);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleOutcome {
    pub q: Rational,
    pub value: QYPolynomial,
    /// Equals the combinatorial chi_y coefficientwise.
    pub agrees: bool,
    /// Constant term equals the Todd genus.
    pub todd_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityReport {
    pub expected: YPolynomial,
    pub samples: Vec<SampleOutcome>,
}

impl RigidityReport {
    /// Vacuously true with no samples.
    pub fn passed(&self) -> bool {
        self.samples.iter().all(|s| s.agrees && s.todd_agrees)
    }
}

pub fn rigidity_check(
    frames: &[LocalFrame],
    nu: &NuVector,
    samples: &[Rational],
) -> Result<RigidityReport, EquivariantError> {
    let expected = chi_y(frames, nu)?;
    let td = Rational::from_integer(todd(frames, nu)?);
    let samples = samples
        .iter()
        .map(|q| {
            let value = equivariant_chi_y_at(frames, nu, q)?;
            Ok(SampleOutcome {
                q: q.clone(),
                agrees: value.matches(&expected),
                todd_agrees: value.coeffs[0] == td,
                value,
            })
        })
        .collect::<Result<Vec<_>, EquivariantError>>()?;
    Ok(RigidityReport { expected, samples })
}

/// The sample points used when none are given.
pub fn default_samples() -> Vec<Rational> {
    [(1, 2), (2, 1), (-1, 3), (3, 1), (5, 7)]
        .iter()
        .map(|&(a, b)| Rational::new(BigInt::from(a), BigInt::from(b)))
        .collect()
}
