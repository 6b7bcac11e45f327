//! chi_y-genus as a sum of vertex contributions `(-y)^ind(p) sigma(p)`, and
//! its specializations at `y = 1, 0, -1`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, det, dot, IntMatrix};
use crate::char_pair::{
    check_generic, index_mu, CharError, CharacteristicPair, LocalFrame, NuVector,
};
use crate::polytope::{FVector, HVector};

/// Polynomial in `y` with integer coefficients; `coeffs[k]` multiplies `y^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YPolynomial {
    coeffs: Vec<BigInt>,
}

impl YPolynomial {
    /// Coefficients `c_0..c_n`. Trailing zeros are kept so the length records
    /// the dimension.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, y: i64) -> BigInt {
        let y = BigInt::from(y);
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * &y + c)
    }

    pub fn negated(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for YPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "y")?,
                (1, false) => write!(f, "{mag}y")?,
                (_, true) => write!(f, "y^{k}")?,
                (_, false) => write!(f, "{mag}y^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn dim_of(frames: &[LocalFrame]) -> usize {
    frames.first().map_or(0, LocalFrame::dim)
}

/// `chi_y = sum_p (-y)^ind(p) sigma(p)`.
pub fn chi_y(frames: &[LocalFrame], nu: &NuVector) -> Result<YPolynomial, CharError> {
    let mut coeffs = vec![BigInt::zero(); dim_of(frames) + 1];
    for f in frames {
        let k = index_mu(f, nu)?.index;
        let term = if k % 2 == 0 { f.sigma } else { -f.sigma };
        coeffs[k] += term;
    }
    Ok(YPolynomial::new(coeffs))
}

/// `sum_p (-1)^ind(p) sigma(p)`.
pub fn signature(frames: &[LocalFrame], nu: &NuVector) -> Result<BigInt, CharError> {
    frames.iter().try_fold(BigInt::zero(), |acc, f| {
        let k = index_mu(f, nu)?.index;
        let s = i64::from(f.sigma);
        Ok(acc + if k % 2 == 0 { s } else { -s })
    })
}

/// Signature from edge vectors re-signed to pair positively with `nu`:
/// `sum_p det(mu~_1, ..., mu~_n)`. Uses only the sign-free edge data, so
/// it cannot see the signs chosen for the facet vectors.
pub fn signature_oriented(frames: &[LocalFrame], nu: &NuVector) -> Result<BigInt, CharError> {
    check_generic(frames, nu)?;
    let mut total = BigInt::zero();
    for f in frames {
        let cols: Vec<Vec<BigInt>> = f
            .mus()
            .map(|m| {
                if dot(&m, nu.as_slice()).is_negative() {
                    m.iter().map(|x| -x).collect()
                } else {
                    m
                }
            })
            .collect();
        let d = det(&IntMatrix::from_columns(&cols)?)?;
        // dimension one has no reordering freedom; see VertexGeometry::parity
        total += d * sign_of_parity(f);
    }
    Ok(total)
}

/// Parity recorded at the frame: `sigma * det(mu_matrix)`, which is +1 for
/// every frame in dimension at least two.
fn sign_of_parity(f: &LocalFrame) -> BigInt {
    let d = det(&f.mu_matrix).expect("square");
    d * i64::from(f.sigma)
}

/// `sum` of `sigma(p)` over vertices of index zero.
pub fn todd(frames: &[LocalFrame], nu: &NuVector) -> Result<BigInt, CharError> {
    frames.iter().try_fold(BigInt::zero(), |acc, f| {
        Ok(if index_mu(f, nu)?.index == 0 {
            acc + i64::from(f.sigma)
        } else {
            acc
        })
    })
}

/// Top Chern number `c_n = sum_p sigma(p)`.
pub fn top_chern(frames: &[LocalFrame]) -> BigInt {
    frames.iter().map(|f| BigInt::from(f.sigma)).sum()
}

/// Euler number: one fixed point per vertex.
pub fn euler(frames: &[LocalFrame]) -> u64 {
    frames.len() as u64
}

/// Number of vertices of each index `0..=n`.
pub fn morse_counts(frames: &[LocalFrame], nu: &NuVector) -> Result<Vec<u64>, CharError> {
    let mut counts = vec![0u64; dim_of(frames) + 1];
    for f in frames {
        counts[index_mu(f, nu)?.index] += 1;
    }
    Ok(counts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusReport {
    pub chi_y: YPolynomial,
    pub signature: BigInt,
    pub todd: BigInt,
    pub top_chern: BigInt,
    pub euler: u64,
    pub f_vector: FVector,
    pub h_vector: HVector,
    pub nu_used: NuVector,
}

impl GenusReport {
    /// The specializations agree with the polynomial.
    pub fn is_consistent(&self) -> bool {
        self.chi_y.eval(1) == self.signature
            && self.chi_y.eval(0) == self.todd
            && self.chi_y.eval(-1) == self.top_chern
    }
}

/// One pass over the frames with a fixed `nu` (found deterministically when
/// not given).
pub fn genus_report(
    pair: &CharacteristicPair,
    nu: Option<&NuVector>,
) -> Result<GenusReport, CharError> {
    let frames = pair.frames();
    let nu = match nu {
        Some(nu) => {
            if nu.dim() != pair.dim() {
                return Err(CharError::NuLength {
                    expected: pair.dim(),
                    found: nu.dim(),
                });
            }
            check_generic(frames, nu)?;
            nu.clone()
        }
        None => crate::char_pair::find_generic_nu(frames),
    };
    let chi = chi_y(frames, &nu)?;
    let report = GenusReport {
        signature: signature(frames, &nu)?,
        todd: todd(frames, &nu)?,
        top_chern: top_chern(frames),
        euler: euler(frames),
        f_vector: pair.polytope().f_vector(),
        h_vector: pair.polytope().h_vector(),
        nu_used: nu,
        chi_y: chi,
    };
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuMismatch {
    pub nu: NuVector,
    pub chi_y: YPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuInvarianceReport {
    /// Number of distinct generic vectors actually tried.
    pub trials: usize,
    pub reference: YPolynomial,
    pub reference_nu: NuVector,
    pub first_mismatch: Option<NuMismatch>,
}

impl NuInvarianceReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Up to `trials` distinct generic primitive vectors drawn from a seeded
/// generator. Dimension one only has `(1)` and `(-1)`, so fewer may come back.
pub fn generic_nu_samples(frames: &[LocalFrame], trials: usize, seed: u64) -> Vec<NuVector> {
    let n = dim_of(frames).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(trials);
    let mut range = 3i64;
    let mut misses = 0usize;
    let max_attempts = 200 * trials.max(1) + 1000;
    for _ in 0..max_attempts {
        if out.len() == trials {
            break;
        }
        let v: Vec<BigInt> = (0..n)
            .map(|_| BigInt::from(rng.gen_range(-range..=range)))
            .collect();
        let ok = algebra::is_primitive(&v)
            && !seen.contains(&v)
            && NuVector::new(v.clone())
                .map(|nu| check_generic(frames, &nu).is_ok())
                .unwrap_or(false);
        if ok {
            seen.insert(v.clone());
            out.push(NuVector::new(v).expect("checked primitive"));
            misses = 0;
        } else {
            misses += 1;
            if misses > 50 && range < 1 << 20 {
                range *= 2;
                misses = 0;
            }
        }
    }
    out
}

/// Evaluates chi_y for many generic `nu` and compares them all with the
/// first one.
pub fn nu_invariance_check(
    frames: &[LocalFrame],
    trials: usize,
    seed: u64,
) -> Result<NuInvarianceReport, CharError> {
    let reference_nu = crate::char_pair::find_generic_nu(frames);
    let reference = chi_y(frames, &reference_nu)?;
    let samples = generic_nu_samples(frames, trials, seed);
    let mut first_mismatch = None;
    for nu in &samples {
        let p = chi_y(frames, nu)?;
        if p != reference {
            first_mismatch = Some(NuMismatch {
                nu: nu.clone(),
                chi_y: p,
            });
            break;
        }
    }
    Ok(NuInvarianceReport {
        trials: samples.len(),
        reference,
        reference_nu,
        first_mismatch,
    })
}
