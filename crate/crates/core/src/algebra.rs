//! Exact scalars, vectors and small dense integer matrices.
//!
//! Everything here is exact: integers are arbitrary precision and rationals
//! are kept reduced with a positive denominator. Matrices are expected to be
//! small (dimension at most ten or so), so determinants use fraction-free
//! Bareiss elimination and inverses of unimodular matrices go through the
//! adjugate.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: BigInt },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a matrix needs at least one row and one column")]
    EmptyShape,
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::EmptyShape);
        }
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from machine-integer rows. Panics on ragged input, so
    /// it is meant for literals.
    pub fn from_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        let entries = rows.iter().flatten().map(|&x| BigInt::from(x)).collect();
        Self::new(rows.len(), C, entries).expect("literal matrix must be non-empty")
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self, AlgebraError> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(AlgebraError::EmptyShape);
        }
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(AlgebraError::DimensionMismatch {
                expected: rows,
                found: bad.len(),
            });
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in columns {
                entries.push(c[r].clone());
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        Self {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<BigInt> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                entries.push(acc);
            }
        }
        Ok(IntMatrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// Matrix-vector product over the integers.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(&self.row(r), v)).collect())
    }

    /// Copy with row `skip_row` and column `skip_col` removed.
    fn minor(&self, skip_row: usize, skip_col: usize) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .filter(|&r| r != skip_row)
            .map(|r| {
                (0..self.cols)
                    .filter(|&c| c != skip_col)
                    .map(|c| self.get(r, c).clone())
                    .collect()
            })
            .collect()
    }

    fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r)))
            .finish()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// A point or direction in rational n-space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn zeros(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        QVector(
            v.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Pairing with an integer covector.
    pub fn pair(&self, covector: &[BigInt]) -> Rational {
        self.0
            .iter()
            .zip(covector)
            .map(|(x, l)| x * Rational::from_integer(l.clone()))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// Every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|x| x.is_integer())
    }
}

impl Deref for QVector {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for QVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Non-negative gcd of all entries; zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    content(v).is_one()
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(bareiss_det(m.to_rows()))
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                // exact by Sylvester's identity
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Integer inverse of a matrix with determinant ±1.
pub fn unimodular_inverse(m: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
    let d = det(m)?;
    if d.abs() != BigInt::one() {
        return Err(AlgebraError::NotUnimodular { det: d });
    }
    let n = m.rows();
    if n == 1 {
        return IntMatrix::new(1, 1, vec![d]);
    }
    // inv = adj(m) / det = adj(m) * det since det = ±1
    let mut entries = Vec::with_capacity(n * n);
    for r in 0..n {
        for c in 0..n {
            let cof = bareiss_det(m.minor(c, r));
            let signed = if (r + c) % 2 == 0 { cof } else { -cof };
            entries.push(signed * &d);
        }
    }
    IntMatrix::new(n, n, entries)
}

/// Solves `a * x = b` exactly over the rationals.
pub fn solve_rational(a: &IntMatrix, b: &QVector) -> Result<QVector, AlgebraError> {
    if !a.is_square() {
        return Err(AlgebraError::NonSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if b.dim() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = (0..n)
                .map(|c| Rational::from_integer(a.get(r, c).clone()))
                .collect();
            row.push(b[r].clone());
            row
        })
        .collect();
    for k in 0..n {
        let pivot = (k..n)
            .find(|&r| !aug[r][k].is_zero())
            .ok_or(AlgebraError::Singular)?;
        aug.swap(k, pivot);
        for i in k + 1..n {
            if aug[i][k].is_zero() {
                continue;
            }
            let factor = &aug[i][k] / &aug[k][k];
            let (top, bottom) = aug.split_at_mut(i);
            for (dst, src) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *dst -= &factor * src;
            }
        }
    }
    let mut x = vec![Rational::zero(); n];
    for k in (0..n).rev() {
        let mut acc = aug[k][n].clone();
        for j in k + 1..n {
            acc -= &aug[k][j] * &x[j];
        }
        x[k] = acc / &aug[k][k];
    }
    Ok(QVector(x))
}

/// Generalized cross product: for `n - 1` integer vectors in `Z^n`, the
/// integer vector `d` with `d_j = (-1)^j det(rows with column j removed)`.
/// It is orthogonal to every input and nonzero iff they are independent.
pub fn cross_product(vectors: &[Vec<BigInt>], n: usize) -> Vec<BigInt> {
    (0..n)
        .map(|j| {
            let rows: Vec<Vec<BigInt>> = vectors
                .iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let d = bareiss_det(rows);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}

/// Sign of a square rational matrix given by its columns: -1, 0 or 1.
pub fn det_sign_rational(columns: &[QVector]) -> i8 {
    let n = columns.len();
    // clear denominators column by column; positive scalings keep the sign
    let cols: Vec<Vec<BigInt>> = columns
        .iter()
        .map(|col| {
            let l = col
                .0
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            col.0
                .iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let rows: Vec<Vec<BigInt>> = (0..n)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let d = bareiss_det(rows);
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(bi(n), bi(d))
    }

    /// Permutation-expansion determinant, independent of Bareiss.
    fn leibniz(m: &IntMatrix) -> BigInt {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = m.rows();
        perms(n)
            .into_iter()
            .map(|p| {
                let inversions = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .filter(|&(i, j)| p[i] > p[j])
                    .count();
                let prod: BigInt = (0..n).map(|i| m.get(i, p[i]).clone()).product();
                if inversions % 2 == 0 {
                    prod
                } else {
                    -prod
                }
            })
            .sum()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMatrix::identity(2)).unwrap(), bi(1));
        assert_eq!(
            det(&IntMatrix::from_rows(&[[-1, 0], [-1, 1]])).unwrap(),
            bi(-1)
        );
        assert_eq!(
            det(&IntMatrix::from_rows(&[[-1, -1], [1, 0]])).unwrap(),
            bi(1)
        );
    }

    #[test]
    fn det_rejects_non_square() {
        let m = IntMatrix::from_rows(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(det(&m), Err(AlgebraError::NonSquare { rows: 2, cols: 3 }));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = IntMatrix::from_rows(&[[0, 1, 2], [1, 0, 3], [4, -3, 8]]);
        assert_eq!(det(&m).unwrap(), leibniz(&m));
    }

    #[test]
    fn inverse_examples() {
        let id = IntMatrix::identity(3);
        assert_eq!(unimodular_inverse(&id).unwrap(), id);

        let m = IntMatrix::from_rows(&[[-1, 0], [-1, 1]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[[-1, 0], [-1, 1]]));
        assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(2));

        let m = IntMatrix::from_rows(&[[1, 1], [0, 1]]);
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(inv, IntMatrix::from_rows(&[[1, -1], [0, 1]]));
        assert_eq!(inv.mul(&m).unwrap(), IntMatrix::identity(2));
    }

    #[test]
    fn inverse_rejects_non_unimodular() {
        let m = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        assert!(unimodular_inverse(&m).is_ok());
        let m = IntMatrix::from_rows(&[[-2, 1], [-1, 0]]);
        assert!(unimodular_inverse(&m).is_ok());
        let m = IntMatrix::from_rows(&[[-2, 0], [-1, 1]]);
        assert_eq!(
            unimodular_inverse(&m),
            Err(AlgebraError::NotUnimodular { det: bi(-2) })
        );
    }

    #[test]
    fn one_by_one_inverse() {
        let m = IntMatrix::from_rows(&[[-1]]);
        assert_eq!(unimodular_inverse(&m).unwrap(), m);
    }

    #[test]
    fn solve_examples() {
        let b = QVector(vec![q(3, 4), q(-1, 2)]);
        assert_eq!(solve_rational(&IntMatrix::identity(2), &b).unwrap(), b);
        assert_eq!(
            solve_rational(&IntMatrix::identity(2), &QVector::zeros(2)).unwrap(),
            QVector::zeros(2)
        );
        let a = IntMatrix::from_rows(&[[-1, -1], [0, 1]]);
        let x = solve_rational(&a, &QVector(vec![q(-1, 1), q(0, 1)])).unwrap();
        assert_eq!(x, QVector(vec![q(1, 1), q(0, 1)]));
    }

    #[test]
    fn solve_rejects_singular() {
        let a = IntMatrix::from_rows(&[[1, 2], [2, 4]]);
        assert_eq!(
            solve_rational(&a, &QVector::zeros(2)),
            Err(AlgebraError::Singular)
        );
    }

    #[test]
    fn cross_product_is_orthogonal() {
        let vs = vec![vec![bi(1), bi(2), bi(3)], vec![bi(0), bi(1), bi(-1)]];
        let d = cross_product(&vs, 3);
        assert_eq!(d, vec![bi(-5), bi(1), bi(1)]);
        for v in &vs {
            assert!(dot(v, &d).is_zero());
        }
        // n = 1: the empty family spans nothing, the normal direction is e_1
        assert_eq!(cross_product(&[], 1), vec![bi(1)]);
    }

    #[test]
    fn content_and_primitivity() {
        assert_eq!(content(&[bi(4), bi(-6)]), bi(2));
        assert!(is_primitive(&[bi(-1), bi(-1)]));
        assert!(!is_primitive(&[bi(2), bi(2)]));
        assert!(!is_primitive(&[bi(0), bi(0)]));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    }

    /// Random unimodular matrix as a product of elementary row operations.
    fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
        proptest::collection::vec((0..n, 0..n, -3i64..=3, any::<bool>()), 0..12).prop_map(
            move |ops| {
                let mut m = IntMatrix::identity(n);
                for (i, j, k, flip) in ops {
                    let mut rows = m.to_rows();
                    if i != j {
                        let add: Vec<BigInt> = rows[j].iter().map(|x| x * bi(k)).collect();
                        for (a, b) in rows[i].iter_mut().zip(add) {
                            *a += b;
                        }
                    }
                    if flip {
                        for a in rows[i].iter_mut() {
                            *a = -a.clone();
                        }
                    }
                    m = IntMatrix::new(n, n, rows.into_iter().flatten().collect()).unwrap();
                }
                m
            },
        )
    }

    proptest! {
        #[test]
        fn bareiss_matches_leibniz(m in (1usize..=4).prop_flat_map(small_matrix)) {
            prop_assert_eq!(det(&m).unwrap(), leibniz(&m));
        }

        #[test]
        fn det_is_multiplicative(
            (a, b) in (1usize..=4).prop_flat_map(|n| (small_matrix(n), small_matrix(n)))
        ) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det(&ab).unwrap(), det(&a).unwrap() * det(&b).unwrap());
        }

        #[test]
        fn unimodular_inverse_is_two_sided(m in (1usize..=5).prop_flat_map(unimodular)) {
            let inv = unimodular_inverse(&m).unwrap();
            let n = m.rows();
            prop_assert_eq!(inv.mul(&m).unwrap(), IntMatrix::identity(n));
            prop_assert_eq!(m.mul(&inv).unwrap(), IntMatrix::identity(n));
        }

        #[test]
        fn solve_substitutes_back(
            m in (1usize..=4).prop_flat_map(small_matrix),
            num in proptest::collection::vec(-9i64..=9, 4),
            den in proptest::collection::vec(1i64..=5, 4),
        ) {
            let n = m.rows();
            let b = QVector((0..n).map(|i| q(num[i], den[i])).collect());
            match solve_rational(&m, &b) {
                Ok(x) => {
                    for r in 0..n {
                        prop_assert_eq!(x.pair(&m.row(r)), b[r].clone());
                    }
                }
                Err(e) => {
                    prop_assert_eq!(e, AlgebraError::Singular);
                    prop_assert!(det(&m).unwrap().is_zero());
                }
            }
        }
    }
}
