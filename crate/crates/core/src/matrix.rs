//! Dense matrices over exact rings and their determinants.
//!
//! The primary route is fraction-free (Bareiss) elimination, which only ever
//! divides exactly by the previous pivot. Laplace expansion is kept as an
//! independent oracle.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A commutative ring with exact division, enough for Bareiss elimination.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, where the caller guarantees the quotient exists.
    fn exact_div(&self, rhs: &Self) -> Result<Self>;
}

impl ExactRing for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        if Zero::is_zero(rhs) {
            return Err(Error::Domain("division by zero".into()));
        }
        Ok(self / rhs)
    }
}

impl ExactRing for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn one() -> Self {
        Polynomial::one()
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, rhs: &Self) -> Result<Self> {
        Polynomial::exact_div(self, rhs)
    }
}

/// Row-major rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

pub type PolyMatrix = Matrix<Polynomial>;
pub type RatMatrix = Matrix<Rational>;

impl<T: ExactRing> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(Error::Dimension("matrix must have at least one row and column".into()));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    /// Drops the listed row and column.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        Self::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let ii = if i >= row { i + 1 } else { i };
            let jj = if j >= col { j + 1 } else { j };
            self.get(ii, jj).clone()
        })
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::Dimension(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    /// Fraction-free Gaussian elimination.
    pub fn det(&self) -> Result<T> {
        let n = self.require_square()?;
        let mut a: Vec<Vec<T>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = num.exact_div(&prev)?;
                }
                a[i][k] = T::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { d.neg() } else { d })
    }

    /// Cofactor expansion along the first row. Exponential cost; for
    /// cross-checking small matrices only.
    pub fn det_laplace(&self) -> Result<T> {
        self.require_square()?;
        Ok(laplace(self))
    }
}

fn laplace<T: ExactRing>(m: &Matrix<T>) -> T {
    if m.rows == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = T::zero();
    for j in 0..m.cols {
        let e = m.get(0, j);
        if e.is_zero() {
            continue;
        }
        let term = e.mul(&laplace(&m.minor(0, j)));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Determinant of a square polynomial matrix.
pub fn det_poly_matrix(m: &PolyMatrix) -> Result<Polynomial> {
    m.det()
}

/// Determinant of a square rational matrix given as rows. An empty matrix
/// has determinant one.
pub fn det_rational(rows: Vec<Vec<Rational>>) -> Result<Rational> {
    if rows.is_empty() {
        return Ok(<Rational as One>::one());
    }
    RatMatrix::from_rows(rows)?.det()
}

/// Determinant of a square polynomial matrix given as rows; empty gives one.
pub fn det_polynomial_rows(rows: Vec<Vec<Polynomial>>) -> Result<Polynomial> {
    if rows.is_empty() {
        return Ok(Polynomial::one());
    }
    PolyMatrix::from_rows(rows)?.det()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn identity_det() {
        assert_eq!(det_poly_matrix(&PolyMatrix::identity(3)).unwrap(), Polynomial::one());
    }

    #[test]
    fn two_by_two() {
        let m = PolyMatrix::from_rows(vec![vec![p(&[0, 1]), p(&[1])], vec![p(&[1]), p(&[0, 1])]]).unwrap();
        assert_eq!(det_poly_matrix(&m).unwrap(), p(&[-1, 0, 1]));
    }

    #[test]
    fn repeated_rows_vanish() {
        let row = vec![p(&[1, 2]), p(&[0, 0, 3]), p(&[5])];
        let m = PolyMatrix::from_rows(vec![row.clone(), vec![p(&[1]), p(&[2]), p(&[0, 1])], row]).unwrap();
        assert!(det_poly_matrix(&m).unwrap().is_zero());
    }

    #[test]
    fn non_square_rejected() {
        let m = PolyMatrix::from_rows(vec![vec![p(&[1]), p(&[2])]]).unwrap();
        assert!(matches!(det_poly_matrix(&m), Err(Error::Dimension(_))));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), int(1), int(2)],
            vec![int(3), int(0), int(1)],
            vec![int(4), int(5), int(0)],
        ])
        .unwrap();
        assert_eq!(m.det().unwrap(), m.det_laplace().unwrap());
        assert_eq!(m.det().unwrap(), int(34));
    }

    #[test]
    fn empty_rational_det_is_one() {
        assert_eq!(det_rational(vec![]).unwrap(), int(1));
    }
}
