//! Exact integers, rationals and the small dense integer linear algebra the
//! rest of the crate is built on.
//!
//! Everything here is exact. Matrices are tiny (at most the polytope
//! dimension, or the number of partitions of six), so the algorithms are
//! the textbook ones: Bareiss elimination for determinants, Gauss-Jordan over
//! the rationals for solves and inverses, and a row-style Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(v: i64) -> Integer {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    BigRational::from_integer(v.into())
}

/// Canonical `num/den` rendering with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|r| self.row(r).iter().map(|e| e.to_string()).collect()).collect();
        write!(f, "IntMatrix{rows:?}")
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            entries.extend(r.as_ref().iter().map(|&v| BigInt::from(v)));
        }
        Self { rows: rows.len(), cols, entries }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols);
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Dimension("ragged columns".into()));
            }
            for (r, v) in col.iter().enumerate() {
                m.entries[r * cols + c] = v.clone();
            }
        }
        Ok(m)
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

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.entries[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.entries[r * other.cols + c] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension("vector length does not match column count".into()));
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::Dimension(format!("expected a square matrix, got {}x{}", self.rows, self.cols)))
        }
    }

    fn to_rational_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).iter().map(|v| rat_int(v.clone())).collect()).collect()
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Fraction-free (Bareiss) determinant.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| m.row(r).to_vec()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}

/// Inverse of an integer matrix with determinant ±1.
pub fn inverse_unimodular(m: &IntMatrix) -> Result<IntMatrix> {
    let d = det(m)?;
    if d.abs() != BigInt::one() {
        return Err(Error::NotUnimodular { det: d });
    }
    let inv = rational_inverse(&m.to_rational_rows())?;
    let n = m.rows;
    let mut out = IntMatrix::zeros(n, n);
    for (r, row) in inv.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            debug_assert!(v.is_integer());
            out.set(r, c, v.to_integer());
        }
    }
    Ok(out)
}

/// Solves `a x = b` exactly for a nonsingular square integer matrix.
pub fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Result<Vec<Rational>> {
    a.require_square()?;
    if b.len() != a.rows {
        return Err(Error::Dimension("right-hand side has wrong length".into()));
    }
    let rhs: Vec<Rational> = b.iter().map(|v| rat_int(v.clone())).collect();
    solve_rational_system(&a.to_rational_rows(), &rhs)
}

/// Gaussian elimination over the rationals for a square system.
pub fn solve_rational_system(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("system is not square".into()));
    }
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    reduce_rows(&mut aug, n)?;
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn rational_inverse(a: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    reduce_rows(&mut aug, n)?;
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

// Gauss-Jordan on the first `n` columns; leaves the identity there.
fn reduce_rows(aug: &mut [Vec<Rational>], n: usize) -> Result<()> {
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero()).ok_or(Error::Singular)?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (v, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *v -= &factor * p;
                }
            }
        }
    }
    Ok(())
}

pub fn rational_det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            d = -d;
        }
        d *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            let pivot_row = m[col].clone();
            for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
    }
    d
}

pub fn rational_rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            let pivot_row = m[rank].clone();
            for (v, p) in m[r].iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Generalized cross product of `n - 1` vectors in `Z^n`: the cofactor
/// vector spanning their orthogonal complement (zero if they are dependent).
pub fn cofactor_vector(vectors: &[Vec<BigInt>], n: usize) -> Result<Vec<BigInt>> {
    if vectors.len() + 1 != n || vectors.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!("need {} vectors of length {n}", n.saturating_sub(1))));
    }
    (0..n)
        .map(|c| {
            let minor_cols: Vec<usize> = (0..n).filter(|&j| j != c).collect();
            let entries = vectors.iter().flat_map(|v| minor_cols.iter().map(move |&j| v[j].clone())).collect();
            let minor = IntMatrix::new(n - 1, n - 1, entries)?;
            let d = det(&minor)?;
            Ok(if (c + n - 1).is_multiple_of(2) { d } else { -d })
        })
        .collect()
}

/// Row-style Hermite normal form of a full-row-rank integer matrix: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Row operations are unimodular, so the row lattice is
/// preserved.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows).map(|r| m.row(r).to_vec()).collect();
    let rows = m.rows;
    let mut pivot_row = 0;
    for col in 0..m.cols {
        if pivot_row == rows {
            break;
        }
        // Euclid between the pivot row and every lower row in this column.
        loop {
            let nonzero: Vec<usize> = (pivot_row..rows).filter(|&r| !a[r][col].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by(|&&x, &&y| a[x][col].abs().cmp(&a[y][col].abs())).unwrap();
            a.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let q = a[r][col].div_floor(&a[pivot_row][col]);
                let p = a[pivot_row].clone();
                for (v, pv) in a[r].iter_mut().zip(&p) {
                    *v -= &q * pv;
                }
                if !a[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[pivot_row][col].is_zero() {
            continue;
        }
        if a[pivot_row][col].is_negative() {
            for v in a[pivot_row].iter_mut() {
                *v = -v.clone();
            }
        }
        for r in 0..pivot_row {
            let q = a[r][col].div_floor(&a[pivot_row][col]);
            if q.is_zero() {
                continue;
            }
            let p = a[pivot_row].clone();
            for (v, pv) in a[r].iter_mut().zip(&p) {
                *v -= &q * pv;
            }
        }
        pivot_row += 1;
    }
    IntMatrix::new(m.rows, m.cols, a.into_iter().flatten().collect()).expect("shape preserved")
}
