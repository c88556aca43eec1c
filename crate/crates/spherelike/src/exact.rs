//! Exact linear algebra over the rationals.
//!
//! All ranks are exact; there are no pivot tolerances. Matrices are dense
//! and row-major, which is plenty for the desk-scale Hom computations that
//! sit on top of this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational scalar; always stored in lowest terms with positive
/// denominator (guaranteed by `BigRational`).
pub type Scalar = BigRational;

pub fn scalar_int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn scalar_ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Dense matrix of rational numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix {}x{} expects {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        Matrix::new(rows, cols, entries.iter().map(|&n| scalar_int(n)).collect()).unwrap()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "matrix has {} cols, vector has length {}",
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Scalar::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.at(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    out[r] += a * &v[c];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("matrix addition shape mismatch".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix::new(self.rows, self.cols, entries)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hcat row mismatch".into()));
        }
        let mut m = Matrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *m.at_mut(r, c) = self.at(r, c).clone();
            }
            for c in 0..other.cols {
                *m.at_mut(r, self.cols + c) = other.at(r, c).clone();
            }
        }
        Ok(m)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::ShapeMismatch("column length mismatch".into()));
            }
            for (i, e) in col.iter().enumerate() {
                *m.at_mut(i, j) = e.clone();
            }
        }
        Ok(m)
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.clone().echelonize().1.len()
    }

    /// Reduce to row echelon form in place; returns the reduced matrix and
    /// the list of pivot columns. Pivoting picks the entry with the smallest
    /// combined numerator/denominator size to keep coefficients tame.
    pub fn echelonize(mut self) -> (Matrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let mut best: Option<(usize, u64)> = None;
            for r in row..self.rows {
                let e = self.at(r, col);
                if !e.is_zero() {
                    let size = e.numer().abs().bits() + e.denom().bits();
                    if best.map_or(true, |(_, s)| size < s) {
                        best = Some((r, size));
                    }
                }
            }
            let Some((p, _)) = best else { continue };
            self.swap_rows(row, p);
            let inv = self.at(row, col).recip();
            for c in col..self.cols {
                let v = self.at(row, c) * &inv;
                *self.at_mut(row, c) = v;
            }
            for r in 0..self.rows {
                if r != row && !self.at(r, col).is_zero() {
                    let f = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = self.at(r, c) - &f * self.at(row, c);
                        *self.at_mut(r, c) = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (self, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Basis of the right null space of `m`; the returned vectors satisfy
/// `m·v = 0` and their count is `cols − rank`. Vectors are normalized to
/// primitive integer form with positive leading coefficient, which keeps
/// downstream differentials integral and canonical.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let (ech, pivots) = m.clone().echelonize();
    let mut basis = Vec::new();
    let pivot_set: Vec<bool> = {
        let mut v = vec![false; m.cols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    for free in 0..m.cols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = -ech.at(row, free).clone();
        }
        normalize_primitive(&mut v);
        basis.push(v);
    }
    basis
}

/// Scale a rational vector to primitive integer form with positive
/// leading coefficient.
pub fn normalize_primitive(v: &mut [Scalar]) {
    use num_integer::Integer;
    let mut den_lcm = BigInt::one();
    for e in v.iter() {
        den_lcm = den_lcm.lcm(e.denom());
    }
    let mut num_gcd = BigInt::zero();
    for e in v.iter() {
        num_gcd = num_gcd.gcd(&(e.numer() * &den_lcm / e.denom()));
    }
    if num_gcd.is_zero() {
        return;
    }
    let scale = BigRational::new(den_lcm, num_gcd);
    for e in v.iter_mut() {
        *e *= &scale;
    }
    if let Some(first) = v.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            for e in v.iter_mut() {
                *e = -e.clone();
            }
        }
    }
}

/// Solve `m·x = b`; `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows() {
        return Err(Error::ShapeMismatch(format!(
            "solve: matrix has {} rows, rhs has length {}",
            m.rows(),
            b.len()
        )));
    }
    let rhs = Matrix::from_columns(b.len(), &[b.to_vec()])?;
    let aug = m.hcat(&rhs)?;
    let (ech, pivots) = aug.echelonize();
    if pivots.contains(&m.cols()) {
        return Ok(None); // pivot in the augmented column
    }
    let mut x = vec![Scalar::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = ech.at(row, m.cols()).clone();
    }
    Ok(Some(x))
}

/// Span membership: does `v` lie in the column span of `m`?
pub fn in_column_span(m: &Matrix, v: &[Scalar]) -> Result<bool> {
    Ok(solve(m, v)?.is_some())
}

/// Structure constants of a two-dimensional unital algebra on the ordered
/// basis `(1, b)`: `table[i][j]` is the coordinate vector of the product of
/// basis element `i` with basis element `j`.
#[derive(Debug, Clone)]
pub struct MultTable2 {
    pub table: [[[Scalar; 2]; 2]; 2],
}

impl MultTable2 {
    /// Table for an algebra with `b² = alpha·1 + beta·b`.
    pub fn from_square(alpha: Scalar, beta: Scalar) -> Self {
        let z = Scalar::zero();
        let o = Scalar::one();
        MultTable2 {
            table: [
                [[o.clone(), z.clone()], [z.clone(), o.clone()]],
                [[z.clone(), o], [alpha, beta]],
            ],
        }
    }
}

/// Outcome of splitting a two-dimensional commutative algebra `k[b]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SplitOutcome {
    /// `(b − beta/2)² = 0`; the coordinates of the square-zero element
    /// `eps` on the basis `(1, b)`.
    Nilpotent { eps: [Scalar; 2] },
    /// Two orthogonal idempotents with `p1 + p2 = 1`, each in coordinates
    /// on `(1, b)`.
    Disconnected { p1: [Scalar; 2], p2: [Scalar; 2] },
    /// `x² − beta·x − alpha` has no rational root; the algebra is a field
    /// extension of degree 2 and does not split over the rationals.
    IrreducibleQuadratic { min_poly: String },
}

/// Classify a two-dimensional unital algebra with designated basis `(1, b)`.
///
/// Rejects tables where the first basis vector fails to act as a unit or
/// where the product `b·b` is not symmetric.
pub fn split_two_dimensional_algebra(mult: &MultTable2) -> Result<SplitOutcome> {
    let t = &mult.table;
    let unit_ok = t[0][0] == [Scalar::one(), Scalar::zero()]
        && t[0][1] == [Scalar::zero(), Scalar::one()]
        && t[1][0] == [Scalar::zero(), Scalar::one()];
    if !unit_ok {
        return Err(Error::BadAlgebraInput(
            "designated first basis vector does not act as a unit".into(),
        ));
    }
    let alpha = t[1][1][0].clone();
    let beta = t[1][1][1].clone();
    // discriminant of x² − beta·x − alpha
    let four = scalar_int(4);
    let disc = &beta * &beta + &four * &alpha;
    if disc.is_zero() {
        let half_beta = &beta / scalar_int(2);
        return Ok(SplitOutcome::Nilpotent {
            eps: [-half_beta, Scalar::one()],
        });
    }
    match rational_sqrt(&disc) {
        Some(root) => {
            let two = scalar_int(2);
            let r1 = (&beta + &root) / &two;
            let r2 = (&beta - &root) / &two;
            // p1 = (b − r2)/(r1 − r2), p2 = (b − r1)/(r2 − r1)
            let d = &r1 - &r2;
            let p1 = [-&r2 / &d, d.recip()];
            let p2 = [&r1 / &d, -d.recip()];
            Ok(SplitOutcome::Disconnected { p1, p2 })
        }
        None => Ok(SplitOutcome::IrreducibleQuadratic {
            min_poly: format!("x^2 - ({})*x - ({})", beta, alpha),
        }),
    }
}

/// Exact rational square root, if one exists.
fn rational_sqrt(x: &Scalar) -> Option<Scalar> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    if &(&sn * &sn) == n && &(&sd * &sd) == d {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}
