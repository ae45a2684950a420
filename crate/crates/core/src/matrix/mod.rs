//! Dense exact matrices.

mod eigen;

pub use eigen::{eigen_decompose, eigen_with_spectrum, is_multiplicity_free, EigenData, SpectrumError};

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: {0} vs {1}")]
    Field(FieldSpec, FieldSpec),
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

/// Row-major matrix over a single field. Most operations expect a square
/// matrix; rectangular ones appear as coefficient matrices of linear systems.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Structural predicates, all evaluated at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub diagonal: bool,
    pub lower_bidiagonal: bool,
    pub upper_bidiagonal: bool,
    pub tridiagonal: bool,
    pub irreducible_tridiagonal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeLabel {
    Diagonal,
    LowerBidiagonal,
    UpperBidiagonal,
    IrreducibleTridiagonal,
    Tridiagonal,
    Other,
}

impl Shape {
    /// Most specific label that applies.
    pub fn label(&self) -> ShapeLabel {
        if self.diagonal {
            ShapeLabel::Diagonal
        } else if self.lower_bidiagonal {
            ShapeLabel::LowerBidiagonal
        } else if self.upper_bidiagonal {
            ShapeLabel::UpperBidiagonal
        } else if self.irreducible_tridiagonal {
            ShapeLabel::IrreducibleTridiagonal
        } else if self.tridiagonal {
            ShapeLabel::Tridiagonal
        } else {
            ShapeLabel::Other
        }
    }
}

impl fmt::Display for ShapeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeLabel::Diagonal => "diagonal",
            ShapeLabel::LowerBidiagonal => "lower-bidiagonal",
            ShapeLabel::UpperBidiagonal => "upper-bidiagonal",
            ShapeLabel::IrreducibleTridiagonal => "irreducible-tridiagonal",
            ShapeLabel::Tridiagonal => "tridiagonal",
            ShapeLabel::Other => "other",
        })
    }
}

/// Solution set of a linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Unique(Vec<FieldElement>),
    /// particular solution plus a basis of the kernel
    Underdetermined {
        particular: Vec<FieldElement>,
        kernel: Vec<Vec<FieldElement>>,
    },
    Inconsistent,
}

impl ExactMatrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            spec,
            rows,
            cols,
            data: vec![FieldElement::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(spec, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::one(spec));
        }
        m
    }

    pub fn diagonal(spec: FieldSpec, diag: &[FieldElement]) -> Self {
        let mut m = Self::zeros(spec, diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::Dimension("ragged rows".into()));
            }
            for x in row {
                if x.spec() != spec {
                    return Err(MatrixError::Field(spec, x.spec()));
                }
                data.push(x);
            }
        }
        Ok(ExactMatrix {
            spec,
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_i64_rows(spec: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| FieldElement::from_i64(spec, x)).collect())
            .collect();
        Self::from_rows(spec, rows).expect("rectangular integer rows")
    }

    pub fn from_columns(spec: FieldSpec, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(spec, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_fn(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix {
            spec,
            rows,
            cols,
            data,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        assert_eq!(x.spec(), self.spec, "entry field");
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    fn same_field(&self, other: &Self) -> Result<(), MatrixError> {
        if self.spec != other.spec {
            Err(MatrixError::Field(self.spec, other.spec))
        } else {
            Ok(())
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.spec, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Panicking product for internal use where shapes are known to agree.
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero(self.spec);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    fn zip(&self, other: &Self, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        assert_eq!(self.spec, other.spec, "field mismatch");
        ExactMatrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        ExactMatrix {
            spec: self.spec,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// self + c*I
    pub fn shift(&self, c: &FieldElement) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) + c;
            m.set(i, i, v);
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.spec, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(self.spec, rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// [self, other] side by side.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.spec, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// XY - YX
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Reduced row echelon form with the pivot columns, using the first
    /// nonzero entry of each column as pivot.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_rows(&mut rows, self.cols);
        let m = if rows.is_empty() {
            Self::zeros(self.spec, 0, self.cols)
        } else {
            Self::from_rows(self.spec, rows).unwrap()
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, each vector scaled so its first nonzero
    /// coordinate is 1.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::zero(self.spec); self.cols];
                v[fc] = FieldElement::one(self.spec);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, fc);
                }
                normalize_first_nonzero(v)
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(self.spec, n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(MatrixError::Singular);
        }
        Ok(Self::from_fn(self.spec, n, n, |i, j| r.get(i, n + j).clone()))
    }

    pub fn determinant(&self) -> Result<FieldElement, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = FieldElement::one(self.spec);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Ok(FieldElement::zero(self.spec));
            };
            if p != c {
                rows.swap(p, c);
                det = -det;
            }
            let piv = rows[c][c].clone();
            det = &det * &piv;
            let inv = piv.inv().unwrap();
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let f = &rows[r][c] * &inv;
                for k in c..n {
                    let t = &f * &rows[c][k];
                    rows[r][k] = &rows[r][k] - &t;
                }
            }
        }
        Ok(det)
    }

    /// Solve self * x = b exactly.
    pub fn solve_linear(&self, b: &[FieldElement]) -> LinearSolution {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let col = Self::from_columns(self.spec, self.rows, &[b.to_vec()]);
        let (r, pivots) = self.hstack(&col).rref();
        if pivots.last() == Some(&self.cols) {
            return LinearSolution::Inconsistent;
        }
        let mut particular = vec![FieldElement::zero(self.spec); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            particular[pc] = r.get(row, self.cols).clone();
        }
        if pivots.len() == self.cols {
            LinearSolution::Unique(particular)
        } else {
            LinearSolution::Underdetermined {
                particular,
                kernel: self.nullspace(),
            }
        }
    }

    /// det(x I - M), monic, by the division-free Samuelson-Berkowitz
    /// recursion (valid in every characteristic).
    pub fn char_poly(&self) -> Result<Polynomial, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let spec = self.spec;
        if n == 0 {
            return Ok(Polynomial::one(spec));
        }
        // coefficient vectors are highest degree first
        let mut v = vec![FieldElement::one(spec), -self.get(n - 1, n - 1)];
        for k in (0..n - 1).rev() {
            let idx: Vec<usize> = (k + 1..n).collect();
            let sub = self.submatrix(&idx, &idx);
            let row: Vec<FieldElement> = idx.iter().map(|&j| self.get(k, j).clone()).collect();
            let mut w: Vec<FieldElement> = idx.iter().map(|&i| self.get(i, k).clone()).collect();
            let m = idx.len();
            let mut t = vec![FieldElement::one(spec), -self.get(k, k)];
            for _ in 0..m {
                t.push(-dot(&row, &w));
                w = sub.mul_vec(&w);
            }
            let next: Vec<FieldElement> = (0..m + 2)
                .map(|i| {
                    let mut acc = FieldElement::zero(spec);
                    for (j, vj) in v.iter().enumerate().take(i + 1) {
                        acc = &acc + &(&t[i - j] * vj);
                    }
                    acc
                })
                .collect();
            v = next;
        }
        v.reverse();
        Ok(Polynomial::new(spec, v))
    }

    pub fn shape(&self) -> Shape {
        let n = self.rows;
        let nz = |i: usize, j: usize| !self.get(i, j).is_zero();
        let mut diagonal = self.is_square();
        let mut lower = self.is_square();
        let mut upper = self.is_square();
        let mut tri = self.is_square();
        if self.is_square() {
            for i in 0..n {
                for j in 0..n {
                    if !nz(i, j) || i == j {
                        continue;
                    }
                    diagonal = false;
                    if i != j + 1 {
                        lower = false;
                    }
                    if j != i + 1 {
                        upper = false;
                    }
                    if i.abs_diff(j) > 1 {
                        tri = false;
                    }
                }
            }
        }
        let irreducible = tri && (1..n).all(|i| nz(i, i - 1) && nz(i - 1, i));
        Shape {
            diagonal,
            lower_bidiagonal: lower,
            upper_bidiagonal: upper,
            tridiagonal: tri,
            irreducible_tridiagonal: irreducible,
        }
    }

    /// G^-1 M G
    pub fn conjugate(&self, g: &Self) -> Result<Self, MatrixError> {
        let gi = g.inverse()?;
        gi.try_mul(self)?.try_mul(g)
    }

    /// Entrywise string form.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactMatrix[{}; {:?}]", self.spec, self.to_string_rows())
    }
}

pub(crate) fn dot(a: &[FieldElement], b: &[FieldElement]) -> FieldElement {
    let spec = a.first().map_or(FieldSpec::Rationals, FieldElement::spec);
    a.iter().zip(b).fold(FieldElement::zero(spec), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            &acc + &(x * y)
        }
    })
}

pub(crate) fn normalize_first_nonzero(v: Vec<FieldElement>) -> Vec<FieldElement> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(lead) => {
            let inv = lead.inv().unwrap();
            v.iter().map(|x| x * &inv).collect()
        }
        None => v,
    }
}

/// In-place RREF on a vector of rows; returns the pivot columns.
pub(crate) fn rref_rows(rows: &mut Vec<Vec<FieldElement>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        let inv = rows[r][c].inv().unwrap();
        if !rows[r][c].is_one() {
            for k in c..cols {
                rows[r][k] = &rows[r][k] * &inv;
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..cols {
                if !pivot_row[k].is_zero() {
                    row[k] = &row[k] - &(&f * &pivot_row[k]);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
