//! Dense complex linear algebra for small Hilbert spaces: states, projectors,
//! range/kernel bases and the subspace relations between projectors.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Build from row vectors; every row must have the same length.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from real entries given row by row.
    pub fn from_real(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), rows * cols, "entry count does not match shape");
        Self {
            rows,
            cols,
            data: values.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Complex64>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length does not match row count");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = *v;
            }
        }
        m
    }

    /// `a b†`.
    pub fn outer(a: &[Complex64], b: &[Complex64]) -> Self {
        let mut m = Self::zeros(a.len(), b.len());
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                m[(i, j)] = ai * bj.conj();
            }
        }
        m
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

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance to `other`.
    pub fn max_dist(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm2(v: &[Complex64]) -> f64 {
    libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum())
}

/// Greedy left-to-right selection of linearly independent vectors.
///
/// A candidate is kept when its residual against the span of the vectors
/// already kept exceeds `rel_tol` times the largest candidate norm. Returns
/// the kept indices together with an orthonormal basis of their span.
pub fn select_independent(
    candidates: &[Vec<Complex64>],
    rel_tol: f64,
) -> (Vec<usize>, Vec<Vec<Complex64>>) {
    select_independent_scaled(candidates, rel_tol, 0.0)
}

/// As [`select_independent`], with the reference norm bounded below by
/// `floor`. Columns of projectors and their complements have norm at most
/// one, so a floor of one keeps rounding noise out of their spans.
pub fn select_independent_scaled(
    candidates: &[Vec<Complex64>],
    rel_tol: f64,
    floor: f64,
) -> (Vec<usize>, Vec<Vec<Complex64>>) {
    let largest = candidates.iter().map(|c| norm2(c)).fold(floor, f64::max);
    let mut kept = Vec::new();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    if largest == 0.0 {
        return (kept, basis);
    }
    let threshold = rel_tol * largest;
    for (idx, c) in candidates.iter().enumerate() {
        let mut r = c.clone();
        // two Gram-Schmidt passes keep the basis orthonormal to working precision
        for _ in 0..2 {
            for q in &basis {
                let coeff = dot(q, &r);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= coeff * qi;
                }
            }
        }
        let rn = norm2(&r);
        if rn > threshold {
            let inv = 1.0 / rn;
            basis.push(r.into_iter().map(|z| z * inv).collect());
            kept.push(idx);
        }
    }
    (kept, basis)
}

/// Orthogonal projector onto the span of orthonormal `basis` vectors in `C^n`.
pub fn projector_onto(n: usize, basis: &[Vec<Complex64>]) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for q in basis {
        m = m.add(&CMatrix::outer(q, q));
    }
    m
}

/// Unit vector of complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Normalize `components` into a state; needs at least two components
    /// and a nonzero norm.
    pub fn new(components: &[Complex64]) -> Result<Self> {
        Self::with_tolerance(components, Tolerances::default().norm)
    }

    pub fn with_tolerance(components: &[Complex64], norm_tol: f64) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::DimensionTooSmall(components.len()));
        }
        if components.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let n = norm2(components);
        if n < norm_tol {
            return Err(Error::ZeroVector);
        }
        Ok(Self {
            amplitudes: components.iter().map(|z| z / n).collect(),
        })
    }

    pub fn from_real(components: &[f64]) -> Result<Self> {
        let c: Vec<Complex64> = components.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::new(&c)
    }

    /// The `i`-th standard basis vector of `C^n`.
    pub fn basis(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidArgument(alloc::format!(
                "basis index {i} out of range for dimension {n}"
            )));
        }
        let mut v = vec![ZERO; n];
        v[i] = ONE;
        Self::new(&v)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        norm2(&self.amplitudes)
    }
}

/// Hermitian idempotent matrix with its rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: CMatrix,
    rank: usize,
}

impl Projector {
    /// `ΨΨ†`, always rank 1.
    pub fn from_state(psi: &StateVector) -> Self {
        Self {
            matrix: CMatrix::outer(psi.amplitudes(), psi.amplitudes()),
            rank: 1,
        }
    }

    /// Validate an arbitrary square matrix as a projector.
    pub fn from_matrix(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = m.max_dist(&m.adjoint());
        if herm > tol.tol {
            return Err(Error::NotHermitian(herm));
        }
        let idem = m.max_dist(&m.matmul(&m));
        if idem > tol.tol {
            return Err(Error::NotIdempotent(idem));
        }
        let (kept, _) = select_independent_scaled(&m.columns(), tol.rank, 1.0);
        Ok(Self {
            matrix: m,
            rank: kept.len(),
        })
    }

    /// Projector onto the span of orthonormal vectors.
    pub(crate) fn from_orthonormal(n: usize, basis: &[Vec<Complex64>]) -> Self {
        Self {
            matrix: projector_onto(n, basis),
            rank: basis.len(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: CMatrix::zeros(n, n),
            rank: 0,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: CMatrix::identity(n),
            rank: n,
        }
    }

    /// Diagonal projector with ones where `mask` is set.
    pub fn diagonal(mask: &[bool]) -> Self {
        let diag: Vec<Complex64> = mask.iter().map(|&b| if b { ONE } else { ZERO }).collect();
        Self {
            matrix: CMatrix::from_diagonal(&diag),
            rank: mask.iter().filter(|&&b| b).count(),
        }
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self {
            matrix: CMatrix::identity(n).sub(&self.matrix),
            rank: n - self.rank,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nullity(&self) -> usize {
        self.dim() - self.rank
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    /// Equality of the projected subspaces within `10·tol` in max norm.
    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.dim() == other.dim() && self.matrix.max_dist(&other.matrix) <= 10.0 * tol.tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceKind {
    Range,
    Kernel,
}

/// Independent columns spanning the range or the kernel of a projector.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    pub kind: SubspaceKind,
    /// Original column indices the basis vectors were taken from.
    pub indices: Vec<usize>,
    pub columns: CMatrix,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.columns.rows()
    }

    pub fn len(&self) -> usize {
        self.columns.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn basis_from_columns(
    kind: SubspaceKind,
    n: usize,
    columns: &[Vec<Complex64>],
    tol: &Tolerances,
) -> SubspaceBasis {
    let (kept, _) = select_independent_scaled(columns, tol.rank, 1.0);
    let chosen: Vec<Vec<Complex64>> = kept.iter().map(|&j| columns[j].clone()).collect();
    SubspaceBasis {
        kind,
        indices: kept,
        columns: CMatrix::from_columns(n, &chosen),
    }
}

/// Columns `M_j` of the projector that span its range.
pub fn range_basis(p: &Projector, tol: &Tolerances) -> SubspaceBasis {
    basis_from_columns(SubspaceKind::Range, p.dim(), &p.matrix.columns(), tol)
}

/// Columns `I_j - M_j` that span the kernel.
pub fn kernel_basis(p: &Projector, tol: &Tolerances) -> SubspaceBasis {
    let comp = CMatrix::identity(p.dim()).sub(&p.matrix);
    basis_from_columns(SubspaceKind::Kernel, p.dim(), &comp.columns(), tol)
}

fn check_dims(q: &Projector, p: &Projector) -> Result<()> {
    if q.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: q.dim(),
            found: p.dim(),
        });
    }
    Ok(())
}

/// `QP = PQ` within tolerance.
pub fn commutes(q: &Projector, p: &Projector, tol: &Tolerances) -> Result<bool> {
    check_dims(q, p)?;
    let qp = q.matrix.matmul(&p.matrix);
    let pq = p.matrix.matmul(&q.matrix);
    Ok(qp.max_dist(&pq) <= tol.tol)
}

/// `QP = PQ = 0` within tolerance.
pub fn orthogonal(q: &Projector, p: &Projector, tol: &Tolerances) -> Result<bool> {
    check_dims(q, p)?;
    let qp = q.matrix.matmul(&p.matrix);
    let pq = p.matrix.matmul(&q.matrix);
    Ok(qp.max_abs() <= tol.tol && pq.max_abs() <= tol.tol)
}

/// `ran(Q) ⊆ ran(P)`, tested as `PQ = Q`.
pub fn subspace_leq(q: &Projector, p: &Projector, tol: &Tolerances) -> Result<bool> {
    check_dims(q, p)?;
    Ok(p.matrix.matmul(&q.matrix).max_dist(&q.matrix) <= tol.tol)
}
