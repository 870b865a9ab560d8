//! Membership of a state in the range or the kernel of a rank-1 projector,
//! decided as consistency of `RX = Ψ` and `KX = Ψ` with every primitive
//! operation counted.
//!
//! The range system has a single unknown and is settled by `n - 1`
//! cross-multiplied comparisons. The kernel system has `n - 1` unknowns and
//! goes through a Gaussian-type elimination on the augmented matrix `[K|Ψ]`
//! in which every iteration subtracts the rank-1 product of the pivot column
//! and the pivot row, so that after `n - 1` iterations only the bottom-right
//! cell can be nonzero. The system is consistent iff that cell vanishes.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::{OpWeights, SolverConfig, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::{norm2, select_independent, CMatrix, Projector, StateVector};

/// Primitive-operation tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounter {
    pub mul: u64,
    pub div: u64,
    pub add: u64,
    pub cmp: u64,
    pub weights: OpWeights,
}

impl OpCounter {
    pub fn new(weights: OpWeights) -> Self {
        Self {
            weights,
            ..Self::default()
        }
    }

    /// Weighted sum of all tallies.
    pub fn total(&self) -> u64 {
        self.mul * self.weights.mul
            + self.div * self.weights.div
            + self.add * self.weights.add
            + self.cmp * self.weights.cmp
    }

    /// Sum of all tallies with unit weights.
    pub fn unweighted_total(&self) -> u64 {
        self.mul + self.div + self.add + self.cmp
    }
}

/// Which membership a verdict is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Statement {
    /// `Ψ ∈ ran(P)`, i.e. `RX = Ψ` is solvable.
    RangeMembership,
    /// `Ψ ∈ ker(P)`, i.e. `KX = Ψ` is solvable.
    KernelMembership,
}

impl Statement {
    pub fn tag(&self) -> &'static str {
        match self {
            Statement::RangeMembership => "x",
            Statement::KernelMembership => "y",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatementVerdict {
    pub holds: bool,
    pub statement: Statement,
    pub work: OpCounter,
    /// A solution of the system, when one was produced.
    pub witness: Option<Vec<Complex64>>,
}

fn check_rank_one(p: &Projector, psi: &StateVector) -> Result<()> {
    if psi.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: psi.dim(),
        });
    }
    if p.rank() != 1 {
        return Err(Error::RankUnsupported(p.rank()));
    }
    Ok(())
}

/// Index of the largest diagonal entry. Ties go to the first index when
/// `prefer_last` is false and to the last one otherwise.
fn dominant_diagonal(m: &CMatrix, prefer_last: bool) -> usize {
    let mut best = 0;
    for i in 1..m.rows() {
        let (cand, cur) = (m[(i, i)].norm(), m[(best, best)].norm());
        if cand > cur || (prefer_last && cand == cur) {
            best = i;
        }
    }
    best
}

/// Decide `Ψ ∈ ran(P)` for a rank-1 projector.
///
/// With pivot index `π` (the largest diagonal entry of `M`), the single
/// unknown system is consistent iff `ψ_π M_{jπ} = ψ_j M_{ππ}` for every
/// `j ≠ π`. All `n - 1` comparisons are always performed, so the work is
/// exactly `2(n-1)` multiplications and `n - 1` comparisons.
pub fn range_membership(
    p: &Projector,
    psi: &StateVector,
    cfg: &SolverConfig,
) -> Result<StatementVerdict> {
    check_rank_one(p, psi)?;
    let m = p.matrix();
    let a = psi.amplitudes();
    let pivot = dominant_diagonal(m, false);
    let mut ops = OpCounter::new(cfg.weights);
    let mut holds = true;
    for j in (0..p.dim()).filter(|&j| j != pivot) {
        let lhs = a[pivot] * m[(j, pivot)];
        let rhs = a[j] * m[(pivot, pivot)];
        ops.mul += 2;
        ops.cmp += 1;
        if (lhs - rhs).norm() > cfg.tolerances.tol {
            holds = false;
        }
    }
    let witness = holds.then(|| vec![a[pivot] / m[(pivot, pivot)]]);
    Ok(StatementVerdict {
        holds,
        statement: Statement::RangeMembership,
        work: ops,
        witness,
    })
}

/// The augmented matrix `[K|Ψ]` of the kernel system during elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentedTableau {
    cells: CMatrix,
    iteration: usize,
    ops: OpCounter,
    scale: f64,
    unknowns: Vec<usize>,
}

impl AugmentedTableau {
    /// Tableau of `KX = Ψ` for a rank-1 projector.
    ///
    /// `K` holds `n - 1` of the columns `I_j - M_j`. With pivoting the
    /// dropped column is the one with the largest diagonal entry of `M`
    /// (last on ties), which keeps `K` of full column rank. Without pivoting
    /// the last column is dropped, as in the textbook layout.
    pub fn for_kernel_system(p: &Projector, psi: &StateVector, cfg: &SolverConfig) -> Result<Self> {
        check_rank_one(p, psi)?;
        let n = p.dim();
        let dropped = if cfg.pivoting {
            dominant_diagonal(p.matrix(), true)
        } else {
            n - 1
        };
        let unknowns: Vec<usize> = (0..n).filter(|&l| l != dropped).collect();
        let m = p.matrix();
        let mut cells = CMatrix::zeros(n, n);
        for j in 0..n {
            for (col, &l) in unknowns.iter().enumerate() {
                let delta = if j == l { 1.0 } else { 0.0 };
                cells[(j, col)] = Complex64::new(delta, 0.0) - m[(j, l)];
            }
            cells[(j, n - 1)] = psi.amplitudes()[j];
        }
        Ok(Self::from_cells(cells, unknowns, cfg.weights))
    }

    /// Wrap an arbitrary square augmented matrix at iteration 0.
    pub fn from_cells(cells: CMatrix, unknowns: Vec<usize>, weights: OpWeights) -> Self {
        assert!(cells.is_square(), "augmented matrix must be square");
        let scale = cells.max_abs();
        Self {
            cells,
            iteration: 0,
            ops: OpCounter::new(weights),
            scale,
            unknowns,
        }
    }

    pub fn dim(&self) -> usize {
        self.cells.rows()
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn is_complete(&self) -> bool {
        self.iteration + 1 >= self.dim()
    }

    pub fn cells(&self) -> &CMatrix {
        &self.cells
    }

    pub fn ops(&self) -> &OpCounter {
        &self.ops
    }

    /// Largest initial cell modulus.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Column indices of `I - M` used as unknowns.
    pub fn unknowns(&self) -> &[usize] {
        &self.unknowns
    }

    /// Bottom-right cell `a_{n,n}`.
    pub fn final_pivot(&self) -> Complex64 {
        let n = self.dim();
        self.cells[(n - 1, n - 1)]
    }

    /// Whether the bottom-right cell vanishes relative to the initial scale.
    pub fn final_pivot_vanishes(&self, tol: &Tolerances) -> bool {
        self.final_pivot().norm() <= tol.consistency * self.scale
    }

    fn active_block_is_zero(&mut self, tol: f64) -> bool {
        let n = self.dim();
        let i = self.iteration;
        for j in i..n {
            for l in i..n {
                self.ops.cmp += 1;
                if self.cells[(j, l)].norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// One iteration of the elimination.
///
/// Subtracts `(A_i / a_ii) · B_i`, where `A_i` is the pivot column and `B_i`
/// the pivot row; both are taken directly instead of through selector-matrix
/// products. Row `i` and column `i` end up zero. Counted work per iteration
/// on the `(n-i)×(n-i)` block below and right of the pivot: one division per
/// row, one multiplication and one addition per cell, plus the pivot search
/// comparisons. Row swaps are free.
pub fn eliminate_step(mut t: AugmentedTableau, cfg: &SolverConfig) -> Result<AugmentedTableau> {
    let n = t.dim();
    let i = t.iteration;
    if i + 1 >= n {
        return Err(Error::EliminationComplete(i));
    }
    let tol = cfg.tolerances.tol;
    if cfg.pivoting {
        let mut best = i;
        for r in i + 1..n {
            t.ops.cmp += 1;
            if t.cells[(r, i)].norm() > t.cells[(best, i)].norm() {
                best = r;
            }
        }
        if t.cells[(best, i)].norm() <= tol {
            return Err(Error::ZeroPivot(i + 1));
        }
        t.cells.swap_rows(i, best);
    } else {
        t.ops.cmp += 1;
        if t.cells[(i, i)].norm() <= tol {
            return Err(Error::ZeroPivot(i + 1));
        }
    }

    let pivot = t.cells[(i, i)];
    for j in i + 1..n {
        let factor = t.cells[(j, i)] / pivot;
        t.ops.div += 1;
        for l in i + 1..n {
            let delta = factor * t.cells[(i, l)];
            t.cells[(j, l)] -= delta;
        }
        let width = (n - i - 1) as u64;
        t.ops.mul += width;
        t.ops.add += width;
        t.cells[(j, i)] = Complex64::new(0.0, 0.0);
    }
    for l in i..n {
        t.cells[(i, l)] = Complex64::new(0.0, 0.0);
    }
    t.iteration += 1;
    Ok(t)
}

/// Decide `Ψ ∈ ker(P)` for a rank-1 projector by full elimination of
/// `[K|Ψ]` followed by the test `a_{n,n} = 0`.
pub fn kernel_membership(
    p: &Projector,
    psi: &StateVector,
    cfg: &SolverConfig,
) -> Result<StatementVerdict> {
    let mut t = AugmentedTableau::for_kernel_system(p, psi, cfg)?;
    while !t.is_complete() {
        t = eliminate_step(t, cfg)?;
        if cfg.early_exit && !t.is_complete() && t.active_block_is_zero(cfg.tolerances.tol) {
            return Ok(StatementVerdict {
                holds: true,
                statement: Statement::KernelMembership,
                work: t.ops,
                witness: None,
            });
        }
    }
    t.ops.cmp += 1;
    let holds = t.final_pivot_vanishes(&cfg.tolerances);
    Ok(StatementVerdict {
        holds,
        statement: Statement::KernelMembership,
        work: t.ops,
        witness: None,
    })
}

/// Outcome of the least-squares consistency oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyCheck {
    pub holds: bool,
    /// `min_X ‖AX - b‖₂`.
    pub residual: f64,
    /// Least-squares solution with zeros on dependent columns.
    pub solution: Vec<Complex64>,
}

/// Relative residual bound of [`solve_consistency`].
pub const LSQ_RELATIVE_RESIDUAL: f64 = 1e-8;

/// Least-squares consistency of `AX = b` through an orthonormalized column
/// space. Independent of the elimination path and of the operation counter.
pub fn solve_consistency(a: &CMatrix, b: &[Complex64], tol: &Tolerances) -> Result<ConsistencyCheck> {
    let (n, m) = (a.rows(), a.cols());
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    if m > n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m,
        });
    }
    let columns = a.columns();
    let (kept, q) = select_independent(&columns, tol.rank);

    // coefficients of b on the orthonormal basis
    let qb: Vec<Complex64> = q.iter().map(|qi| crate::linalg::dot(qi, b)).collect();
    let mut residual_vec = b.to_vec();
    for (qi, c) in q.iter().zip(&qb) {
        for (r, x) in residual_vec.iter_mut().zip(qi) {
            *r -= c * x;
        }
    }
    let residual = norm2(&residual_vec);

    // R = Q† A_kept is upper triangular; back-substitute R x = Q† b.
    let k = kept.len();
    let mut x = vec![Complex64::new(0.0, 0.0); k];
    for row in (0..k).rev() {
        let mut acc = qb[row];
        for col in row + 1..k {
            acc -= crate::linalg::dot(&q[row], &columns[kept[col]]) * x[col];
        }
        x[row] = acc / crate::linalg::dot(&q[row], &columns[kept[row]]);
    }
    let mut solution = vec![Complex64::new(0.0, 0.0); m];
    for (idx, &col) in kept.iter().enumerate() {
        solution[col] = x[idx];
    }
    Ok(ConsistencyCheck {
        holds: residual <= LSQ_RELATIVE_RESIDUAL * norm2(b),
        residual,
        solution,
    })
}
