/// Numerical tolerances shared by every module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute bound on max-norm deviations (Hermiticity, idempotence,
    /// commutators, inclusion tests, the range-test comparisons).
    pub tol: f64,
    /// Relative bound for rank-revealing column selection.
    pub rank: f64,
    /// Norm below which a vector counts as zero.
    pub norm: f64,
    /// Relative bound on the final pivot of the kernel elimination.
    pub consistency: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            rank: 1e-9,
            norm: 1e-12,
            consistency: 1e-8,
        }
    }
}

impl Tolerances {
    /// Tolerances with every absolute/relative threshold derived from `tol`.
    pub fn with_tol(tol: f64) -> Self {
        Self {
            tol,
            rank: tol,
            ..Self::default()
        }
    }
}

/// Weight of one primitive operation of each kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OpWeights {
    pub mul: u64,
    pub div: u64,
    pub add: u64,
    pub cmp: u64,
}

impl Default for OpWeights {
    fn default() -> Self {
        Self::UNIT
    }
}

impl OpWeights {
    pub const UNIT: Self = Self {
        mul: 1,
        div: 1,
        add: 1,
        cmp: 1,
    };

    /// Real-flop weights of complex arithmetic.
    pub const REAL_FLOPS: Self = Self {
        mul: 6,
        div: 11,
        add: 2,
        cmp: 1,
    };

    pub fn new(mul: u64, div: u64, add: u64, cmp: u64) -> Self {
        Self { mul, div, add, cmp }
    }

    pub fn is_valid(&self) -> bool {
        self.mul > 0 && self.div > 0 && self.add > 0 && self.cmp > 0
    }

    /// Weight of the slowest primitive operation.
    pub fn max(&self) -> u64 {
        self.mul.max(self.div).max(self.add).max(self.cmp)
    }
}

/// Everything the membership tests need besides their inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub tolerances: Tolerances,
    /// Partial pivoting by row swaps. When off, elimination follows the
    /// literal algorithm and fails on a zero pivot.
    pub pivoting: bool,
    /// Stop the elimination as soon as the active block is zero.
    pub early_exit: bool,
    pub weights: OpWeights,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tolerances: Tolerances::default(),
            pivoting: true,
            early_exit: false,
            weights: OpWeights::UNIT,
        }
    }
}
