//! Work, time, cost and efficiency of the two membership tests on a single
//! processor, on a PRAM with `n²` processors and on a QPRAM with a constant
//! number of processors, plus log-log growth fitting.
//!
//! Time is measured in rounds. One round lasts as long as the slowest
//! weighted primitive operation, so with unit weights a round is one
//! operation. Oracle queries are tallied apart from time: the oracle's
//! internal work is not charged.

use alloc::format;
use alloc::vec::Vec;

use crate::config::{OpWeights, SolverConfig};
use crate::error::{Error, Result};
use crate::linalg::{Projector, StateVector};
use crate::solvability::{kernel_membership, range_membership};

/// Default number of QPRAM processors.
pub const DEFAULT_QPRAM_PROCESSORS: u64 = 3;

/// Tolerance on the slope difference for equal growth.
pub const EQUAL_GROWTH_TOLERANCE: f64 = 0.15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostReport {
    pub n: usize,
    /// Primitive operations of the sequential computation.
    pub work: u64,
    pub processors: u64,
    pub time: u64,
    pub cost: u64,
    pub oracle_queries: u64,
}

impl CostReport {
    fn new(n: usize, work: u64, processors: u64, time: u64, oracle_queries: u64) -> Self {
        Self {
            n,
            work,
            processors,
            time,
            cost: processors * time,
            oracle_queries,
        }
    }

    /// `W / C`.
    pub fn efficiency(&self) -> f64 {
        self.work as f64 / self.cost as f64
    }

    /// The law of work: `T ≥ ⌈W/p⌉`, hence `C ≥ W` and `E ≤ 1`.
    pub fn obeys_law_of_work(&self) -> bool {
        self.time >= self.work.div_ceil(self.processors) && self.cost >= self.work
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    Ok(())
}

fn uniform_projector(n: usize) -> Result<Projector> {
    let ones: Vec<f64> = (0..n).map(|_| 1.0).collect();
    Ok(Projector::from_state(&StateVector::from_real(&ones)?))
}

/// Canonical `x` instance: the uniform state tested against its own atom.
pub fn work_x(n: usize, weights: OpWeights) -> Result<u64> {
    check_n(n)?;
    let ones: Vec<f64> = (0..n).map(|_| 1.0).collect();
    let psi = StateVector::from_real(&ones)?;
    let cfg = SolverConfig {
        weights,
        ..SolverConfig::default()
    };
    let v = range_membership(&Projector::from_state(&psi), &psi, &cfg)?;
    debug_assert!(v.holds);
    Ok(v.work.total())
}

/// Canonical `y` instance: the atom of the uniform state and a kernel state
/// `(e_1 - e_2)/√2`.
pub fn work_y(n: usize, weights: OpWeights) -> Result<u64> {
    check_n(n)?;
    let mut v: Vec<f64> = (0..n).map(|_| 0.0).collect();
    v[0] = 1.0;
    v[1] = -1.0;
    let psi = StateVector::from_real(&v)?;
    let cfg = SolverConfig {
        weights,
        ..SolverConfig::default()
    };
    let verdict = kernel_membership(&uniform_projector(n)?, &psi, &cfg)?;
    debug_assert!(verdict.holds);
    Ok(verdict.work.total())
}

/// Sequential range test: one processor, time equals work.
pub fn sequential_cost_x(n: usize, weights: OpWeights) -> Result<CostReport> {
    let w = work_x(n, weights)?;
    Ok(CostReport::new(n, w, 1, w, 0))
}

/// Kernel test on a PRAM with `n²` processors, each computing one cell per
/// round: `n - 1` oracle rounds for the eliminations plus one round for the
/// final pivot test.
pub fn pram_cost_y(n: usize, weights: OpWeights) -> Result<CostReport> {
    let w = work_y(n, weights)?;
    let rounds = n as u64;
    let p = (n * n) as u64;
    Ok(CostReport::new(n, w, p, rounds * weights.max(), (n - 1) as u64))
}

/// Kernel test on a QPRAM with `q` processors: `n - 1` oracle steps of
/// constant time each. Efficiency may exceed one.
pub fn qpram_cost_y(n: usize, q: u64, weights: OpWeights) -> Result<CostReport> {
    if q == 0 {
        return Err(Error::NoProcessors);
    }
    let w = work_y(n, weights)?;
    let steps = (n - 1) as u64;
    Ok(CostReport::new(n, w, q, steps * weights.max(), steps))
}

/// Points `(n, value)` with strictly increasing `n` and positive values.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingSeries {
    points: Vec<(usize, f64)>,
}

impl ScalingSeries {
    pub fn new(points: Vec<(usize, f64)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::DegenerateSeries(format!(
                "need at least 3 points, got {}",
                points.len()
            )));
        }
        if points.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::DegenerateSeries("sizes must be strictly increasing".into()));
        }
        if let Some(&(n, v)) = points.iter().find(|(_, v)| v.is_nan() || *v <= 0.0 || !v.is_finite()) {
            return Err(Error::DegenerateSeries(format!("non-positive value {v} at n = {n}")));
        }
        Ok(Self { points })
    }

    pub fn from_fn(ns: &[usize], mut f: impl FnMut(usize) -> Result<f64>) -> Result<Self> {
        let points = ns
            .iter()
            .map(|&n| f(n).map(|v| (n, v)))
            .collect::<Result<Vec<_>>>();
        Self::new(points?)
    }

    pub fn points(&self) -> &[(usize, f64)] {
        &self.points
    }
}

/// Least-squares slope of `ln(value)` against `ln(n)`.
pub fn growth_exponent(s: &ScalingSeries) -> f64 {
    let xs: Vec<f64> = s.points.iter().map(|(n, _)| libm::log(*n as f64)).collect();
    let ys: Vec<f64> = s.points.iter().map(|(_, v)| libm::log(*v)).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    /// Growth exponent of the sequential range-test cost.
    pub exponent_x: f64,
    /// Growth exponent of the PRAM kernel-test cost.
    pub exponent_pram_y: f64,
    /// Growth exponent of the QPRAM kernel-test cost.
    pub exponent_qpram_y: f64,
    /// Range-test cost and QPRAM kernel-test cost grow alike.
    pub equal_growth: bool,
    /// Range-test cost and PRAM kernel-test cost grow alike.
    pub pram_equal_growth: bool,
}

/// Fit the three cost exponents over `ns` and compare them.
pub fn relation_check(ns: &[usize], q: u64, weights: OpWeights) -> Result<RelationReport> {
    let cx = ScalingSeries::from_fn(ns, |n| Ok(sequential_cost_x(n, weights)?.cost as f64))?;
    let cp = ScalingSeries::from_fn(ns, |n| Ok(pram_cost_y(n, weights)?.cost as f64))?;
    let cq = ScalingSeries::from_fn(ns, |n| Ok(qpram_cost_y(n, q, weights)?.cost as f64))?;
    let (ex, ep, eq) = (growth_exponent(&cx), growth_exponent(&cp), growth_exponent(&cq));
    Ok(RelationReport {
        exponent_x: ex,
        exponent_pram_y: ep,
        exponent_qpram_y: eq,
        equal_growth: (ex - eq).abs() <= EQUAL_GROWTH_TOLERANCE,
        pram_equal_growth: (ex - ep).abs() <= EQUAL_GROWTH_TOLERANCE,
    })
}
