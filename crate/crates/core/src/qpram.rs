//! Classical simulation of a quantum parallel random-access machine that
//! checks consistency of `KX = Ψ`.
//!
//! Each of the `q` processors holds an equal superposition over the `n²`
//! outcome states `|a_k⟩`, one per cell of the augmented matrix
//! (`k = n·j + l`, zero-based). A state-generated oracle advances the
//! elimination by one iteration per query. Outcomes are tracked as labels:
//! only whether a cell vanishes matters for anything observable. After the
//! last query each processor is coupled to a two-level counter; measuring
//! the processor gives the zero outcome with probability 1 when the final
//! pivot vanishes and 1/2 otherwise.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::SolverConfig;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Projector, StateVector};
use crate::rng;
use crate::solvability::{eliminate_step, AugmentedTableau};

/// Bound on `|‖ψ‖² - 1|` for simulated states.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Interaction time used when none is given (`ħ = 1`).
pub const DEFAULT_TAU: f64 = core::f64::consts::PI;

/// Whether a cell of the augmented matrix vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Zero,
    Nonzero,
}

/// One quantum processor: a superposition over the outcome basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessorState {
    n: usize,
    amplitudes: Vec<Complex64>,
    labels: Vec<Outcome>,
    iteration: usize,
}

impl ProcessorState {
    fn equal_superposition(t: &AugmentedTableau, cfg: &SolverConfig) -> Self {
        let n = t.dim();
        let amp = Complex64::new(1.0 / n as f64, 0.0);
        let threshold = cfg.tolerances.consistency * t.scale();
        let labels = t
            .cells()
            .as_slice()
            .iter()
            .map(|a| if a.norm() <= threshold { Outcome::Zero } else { Outcome::Nonzero })
            .collect();
        Self {
            n,
            amplitudes: vec![amp; n * n],
            labels,
            iteration: t.iteration(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn labels(&self) -> &[Outcome] {
        &self.labels
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Unnormalized weights on `|0⟩` and on the nonzero outcomes after
    /// merging basis states with the same label.
    pub fn merged_weights(&self) -> (Complex64, Complex64) {
        let mut zero = Complex64::new(0.0, 0.0);
        let mut other = Complex64::new(0.0, 0.0);
        for (a, l) in self.amplitudes.iter().zip(&self.labels) {
            match l {
                Outcome::Zero => zero += a,
                Outcome::Nonzero => other += a,
            }
        }
        (zero, other)
    }
}

/// Two-level counter coupled to a processor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CounterState {
    pub c1: Complex64,
    pub c2: Complex64,
}

impl CounterState {
    /// `(|c₁⟩ + (n²-1)|c₂⟩)` normalized.
    pub fn initial(n: usize) -> Self {
        let w = (n * n - 1) as f64;
        let norm = libm::sqrt(1.0 + w * w);
        Self {
            c1: Complex64::new(1.0 / norm, 0.0),
            c2: Complex64::new(w / norm, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c1.norm_sqr() + self.c2.norm_sqr()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProcessorTag {
    Zero,
    /// The final pivot outcome `|a_{n,n}⟩`.
    Ann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CounterTag {
    C1,
    C2,
}

/// Processor-counter state after the coupling gate.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedState {
    pub terms: Vec<(ProcessorTag, CounterTag, Complex64)>,
}

impl CorrelatedState {
    pub fn norm_sqr(&self) -> f64 {
        self.terms.iter().map(|t| t.2.norm_sqr()).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub shots: u64,
    pub zeros: u64,
    pub seed: u64,
}

impl MeasurementRecord {
    pub fn frequency(&self) -> f64 {
        self.zeros as f64 / self.shots as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpramMachine {
    n: usize,
    processors: Vec<ProcessorState>,
    counters: Vec<CounterState>,
    tableau: AugmentedTableau,
    oracle_queries: usize,
    tau: f64,
    cfg: SolverConfig,
    records: Vec<MeasurementRecord>,
}

/// Set up `q` processors on the kernel system of `p` and `psi`.
pub fn init_machine(p: &Projector, psi: &StateVector, q: usize, cfg: &SolverConfig) -> Result<QpramMachine> {
    if q == 0 {
        return Err(Error::NoProcessors);
    }
    let tableau = AugmentedTableau::for_kernel_system(p, psi, cfg)?;
    let n = tableau.dim();
    let proc = ProcessorState::equal_superposition(&tableau, cfg);
    Ok(QpramMachine {
        n,
        processors: vec![proc; q],
        counters: vec![CounterState::initial(n); q],
        tableau,
        oracle_queries: 0,
        tau: DEFAULT_TAU,
        cfg: *cfg,
        records: Vec::new(),
    })
}

impl QpramMachine {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.processors.len()
    }

    pub fn processors(&self) -> &[ProcessorState] {
        &self.processors
    }

    pub fn counters(&self) -> &[CounterState] {
        &self.counters
    }

    pub fn tableau(&self) -> &AugmentedTableau {
        &self.tableau
    }

    pub fn oracle_queries(&self) -> usize {
        self.oracle_queries
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn with_tau(mut self, tau: f64) -> Self {
        self.tau = tau;
        self
    }

    pub fn records(&self) -> &[MeasurementRecord] {
        &self.records
    }

    pub fn is_finalized(&self) -> bool {
        self.oracle_queries + 1 >= self.n
    }

    /// Whether the final pivot vanishes. Only meaningful once finalized.
    pub fn consistent(&self) -> bool {
        self.tableau.final_pivot_vanishes(&self.cfg.tolerances)
    }

    /// Sample every processor's correlated state and keep the records.
    /// Processor `m` uses seed `derive_seed(seed, m)`.
    pub fn measure_all(&mut self, shots: u64, seed: u64) -> Result<&[MeasurementRecord]> {
        let mut records = Vec::with_capacity(self.q());
        for m in 0..self.q() {
            records.push(sample(&correlate(self, m)?, shots, derive_seed(seed, m as u64))?);
        }
        self.records = records;
        Ok(&self.records)
    }
}

/// One query of the state-generated oracle: one elimination iteration, after
/// which every processor is again in equal superposition over the refreshed
/// outcome labels. No work is charged beyond the query.
pub fn oracle_step(mut m: QpramMachine) -> Result<QpramMachine> {
    if m.is_finalized() {
        return Err(Error::MachineComplete(m.oracle_queries));
    }
    m.tableau = eliminate_step(m.tableau, &m.cfg)?;
    let refreshed = ProcessorState::equal_superposition(&m.tableau, &m.cfg);
    for p in &mut m.processors {
        *p = refreshed.clone();
    }
    m.oracle_queries += 1;
    Ok(m)
}

/// Run the oracle until the elimination is finished.
pub fn run_oracle(mut m: QpramMachine) -> Result<QpramMachine> {
    while !m.is_finalized() {
        m = oracle_step(m)?;
    }
    Ok(m)
}

/// Post-coupling state of processor `index` with its counter: `|0⟩|c₁⟩`
/// when the final pivot vanishes, otherwise `(|0⟩|c₁⟩ + |a⟩|c₂⟩)/√2`.
pub fn correlate(m: &QpramMachine, index: usize) -> Result<CorrelatedState> {
    if !m.is_finalized() {
        return Err(Error::NotFinalized {
            done: m.oracle_queries,
            needed: m.n - 1,
        });
    }
    if index >= m.q() {
        return Err(Error::ProcessorIndex {
            index,
            count: m.q(),
        });
    }
    let one = Complex64::new(1.0, 0.0);
    let terms = if m.consistent() {
        vec![(ProcessorTag::Zero, CounterTag::C1, one)]
    } else {
        let h = Complex64::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        vec![
            (ProcessorTag::Zero, CounterTag::C1, h),
            (ProcessorTag::Ann, CounterTag::C2, h),
        ]
    };
    Ok(CorrelatedState { terms })
}

/// Processor-counter Hamiltonian in the basis `(Z,C1), (Z,C2), (A,C1), (A,C2)`.
/// The `|a⟩⟨a| ⊗ |c₂⟩⟨c₂|` term is absent in the consistent case.
pub fn hamiltonian(consistent: bool) -> CMatrix {
    let mut diag = [0.0, 0.0, 0.0, 0.0];
    diag[0] = 1.0;
    if !consistent {
        diag[3] = 1.0;
    }
    CMatrix::from_real(4, 4, &{
        let mut m = [0.0; 16];
        for (i, d) in diag.iter().enumerate() {
            m[i * 4 + i] = *d;
        }
        m
    })
}

/// `exp(-iτH)` for a projector `H`: `I + (e^{-iτ} - 1) H`.
pub fn u_c_gate(h: &CMatrix, tau: f64) -> CMatrix {
    let phase = Complex64::from_polar(1.0, -tau) - Complex64::new(1.0, 0.0);
    CMatrix::identity(h.rows()).add(&h.scale(phase))
}

/// Probability of the zero processor outcome.
pub fn measure_zero_prob(c: &CorrelatedState) -> Result<f64> {
    let total = c.norm_sqr();
    if (total - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::Unnormalized(total));
    }
    let zero: f64 = c
        .terms
        .iter()
        .filter(|t| t.0 == ProcessorTag::Zero)
        .map(|t| t.2.norm_sqr())
        .sum();
    // dividing out the rounding in the norm keeps the two cases exact
    Ok(zero / total)
}

/// Bernoulli sampling of the zero outcome.
pub fn sample(c: &CorrelatedState, shots: u64, seed: u64) -> Result<MeasurementRecord> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    let p = measure_zero_prob(c)?;
    let mut r = rng::seeded(seed);
    let zeros = (0..shots).filter(|_| rng::uniform(&mut r) < p).count() as u64;
    Ok(MeasurementRecord { shots, zeros, seed })
}

/// Seed of stream `index` derived from a base seed (SplitMix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(index.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisReport {
    pub q: usize,
    /// Processors whose single shot gave the zero outcome.
    pub zeros: usize,
    pub reject_h0: bool,
    /// Exact `0.5^q`.
    pub type_i_error: f64,
    /// Exact power under `Pr(0) = 1`.
    pub power: f64,
}

/// Null `Pr(0) = 1/2` against `Pr(0) = 1`: reject iff every processor's
/// single shot is zero.
pub fn hypothesis_test(records: &[MeasurementRecord]) -> Result<HypothesisReport> {
    if records.is_empty() {
        return Err(Error::NoProcessors);
    }
    if let Some(r) = records.iter().find(|r| r.shots != 1) {
        return Err(Error::InvalidArgument(alloc::format!(
            "hypothesis test takes single-shot records, got {} shots",
            r.shots
        )));
    }
    let q = records.len();
    let zeros = records.iter().filter(|r| r.zeros == 1).count();
    Ok(HypothesisReport {
        q,
        zeros,
        reject_h0: zeros == q,
        type_i_error: libm::pow(0.5, q as f64),
        power: 1.0,
    })
}

/// Largest processor count [`power_analysis`] searches.
pub const MAX_PROCESSORS: u64 = 1_000_000;

/// Smallest `q` for which the all-zeros rule has size at most `alpha` under
/// `Pr(0) = p0` and power at least `power` under `Pr(0) = p1`.
pub fn power_analysis(alpha: f64, power: f64, p0: f64, p1: f64) -> Result<u64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(alloc::format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if !(power > 0.0 && power <= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!("power must lie in (0, 1], got {power}")));
    }
    if !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&p1) || p0 >= p1 {
        return Err(Error::InvalidArgument(alloc::format!(
            "need 0 ≤ p0 < p1 ≤ 1, got p0 = {p0}, p1 = {p1}"
        )));
    }
    // size p0^q falls and power p1^q falls with q; the first q meeting the
    // size bound is the only candidate
    let mut size = 1.0;
    let mut pw = 1.0;
    for q in 1..=MAX_PROCESSORS {
        size *= p0;
        pw *= p1;
        if size <= alpha {
            return if pw >= power { Ok(q) } else { Err(Error::Infeasible(MAX_PROCESSORS)) };
        }
    }
    Err(Error::Infeasible(MAX_PROCESSORS))
}
