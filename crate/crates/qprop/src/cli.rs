//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qprop_core::costmodel::{
    growth_exponent, pram_cost_y, qpram_cost_y, relation_check, sequential_cost_x, ScalingSeries,
};
use qprop_core::linalg::commutes;
use qprop_core::probability::{dispersion_scan, VerdictKind};
use qprop_core::qpram::{self, DEFAULT_TAU};
use qprop_core::valuation::{comparability_with, valuate_with, distributivity_witness, LatticeElement, PropositionPair};
use qprop_core::{OpWeights, Projector, Semantics, SolverConfig, StateVector, Tolerances};
use serde::Serialize;

use crate::error::CliError;
use crate::report::{
    BenchExponents, BenchJson, BenchRow, ComparabilityJson, DispersionJson, LatticeJson, QpramJson,
    ValuationJson,
};
use crate::schema;

#[derive(Debug, Parser)]
#[command(name = "qprop", version, about = "Truth values of quantum propositions as linear-system solvability")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Absolute tolerance on max-norm deviations.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    pub shots: u64,
    /// Output format; bench defaults to csv, every other command to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Eliminate without row swaps and fail on a zero pivot.
    #[arg(long, global = true)]
    pub no_pivot: bool,
    /// Stop the elimination once the active block is zero.
    #[arg(long, global = true)]
    pub early_exit: bool,
    /// Weights of mul,div,add,cmp.
    #[arg(long, global = true, default_value = "1,1,1,1", value_parser = parse_weights)]
    pub weights: OpWeights,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Bvn,
    Partial,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Bvn => Semantics::Bvn,
            SemanticsArg::Partial => Semantics::Partial,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truth value of a rank-1 proposition in a state.
    Valuate {
        #[arg(long)]
        projector: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum, default_value = "partial")]
        semantics: SemanticsArg,
    },
    /// Comparability of two propositions.
    Compare {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        p: PathBuf,
        #[arg(long, value_enum, default_value = "partial")]
        semantics: SemanticsArg,
    },
    /// Distributivity of meet over join on a qubit.
    LatticeDemo {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Angle of q from the first basis vector, in degrees.
        #[arg(long, default_value_t = 45.0)]
        q_angle: f64,
    },
    /// Probability verdict kinds over random preparations.
    ProbScan {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value = "bvn")]
        semantics: SemanticsArg,
    },
    /// Work and cost table over geometrically spaced dimensions.
    Bench {
        #[arg(long, default_value_t = 8)]
        min: usize,
        #[arg(long, default_value_t = 128)]
        max: usize,
        #[arg(long, default_value_t = 2)]
        factor: usize,
        /// QPRAM processors.
        #[arg(long, default_value_t = 3)]
        q: u64,
    },
    /// Simulate the QPRAM kernel test and its hypothesis test.
    Qpram {
        #[arg(long)]
        projector: PathBuf,
        #[arg(long)]
        state: PathBuf,
        #[arg(long, default_value_t = 3)]
        q: usize,
        /// Interaction time of the coupling gate.
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
    },
}

fn parse_weights(s: &str) -> Result<OpWeights, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(format!("expected four comma-separated weights, got {}", parts.len()));
    }
    let mut w = [0u64; 4];
    for (slot, part) in w.iter_mut().zip(&parts) {
        *slot = part.parse().map_err(|_| format!("invalid weight {part:?}"))?;
    }
    let weights = OpWeights::new(w[0], w[1], w[2], w[3]);
    if !weights.is_valid() {
        return Err("weights must be positive".into());
    }
    Ok(weights)
}

impl GlobalArgs {
    fn config(&self) -> Result<SolverConfig, CliError> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(CliError::Validation(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.shots == 0 {
            return Err(CliError::Validation("shots must be at least 1".into()));
        }
        Ok(SolverConfig {
            tolerances: Tolerances::with_tol(self.tolerance),
            pivoting: !self.no_pivot,
            early_exit: self.early_exit,
            weights: self.weights,
        })
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(value)?;
    out.push('\n');
    Ok(out)
}

fn csv_records<T: Serialize>(records: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Serialize)]
struct ValuationRow {
    value: &'static str,
    semantics: &'static str,
    x: bool,
    y: bool,
    ops_x: u64,
    ops_y: u64,
}

#[derive(Serialize)]
struct LatticeRow {
    dim: usize,
    q_angle: f64,
    lhs_rank: usize,
    rhs_rank: usize,
    distributive: bool,
}

#[derive(Serialize)]
struct KindRow {
    kind: &'static str,
    count: usize,
}

/// Run a parsed command and return what goes to standard output.
pub fn execute(cli: &Cli) -> Result<String, CliError> {
    let cfg = cli.global.config()?;
    let tol = cfg.tolerances;
    let format = cli.global.format;
    let as_csv = format == Some(Format::Csv);
    match &cli.command {
        Command::Valuate {
            projector,
            state,
            semantics,
        } => {
            let p = schema::read_projector(projector, &tol)?;
            let psi = schema::read_state(state, &tol)?;
            let out = valuate(&p, &psi, (*semantics).into(), &cfg)?;
            if as_csv {
                let row = ValuationRow {
                    value: out.value,
                    semantics: out.semantics,
                    x: out.x,
                    y: out.y,
                    ops_x: out.statements[0].ops.total,
                    ops_y: out.statements[1].ops.total,
                };
                csv_records(&[row])
            } else {
                json(&out)
            }
        }
        Command::Compare { q, p, semantics } => {
            let q = schema::read_projector(q, &tol)?;
            let p = schema::read_projector(p, &tol)?;
            let pair = PropositionPair::new(q, p)?;
            let v = comparability_with((*semantics).into(), &pair, &tol)?;
            let out = ComparabilityJson::new(&v, commutes(pair.q(), pair.p(), &tol)?);
            if as_csv {
                csv_records(&[out])
            } else {
                json(&out)
            }
        }
        Command::LatticeDemo { dim, q_angle } => {
            let out = lattice_demo(*dim, *q_angle, &tol)?;
            if as_csv {
                let row = LatticeRow {
                    dim: out.dim,
                    q_angle: out.q_angle,
                    lhs_rank: out.lhs_rank,
                    rhs_rank: out.rhs_rank,
                    distributive: out.distributive,
                };
                csv_records(&[row])
            } else {
                json(&out)
            }
        }
        Command::ProbScan { n, samples, semantics } => {
            if *samples == 0 {
                return Err(CliError::Validation("samples must be at least 1".into()));
            }
            let r = dispersion_scan(*n, *samples, cli.global.seed, (*semantics).into(), &cfg)?;
            if as_csv {
                let rows: Vec<KindRow> = [VerdictKind::Point, VerdictKind::OpenInterval, VerdictKind::ClosedInterval]
                    .into_iter()
                    .map(|k| KindRow {
                        kind: k.tag(),
                        count: r.counts.get(&k).copied().unwrap_or(0),
                    })
                    .collect();
                csv_records(&rows)
            } else {
                json(&DispersionJson::from(&r))
            }
        }
        Command::Bench { min, max, factor, q } => {
            let out = bench(*min, *max, *factor, *q, cfg.weights)?;
            if format == Some(Format::Json) {
                json(&out)
            } else {
                bench_csv(&out)
            }
        }
        Command::Qpram {
            projector,
            state,
            q,
            tau,
        } => {
            let p = schema::read_projector(projector, &tol)?;
            let psi = schema::read_state(state, &tol)?;
            let out = run_qpram(&p, &psi, *q, *tau, cli.global.shots, cli.global.seed, &cfg)?;
            if as_csv {
                csv_records(&[out])
            } else {
                json(&out)
            }
        }
    }
}

pub fn valuate(
    p: &Projector,
    psi: &StateVector,
    semantics: Semantics,
    cfg: &SolverConfig,
) -> Result<ValuationJson, CliError> {
    Ok(ValuationJson::from(&valuate_with(semantics, p, psi, cfg)?))
}

/// `q` at `q_angle` degrees against the two basis atoms.
pub fn lattice_demo(dim: usize, q_angle: f64, tol: &Tolerances) -> Result<LatticeJson, CliError> {
    if dim != 2 {
        return Err(CliError::UnsupportedDim(dim));
    }
    if !q_angle.is_finite() {
        return Err(CliError::Validation(format!("angle must be finite, got {q_angle}")));
    }
    let theta = q_angle.to_radians();
    let q = Projector::from_state(&StateVector::from_real(&[theta.cos(), theta.sin()])?);
    let p1 = Projector::diagonal(&[true, false]);
    let p2 = Projector::diagonal(&[false, true]);
    let r = distributivity_witness(
        &LatticeElement::new(q.clone()),
        &LatticeElement::new(p1),
        &LatticeElement::new(p2),
        tol,
    )?;
    Ok(LatticeJson::new(q_angle, &q, &r))
}

/// Sizes `min, min·factor, …` up to `max`.
pub fn bench_sizes(min: usize, max: usize, factor: usize) -> Result<Vec<usize>, CliError> {
    if min < 2 {
        return Err(CliError::Validation(format!("min must be at least 2, got {min}")));
    }
    if max <= min {
        return Err(CliError::Validation(format!("max ({max}) must exceed min ({min})")));
    }
    if factor < 2 {
        return Err(CliError::Validation(format!("factor must be at least 2, got {factor}")));
    }
    let mut ns = Vec::new();
    let mut n = min;
    while n <= max {
        ns.push(n);
        n = match n.checked_mul(factor) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(ns)
}

pub fn bench(min: usize, max: usize, factor: usize, q: u64, weights: OpWeights) -> Result<BenchJson, CliError> {
    let ns = bench_sizes(min, max, factor)?;
    let mut rows = Vec::with_capacity(ns.len());
    for &n in &ns {
        rows.push(BenchRow::new(
            &sequential_cost_x(n, weights)?,
            &pram_cost_y(n, weights)?,
            &qpram_cost_y(n, q, weights)?,
        ));
    }
    let series = |f: fn(&BenchRow) -> u64| {
        ScalingSeries::new(rows.iter().map(|r| (r.n, f(r) as f64)).collect())
    };
    let ex = growth_exponent(&series(|r| r.work_x)?);
    let ey = growth_exponent(&series(|r| r.work_y)?);
    let rel = relation_check(&ns, q, weights)?;
    Ok(BenchJson {
        rows,
        exponents: BenchExponents::new(ex, ey, &rel),
    })
}

pub fn bench_csv(b: &BenchJson) -> Result<String, CliError> {
    let mut out = csv_records(&b.rows)?;
    let e = &b.exponents;
    out.push_str(&format!(
        "# exponents work_x={:.4} work_y={:.4} cost_pram_y={:.4} cost_qpram_y={:.4} equal_growth={}\n",
        e.work_x, e.work_y, e.cost_pram_y, e.cost_qpram_y, e.equal_growth
    ));
    Ok(out)
}

/// Machine run, a `shots`-shot estimate per processor and the single-shot
/// hypothesis test. Estimates use `derive_seed(seed, 0)`, the test
/// `derive_seed(seed, 1)`, each split again per processor.
pub fn run_qpram(
    p: &Projector,
    psi: &StateVector,
    q: usize,
    tau: f64,
    shots: u64,
    seed: u64,
    cfg: &SolverConfig,
) -> Result<QpramJson, CliError> {
    if q == 0 {
        return Err(CliError::Validation("q must be at least 1".into()));
    }
    if !tau.is_finite() {
        return Err(CliError::Validation(format!("tau must be finite, got {tau}")));
    }
    if p.dim() != psi.dim() {
        return Err(qprop_core::Error::DimensionMismatch {
            expected: p.dim(),
            found: psi.dim(),
        }
        .into());
    }
    let m = qpram::init_machine(p, psi, q, cfg)?.with_tau(tau);
    let mut m = qpram::run_oracle(m)?;
    let pr_zero = qpram::measure_zero_prob(&qpram::correlate(&m, 0)?)?;
    let records = m.measure_all(shots, qpram::derive_seed(seed, 0))?;
    let zeros: u64 = records.iter().map(|r| r.zeros).sum();
    let total = shots * q as u64;
    let test_seed = qpram::derive_seed(seed, 1);
    let single = (0..q)
        .map(|i| {
            let c = qpram::correlate(&m, i)?;
            qpram::sample(&c, 1, qpram::derive_seed(test_seed, i as u64))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let test = qpram::hypothesis_test(&single)?;
    Ok(QpramJson::new(
        m.n(),
        m.consistent(),
        pr_zero,
        total,
        zeros,
        m.oracle_queries(),
        &test,
    ))
}
