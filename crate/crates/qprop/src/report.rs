//! Serializable views of the library's verdicts and reports.

use qprop_core::costmodel::{CostReport, RelationReport};
use qprop_core::probability::{DispersionReport, VerdictKind};
use qprop_core::qpram::HypothesisReport;
use qprop_core::valuation::DistributivityReport;
use qprop_core::{OpCounter, Statement, StatementVerdict, TruthVerdict};
use serde::Serialize;

use crate::schema::MatrixJson;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpsJson {
    pub mul: u64,
    pub div: u64,
    pub add: u64,
    pub cmp: u64,
    pub total: u64,
}

impl From<&OpCounter> for OpsJson {
    fn from(c: &OpCounter) -> Self {
        Self {
            mul: c.mul,
            div: c.div,
            add: c.add,
            cmp: c.cmp,
            total: c.total(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StatementJson {
    pub holds: bool,
    pub statement: &'static str,
    pub ops: OpsJson,
}

impl From<&StatementVerdict> for StatementJson {
    fn from(v: &StatementVerdict) -> Self {
        Self {
            holds: v.holds,
            statement: v.statement.tag(),
            ops: (&v.work).into(),
        }
    }
}

impl StatementJson {
    fn new(holds: bool, statement: Statement, work: &OpCounter) -> Self {
        Self {
            holds,
            statement: statement.tag(),
            ops: work.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValuationJson {
    pub value: &'static str,
    pub semantics: &'static str,
    pub x: bool,
    pub y: bool,
    pub statements: Vec<StatementJson>,
}

impl From<&TruthVerdict> for ValuationJson {
    fn from(v: &TruthVerdict) -> Self {
        let statements = match &v.work {
            Some((wx, wy)) => vec![
                StatementJson::new(v.basis.0, Statement::RangeMembership, wx),
                StatementJson::new(v.basis.1, Statement::KernelMembership, wy),
            ],
            None => Vec::new(),
        };
        Self {
            value: v.value.tag(),
            semantics: v.semantics.tag(),
            x: v.basis.0,
            y: v.basis.1,
            statements,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComparabilityJson {
    pub value: &'static str,
    pub semantics: &'static str,
    pub z: bool,
    pub w: bool,
    pub commutes: bool,
}

impl ComparabilityJson {
    pub fn new(v: &TruthVerdict, commutes: bool) -> Self {
        Self {
            value: v.value.tag(),
            semantics: v.semantics.tag(),
            z: v.basis.0,
            w: v.basis.1,
            commutes,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LatticeJson {
    pub dim: usize,
    pub q_angle: f64,
    pub q: MatrixJson,
    pub lhs: MatrixJson,
    pub lhs_rank: usize,
    pub rhs: MatrixJson,
    pub rhs_rank: usize,
    pub distributive: bool,
}

impl LatticeJson {
    pub fn new(q_angle: f64, q: &qprop_core::Projector, r: &DistributivityReport) -> Self {
        Self {
            dim: q.dim(),
            q_angle,
            q: MatrixJson::from_matrix(q.matrix()),
            lhs: MatrixJson::from_matrix(r.lhs.projector.matrix()),
            lhs_rank: r.lhs.projector.rank(),
            rhs: MatrixJson::from_matrix(r.rhs.projector.matrix()),
            rhs_rank: r.rhs.projector.rank(),
            distributive: r.distributive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DispersionJson {
    pub n: usize,
    pub semantics: &'static str,
    pub samples: usize,
    pub kinds: Vec<&'static str>,
    pub counts: serde_json::Map<String, serde_json::Value>,
}

impl From<&DispersionReport> for DispersionJson {
    fn from(r: &DispersionReport) -> Self {
        let kinds = r.kinds();
        let mut counts = serde_json::Map::new();
        for k in [VerdictKind::Point, VerdictKind::OpenInterval, VerdictKind::ClosedInterval] {
            counts.insert(k.tag().into(), r.counts.get(&k).copied().unwrap_or(0).into());
        }
        Self {
            n: r.n,
            semantics: r.semantics.tag(),
            samples: r.samples,
            kinds: kinds.iter().map(|k| k.tag()).collect(),
            counts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub work_x: u64,
    pub work_y: u64,
    pub cost_pram_y: u64,
    pub cost_qpram_y: u64,
    pub eff_qpram: f64,
}

impl BenchRow {
    pub fn new(x: &CostReport, pram: &CostReport, qpram: &CostReport) -> Self {
        Self {
            n: x.n,
            work_x: x.work,
            work_y: pram.work,
            cost_pram_y: pram.cost,
            cost_qpram_y: qpram.cost,
            eff_qpram: qpram.efficiency(),
        }
    }
}

/// Growth exponents of the four bench columns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchExponents {
    pub work_x: f64,
    pub work_y: f64,
    pub cost_pram_y: f64,
    pub cost_qpram_y: f64,
    pub equal_growth: bool,
}

impl BenchExponents {
    pub fn new(work_x: f64, work_y: f64, rel: &RelationReport) -> Self {
        Self {
            work_x,
            work_y,
            cost_pram_y: rel.exponent_pram_y,
            cost_qpram_y: rel.exponent_qpram_y,
            equal_growth: rel.equal_growth,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchJson {
    pub rows: Vec<BenchRow>,
    pub exponents: BenchExponents,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QpramJson {
    pub n: usize,
    pub q: usize,
    pub consistent: bool,
    pub pr_zero: f64,
    pub shots: u64,
    pub zeros: u64,
    pub estimate: f64,
    pub oracle_queries: usize,
    pub reject_h0: bool,
    pub type_i_error: f64,
    pub power: f64,
}

impl QpramJson {
    pub fn new(
        n: usize,
        consistent: bool,
        pr_zero: f64,
        shots: u64,
        zeros: u64,
        oracle_queries: usize,
        test: &HypothesisReport,
    ) -> Self {
        Self {
            n,
            q: test.q,
            consistent,
            pr_zero,
            shots,
            zeros,
            estimate: zeros as f64 / shots as f64,
            oracle_queries,
            reject_h0: test.reject_h0,
            type_i_error: test.type_i_error,
            power: test.power,
        }
    }
}
