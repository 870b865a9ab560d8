//! Constraints on the probability that a proposition would be verified,
//! indexed by a prepared statement and its truth value.
//!
//! Three constraints are propagated over a complete family of mutually
//! orthogonal atoms: non-negativity, `p = 1` for a true proposition and
//! `p = 0` for a false one, and finite additivity over the family (the
//! members are exclusive and their join is the top element, so their
//! probabilities sum to one). A gap leaves the probability strictly inside
//! the unit interval. What remains is an interval per member.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::config::{SolverConfig, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::{orthogonal, select_independent, CMatrix, Projector, StateVector};
use crate::rng::{self, SeededRng};
use crate::solvability::{kernel_membership, range_membership};
use crate::valuation::Semantics;

/// `n` mutually orthogonal rank-1 projectors summing to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionFamily {
    members: Vec<Projector>,
}

impl PropositionFamily {
    pub fn new(members: Vec<Projector>, tol: &Tolerances) -> Result<Self> {
        let n = members.len();
        if n < 2 {
            return Err(Error::InvalidFamily(format!("need at least 2 members, got {n}")));
        }
        for (k, m) in members.iter().enumerate() {
            if m.dim() != n {
                return Err(Error::InvalidFamily(format!(
                    "member {k} has dimension {}, family has {n} members",
                    m.dim()
                )));
            }
            if m.rank() != 1 {
                return Err(Error::InvalidFamily(format!("member {k} has rank {}", m.rank())));
            }
        }
        for k in 0..n {
            for l in k + 1..n {
                if !orthogonal(&members[k], &members[l], tol)? {
                    return Err(Error::InvalidFamily(format!("members {k} and {l} are not orthogonal")));
                }
            }
        }
        let sum = members
            .iter()
            .fold(CMatrix::zeros(n, n), |acc, m| acc.add(m.matrix()));
        let dev = sum.max_dist(&CMatrix::identity(n));
        if dev > tol.tol {
            return Err(Error::InvalidFamily(format!(
                "members do not sum to the identity (deviation {dev:e})"
            )));
        }
        Ok(Self { members })
    }

    /// Projectors onto the standard basis vectors.
    pub fn standard(n: usize) -> Result<Self> {
        let members = (0..n)
            .map(|k| {
                let mut mask = vec![false; n];
                mask[k] = true;
                Projector::diagonal(&mask)
            })
            .collect();
        Self::new(members, &Tolerances::default())
    }

    /// Family built from a random orthonormal basis.
    pub fn random(n: usize, rng: &mut SeededRng, tol: &Tolerances) -> Result<Self> {
        loop {
            let candidates: Vec<Vec<Complex64>> =
                (0..n).map(|_| rng::complex_gaussian(rng, n)).collect();
            let (kept, basis) = select_independent(&candidates, tol.rank);
            if kept.len() != n {
                continue;
            }
            let members = basis
                .iter()
                .map(|v| StateVector::new(v).map(|s| Projector::from_state(&s)))
                .collect::<Result<Vec<_>>>()?;
            return Self::new(members, tol);
        }
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Projector] {
        &self.members
    }
}

/// The statement a preparation asserts about one member of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preparation {
    /// `x_k` (state in `ran(P_k)`) has the given truth value.
    Range { member: usize, value: bool },
    /// `y_k` (state in `ker(P_k)`) has the given truth value.
    Kernel { member: usize, value: bool },
    /// Both `x_k` and `y_k` are false.
    Gap { member: usize },
}

impl Preparation {
    pub fn member(&self) -> usize {
        match *self {
            Preparation::Range { member, .. }
            | Preparation::Kernel { member, .. }
            | Preparation::Gap { member } => member,
        }
    }

    /// The preparation a state induces on member `k`: the statement the
    /// given semantics reads off it, decided by the membership tests.
    pub fn from_state(
        family: &PropositionFamily,
        member: usize,
        psi: &StateVector,
        semantics: Semantics,
        cfg: &SolverConfig,
    ) -> Result<Self> {
        let p = family
            .members()
            .get(member)
            .ok_or_else(|| Error::InvalidArgument(format!("no family member {member}")))?;
        let x = range_membership(p, psi, cfg)?.holds;
        if semantics == Semantics::Bvn {
            return Ok(Preparation::Range { member, value: x });
        }
        if x {
            return Ok(Preparation::Range { member, value: true });
        }
        if kernel_membership(p, psi, cfg)?.holds {
            Ok(Preparation::Kernel { member, value: true })
        } else {
            Ok(Preparation::Gap { member })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    Point,
    OpenInterval,
    ClosedInterval,
}

impl VerdictKind {
    pub fn tag(&self) -> &'static str {
        match self {
            VerdictKind::Point => "point",
            VerdictKind::OpenInterval => "open",
            VerdictKind::ClosedInterval => "closed",
        }
    }
}

/// The values the constraints leave for one probability. Open intervals are
/// reported with endpoints 0 and 1; exclusion lives in the kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbabilityVerdict {
    pub kind: VerdictKind,
    pub lo: f64,
    pub hi: f64,
}

impl ProbabilityVerdict {
    pub const ZERO: Self = Self::point(0.0);
    pub const ONE: Self = Self::point(1.0);
    pub const OPEN: Self = Self {
        kind: VerdictKind::OpenInterval,
        lo: 0.0,
        hi: 1.0,
    };
    pub const CLOSED: Self = Self {
        kind: VerdictKind::ClosedInterval,
        lo: 0.0,
        hi: 1.0,
    };

    const fn point(v: f64) -> Self {
        Self {
            kind: VerdictKind::Point,
            lo: v,
            hi: v,
        }
    }

    fn attains_endpoints(&self) -> bool {
        self.kind != VerdictKind::OpenInterval
    }
}

/// Truth value of a member proposition: `Some(true/false)`, a gap, or
/// undetermined by the preparation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Known {
    Value(bool),
    Gap,
    Unknown,
}

fn member_truth(n: usize, prep: Preparation, semantics: Semantics, l: usize) -> Known {
    let k = prep.member();
    let is_k = l == k;
    // for a qubit ker(P_k) = ran(P_other), so y_k and x_other coincide
    let qubit = n == 2;
    match (prep, semantics) {
        (Preparation::Range { value: true, .. }, _) => Known::Value(is_k),
        (Preparation::Range { value: false, .. }, Semantics::Bvn) => {
            if is_k {
                Known::Value(false)
            } else {
                Known::Unknown
            }
        }
        (Preparation::Range { value: false, .. }, Semantics::Partial) => Known::Unknown,
        (Preparation::Kernel { value: true, .. }, _) => {
            if is_k {
                Known::Value(false)
            } else if qubit {
                Known::Value(true)
            } else {
                Known::Unknown
            }
        }
        (Preparation::Kernel { value: false, .. }, _) => {
            if qubit && !is_k {
                Known::Value(false)
            } else {
                Known::Unknown
            }
        }
        // b(0,0) = b(0,1): indistinguishable from x_k false
        (Preparation::Gap { .. }, Semantics::Bvn) => {
            if is_k {
                Known::Value(false)
            } else {
                Known::Unknown
            }
        }
        (Preparation::Gap { .. }, Semantics::Partial) => {
            if is_k || qubit {
                Known::Gap
            } else {
                Known::Unknown
            }
        }
    }
}

/// Verdicts for every member of the family.
pub fn forced_probabilities(
    family: &PropositionFamily,
    prep: Preparation,
    semantics: Semantics,
) -> Result<Vec<ProbabilityVerdict>> {
    let n = family.dim();
    if prep.member() >= n {
        return Err(Error::InvalidArgument(format!(
            "preparation refers to member {} of a {n}-member family",
            prep.member()
        )));
    }
    let mut verdicts: Vec<ProbabilityVerdict> = (0..n)
        .map(|l| match member_truth(n, prep, semantics, l) {
            Known::Value(true) => ProbabilityVerdict::ONE,
            Known::Value(false) => ProbabilityVerdict::ZERO,
            Known::Gap => ProbabilityVerdict::OPEN,
            Known::Unknown => ProbabilityVerdict::CLOSED,
        })
        .collect();

    // additivity: one free member takes up the remainder, a full sum
    // pins every free member to zero
    let fixed: f64 = verdicts
        .iter()
        .filter(|v| v.kind == VerdictKind::Point)
        .map(|v| v.lo)
        .sum();
    let free: Vec<usize> = (0..n)
        .filter(|&l| verdicts[l].kind == VerdictKind::ClosedInterval)
        .collect();
    let has_open = verdicts.iter().any(|v| v.kind == VerdictKind::OpenInterval);
    if !has_open {
        if free.len() == 1 {
            let rest = (1.0 - fixed).clamp(0.0, 1.0);
            verdicts[free[0]] = ProbabilityVerdict::point(rest);
        } else if fixed >= 1.0 {
            for l in free {
                verdicts[l] = ProbabilityVerdict::ZERO;
            }
        }
    }
    Ok(verdicts)
}

/// The tightest interval the constraints force on member `target`.
pub fn forced_probability(
    family: &PropositionFamily,
    prep: Preparation,
    target: usize,
    semantics: Semantics,
) -> Result<ProbabilityVerdict> {
    if target >= family.dim() {
        return Err(Error::InvalidArgument(format!(
            "target {target} out of range for a {}-member family",
            family.dim()
        )));
    }
    Ok(forced_probabilities(family, prep, semantics)?[target])
}

/// Whether some choice of values inside each member's interval sums to one.
pub fn additivity_check(family: &PropositionFamily, prep: Preparation, semantics: Semantics) -> Result<bool> {
    let verdicts = forced_probabilities(family, prep, semantics)?;
    Ok(admits_unit_sum(&verdicts))
}

pub(crate) fn admits_unit_sum(verdicts: &[ProbabilityVerdict]) -> bool {
    const EPS: f64 = 1e-12;
    let lo: f64 = verdicts.iter().map(|v| v.lo).sum();
    let hi: f64 = verdicts.iter().map(|v| v.hi).sum();
    let lo_attained = verdicts.iter().all(ProbabilityVerdict::attains_endpoints);
    let hi_attained = lo_attained;
    let above_lo = 1.0 > lo + EPS || ((1.0 - lo).abs() <= EPS && lo_attained);
    let below_hi = 1.0 < hi - EPS || ((1.0 - hi).abs() <= EPS && hi_attained);
    above_lo && below_hi
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionReport {
    pub n: usize,
    pub semantics: Semantics,
    pub samples: usize,
    pub counts: BTreeMap<VerdictKind, usize>,
}

impl DispersionReport {
    pub fn kinds(&self) -> Vec<VerdictKind> {
        self.counts.keys().copied().collect()
    }

    pub fn only_points(&self) -> bool {
        self.counts.keys().all(|k| *k == VerdictKind::Point)
    }

    pub fn contains(&self, kind: VerdictKind) -> bool {
        self.counts.contains_key(&kind)
    }
}

/// Sample preparations over random families and tally the verdict kinds of
/// every member.
///
/// Each sample draws a random orthonormal family, a random member and a
/// state that is, with equal odds, a random superposition or a basis vector
/// of the family (with a random phase). The preparation is the statement
/// the semantics reads off that state.
pub fn dispersion_scan(
    n: usize,
    samples: usize,
    seed: u64,
    semantics: Semantics,
    cfg: &SolverConfig,
) -> Result<DispersionReport> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = rng::seeded(seed);
    let mut counts = BTreeMap::new();
    for _ in 0..samples {
        let family = PropositionFamily::random(n, &mut rng, &cfg.tolerances)?;
        let member = rng::below(&mut rng, n);
        let psi = if rng::uniform(&mut rng) < 0.5 {
            rng::random_state(&mut rng, n)
        } else {
            let b = rng::below(&mut rng, n);
            let phase = core::f64::consts::TAU * rng::uniform(&mut rng);
            let rot = Complex64::from_polar(1.0, phase);
            // a column of a rank-1 projector is its vector up to scale; take
            // the largest one
            let m = family.members()[b].matrix();
            let col = (0..n)
                .map(|j| m.column(j))
                .max_by(|a, c| crate::linalg::norm2(a).total_cmp(&crate::linalg::norm2(c)))
                .expect("family members have at least two columns");
            StateVector::new(&col.iter().map(|z| z * rot).collect::<Vec<_>>())?
        };
        let prep = Preparation::from_state(&family, member, &psi, semantics, cfg)?;
        for v in forced_probabilities(&family, prep, semantics)? {
            *counts.entry(v.kind).or_insert(0) += 1;
        }
    }
    Ok(DispersionReport {
        n,
        semantics,
        samples,
        counts,
    })
}
