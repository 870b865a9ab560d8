//! Truth values of experimental and comparability propositions under the
//! total (Birkhoff–von Neumann) and the partial semantics, and the lattice
//! operations on closed subspaces.
//!
//! Each proposition rests on a pair of statements. For an atomic
//! proposition `P` they are `x: Ψ ∈ ran(P)` and `y: Ψ ∈ ker(P)`; for the
//! comparability of two ranges they are `z: ran(Q) ⊆ ran(P) or the reverse`
//! and `w: ran(Q) ⊥ ran(P)`. The partial semantics maps `(1,0)` to true,
//! `(0,1)` to false and leaves `(0,0)` without a value. The total semantics
//! sends `(0,0)` to false as well.

use alloc::format;
use alloc::vec::Vec;

use crate::config::{SolverConfig, Tolerances};
use crate::error::{Error, Result};
use crate::linalg::{
    commutes, orthogonal, select_independent_scaled, subspace_leq, CMatrix, Projector, StateVector,
};
use crate::solvability::{kernel_membership, range_membership, OpCounter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TruthValue {
    True,
    False,
    Gap,
}

impl TruthValue {
    pub fn tag(&self) -> &'static str {
        match self {
            TruthValue::True => "true",
            TruthValue::False => "false",
            TruthValue::Gap => "gap",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// Total valuation: `b(0,0) = b(0,1)`.
    Bvn,
    /// Partial valuation: `(0,0)` is a gap.
    Partial,
}

impl Semantics {
    pub fn tag(&self) -> &'static str {
        match self {
            Semantics::Bvn => "bvn",
            Semantics::Partial => "partial",
        }
    }

    /// Map the truth values of the two underlying statements.
    pub fn evaluate(&self, first: bool, second: bool) -> TruthValue {
        match (first, second, self) {
            (true, _, _) => TruthValue::True,
            (false, true, _) | (false, false, Semantics::Bvn) => TruthValue::False,
            (false, false, Semantics::Partial) => TruthValue::Gap,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruthVerdict {
    pub value: TruthValue,
    pub semantics: Semantics,
    /// Truth values of the two underlying statements.
    pub basis: (bool, bool),
    /// Work spent on each statement, when they were decided by solvability.
    pub work: Option<(OpCounter, OpCounter)>,
}

fn valuate(
    semantics: Semantics,
    p: &Projector,
    psi: &StateVector,
    cfg: &SolverConfig,
) -> Result<TruthVerdict> {
    let x = range_membership(p, psi, cfg)?;
    let y = kernel_membership(p, psi, cfg)?;
    debug_assert!(!(x.holds && y.holds), "unit state in both range and kernel");
    Ok(TruthVerdict {
        value: semantics.evaluate(x.holds, y.holds),
        semantics,
        basis: (x.holds, y.holds),
        work: Some((x.work, y.work)),
    })
}

/// True in the range, false in the kernel, gap otherwise.
pub fn valuate_partial(p: &Projector, psi: &StateVector, cfg: &SolverConfig) -> Result<TruthVerdict> {
    valuate(Semantics::Partial, p, psi, cfg)
}

/// True in the range, false everywhere else.
pub fn valuate_bvn(p: &Projector, psi: &StateVector, cfg: &SolverConfig) -> Result<TruthVerdict> {
    valuate(Semantics::Bvn, p, psi, cfg)
}

pub fn valuate_with(
    semantics: Semantics,
    p: &Projector,
    psi: &StateVector,
    cfg: &SolverConfig,
) -> Result<TruthVerdict> {
    valuate(semantics, p, psi, cfg)
}

/// Two nonzero projectors of equal dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PropositionPair {
    q: Projector,
    p: Projector,
}

impl PropositionPair {
    pub fn new(q: Projector, p: Projector) -> Result<Self> {
        if q.dim() != p.dim() {
            return Err(Error::DimensionMismatch {
                expected: q.dim(),
                found: p.dim(),
            });
        }
        if q.is_zero() || p.is_zero() {
            return Err(Error::ZeroProjector);
        }
        Ok(Self { q, p })
    }

    pub fn q(&self) -> &Projector {
        &self.q
    }

    pub fn p(&self) -> &Projector {
        &self.p
    }
}

fn comparability(semantics: Semantics, pair: &PropositionPair, tol: &Tolerances) -> Result<TruthVerdict> {
    let (q, p) = (&pair.q, &pair.p);
    let z = subspace_leq(q, p, tol)? || subspace_leq(p, q, tol)?;
    let w = orthogonal(q, p, tol)?;
    // ordered and orthogonal would force Q = QP = 0
    debug_assert!(!(z && w), "nonzero projectors both ordered and orthogonal");
    Ok(TruthVerdict {
        value: semantics.evaluate(z, w),
        semantics,
        basis: (z, w),
        work: None,
    })
}

/// True when the ranges are ordered by inclusion, false when orthogonal,
/// gap otherwise.
pub fn comparability_partial(pair: &PropositionPair, tol: &Tolerances) -> Result<TruthVerdict> {
    comparability(Semantics::Partial, pair, tol)
}

/// True when the ranges are ordered by inclusion, false otherwise.
pub fn comparability_bvn(pair: &PropositionPair, tol: &Tolerances) -> Result<TruthVerdict> {
    comparability(Semantics::Bvn, pair, tol)
}

pub fn comparability_with(
    semantics: Semantics,
    pair: &PropositionPair,
    tol: &Tolerances,
) -> Result<TruthVerdict> {
    comparability(semantics, pair, tol)
}

/// A closed subspace, identified by its projector.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeElement {
    pub projector: Projector,
}

impl LatticeElement {
    pub fn new(projector: Projector) -> Self {
        Self { projector }
    }

    pub fn dim(&self) -> usize {
        self.projector.dim()
    }

    pub fn approx_eq(&self, other: &Self, tol: &Tolerances) -> bool {
        self.projector.approx_eq(&other.projector, tol)
    }
}

impl From<Projector> for LatticeElement {
    fn from(projector: Projector) -> Self {
        Self { projector }
    }
}

/// Projector onto `ran(Q) ∩ ran(P)`.
///
/// The intersection is the null space of the stacked matrix
/// `S = [(I - Q); (I - P)]`, which is the orthogonal complement of the
/// column space of `S†`. That column space is orthonormalized by the same
/// greedy selection used for range bases.
pub fn meet(a: &LatticeElement, b: &LatticeElement, tol: &Tolerances) -> Result<LatticeElement> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    let ca = CMatrix::identity(n).sub(a.projector.matrix());
    let cb = CMatrix::identity(n).sub(b.projector.matrix());
    // columns of S† are the conjugated rows of S; both complements are
    // Hermitian, so these are just their columns
    let mut stacked: Vec<_> = ca.adjoint().columns();
    stacked.extend(cb.adjoint().columns());
    let (_, row_space) = select_independent_scaled(&stacked, tol.rank, 1.0);
    let row_proj = Projector::from_orthonormal(n, &row_space);
    Ok(LatticeElement::new(row_proj.complement()))
}

/// Projector onto `(ker(Q) ∩ ker(P))^⊥`, i.e. `I - meet(I - Q, I - P)`.
pub fn join(a: &LatticeElement, b: &LatticeElement, tol: &Tolerances) -> Result<LatticeElement> {
    let ca = LatticeElement::new(a.projector.complement());
    let cb = LatticeElement::new(b.projector.complement());
    let m = meet(&ca, &cb, tol)?;
    Ok(LatticeElement::new(m.projector.complement()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributivityReport {
    /// `(q ∧ p1) ∨ (q ∧ p2)`.
    pub lhs: LatticeElement,
    /// `q ∧ (p1 ∨ p2)`.
    pub rhs: LatticeElement,
    pub distributive: bool,
}

/// Compare `(q ∧ p1) ∨ (q ∧ p2)` with `q ∧ (p1 ∨ p2)` for a qubit, where
/// `p1` and `p2` are orthogonal atoms and `q` is an atom.
pub fn distributivity_witness(
    q: &LatticeElement,
    p1: &LatticeElement,
    p2: &LatticeElement,
    tol: &Tolerances,
) -> Result<DistributivityReport> {
    for (name, e) in [("q", q), ("p1", p1), ("p2", p2)] {
        if e.dim() != 2 {
            return Err(Error::PreconditionViolated(format!(
                "{name} must act on a qubit (dimension 2), got dimension {}",
                e.dim()
            )));
        }
        if e.projector.rank() != 1 {
            return Err(Error::PreconditionViolated(format!(
                "{name} must have rank 1, got rank {}",
                e.projector.rank()
            )));
        }
    }
    if !orthogonal(&p1.projector, &p2.projector, tol)? {
        return Err(Error::PreconditionViolated("p1 and p2 must be orthogonal".into()));
    }
    let lhs = join(&meet(q, p1, tol)?, &meet(q, p2, tol)?, tol)?;
    let rhs = meet(q, &join(p1, p2, tol)?, tol)?;
    let distributive = lhs.approx_eq(&rhs, tol);
    Ok(DistributivityReport {
        lhs,
        rhs,
        distributive,
    })
}

/// Whether two nonzero projectors are compatible.
pub fn compatible(pair: &PropositionPair, tol: &Tolerances) -> Result<bool> {
    commutes(&pair.q, &pair.p, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn t() -> Tolerances {
        Tolerances::default()
    }

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn state(v: &[f64]) -> StateVector {
        StateVector::from_real(v).unwrap()
    }

    fn atom(v: &[f64]) -> Projector {
        Projector::from_state(&state(v))
    }

    #[test]
    fn partial_valuation_examples() {
        let p = Projector::diagonal(&[true, false]);
        let v = valuate_partial(&p, &state(&[1.0, 0.0]), &cfg()).unwrap();
        assert_eq!((v.value, v.basis), (TruthValue::True, (true, false)));
        let v = valuate_partial(&p, &state(&[0.0, 1.0]), &cfg()).unwrap();
        assert_eq!((v.value, v.basis), (TruthValue::False, (false, true)));
        let v = valuate_partial(&p, &state(&[1.0, 1.0]), &cfg()).unwrap();
        assert_eq!((v.value, v.basis), (TruthValue::Gap, (false, false)));
        assert_eq!(v.semantics, Semantics::Partial);
    }

    #[test]
    fn bvn_valuation_examples() {
        let p = Projector::diagonal(&[true, false]);
        assert_eq!(valuate_bvn(&p, &state(&[1.0, 0.0]), &cfg()).unwrap().value, TruthValue::True);
        assert_eq!(valuate_bvn(&p, &state(&[1.0, 1.0]), &cfg()).unwrap().value, TruthValue::False);
        assert_eq!(valuate_bvn(&p, &state(&[0.0, 1.0]), &cfg()).unwrap().value, TruthValue::False);
    }

    #[test]
    fn comparability_examples() {
        let inc = PropositionPair::new(
            Projector::diagonal(&[true, false, false]),
            Projector::diagonal(&[true, true, false]),
        )
        .unwrap();
        assert_eq!(comparability_partial(&inc, &t()).unwrap().value, TruthValue::True);
        assert_eq!(comparability_bvn(&inc, &t()).unwrap().value, TruthValue::True);

        let orth = PropositionPair::new(
            Projector::diagonal(&[true, false]),
            Projector::diagonal(&[false, true]),
        )
        .unwrap();
        assert_eq!(comparability_partial(&orth, &t()).unwrap().value, TruthValue::False);
        assert_eq!(comparability_bvn(&orth, &t()).unwrap().value, TruthValue::False);

        let skew = PropositionPair::new(Projector::diagonal(&[true, false]), atom(&[1.0, 1.0])).unwrap();
        assert_eq!(comparability_partial(&skew, &t()).unwrap().value, TruthValue::Gap);
        assert_eq!(comparability_bvn(&skew, &t()).unwrap().value, TruthValue::False);
        assert!(!compatible(&skew, &t()).unwrap());
    }

    #[test]
    fn pair_rejects_zero_operator() {
        assert_eq!(
            PropositionPair::new(Projector::zero(2), Projector::identity(2)),
            Err(Error::ZeroProjector)
        );
    }

    #[test]
    fn commuting_higher_rank_pair_is_a_gap() {
        // compatible, yet neither ordered nor orthogonal
        let pair = PropositionPair::new(
            Projector::diagonal(&[true, true, false]),
            Projector::diagonal(&[false, true, true]),
        )
        .unwrap();
        assert!(compatible(&pair, &t()).unwrap());
        assert_eq!(comparability_partial(&pair, &t()).unwrap().value, TruthValue::Gap);
    }

    #[test]
    fn meet_examples() {
        let p = LatticeElement::new(atom(&[1.0, 1.0]));
        assert!(meet(&p, &p, &t()).unwrap().approx_eq(&p, &t()));
        let e0 = LatticeElement::new(Projector::diagonal(&[true, false]));
        let e1 = LatticeElement::new(Projector::diagonal(&[false, true]));
        let zero = LatticeElement::new(Projector::zero(2));
        assert!(meet(&e0, &e1, &t()).unwrap().approx_eq(&zero, &t()));
        assert!(meet(&e0, &p, &t()).unwrap().approx_eq(&zero, &t()));
        assert_eq!(meet(&e0, &p, &t()).unwrap().projector.rank(), 0);
    }

    #[test]
    fn join_examples() {
        let p = LatticeElement::new(atom(&[1.0, 1.0]));
        assert!(join(&p, &p, &t()).unwrap().approx_eq(&p, &t()));
        let e0 = LatticeElement::new(Projector::diagonal(&[true, false]));
        let e1 = LatticeElement::new(Projector::diagonal(&[false, true]));
        let id = LatticeElement::new(Projector::identity(2));
        assert!(join(&e0, &e1, &t()).unwrap().approx_eq(&id, &t()));
        let zero = LatticeElement::new(Projector::zero(2));
        assert!(join(&zero, &zero, &t()).unwrap().approx_eq(&zero, &t()));
    }

    #[test]
    fn meet_in_three_dimensions() {
        let a = LatticeElement::new(Projector::diagonal(&[true, true, false]));
        let b = LatticeElement::new(Projector::diagonal(&[false, true, true]));
        let m = meet(&a, &b, &t()).unwrap();
        assert!(m.approx_eq(&LatticeElement::new(Projector::diagonal(&[false, true, false])), &t()));
        assert_eq!(m.projector.rank(), 1);
    }

    #[test]
    fn distributivity_counterexample() {
        let q = LatticeElement::new(atom(&[1.0, 1.0]));
        let p1 = LatticeElement::new(Projector::diagonal(&[true, false]));
        let p2 = LatticeElement::new(Projector::diagonal(&[false, true]));
        let r = distributivity_witness(&q, &p1, &p2, &t()).unwrap();
        assert!(r.lhs.approx_eq(&LatticeElement::new(Projector::zero(2)), &t()));
        assert!(r.rhs.approx_eq(&q, &t()));
        assert!(!r.distributive);

        let r = distributivity_witness(&p1, &p1, &p2, &t()).unwrap();
        assert!(r.distributive);
        assert!(r.lhs.approx_eq(&p1, &t()));

        let phase = StateVector::new(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]).unwrap();
        let q = LatticeElement::new(Projector::from_state(&phase));
        assert!(!distributivity_witness(&q, &p1, &p2, &t()).unwrap().distributive);
    }

    #[test]
    fn distributivity_preconditions() {
        let q = LatticeElement::new(atom(&[1.0, 1.0]));
        let p1 = LatticeElement::new(Projector::diagonal(&[true, false]));
        let err = distributivity_witness(&q, &p1, &p1, &t()).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(ref m) if m.contains("orthogonal")));
        let big = LatticeElement::new(Projector::diagonal(&[true, false, false]));
        assert!(matches!(
            distributivity_witness(&big, &p1, &p1, &t()),
            Err(Error::PreconditionViolated(_))
        ));
        let id = LatticeElement::new(Projector::identity(2));
        let err = distributivity_witness(&id, &p1, &q, &t()).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(ref m) if m.contains("rank")));
    }
}
