mod common;

use common::{instance, kernel_oracle, range_oracle, Kind, KINDS};
use proptest::prelude::*;
use qprop_core::costmodel::{growth_exponent, pram_cost_y, qpram_cost_y, sequential_cost_x, ScalingSeries};
use qprop_core::linalg::{commutes, kernel_basis, orthogonal, range_basis, subspace_leq};
use qprop_core::probability::{
    additivity_check, forced_probabilities, forced_probability, Preparation, PropositionFamily, VerdictKind,
};
use qprop_core::qpram::{
    correlate, derive_seed, hamiltonian, hypothesis_test, init_machine, measure_zero_prob, oracle_step, sample,
    u_c_gate, MeasurementRecord,
};
use qprop_core::rng::{self, SeededRng};
use qprop_core::solvability::{kernel_membership, range_membership, solve_consistency};
use qprop_core::valuation::{
    comparability_partial, join, meet, valuate_bvn, valuate_partial, LatticeElement, PropositionPair,
};
use qprop_core::{CMatrix, OpWeights, Projector, Semantics, SolverConfig, Tolerances, TruthValue};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

/// Projector onto the span of the family members selected by `mask`.
fn span_of(family: &PropositionFamily, mask: &[bool]) -> Projector {
    let n = family.dim();
    let mut m = CMatrix::zeros(n, n);
    for (member, &keep) in family.members().iter().zip(mask) {
        if keep {
            m = m.add(member.matrix());
        }
    }
    Projector::from_matrix(m, &tol()).unwrap()
}

fn random_mask(r: &mut SeededRng, n: usize) -> Vec<bool> {
    (0..n).map(|_| rng::uniform(r) < 0.5).collect()
}

fn setup(seed: u64, n: usize) -> (SeededRng, PropositionFamily) {
    let mut r = rng::seeded(seed);
    let family = PropositionFamily::random(n, &mut r, &tol()).unwrap();
    (r, family)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atoms_are_rank_one_projectors(seed in any::<u64>(), n in 2usize..=8) {
        let mut r = rng::seeded(seed);
        let p = Projector::from_state(&rng::random_state(&mut r, n));
        let m = p.matrix();
        prop_assert!(m.max_dist(&m.adjoint()) <= 1e-12);
        prop_assert!(m.max_dist(&m.matmul(m)) <= 1e-12);
        prop_assert_eq!((p.rank(), p.nullity()), (1, n - 1));
    }

    #[test]
    fn bases_span_the_space(seed in any::<u64>(), n in 2usize..=8) {
        let (mut r, family) = setup(seed, n);
        let p = span_of(&family, &random_mask(&mut r, n));
        let ran = range_basis(&p, &tol());
        let ker = kernel_basis(&p, &tol());
        prop_assert_eq!(ran.len(), p.rank());
        prop_assert_eq!(ker.len(), p.nullity());
        let mut cols = ran.columns.columns();
        cols.extend(ker.columns.columns());
        let all = CMatrix::from_columns(n, &cols);
        for i in 0..n {
            let e = qprop_core::StateVector::basis(n, i).unwrap();
            let fit = solve_consistency(&all, e.amplitudes(), &tol()).unwrap();
            prop_assert!(fit.residual < tol().tol);
        }
    }

    #[test]
    fn subspace_relations(seed in any::<u64>(), n in 2usize..=6) {
        let (mut r, family) = setup(seed, n);
        let a = random_mask(&mut r, n);
        let b = random_mask(&mut r, n);
        let c: Vec<bool> = b.iter().zip(random_mask(&mut r, n)).map(|(x, y)| *x || y).collect();
        let (pa, pb, pc) = (span_of(&family, &a), span_of(&family, &b), span_of(&family, &c));
        let t = tol();
        prop_assert_eq!(commutes(&pa, &pb, &t).unwrap(), commutes(&pb, &pa, &t).unwrap());
        if orthogonal(&pa, &pb, &t).unwrap() {
            prop_assert!(commutes(&pa, &pb, &t).unwrap());
        }
        prop_assert!(subspace_leq(&pa, &pa, &t).unwrap());
        // b ⊆ c by construction; a ⊆ b ⊆ c forces a ⊆ c
        prop_assert!(subspace_leq(&pb, &pc, &t).unwrap());
        if subspace_leq(&pa, &pb, &t).unwrap() {
            prop_assert!(subspace_leq(&pa, &pc, &t).unwrap());
        }
        if subspace_leq(&pa, &pb, &t).unwrap() && subspace_leq(&pb, &pa, &t).unwrap() {
            prop_assert!(pa.matrix().max_dist(pb.matrix()) <= 10.0 * t.tol);
        }
    }

    #[test]
    fn random_noncommuting_atoms(seed in any::<u64>(), n in 2usize..=8) {
        let mut r = rng::seeded(seed);
        let p = Projector::from_state(&rng::random_state(&mut r, n));
        let q = Projector::from_state(&rng::random_state(&mut r, n));
        let t = tol();
        prop_assert_eq!(commutes(&p, &q, &t).unwrap(), commutes(&q, &p, &t).unwrap());
        prop_assert!(!orthogonal(&p, &q, &t).unwrap());
    }

    #[test]
    fn memberships_match_oracle(seed in any::<u64>(), n in 2usize..=8, k in 0usize..3) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, n, KINDS[k]);
        let x = range_membership(&inst.p, &inst.psi, &cfg()).unwrap();
        let y = kernel_membership(&inst.p, &inst.psi, &cfg()).unwrap();
        prop_assert_eq!(x.holds, range_oracle(&inst.p, &inst.psi, &tol()));
        prop_assert_eq!(y.holds, kernel_oracle(&inst.p, &inst.psi, &tol()));
        prop_assert!(!(x.holds && y.holds));
        prop_assert_eq!(x.holds, inst.kind == Kind::Range);
        prop_assert_eq!(y.holds, inst.kind == Kind::Kernel);
    }

    #[test]
    fn range_work_is_exact(seed in any::<u64>(), n in 2usize..=64, k in 0usize..3) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, n, KINDS[k]);
        let w = range_membership(&inst.p, &inst.psi, &cfg()).unwrap().work;
        prop_assert_eq!(w.total(), 3 * (n as u64 - 1));
    }

    #[test]
    fn witness_residual(seed in any::<u64>(), n in 2usize..=8) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, n, Kind::Range);
        let v = range_membership(&inst.p, &inst.psi, &cfg()).unwrap();
        let x = v.witness.expect("range state has a witness")[0];
        // the single unknown multiplies the pivot column of M
        let m = inst.p.matrix();
        let pivot = (0..n).max_by(|&a, &b| m[(a, a)].re.total_cmp(&m[(b, b)].re).then(b.cmp(&a))).unwrap();
        let fitted: Vec<_> = m.column(pivot).iter().map(|c| c * x).collect();
        let err = fitted.iter().zip(inst.psi.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-8);
    }

    #[test]
    fn lsq_oracle_accepts_column_space(seed in any::<u64>(), n in 2usize..=8) {
        let mut r = rng::seeded(seed);
        let a = CMatrix::outer(&rng::complex_gaussian(&mut r, n), &rng::complex_gaussian(&mut r, n));
        let x = rng::complex_gaussian(&mut r, n);
        let b = a.matvec(&x);
        let fit = solve_consistency(&a, &b, &tol()).unwrap();
        prop_assert!(fit.holds);
        let back = a.matvec(&fit.solution);
        let err = back.iter().zip(&b).map(|(u, v)| (u - v).norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-8 * qprop_core::linalg::norm2(&b).max(1.0));
    }

    #[test]
    fn trichotomy_and_totality(seed in any::<u64>(), n in 2usize..=8, k in 0usize..3) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, n, KINDS[k]);
        let part = valuate_partial(&inst.p, &inst.psi, &cfg()).unwrap();
        let bvn = valuate_bvn(&inst.p, &inst.psi, &cfg()).unwrap();
        let (x, y) = part.basis;
        prop_assert_eq!(part.value == TruthValue::Gap, !x && !y);
        prop_assert!(bvn.value != TruthValue::Gap);
        prop_assert_eq!(bvn.value == TruthValue::True, part.value == TruthValue::True);
    }

    #[test]
    fn negation_duality_on_qubits(seed in any::<u64>(), k in 0usize..3) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, 2, KINDS[k]);
        let comp = inst.p.complement();
        let v = valuate_partial(&inst.p, &inst.psi, &cfg()).unwrap().value;
        let w = valuate_partial(&comp, &inst.psi, &cfg()).unwrap().value;
        prop_assert_eq!(v == TruthValue::True, w == TruthValue::False);
        prop_assert_eq!(v == TruthValue::False, w == TruthValue::True);
    }

    #[test]
    fn lattice_laws_on_commuting_pairs(seed in any::<u64>(), n in 2usize..=6) {
        let (mut r, family) = setup(seed, n);
        let a = LatticeElement::new(span_of(&family, &random_mask(&mut r, n)));
        let b = LatticeElement::new(span_of(&family, &random_mask(&mut r, n)));
        let t = tol();
        prop_assert!(meet(&a, &b, &t).unwrap().approx_eq(&meet(&b, &a, &t).unwrap(), &t));
        prop_assert!(join(&a, &b, &t).unwrap().approx_eq(&join(&b, &a, &t).unwrap(), &t));
        prop_assert!(meet(&a, &a, &t).unwrap().approx_eq(&a, &t));
        prop_assert!(join(&a, &a, &t).unwrap().approx_eq(&a, &t));
        prop_assert!(meet(&a, &join(&a, &b, &t).unwrap(), &t).unwrap().approx_eq(&a, &t));
        prop_assert!(join(&a, &meet(&a, &b, &t).unwrap(), &t).unwrap().approx_eq(&a, &t));
    }

    #[test]
    fn qubit_comparability_gaps_iff_noncommuting(seed in any::<u64>(), k in 0usize..3) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, 2, KINDS[k]);
        let q = Projector::from_state(&inst.psi);
        let pair = PropositionPair::new(q.clone(), inst.p.clone()).unwrap();
        let v = comparability_partial(&pair, &tol()).unwrap();
        prop_assert_eq!(v.value == TruthValue::Gap, !commutes(&q, &inst.p, &tol()).unwrap());
    }

    #[test]
    fn probability_verdicts_are_bounded(seed in any::<u64>(), n in 2usize..=6, bvn in any::<bool>()) {
        let (mut r, family) = setup(seed, n);
        let semantics = if bvn { Semantics::Bvn } else { Semantics::Partial };
        let member = rng::below(&mut r, n);
        let psi = rng::random_state(&mut r, n);
        let prep = Preparation::from_state(&family, member, &psi, semantics, &cfg()).unwrap();
        let verdicts = forced_probabilities(&family, prep, semantics).unwrap();
        for v in &verdicts {
            prop_assert!(0.0 <= v.lo && v.lo <= v.hi && v.hi <= 1.0);
            if v.kind == VerdictKind::Point {
                prop_assert!(v.lo == v.hi && (v.lo == 0.0 || v.lo == 1.0));
            }
        }
        if semantics == Semantics::Bvn && n == 2 {
            prop_assert!(verdicts.iter().all(|v| v.kind == VerdictKind::Point));
        }
        prop_assert!(additivity_check(&family, prep, semantics).unwrap());
    }

    #[test]
    fn partial_range_and_kernel_are_points(seed in any::<u64>(), n in 2usize..=6) {
        let (mut r, family) = setup(seed, n);
        let k = rng::below(&mut r, n);
        let own = range_basis(&family.members()[k], &tol()).columns.column(0);
        let psi = qprop_core::StateVector::new(&own).unwrap();
        let prep = Preparation::from_state(&family, k, &psi, Semantics::Partial, &cfg()).unwrap();
        let v = forced_probability(&family, prep, k, Semantics::Partial).unwrap();
        prop_assert_eq!((v.kind, v.lo), (VerdictKind::Point, 1.0));

        let other = (k + 1) % n;
        let prep = Preparation::from_state(&family, other, &psi, Semantics::Partial, &cfg()).unwrap();
        let v = forced_probability(&family, prep, other, Semantics::Partial).unwrap();
        prop_assert_eq!((v.kind, v.hi), (VerdictKind::Point, 0.0));
    }

    #[test]
    fn classical_costs_obey_law_of_work(n in 2usize..=48, m in 1u64..12, d in 1u64..12, a in 1u64..12, c in 1u64..12) {
        let w = OpWeights::new(m, d, a, c);
        for r in [sequential_cost_x(n, w).unwrap(), pram_cost_y(n, w).unwrap()] {
            prop_assert!(r.obeys_law_of_work());
            prop_assert!(r.efficiency() <= 1.0);
            prop_assert_eq!(r.cost, r.processors * r.time);
        }
        let q = qpram_cost_y(n, 3, w).unwrap();
        prop_assert_eq!(q.cost, q.processors * q.time);
        prop_assert_eq!(q.oracle_queries, n as u64 - 1);
    }

    #[test]
    fn exponent_is_scale_invariant(k in 0.001f64..1000.0, e in 0.5f64..4.0) {
        let ns = [4usize, 8, 16, 32, 64];
        let base = ScalingSeries::from_fn(&ns, |n| Ok((n as f64).powf(e) + n as f64)).unwrap();
        let scaled = ScalingSeries::from_fn(&ns, |n| Ok(k * ((n as f64).powf(e) + n as f64))).unwrap();
        prop_assert!((growth_exponent(&base) - growth_exponent(&scaled)).abs() <= 1e-9);
    }

    #[test]
    fn simulated_states_stay_normalized(seed in any::<u64>(), n in 2usize..=6, k in 0usize..3) {
        let mut r = rng::seeded(seed);
        let inst = instance(&mut r, n, KINDS[k]);
        let mut m = init_machine(&inst.p, &inst.psi, 2, &cfg()).unwrap();
        let unit = |m: &qprop_core::qpram::QpramMachine| {
            m.processors().iter().all(|p| (p.norm_sqr() - 1.0).abs() <= 1e-12)
                && m.counters().iter().all(|c| (c.norm_sqr() - 1.0).abs() <= 1e-12)
        };
        prop_assert!(unit(&m));
        for _ in 0..n - 1 {
            m = oracle_step(m).unwrap();
            prop_assert!(unit(&m));
        }
        let c = correlate(&m, 1).unwrap();
        prop_assert!((c.norm_sqr() - 1.0).abs() <= 1e-12);
        let pr = measure_zero_prob(&c).unwrap();
        let kernel = kernel_membership(&inst.p, &inst.psi, &cfg()).unwrap().holds;
        prop_assert_eq!(pr, if kernel { 1.0 } else { 0.5 });
    }

    #[test]
    fn coupling_gate_is_diagonal_and_unitary(tau in -50.0f64..50.0, consistent in any::<bool>()) {
        let u = u_c_gate(&hamiltonian(consistent), tau);
        prop_assert!(u.adjoint().matmul(&u).max_dist(&CMatrix::identity(4)) <= 1e-12);
        for i in 0..4 {
            for j in (0..4).filter(|&j| j != i) {
                prop_assert_eq!(u[(i, j)].norm(), 0.0);
            }
        }
    }

    #[test]
    fn hypothesis_decision_is_all_zeros(outcomes in proptest::collection::vec(any::<bool>(), 1..12)) {
        let records: Vec<MeasurementRecord> = outcomes
            .iter()
            .enumerate()
            .map(|(i, &z)| MeasurementRecord { shots: 1, zeros: z as u64, seed: i as u64 })
            .collect();
        let a = hypothesis_test(&records).unwrap();
        prop_assert_eq!(&a, &hypothesis_test(&records).unwrap());
        prop_assert_eq!(a.reject_h0, outcomes.iter().all(|&z| z));
        prop_assert_eq!(a.type_i_error, 0.5f64.powi(outcomes.len() as i32));
    }

    #[test]
    fn sampling_is_seed_deterministic(seed in any::<u64>(), shots in 1u64..500) {
        let p = Projector::diagonal(&[true, false]);
        let psi = qprop_core::StateVector::from_real(&[1.0, 1.0]).unwrap();
        let m = qprop_core::qpram::run_oracle(init_machine(&p, &psi, 1, &cfg()).unwrap()).unwrap();
        let c = correlate(&m, 0).unwrap();
        let s = derive_seed(seed, 3);
        let (a, b) = (sample(&c, shots, s).unwrap(), sample(&c, shots, s).unwrap());
        prop_assert_eq!(a, b);
        prop_assert!(a.zeros <= a.shots);
    }
}
