#![allow(dead_code)]

use num_complex::Complex64;
use qprop_core::linalg::{dot, norm2};
use qprop_core::rng::{self, SeededRng};
use qprop_core::solvability::solve_consistency;
use qprop_core::{CMatrix, Projector, StateVector, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Haar-random state, almost surely in neither subspace.
    Random,
    /// The projector's own state times a random phase.
    Range,
    /// A random state orthogonal to the projector's state.
    Kernel,
}

pub const KINDS: [Kind; 3] = [Kind::Random, Kind::Range, Kind::Kernel];

pub struct Instance {
    pub p: Projector,
    pub psi: StateVector,
    pub kind: Kind,
}

fn random_phase(rng: &mut SeededRng) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * rng::uniform(rng))
}

pub fn instance(rng: &mut SeededRng, n: usize, kind: Kind) -> Instance {
    let base = rng::random_state(rng, n);
    let p = Projector::from_state(&base);
    let psi = match kind {
        Kind::Random => rng::random_state(rng, n),
        Kind::Range => {
            let phase = random_phase(rng);
            let v: Vec<Complex64> = base.amplitudes().iter().map(|a| a * phase).collect();
            StateVector::new(&v).unwrap()
        }
        Kind::Kernel => loop {
            let v = rng::complex_gaussian(rng, n);
            let c = dot(base.amplitudes(), &v);
            let w: Vec<Complex64> = v.iter().zip(base.amplitudes()).map(|(vi, bi)| vi - c * bi).collect();
            if norm2(&w) > 1e-3 {
                break StateVector::new(&w).unwrap();
            }
        },
    };
    Instance { p, psi, kind }
}

/// Least-squares verdict on `M X = Ψ`.
pub fn range_oracle(p: &Projector, psi: &StateVector, tol: &Tolerances) -> bool {
    solve_consistency(p.matrix(), psi.amplitudes(), tol).unwrap().holds
}

/// Least-squares verdict on `(I - M) X = Ψ`.
pub fn kernel_oracle(p: &Projector, psi: &StateVector, tol: &Tolerances) -> bool {
    let k = CMatrix::identity(p.dim()).sub(p.matrix());
    solve_consistency(&k, psi.amplitudes(), tol).unwrap().holds
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
