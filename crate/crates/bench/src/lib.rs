//! Fixed workloads shared by the criterion benchmarks.

use borcherds_core::lift::{default_chamber, exp_log_expansion, lift_expansion};
use borcherds_core::rational::int;
use borcherds_core::series::{phi04, phi_n, theta_decompose};
use borcherds_core::{fixtures, DualVector, JacobiSeries};

pub fn build_phi(count: usize, prec: i64) -> JacobiSeries {
    phi_n(count, &int(prec)).expect("phi_n")
}

pub fn decompose(phi: &JacobiSeries) -> usize {
    theta_decompose(phi)
        .expect("weak Jacobi input")
        .components
        .len()
}

/// Dual vectors of norm at most `bound` on the first example lattice.
pub fn enumerate_example1(bound: i64) -> Vec<DualVector> {
    fixtures::example1_lattice().enumerate_dual_vectors(&int(bound))
}

pub fn phi04_input(total_prec: i64) -> JacobiSeries {
    phi04(&int(total_prec * total_prec / 4 + 1)).expect("phi04")
}

pub fn direct_lift(phi: &JacobiSeries, total_prec: i64) -> usize {
    lift_expansion(
        phi,
        &int(total_prec),
        &default_chamber(phi.lattice().rank()),
    )
    .expect("lift")
    .coeffs
    .len()
}

pub fn exp_log_lift(phi: &JacobiSeries, total_prec: i64) -> usize {
    exp_log_expansion(
        phi,
        &int(total_prec),
        &default_chamber(phi.lattice().rank()),
    )
    .expect("lift")
    .len()
}
