use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::require_weight_zero_input;
use crate::error::Result;
use crate::lattice::EvenLattice;
use crate::rational;
use crate::series::JacobiSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceReport {
    /// gcd of all inner products on `K`.
    pub gcd: i64,
    /// `Σ_l c(0, l)` over the stored `q⁰` row.
    pub sum: BigInt,
    /// `gcd · sum mod 24`.
    pub residue: u32,
    pub passes: bool,
}

/// Borcherds' necessary condition `N · Σ_l c(0, l) ≡ 0 (mod 24)`.
pub fn congruence_check(phi: &JacobiSeries) -> Result<CongruenceReport> {
    require_weight_zero_input("congruence_check", phi)?;
    let gcd = phi.lattice().gcd_inner_products();
    let sum: BigInt = phi
        .level(&rational::int(0))
        .into_iter()
        .map(|(_, c)| c)
        .sum();
    let residue = (BigInt::from(gcd) * &sum).mod_floor(&BigInt::from(24));
    let residue = residue.to_u32().expect("residue below 24");
    Ok(CongruenceReport {
        gcd,
        sum,
        residue,
        passes: residue.is_zero(),
    })
}

/// `<x, y> ∈ 8Z` for all `x, y ∈ K`.
pub fn theorem1_criterion(lattice: &EvenLattice) -> bool {
    lattice.gcd_inner_products() % 8 == 0
}
