//! Weyl vectors of Borcherds products in the Jacobi-form setting.
//!
//! For an input with `q⁰` row `Σ_l c(0, l) ζˡ` the prefactor `q^A r^B s^C`
//! is
//!
//! ```text
//! A = (1/24) Σ_l c(0, l)
//! B = (1/2)  Σ_{<l, w0> > 0} c(0, l) l
//! C = (1/(2 rank K)) Σ_l c(0, l) <l, l>
//! ```
//!
//! following Gritsenko's lattice-index product theorem (his Theorem 4.2).
//! The Weyl chamber is the one containing the generic vector `w0`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::require_weight_zero_input;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::series::JacobiSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylData {
    pub a: Rational,
    /// In `K`-coordinates.
    pub b: Vec<Rational>,
    pub c: Rational,
    pub chamber_vector: Vec<Rational>,
}

/// `(1, 1/10, 1/100, …)`.
pub fn default_chamber(rank: usize) -> Vec<Rational> {
    let mut w = Vec::with_capacity(rank);
    let mut denom = BigInt::from(1);
    for _ in 0..rank {
        w.push(Rational::new(BigInt::from(1), denom.clone()));
        denom *= 10;
    }
    w
}

pub fn weyl_vector(phi: &JacobiSeries, w0: &[Rational]) -> Result<WeylData> {
    require_weight_zero_input("weyl_vector", phi)?;
    let lattice = phi.lattice();
    if w0.len() != lattice.rank() {
        return Err(Error::DimensionMismatch {
            op: "weyl_vector",
            expected: lattice.rank(),
            found: w0.len(),
        });
    }
    let row = phi.level(&rational::int(0));
    let rank = lattice.rank();
    let mut sum = BigInt::zero();
    let mut b = vec![Rational::zero(); rank];
    let mut norm_sum = Rational::zero();
    for (l, c) in &row {
        let side = lattice.pairing(l, w0);
        let is_zero_vector = l.iter().all(Zero::is_zero);
        if side.is_zero() && !is_zero_vector {
            return Err(Error::NonGenericChamber {
                op: "weyl_vector",
                l: rational::format_vec(l),
                c: c.to_string(),
            });
        }
        let c_rat = Rational::from_integer(c.clone());
        sum += c;
        if side.is_positive() {
            for (bi, li) in b.iter_mut().zip(l) {
                *bi += &c_rat * li;
            }
        }
        norm_sum += &c_rat * lattice.pairing(l, l);
    }
    let half = rational::frac(1, 2);
    Ok(WeylData {
        a: Rational::from_integer(sum) / rational::int(24),
        b: b.into_iter().map(|x| x * &half).collect(),
        c: norm_sum / rational::int(2 * rank as i64),
        chamber_vector: w0.to_vec(),
    })
}

impl WeylData {
    /// `(<B, e_1>, …, <B, e_r>) = G · B`.
    pub fn b_pairing(&self, lattice: &crate::lattice::EvenLattice) -> Vec<Rational> {
        lattice.apply(&self.b)
    }
}
