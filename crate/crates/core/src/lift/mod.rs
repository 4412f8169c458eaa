//! Quantities attached to the Borcherds lift of a weight-0 input: principal
//! parts and weights, the congruence obstruction, Weyl vectors and
//! truncated product expansions.

mod congruence;
mod expansion;
mod principal;
mod weyl;

pub use congruence::{congruence_check, theorem1_criterion, CongruenceReport};
pub use expansion::{exp_log_expansion, lift_expansion, Monomial, OrthogonalExpansion};
pub use principal::{
    is_singular, lift_weight, principal_part, singular_weight, validate_principal_part, Check,
    LiftWeight, PrincipalPart, PrincipalPartReport, PrincipalTerm,
};
pub use weyl::{default_chamber, weyl_vector, WeylData};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational;
use crate::series::{FormClass, JacobiSeries};

/// Common precondition: a weight-0 weak Jacobi form with integer exponents
/// and a nonempty precision window.
pub(crate) fn require_weight_zero_input(op: &'static str, phi: &JacobiSeries) -> Result<()> {
    if phi.form_class() != FormClass::WeakJacobi
        || !phi.weight().is_zero()
        || !phi.has_integral_exponents()
    {
        return Err(Error::UnsupportedInput {
            op,
            expected: "a weight-0 weak Jacobi form with integer q-exponents".into(),
        });
    }
    if phi.prec() <= &rational::int(0) {
        return Err(Error::PrecisionTooSmall {
            op,
            prec: rational::format(phi.prec()),
            reason: "the q^0 row is not stored".into(),
        });
    }
    Ok(())
}
