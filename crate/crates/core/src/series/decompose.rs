//! Theta decomposition `φ = Σ_γ f_γ Θ_{K,γ}` and its inverse.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::{FormClass, JacobiSeries, Term};
use crate::error::{Error, Result};
use crate::lattice::{DualVector, EvenLattice};
use crate::rational::{self, Rational};

/// A q-series with rational exponents, known below `prec`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub prec: Rational,
    pub terms: BTreeMap<Rational, BigInt>,
}

impl QSeries {
    pub fn zero(prec: Rational) -> Self {
        QSeries {
            prec,
            terms: BTreeMap::new(),
        }
    }

    pub fn coefficient(&self, exp: &Rational) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `F = Σ_γ f_γ 𝔢_γ`, one component per class of `K'/K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorValuedForm {
    pub lattice: EvenLattice,
    pub weight: Rational,
    /// Sorted by the reduced representative `γ`.
    pub components: Vec<(DualVector, QSeries)>,
}

impl VectorValuedForm {
    pub fn component(&self, gamma: &DualVector) -> Option<&QSeries> {
        let gamma = gamma.reduced();
        self.components
            .binary_search_by(|(g, _)| g.cmp(&gamma))
            .ok()
            .map(|i| &self.components[i].1)
    }

    /// Every exponent `e` of `f_γ` satisfies `e + Q(γ) ∈ Z`.
    pub fn exponents_consistent(&self) -> bool {
        self.components.iter().all(|(gamma, f)| {
            let q = self.lattice.norm(gamma.coords());
            f.terms.keys().all(|e| rational::is_integral(&(e + &q)))
        })
    }

    /// `f_γ = f_{-γ}` for every `γ`.
    pub fn is_symmetric(&self) -> bool {
        self.components.iter().all(|(gamma, f)| {
            self.component(&gamma.neg())
                .is_some_and(|g| g.terms == f.terms)
        })
    }
}

/// `Θ_{K,γ} = Σ_{l ∈ γ+K} q^{Q(l)} ζˡ`, truncated below `prec`.
pub fn theta_component(
    lattice: &EvenLattice,
    gamma: &[Rational],
    prec: &Rational,
) -> Result<JacobiSeries> {
    lattice.check_dual("theta_component", gamma)?;
    let vectors = lattice.enumerate_coset(gamma, prec)?;
    let terms: Vec<Term> = vectors
        .into_iter()
        .filter_map(|l| {
            let n = lattice.norm(l.coords());
            (&n < prec).then(|| Term {
                n,
                l: l.into_coords(),
                c: BigInt::one(),
            })
        })
        .collect();
    let q_den = rational::to_i64(&lattice.q_mod1(gamma)?.denom().clone());
    JacobiSeries::from_terms(
        lattice.clone(),
        rational::frac(lattice.rank() as i64, 2),
        FormClass::Raw,
        q_den,
        prec.clone(),
        terms,
    )
}

/// Reads off `f_γ(n - Q(l)) = c(n, l)` for a weight-0 weak Jacobi form.
///
/// The component `f_γ` is determined below `prec - min_{l ∈ γ+K} Q(l)`. The
/// decomposition is then re-expanded and compared with `φ`, so every
/// stored coefficient (including the implicit zeros) must be consistent
/// with the elliptic shift law.
pub fn theta_decompose(phi: &JacobiSeries) -> Result<VectorValuedForm> {
    if phi.form_class() != FormClass::WeakJacobi || !phi.has_integral_exponents() {
        return Err(Error::UnsupportedInput {
            op: "theta_decompose",
            expected: "a weak Jacobi form with integer q-exponents".into(),
        });
    }
    let lattice = phi.lattice().clone();
    let group = lattice.discriminant_group();
    let mut components: Vec<(DualVector, QSeries)> = Vec::with_capacity(group.order());
    for gamma in group.representatives() {
        let min_norm = lattice.coset_min_norm(gamma.coords())?;
        components.push((gamma.clone(), QSeries::zero(phi.prec() - min_norm)));
    }

    for term in phi.terms() {
        lattice.check_dual("theta_decompose", &term.l)?;
        let l = DualVector::new_unchecked(term.l);
        let index = group.index_of(&l).expect("every dual vector has a class");
        let exp = &term.n - lattice.norm(l.coords());
        let component = &mut components[index].1;
        match component.terms.get(&exp) {
            Some(existing) if existing != &term.c => {
                return Err(Error::ShiftInvarianceViolated {
                    n: rational::format(&term.n),
                    l: l.to_string(),
                });
            }
            _ => {
                component.terms.insert(exp, term.c);
            }
        }
    }

    let form = VectorValuedForm {
        weight: phi.weight() - rational::frac(lattice.rank() as i64, 2),
        lattice,
        components,
    };
    let check = recompose(&form, phi.prec())?;
    if let Some((n, l)) = check.first_disagreement(phi) {
        return Err(Error::ShiftInvarianceViolated {
            n: rational::format(&n),
            l: rational::format_vec(&l),
        });
    }
    Ok(form)
}

/// `Σ_γ f_γ Θ_{K,γ}` below `prec`, lowered if some component is not known
/// far enough to determine it.
pub fn recompose(form: &VectorValuedForm, prec: &Rational) -> Result<JacobiSeries> {
    let lattice = &form.lattice;
    let mut prec = prec.clone();
    for (gamma, f) in &form.components {
        let supported = &f.prec + lattice.coset_min_norm(gamma.coords())?;
        if supported < prec {
            prec = supported;
        }
    }
    let mut terms: Vec<Term> = Vec::new();
    for (gamma, f) in &form.components {
        let Some(lowest) = f.min_exp() else {
            continue;
        };
        let vectors = lattice.enumerate_coset(gamma.coords(), &(&prec - lowest))?;
        for l in vectors {
            let q = lattice.norm(l.coords());
            for (e, c) in &f.terms {
                let n = e + &q;
                if n >= prec {
                    break;
                }
                terms.push(Term {
                    n,
                    l: l.coords().to_vec(),
                    c: c.clone(),
                });
            }
        }
    }
    let q_den = terms
        .iter()
        .fold(BigInt::one(), |acc, t| acc.lcm(t.n.denom()));
    let weight = &form.weight + rational::frac(lattice.rank() as i64, 2);
    let series = JacobiSeries::from_terms(
        lattice.clone(),
        weight,
        FormClass::WeakJacobi,
        rational::to_i64(&q_den),
        prec,
        terms,
    )?;
    Ok(series)
}
