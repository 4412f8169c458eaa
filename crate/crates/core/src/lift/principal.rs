use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::lattice::EvenLattice;
use crate::rational::{self, Rational};
use crate::series::VectorValuedForm;

/// One principal-part entry `c · q^exp 𝔢_γ`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PrincipalTerm {
    pub exp: Rational,
    pub gamma: Vec<Rational>,
    pub c: BigInt,
}

/// Negative-exponent part of a vector-valued input together with `c(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalPart {
    pub lattice: EvenLattice,
    pub constant_term: BigInt,
    /// Kept as a list so that duplicate entries survive parsing and are
    /// reported by validation.
    pub terms: Vec<PrincipalTerm>,
    /// Weight the lift is claimed to have, when known.
    pub claimed_weight: Option<Rational>,
}

impl PrincipalPart {
    /// Sorts the entries by `(exp, γ)`.
    pub fn canonicalize(&mut self) {
        self.terms.sort();
    }
}

pub fn principal_part(form: &VectorValuedForm) -> PrincipalPart {
    let zero = rational::int(0);
    let mut constant_term = BigInt::zero();
    let mut terms = Vec::new();
    for (gamma, f) in &form.components {
        if gamma.is_zero() {
            constant_term = f.coefficient(&zero);
        }
        for (exp, c) in f.terms.range(..zero.clone()) {
            terms.push(PrincipalTerm {
                exp: exp.clone(),
                gamma: gamma.coords().to_vec(),
                c: c.clone(),
            });
        }
    }
    terms.sort();
    PrincipalPart {
        lattice: form.lattice.clone(),
        constant_term,
        terms,
        claimed_weight: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftWeight {
    pub weight: Rational,
    pub half_integral: bool,
}

/// The lift has weight `c(0, 0) / 2`.
pub fn lift_weight(pp: &PrincipalPart) -> LiftWeight {
    LiftWeight {
        weight: Rational::new(pp.constant_term.clone(), BigInt::from(2)),
        half_integral: pp.constant_term.is_odd(),
    }
}

/// `l/2 - 1` for `L = K ⊕ 2U` of signature `(rank + 2, 2)`, i.e. `rank/2`.
pub fn singular_weight(lattice: &EvenLattice) -> Rational {
    rational::frac(lattice.rank() as i64 + 2, 2) - rational::int(1)
}

pub fn is_singular(pp: &PrincipalPart) -> bool {
    lift_weight(pp).weight == singular_weight(&pp.lattice)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub offenders: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrincipalPartReport {
    pub checks: Vec<Check>,
    pub weight: LiftWeight,
    pub singular_weight: Rational,
    pub singular: bool,
}

impl PrincipalPartReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn check(name: &'static str, offenders: Vec<String>) -> Check {
    Check {
        name,
        passed: offenders.is_empty(),
        offenders,
    }
}

fn describe(term: &PrincipalTerm) -> String {
    format!(
        "{} q^{} e_{}",
        term.c,
        rational::format(&term.exp),
        rational::format_vec(&term.gamma)
    )
}

/// Structural diagnostics for a principal part; never fails.
pub fn validate_principal_part(pp: &PrincipalPart) -> PrincipalPartReport {
    let lattice = &pp.lattice;
    let zero = rational::int(0);
    let one = rational::int(1);

    let mut dual = Vec::new();
    let mut reduced = Vec::new();
    let mut negative = Vec::new();
    let mut class = Vec::new();
    for term in &pp.terms {
        if !lattice.is_in_dual(&term.gamma) {
            dual.push(describe(term));
            continue;
        }
        if term.gamma.iter().any(|x| x < &zero || x >= &one) {
            reduced.push(describe(term));
        }
        if term.exp >= zero {
            negative.push(describe(term));
        }
        let q = lattice.norm(&term.gamma);
        if !rational::is_integral(&(&term.exp + &q)) {
            class.push(format!("{} (Q = {})", describe(term), rational::format(&q)));
        }
    }

    let mut symmetry = Vec::new();
    let mut table: BTreeMap<(Vec<Rational>, Rational), BigInt> = BTreeMap::new();
    for term in pp.terms.iter().filter(|t| lattice.is_in_dual(&t.gamma)) {
        let key = (rational::mod_one_vec(&term.gamma), term.exp.clone());
        if table.insert(key, term.c.clone()).is_some() {
            symmetry.push(format!("duplicate entry {}", describe(term)));
        }
    }
    for ((gamma, exp), c) in &table {
        let neg: Vec<Rational> = gamma.iter().map(|x| rational::mod_one(&-x)).collect();
        let partner = table.get(&(neg.clone(), exp.clone()));
        if partner != Some(c) {
            symmetry.push(format!(
                "{c} q^{} e_{} has partner {} at {}",
                rational::format(exp),
                rational::format_vec(gamma),
                partner.map_or("missing".to_string(), ToString::to_string),
                rational::format_vec(&neg)
            ));
        }
    }

    let weight = lift_weight(pp);
    let mut weight_issues = Vec::new();
    if pp.constant_term.is_negative() {
        weight_issues.push(format!("constant term {} is negative", pp.constant_term));
    }
    if let Some(claimed) = &pp.claimed_weight {
        let claimed_half = !claimed.is_integer() && (claimed * rational::int(2)).is_integer();
        if claimed_half != weight.half_integral {
            weight_issues.push(format!(
                "constant term {} has the wrong parity for weight {}",
                pp.constant_term,
                rational::format(claimed)
            ));
        } else if claimed != &weight.weight {
            weight_issues.push(format!(
                "constant term {} gives weight {}, claimed {}",
                pp.constant_term,
                rational::format(&weight.weight),
                rational::format(claimed)
            ));
        }
    }

    let singular_weight = singular_weight(lattice);
    PrincipalPartReport {
        checks: vec![
            check("dual_membership", dual),
            check("reduced_representatives", reduced),
            check("negative_exponents", negative),
            check("exponent_class", class),
            check("symmetry", symmetry),
            check("weight", weight_issues),
        ],
        singular: weight.weight == singular_weight,
        weight,
        singular_weight,
    }
}
