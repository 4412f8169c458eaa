//! The odd Jacobi theta function, the quotient `φ₀,₄ = ϑ(τ,3z)/ϑ(τ,z)` and
//! its direct products `φ_N` of index `8Z^N`.
//!
//! All of these live on `K = [[8]]` (or sums of it), where the scalar
//! variable `ζ = e(z)` is `ζ^l` with `l = 1/8`, and `ζ^{1/2}` is `l = 1/16`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{convolve, ensure_positive_prec, product_precision, FormClass, JacobiSeries, Key};
use crate::error::{Error, Result};
use crate::lattice::{validate_gram, EvenLattice};
use crate::rational::{self, Rational};

/// Default cap on stored coefficients for `phi_n`.
pub const DEFAULT_BUDGET: usize = 10_000_000;

fn index_eight() -> EvenLattice {
    validate_gram(vec![vec![8]]).expect("[[8]] is even and positive definite")
}

/// Kronecker symbol `(-4/n)`.
fn chi_minus_four(n: i64) -> i64 {
    match n.rem_euclid(4) {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// `ϑ(τ, z) = Σ_n (-4/n) q^{n²/8} ζ^{n/2}`, summed directly.
pub fn theta_sum(prec: &Rational) -> Result<JacobiSeries> {
    ensure_positive_prec("theta_sum", prec, &Rational::zero())?;
    // q-exponents in units of 1/8, l in units of 1/16: the n-th term sits at (n², n)
    let cut = rational::ceil_scaled(prec, 8);
    let mut terms = BTreeMap::new();
    let mut n = 1i64;
    while n * n < cut {
        for m in [n, -n] {
            terms.insert(
                Key {
                    n: m * m,
                    l: vec![m],
                },
                BigInt::from(chi_minus_four(m)),
            );
        }
        n += 2;
    }
    Ok(JacobiSeries::from_keys(
        index_eight(),
        rational::frac(1, 2),
        FormClass::Raw,
        8,
        16,
        prec.clone(),
        terms,
    ))
}

/// Multiplies `acc` in place by `(1 - qᵃ ζ^b)`, keeping scaled exponents below `cut`.
fn times_one_minus(acc: &mut BTreeMap<Key, BigInt>, shift: &Key, cut: i64) {
    let shifted: Vec<(Key, BigInt)> = acc
        .iter()
        .filter(|(k, _)| k.n + shift.n < cut)
        .map(|(k, c)| (add_keys(k, shift), c.clone()))
        .collect();
    for (k, c) in shifted {
        *acc.entry(k).or_insert_with(BigInt::zero) -= c;
    }
    acc.retain(|_, c| !c.is_zero());
}

/// Multiplies `acc` in place by `1/(1 - qᵃ ζ^b) = Σ_j (qᵃ ζ^b)^j` for `a > 0`.
fn times_geometric(acc: &mut BTreeMap<Key, BigInt>, shift: &Key, cut: i64) {
    debug_assert!(shift.n > 0);
    // result = acc + shift · result, resolved in increasing n
    let mut out: BTreeMap<Key, BigInt> = BTreeMap::new();
    let mut pending: BTreeMap<Key, BigInt> = acc.clone();
    while let Some((k, c)) = pending.pop_first() {
        let next = add_keys(&k, shift);
        if next.n < cut {
            *pending.entry(next).or_insert_with(BigInt::zero) += &c;
        }
        *out.entry(k).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    *acc = out;
}

fn add_keys(a: &Key, b: &Key) -> Key {
    Key {
        n: a.n + b.n,
        l: a.l.iter().zip(&b.l).map(|(x, y)| x + y).collect(),
    }
}

/// `ϑ(τ, z) = q^{1/8}(ζ^{1/2} - ζ^{-1/2}) Π_{n≥1}(1 - qⁿζ)(1 - qⁿζ⁻¹)(1 - qⁿ)`,
/// expanded from the finitely many factors that reach below `prec`.
pub fn theta_triple_product(prec: &Rational) -> Result<JacobiSeries> {
    ensure_positive_prec("theta_triple_product", prec, &Rational::zero())?;
    let cut = rational::ceil_scaled(prec, 8);
    let mut acc = BTreeMap::new();
    if 1 < cut {
        acc.insert(Key { n: 1, l: vec![1] }, BigInt::one());
        acc.insert(Key { n: 1, l: vec![-1] }, -BigInt::one());
    }
    let mut k = 1i64;
    while 1 + 8 * k < cut {
        for l in [2, -2, 0] {
            times_one_minus(
                &mut acc,
                &Key {
                    n: 8 * k,
                    l: vec![l],
                },
                cut,
            );
        }
        k += 1;
    }
    acc.retain(|_, c| !c.is_zero());
    Ok(JacobiSeries::from_keys(
        index_eight(),
        rational::frac(1, 2),
        FormClass::Raw,
        8,
        16,
        prec.clone(),
        acc,
    ))
}

/// `φ(τ, z) ↦ φ(τ, a·z)`: every `l` is multiplied by `a`.
pub fn rescale_elliptic(phi: &JacobiSeries, a: u32) -> JacobiSeries {
    let a = i64::from(a);
    let mut terms: BTreeMap<Key, BigInt> = BTreeMap::new();
    for (k, c) in &phi.terms {
        let key = Key {
            n: k.n,
            l: k.l.iter().map(|x| x * a).collect(),
        };
        // a = 0 collapses every l onto 0
        *terms.entry(key).or_insert_with(BigInt::zero) += c;
    }
    JacobiSeries::from_keys(
        phi.lattice.clone(),
        phi.weight.clone(),
        phi.class,
        phi.q_den,
        phi.l_den,
        phi.prec.clone(),
        terms,
    )
}

/// `φ₀,₄ = ϑ(τ,3z)/ϑ(τ,z)`, weight 0 and index `[[8]]`.
///
/// Built without series division: the leading factors give exactly
/// `ζ + 1 + ζ⁻¹`, the `(1 - qⁿ)` factors cancel, the numerator contributes
/// `(1 - qⁿζ³)(1 - qⁿζ⁻³)` and each `(1 - qⁿζ^{±1})⁻¹` is a geometric series.
pub fn phi04(prec: &Rational) -> Result<JacobiSeries> {
    ensure_positive_prec("phi04", prec, &Rational::one())?;
    let cut = rational::ceil_scaled(prec, 1);
    let mut acc: BTreeMap<Key, BigInt> = [-1, 0, 1]
        .into_iter()
        .map(|l| (Key { n: 0, l: vec![l] }, BigInt::one()))
        .collect();
    for k in 1..cut {
        for l in [3, -3] {
            times_one_minus(&mut acc, &Key { n: k, l: vec![l] }, cut);
        }
        for l in [1, -1] {
            times_geometric(&mut acc, &Key { n: k, l: vec![l] }, cut);
        }
    }
    Ok(JacobiSeries::from_keys(
        index_eight(),
        Rational::zero(),
        FormClass::WeakJacobi,
        1,
        8,
        prec.clone(),
        acc,
    ))
}

/// `(φ₁ ⊗ φ₂)(τ, z₁, z₂) = φ₁(τ, z₁) φ₂(τ, z₂)` on `K₁ ⊕ K₂`.
pub fn direct_product(a: &JacobiSeries, b: &JacobiSeries) -> Result<JacobiSeries> {
    direct_product_with_budget(a, b, usize::MAX)
}

pub fn direct_product_with_budget(
    a: &JacobiSeries,
    b: &JacobiSeries,
    budget: usize,
) -> Result<JacobiSeries> {
    if a.prec != b.prec {
        return Err(Error::IncompatiblePrecision {
            op: "direct_product",
            detail: format!(
                "factors truncated at {} and {}",
                rational::format(&a.prec),
                rational::format(&b.prec)
            ),
        });
    }
    let prec = product_precision(a, b);
    let qd = a.q_den.lcm(&b.q_den);
    let ld = a.l_den.lcm(&b.l_den);
    let cut = rational::ceil_scaled(&prec, qd);
    let ta = a.rescaled(qd / a.q_den, ld / a.l_den);
    let tb = b.rescaled(qd / b.q_den, ld / b.l_den);
    let map = convolve(&ta, &tb, cut, |x, y| x.iter().chain(y).copied().collect());
    if map.len() > budget {
        return Err(Error::ResourceLimit {
            op: "direct_product",
            budget,
            needed: map.len(),
        });
    }
    let class = if a.class == FormClass::WeakJacobi && b.class == FormClass::WeakJacobi {
        FormClass::WeakJacobi
    } else {
        FormClass::Raw
    };
    Ok(JacobiSeries::from_keys(
        a.lattice.direct_sum(&b.lattice),
        &a.weight + &b.weight,
        class,
        qd,
        ld,
        prec,
        map,
    ))
}

/// `φ_N(τ, z₁, …, z_N) = φ₀,₄(τ, z₁) ⋯ φ₀,₄(τ, z_N)` of index `8Z^N`.
pub fn phi_n(count: usize, prec: &Rational) -> Result<JacobiSeries> {
    phi_n_with_budget(count, prec, DEFAULT_BUDGET)
}

pub fn phi_n_with_budget(count: usize, prec: &Rational, budget: usize) -> Result<JacobiSeries> {
    if count == 0 {
        return Err(Error::UnsupportedInput {
            op: "phi_n",
            expected: "N >= 1".into(),
        });
    }
    let base = phi04(prec)?;
    if base.len() > budget {
        return Err(Error::ResourceLimit {
            op: "phi_n",
            budget,
            needed: base.len(),
        });
    }
    let mut acc = base.clone();
    for _ in 1..count {
        acc = direct_product_with_budget(&acc, &base, budget).map_err(|e| match e {
            Error::ResourceLimit { budget, needed, .. } => Error::ResourceLimit {
                op: "phi_n",
                budget,
                needed,
            },
            other => other,
        })?;
    }
    Ok(acc)
}
