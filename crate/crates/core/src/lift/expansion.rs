//! Truncated expansion of `q^A r^B s^C Π_{(n,l,m) > 0} (1 - qⁿ rˡ s^m)^{c(nm, l)}`.
//!
//! `(n, l, m) > 0` means `m > 0`, or `m = 0, n > 0`, or `n = m = 0` and
//! `<l, w0> < 0`. Monomials are kept while `n + m < total_prec`; the Weyl
//! prefactor is reported separately and not multiplied in.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{congruence_check, require_weight_zero_input, weyl_vector, WeylData};
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::rational::{self, Rational};
use crate::series::JacobiSeries;

/// Exponent `(n, l, m)` of `qⁿ rˡ s^m`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub n: i64,
    pub l: Vec<Rational>,
    pub m: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalExpansion {
    pub lattice: EvenLattice,
    pub weyl: WeylData,
    pub weight: Rational,
    pub total_prec: Rational,
    /// Product coefficients, without the Weyl prefactor.
    pub coeffs: BTreeMap<Monomial, BigInt>,
}

impl OrthogonalExpansion {
    pub fn coefficient(&self, n: i64, l: &[Rational], m: i64) -> BigInt {
        let key = Monomial {
            n,
            l: l.to_vec(),
            m,
        };
        self.coeffs.get(&key).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    n: i64,
    l: Vec<i64>,
    m: i64,
}

impl Key {
    fn degree(&self) -> i64 {
        self.n + self.m
    }

    fn times(&self, k: i64) -> Key {
        Key {
            n: self.n * k,
            l: self.l.iter().map(|x| x * k).collect(),
            m: self.m * k,
        }
    }

    fn plus(&self, other: &Key) -> Key {
        Key {
            n: self.n + other.n,
            l: self.l.iter().zip(&other.l).map(|(a, b)| a + b).collect(),
            m: self.m + other.m,
        }
    }
}

/// A factor `(1 - X)^exponent`.
struct Factor {
    base: Key,
    exponent: BigInt,
}

struct Setup {
    /// Factors with `n = m = 0`.
    constant: Vec<Factor>,
    /// Factors with `n + m >= 1`.
    graded: Vec<Factor>,
    /// Monomials are kept while `n + m < cut`.
    cut: i64,
    l_den: i64,
    weyl: WeylData,
    weight: Rational,
}

fn prepare(phi: &JacobiSeries, total_prec: &Rational, w0: &[Rational]) -> Result<Setup> {
    require_weight_zero_input("lift_expansion", phi)?;
    if phi.min_exp().is_some_and(|e| e.is_negative()) {
        return Err(Error::UnsupportedInput {
            op: "lift_expansion",
            expected: "an input without negative q-exponents".into(),
        });
    }
    let report = congruence_check(phi)?;
    if !report.passes {
        return Err(Error::UnsupportedInput {
            op: "lift_expansion",
            expected: format!(
                "an input satisfying the congruence (N = {}, sum = {}, residue {})",
                report.gcd, report.sum, report.residue
            ),
        });
    }
    let need = total_prec * total_prec / rational::int(4);
    if phi.prec() < &need {
        return Err(Error::InsufficientInputPrecision {
            have: rational::format(phi.prec()),
            need: rational::format(&need),
        });
    }
    let weyl = weyl_vector(phi, w0).map_err(|e| match e {
        Error::NonGenericChamber { l, c, .. } => Error::NonGenericChamber {
            op: "lift_expansion",
            l,
            c,
        },
        other => other,
    })?;

    let lattice = phi.lattice();
    let l_den = phi.l_den();
    let q_den = phi.q_den();
    let mut levels: BTreeMap<i64, Vec<(Vec<i64>, BigInt)>> = BTreeMap::new();
    for (key, c) in phi.keys() {
        levels
            .entry(key.n / q_den)
            .or_default()
            .push((key.l.clone(), c.clone()));
    }
    let cut = rational::ceil_scaled(total_prec, 1);
    let to_rational =
        |l: &[i64]| -> Vec<Rational> { l.iter().map(|&x| rational::frac(x, l_den)).collect() };

    let mut constant = Vec::new();
    let mut graded = Vec::new();
    let row0 = levels.get(&0).cloned().unwrap_or_default();
    for (l, c) in &row0 {
        if lattice.pairing(&to_rational(l), w0).is_negative() {
            if c.is_negative() {
                return Err(Error::NonTruncatableFactor {
                    l: rational::format_vec(&to_rational(l)),
                    exponent: c.to_string(),
                });
            }
            constant.push(Factor {
                base: Key {
                    n: 0,
                    l: l.clone(),
                    m: 0,
                },
                exponent: c.clone(),
            });
        }
    }
    for n in 1..cut {
        for (l, c) in &row0 {
            graded.push(Factor {
                base: Key {
                    n,
                    l: l.clone(),
                    m: 0,
                },
                exponent: c.clone(),
            });
        }
    }
    for m in 1..cut {
        for n in 0..cut - m {
            if let Some(row) = levels.get(&(n * m)) {
                for (l, c) in row {
                    graded.push(Factor {
                        base: Key { n, l: l.clone(), m },
                        exponent: c.clone(),
                    });
                }
            }
        }
    }
    let weight = Rational::new(
        phi.coefficient(&rational::int(0), &vec![Rational::zero(); lattice.rank()])
            .unwrap_or_default(),
        BigInt::from(2),
    );
    Ok(Setup {
        constant,
        graded,
        cut,
        l_den,
        weyl,
        weight,
    })
}

fn finish(
    phi: &JacobiSeries,
    total_prec: &Rational,
    setup: Setup,
    coeffs: HashMap<Key, BigInt>,
) -> OrthogonalExpansion {
    let l_den = setup.l_den;
    let coeffs = coeffs
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            (
                Monomial {
                    n: k.n,
                    l: k.l.iter().map(|&x| rational::frac(x, l_den)).collect(),
                    m: k.m,
                },
                c,
            )
        })
        .collect();
    OrthogonalExpansion {
        lattice: phi.lattice().clone(),
        weyl: setup.weyl,
        weight: setup.weight,
        total_prec: total_prec.clone(),
        coeffs,
    }
}

/// `binom(c, k)` for any integer `c`.
fn binomials(c: &BigInt, count: i64) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    for k in 1..=count {
        let prev = out.last().expect("nonempty");
        let next = prev * (c - BigInt::from(k - 1)) / BigInt::from(k);
        out.push(next);
    }
    out
}

fn multiply_factor(acc: &HashMap<Key, BigInt>, factor: &Factor, cut: i64) -> HashMap<Key, BigInt> {
    let d = factor.base.degree();
    let max_k = if d == 0 {
        factor
            .exponent
            .clone()
            .try_into()
            .expect("constant-factor exponent fits i64")
    } else {
        (cut - 1) / d
    };
    let coeffs = binomials(&factor.exponent, max_k);
    let powers: Vec<(Key, BigInt)> = coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, b)| !b.is_zero())
        .map(|(k, b)| {
            let sign = if k % 2 == 0 { b } else { -b };
            (factor.base.times(k as i64), sign)
        })
        .collect();
    let mut out: HashMap<Key, BigInt> = HashMap::with_capacity(acc.len() * 2);
    for (key, value) in acc {
        for (power, b) in &powers {
            if key.degree() + power.degree() >= cut {
                break;
            }
            *out.entry(key.plus(power)).or_insert_with(BigInt::zero) += value * b;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Expands the product factor by factor with exact binomial series.
pub fn lift_expansion(
    phi: &JacobiSeries,
    total_prec: &Rational,
    w0: &[Rational],
) -> Result<OrthogonalExpansion> {
    let setup = prepare(phi, total_prec, w0)?;
    let rank = phi.lattice().rank();
    let mut acc: HashMap<Key, BigInt> = HashMap::new();
    if setup.cut > 0 {
        acc.insert(
            Key {
                n: 0,
                l: vec![0; rank],
                m: 0,
            },
            BigInt::one(),
        );
    }
    for factor in setup.constant.iter().chain(&setup.graded) {
        acc = multiply_factor(&acc, factor, setup.cut);
    }
    Ok(finish(phi, total_prec, setup, acc))
}

/// Independent route to the same product:
/// `exp(-Σ c(nm, l) Σ_k X^k / k)` over the graded factors, solved degree by
/// degree from `t E_t = Σ_j j L_j E_{t-j}`, times the `n = m = 0` factors
/// multiplied out one `(1 - rˡ)` at a time. Coefficients come back as
/// rationals so callers can check integrality.
pub fn exp_log_expansion(
    phi: &JacobiSeries,
    total_prec: &Rational,
    w0: &[Rational],
) -> Result<BTreeMap<Monomial, Rational>> {
    let setup = prepare(phi, total_prec, w0)?;
    let cut = setup.cut;
    let rank = phi.lattice().rank();
    let zero_key = Key {
        n: 0,
        l: vec![0; rank],
        m: 0,
    };
    if cut <= 0 {
        return Ok(BTreeMap::new());
    }

    // L_d over the common denominator lcm(1, …, cut - 1)
    let lambda = (1..cut.max(2)).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)));
    let mut log: Vec<HashMap<Key, BigInt>> = vec![HashMap::new(); cut as usize];
    for factor in &setup.graded {
        let d = factor.base.degree();
        let mut k = 1;
        while k * d < cut {
            let entry = log[(k * d) as usize]
                .entry(factor.base.times(k))
                .or_insert_with(BigInt::zero);
            *entry -= &factor.exponent * (&lambda / BigInt::from(k));
            k += 1;
        }
    }

    // E_t has denominator lambda^t t!
    let mut exp: Vec<HashMap<Key, BigInt>> = Vec::with_capacity(cut as usize);
    exp.push(HashMap::from([(zero_key.clone(), BigInt::one())]));
    for t in 1..cut {
        let mut current: HashMap<Key, BigInt> = HashMap::new();
        for j in 1..=t {
            let weight = BigInt::from(j)
                * lambda.pow((j - 1) as u32)
                * ((t - j + 1)..t).fold(BigInt::one(), |acc, i| acc * BigInt::from(i));
            for (a, ca) in &log[j as usize] {
                for (b, cb) in &exp[(t - j) as usize] {
                    *current.entry(a.plus(b)).or_insert_with(BigInt::zero) += &weight * ca * cb;
                }
            }
        }
        current.retain(|_, c| !c.is_zero());
        exp.push(current);
    }

    let mut graded: HashMap<Key, Rational> = HashMap::new();
    let mut factorial = BigInt::one();
    for (t, part) in exp.into_iter().enumerate() {
        if t > 0 {
            factorial *= BigInt::from(t);
        }
        let denom = lambda.pow(t as u32) * &factorial;
        for (k, c) in part {
            graded.insert(k, Rational::new(c, denom.clone()));
        }
    }

    let mut constant: HashMap<Key, BigInt> = HashMap::from([(zero_key, BigInt::one())]);
    for factor in &setup.constant {
        let mut count = factor.exponent.clone();
        while count.is_positive() {
            let mut next: HashMap<Key, BigInt> = HashMap::new();
            for (k, c) in &constant {
                *next.entry(k.clone()).or_insert_with(BigInt::zero) += c;
                *next
                    .entry(k.plus(&factor.base))
                    .or_insert_with(BigInt::zero) -= c;
            }
            next.retain(|_, c| !c.is_zero());
            constant = next;
            count -= 1;
        }
    }

    let mut product: HashMap<Key, Rational> = HashMap::new();
    for (a, ca) in &constant {
        for (b, cb) in &graded {
            let value = Rational::from_integer(ca.clone()) * cb;
            *product.entry(a.plus(b)).or_insert_with(Rational::zero) += value;
        }
    }
    let l_den = setup.l_den;
    Ok(product
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            (
                Monomial {
                    n: k.n,
                    l: k.l.iter().map(|&x| rational::frac(x, l_den)).collect(),
                    m: k.m,
                },
                c,
            )
        })
        .collect())
}
