//! Sparse exact Fourier expansions `Σ c(n, l) qⁿ ζˡ` of lattice index.
//!
//! Exponents are exact rationals. Internally a series fixes two
//! denominators, `q_den` for `n` and `l_den` for the coordinates of `l`, and
//! keys every term by integer numerators, so the `BTreeMap` order is the
//! canonical `(n, lex l)` order.

mod decompose;
mod theta;

pub use decompose::{recompose, theta_component, theta_decompose, QSeries, VectorValuedForm};
pub use theta::{
    direct_product, direct_product_with_budget, phi04, phi_n, phi_n_with_budget, rescale_elliptic,
    theta_sum, theta_triple_product, DEFAULT_BUDGET,
};

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::rational::{self, Rational};

/// Which invariants a series is expected to satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormClass {
    /// Building blocks such as `ϑ`: fractional q-exponents, `l` possibly outside `K'`.
    Raw,
    /// Integer q-exponents, `l ∈ K'`, invariant under the elliptic shifts.
    WeakJacobi,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Key {
    pub n: i64,
    pub l: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiSeries {
    lattice: EvenLattice,
    weight: Rational,
    class: FormClass,
    q_den: i64,
    l_den: i64,
    prec: Rational,
    terms: BTreeMap<Key, BigInt>,
}

/// One term `c · qⁿ ζˡ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub n: Rational,
    pub l: Vec<Rational>,
    pub c: BigInt,
}

impl JacobiSeries {
    pub(crate) fn from_keys(
        lattice: EvenLattice,
        weight: Rational,
        class: FormClass,
        q_den: i64,
        l_den: i64,
        prec: Rational,
        terms: BTreeMap<Key, BigInt>,
    ) -> Self {
        let mut series = JacobiSeries {
            lattice,
            weight,
            class,
            q_den,
            l_den,
            prec,
            terms,
        };
        series.terms.retain(|_, c| !c.is_zero());
        let cut = series.cut();
        series.terms.retain(|k, _| k.n < cut);
        series
    }

    /// Builds a series from rational terms; repeated exponents are summed and
    /// terms at or above `prec` are dropped. Every `n` must lie in `(1/q_den)Z`.
    pub fn from_terms(
        lattice: EvenLattice,
        weight: Rational,
        class: FormClass,
        q_den: i64,
        prec: Rational,
        terms: impl IntoIterator<Item = Term>,
    ) -> Result<Self> {
        if q_den <= 0 {
            return Err(Error::UnsupportedInput {
                op: "JacobiSeries::from_terms",
                expected: "a positive q_den".into(),
            });
        }
        let terms: Vec<Term> = terms.into_iter().collect();
        let mut l_den = 1i64;
        for term in &terms {
            if term.l.len() != lattice.rank() {
                return Err(Error::DimensionMismatch {
                    op: "JacobiSeries::from_terms",
                    expected: lattice.rank(),
                    found: term.l.len(),
                });
            }
            if !(&term.n * rational::int(q_den)).is_integer() {
                return Err(Error::UnsupportedInput {
                    op: "JacobiSeries::from_terms",
                    expected: format!("q-exponent {} in (1/{q_den})Z", rational::format(&term.n)),
                });
            }
            l_den = l_den.lcm(&rational::to_i64(&rational::common_denominator(&term.l)));
        }
        let mut map = BTreeMap::new();
        for term in terms {
            let key = Key {
                n: rational::scaled_numerator(&term.n, q_den),
                l: term
                    .l
                    .iter()
                    .map(|x| rational::scaled_numerator(x, l_den))
                    .collect(),
            };
            *map.entry(key).or_insert_with(BigInt::zero) += term.c;
        }
        Ok(Self::from_keys(
            lattice, weight, class, q_den, l_den, prec, map,
        ))
    }

    pub fn zero(lattice: EvenLattice, weight: Rational, class: FormClass, prec: Rational) -> Self {
        Self::from_keys(lattice, weight, class, 1, 1, prec, BTreeMap::new())
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn weight(&self) -> &Rational {
        &self.weight
    }

    pub fn form_class(&self) -> FormClass {
        self.class
    }

    /// All q-exponents lie in `(1/q_den)Z`.
    pub fn q_den(&self) -> i64 {
        self.q_den
    }

    /// Coefficients are stored for q-exponents strictly below `prec`.
    pub fn prec(&self) -> &Rational {
        &self.prec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exclusive upper bound on scaled q-exponent numerators.
    fn cut(&self) -> i64 {
        rational::ceil_scaled(&self.prec, self.q_den)
    }

    fn n_of(&self, key: &Key) -> Rational {
        rational::frac(key.n, self.q_den)
    }

    fn l_of(&self, key: &Key) -> Vec<Rational> {
        key.l
            .iter()
            .map(|&x| rational::frac(x, self.l_den))
            .collect()
    }

    /// Smallest stored q-exponent.
    pub fn min_exp(&self) -> Option<Rational> {
        self.terms.keys().next().map(|k| self.n_of(k))
    }

    /// Lower bound on the q-valuation, `prec` for the zero series.
    fn valuation(&self) -> Rational {
        self.min_exp().unwrap_or_else(|| self.prec.clone())
    }

    /// Terms in canonical `(n, lex l)` order.
    pub fn terms(&self) -> impl Iterator<Item = Term> + '_ {
        self.terms.iter().map(|(k, c)| Term {
            n: self.n_of(k),
            l: self.l_of(k),
            c: c.clone(),
        })
    }

    /// `c(n, l)`, or `None` when `n` is outside the precision window.
    pub fn coefficient(&self, n: &Rational, l: &[Rational]) -> Option<BigInt> {
        if n >= &self.prec || l.len() != self.lattice.rank() {
            return None;
        }
        let scaled_n = n * rational::int(self.q_den);
        let scaled_l: Vec<Rational> = l.iter().map(|x| x * rational::int(self.l_den)).collect();
        if !scaled_n.is_integer() || !scaled_l.iter().all(Rational::is_integer) {
            return Some(BigInt::zero());
        }
        let key = Key {
            n: rational::to_i64(&scaled_n.to_integer()),
            l: scaled_l
                .iter()
                .map(|x| rational::to_i64(&x.to_integer()))
                .collect(),
        };
        Some(self.terms.get(&key).cloned().unwrap_or_default())
    }

    /// The row `Σ_l c(n, l) ζˡ` at one q-exponent.
    pub fn level(&self, n: &Rational) -> Vec<(Vec<Rational>, BigInt)> {
        let scaled = n * rational::int(self.q_den);
        if !scaled.is_integer() {
            return Vec::new();
        }
        let n = rational::to_i64(&scaled.to_integer());
        self.terms
            .iter()
            .filter(|(k, _)| k.n == n)
            .map(|(k, c)| (self.l_of(k), c.clone()))
            .collect()
    }

    /// Same series with the precision lowered to `prec` (never raised).
    pub fn truncate(&self, prec: &Rational) -> Self {
        let prec = prec.min(&self.prec).clone();
        Self::from_keys(
            self.lattice.clone(),
            self.weight.clone(),
            self.class,
            self.q_den,
            self.l_den,
            prec,
            self.terms.clone(),
        )
    }

    pub fn with_class(mut self, class: FormClass) -> Self {
        self.class = class;
        self
    }

    /// Keys rescaled to denominators `q_den * qs`, `l_den * ls`.
    fn rescaled(&self, qs: i64, ls: i64) -> Vec<(Key, BigInt)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                (
                    Key {
                        n: k.n * qs,
                        l: k.l.iter().map(|x| x * ls).collect(),
                    },
                    c.clone(),
                )
            })
            .collect()
    }

    /// Exact comparison on the common precision window.
    pub fn agrees_with(&self, other: &JacobiSeries) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// First `(n, l)` in the common precision window where the series differ.
    pub fn first_disagreement(&self, other: &JacobiSeries) -> Option<(Rational, Vec<Rational>)> {
        if self.lattice != other.lattice {
            return Some((Rational::zero(), Vec::new()));
        }
        let window = self.prec.clone().min(other.prec.clone());
        let qd = self.q_den.lcm(&other.q_den);
        let ld = self.l_den.lcm(&other.l_den);
        let cut = rational::ceil_scaled(&window, qd);
        let collect = |s: &JacobiSeries| -> BTreeMap<Key, BigInt> {
            s.rescaled(qd / s.q_den, ld / s.l_den)
                .into_iter()
                .filter(|(k, _)| k.n < cut)
                .collect()
        };
        let (a, b) = (collect(self), collect(other));
        let differs = a
            .iter()
            .find(|(k, c)| b.get(*k) != Some(*c))
            .or_else(|| b.iter().find(|(k, c)| a.get(*k) != Some(*c)));
        differs.map(|(k, _)| {
            (
                rational::frac(k.n, qd),
                k.l.iter().map(|&x| rational::frac(x, ld)).collect(),
            )
        })
    }

    fn check_same_lattice(&self, other: &JacobiSeries, op: &'static str) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch { op });
        }
        Ok(())
    }

    pub fn add(&self, other: &JacobiSeries) -> Result<JacobiSeries> {
        self.check_same_lattice(other, "add")?;
        let qd = self.q_den.lcm(&other.q_den);
        let ld = self.l_den.lcm(&other.l_den);
        let mut map: BTreeMap<Key, BigInt> = self
            .rescaled(qd / self.q_den, ld / self.l_den)
            .into_iter()
            .collect();
        for (k, c) in other.rescaled(qd / other.q_den, ld / other.l_den) {
            *map.entry(k).or_insert_with(BigInt::zero) += c;
        }
        let class = join_class(self.class, other.class);
        let prec = self.prec.clone().min(other.prec.clone());
        Ok(Self::from_keys(
            self.lattice.clone(),
            self.weight.clone(),
            class,
            qd,
            ld,
            prec,
            map,
        ))
    }

    pub fn scale(&self, factor: &BigInt) -> JacobiSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Product on the same lattice; weights add and the precision is the
    /// smallest window on which both factors determine the product.
    pub fn mul(&self, other: &JacobiSeries) -> Result<JacobiSeries> {
        self.check_same_lattice(other, "mul")?;
        let prec = product_precision(self, other);
        let qd = self.q_den.lcm(&other.q_den);
        let ld = self.l_den.lcm(&other.l_den);
        let cut = rational::ceil_scaled(&prec, qd);
        let a = self.rescaled(qd / self.q_den, ld / self.l_den);
        let b = other.rescaled(qd / other.q_den, ld / other.l_den);
        let map = convolve(&a, &b, cut, |x, y| {
            x.iter().zip(y).map(|(p, q)| p + q).collect()
        });
        Ok(Self::from_keys(
            self.lattice.clone(),
            &self.weight + &other.weight,
            join_class(self.class, other.class),
            qd,
            ld,
            prec,
            map,
        ))
    }

    /// Checks `c(n, l) = c(n, -l)` on the stored support.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(k, c)| {
            let neg = Key {
                n: k.n,
                l: k.l.iter().map(|x| -x).collect(),
            };
            self.terms.get(&neg) == Some(c)
        })
    }

    /// All q-exponents are integers.
    pub fn has_integral_exponents(&self) -> bool {
        self.terms.keys().all(|k| k.n % self.q_den == 0)
    }

    pub(crate) fn keys(&self) -> &BTreeMap<Key, BigInt> {
        &self.terms
    }

    pub(crate) fn l_den(&self) -> i64 {
        self.l_den
    }
}

fn join_class(a: FormClass, b: FormClass) -> FormClass {
    if a == FormClass::WeakJacobi && b == FormClass::WeakJacobi {
        FormClass::WeakJacobi
    } else {
        FormClass::Raw
    }
}

/// `min(p_a, p_b, p_a + v_b, p_b + v_a)` with `v` the valuations.
pub(crate) fn product_precision(a: &JacobiSeries, b: &JacobiSeries) -> Rational {
    let candidates = [
        a.prec.clone(),
        b.prec.clone(),
        &a.prec + b.valuation(),
        &b.prec + a.valuation(),
    ];
    candidates.into_iter().min().expect("nonempty")
}

/// Sparse product of two term lists, keeping scaled q-exponents below `cut`.
/// The outer loop is split across the rayon pool; integer sums make the
/// result independent of the split.
pub(crate) fn convolve<F>(
    a: &[(Key, BigInt)],
    b: &[(Key, BigInt)],
    cut: i64,
    join: F,
) -> BTreeMap<Key, BigInt>
where
    F: Fn(&[i64], &[i64]) -> Vec<i64> + Sync,
{
    let mut b_sorted: Vec<&(Key, BigInt)> = b.iter().collect();
    b_sorted.sort_by_key(|(k, _)| k.n);
    let merged = a
        .par_iter()
        .fold(HashMap::<Key, BigInt>::new, |mut acc, (ka, ca)| {
            let limit = cut - ka.n;
            let end = b_sorted.partition_point(|(kb, _)| kb.n < limit);
            for (kb, cb) in &b_sorted[..end] {
                let key = Key {
                    n: ka.n + kb.n,
                    l: join(&ka.l, &kb.l),
                };
                *acc.entry(key).or_insert_with(BigInt::zero) += ca * cb;
            }
            acc
        })
        .reduce(HashMap::new, |mut x, y| {
            if x.len() < y.len() {
                return merge_into(y, x);
            }
            for (k, c) in y {
                *x.entry(k).or_insert_with(BigInt::zero) += c;
            }
            x
        });
    merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn merge_into(mut into: HashMap<Key, BigInt>, from: HashMap<Key, BigInt>) -> HashMap<Key, BigInt> {
    for (k, c) in from {
        *into.entry(k).or_insert_with(BigInt::zero) += c;
    }
    into
}

pub(crate) fn ensure_positive_prec(
    op: &'static str,
    prec: &Rational,
    min: &Rational,
) -> Result<()> {
    if prec < min || (min.is_zero() && !prec.is_positive()) {
        return Err(Error::PrecisionTooSmall {
            op,
            prec: rational::format(prec),
            reason: if min.is_zero() {
                "must be positive".into()
            } else {
                format!("must be at least {}", rational::format(min))
            },
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_gram;
    use crate::rational::{frac, int};

    fn k8() -> EvenLattice {
        validate_gram(vec![vec![8]]).unwrap()
    }

    fn series(prec: i64, terms: &[(i64, i64, i64)]) -> JacobiSeries {
        // (n, l in units of 1/8, c)
        JacobiSeries::from_terms(
            k8(),
            int(0),
            FormClass::WeakJacobi,
            1,
            int(prec),
            terms.iter().map(|&(n, l, c)| Term {
                n: int(n),
                l: vec![frac(l, 8)],
                c: BigInt::from(c),
            }),
        )
        .unwrap()
    }

    #[test]
    fn from_terms_normalizes() {
        let s = series(3, &[(0, 1, 1), (0, 1, 2), (1, 0, 5), (1, 0, -5), (4, 0, 1)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coefficient(&int(0), &[frac(1, 8)]), Some(BigInt::from(3)));
        assert_eq!(s.coefficient(&int(2), &[frac(1, 8)]), Some(BigInt::zero()));
        assert_eq!(s.coefficient(&int(3), &[frac(1, 8)]), None);
        let bad = JacobiSeries::from_terms(
            k8(),
            int(0),
            FormClass::Raw,
            2,
            int(1),
            [Term {
                n: frac(1, 3),
                l: vec![int(0)],
                c: BigInt::from(1),
            }],
        );
        assert!(matches!(bad, Err(Error::UnsupportedInput { .. })));
    }

    #[test]
    fn product_precision_is_min_for_holomorphic_factors() {
        let a = series(5, &[(0, 0, 1), (1, 1, 1)]);
        let b = series(3, &[(0, 0, 1), (2, -1, 1)]);
        let p = a.mul(&b).unwrap();
        assert_eq!(p.prec(), &int(3));
        assert_eq!(p.coefficient(&int(1), &[frac(1, 8)]), Some(BigInt::from(1)));
        assert_eq!(
            p.coefficient(&int(2), &[frac(-1, 8)]),
            Some(BigInt::from(1))
        );
        assert_eq!(p.coefficient(&int(3), &[int(0)]), None);
    }

    #[test]
    fn product_precision_shrinks_with_poles() {
        let a = series(4, &[(0, 0, 1)]);
        let polar = JacobiSeries::from_terms(
            k8(),
            int(0),
            FormClass::WeakJacobi,
            1,
            int(4),
            [Term {
                n: int(-1),
                l: vec![int(0)],
                c: BigInt::from(1),
            }],
        )
        .unwrap();
        assert_eq!(a.mul(&polar).unwrap().prec(), &int(3));
    }

    #[test]
    fn mixed_denominators_agree() {
        let a = series(2, &[(0, 2, 1)]);
        let b = JacobiSeries::from_terms(
            k8(),
            int(0),
            FormClass::WeakJacobi,
            4,
            int(2),
            [Term {
                n: int(0),
                l: vec![frac(4, 16)],
                c: BigInt::from(1),
            }],
        )
        .unwrap();
        assert!(a.agrees_with(&b));
        let c = series(1, &[(0, 2, 1), (1, 0, 7)]);
        assert!(a.agrees_with(&c));
        let d = series(2, &[(0, 2, 1), (1, 0, 7)]);
        assert_eq!(a.first_disagreement(&d), Some((int(1), vec![int(0)])));
    }

    #[test]
    fn lattice_mismatch() {
        let other = JacobiSeries::zero(
            validate_gram(vec![vec![2]]).unwrap(),
            int(0),
            FormClass::Raw,
            int(1),
        );
        assert!(matches!(
            series(1, &[]).mul(&other),
            Err(Error::LatticeMismatch { .. })
        ));
    }
}
