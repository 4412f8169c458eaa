#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;

use borcherds_core::fixtures;
use borcherds_core::lattice::validate_gram;
use borcherds_core::lift::{
    congruence_check, default_chamber, principal_part, theorem1_criterion, validate_principal_part,
    weyl_vector, PrincipalPart,
};
use borcherds_core::rational::{frac, int};
use borcherds_core::series::{
    direct_product, phi04, phi_n, recompose, theta_decompose, theta_sum, theta_triple_product,
};
use borcherds_core::{EvenLattice, FormClass, JacobiSeries, Rational, Term};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Diagonally dominant symmetric matrices with even diagonal.
fn lattice_strategy() -> impl Strategy<Value = EvenLattice> {
    (1usize..=3)
        .prop_flat_map(|r| {
            (
                Just(r),
                prop::collection::vec(-3i64..=3, r * r),
                prop::collection::vec(0i64..=3, r),
            )
        })
        .prop_map(|(r, off, extra)| {
            let mut g = vec![vec![0i64; r]; r];
            for i in 0..r {
                for j in i + 1..r {
                    g[i][j] = off[i * r + j];
                    g[j][i] = off[i * r + j];
                }
            }
            for i in 0..r {
                let row: i64 = (0..r).filter(|&j| j != i).map(|j| g[i][j].abs()).sum();
                let d = row + 1 + extra[i];
                g[i][i] = d + d % 2;
            }
            validate_gram(g).expect("diagonally dominant")
        })
}

fn int_vec(rank: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, rank)
}

fn rat_vec(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

/// `G^{-1} a` for an integer vector `a`, which lies in `K'`.
fn dual_from(k: &EvenLattice, a: &[i64]) -> Vec<Rational> {
    let inv = k.dual_basis();
    (0..k.rank())
        .map(|i| (0..k.rank()).map(|j| &inv[i][j] * int(a[j])).sum())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quadratic_shift_identity((k, a, lam) in lattice_strategy().prop_flat_map(|k| {
        let r = k.rank();
        (Just(k), int_vec(r), int_vec(r))
    })) {
        let gamma = dual_from(&k, &a);
        let lam = rat_vec(&lam);
        let shifted: Vec<Rational> = gamma.iter().zip(&lam).map(|(g, l)| g + l).collect();
        let lhs = k.quadratic_value(&shifted).unwrap()
            - k.quadratic_value(&gamma).unwrap()
            - k.bilinear_value(&gamma, &lam).unwrap()
            - k.quadratic_value(&lam).unwrap();
        prop_assert!(lhs.is_zero());
        prop_assert!(k.is_in_dual(&gamma));
    }

    #[test]
    fn discriminant_order_is_determinant(k in lattice_strategy()) {
        let group = k.discriminant_group();
        prop_assert_eq!(BigInt::from(group.order()), k.det());
        let product: u64 = group.elementary_divisors().iter().product();
        prop_assert_eq!(BigInt::from(product), k.det());
    }

    #[test]
    fn dual_basis_inverts_gram(k in lattice_strategy()) {
        let inv = k.dual_basis();
        let r = k.rank();
        for i in 0..r {
            for j in 0..r {
                let entry: Rational = (0..r).map(|t| &inv[i][t] * int(k.gram()[t][j])).sum();
                prop_assert_eq!(entry, if i == j { int(1) } else { int(0) });
            }
        }
    }

    #[test]
    fn gcd_divides_norms((k, x) in lattice_strategy().prop_flat_map(|k| {
        let r = k.rank();
        (Just(k), int_vec(r))
    })) {
        let two_q = int(2) * k.quadratic_value(&rat_vec(&x)).unwrap();
        prop_assert!((two_q / int(k.gcd_inner_products())).is_integer());
    }

    #[test]
    fn enumeration_monotone_and_symmetric((k, b1, b2) in (lattice_strategy(), 0i64..=6, 0i64..=6)) {
        let (lo, hi) = (frac(b1.min(b2), 4), frac(b1.max(b2), 4));
        let small: BTreeSet<_> = k.enumerate_dual_vectors(&lo).into_iter().collect();
        let large: BTreeSet<_> = k.enumerate_dual_vectors(&hi).into_iter().collect();
        prop_assert!(small.is_subset(&large));
        for v in &large {
            prop_assert!(large.contains(&v.neg()));
            prop_assert!(k.quadratic_value(v.coords()).unwrap() <= hi);
        }
        if lo.is_zero() {
            prop_assert_eq!(small.len(), 1);
        }
    }

    #[test]
    fn congruence_parity_obstruction(
        (k, row) in lattice_strategy()
            .prop_filter("8 must not divide N", |k| !theorem1_criterion(k))
            .prop_flat_map(|k| {
                let r = k.rank();
                (Just(k), prop::collection::vec((int_vec(r), -5i64..=5), 0..5))
            }),
        c00 in (-10i64..=10).prop_map(|x| 2 * x + 1),
    ) {
        let zero = vec![int(0); k.rank()];
        let mut terms = vec![Term { n: int(0), l: zero, c: BigInt::from(c00) }];
        for (a, c) in row {
            let l = dual_from(&k, &a);
            if l.iter().all(Zero::is_zero) {
                continue;
            }
            let neg = l.iter().map(|x| -x).collect();
            terms.push(Term { n: int(0), l, c: BigInt::from(c) });
            terms.push(Term { n: int(0), l: neg, c: BigInt::from(c) });
        }
        let phi = JacobiSeries::from_terms(k, int(0), FormClass::WeakJacobi, 1, int(1), terms).unwrap();
        let report = congruence_check(&phi).unwrap();
        prop_assert!(!report.passes);
    }
}

fn small_series() -> impl Strategy<Value = JacobiSeries> {
    (
        3i64..=6,
        prop::collection::vec((-1i64..=4, -6i64..=6, -3i64..=3), 0..8),
    )
        .prop_map(|(prec, raw)| {
            let k = validate_gram(vec![vec![2]]).unwrap();
            let terms: Vec<Term> = raw
                .into_iter()
                .map(|(n, l, c)| Term {
                    n: int(n),
                    l: vec![frac(l, 2)],
                    c: BigInt::from(c),
                })
                .filter(|t| t.n < int(prec))
                .collect();
            JacobiSeries::from_terms(k, int(0), FormClass::Raw, 1, int(prec), terms).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in small_series(), b in small_series(), c in small_series()) {
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        prop_assert!(ab.agrees_with(&ba));
        prop_assert_eq!(ab.prec(), ba.prec());
        let left = ab.mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(left.agrees_with(&right));
        prop_assert!(a.add(&b).unwrap().agrees_with(&b.add(&a).unwrap()));
        let s1 = a.add(&b).unwrap().add(&c).unwrap();
        let s2 = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert!(s1.agrees_with(&s2));
        let dist = a.mul(&b.add(&c).unwrap()).unwrap();
        let expanded = ab.add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(dist.agrees_with(&expanded));
        if a.min_exp().is_none_or(|v| v >= int(0)) && b.min_exp().is_none_or(|v| v >= int(0)) {
            prop_assert_eq!(ab.prec(), a.prec().min(b.prec()));
        }
    }

    #[test]
    fn weyl_vector_depends_only_on_sign_pattern(w in prop::collection::vec(-20i64..=20, 2)) {
        let phi = phi_n(2, &int(1)).unwrap();
        let w0 = vec![frac(w[0], 7), frac(w[1], 11)];
        let reference = default_chamber(2);
        let k = phi.lattice();
        let signs = |v: &[Rational]| -> Option<Vec<std::cmp::Ordering>> {
            let s: Vec<_> = phi
                .level(&int(0))
                .iter()
                .filter(|(l, _)| l.iter().any(|x| !x.is_zero()))
                .map(|(l, _)| k.bilinear_value(l, v).unwrap().cmp(&int(0)))
                .collect();
            (!s.contains(&std::cmp::Ordering::Equal)).then_some(s)
        };
        let pattern = signs(&w0);
        prop_assume!(pattern.is_some());
        let mirrored: Vec<Rational> = w0.iter().map(|x| -x).collect();
        let here = weyl_vector(&phi, &w0).unwrap();
        let there = weyl_vector(&phi, &mirrored).unwrap();
        prop_assert_eq!(&here.a, &there.a);
        prop_assert_eq!(&here.c, &there.c);
        if pattern == signs(&reference) {
            let base = weyl_vector(&phi, &reference).unwrap();
            prop_assert_eq!(&here.b, &base.b);
        }
    }
}

#[test]
fn theta_formulas_agree_across_precisions() {
    for p in 25..=160 {
        let prec = frac(p, 8);
        let sum = theta_sum(&prec).unwrap();
        let product = theta_triple_product(&prec).unwrap();
        assert!(sum.agrees_with(&product), "prec {prec}");
        assert_eq!(sum.prec(), product.prec());
    }
}

#[test]
fn direct_product_is_associative() {
    let prec = int(4);
    let a = phi04(&prec).unwrap();
    let b = phi_n(2, &prec).unwrap();
    let left = direct_product(&direct_product(&a, &a).unwrap(), &a).unwrap();
    let right = direct_product(&a, &direct_product(&a, &a).unwrap()).unwrap();
    assert_eq!(left.lattice(), right.lattice());
    assert!(left.agrees_with(&right));
    assert!(left.agrees_with(&phi_n(3, &prec).unwrap()));
    let mixed = direct_product(&b, &a).unwrap();
    assert!(mixed.agrees_with(&direct_product(&a, &b).unwrap()));
}

fn shift_samples(phi: &JacobiSeries, samples: usize, seed: u64) -> usize {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let k = phi.lattice();
    let terms: Vec<Term> = phi.terms().collect();
    let mut checked = 0;
    let mut attempts = 0;
    while checked < samples {
        attempts += 1;
        assert!(
            attempts < 100 * samples,
            "window too small for shift samples"
        );
        let t = &terms[rng.gen_range(0..terms.len())];
        let lam: Vec<Rational> = (0..k.rank()).map(|_| int(rng.gen_range(-2..=2))).collect();
        let n2 = &t.n + k.bilinear_value(&lam, &t.l).unwrap() + k.quadratic_value(&lam).unwrap();
        let l2: Vec<Rational> = t.l.iter().zip(&lam).map(|(a, b)| a + b).collect();
        if let Some(c2) = phi.coefficient(&n2, &l2) {
            assert_eq!(c2, t.c, "c({}, {:?}) vs c({n2}, {l2:?})", t.n, t.l);
            checked += 1;
        }
    }
    checked
}

#[test]
fn shift_invariance_on_samples() {
    assert_eq!(shift_samples(&phi04(&int(12)).unwrap(), 200, 1), 200);
    assert_eq!(shift_samples(&phi_n(2, &int(6)).unwrap(), 200, 2), 200);
    assert_eq!(shift_samples(&phi_n(3, &int(3)).unwrap(), 200, 3), 200);
}

#[test]
fn weight_zero_symmetry() {
    for phi in [phi04(&int(8)).unwrap(), phi_n(2, &int(4)).unwrap()] {
        assert!(phi.is_symmetric());
    }
}

#[test]
fn decomposition_round_trip() {
    for phi in [phi04(&int(10)).unwrap(), phi_n(2, &int(6)).unwrap()] {
        let form = theta_decompose(&phi).unwrap();
        let back = recompose(&form, phi.prec()).unwrap();
        assert!(back.agrees_with(&phi));
    }
}

#[test]
fn phi_n_constant_terms() {
    for count in 1..=4 {
        let phi = phi_n(count, &int(1)).unwrap();
        let pp = principal_part(&theta_decompose(&phi).unwrap());
        assert!(pp.constant_term.is_one(), "N = {count}");
        assert!(congruence_check(&phi).unwrap().passes);
    }
}

/// Every way of changing one field of one entry.
fn single_field_mutations(pp: &PrincipalPart) -> Vec<(String, PrincipalPart)> {
    let mut out = Vec::new();
    let mut push = |label: String, f: &dyn Fn(&mut PrincipalPart)| {
        let mut m = pp.clone();
        f(&mut m);
        out.push((label, m));
    };
    for delta in [-1i64, 1, 2] {
        push(format!("constant_term{delta:+}"), &|m| {
            m.constant_term += delta
        });
    }
    for i in 0..pp.terms.len() {
        for delta in [-1i64, 1, 5] {
            push(format!("terms[{i}].c{delta:+}"), &|m| m.terms[i].c += delta);
        }
        push(format!("terms[{i}].c=0"), &|m| {
            m.terms[i].c = BigInt::zero()
        });
        for (num, den) in [(1, 24), (-1, 24), (1, 8), (-1, 1), (1, 1)] {
            push(format!("terms[{i}].exp+{num}/{den}"), &|m| {
                m.terms[i].exp += frac(num, den)
            });
        }
        for j in 0..pp.terms[i].gamma.len() {
            for (num, den) in [(1, 24), (1, 8), (1, 2), (1, 1), (-1, 12)] {
                push(format!("terms[{i}].gamma[{j}]+{num}/{den}"), &|m| {
                    m.terms[i].gamma[j] += frac(num, den)
                });
            }
        }
    }
    out
}

#[test]
fn fixtures_reject_single_field_mutations() {
    for pp in [fixtures::example1(), fixtures::example2()] {
        assert!(validate_principal_part(&pp).passed());
        let mutations = single_field_mutations(&pp);
        assert_eq!(mutations.len(), 3 + 19 * pp.terms.len());
        for (label, mutated) in mutations {
            assert!(
                !validate_principal_part(&mutated).passed(),
                "mutation {label} was accepted"
            );
        }
    }
}
