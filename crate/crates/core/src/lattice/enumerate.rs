//! Fincke–Pohst enumeration over exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::Rational;

/// All `x ∈ Z^r` with `(x + shift)ᵀ A (x + shift) / 2 <= bound`, for a
/// positive-definite rational `A`. Output order is unspecified.
pub(crate) fn short_vectors(
    form: &[Vec<Rational>],
    shift: &[Rational],
    bound: &Rational,
) -> Vec<Vec<BigInt>> {
    let rank = form.len();
    if bound.is_negative() {
        return Vec::new();
    }
    let coeffs = quadratic_decomposition(form);
    let mut out = Vec::new();
    let mut x = vec![BigInt::zero(); rank];
    // v = x + shift, searched from the last coordinate down
    let mut v = vec![Rational::zero(); rank];
    let budget = bound * Rational::from_integer(BigInt::from(2));
    descend(&coeffs, shift, rank, &budget, &mut x, &mut v, &mut out);
    out
}

/// `vᵀ A v = Σ_i q_ii (v_i + Σ_{j>i} q_ij v_j)²`; returns the `q` table.
fn quadratic_decomposition(form: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = form.len();
    let mut q = form.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            q[j][i] = q[i][j].clone();
            q[i][j] = &q[i][j] / &q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                let delta = &q[k][i] * &q[i][l];
                q[k][l] -= delta;
            }
        }
    }
    q
}

fn descend(
    q: &[Vec<Rational>],
    shift: &[Rational],
    level: usize,
    remaining: &Rational,
    x: &mut Vec<BigInt>,
    v: &mut Vec<Rational>,
    out: &mut Vec<Vec<BigInt>>,
) {
    if level == 0 {
        out.push(x.clone());
        return;
    }
    let i = level - 1;
    let n = q.len();
    let offset = (i + 1..n).fold(Rational::zero(), |acc, j| acc + &q[i][j] * &v[j]);
    // need q_ii (x_i + shift_i + offset)^2 <= remaining
    let center = -(&shift[i] + &offset);
    let radius_sq = remaining / &q[i][i];
    let Some((lo, hi)) = integer_window(&center, &radius_sq) else {
        return;
    };
    let mut xi = lo;
    while xi <= hi {
        let vi = Rational::from_integer(xi.clone()) + &shift[i];
        let t = &vi + &offset;
        let rest = remaining - &q[i][i] * &t * &t;
        x[i] = xi.clone();
        v[i] = vi;
        descend(q, shift, i, &rest, x, v, out);
        xi += 1;
    }
}

/// Integers `x` with `(x - center)² <= radius_sq`, as an inclusive range.
pub(crate) fn integer_window(center: &Rational, radius_sq: &Rational) -> Option<(BigInt, BigInt)> {
    if radius_sq.is_negative() {
        return None;
    }
    // (b x - a)^2 <= b^2 ρ  with center = a/b
    let (a, b) = (center.numer(), center.denom());
    let scaled = (radius_sq * Rational::from_integer(b * b))
        .floor()
        .to_integer();
    let m = scaled.sqrt();
    let lo = ceil_div(&(a - &m), b);
    let hi = (a + &m).div_floor(b);
    (lo <= hi).then_some((lo, hi))
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}
