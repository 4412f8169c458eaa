//! Even positive-definite lattices given by a Gram matrix.
//!
//! Vectors of `K ⊗ Q` are always written in coordinates with respect to the
//! basis of `K`, so `<v, w> = vᵀ G w` and `Q(v) = vᵀ G v / 2`.

mod discriminant;
mod enumerate;
mod snf;

pub use discriminant::DiscriminantGroup;
pub use snf::{smith_normal_form, SmithForm};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Gram matrix of an even positive-definite lattice `K`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
}

/// A vector of `K'`, in coordinates with respect to the basis of `K`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DualVector(Vec<Rational>);

impl DualVector {
    /// Wraps `coords` after checking `G · coords ∈ Z^r`.
    pub fn new(lattice: &EvenLattice, coords: Vec<Rational>) -> Result<Self> {
        lattice.check_dual("DualVector::new", &coords)?;
        Ok(DualVector(coords))
    }

    pub(crate) fn new_unchecked(coords: Vec<Rational>) -> Self {
        DualVector(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DualVector(vec![Rational::zero(); rank])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        DualVector(self.0.iter().map(|c| -c).collect())
    }

    /// Coset representative with every coordinate in `[0, 1)`.
    pub fn reduced(&self) -> Self {
        DualVector(rational::mod_one_vec(&self.0))
    }
}

impl fmt::Display for DualVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rational::format_vec(&self.0))
    }
}

/// Checks symmetry, evenness and positive definiteness, in that order.
pub fn validate_gram(matrix: Vec<Vec<i64>>) -> Result<EvenLattice> {
    let rank = matrix.len();
    if rank == 0 {
        return Err(Error::NotPositiveDefinite { index: 0 });
    }
    for (row, entries) in matrix.iter().enumerate() {
        if entries.len() != rank {
            return Err(Error::NotSquare {
                row,
                expected: rank,
                found: entries.len(),
            });
        }
    }
    for row in 0..rank {
        for col in row + 1..rank {
            if matrix[row][col] != matrix[col][row] {
                return Err(Error::NotSymmetric { row, col });
            }
        }
    }
    if let Some(index) = (0..rank).find(|&i| matrix[i][i] % 2 != 0) {
        return Err(Error::NotEven { index });
    }
    let pivots = ldl_pivots(&to_rational(&matrix));
    if let Some(index) = pivots.iter().position(|p| !p.is_positive()) {
        return Err(Error::NotPositiveDefinite { index });
    }
    Ok(EvenLattice { gram: matrix })
}

impl EvenLattice {
    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        let pivots = ldl_pivots(&to_rational(&self.gram));
        let det = pivots.iter().fold(Rational::one(), |acc, p| acc * p);
        det.to_integer()
    }

    pub(crate) fn gram_rational(&self) -> Vec<Vec<Rational>> {
        to_rational(&self.gram)
    }

    fn check_len(&self, op: &'static str, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::DimensionMismatch {
                op,
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }

    /// `G · v`.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.gram
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (&g, x)| acc + x * rational::int(g))
            })
            .collect()
    }

    /// `<v, w> = vᵀ G w`.
    pub fn bilinear_value(&self, v: &[Rational], w: &[Rational]) -> Result<Rational> {
        self.check_len("bilinear_value", v.len())?;
        self.check_len("bilinear_value", w.len())?;
        Ok(self
            .apply(w)
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    /// `Q(v) = vᵀ G v / 2`.
    pub fn quadratic_value(&self, v: &[Rational]) -> Result<Rational> {
        self.check_len("quadratic_value", v.len())?;
        Ok(self.norm(v))
    }

    pub(crate) fn norm(&self, v: &[Rational]) -> Rational {
        let two_q = self
            .apply(v)
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        two_q / rational::int(2)
    }

    pub(crate) fn pairing(&self, v: &[Rational], w: &[Rational]) -> Rational {
        self.apply(w)
            .iter()
            .zip(v)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_in_dual(&self, v: &[Rational]) -> bool {
        v.len() == self.rank() && self.apply(v).iter().all(rational::is_integral)
    }

    pub(crate) fn check_dual(&self, op: &'static str, v: &[Rational]) -> Result<()> {
        self.check_len(op, v.len())?;
        if !self.is_in_dual(v) {
            return Err(Error::NotInDualLattice {
                op,
                vector: rational::format_vec(v),
            });
        }
        Ok(())
    }

    /// `G⁻¹`; its columns are the dual basis in `K`-coordinates.
    pub fn dual_basis(&self) -> Vec<Vec<Rational>> {
        invert(&self.gram_rational())
    }

    /// `Q(γ) mod 1` for `γ ∈ K'`.
    pub fn q_mod1(&self, gamma: &[Rational]) -> Result<Rational> {
        self.check_dual("q_mod1", gamma)?;
        Ok(rational::mod_one(&self.norm(gamma)))
    }

    /// gcd of all `<x, y>` with `x, y ∈ K`, i.e. of the Gram entries.
    pub fn gcd_inner_products(&self) -> i64 {
        self.gram.iter().flatten().fold(0i64, |acc, &g| acc.gcd(&g))
    }

    pub fn direct_sum(&self, other: &EvenLattice) -> EvenLattice {
        let (a, b) = (self.rank(), other.rank());
        let mut gram = vec![vec![0i64; a + b]; a + b];
        for i in 0..a {
            gram[i][..a].copy_from_slice(&self.gram[i]);
        }
        for i in 0..b {
            gram[a + i][a..].copy_from_slice(&other.gram[i]);
        }
        EvenLattice { gram }
    }

    pub fn discriminant_group(&self) -> DiscriminantGroup {
        DiscriminantGroup::new(self)
    }

    /// All `l ∈ K'` with `Q(l) <= bound`, sorted lexicographically.
    pub fn enumerate_dual_vectors(&self, bound: &Rational) -> Vec<DualVector> {
        let inverse = self.dual_basis();
        let zero = vec![Rational::zero(); self.rank()];
        let mut out: Vec<DualVector> = enumerate::short_vectors(&inverse, &zero, bound)
            .into_iter()
            .map(|y| {
                let y: Vec<Rational> = y.into_iter().map(Rational::from_integer).collect();
                DualVector(mat_vec(&inverse, &y))
            })
            .collect();
        out.sort();
        out
    }

    /// All `l ∈ γ + K` with `Q(l) <= bound`, sorted lexicographically.
    pub fn enumerate_coset(&self, gamma: &[Rational], bound: &Rational) -> Result<Vec<DualVector>> {
        self.check_dual("enumerate_coset", gamma)?;
        let mut out: Vec<DualVector> =
            enumerate::short_vectors(&self.gram_rational(), gamma, bound)
                .into_iter()
                .map(|x| {
                    DualVector(
                        gamma
                            .iter()
                            .zip(x)
                            .map(|(g, xi)| g + Rational::from_integer(xi))
                            .collect(),
                    )
                })
                .collect();
        out.sort();
        Ok(out)
    }

    /// Minimum of `Q` over the coset `γ + K`.
    pub fn coset_min_norm(&self, gamma: &[Rational]) -> Result<Rational> {
        let bound = self.quadratic_value(gamma)?;
        let vectors = self.enumerate_coset(gamma, &bound)?;
        Ok(vectors
            .iter()
            .map(|v| self.norm(v.coords()))
            .min()
            .unwrap_or(bound))
    }
}

impl<'de> Deserialize<'de> for EvenLattice {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let gram = Vec::<Vec<i64>>::deserialize(deserializer)?;
        validate_gram(gram).map_err(serde::de::Error::custom)
    }
}

fn to_rational(matrix: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    matrix
        .iter()
        .map(|row| row.iter().map(|&g| rational::int(g)).collect())
        .collect()
}

pub(crate) fn mat_vec(matrix: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// Pivots of symmetric Gaussian elimination without pivoting. The `k`-th
/// pivot is the ratio of consecutive leading principal minors; elimination
/// stops at the first non-positive pivot.
fn ldl_pivots(matrix: &[Vec<Rational>]) -> Vec<Rational> {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    let mut pivots = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        pivots.push(pivot.clone());
        if !pivot.is_positive() {
            break;
        }
        for i in k + 1..n {
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    pivots
}

/// Exact Gauss–Jordan inverse of a nonsingular matrix.
fn invert(matrix: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("matrix is singular");
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for entry in a[col].iter_mut() {
            *entry /= &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..2 * n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}
