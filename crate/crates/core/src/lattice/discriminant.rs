use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{smith_normal_form, DualVector, EvenLattice};
use crate::rational::{self, Rational};

/// The finite quadratic module `K'/K`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantGroup {
    elementary_divisors: Vec<u64>,
    generators: Vec<DualVector>,
    representatives: Vec<DualVector>,
}

impl DiscriminantGroup {
    pub(super) fn new(lattice: &EvenLattice) -> Self {
        let gram: Vec<Vec<BigInt>> = lattice
            .gram()
            .iter()
            .map(|row| row.iter().map(|&g| BigInt::from(g)).collect())
            .collect();
        let snf = smith_normal_form(&gram);
        // G⁻¹ = V D⁻¹ U, so K' = V D⁻¹ Z^r and column i of V scaled by 1/d_i
        // generates a cyclic factor of order d_i.
        let mut elementary_divisors = Vec::new();
        let mut generators = Vec::new();
        for (i, d) in snf.diagonal.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            let column: Vec<Rational> = snf
                .right
                .iter()
                .map(|row| Rational::new(row[i].clone(), d.clone()))
                .collect();
            elementary_divisors.push(d.to_u64().expect("elementary divisor exceeds u64"));
            generators.push(DualVector::new_unchecked(rational::mod_one_vec(&column)));
        }

        let rank = lattice.rank();
        let mut representatives = vec![DualVector::zero(rank)];
        for (generator, &order) in generators.iter().zip(&elementary_divisors) {
            let mut next = Vec::with_capacity(representatives.len() * order as usize);
            for base in &representatives {
                let mut current = base.coords().to_vec();
                for _ in 0..order {
                    next.push(DualVector::new_unchecked(current.clone()));
                    current = current
                        .iter()
                        .zip(generator.coords())
                        .map(|(a, b)| rational::mod_one(&(a + b)))
                        .collect();
                }
            }
            representatives = next;
        }
        representatives.sort();
        DiscriminantGroup {
            elementary_divisors,
            generators,
            representatives,
        }
    }

    /// Invariant factors greater than one, each dividing the next.
    pub fn elementary_divisors(&self) -> &[u64] {
        &self.elementary_divisors
    }

    pub fn generators(&self) -> &[DualVector] {
        &self.generators
    }

    /// Coset representatives in `[0, 1)^r`, sorted lexicographically.
    pub fn representatives(&self) -> &[DualVector] {
        &self.representatives
    }

    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    /// Position of the class of `gamma`, which need not be reduced.
    pub fn index_of(&self, gamma: &DualVector) -> Option<usize> {
        self.representatives.binary_search(&gamma.reduced()).ok()
    }
}
