//! Published principal parts of two half-integral weight lifts, transcribed with
//! one entry per `±γ` pair and expanded here to both classes.

use num_bigint::BigInt;

use crate::lattice::{validate_gram, EvenLattice};
use crate::lift::{PrincipalPart, PrincipalTerm};
use crate::rational::{self, frac, Rational};

/// `(exp, c, γ)` with `γ` given as `(numerator, denominator)` pairs.
type Row = ((i64, i64), i64, [(i64, i64); 2]);

const EXAMPLE1: &[Row] = &[
    ((-1, 24), 4, [(11, 12), (1, 24)]),
    ((-1, 24), 4, [(1, 24), (1, 24)]),
    ((-1, 24), 4, [(1, 24), (11, 12)]),
    ((-1, 24), -1, [(7, 12), (5, 24)]),
    ((-1, 24), -1, [(5, 24), (5, 24)]),
    ((-1, 24), -1, [(5, 24), (7, 12)]),
    ((-1, 24), 2, [(5, 12), (7, 24)]),
    ((-1, 24), 2, [(7, 24), (7, 24)]),
    ((-1, 24), 2, [(7, 24), (5, 12)]),
    ((-1, 24), 1, [(1, 12), (11, 24)]),
    ((-1, 24), 1, [(11, 24), (11, 24)]),
    ((-1, 24), 1, [(11, 24), (1, 12)]),
    ((-1, 8), 3, [(1, 8), (0, 1)]),
    ((-1, 8), 3, [(0, 1), (1, 8)]),
    ((-1, 8), 3, [(1, 8), (7, 8)]),
    ((-1, 6), 1, [(1, 6), (5, 12)]),
    ((-1, 6), 1, [(5, 12), (5, 12)]),
    ((-1, 6), 1, [(5, 12), (1, 6)]),
    ((-1, 6), 2, [(5, 6), (1, 12)]),
    ((-1, 6), 2, [(1, 12), (1, 12)]),
    ((-1, 6), 2, [(1, 12), (5, 6)]),
];

const EXAMPLE2: &[Row] = &[
    ((-1, 16), 3, [(1, 8), (0, 1)]),
    ((-1, 16), 3, [(0, 1), (1, 8)]),
    ((-1, 16), 1, [(1, 2), (1, 8)]),
    ((-1, 16), 1, [(1, 8), (1, 2)]),
    ((-1, 8), 1, [(1, 8), (1, 8)]),
    ((-1, 8), 1, [(1, 8), (7, 8)]),
    ((-1, 4), 1, [(1, 4), (0, 1)]),
    ((-1, 4), 1, [(0, 1), (1, 4)]),
];

pub fn example1_lattice() -> EvenLattice {
    validate_gram(vec![vec![16, 8], vec![8, 16]]).expect("valid Gram matrix")
}

pub fn example2_lattice() -> EvenLattice {
    validate_gram(vec![vec![8, 0], vec![0, 8]]).expect("valid Gram matrix")
}

/// Gram `[[16, 8], [8, 16]]`, constant term 9, lift of weight 9/2.
pub fn example1() -> PrincipalPart {
    build(example1_lattice(), 9, EXAMPLE1)
}

/// Gram `[[8, 0], [0, 8]]`, constant term 7, lift of weight 7/2.
pub fn example2() -> PrincipalPart {
    build(example2_lattice(), 7, EXAMPLE2)
}

fn build(lattice: EvenLattice, constant: i64, rows: &[Row]) -> PrincipalPart {
    let mut terms = Vec::new();
    for &((en, ed), c, gamma) in rows {
        let gamma: Vec<Rational> = gamma.iter().map(|&(n, d)| frac(n, d)).collect();
        let neg: Vec<Rational> = gamma.iter().map(|x| -x).collect();
        for g in [gamma, neg] {
            let g = rational::mod_one_vec(&g);
            let term = PrincipalTerm {
                exp: frac(en, ed),
                gamma: g,
                c: BigInt::from(c),
            };
            if !terms.contains(&term) {
                terms.push(term);
            }
        }
    }
    let mut pp = PrincipalPart {
        lattice,
        constant_term: BigInt::from(constant),
        terms,
        claimed_weight: Some(frac(constant, 2)),
    };
    pp.canonicalize();
    pp
}
