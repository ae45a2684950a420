//! Constructive sources of Leonard pairs.

mod lattice;
mod prime_power;
mod sl2;
mod uq;

pub use lattice::{build_lattice, gaussian_binomial, lattice_pair, LatticeComponent, LatticePair, SubspaceLattice};
pub use prime_power::SmallField;
pub use sl2::{sl2_module, sl2_pair, Sl2Element, Sl2Module};
pub use uq::{q_integer, uq_module, uq_pair, UqModule, UqPair};

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{0} is not of characteristic zero")]
    NeedsCharacteristicZero(FieldSpec),
    #[error("{0} is not semisimple")]
    NotSemisimple(String),
    #[error("{0} has eigenvalues outside {1}")]
    EigenvaluesOutsideField(String, FieldSpec),
    #[error("the chosen elements do not generate sl2")]
    DoesNotGenerate,
    #[error("q = {0} is zero or a root of unity")]
    RootOfUnity(FieldElement),
    #[error("every nonzero q in {0} is a root of unity")]
    FiniteField(FieldSpec),
    #[error("scalar {0} must be nonzero")]
    ZeroScalar(&'static str),
    #[error("epsilon must be 1 or -1, got {0}")]
    BadEpsilon(i64),
    #[error("{0} lies in the excluded set {1}")]
    Forbidden(String, String),
    #[error("lattice too large: {0}")]
    TooLarge(String),
    #[error("{0} is not a prime power with prime at most 7")]
    BadOrder(u64),
    #[error("scalar {0} is not in {1}")]
    WrongField(FieldElement, FieldSpec),
    #[error("internal relation check failed: {0}")]
    RelationFailure(String),
    #[error("module decomposition failed: {0}")]
    Decomposition(String),
}

/// The 4x4 pair with A tridiagonal, A* = diag(3, 1, -1, -3) and the matrix P
/// with AP = PA* and P^2 = 8I, embedded in `spec`.
pub fn example_section2(spec: FieldSpec) -> (ExactMatrix, ExactMatrix, ExactMatrix) {
    let a = ExactMatrix::from_i64_rows(spec, &[&[0, 3, 0, 0], &[1, 0, 2, 0], &[0, 2, 0, 1], &[0, 0, 3, 0]]);
    let a_star = ExactMatrix::diagonal(spec, &[3, 1, -1, -3].map(|x| FieldElement::from_i64(spec, x)));
    let p = ExactMatrix::from_i64_rows(spec, &[&[1, 3, 3, 1], &[1, 1, -1, -1], &[1, -1, -1, 1], &[1, -3, 3, -1]]);
    (a, a_star, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leonard::is_leonard_pair;

    #[test]
    fn section2_over_several_fields() {
        let q = FieldSpec::Rationals;
        let (a, s, p) = example_section2(q);
        assert_eq!(p.mul(&p), ExactMatrix::identity(q, 4).scale(&FieldElement::from_i64(q, 8)));
        assert_eq!(a.mul(&p), p.mul(&s));
        let gf5 = FieldSpec::prime(5).unwrap();
        let (a, s, _) = example_section2(gf5);
        assert!(is_leonard_pair(&a, &s).unwrap().is_leonard_pair());
        let gf2 = FieldSpec::prime(2).unwrap();
        let (a, s, _) = example_section2(gf2);
        assert!(!is_leonard_pair(&a, &s).unwrap().is_leonard_pair());
    }
}
