//! Recognition of Leonard pairs and systems, parameter-array extraction and
//! the Askey-Wilson relations.

mod askey_wilson;
mod split;

pub use askey_wilson::{
    beta_is_root_of_unity_sum, check_converse_preconditions, fit_askey_wilson, fit_askey_wilson_with_beta,
    generates_full_algebra, AskeyWilson, ConverseReport, QStatus,
};
pub use split::{extract_parameter_array, split_basis};

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::field::FieldElement;
use crate::matrix::{eigen_decompose, eigen_with_spectrum, EigenData, ExactMatrix, SpectrumError};
use crate::parray::ValidityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeonardError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("field mismatch: A is over {0}, A* over {1}")]
    Field(crate::field::FieldSpec, crate::field::FieldSpec),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error("orderings do not form a Leonard system: {0}")]
    NotASystem(String),
    #[error("split decomposition is degenerate: {0}")]
    DegenerateSplit(String),
    #[error("extracted array fails validation: {0}")]
    ExtractionInvalid(ValidityReport),
    #[error("the Askey-Wilson relations have no solution")]
    NoAskeyWilsonSolution,
    #[error("supplied coefficients do not satisfy the Askey-Wilson relations")]
    RelationsFail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    A,
    AStar,
}

impl Which {
    fn other(self) -> Which {
        match self {
            Which::A => Which::AStar,
            Which::AStar => Which::A,
        }
    }
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::A => "A",
            Which::AStar => "A*",
        })
    }
}

/// Why a pair of matrices is not a Leonard pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureReason {
    NotMultiplicityFree { which: Which, detail: String },
    /// `which` is not irreducible tridiagonal in any ordering of an
    /// eigenbasis of the other matrix.
    NotTridiagonalInEigenbasis { which: Which, detail: String },
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureReason::NotMultiplicityFree { which, detail } => {
                write!(f, "{which} is not multiplicity-free: {detail}")
            }
            FailureReason::NotTridiagonalInEigenbasis { which, detail } => write!(
                f,
                "{which} is not irreducible tridiagonal in any ordering of an eigenbasis of {}: {detail}",
                which.other()
            ),
        }
    }
}

/// A pair together with orderings of both sets of primitive idempotents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeonardSystem {
    pub a: ExactMatrix,
    pub a_star: ExactMatrix,
    pub eigen: EigenData,
    pub eigen_star: EigenData,
}

impl LeonardSystem {
    pub fn d(&self) -> usize {
        self.a.rows() - 1
    }

    pub fn theta(&self) -> &[FieldElement] {
        &self.eigen.eigenvalues
    }

    pub fn theta_star(&self) -> &[FieldElement] {
        &self.eigen_star.eigenvalues
    }

    /// The system on (A, A*) whose eigenvalue sequences are exactly `theta`
    /// and `theta_star`, in that order.
    pub fn with_orderings(
        a: &ExactMatrix,
        a_star: &ExactMatrix,
        theta: &[FieldElement],
        theta_star: &[FieldElement],
    ) -> Result<Self, LeonardError> {
        check_dims(a, a_star)?;
        let sys = LeonardSystem {
            a: a.clone(),
            a_star: a_star.clone(),
            eigen: eigen_with_spectrum(a, theta)?,
            eigen_star: eigen_with_spectrum(a_star, theta_star)?,
        };
        let identity: Vec<usize> = (0..a.rows()).collect();
        for (which, b) in [(Which::A, sys.a_in_dual_basis()), (Which::AStar, sys.a_star_in_basis())] {
            if let Err(detail) = tridiagonal_along(&b, &identity) {
                return Err(LeonardError::NotASystem(format!("{which}: {detail}")));
            }
        }
        Ok(sys)
    }

    /// P*^-1 A P*, the matrix of A in the eigenbasis of A*.
    pub fn a_in_dual_basis(&self) -> ExactMatrix {
        self.a.conjugate(&self.eigen_star.eigenvectors).expect("eigenbasis is invertible")
    }

    /// P^-1 A* P
    pub fn a_star_in_basis(&self) -> ExactMatrix {
        self.a_star.conjugate(&self.eigen.eigenvectors).expect("eigenbasis is invertible")
    }

    /// The block conditions E*_i A E*_j = 0 for |i-j| > 1 and != 0 for
    /// |i-j| = 1, and the same with the roles exchanged, evaluated on the
    /// idempotent matrices themselves.
    pub fn block_conditions_hold(&self) -> bool {
        let check = |idem: &[ExactMatrix], m: &ExactMatrix| {
            for (i, ei) in idem.iter().enumerate() {
                let left = ei.mul(m);
                for (j, ej) in idem.iter().enumerate() {
                    let zero = left.mul(ej).is_zero();
                    match i.abs_diff(j) {
                        0 => {}
                        1 if zero => return false,
                        1 => {}
                        _ if !zero => return false,
                        _ => {}
                    }
                }
            }
            true
        };
        check(&self.eigen_star.idempotents, &self.a) && check(&self.eigen.idempotents, &self.a_star)
    }

    /// The system with roles of A and A* exchanged.
    pub fn dual(&self) -> LeonardSystem {
        LeonardSystem {
            a: self.a_star.clone(),
            a_star: self.a.clone(),
            eigen: self.eigen_star.clone(),
            eigen_star: self.eigen.clone(),
        }
    }

    fn key(&self) -> Vec<String> {
        self.theta().iter().chain(self.theta_star()).map(ToString::to_string).collect()
    }
}

/// Outcome of recognition: the canonical system when the pair qualifies,
/// otherwise the first failing condition plus shape notes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recognition {
    pub system: Option<LeonardSystem>,
    pub orderings_found: usize,
    pub failure: Option<FailureReason>,
    pub notes: Vec<String>,
}

impl Recognition {
    pub fn is_leonard_pair(&self) -> bool {
        self.system.is_some()
    }

    /// Failure reason followed by shape notes, or None on success.
    pub fn failure_message(&self) -> Option<String> {
        self.failure.as_ref().map(|f| {
            let mut parts = vec![f.to_string()];
            parts.extend(self.notes.iter().cloned());
            parts.join("; ")
        })
    }
}

fn check_dims(a: &ExactMatrix, a_star: &ExactMatrix) -> Result<(), LeonardError> {
    if a.spec() != a_star.spec() {
        return Err(LeonardError::Field(a.spec(), a_star.spec()));
    }
    if !a.is_square() || !a_star.is_square() || a.rows() != a_star.rows() || a.rows() == 0 {
        return Err(LeonardError::Dimension(format!(
            "A is {}x{}, A* is {}x{}",
            a.rows(),
            a.cols(),
            a_star.rows(),
            a_star.cols()
        )));
    }
    Ok(())
}

/// Decide whether (A, A*) is a Leonard pair. On success the witness is the
/// system whose θ then θ* strings are lexicographically least.
pub fn is_leonard_pair(a: &ExactMatrix, a_star: &ExactMatrix) -> Result<Recognition, LeonardError> {
    check_dims(a, a_star)?;
    let notes = shape_notes(a, a_star);
    let fail = |failure| Recognition {
        system: None,
        orderings_found: 0,
        failure: Some(failure),
        notes: notes.clone(),
    };
    let eigen = match eigen_decompose(a) {
        Ok(e) => e,
        Err(e) => return Ok(fail(not_free(Which::A, e))),
    };
    let eigen_star = match eigen_decompose(a_star) {
        Ok(e) => e,
        Err(e) => return Ok(fail(not_free(Which::AStar, e))),
    };
    Ok(recognize(a, a_star, eigen, eigen_star, notes))
}

/// As `is_leonard_pair`, with both spectra supplied (in any order) instead
/// of found by root finding.
pub fn is_leonard_pair_with_spectra(
    a: &ExactMatrix,
    a_star: &ExactMatrix,
    theta: &[FieldElement],
    theta_star: &[FieldElement],
) -> Result<Recognition, LeonardError> {
    check_dims(a, a_star)?;
    let notes = shape_notes(a, a_star);
    let fail = |failure| Recognition {
        system: None,
        orderings_found: 0,
        failure: Some(failure),
        notes: notes.clone(),
    };
    let eigen = match eigen_with_spectrum(a, theta) {
        Ok(e) => e,
        Err(e) => return Ok(fail(not_free(Which::A, e))),
    };
    let eigen_star = match eigen_with_spectrum(a_star, theta_star) {
        Ok(e) => e,
        Err(e) => return Ok(fail(not_free(Which::AStar, e))),
    };
    Ok(recognize(a, a_star, eigen, eigen_star, notes))
}

fn not_free(which: Which, e: SpectrumError) -> FailureReason {
    FailureReason::NotMultiplicityFree {
        which,
        detail: e.to_string(),
    }
}

fn shape_notes(a: &ExactMatrix, a_star: &ExactMatrix) -> Vec<String> {
    [(Which::A, a), (Which::AStar, a_star)]
        .into_iter()
        .filter_map(|(which, m)| {
            let s = m.shape();
            (s.tridiagonal && !s.irreducible_tridiagonal && !s.diagonal)
                .then(|| format!("{which} is tridiagonal but not irreducible (a sub- or superdiagonal entry vanishes)"))
        })
        .collect()
}

fn recognize(
    a: &ExactMatrix,
    a_star: &ExactMatrix,
    eigen: EigenData,
    eigen_star: EigenData,
    notes: Vec<String>,
) -> Recognition {
    let base = LeonardSystem {
        a: a.clone(),
        a_star: a_star.clone(),
        eigen,
        eigen_star,
    };
    let fail = |failure| Recognition {
        system: None,
        orderings_found: 0,
        failure: Some(failure),
        notes: notes.clone(),
    };
    let star_orders = match path_orderings(&base.a_in_dual_basis()) {
        Ok(o) => o,
        Err(detail) => return fail(FailureReason::NotTridiagonalInEigenbasis { which: Which::A, detail }),
    };
    let orders = match path_orderings(&base.a_star_in_basis()) {
        Ok(o) => o,
        Err(detail) => return fail(FailureReason::NotTridiagonalInEigenbasis { which: Which::AStar, detail }),
    };
    let mut best: Option<LeonardSystem> = None;
    for p in &orders {
        for ps in &star_orders {
            let candidate = LeonardSystem {
                a: a.clone(),
                a_star: a_star.clone(),
                eigen: base.eigen.permuted(p),
                eigen_star: base.eigen_star.permuted(ps),
            };
            let better = match &best {
                None => true,
                Some(b) => candidate.key().cmp(&b.key()) == Ordering::Less,
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    Recognition {
        system: best,
        orderings_found: orders.len() * star_orders.len(),
        failure: None,
        notes: Vec::new(),
    }
}

/// Check that b is irreducible tridiagonal after reordering rows and
/// columns by `order`.
fn tridiagonal_along(b: &ExactMatrix, order: &[usize]) -> Result<(), String> {
    let n = order.len();
    for i in 0..n {
        for j in 0..n {
            let zero = b.get(order[i], order[j]).is_zero();
            match i.abs_diff(j) {
                0 => {}
                1 if zero => return Err(format!("entry ({i},{j}) vanishes")),
                1 => {}
                _ if !zero => return Err(format!("entry ({i},{j}) is nonzero")),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Orderings of the basis in which `b` is irreducible tridiagonal: the two
/// traversals of its coupling graph when that graph is a path.
fn path_orderings(b: &ExactMatrix) -> Result<Vec<Vec<usize>>, String> {
    let n = b.rows();
    if n == 1 {
        return Ok(vec![vec![0]]);
    }
    let adjacent = |i: usize, j: usize| i != j && (!b.get(i, j).is_zero() || !b.get(j, i).is_zero());
    let neighbours: Vec<Vec<usize>> = (0..n).map(|i| (0..n).filter(|&j| adjacent(i, j)).collect()).collect();
    if let Some(i) = (0..n).find(|&i| neighbours[i].is_empty()) {
        return Err(format!("basis vector {i} is not coupled to any other (reducible)"));
    }
    if let Some(i) = (0..n).find(|&i| neighbours[i].len() > 2) {
        return Err(format!("basis vector {i} is coupled to {} others", neighbours[i].len()));
    }
    let Some(start) = (0..n).find(|&i| neighbours[i].len() == 1) else {
        return Err("coupling graph is a union of cycles".into());
    };
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = neighbours[cur].iter().find(|&&j| j != prev) {
        if path.contains(&next) {
            break;
        }
        path.push(next);
        prev = cur;
        cur = next;
    }
    if path.len() < n {
        return Err("coupling graph is disconnected (reducible)".into());
    }
    tridiagonal_along(b, &path)?;
    let reversed: Vec<usize> = path.iter().rev().copied().collect();
    Ok(vec![path, reversed])
}
