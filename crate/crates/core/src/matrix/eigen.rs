use thiserror::Error;

use super::{dot, ExactMatrix, MatrixError};
use crate::field::{roots_in_field, FieldElement, RootError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error("eigenvalue {0} is repeated")]
    Repeated(FieldElement),
    #[error("characteristic polynomial has only {found} of {n} roots in the field")]
    NotSplit { found: usize, n: usize },
    #[error("supplied spectrum is invalid: {0}")]
    BadSpectrum(String),
}

/// Eigenvalues, a matching basis of eigenvectors (as columns) and the
/// primitive idempotents of a multiplicity-free matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenData {
    pub eigenvalues: Vec<FieldElement>,
    pub eigenvectors: ExactMatrix,
    pub idempotents: Vec<ExactMatrix>,
}

impl EigenData {
    /// Same data listed in the order `perm` (new position i holds old perm[i]).
    pub fn permuted(&self, perm: &[usize]) -> EigenData {
        let spec = self.eigenvectors.spec();
        let n = self.eigenvalues.len();
        let cols: Vec<_> = perm.iter().map(|&k| self.eigenvectors.column(k)).collect();
        EigenData {
            eigenvalues: perm.iter().map(|&k| self.eigenvalues[k].clone()).collect(),
            eigenvectors: ExactMatrix::from_columns(spec, n, &cols),
            idempotents: perm.iter().map(|&k| self.idempotents[k].clone()).collect(),
        }
    }

    pub fn reversed(&self) -> EigenData {
        let perm: Vec<usize> = (0..self.eigenvalues.len()).rev().collect();
        self.permuted(&perm)
    }
}

/// Diagonalize a multiplicity-free matrix; eigenvalues come out in
/// canonical order.
pub fn eigen_decompose(m: &ExactMatrix) -> Result<EigenData, SpectrumError> {
    let n = m.rows();
    let roots = roots_in_field(&m.char_poly()?)?;
    if let Some((r, _)) = roots.iter().find(|(_, k)| *k > 1) {
        return Err(SpectrumError::Repeated(r.clone()));
    }
    if roots.len() < n {
        return Err(SpectrumError::NotSplit {
            found: roots.len(),
            n,
        });
    }
    build(m, roots.into_iter().map(|(r, _)| r).collect())
}

/// Diagonalize using a known list of eigenvalues, checked rather than
/// computed. Avoids root finding for matrices whose spectrum is given in
/// closed form.
pub fn eigen_with_spectrum(
    m: &ExactMatrix,
    spectrum: &[FieldElement],
) -> Result<EigenData, SpectrumError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare(m.rows(), m.cols()).into());
    }
    if spectrum.len() != m.rows() {
        return Err(SpectrumError::BadSpectrum(format!(
            "{} values for a {}x{} matrix",
            spectrum.len(),
            m.rows(),
            m.rows()
        )));
    }
    for (i, a) in spectrum.iter().enumerate() {
        if spectrum[..i].contains(a) {
            return Err(SpectrumError::Repeated(a.clone()));
        }
    }
    build(m, spectrum.to_vec())
}

/// Some(eigendata) exactly when the matrix is diagonalizable with all
/// eigenspaces of dimension one and all eigenvalues in the field.
pub fn is_multiplicity_free(m: &ExactMatrix) -> Option<EigenData> {
    eigen_decompose(m).ok()
}

fn build(m: &ExactMatrix, eigenvalues: Vec<FieldElement>) -> Result<EigenData, SpectrumError> {
    let spec = m.spec();
    let n = m.rows();
    let mut vectors = Vec::with_capacity(n);
    for th in &eigenvalues {
        let ns = m.shift(&-th).nullspace();
        if ns.len() != 1 {
            return Err(SpectrumError::BadSpectrum(format!(
                "{th} has eigenspace of dimension {}",
                ns.len()
            )));
        }
        vectors.extend(ns);
    }
    // E_i = v_i w_i^T / (w_i . v_i) with v_i, w_i right and left
    // eigenvectors; this equals the Lagrange product over the other
    // eigenvalues and costs n^2 per idempotent.
    let mt = m.transpose();
    let idempotents = eigenvalues
        .iter()
        .zip(&vectors)
        .map(|(th, v)| {
            let w = mt.shift(&-th).nullspace().pop().expect("left eigenspace has the same dimension");
            let scale = dot(&w, v).inv().expect("a simple eigenvalue pairs its left and right eigenvectors");
            ExactMatrix::from_fn(spec, n, n, |r, c| &(&v[r] * &w[c]) * &scale)
        })
        .collect();
    Ok(EigenData {
        eigenvectors: ExactMatrix::from_columns(spec, n, &vectors),
        eigenvalues,
        idempotents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn a() -> ExactMatrix {
        ExactMatrix::from_i64_rows(
            Q,
            &[&[0, 3, 0, 0], &[1, 0, 2, 0], &[0, 2, 0, 1], &[0, 0, 3, 0]],
        )
    }

    #[test]
    fn idempotents_are_primitive() {
        let e = eigen_decompose(&a()).unwrap();
        let names: Vec<String> = e.eigenvalues.iter().map(|x| x.to_string()).collect();
        assert_eq!(names, ["-3", "-1", "1", "3"]);
        let mut sum = ExactMatrix::zeros(Q, 4, 4);
        for (i, ei) in e.idempotents.iter().enumerate() {
            sum = sum.add(ei);
            for (j, ej) in e.idempotents.iter().enumerate() {
                let p = ei.mul(ej);
                if i == j {
                    assert_eq!(&p, ei);
                } else {
                    assert!(p.is_zero());
                }
            }
            assert_eq!(a().mul(ei), ei.scale(&e.eigenvalues[i]));
        }
        assert_eq!(sum, ExactMatrix::identity(Q, 4));
    }

    /// prod_{j != i} (M - θ_j) / (θ_i - θ_j)
    fn lagrange(m: &ExactMatrix, eigenvalues: &[FieldElement], i: usize) -> ExactMatrix {
        let n = m.rows();
        eigenvalues.iter().enumerate().filter(|(j, _)| *j != i).fold(
            ExactMatrix::identity(m.spec(), n),
            |acc, (_, th)| acc.mul(&m.shift(&-th)).scale(&(&eigenvalues[i] - th).inv().unwrap()),
        )
    }

    #[test]
    fn idempotents_match_lagrange_products() {
        let gf7 = FieldSpec::prime(7).unwrap();
        let cases = [
            a(),
            ExactMatrix::from_i64_rows(Q, &[&[2, 1, 0], &[5, -1, 3], &[0, 1, 4]]),
            ExactMatrix::from_i64_rows(gf7, &[&[1, 2, 0], &[3, 4, 5], &[0, 6, 1]]),
        ];
        for m in cases {
            if let Some(e) = is_multiplicity_free(&m) {
                for i in 0..m.rows() {
                    assert_eq!(e.idempotents[i], lagrange(&m, &e.eigenvalues, i));
                }
            }
        }
        assert!(is_multiplicity_free(&a()).is_some());
    }

    #[test]
    fn failures() {
        let id = ExactMatrix::identity(Q, 2);
        assert!(matches!(eigen_decompose(&id), Err(SpectrumError::Repeated(_))));
        let rot = ExactMatrix::from_i64_rows(Q, &[&[0, -1], &[1, 0]]);
        assert!(matches!(eigen_decompose(&rot), Err(SpectrumError::NotSplit { .. })));
        let jordan = ExactMatrix::from_i64_rows(Q, &[&[1, 1], &[0, 1]]);
        assert!(is_multiplicity_free(&jordan).is_none());
        let gf3 = FieldSpec::prime(3).unwrap();
        let a3 = ExactMatrix::from_i64_rows(
            gf3,
            &[&[0, 3, 0, 0], &[1, 0, 2, 0], &[0, 2, 0, 1], &[0, 0, 3, 0]],
        );
        // eigenvalues 3,1,-1,-3 collapse to 0,1,2,0 mod 3
        assert!(is_multiplicity_free(&a3).is_none());
    }

    #[test]
    fn supplied_spectrum() {
        let spec: Vec<_> = [3, 1, -1, -3].iter().map(|&x| FieldElement::from_i64(Q, x)).collect();
        let e = eigen_with_spectrum(&a(), &spec).unwrap();
        assert_eq!(e.eigenvalues, spec);
        let wrong: Vec<_> = [3, 1, -1, 5].iter().map(|&x| FieldElement::from_i64(Q, x)).collect();
        assert!(eigen_with_spectrum(&a(), &wrong).is_err());
    }
}
