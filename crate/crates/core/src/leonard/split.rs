use super::{LeonardError, LeonardSystem};
use crate::field::FieldElement;
use crate::matrix::ExactMatrix;
use crate::parray::{theta_lower, validate, ParameterArray};

/// Columns of `m` with indices in `range`.
fn columns(m: &ExactMatrix, range: impl Iterator<Item = usize>) -> Vec<Vec<FieldElement>> {
    range.map(|j| m.column(j)).collect()
}

/// A spanning vector of (E*_0V + ... + E*_iV) ∩ (E_iV + ... + E_dV).
fn split_component(sys: &LeonardSystem, i: usize) -> Result<Vec<FieldElement>, LeonardError> {
    let spec = sys.a.spec();
    let n = sys.d() + 1;
    let x = columns(&sys.eigen_star.eigenvectors, 0..=i);
    let y = columns(&sys.eigen.eigenvectors, i..n);
    let mut cols = x.clone();
    cols.extend(y.iter().map(|v| v.iter().map(|e| -e).collect::<Vec<_>>()));
    let kernel = ExactMatrix::from_columns(spec, n, &cols).nullspace();
    if kernel.len() != 1 {
        return Err(LeonardError::DegenerateSplit(format!(
            "component {i} has dimension {}",
            kernel.len()
        )));
    }
    let coeffs = &kernel[0][..=i];
    let mut u = vec![FieldElement::zero(spec); n];
    for (c, v) in coeffs.iter().zip(&x) {
        for (ui, vi) in u.iter_mut().zip(v) {
            *ui = &*ui + &(c * vi);
        }
    }
    Ok(u)
}

fn parallel(u: &[FieldElement], w: &[FieldElement]) -> bool {
    let spec = u[0].spec();
    let m = ExactMatrix::from_columns(spec, u.len(), &[u.to_vec(), w.to_vec()]);
    m.rank() == 1
}

/// Change of basis S with S^-1 A S lower bidiagonal (diagonal θ, 1 below)
/// and S^-1 A* S upper bidiagonal (diagonal θ*). Column i spans the i-th
/// split component; column i+1 is (A - θ_i) applied to column i.
pub fn split_basis(sys: &LeonardSystem) -> Result<ExactMatrix, LeonardError> {
    let spec = sys.a.spec();
    let d = sys.d();
    let n = d + 1;
    let theta = sys.theta();
    let mut cols = vec![split_component(sys, 0)?];
    for i in 0..d {
        let next = sys.a.shift(&-&theta[i]).mul_vec(&cols[i]);
        let target = split_component(sys, i + 1)?;
        if next.iter().all(FieldElement::is_zero) || !parallel(&next, &target) {
            return Err(LeonardError::DegenerateSplit(format!(
                "(A - θ_{i}) u_{i} leaves component {}",
                i + 1
            )));
        }
        cols.push(next);
    }
    let s = ExactMatrix::from_columns(spec, n, &cols);
    let a_split = sys
        .a
        .conjugate(&s)
        .map_err(|_| LeonardError::DegenerateSplit("split vectors are dependent".into()))?;
    if a_split != theta_lower(spec, theta) {
        return Err(LeonardError::DegenerateSplit("A is not in split form".into()));
    }
    let star_split = sys.a_star.conjugate(&s).expect("S is invertible");
    let shape = star_split.shape();
    let diag_ok = (0..n).all(|i| star_split.get(i, i) == &sys.theta_star()[i]);
    if !shape.upper_bidiagonal || !diag_ok {
        return Err(LeonardError::DegenerateSplit("A* is not in split form".into()));
    }
    Ok(s)
}

/// The parameter array of a Leonard system: θ and θ* from the orderings,
/// φ from the split form of A*, ϕ from the PA4 formula. PA3 is then an
/// independent consistency check.
pub fn extract_parameter_array(sys: &LeonardSystem) -> Result<ParameterArray, LeonardError> {
    let spec = sys.a.spec();
    let d = sys.d();
    let s = split_basis(sys)?;
    let star_split = sys.a_star.conjugate(&s).expect("S is invertible");
    let mut pa = ParameterArray {
        spec,
        theta: sys.theta().to_vec(),
        theta_star: sys.theta_star().to_vec(),
        varphi: (1..=d).map(|i| star_split.get(i - 1, i).clone()).collect(),
        phi: vec![FieldElement::zero(spec); d],
    };
    for i in 1..=d {
        pa.phi[i - 1] = pa.pa4_value(i);
    }
    let report = validate(&pa);
    if !report.is_valid() {
        return Err(LeonardError::ExtractionInvalid(report));
    }
    Ok(pa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::leonard::is_leonard_pair;
    use crate::parray::{construct_bidiagonal, varphi_upper};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn elts(v: &[i64]) -> Vec<FieldElement> {
        v.iter().map(|&x| FieldElement::from_i64(Q, x)).collect()
    }

    #[test]
    fn section2_extraction() {
        let a = ExactMatrix::from_i64_rows(Q, &[&[0, 3, 0, 0], &[1, 0, 2, 0], &[0, 2, 0, 1], &[0, 0, 3, 0]]);
        let s = ExactMatrix::diagonal(Q, &elts(&[3, 1, -1, -3]));
        let sys = is_leonard_pair(&a, &s).unwrap().system.unwrap();
        let sb = split_basis(&sys).unwrap();
        assert!(a.conjugate(&sb).unwrap().shape().lower_bidiagonal);
        let pa = extract_parameter_array(&sys).unwrap();
        assert_eq!(pa.theta, elts(&[-3, -1, 1, 3]));
        assert_eq!(pa.theta_star, elts(&[-3, -1, 1, 3]));
        // PA3 at i = 1 by hand: φ_1 = ϕ_1 + (θ*_1-θ*_0)(θ_0-θ_3) = 6 + 2*(-6) = -6
        assert_eq!(pa.varphi, elts(&[-6, -8, -6]));
        assert_eq!(pa.phi, elts(&[6, 8, 6]));
    }

    #[test]
    fn canonical_pair_is_already_split() {
        let t = elts(&[3, 1, -1, -3]);
        let pa = ParameterArray::new(Q, t.clone(), t.clone(), elts(&[-6, -8, -6]), elts(&[6, 8, 6])).unwrap();
        let (a, s) = construct_bidiagonal(&pa).unwrap();
        let sys = LeonardSystem::with_orderings(&a, &s, &t, &t).unwrap();
        assert_eq!(split_basis(&sys).unwrap(), ExactMatrix::identity(Q, 4));
        assert_eq!(extract_parameter_array(&sys).unwrap(), pa);
        assert_eq!(s, varphi_upper(Q, &t, &pa.varphi));
    }

    #[test]
    fn d_zero() {
        let a = ExactMatrix::from_i64_rows(Q, &[&[2]]);
        let s = ExactMatrix::from_i64_rows(Q, &[&[5]]);
        let sys = is_leonard_pair(&a, &s).unwrap().system.unwrap();
        assert_eq!(split_basis(&sys).unwrap(), ExactMatrix::identity(Q, 1));
        let pa = extract_parameter_array(&sys).unwrap();
        assert!(pa.varphi.is_empty() && pa.phi.is_empty());
    }
}
