use super::{require_setup, ParameterArray, ParrayError};
use crate::field::{FieldElement, Polynomial};

fn series(
    pa: &ParameterArray,
    i: usize,
    node: impl Fn(usize) -> usize,
    weights: &[FieldElement],
) -> Result<Polynomial, ParrayError> {
    let d = pa.d();
    if i > d {
        return Err(ParrayError::IndexOutOfRange { index: i, d });
    }
    require_setup(pa)?;
    let spec = pa.spec;
    let mut total = Polynomial::zero(spec);
    let mut basis = Polynomial::one(spec);
    let mut coeff = FieldElement::one(spec);
    for n in 0..=i {
        total = total.add(&basis.scale(&coeff));
        if n == i {
            break;
        }
        basis = basis.mul(&Polynomial::linear_factor(&pa.theta[node(n)]));
        coeff = &(&coeff * &(&pa.theta_star[i] - &pa.theta_star[n])) / &weights[n];
    }
    Ok(total)
}

/// Sum over n <= i of (λ-θ_0)..(λ-θ_{n-1}) (θ*_i-θ*_0)..(θ*_i-θ*_{n-1}) / (φ_1..φ_n).
/// Normalized so that its value at λ = θ_0 is 1.
pub fn poly_u(pa: &ParameterArray, i: usize) -> Result<Polynomial, ParrayError> {
    series(pa, i, |h| h, &pa.varphi)
}

/// The same sum with θ_d, θ_{d-1}, ... in place of θ_0, θ_1, ... and ϕ in
/// place of φ.
pub fn poly_u_dual(pa: &ParameterArray, i: usize) -> Result<Polynomial, ParrayError> {
    let d = pa.d();
    series(pa, i, |h| d - h, &pa.phi)
}

/// True when every poly_u(i) is a nonzero scalar multiple of poly_u_dual(i).
pub fn check_poly_characterization(pa: &ParameterArray) -> Result<bool, ParrayError> {
    for i in 0..=pa.d() {
        let u = poly_u(pa, i)?;
        let v = poly_u_dual(pa, i)?;
        if u.scalar_multiple_of(&v).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
