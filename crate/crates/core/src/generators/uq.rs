use super::GenError;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

/// [n]_q = (q^n - q^-n) / (q - q^-1)
pub fn q_integer(q: &FieldElement, n: i64) -> FieldElement {
    let num = &q.pow(n).expect("q nonzero") - &q.pow(-n).expect("q nonzero");
    &num / &(q - &q.inv().expect("q nonzero"))
}

/// The module V_{ε,d}: k u_i = ε q^{d-2i} u_i, f u_i = [i+1]_q u_{i+1},
/// e u_i = ε [d-i+1]_q u_{i-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UqModule {
    pub q: FieldElement,
    pub epsilon: i64,
    pub d: usize,
    pub e: ExactMatrix,
    pub f: ExactMatrix,
    pub k: ExactMatrix,
    pub k_inv: ExactMatrix,
}

impl UqModule {
    /// kk^-1 = 1, ke = q^2 ek, kf = q^-2 fk, ef - fe = (k - k^-1)/(q - q^-1).
    pub fn relations_hold(&self) -> bool {
        let spec = self.q.spec();
        let n = self.d + 1;
        let q2 = &self.q * &self.q;
        let q2_inv = q2.inv().unwrap();
        let denom = (&self.q - &self.q.inv().unwrap()).inv().unwrap();
        self.k.mul(&self.k_inv) == ExactMatrix::identity(spec, n)
            && self.k_inv.mul(&self.k) == ExactMatrix::identity(spec, n)
            && self.k.mul(&self.e) == self.e.mul(&self.k).scale(&q2)
            && self.k.mul(&self.f) == self.f.mul(&self.k).scale(&q2_inv)
            && self.e.commutator(&self.f) == self.k.sub(&self.k_inv).scale(&denom)
    }
}

/// Reject q = 0 and roots of unity. The roots of unity in the rationals and
/// in quadratic fields all have order 1, 2, 3, 4 or 6.
fn check_q(q: &FieldElement) -> Result<(), GenError> {
    if q.spec().is_finite() {
        return Err(GenError::FiniteField(q.spec()));
    }
    if q.is_zero() || [1, 2, 3, 4, 6].iter().any(|&k| q.pow(k).unwrap().is_one()) {
        return Err(GenError::RootOfUnity(q.clone()));
    }
    Ok(())
}

pub fn uq_module(q: &FieldElement, epsilon: i64, d: usize) -> Result<UqModule, GenError> {
    check_q(q)?;
    if epsilon != 1 && epsilon != -1 {
        return Err(GenError::BadEpsilon(epsilon));
    }
    let spec = q.spec();
    let eps = FieldElement::from_i64(spec, epsilon);
    let n = d + 1;
    let weights: Vec<FieldElement> = (0..n).map(|i| &eps * &q.pow(d as i64 - 2 * i as i64).unwrap()).collect();
    let k_inv = ExactMatrix::diagonal(spec, &weights.iter().map(|w| w.inv().unwrap()).collect::<Vec<_>>());
    let k = ExactMatrix::diagonal(spec, &weights);
    let mut e = ExactMatrix::zeros(spec, n, n);
    let mut f = ExactMatrix::zeros(spec, n, n);
    for i in 0..d {
        f.set(i + 1, i, q_integer(q, i as i64 + 1));
        e.set(i, i + 1, &eps * &q_integer(q, (d - i) as i64));
    }
    Ok(UqModule {
        q: q.clone(),
        epsilon,
        d,
        e,
        f,
        k,
        k_inv,
    })
}

/// A = αf + k/(q - q^-1), A* = βe + k^-1/(q - q^-1) on V_{ε,d}, with their
/// spectra read off the triangular forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UqPair {
    pub module: UqModule,
    pub a: ExactMatrix,
    pub a_star: ExactMatrix,
    /// ε q^{d-2i} / (q - q^-1)
    pub theta: Vec<FieldElement>,
    /// ε q^{2i-d} / (q - q^-1)
    pub theta_star: Vec<FieldElement>,
    /// εαβ is one of q^{d-1}, q^{d-3}, ..., q^{1-d}
    pub forbidden: bool,
}

pub fn uq_pair(
    q: &FieldElement,
    epsilon: i64,
    d: usize,
    alpha: &FieldElement,
    beta: &FieldElement,
) -> Result<UqPair, GenError> {
    let module = uq_module(q, epsilon, d)?;
    let spec: FieldSpec = q.spec();
    for (name, x) in [("alpha", alpha), ("beta", beta)] {
        if x.spec() != spec {
            return Err(GenError::WrongField(x.clone(), spec));
        }
        if x.is_zero() {
            return Err(GenError::ZeroScalar(name));
        }
    }
    let denom = (q - &q.inv().unwrap()).inv().unwrap();
    let a = module.f.scale(alpha).add(&module.k.scale(&denom));
    let a_star = module.e.scale(beta).add(&module.k_inv.scale(&denom));
    let theta = (0..=d).map(|i| &module.k.get(i, i).clone() * &denom).collect();
    let theta_star = (0..=d).map(|i| &module.k_inv.get(i, i).clone() * &denom).collect();
    let product = &(&FieldElement::from_i64(spec, epsilon) * alpha) * beta;
    let forbidden = (0..d).any(|j| product == q.pow(d as i64 - 1 - 2 * j as i64).unwrap());
    Ok(UqPair {
        module,
        a,
        a_star,
        theta,
        theta_star,
        forbidden,
    })
}
