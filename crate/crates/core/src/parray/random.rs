//! Seeded generation of valid parameter arrays.

use rand::Rng;

use super::{validate, ParameterArray};
use crate::field::{FieldElement, FieldSpec};

/// Solution family of the three-term recurrence shared by θ and θ*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recurrence {
    /// a + b i + c i^2
    Classical,
    /// a + b q^i + c q^-i
    QType(FieldElement),
    /// a + b (-1)^i + c i (-1)^i
    BannaiIto,
}

impl Recurrence {
    pub fn sequence(&self, spec: FieldSpec, d: usize, a: &FieldElement, b: &FieldElement, c: &FieldElement) -> Vec<FieldElement> {
        (0..=d)
            .map(|i| {
                let fi = FieldElement::from_i64(spec, i as i64);
                match self {
                    Recurrence::Classical => a + &(&(b * &fi) + &(&(c * &fi) * &fi)),
                    Recurrence::QType(q) => {
                        let qi = q.pow(i as i64).expect("q is nonzero");
                        a + &(&(b * &qi) + &(c / &qi))
                    }
                    Recurrence::BannaiIto => {
                        let sign = FieldElement::from_i64(spec, if i % 2 == 0 { 1 } else { -1 });
                        a + &(&sign * &(b + &(c * &fi)))
                    }
                }
            })
            .collect()
    }
}

/// Fill in φ_2.., ϕ_1.. from θ, θ* and φ_1 using PA3 and PA4. None when
/// θ_0 = θ_d; otherwise the result still has to pass PA1, PA2 and PA5.
pub fn complete_array(
    spec: FieldSpec,
    theta: Vec<FieldElement>,
    theta_star: Vec<FieldElement>,
    varphi1: FieldElement,
) -> Option<ParameterArray> {
    let d = theta.len() - 1;
    let zero = FieldElement::zero(spec);
    let mut pa = ParameterArray {
        spec,
        theta,
        theta_star,
        varphi: vec![varphi1; d],
        phi: vec![zero; d],
    };
    if d == 0 {
        pa.varphi.clear();
        return Some(pa);
    }
    if pa.theta[0] == pa.theta[d] {
        return None;
    }
    pa.phi[0] = pa.pa4_value(1);
    for i in 2..=d {
        pa.varphi[i - 1] = pa.pa3_value(i);
        pa.phi[i - 1] = pa.pa4_value(i);
    }
    Some(pa)
}

/// A random field element; over the rationals a small fraction.
pub fn random_element<R: Rng>(rng: &mut R, spec: FieldSpec) -> FieldElement {
    match spec {
        FieldSpec::PrimeField(p) => FieldElement::from_i64(spec, rng.gen_range(0..p.min(i64::MAX as u64)) as i64),
        _ => {
            let num = rng.gen_range(-12i64..=12);
            let den = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(2i64..=5) };
            FieldElement::from_ratio(spec, num, den).unwrap()
        }
    }
}

fn random_nonzero<R: Rng>(rng: &mut R, spec: FieldSpec) -> FieldElement {
    loop {
        let x = random_element(rng, spec);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A valid array of diameter d whose θ and θ* follow `kind`, or None when
/// no attempt out of a fixed budget passes the axioms (small fields cannot
/// hold d+1 distinct values of every shape).
pub fn random_array<R: Rng>(rng: &mut R, spec: FieldSpec, d: usize, kind: &Recurrence) -> Option<ParameterArray> {
    for _ in 0..200 {
        let mut pick = || {
            let a = random_element(rng, spec);
            let b = random_element(rng, spec);
            let c = random_element(rng, spec);
            kind.sequence(spec, d, &a, &b, &c)
        };
        let theta = pick();
        let theta_star = pick();
        let varphi1 = random_nonzero(rng, spec);
        if let Some(pa) = complete_array(spec, theta, theta_star, varphi1) {
            if validate(&pa).is_valid() {
                return Some(pa);
            }
        }
    }
    None
}
