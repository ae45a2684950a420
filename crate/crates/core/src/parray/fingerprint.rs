use std::fmt;

use num_bigint::Sign;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{require_valid, ParameterArray, ParrayError};
use crate::field::{roots_in_field, square_free_decomposition, FieldElement, FieldSpec, Polynomial, MAX_DISCRIMINANT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyClass {
    QType,
    Classical,
    BannaiIto,
    SmallDiameter,
    Char2Special,
}

impl fmt::Display for FamilyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyClass::QType => "q-type",
            FamilyClass::Classical => "classical",
            FamilyClass::BannaiIto => "bannai-ito",
            FamilyClass::SmallDiameter => "small-diameter",
            FamilyClass::Char2Special => "char2-special",
        })
    }
}

/// Coarse family of a parameter array, read off the common ratio
/// (θ_{i-2} - θ_{i+1}) / (θ_{i-1} - θ_i) = β + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    /// None when d <= 2, where no index carries the ratio.
    pub beta_plus_one: Option<FieldElement>,
    pub beta: Option<FieldElement>,
    pub class: FamilyClass,
    /// For q-type arrays, a root of q^2 - βq + 1. It may live in a quadratic
    /// extension of the array's field; None when it lies outside every
    /// supported field.
    pub q: Option<FieldElement>,
}

pub fn fingerprint(pa: &ParameterArray) -> Result<Fingerprint, ParrayError> {
    require_valid(pa)?;
    let spec = pa.spec;
    if pa.d() < 3 {
        return Ok(Fingerprint {
            beta_plus_one: None,
            beta: None,
            class: FamilyClass::SmallDiameter,
            q: None,
        });
    }
    let t = &pa.theta;
    let ratio = &(&t[0] - &t[3]) / &(&t[1] - &t[2]);
    let beta = &ratio - &FieldElement::one(spec);
    let two = FieldElement::from_i64(spec, 2);
    let (class, q) = if spec.characteristic() == 2 && beta.is_zero() {
        (FamilyClass::Char2Special, None)
    } else if beta == two {
        (FamilyClass::Classical, None)
    } else if beta == -&two {
        (FamilyClass::BannaiIto, None)
    } else {
        (FamilyClass::QType, q_from_beta(&beta))
    };
    Ok(Fingerprint {
        beta_plus_one: Some(ratio),
        beta: Some(beta),
        class,
        q,
    })
}

/// A root of q^2 - βq + 1 chosen by shortest, then smallest, string form.
pub(crate) fn q_from_beta(beta: &FieldElement) -> Option<FieldElement> {
    let spec = beta.spec();
    let mut roots: Vec<FieldElement> = if spec.characteristic() == 2 {
        let p = Polynomial::new(spec, vec![FieldElement::one(spec), -beta, FieldElement::one(spec)]);
        roots_in_field(&p).ok()?.into_iter().map(|(r, _)| r).collect()
    } else {
        let two = FieldElement::from_i64(spec, 2);
        let disc = &(beta * beta) - &FieldElement::from_i64(spec, 4);
        match disc.sqrt() {
            Some(r) => vec![&(beta + &r) / &two, &(beta - &r) / &two],
            None => extension_roots(beta, &disc)?,
        }
    };
    roots.sort_by_key(|r| {
        let s = r.to_string();
        (s.len(), s)
    });
    roots.into_iter().next()
}

/// Over the rationals a non-square discriminant Δ = c^2 m gives q in Q(√m).
fn extension_roots(beta: &FieldElement, disc: &FieldElement) -> Option<Vec<FieldElement>> {
    let delta = disc.as_rational()?;
    let num = delta.numer() * delta.denom();
    let sign = if num.sign() == Sign::Minus { -1 } else { 1 };
    let mag = num.magnitude().to_u64().filter(|&v| v <= MAX_DISCRIMINANT as u64)?;
    let (c, m) = square_free_decomposition(mag);
    let ext = FieldSpec::quadratic(sign * m as i64).ok()?;
    // √Δ = (c / denom) √m
    let coef = BigRational::new(c.into(), delta.denom().clone());
    let half = BigRational::new(1.into(), 2.into());
    let b = beta.as_rational()? * &half;
    let s = coef * &half;
    debug_assert!(!s.is_zero());
    Some(vec![
        FieldElement::quadratic(ext, b.clone(), s.clone()),
        FieldElement::quadratic(ext, b, -s),
    ])
}
