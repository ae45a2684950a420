//! Parameter arrays: axiom checks, the canonical matrix constructions,
//! the intertwining matrix G, the polynomial test and the q-fingerprint.

mod fingerprint;
mod gmatrix;
mod polys;
pub mod random;

pub use fingerprint::{fingerprint, FamilyClass, Fingerprint};
pub use gmatrix::{find_g, theta_lower, varphi_upper, GSearch};
pub use polys::{check_poly_characterization, poly_u, poly_u_dual};

use std::fmt;

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::matrix::ExactMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParrayError {
    #[error("malformed parameter array: {0}")]
    Malformed(String),
    #[error("invalid parameter array: {0}")]
    Invalid(ValidityReport),
    #[error("sequence violates {0}")]
    Setup(ValidityReport),
    #[error("index {index} out of range for diameter {d}")]
    IndexOutOfRange { index: usize, d: usize },
}

/// (θ_0..θ_d, θ*_0..θ*_d; φ_1..φ_d, ϕ_1..ϕ_d). `varphi[j-1]` holds φ_j and
/// `phi[j-1]` holds ϕ_j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterArray {
    pub spec: FieldSpec,
    pub theta: Vec<FieldElement>,
    pub theta_star: Vec<FieldElement>,
    pub varphi: Vec<FieldElement>,
    pub phi: Vec<FieldElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    PA1,
    PA2,
    PA3,
    PA4,
    PA5,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First index at which the axiom fails.
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn passed(&self, axiom: Axiom) -> bool {
        self.checks.iter().any(|c| c.axiom == axiom && c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed: Vec<String> = self
            .failures()
            .map(|c| match c.first_failure {
                Some(i) => format!("{} fails at index {i}", c.axiom),
                None => format!("{} fails", c.axiom),
            })
            .collect();
        if failed.is_empty() {
            write!(f, "all axioms hold")
        } else {
            write!(f, "{}", failed.join(", "))
        }
    }
}

/// Which way to split the off-diagonal products of the tridiagonal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Split {
    /// A_{i,i-1} = 1, A_{i-1,i} = product
    #[default]
    Unit,
    /// both equal to a square root of the product when one exists in the
    /// field, otherwise the unit split for that entry
    Symmetric,
}

impl ParameterArray {
    pub fn new(
        spec: FieldSpec,
        theta: Vec<FieldElement>,
        theta_star: Vec<FieldElement>,
        varphi: Vec<FieldElement>,
        phi: Vec<FieldElement>,
    ) -> Result<Self, ParrayError> {
        if theta.is_empty() {
            return Err(ParrayError::Malformed("theta is empty".into()));
        }
        let d = theta.len() - 1;
        for (name, len, want) in [
            ("theta_star", theta_star.len(), d + 1),
            ("varphi", varphi.len(), d),
            ("phi", phi.len(), d),
        ] {
            if len != want {
                return Err(ParrayError::Malformed(format!(
                    "{name} has {len} entries, expected {want} for diameter {d}"
                )));
            }
        }
        let all = theta.iter().chain(&theta_star).chain(&varphi).chain(&phi);
        if let Some(x) = all.into_iter().find(|x| x.spec() != spec) {
            return Err(ParrayError::Malformed(format!(
                "entry {x} lies in {} rather than {spec}",
                x.spec()
            )));
        }
        Ok(ParameterArray {
            spec,
            theta,
            theta_star,
            varphi,
            phi,
        })
    }

    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    /// φ_i for 1 <= i <= d, zero outside that range.
    pub fn varphi_at(&self, i: usize) -> FieldElement {
        if i >= 1 && i <= self.d() {
            self.varphi[i - 1].clone()
        } else {
            FieldElement::zero(self.spec)
        }
    }

    pub fn phi_at(&self, i: usize) -> FieldElement {
        if i >= 1 && i <= self.d() {
            self.phi[i - 1].clone()
        } else {
            FieldElement::zero(self.spec)
        }
    }

    /// (θ reversed, θ*, ϕ, φ)
    pub fn reversed_theta(&self) -> ParameterArray {
        ParameterArray {
            spec: self.spec,
            theta: self.theta.iter().rev().cloned().collect(),
            theta_star: self.theta_star.clone(),
            varphi: self.phi.clone(),
            phi: self.varphi.clone(),
        }
    }

    /// The array of the pair (aA + b, cA* + e).
    pub fn affine(&self, a: &FieldElement, b: &FieldElement, c: &FieldElement, e: &FieldElement) -> ParameterArray {
        let ac = a * c;
        ParameterArray {
            spec: self.spec,
            theta: self.theta.iter().map(|t| &(a * t) + b).collect(),
            theta_star: self.theta_star.iter().map(|t| &(c * t) + e).collect(),
            varphi: self.varphi.iter().map(|x| &ac * x).collect(),
            phi: self.phi.iter().map(|x| &ac * x).collect(),
        }
    }

    /// Sum_{h<i} (θ_h - θ_{d-h}) / (θ_0 - θ_d), shared by PA3 and PA4.
    fn theta_sum(&self, i: usize) -> FieldElement {
        let d = self.d();
        let denom = (&self.theta[0] - &self.theta[d]).inv().expect("PA1 holds");
        (0..i).fold(FieldElement::zero(self.spec), |acc, h| {
            &acc + &(&(&self.theta[h] - &self.theta[d - h]) * &denom)
        })
    }

    /// Right-hand side of PA3 at index i.
    pub fn pa3_value(&self, i: usize) -> FieldElement {
        let d = self.d();
        &(&self.phi[0] * &self.theta_sum(i))
            + &(&(&self.theta_star[i] - &self.theta_star[0]) * &(&self.theta[i - 1] - &self.theta[d]))
    }

    /// Right-hand side of PA4 at index i.
    pub fn pa4_value(&self, i: usize) -> FieldElement {
        let d = self.d();
        &(&self.varphi[0] * &self.theta_sum(i))
            + &(&(&self.theta_star[i] - &self.theta_star[0]) * &(&self.theta[d - i + 1] - &self.theta[0]))
    }

    /// Entries as canonical strings, in the order θ, θ*, φ, ϕ.
    pub fn to_strings(&self) -> [Vec<String>; 4] {
        let s = |v: &[FieldElement]| v.iter().map(ToString::to_string).collect();
        [s(&self.theta), s(&self.theta_star), s(&self.varphi), s(&self.phi)]
    }
}

fn first_repeat(v: &[FieldElement]) -> Option<usize> {
    (0..v.len()).find(|&i| v[i + 1..].contains(&v[i]))
}

fn pa5_ratio(v: &[FieldElement], i: usize) -> Option<FieldElement> {
    let den = &v[i - 1] - &v[i];
    (&v[i - 2] - &v[i + 1]).try_div(&den).ok()
}

/// Check every axiom exactly.
pub fn validate(pa: &ParameterArray) -> ValidityReport {
    let d = pa.d();
    let mut checks = Vec::with_capacity(5);
    let check = |axiom, first_failure: Option<usize>| AxiomCheck {
        axiom,
        passed: first_failure.is_none(),
        first_failure,
    };

    let pa1 = match (first_repeat(&pa.theta), first_repeat(&pa.theta_star)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    checks.push(check(Axiom::PA1, pa1));
    let pa2 = (1..=d).find(|&i| pa.varphi[i - 1].is_zero() || pa.phi[i - 1].is_zero());
    checks.push(check(Axiom::PA2, pa2));

    if pa1.is_some() {
        // PA3-PA5 divide by differences of θ's; they are reported as failing
        // at the PA1 index.
        for axiom in [Axiom::PA3, Axiom::PA4, Axiom::PA5] {
            let applicable = match axiom {
                Axiom::PA5 => d >= 3,
                _ => d >= 1,
            };
            checks.push(check(axiom, applicable.then_some(pa1.unwrap())));
        }
        return ValidityReport { checks };
    }

    let pa3 = (1..=d).find(|&i| pa.varphi[i - 1] != pa.pa3_value(i));
    checks.push(check(Axiom::PA3, pa3));
    let pa4 = (1..=d).find(|&i| pa.phi[i - 1] != pa.pa4_value(i));
    checks.push(check(Axiom::PA4, pa4));

    let pa5 = if d >= 3 {
        let reference = pa5_ratio(&pa.theta, 2);
        (2..d).find(|&i| {
            let r = pa5_ratio(&pa.theta, i);
            let rs = pa5_ratio(&pa.theta_star, i);
            r.is_none() || r != reference || rs != reference
        })
    } else {
        None
    };
    checks.push(check(Axiom::PA5, pa5));
    ValidityReport { checks }
}

pub(crate) fn require_valid(pa: &ParameterArray) -> Result<(), ParrayError> {
    let report = validate(pa);
    if report.is_valid() {
        Ok(())
    } else {
        Err(ParrayError::Invalid(report))
    }
}

pub(crate) fn require_setup(pa: &ParameterArray) -> Result<(), ParrayError> {
    let report = validate(pa);
    if report.passed(Axiom::PA1) && report.passed(Axiom::PA2) {
        Ok(())
    } else {
        Err(ParrayError::Setup(report))
    }
}

/// A lower bidiagonal (diagonal θ, subdiagonal 1) and A* upper bidiagonal
/// (diagonal θ*, superdiagonal φ).
pub fn construct_bidiagonal(pa: &ParameterArray) -> Result<(ExactMatrix, ExactMatrix), ParrayError> {
    require_valid(pa)?;
    Ok((theta_lower(pa.spec, &pa.theta), varphi_upper(pa.spec, &pa.theta_star, &pa.varphi)))
}

/// Diagonal entry A_ii of the tridiagonal form.
pub fn tridiagonal_diagonal(pa: &ParameterArray, i: usize) -> FieldElement {
    let ts = &pa.theta_star;
    let mut a = pa.theta[i].clone();
    if i >= 1 {
        a = &a + &(&pa.varphi_at(i) / &(&ts[i] - &ts[i - 1]));
    }
    if i < pa.d() {
        a = &a + &(&pa.varphi_at(i + 1) / &(&ts[i] - &ts[i + 1]));
    }
    a
}

/// The product A_{i,i-1} A_{i-1,i} of the tridiagonal form, 1 <= i <= d.
pub fn tridiagonal_product(pa: &ParameterArray, i: usize) -> FieldElement {
    let ts = &pa.theta_star;
    let one = FieldElement::one(pa.spec);
    let prod = |range: std::ops::Range<usize>, at: usize| {
        range.fold(one.clone(), |acc, h| &acc * &(&ts[at] - &ts[h]))
    };
    let num = &prod(0..i - 1, i - 1) * &prod(i + 1..pa.d() + 1, i);
    let den = &prod(0..i, i) * &prod(i..pa.d() + 1, i - 1);
    &(&pa.varphi_at(i) * &pa.phi_at(i)) * &(&num / &den)
}

/// A irreducible tridiagonal and A* = diag(θ*).
pub fn construct_tridiagonal(
    pa: &ParameterArray,
    split: Split,
) -> Result<(ExactMatrix, ExactMatrix), ParrayError> {
    require_valid(pa)?;
    let n = pa.d() + 1;
    let mut a = ExactMatrix::zeros(pa.spec, n, n);
    for i in 0..n {
        a.set(i, i, tridiagonal_diagonal(pa, i));
    }
    for i in 1..n {
        let p = tridiagonal_product(pa, i);
        let (below, above) = match split {
            Split::Symmetric => match p.sqrt() {
                Some(r) => (r.clone(), r),
                None => (FieldElement::one(pa.spec), p),
            },
            Split::Unit => (FieldElement::one(pa.spec), p),
        };
        a.set(i, i - 1, below);
        a.set(i - 1, i, above);
    }
    Ok((a, ExactMatrix::diagonal(pa.spec, &pa.theta_star)))
}
