use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_dims, LeonardError};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{dot, is_multiplicity_free, ExactMatrix, LinearSolution};

/// Scalars (β, γ, γ*, ϱ, ϱ*, ω, η, η*) of the two Askey-Wilson relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AskeyWilson {
    pub beta: FieldElement,
    pub gamma: FieldElement,
    pub gamma_star: FieldElement,
    pub rho: FieldElement,
    pub rho_star: FieldElement,
    pub omega: FieldElement,
    pub eta: FieldElement,
    pub eta_star: FieldElement,
    /// Whether these are the only scalars satisfying the relations.
    pub unique: bool,
}

impl AskeyWilson {
    fn from_vec(v: &[FieldElement], unique: bool) -> Self {
        AskeyWilson {
            beta: v[0].clone(),
            gamma: v[1].clone(),
            gamma_star: v[2].clone(),
            rho: v[3].clone(),
            rho_star: v[4].clone(),
            omega: v[5].clone(),
            eta: v[6].clone(),
            eta_star: v[7].clone(),
            unique,
        }
    }

    pub fn to_vec(&self) -> Vec<FieldElement> {
        vec![
            self.beta.clone(),
            self.gamma.clone(),
            self.gamma_star.clone(),
            self.rho.clone(),
            self.rho_star.clone(),
            self.omega.clone(),
            self.eta.clone(),
            self.eta_star.clone(),
        ]
    }

    /// Evaluate both relations on (A, A*).
    pub fn relations_hold(&self, a: &ExactMatrix, a_star: &ExactMatrix) -> bool {
        let (m, rhs) = relation_system(a, a_star);
        let v = self.to_vec();
        (0..m.rows()).all(|r| dot(&m.row(r), &v) == rhs[r])
    }
}

/// Both relations flattened entrywise into M x = b with unknown vector
/// x = (β, γ, γ*, ϱ, ϱ*, ω, η, η*).
fn relation_system(a: &ExactMatrix, s: &ExactMatrix) -> (ExactMatrix, Vec<FieldElement>) {
    let spec = a.spec();
    let n = a.rows();
    let zero = ExactMatrix::zeros(spec, n, n);
    let id = ExactMatrix::identity(spec, n);
    let a2 = a.mul(a);
    let s2 = s.mul(s);
    let as_ = a.mul(s);
    let sa = s.mul(a);
    let anti = as_.add(&sa);
    let rel1 = [
        as_.mul(a),
        anti.clone(),
        a2.clone(),
        s.clone(),
        zero.clone(),
        a.clone(),
        id.clone(),
        zero.clone(),
    ];
    let rhs1 = a2.mul(s).add(&s.mul(&a2));
    let rel2 = [sa.mul(s), s2.clone(), anti, zero.clone(), a.clone(), s.clone(), zero, id];
    let rhs2 = s2.mul(a).add(&a.mul(&s2));
    let cols: Vec<Vec<FieldElement>> = (0..8)
        .map(|k| rel1[k].entries().iter().chain(rel2[k].entries()).cloned().collect())
        .collect();
    let rhs = rhs1.entries().iter().chain(rhs2.entries()).cloned().collect();
    (ExactMatrix::from_columns(spec, 2 * n * n, &cols), rhs)
}

/// Solve the relations as a linear system in the eight scalars. When the
/// solution is not unique, the particular solution with free unknowns set
/// to zero is returned.
pub fn fit_askey_wilson(a: &ExactMatrix, a_star: &ExactMatrix) -> Result<AskeyWilson, LeonardError> {
    check_dims(a, a_star)?;
    let (m, rhs) = relation_system(a, a_star);
    match m.solve_linear(&rhs) {
        LinearSolution::Unique(x) => Ok(AskeyWilson::from_vec(&x, true)),
        LinearSolution::Underdetermined { particular, .. } => Ok(AskeyWilson::from_vec(&particular, false)),
        LinearSolution::Inconsistent => Err(LeonardError::NoAskeyWilsonSolution),
    }
}

/// As `fit_askey_wilson` with β fixed in advance; the uniqueness flag then
/// refers to the remaining seven scalars.
pub fn fit_askey_wilson_with_beta(
    a: &ExactMatrix,
    a_star: &ExactMatrix,
    beta: &FieldElement,
) -> Result<AskeyWilson, LeonardError> {
    check_dims(a, a_star)?;
    let (m, rhs) = relation_system(a, a_star);
    let rest: Vec<usize> = (1..8).collect();
    let all_rows: Vec<usize> = (0..m.rows()).collect();
    let reduced = m.submatrix(&all_rows, &rest);
    let rhs: Vec<FieldElement> = (0..m.rows()).map(|r| &rhs[r] - &(m.get(r, 0) * beta)).collect();
    let (x, unique) = match reduced.solve_linear(&rhs) {
        LinearSolution::Unique(x) => (x, true),
        LinearSolution::Underdetermined { particular, .. } => (particular, false),
        LinearSolution::Inconsistent => return Err(LeonardError::NoAskeyWilsonSolution),
    };
    let mut v = vec![beta.clone()];
    v.extend(x);
    Ok(AskeyWilson::from_vec(&v, unique))
}

/// Does (A, A*) generate the full matrix algebra? Builds the span of all
/// words in A and A* breadth first, stopping at dimension n^2.
pub fn generates_full_algebra(a: &ExactMatrix, a_star: &ExactMatrix) -> bool {
    let spec = a.spec();
    let n = a.rows();
    let target = n * n;
    let mut basis: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let insert = |m: &ExactMatrix, basis: &mut Vec<(usize, Vec<FieldElement>)>| -> bool {
        let mut v = m.entries().to_vec();
        for (p, row) in basis.iter() {
            if !v[*p].is_zero() {
                let c = v[*p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                let inv = v[p].inv().unwrap();
                basis.push((p, v.iter().map(|x| x * &inv).collect()));
                true
            }
            None => false,
        }
    };
    let id = ExactMatrix::identity(spec, n);
    insert(&id, &mut basis);
    queue.push_back(id);
    while let Some(w) = queue.pop_front() {
        if basis.len() == target {
            break;
        }
        for g in [a, a_star] {
            let next = g.mul(&w);
            if insert(&next, &mut basis) {
                queue.push_back(next);
            }
        }
    }
    basis.len() == target
}

/// Whether β = q + q^-1 forces q to be a root of unity: β must be 2cos(2πj/k)
/// for some k, and only the values of degree at most two over the rationals
/// can occur in the supported fields.
pub fn beta_is_root_of_unity_sum(beta: &FieldElement) -> Option<bool> {
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let rational = [r(2, 1), r(-2, 1), r(0, 1), r(1, 1), r(-1, 1)];
    match beta.spec() {
        FieldSpec::PrimeField(_) => None,
        FieldSpec::Rationals => Some(rational.contains(beta.as_rational().unwrap())),
        FieldSpec::QuadExt(m) => {
            let (a, b) = beta.quadratic_parts().unwrap();
            if b.is_zero() {
                return Some(rational.contains(a));
            }
            let half = r(1, 2);
            let hit = match m {
                // (±1 ± √5) / 2
                5 => (a == &half || a == &-half.clone()) && (b == &half || b == &-half.clone()),
                // ±√2, ±√3
                2 | 3 => a.is_zero() && (b.is_one() || *b == -BigRational::one()),
                _ => false,
            };
            Some(hit)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QStatus {
    NotRootOfUnity,
    RootOfUnity,
    /// Every nonzero element of a finite field is a root of unity.
    UnsatisfiableInFiniteField,
}

/// Per-hypothesis outcome of the converse to the Askey-Wilson theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConverseReport {
    pub beta: FieldElement,
    pub q_status: QStatus,
    pub a_multiplicity_free: bool,
    pub a_star_multiplicity_free: bool,
    pub irreducible: bool,
}

impl ConverseReport {
    /// All hypotheses hold, so the pair is a Leonard pair.
    pub fn applies(&self) -> bool {
        self.q_status == QStatus::NotRootOfUnity
            && self.a_multiplicity_free
            && self.a_star_multiplicity_free
            && self.irreducible
    }
}

impl fmt::Display for ConverseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |b: bool| if b { "pass" } else { "fail" };
        writeln!(f, "relations: pass")?;
        let q = match self.q_status {
            QStatus::NotRootOfUnity => "pass".to_string(),
            QStatus::RootOfUnity => format!("fail (q + 1/q = {} makes q a root of unity)", self.beta),
            QStatus::UnsatisfiableInFiniteField => "fail (hypothesis unsatisfiable in finite fields)".into(),
        };
        writeln!(f, "q not a root of unity: {q}")?;
        writeln!(f, "A multiplicity-free: {}", mark(self.a_multiplicity_free))?;
        writeln!(f, "A* multiplicity-free: {}", mark(self.a_star_multiplicity_free))?;
        writeln!(f, "no common invariant subspace: {}", mark(self.irreducible))?;
        if self.applies() {
            write!(f, "conclusion: A, A* is a Leonard pair")
        } else {
            write!(f, "conclusion: theorem not applicable")
        }
    }
}

/// Check the hypotheses of the converse theorem for given coefficients.
pub fn check_converse_preconditions(
    a: &ExactMatrix,
    a_star: &ExactMatrix,
    coeffs: &AskeyWilson,
) -> Result<ConverseReport, LeonardError> {
    check_dims(a, a_star)?;
    if !coeffs.relations_hold(a, a_star) {
        return Err(LeonardError::RelationsFail);
    }
    let q_status = match beta_is_root_of_unity_sum(&coeffs.beta) {
        None => QStatus::UnsatisfiableInFiniteField,
        Some(true) => QStatus::RootOfUnity,
        Some(false) => QStatus::NotRootOfUnity,
    };
    Ok(ConverseReport {
        beta: coeffs.beta.clone(),
        q_status,
        a_multiplicity_free: is_multiplicity_free(a).is_some(),
        a_star_multiplicity_free: is_multiplicity_free(a_star).is_some(),
        irreducible: generates_full_algebra(a, a_star),
    })
}
