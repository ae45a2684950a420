use super::GenError;
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{is_multiplicity_free, ExactMatrix};

/// The irreducible module V_d: h v_i = (d-2i) v_i, f v_i = (i+1) v_{i+1},
/// e v_i = (d-i+1) v_{i-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Module {
    pub d: usize,
    pub e: ExactMatrix,
    pub f: ExactMatrix,
    pub h: ExactMatrix,
}

impl Sl2Module {
    /// [h,e] = 2e, [h,f] = -2f, [e,f] = h, checked entrywise.
    pub fn relations_hold(&self) -> bool {
        let spec = self.e.spec();
        let two = FieldElement::from_i64(spec, 2);
        self.h.commutator(&self.e) == self.e.scale(&two)
            && self.h.commutator(&self.f) == self.f.scale(&-&two)
            && self.e.commutator(&self.f) == self.h
    }

    /// Matrix of x e + y f + z h.
    pub fn element(&self, el: &Sl2Element) -> ExactMatrix {
        self.e.scale(&el.x).add(&self.f.scale(&el.y)).add(&self.h.scale(&el.z))
    }
}

/// x e + y f + z h
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Element {
    pub x: FieldElement,
    pub y: FieldElement,
    pub z: FieldElement,
}

impl Sl2Element {
    pub fn new(spec: FieldSpec, x: i64, y: i64, z: i64) -> Self {
        Sl2Element {
            x: FieldElement::from_i64(spec, x),
            y: FieldElement::from_i64(spec, y),
            z: FieldElement::from_i64(spec, z),
        }
    }

    pub fn h(spec: FieldSpec) -> Self {
        Self::new(spec, 0, 0, 1)
    }

    pub fn e_plus_f(spec: FieldSpec) -> Self {
        Self::new(spec, 1, 1, 0)
    }

    /// [self, other] in coordinates (e, f, h).
    pub fn bracket(&self, o: &Sl2Element) -> Sl2Element {
        let two = FieldElement::from_i64(self.x.spec(), 2);
        Sl2Element {
            x: &two * &(&(&self.z * &o.x) - &(&self.x * &o.z)),
            y: &two * &(&(&self.y * &o.z) - &(&self.z * &o.y)),
            z: &(&self.x * &o.y) - &(&self.y * &o.x),
        }
    }

    fn coords(&self) -> Vec<FieldElement> {
        vec![self.x.clone(), self.y.clone(), self.z.clone()]
    }
}

pub fn sl2_module(spec: FieldSpec, d: usize) -> Result<Sl2Module, GenError> {
    if spec.characteristic() != 0 {
        return Err(GenError::NeedsCharacteristicZero(spec));
    }
    let n = d + 1;
    let c = |v: usize| FieldElement::from_i64(spec, v as i64);
    let h = ExactMatrix::diagonal(spec, &(0..n).map(|i| FieldElement::from_i64(spec, d as i64 - 2 * i as i64)).collect::<Vec<_>>());
    let mut e = ExactMatrix::zeros(spec, n, n);
    let mut f = ExactMatrix::zeros(spec, n, n);
    for i in 0..d {
        f.set(i + 1, i, c(i + 1));
        e.set(i, i + 1, c(d - i));
    }
    Ok(Sl2Module { d, e, f, h })
}

/// Matrices of two elements of sl2 on V_d. Both must be semisimple with
/// eigenvalues in the field, and together they must generate sl2.
pub fn sl2_pair(
    spec: FieldSpec,
    d: usize,
    a: &Sl2Element,
    a_star: &Sl2Element,
) -> Result<(ExactMatrix, ExactMatrix), GenError> {
    let module = sl2_module(spec, d)?;
    let v1 = sl2_module(spec, 1)?;
    for (name, el) in [("A", a), ("A*", a_star)] {
        // on V_1 the characteristic polynomial is x^2 - (z^2 + xy)
        if is_multiplicity_free(&v1.element(el)).is_none() {
            let disc = &(&el.z * &el.z) + &(&el.x * &el.y);
            return Err(if disc.is_zero() {
                GenError::NotSemisimple(name.into())
            } else {
                GenError::EigenvaluesOutsideField(name.into(), spec)
            });
        }
    }
    let c = a.bracket(a_star);
    let span = ExactMatrix::from_rows(
        spec,
        vec![a.coords(), a_star.coords(), c.coords(), a.bracket(&c).coords(), a_star.bracket(&c).coords()],
    )
    .expect("three coordinates each");
    if span.rank() < 3 {
        return Err(GenError::DoesNotGenerate);
    }
    let ma = module.element(a);
    let ms = module.element(a_star);
    for (name, m) in [("A", &ma), ("A*", &ms)] {
        if is_multiplicity_free(m).is_none() {
            return Err(GenError::EigenvaluesOutsideField(name.into(), spec));
        }
    }
    Ok((ma, ms))
}
