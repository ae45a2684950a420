use std::fmt;

use super::{FieldElement, FieldError, FieldSpec};

/// Univariate polynomial over one field, lowest degree first, never with
/// trailing zero coefficients (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    spec: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn zero(spec: FieldSpec) -> Self {
        Polynomial {
            spec,
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::constant(FieldElement::one(spec))
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.spec(), vec![c])
    }

    /// The monic linear polynomial (x - root).
    pub fn linear_factor(root: &FieldElement) -> Self {
        Self::new(root.spec(), vec![-root, FieldElement::one(root.spec())])
    }

    pub fn new(spec: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        assert!(
            coeffs.iter().all(|c| c.spec() == spec),
            "polynomial coefficients must lie in {spec}"
        );
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        Polynomial { spec, coeffs }
    }

    pub fn from_i64(spec: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(
            spec,
            coeffs.iter().map(|&c| FieldElement::from_i64(spec, c)).collect(),
        )
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.spec))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement, FieldError> {
        if x.spec() != self.spec {
            return Err(FieldError::Mismatch(self.spec, x.spec()));
        }
        let mut acc = FieldElement::zero(self.spec);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        Ok(acc)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.spec, (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.spec, (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.spec);
        }
        let mut out = vec![FieldElement::zero(self.spec); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.spec, out)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.spec, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Euclidean division: (quotient, remainder).
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let dd = divisor.degree().ok_or(FieldError::DivisionByZero)?;
        let lc_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Self::zero(self.spec), self.clone()));
        };
        let mut quot = vec![FieldElement::zero(self.spec); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(self.spec, quot), Self::new(self.spec, rem)))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("divisor is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.spec,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &FieldElement::from_i64(self.spec, k as i64))
                .collect(),
        )
    }

    /// p(a + b*x).
    pub fn compose_linear(&self, a: &FieldElement, b: &FieldElement) -> Self {
        let inner = Self::new(self.spec, vec![a.clone(), b.clone()]);
        let mut acc = Self::zero(self.spec);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&inner).add(&Self::constant(c.clone()));
        }
        acc
    }

    /// Whether self = c * other for some nonzero scalar c, with c read off
    /// the leading coefficients.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<FieldElement> {
        if self.degree() != other.degree() {
            return None;
        }
        let c = match (self.leading(), other.leading()) {
            (Some(a), Some(b)) => a / b,
            _ => return None,
        };
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Polynomial::from_i64(Q, &[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(Polynomial::from_i64(Q, &[0, 0]).degree(), None);
    }

    #[test]
    fn eval_examples() {
        let p = Polynomial::from_i64(Q, &[-2, 0, 1]);
        assert_eq!(p.eval(&FieldElement::zero(Q)).unwrap().to_string(), "-2");
        assert!(Polynomial::zero(Q).eval(&FieldElement::from_i64(Q, 5)).unwrap().is_zero());
        let k = FieldSpec::quadratic(2).unwrap();
        let pk = Polynomial::from_i64(k, &[-2, 0, 1]);
        assert!(pk.eval(&FieldElement::sqrt_generator(k).unwrap()).unwrap().is_zero());
        assert!(matches!(
            p.eval(&FieldElement::one(k)),
            Err(FieldError::Mismatch(..))
        ));
    }

    #[test]
    fn division_and_gcd() {
        // (x-1)(x+2) and (x-1)(x-3)
        let a = Polynomial::from_i64(Q, &[-2, 1, 1]);
        let b = Polynomial::from_i64(Q, &[3, -4, 1]);
        assert_eq!(a.gcd(&b), Polynomial::from_i64(Q, &[-1, 1]));
        let (quo, rem) = a.mul(&b).div_rem(&b).unwrap();
        assert_eq!(quo, a);
        assert!(rem.is_zero());
        assert!(a.div_rem(&Polynomial::zero(Q)).is_err());
    }

    #[test]
    fn composition() {
        // p(x) = x^2, p(1 - x) = 1 - 2x + x^2
        let p = Polynomial::from_i64(Q, &[0, 0, 1]);
        let c = p.compose_linear(&FieldElement::one(Q), &FieldElement::from_i64(Q, -1));
        assert_eq!(c, Polynomial::from_i64(Q, &[1, -2, 1]));
    }
}
