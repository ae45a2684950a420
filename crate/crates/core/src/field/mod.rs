//! Exact scalars over the rationals, prime fields and real/imaginary
//! quadratic extensions of the rationals.
//!
//! Every [`FieldElement`] carries its [`FieldSpec`]; mixing elements of
//! different fields in arithmetic is a programming error and panics, while
//! the checked entry points (`try_*`, [`FieldElement::inv`]) report it as a
//! [`FieldError`].

mod poly;
mod roots;

pub use poly::Polynomial;
pub use roots::{rational_roots, roots_in_field, RootError, EXHAUSTIVE_SEARCH_LIMIT};

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest modulus accepted for a prime field (2^61 - 1).
pub const MAX_PRIME: u64 = (1u64 << 61) - 1;

/// Largest |m| accepted as the discriminant of a quadratic extension.
pub const MAX_DISCRIMINANT: i64 = 1_000_000_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported maximum 2^61-1")]
    PrimeTooLarge(u64),
    #[error("discriminant {0} is not a square-free non-square integer")]
    BadDiscriminant(i64),
    #[error("field mismatch: {0} vs {1}")]
    Mismatch(FieldSpec, FieldSpec),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} as an element of {spec}: {reason}")]
    Parse {
        spec: FieldSpec,
        input: String,
        reason: String,
    },
    #[error("cannot parse field spec {0:?}")]
    SpecParse(String),
    #[error("{value} has no image in {spec} (denominator divisible by the characteristic)")]
    NotRepresentable { spec: FieldSpec, value: String },
}

/// Which field a scalar lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
    /// Q(sqrt(m)) for a square-free integer m other than 0 and 1.
    QuadExt(i64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::PrimeTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn quadratic(m: i64) -> Result<Self, FieldError> {
        if m == 0 || m == 1 || m.unsigned_abs() > MAX_DISCRIMINANT as u64 || !is_square_free(m) {
            return Err(FieldError::BadDiscriminant(m));
        }
        Ok(FieldSpec::QuadExt(m))
    }

    /// Characteristic: 0 for Q and Q(sqrt m), p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::PrimeField(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "GF({p})"),
            FieldSpec::QuadExt(m) => write!(f, "Q(sqrt({m}))"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || FieldError::SpecParse(s.to_string());
        if t == "Q" || t == "QQ" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(inner) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            let p: u64 = inner.parse().map_err(|_| bad())?;
            return FieldSpec::prime(p);
        }
        if let Some(inner) = t.strip_prefix("Q(sqrt(").and_then(|r| r.strip_suffix("))")) {
            let m: i64 = inner.parse().map_err(|_| bad())?;
            return FieldSpec::quadratic(m);
        }
        Err(bad())
    }
}

impl serde::Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
    /// a + b*sqrt(m)
    Quadratic(BigRational, BigRational),
}

/// An exact scalar. Representations are canonical, so structural equality
/// is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    repr: Repr,
}

impl FieldElement {
    pub fn zero(spec: FieldSpec) -> Self {
        Self::from_i64(spec, 0)
    }

    pub fn one(spec: FieldSpec) -> Self {
        Self::from_i64(spec, 1)
    }

    pub fn from_i64(spec: FieldSpec, n: i64) -> Self {
        Self::from_bigint(spec, &BigInt::from(n))
    }

    pub fn from_bigint(spec: FieldSpec, n: &BigInt) -> Self {
        let repr = match spec {
            FieldSpec::Rationals => Repr::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => Repr::Residue(reduce_bigint(n, p)),
            FieldSpec::QuadExt(_) => {
                Repr::Quadratic(BigRational::from_integer(n.clone()), BigRational::zero())
            }
        };
        FieldElement { spec, repr }
    }

    /// Embed a rational. Fails in GF(p) when p divides the denominator.
    pub fn from_rational(spec: FieldSpec, q: &BigRational) -> Result<Self, FieldError> {
        let repr = match spec {
            FieldSpec::Rationals => Repr::Rational(q.clone()),
            FieldSpec::QuadExt(_) => Repr::Quadratic(q.clone(), BigRational::zero()),
            FieldSpec::PrimeField(p) => {
                let den = reduce_bigint(q.denom(), p);
                if den == 0 {
                    return Err(FieldError::NotRepresentable {
                        spec,
                        value: q.to_string(),
                    });
                }
                let num = reduce_bigint(q.numer(), p);
                Repr::Residue(mul_mod(num, inv_mod(den, p), p))
            }
        };
        Ok(FieldElement { spec, repr })
    }

    pub fn from_ratio(spec: FieldSpec, num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Self::from_rational(spec, &BigRational::new(num.into(), den.into()))
    }

    /// a + b*sqrt(m) in Q(sqrt m).
    pub fn quadratic(spec: FieldSpec, a: BigRational, b: BigRational) -> Self {
        assert!(
            matches!(spec, FieldSpec::QuadExt(_)),
            "quadratic() requires a quadratic extension, got {spec}"
        );
        FieldElement {
            spec,
            repr: Repr::Quadratic(a, b),
        }
    }

    /// The adjoined square root sqrt(m) of a quadratic extension.
    pub fn sqrt_generator(spec: FieldSpec) -> Option<Self> {
        match spec {
            FieldSpec::QuadExt(_) => Some(Self::quadratic(
                spec,
                BigRational::zero(),
                BigRational::one(),
            )),
            _ => None,
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Quadratic(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
            Repr::Quadratic(a, b) => a.is_one() && b.is_zero(),
        }
    }

    /// The value as a rational, when it lies in the prime subfield Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            Repr::Quadratic(a, b) if b.is_zero() => Some(a),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match self.repr {
            Repr::Residue(r) => Some(r),
            _ => None,
        }
    }

    /// (a, b) with self = a + b*sqrt(m).
    pub fn quadratic_parts(&self) -> Option<(&BigRational, &BigRational)> {
        match &self.repr {
            Repr::Quadratic(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Galois conjugate a - b*sqrt(m); identity outside quadratic extensions.
    pub fn conjugate(&self) -> Self {
        match &self.repr {
            Repr::Quadratic(a, b) => Self::quadratic(self.spec, a.clone(), -b.clone()),
            _ => self.clone(),
        }
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(FieldError::Mismatch(self.spec, other.spec))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue(add_mod(*a, *b, self.p())),
            (Repr::Quadratic(a, b), Repr::Quadratic(c, d)) => Repr::Quadratic(a + c, b + d),
            _ => unreachable!("spec and representation disagree"),
        };
        Ok(FieldElement {
            spec: self.spec,
            repr,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue(mul_mod(*a, *b, self.p())),
            (Repr::Quadratic(a, b), Repr::Quadratic(c, d)) => {
                let m = BigRational::from_integer(self.m().into());
                let re = a * c + m * b * d;
                let im = a * d + b * c;
                Repr::Quadratic(re, im)
            }
            _ => unreachable!("spec and representation disagree"),
        };
        Ok(FieldElement {
            spec: self.spec,
            repr,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Residue(a) => Repr::Residue(inv_mod(*a, self.p())),
            Repr::Quadratic(a, b) => {
                // (a + b s)^-1 = (a - b s) / (a^2 - m b^2)
                let m = BigRational::from_integer(self.m().into());
                let norm = a * a - m * b * b;
                Repr::Quadratic(a / &norm, -(b / &norm))
            }
        };
        Ok(FieldElement {
            spec: self.spec,
            repr,
        })
    }

    fn neg_ref(&self) -> Self {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Residue(a) => Repr::Residue(if *a == 0 { 0 } else { self.p() - a }),
            Repr::Quadratic(a, b) => Repr::Quadratic(-a, -b),
        };
        FieldElement {
            spec: self.spec,
            repr,
        }
    }

    /// Integer power; negative exponents invert (and fail on zero).
    pub fn pow(&self, exp: i64) -> Result<Self, FieldError> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one(self.spec);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// A square root inside the same field, if one exists.
    pub fn sqrt(&self) -> Option<Self> {
        match &self.repr {
            Repr::Rational(q) => rational_sqrt(q).map(|r| FieldElement {
                spec: self.spec,
                repr: Repr::Rational(r),
            }),
            Repr::Residue(a) => sqrt_mod(*a, self.p()).map(|r| FieldElement {
                spec: self.spec,
                repr: Repr::Residue(r),
            }),
            Repr::Quadratic(a, b) => quadratic_sqrt(a, b, self.m()).map(|(x, y)| FieldElement {
                spec: self.spec,
                repr: Repr::Quadratic(x, y),
            }),
        }
    }

    /// Deterministic total order used to sort spectra: numeric for Q,
    /// residue order for GF(p), lexicographic on (a, b) for Q(sqrt m).
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue(a), Repr::Residue(b)) => a.cmp(b),
            (Repr::Quadratic(a, b), Repr::Quadratic(c, d)) => a.cmp(c).then_with(|| b.cmp(d)),
            _ => self.to_string().cmp(&other.to_string()),
        }
    }

    /// Parse the string form produced by `Display`.
    pub fn parse(spec: FieldSpec, input: &str) -> Result<Self, FieldError> {
        let err = |reason: &str| FieldError::Parse {
            spec,
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let t: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err("empty string"));
        }
        match spec {
            FieldSpec::Rationals | FieldSpec::PrimeField(_) => {
                let q = parse_rational(&t).ok_or_else(|| err("expected an integer or a/b"))?;
                Self::from_rational(spec, &q)
            }
            FieldSpec::QuadExt(_) => {
                let Some(s_pos) = t.rfind('s') else {
                    let q = parse_rational(&t).ok_or_else(|| err("expected a/b+c/d*s"))?;
                    return Self::from_rational(spec, &q);
                };
                if s_pos != t.len() - 1 {
                    return Err(err("the sqrt term must come last"));
                }
                let body = &t[..s_pos];
                // split before the sign that starts the s-term
                let split = body
                    .char_indices()
                    .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
                    .map(|(i, _)| i)
                    .next_back();
                let (rat_part, s_part) = match split {
                    Some(i) if !body[..i].ends_with('*') && !body[..i].ends_with('/') => {
                        (&body[..i], &body[i..])
                    }
                    _ => ("", body),
                };
                let a = if rat_part.is_empty() {
                    BigRational::zero()
                } else {
                    parse_rational(rat_part).ok_or_else(|| err("bad rational part"))?
                };
                let coef = s_part.strip_suffix('*').unwrap_or(s_part);
                let b = match coef {
                    "" | "+" => BigRational::one(),
                    "-" => -BigRational::one(),
                    c => parse_rational(c).ok_or_else(|| err("bad sqrt coefficient"))?,
                };
                Ok(Self::quadratic(spec, a, b))
            }
        }
    }

    fn p(&self) -> u64 {
        match self.spec {
            FieldSpec::PrimeField(p) => p,
            _ => unreachable!(),
        }
    }

    fn m(&self) -> i64 {
        match self.spec {
            FieldSpec::QuadExt(m) => m,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Quadratic(a, b) => {
                if b.is_zero() {
                    return write!(f, "{a}");
                }
                if !a.is_zero() {
                    write!(f, "{a}")?;
                    if b.is_positive() {
                        write!(f, "+")?;
                    }
                }
                if b.is_one() {
                    write!(f, "s")
                } else if (-b).is_one() {
                    write!(f, "-s")
                } else {
                    write!(f, "{b}*s")
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub(crate) fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "{a} is not invertible mod {p}");
    old_s.rem_euclid(p as i128) as u64
}

/// Tonelli-Shanks.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r.min(p - r))
}

pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Solve (x + y s)^2 = a + b s with s^2 = m over the rationals.
fn quadratic_sqrt(a: &BigRational, b: &BigRational, m: i64) -> Option<(BigRational, BigRational)> {
    let mr = BigRational::from_integer(m.into());
    if b.is_zero() {
        if let Some(x) = rational_sqrt(a) {
            return Some((x, BigRational::zero()));
        }
        return rational_sqrt(&(a / &mr)).map(|y| (BigRational::zero(), y));
    }
    // x^2 + m y^2 = a, 2xy = b  =>  x^2 = (a +- sqrt(a^2 - m b^2)) / 2
    let disc = rational_sqrt(&(a * a - &mr * b * b))?;
    let two = BigRational::from_integer(2.into());
    for cand in [(a + &disc) / &two, (a - &disc) / &two] {
        if cand.is_zero() {
            continue;
        }
        if let Some(x) = rational_sqrt(&cand) {
            let y = b / (&two * &x);
            return Some((x, y));
        }
    }
    None
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut r) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_square_free(m: i64) -> bool {
    let mut n = m.unsigned_abs();
    let mut f = 2u64;
    while f * f <= n {
        if n % (f * f) == 0 {
            return false;
        }
        if n % f == 0 {
            n /= f;
        }
        f += 1;
    }
    true
}

/// Write a positive integer q as c^2 * m with m square-free.
pub fn square_free_decomposition(q: u64) -> (u64, u64) {
    let (mut c, mut m) = (1u64, q);
    let mut f = 2u64;
    while f * f <= m {
        while m % (f * f) == 0 {
            m /= f * f;
            c *= f;
        }
        f += 1;
    }
    (c, m)
}
