//! Roots of a polynomial that lie in its coefficient field.
//!
//! * GF(p): exhaustive evaluation (bounded by [`EXHAUSTIVE_SEARCH_LIMIT`]).
//! * Q: the square-free part is scaled to a monic integer polynomial whose
//!   integer roots are recovered by p-adic (Hensel) lifting of its simple
//!   roots modulo a small prime, then confirmed exactly.
//! * Q(sqrt m): only polynomials with rational coefficients, or of degree
//!   at most 2. Irrational roots a +- b*sqrt(m) of a rational polynomial
//!   come in conjugate pairs with rational sum 2a, so they are found from the
//!   rational roots of the pair-sum polynomial (built from power sums).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{
    add_mod, mul_mod, rational_sqrt, reduce_bigint, FieldElement, FieldSpec, Polynomial,
};

/// Largest prime for which exhaustive root search is attempted.
pub const EXHAUSTIVE_SEARCH_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("exhaustive root search over GF({0}) is too large (limit {EXHAUSTIVE_SEARCH_LIMIT})")]
    SearchTooLarge(u64),
    #[error("root finding over {0} needs rational coefficients or degree at most 2")]
    Unsupported(FieldSpec),
}

/// All roots of `p` in its field with multiplicities, sorted canonically.
pub fn roots_in_field(p: &Polynomial) -> Result<Vec<(FieldElement, usize)>, RootError> {
    let deg = p.degree().ok_or(RootError::ZeroPolynomial)?;
    let spec = p.spec();
    let mut roots: Vec<FieldElement> = match spec {
        FieldSpec::PrimeField(q) => {
            if q > EXHAUSTIVE_SEARCH_LIMIT {
                return Err(RootError::SearchTooLarge(q));
            }
            let cs: Vec<u64> = p.coeffs().iter().map(|c| c.residue().unwrap()).collect();
            (0..q)
                .filter(|&x| eval_mod(&cs, x, q) == 0)
                .map(|x| FieldElement::from_i64(spec, x as i64))
                .collect()
        }
        FieldSpec::Rationals => rational_roots(p)
            .into_iter()
            .map(|r| FieldElement::from_rational(spec, &r).unwrap())
            .collect(),
        FieldSpec::QuadExt(m) => {
            let rational: Option<Vec<BigRational>> =
                p.coeffs().iter().map(|c| c.as_rational().cloned()).collect();
            match rational {
                Some(cs) => {
                    let pq = Polynomial::new(
                        FieldSpec::Rationals,
                        cs.iter()
                            .map(|c| FieldElement::from_rational(FieldSpec::Rationals, c).unwrap())
                            .collect(),
                    );
                    quadratic_extension_roots(&pq, m)
                        .into_iter()
                        .map(|(a, b)| FieldElement::quadratic(spec, a, b))
                        .collect()
                }
                None if deg <= 2 => low_degree_roots(p),
                None => return Err(RootError::Unsupported(spec)),
            }
        }
    };
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots.dedup();
    Ok(roots
        .into_iter()
        .map(|r| {
            let k = multiplicity(p, &r);
            (r, k)
        })
        .collect())
}

fn multiplicity(p: &Polynomial, r: &FieldElement) -> usize {
    let factor = Polynomial::linear_factor(r);
    let mut cur = p.clone();
    let mut k = 0;
    loop {
        let (q, rem) = cur.div_rem(&factor).expect("nonzero divisor");
        if !rem.is_zero() {
            return k;
        }
        k += 1;
        cur = q;
    }
}

/// Roots of a polynomial of degree <= 2 in characteristic 0.
fn low_degree_roots(p: &Polynomial) -> Vec<FieldElement> {
    match p.degree() {
        Some(1) => vec![-(p.coeff(0) / p.coeff(1))],
        Some(2) => {
            let (c0, c1, c2) = (p.coeff(0), p.coeff(1), p.coeff(2));
            let four = FieldElement::from_i64(p.spec(), 4);
            let two = FieldElement::from_i64(p.spec(), 2);
            let disc = &c1 * &c1 - &four * &(&c0 * &c2);
            match disc.sqrt() {
                Some(r) => {
                    let den = &two * &c2;
                    vec![(-&c1 + &r) / &den, (-&c1 - &r) / &den]
                }
                None => Vec::new(),
            }
        }
        _ => Vec::new(),
    }
}

/// Distinct rational roots of a polynomial over Q, ascending.
pub fn rational_roots(p: &Polynomial) -> Vec<BigRational> {
    assert_eq!(p.spec(), FieldSpec::Rationals, "rational_roots needs a polynomial over Q");
    if p.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut f = p.clone();
    // strip x factors so the constant term is nonzero
    let zeros = f.coeffs().iter().take_while(|c| c.is_zero()).count();
    if zeros > 0 {
        out.push(BigRational::zero());
        f = Polynomial::new(FieldSpec::Rationals, f.coeffs()[zeros..].to_vec());
    }
    if f.degree().unwrap_or(0) >= 1 {
        let sqf = f.div_rem(&f.gcd(&f.derivative())).unwrap().0;
        let ints = integer_coefficients(&sqf);
        let n = ints.len() - 1;
        let lead = ints[n].clone();
        // g(y) = lead^(n-1) f(y / lead) is monic with integer coefficients
        let mut g = Vec::with_capacity(n + 1);
        let mut scale = BigInt::one();
        for k in (0..n).rev() {
            g.push((&ints[k] * &scale, k));
            scale *= &lead;
        }
        g.sort_by_key(|(_, k)| *k);
        let mut g: Vec<BigInt> = g.into_iter().map(|(c, _)| c).collect();
        g.push(BigInt::one());
        for y in integer_roots_monic(&g) {
            out.push(BigRational::new(y, lead.clone()));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Primitive integer coefficient vector proportional to `p`.
fn integer_coefficients(p: &Polynomial) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().unwrap().clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

/// Integer roots of a monic, square-free integer polynomial with g(0) != 0.
fn integer_roots_monic(g: &[BigInt]) -> Vec<BigInt> {
    let n = g.len() - 1;
    match n {
        0 => return Vec::new(),
        1 => return vec![-g[0].clone()],
        _ => {}
    }
    // every integer root divides g(0)
    let bound = g[0].abs();
    let p = (1009u64..)
        .filter(|&q| super::is_prime_u64(q))
        .find(|&q| square_free_mod(g, q))
        .expect("a square-free polynomial stays square-free modulo almost every prime");
    let gp: Vec<u64> = g.iter().map(|c| reduce_bigint(c, p)).collect();
    let dg: Vec<BigInt> = g
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect();
    let target = &bound * 2u32 + 1u32;
    let mut out = Vec::new();
    for r0 in (0..p).filter(|&x| eval_mod(&gp, x, p) == 0) {
        let mut modulus = BigInt::from(p);
        let mut r = BigInt::from(r0);
        while modulus <= target {
            modulus = &modulus * &modulus;
            let num = eval_big(g, &r).mod_floor(&modulus);
            let den = eval_big(&dg, &r).mod_floor(&modulus);
            let inv = mod_inverse(&den, &modulus);
            r = (&r - num * inv).mod_floor(&modulus);
        }
        let half: BigInt = &modulus / 2u32;
        let cand = if r > half { r - &modulus } else { r };
        if cand.abs() <= bound && eval_big(g, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}

fn eval_big(cs: &[BigInt], x: &BigInt) -> BigInt {
    cs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

fn eval_mod(cs: &[u64], x: u64, p: u64) -> u64 {
    cs.iter()
        .rev()
        .fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim_mod(&mut r);
    let db = b.len() - 1;
    let inv = super::inv_mod(b[db], p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        for (j, &bj) in b.iter().enumerate() {
            let t = mul_mod(c, bj, p);
            r[k + j] = add_mod(r[k + j], p - t, p);
        }
        trim_mod(&mut r);
    }
    r
}

fn square_free_mod(g: &[BigInt], p: u64) -> bool {
    let mut a: Vec<u64> = g.iter().map(|c| reduce_bigint(c, p)).collect();
    let mut b: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
        .collect();
    trim_mod(&mut a);
    trim_mod(&mut b);
    if b.is_empty() {
        return false;
    }
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

/// Roots (a, b) meaning a + b*sqrt(m) of a rational polynomial.
fn quadratic_extension_roots(f: &Polynomial, m: i64) -> Vec<(BigRational, BigRational)> {
    let q = FieldSpec::Rationals;
    let rat = rational_roots(f);
    let mut out: Vec<(BigRational, BigRational)> =
        rat.iter().map(|r| (r.clone(), BigRational::zero())).collect();

    let mut h = f.div_rem(&f.gcd(&f.derivative())).unwrap().0;
    for r in &rat {
        let lin = Polynomial::linear_factor(&FieldElement::from_rational(q, r).unwrap());
        h = h.div_rem(&lin).unwrap().0;
    }
    if h.degree().unwrap_or(0) < 2 {
        return out;
    }
    let h = h.monic();
    let mr = BigRational::from_integer(m.into());
    let half = BigRational::new(1.into(), 2.into());
    for s in rational_roots(&pair_sum_polynomial(&h)) {
        let s_el = FieldElement::from_rational(q, &s).unwrap();
        let reflected = h.compose_linear(&s_el, &FieldElement::from_i64(q, -1));
        let c = h.gcd(&reflected);
        if c.degree().unwrap_or(0) < 2 {
            continue;
        }
        // c is symmetric about s/2: c(s/2 + z) = C(z^2)
        let mid = &s * &half;
        let shifted =
            c.compose_linear(&FieldElement::from_rational(q, &mid).unwrap(), &FieldElement::one(q));
        if shifted.coeffs().iter().skip(1).step_by(2).any(|x| !x.is_zero()) {
            continue;
        }
        let even = Polynomial::new(q, shifted.coeffs().iter().step_by(2).cloned().collect());
        for w in rational_roots(&even) {
            if let Some(b) = rational_sqrt(&(&w / &mr)) {
                if b.is_zero() {
                    continue;
                }
                out.push((mid.clone(), b.clone()));
                out.push((mid.clone(), -b));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Monic polynomial whose roots are r_i + r_j (i < j) over the roots of the
/// monic polynomial `h`, computed through power sums and Newton's identities.
fn pair_sum_polynomial(h: &Polynomial) -> Polynomial {
    let q = FieldSpec::Rationals;
    let n = h.degree().unwrap();
    let big_d = n * (n - 1) / 2;
    let c: Vec<BigRational> = h
        .coeffs()
        .iter()
        .map(|x| x.as_rational().unwrap().clone())
        .collect();
    let mut pw = vec![BigRational::from_integer(n.into())];
    for k in 1..=big_d {
        let mut acc = BigRational::zero();
        for i in 1..=(k - 1).min(n) {
            acc -= &c[n - i] * &pw[k - i];
        }
        if k <= n {
            acc -= BigRational::from_integer(k.into()) * &c[n - k];
        }
        pw.push(acc);
    }
    let mut binom = vec![BigInt::one()];
    let mut pair = vec![BigRational::from_integer(big_d.into())];
    for k in 1..=big_d {
        let mut next = vec![BigInt::one(); k + 1];
        for l in 1..k {
            next[l] = &binom[l - 1] + &binom[l];
        }
        binom = next;
        let mut acc = BigRational::zero();
        for l in 0..=k {
            acc += BigRational::from_integer(binom[l].clone()) * &pw[l] * &pw[k - l];
        }
        acc -= BigRational::from_integer(BigInt::from(2).pow(k as u32)) * &pw[k];
        pair.push(acc / BigRational::from_integer(2.into()));
    }
    let mut e = vec![BigRational::one()];
    for k in 1..=big_d {
        let mut acc = BigRational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &pair[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / BigRational::from_integer(k.into()));
    }
    let coeffs = (0..=big_d)
        .map(|j| {
            let k = big_d - j;
            let v = if k % 2 == 0 { e[k].clone() } else { -e[k].clone() };
            FieldElement::from_rational(q, &v).unwrap()
        })
        .collect();
    Polynomial::new(q, coeffs)
}
