use leonard_core::field::{roots_in_field, FieldElement, FieldSpec, Polynomial};
use leonard_core::generators::build_lattice;
use leonard_core::json::{array_from_json, array_to_json, matrix_from_json, matrix_to_json, VerificationReport};
use leonard_core::leonard::{extract_parameter_array, fit_askey_wilson, is_leonard_pair, LeonardSystem};
use leonard_core::matrix::ExactMatrix;
use leonard_core::parray::random::{random_array, Recurrence};
use leonard_core::parray::{construct_bidiagonal, construct_tridiagonal, validate, ParameterArray, Split};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn spec_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(Q),
        Just(FieldSpec::PrimeField(2)),
        Just(FieldSpec::PrimeField(7)),
        Just(FieldSpec::PrimeField(101)),
        Just(FieldSpec::PrimeField(2_305_843_009_213_693_951)),
        Just(FieldSpec::QuadExt(2)),
        Just(FieldSpec::QuadExt(-3)),
        Just(FieldSpec::QuadExt(5)),
    ]
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn element(spec: FieldSpec) -> BoxedStrategy<FieldElement> {
    match spec {
        FieldSpec::PrimeField(p) => (0..p).prop_map(move |r| FieldElement::from_bigint(spec, &BigInt::from(r))).boxed(),
        FieldSpec::Rationals => (-50i64..50, 1i64..20)
            .prop_map(move |(n, d)| FieldElement::from_ratio(spec, n, d).unwrap())
            .boxed(),
        FieldSpec::QuadExt(_) => (-20i64..20, 1i64..9, -20i64..20, 1i64..9)
            .prop_map(move |(a, b, c, d)| FieldElement::quadratic(spec, rational(a, b), rational(c, d)))
            .boxed(),
    }
}

fn triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
    spec_strategy().prop_flat_map(|s| (element(s), element(s), element(s)))
}

fn matrix(spec: FieldSpec, n: usize) -> impl Strategy<Value = ExactMatrix> {
    proptest::collection::vec(element(spec), n * n).prop_map(move |v| {
        ExactMatrix::from_rows(spec, v.chunks(n).map(|c| c.to_vec()).collect()).unwrap()
    })
}

/// A valid array drawn from one of the recurrence families.
fn array(seed: u64, field: u8, d: usize, kind: u8) -> Option<ParameterArray> {
    let spec = match field % 3 {
        0 => Q,
        1 => FieldSpec::PrimeField(101),
        _ => FieldSpec::PrimeField(13),
    };
    let kind = match kind % 3 {
        0 => Recurrence::Classical,
        1 => Recurrence::QType(FieldElement::from_i64(spec, 3)),
        _ => Recurrence::BannaiIto,
    };
    random_array(&mut ChaCha8Rng::seed_from_u64(seed), spec, d, &kind)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms((a, b, c) in triple()) {
        let spec = a.spec();
        let zero = FieldElement::zero(spec);
        let one = FieldElement::one(spec);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert_eq!(&a + &(-&a), zero.clone());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), one);
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn canonical_strings_round_trip((a, _, _) in triple()) {
        let s = a.to_string();
        let back = FieldElement::parse(a.spec(), &s).unwrap();
        prop_assert_eq!(back.to_string(), s);
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn roots_are_exactly_the_zeros_mod_p(coeffs in proptest::collection::vec(0i64..31, 1..7)) {
        let spec = FieldSpec::PrimeField(31);
        let p = Polynomial::new(spec, coeffs.iter().map(|&c| FieldElement::from_i64(spec, c)).collect());
        prop_assume!(!p.is_zero());
        let found: Vec<FieldElement> = roots_in_field(&p).unwrap().into_iter().map(|(r, _)| r).collect();
        let zeros: Vec<FieldElement> = (0..31).map(|x| FieldElement::from_i64(spec, x)).filter(|x| p.eval(x).unwrap().is_zero()).collect();
        prop_assert_eq!(found, zeros);
    }

    #[test]
    fn rational_roots_of_products(roots in proptest::collection::vec((-30i64..30, 1i64..8), 0..5), irr in 1i64..5) {
        // (x^2 + irr) has no rational root
        let mut p = Polynomial::new(Q, vec![FieldElement::from_i64(Q, irr), FieldElement::zero(Q), FieldElement::one(Q)]);
        let mut expected = Vec::new();
        for (n, d) in roots {
            let r = FieldElement::from_ratio(Q, n, d).unwrap();
            p = p.mul(&Polynomial::linear_factor(&r));
            expected.push(r);
        }
        expected.sort_by(|a, b| a.canonical_cmp(b));
        expected.dedup();
        let found: Vec<FieldElement> = roots_in_field(&p).unwrap().into_iter().map(|(r, _)| r).collect();
        for r in &found {
            prop_assert!(p.eval(r).unwrap().is_zero());
        }
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn char_poly_is_similarity_invariant(
        (m, g) in (spec_strategy(), 1usize..=7).prop_flat_map(|(s, n)| (matrix(s, n), matrix(s, n)))
    ) {
        prop_assume!(g.determinant().is_ok_and(|d| !d.is_zero()));
        prop_assert_eq!(m.conjugate(&g).unwrap().char_poly().unwrap(), m.char_poly().unwrap());
    }

    #[test]
    fn char_poly_matches_determinant(
        (m, x) in (spec_strategy(), 1usize..=5).prop_flat_map(|(s, n)| (matrix(s, n), element(s)))
    ) {
        let lhs = m.char_poly().unwrap().eval(&x).unwrap();
        let n = m.rows();
        let xi = ExactMatrix::identity(m.spec(), n).scale(&x);
        prop_assert_eq!(lhs, xi.sub(&m).determinant().unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn bidiagonal_round_trip(seed: u64, field: u8, d in 0usize..=6, kind: u8) {
        let Some(pa) = array(seed, field, d, kind) else { return Ok(()) };
        let (a, s) = construct_bidiagonal(&pa).unwrap();
        let sys = LeonardSystem::with_orderings(&a, &s, &pa.theta, &pa.theta_star).unwrap();
        prop_assert!(sys.block_conditions_hold());
        prop_assert_eq!(extract_parameter_array(&sys).unwrap(), pa);
    }

    #[test]
    fn reversed_theta_array_is_valid(seed: u64, field: u8, d in 0usize..=6, kind: u8) {
        let Some(pa) = array(seed, field, d, kind) else { return Ok(()) };
        prop_assert!(validate(&pa.reversed_theta()).is_valid());
    }

    #[test]
    fn recognition_symmetry_and_witness(seed: u64, field: u8, d in 0usize..=5, kind: u8) {
        let Some(pa) = array(seed, field, d, kind) else { return Ok(()) };
        let (a, s) = construct_tridiagonal(&pa, Split::Unit).unwrap();
        let r = is_leonard_pair(&a, &s).unwrap();
        let swapped = is_leonard_pair(&s, &a).unwrap();
        prop_assert!(r.is_leonard_pair());
        prop_assert!(swapped.is_leonard_pair());
        prop_assert_eq!(r.orderings_found, swapped.orderings_found);
        let sys = r.system.unwrap();
        prop_assert!(sys.block_conditions_hold());
        prop_assert!(sys.dual().block_conditions_hold());
        prop_assert!(swapped.system.unwrap().block_conditions_hold());
    }

    #[test]
    fn recognition_is_affine_invariant(seed: u64, field: u8, d in 0usize..=5, kind: u8, coeffs in (1i64..6, -5i64..5, 1i64..6, -5i64..5)) {
        let Some(pa) = array(seed, field, d, kind) else { return Ok(()) };
        let spec = pa.spec;
        let (a, s) = construct_tridiagonal(&pa, Split::Unit).unwrap();
        let e = |x| FieldElement::from_i64(spec, x);
        let a2 = a.scale(&e(coeffs.0)).shift(&e(coeffs.1));
        let s2 = s.scale(&e(coeffs.2)).shift(&e(coeffs.3));
        prop_assume!(!e(coeffs.0).is_zero() && !e(coeffs.2).is_zero());
        prop_assert_eq!(is_leonard_pair(&a2, &s2).unwrap().is_leonard_pair(), is_leonard_pair(&a, &s).unwrap().is_leonard_pair());
        // perturbing one off-diagonal entry of a genuine pair is also stable under the same maps
        let mut broken = a.clone();
        if d >= 2 {
            broken.set(0, 2, e(1));
            let b2 = broken.scale(&e(coeffs.0)).shift(&e(coeffs.1));
            prop_assert_eq!(is_leonard_pair(&b2, &s2).unwrap().is_leonard_pair(), is_leonard_pair(&broken, &s).unwrap().is_leonard_pair());
        }
    }

    #[test]
    fn askey_wilson_fit_on_constructed_pairs(seed: u64, field: u8, d in 0usize..=6, kind: u8) {
        let Some(pa) = array(seed, field, d, kind) else { return Ok(()) };
        let (a, s) = construct_bidiagonal(&pa).unwrap();
        let aw = fit_askey_wilson(&a, &s).unwrap();
        prop_assert!(aw.relations_hold(&a, &s));
        prop_assert_eq!(aw.unique, d >= 3);
    }

    #[test]
    fn json_parse_print_identity(seed: u64, field: u8, d in 0usize..=4, kind: u8) {
        let Some(pa) = array(seed, field, d, kind) else { return Ok(()) };
        let text = array_to_json(&pa);
        prop_assert_eq!(array_to_json(&array_from_json(&text).unwrap()), text);
        let (a, s) = construct_tridiagonal(&pa, Split::Symmetric).unwrap();
        let mt = matrix_to_json(&a);
        prop_assert_eq!(matrix_to_json(&matrix_from_json(&mt).unwrap()), mt);
        let report = VerificationReport::for_pair(&a, &s).unwrap().to_json();
        prop_assert_eq!(VerificationReport::from_json(&report).unwrap().to_json(), report);
    }
}

#[test]
fn lattice_diameters_are_rank_symmetric() {
    for (n, q) in [(2, 2), (3, 2), (3, 3), (4, 2), (2, 5)] {
        let lat = build_lattice(n, q).unwrap();
        let mut per_dim = vec![0usize; n + 1];
        for &k in &lat.dims {
            per_dim[k] += 1;
        }
        let mirrored: Vec<usize> = per_dim.iter().rev().copied().collect();
        assert_eq!(per_dim, mirrored, "n={n} q={q}");
    }
}
