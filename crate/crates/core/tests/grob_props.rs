use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use reptor::charlat::LaurentPoly;
use reptor::grob::{
    groebner_basis, koszul_homology, AffineContext, GrobConfig, ModVector, Polynomial, PrimeField,
    Rationals,
};

fn cfg() -> GrobConfig {
    GrobConfig {
        certify: true,
        ..GrobConfig::default()
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn arb_laurent(r: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(-2i64..=2, r), -3i64..=3),
        0..=max_terms,
    )
    .prop_map(move |terms| LaurentPoly::from_terms(r, terms))
}

fn affine(ctx: &AffineContext<Rationals>, ps: &[LaurentPoly]) -> Vec<Polynomial<Rationals>> {
    ps.iter()
        .map(|p| ctx.laurent_to_affine(p).unwrap())
        .collect()
}

/// Dense coefficients, lowest degree first, of `x^-m p` where `m` is the
/// lowest exponent: the Laurent polynomial with its unit factor removed.
fn dense(p: &LaurentPoly) -> Vec<BigRational> {
    let exps: Vec<i64> = p.terms().map(|(e, _)| e[0]).collect();
    let Some(&lo) = exps.iter().min() else {
        return Vec::new();
    };
    let hi = *exps.iter().max().unwrap();
    let mut out = vec![BigRational::zero(); (hi - lo + 1) as usize];
    for (e, c) in p.terms() {
        out[(e[0] - lo) as usize] = c.clone();
    }
    out
}

fn trim(mut a: Vec<BigRational>) -> Vec<BigRational> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let c = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - b.len();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        r = trim(r);
    }
    r
}

fn poly_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> Vec<BigRational> {
    while !b.is_empty() {
        let r = poly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_is_idempotent_and_linear(gens in prop::collection::vec(arb_laurent(2, 3), 1..3),
                                            f in arb_laurent(2, 4), g in arb_laurent(2, 4), a in -3i64..=3, b in -3i64..=3) {
        let ctx = AffineContext::new(Rationals, 2);
        let gb = groebner_basis(&ctx, &affine(&ctx, &gens), &cfg()).unwrap();
        prop_assert!(gb.certify());
        let (f, g) = (ctx.laurent_to_affine(&f).unwrap(), ctx.laurent_to_affine(&g).unwrap());
        let nf = gb.normal_form(&f);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        let combo = ModVector::sum(&Rationals, [&f.scale(&Rationals, &q(a)), &g.scale(&Rationals, &q(b))]);
        let expected = ModVector::sum(&Rationals, [&nf.scale(&Rationals, &q(a)), &gb.normal_form(&g).scale(&Rationals, &q(b))]);
        prop_assert_eq!(gb.normal_form(&combo), expected);
    }

    #[test]
    fn ideal_membership(gens in prop::collection::vec(arb_laurent(2, 3), 1..3), mults in prop::collection::vec(arb_laurent(2, 3), 2)) {
        let ctx = AffineContext::new(Rationals, 2);
        let gens = affine(&ctx, &gens);
        let gb = groebner_basis(&ctx, &gens, &cfg()).unwrap();
        let parts: Vec<_> = gens.iter().zip(&mults).map(|(g, m)| g.mul_poly(&Rationals, &ctx.laurent_to_affine(m).unwrap())).collect();
        let member = ModVector::sum(&Rationals, parts.iter());
        prop_assert!(gb.contains(&member));
        prop_assert!(gb.normal_form(&member).is_zero());
        for g in &gens {
            prop_assert!(gb.contains(g));
        }
    }

    #[test]
    fn one_variable_dimension_is_gcd_degree(gens in prop::collection::vec(arb_laurent(1, 4), 1..4)) {
        let ctx = AffineContext::new(Rationals, 1);
        let gb = groebner_basis(&ctx, &affine(&ctx, &gens), &cfg()).unwrap();
        let g = gens.iter().map(|p| trim(dense(p))).fold(Vec::new(), poly_gcd);
        let expected = if g.is_empty() { None } else { Some(g.len() as u64 - 1) };
        prop_assert_eq!(gb.quotient_dimension(), expected);
        let h = koszul_homology(&ctx, &affine(&ctx, &gens), 0, &cfg()).unwrap();
        prop_assert_eq!(h.degrees[0].finite_dim, expected);
    }

    #[test]
    fn h0_is_the_quotient(gens in prop::collection::vec(arb_laurent(2, 3), 1..3)) {
        let ctx = AffineContext::new(Rationals, 2);
        let elems = affine(&ctx, &gens);
        let gb = groebner_basis(&ctx, &elems, &cfg()).unwrap();
        let h = koszul_homology(&ctx, &elems, 0, &cfg()).unwrap();
        prop_assert_eq!(h.degrees[0].finite_dim, gb.quotient_dimension());
        prop_assert_eq!(h.degrees[0].is_zero, gb.is_everything());
    }

    #[test]
    fn homology_ignores_order(gens in prop::collection::vec(arb_laurent(1, 3), 2..4)) {
        let ctx = AffineContext::new(Rationals, 1);
        let elems = affine(&ctx, &gens);
        let mut reversed = elems.clone();
        reversed.reverse();
        let n = elems.len();
        let a = koszul_homology(&ctx, &elems, n, &cfg()).unwrap();
        let b = koszul_homology(&ctx, &reversed, n, &cfg()).unwrap();
        for (x, y) in a.degrees.iter().zip(&b.degrees) {
            prop_assert_eq!(x.finite_dim, y.finite_dim);
            prop_assert_eq!(x.is_zero, y.is_zero);
        }
    }

    #[test]
    fn regular_sequences_are_acyclic(consts in prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 1..=3)) {
        // x_i - c_i is a regular sequence with quotient Q
        let r = consts.len();
        let ctx = AffineContext::new(Rationals, r);
        let elems: Vec<LaurentPoly> = consts
            .iter()
            .enumerate()
            .map(|(i, &c)| &LaurentPoly::variable(r, i) - &LaurentPoly::constant(r, q(c)))
            .collect();
        let h = koszul_homology(&ctx, &affine(&ctx, &elems), r, &cfg()).unwrap();
        prop_assert_eq!(h.degrees[0].finite_dim, Some(1));
        prop_assert!(h.degrees[1..].iter().all(|d| d.is_zero && d.finite_dim == Some(0)));
    }
}

#[test]
fn prime_field_detects_extra_common_factor() {
    // coprime over Q, but x^2 - x + 1 = (x + 1)^2 mod 3
    let x2m1 = LaurentPoly::from_terms(1, [(vec![2], 1), (vec![0], -1)]);
    let other = LaurentPoly::from_terms(1, [(vec![2], 1), (vec![1], -1), (vec![0], 1)]);
    let rational = AffineContext::new(Rationals, 1);
    let gb = groebner_basis(
        &rational,
        &affine(&rational, &[x2m1.clone(), other.clone()]),
        &cfg(),
    )
    .unwrap();
    assert!(gb.is_everything());
    let f3 = AffineContext::new(PrimeField::new(3).unwrap(), 1);
    let gens = [
        f3.laurent_to_affine(&x2m1).unwrap(),
        f3.laurent_to_affine(&other).unwrap(),
    ];
    let gb = groebner_basis(&f3, &gens, &cfg()).unwrap();
    assert_eq!(gb.quotient_dimension(), Some(1));
}
