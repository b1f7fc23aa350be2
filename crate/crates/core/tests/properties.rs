//! Property tests: field axioms on random rational functions, canonical
//! form uniqueness, the global residue identity, and the star
//! anti-involution on random algebra elements.

use partalg::diagram::{enumerate_basis, AlgebraElement};
use partalg::field::{parse_uratfn, BigRat, Poly, RationalFunction, UPoly, URationalFunction};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = BigRat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| BigRat::new(n.into(), d.into()))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(small_rat(), 0..4).prop_map(Poly::from_coeffs)
}

fn ratfn() -> impl Strategy<Value = RationalFunction> {
    (small_poly(), small_poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFunction::new(n, d).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in ratfn(), b in ratfn(), c in ratfn()) {
        // associativity and commutativity
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        // distributivity
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // inverses where defined
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_form_is_unique(a in ratfn(), scale in small_poly()) {
        // scaling numerator and denominator by a common polynomial gives
        // the identical canonical representation
        prop_assume!(!scale.is_zero());
        let n2 = a.num() * &scale;
        let d2 = a.den() * &scale;
        let b = RationalFunction::new(n2, d2).unwrap();
        prop_assert_eq!(&a, &b);
        // display round-trips bit-exactly
        let s = a.to_string();
        let c = partalg::field::parse_ratfn(&s).unwrap();
        prop_assert_eq!(&a, &c);
    }

    #[test]
    fn residues_sum_to_zero(roots in prop::collection::btree_set(-5i64..=5, 2..4)) {
        // f = 1 / prod (u - r): simple poles, numerator degree <= den - 2,
        // so the residues over all finite poles sum to zero
        let mut den = UPoly::one();
        let mut cands = vec![];
        for r in &roots {
            let c = RationalFunction::int(*r);
            den = &den * &UPoly::linear(-&c);
            cands.push(c);
        }
        let f = URationalFunction::new(UPoly::one(), den).unwrap();
        let mut sum = RationalFunction::zero();
        for (at, m) in f.poles_among(&cands).unwrap() {
            prop_assert_eq!(m, 1);
            sum = &sum + &f.residue_at(&at).unwrap();
        }
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn star_is_an_anti_involution(coeffs in prop::collection::vec((0usize..15, small_rat()), 1..4),
                                  coeffs2 in prop::collection::vec((0usize..15, small_rat()), 1..4)) {
        let basis = enumerate_basis(2, false);
        let build = |cs: &[(usize, BigRat)]| {
            let mut x = AlgebraElement::zero(2, false);
            for (i, c) in cs {
                x = x.add(&AlgebraElement::from_terms(
                    2,
                    false,
                    [(basis[*i].clone(), RationalFunction::from_rat(c.clone()))],
                ));
            }
            x
        };
        let x = build(&coeffs);
        let y = build(&coeffs2);
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
    }

    #[test]
    fn series_expansion_reconstructs(a in small_rat(), b in small_rat()) {
        // f = a/(u - b): coefficients a, ab, ab^2, ...
        let fa = RationalFunction::from_rat(a.clone());
        let fb = RationalFunction::from_rat(b.clone());
        prop_assume!(!fa.is_zero());
        let f = URationalFunction::new(
            UPoly::constant(fa.clone()),
            UPoly::linear(-&fb),
        ).unwrap();
        let (e, coeffs) = f.series_at_infinity(4);
        prop_assert_eq!(e, -1);
        let mut want = fa;
        for c in coeffs {
            prop_assert_eq!(&c, &want);
            want = &want * &fb;
        }
    }
}

#[test]
fn u_parser_roundtrip() {
    for s in [
        "-(u+1+z/2)*(u-z/2)/(u+z/2)",
        "(u+1-z/2)/((u+z/2)*(u-z/2))",
        "(u^2-z*u+1/3)/(u^3-1)",
    ] {
        let f = parse_uratfn(s).unwrap();
        let g = parse_uratfn(&f.to_string()).unwrap();
        assert_eq!(f, g, "{s}");
    }
}
