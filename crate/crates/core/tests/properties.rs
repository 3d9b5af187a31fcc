use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qgroup::expr::parse_element_with;
use qgroup::hopf::{antipode_with, coproduct_at_with, coproduct_with};
use qgroup::hseries::{qs_to_hseries, HSeries, Poly};
use qgroup::pbw::{Element, Rules};
use qgroup::repn::{eval, fundamental_rep};
use qgroup::scalars::{Exp, QScalar};

fn scalar() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-5i64..=5, -24i64..=24), 0..=3).prop_map(|ts| {
        let mut s = QScalar::from_int(0);
        for (c, e) in ts {
            s += QScalar::monomial(BigRational::from_integer(BigInt::from(c)), Exp::new(e, 12));
        }
        s
    })
}

fn series() -> impl Strategy<Value = HSeries> {
    prop::collection::vec(prop::collection::vec((0u32..=2, -5i64..=5, 1i64..=3), 0..=3), 7).prop_map(|cs| {
        let coeffs = cs
            .into_iter()
            .map(|ts| {
                let mut p = Poly::zero();
                for (e, n, d) in ts {
                    p.add_term(vec![e], BigRational::new(n.into(), d.into()));
                }
                p
            })
            .collect();
        HSeries::from_coeffs(vec!["t".into()], coeffs)
    })
}

fn letter_name(rank: usize, code: usize) -> String {
    let i = code / 5 + 1;
    let base = ["x", "y", "k", "kb", "H"][code % 5];
    if rank == 1 {
        base.to_string()
    } else {
        format!("{base}{i}")
    }
}

/// Expression text: a sum of terms `c*q^(e/2)*l1*l2*…`.
fn expr_text(rank: usize, max_len: usize) -> impl Strategy<Value = String> {
    let term = (-3i64..=3, -2i64..=2, prop::collection::vec(0..5 * rank, 0..=max_len));
    prop::collection::vec(term, 1..=2).prop_map(move |ts| {
        ts.into_iter()
            .map(|(c, e, ls)| {
                let mut parts = vec![format!("({c})"), format!("q^({e}/2)")];
                parts.extend(ls.into_iter().map(|l| letter_name(rank, l)));
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    })
}

fn rules(rank: usize) -> Rules {
    if rank == 1 {
        Rules::default()
    } else {
        Rules::expansion()
    }
}

fn element(src: &str, rank: usize) -> Element {
    parse_element_with(src, rank, 1, &rules(rank)).unwrap_or_else(|e| panic!("{src}: {e}"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn bar_is_a_homomorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        prop_assert_eq!(a.bar().bar(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qs_to_hseries_is_a_homomorphism(a in scalar(), b in scalar()) {
        let ha = qs_to_hseries(&a, 6).unwrap();
        let hb = qs_to_hseries(&b, 6).unwrap();
        prop_assert_eq!(qs_to_hseries(&(&a * &b), 6).unwrap(), ha.mul(&hb).unwrap());
        prop_assert_eq!(qs_to_hseries(&(&a + &b), 6).unwrap(), ha.add(&hb).unwrap());
    }

    #[test]
    fn series_product_commutes_and_associates(a in series(), b in series(), c in series()) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn mul_associative_rank1(a in expr_text(1, 3), b in expr_text(1, 3), c in expr_text(1, 3)) {
        let (a, b, c) = (element(&a, 1), element(&b, 1), element(&c, 1));
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn mul_associative_rank2(a in expr_text(2, 3), b in expr_text(2, 3), c in expr_text(2, 3)) {
        let r = rules(2);
        let (a, b, c) = (element(&a, 2), element(&b, 2), element(&c, 2));
        let left = a.mul_with(&b, &r).unwrap().mul_with(&c, &r).unwrap();
        let right = a.mul_with(&b.mul_with(&c, &r).unwrap(), &r).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn antipode_reverses_products((rank, a, b) in (1usize..=2).prop_flat_map(|r| (Just(r), expr_text(r, 2), expr_text(r, 2)))) {
        let r = rules(rank);
        let (a, b) = (element(&a, rank), element(&b, rank));
        let sab = antipode_with(&a.mul_with(&b, &r).unwrap(), &r).unwrap();
        let sbsa = antipode_with(&b, &r).unwrap().mul_with(&antipode_with(&a, &r).unwrap(), &r).unwrap();
        prop_assert_eq!(sab, sbsa);
    }

    #[test]
    fn coproduct_is_coassociative((rank, a) in (1usize..=2).prop_flat_map(|r| (Just(r), expr_text(r, 2)))) {
        let r = rules(rank);
        let d = coproduct_with(&element(&a, rank), &r).unwrap();
        prop_assert_eq!(coproduct_at_with(&d, 0, &r).unwrap(), coproduct_at_with(&d, 1, &r).unwrap());
    }
}

fn eval_hom(rank: usize, a: &str, b: &str) -> Result<(), TestCaseError> {
    let r = rules(rank);
    let v = fundamental_rep(rank);
    let (a, b) = (element(a, rank), element(b, rank));
    let ab = a.mul_with(&b, &r).unwrap();
    prop_assert_eq!(eval(&ab, &v), eval(&a, &v).mul(&eval(&b, &v)));
    prop_assert_eq!(eval(&a.add(&b).unwrap(), &v), eval(&a, &v).add(&eval(&b, &v)));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn eval_homomorphism_rank1(a in expr_text(1, 3), b in expr_text(1, 3)) {
        eval_hom(1, &a, &b)?;
    }

    #[test]
    fn eval_homomorphism_rank2(a in expr_text(2, 3), b in expr_text(2, 3)) {
        eval_hom(2, &a, &b)?;
    }

    #[test]
    fn eval_homomorphism_rank3(a in expr_text(3, 3), b in expr_text(3, 3)) {
        eval_hom(3, &a, &b)?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn parse_render_round_trip((rank, a, b) in (1usize..=3).prop_flat_map(|r| (Just(r), expr_text(r, 4), expr_text(r, 2)))) {
        let src = format!("({a}) (x) ({b})");
        let e = parse_element_with(&src, rank, 1, &rules(rank)).unwrap_or_else(|e| panic!("{src}: {e}"));
        let text = e.to_string();
        let back = parse_element_with(&text, rank, e.slots(), &Rules::default()).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, e);
    }
}
