use num_bigint::BigInt;
use proptest::prelude::*;
use ribbon_core::laurent::{Laurent1, Laurent2, Var};

fn poly1() -> impl Strategy<Value = Laurent1> {
    prop::collection::vec((-6i32..=6, -9i64..=9), 0..6).prop_map(|t| Laurent1::from_whole(&t))
}

fn poly2() -> impl Strategy<Value = Laurent2> {
    prop::collection::vec((-4i32..=4, 0i32..=4, -5i64..=5), 0..6).prop_map(|t| Laurent2::from_terms(&t))
}

proptest! {
    #[test]
    fn ring_laws(a in poly1(), b in poly1(), c in poly1()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Laurent1::one(), a.clone());
    }

    #[test]
    fn span_is_additive(a in poly1(), b in poly1()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        prop_assert_eq!((&a * &b).span().unwrap(), a.span().unwrap() + b.span().unwrap());
    }

    #[test]
    fn exact_division_undoes_product(a in poly1(), b in poly1()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
    }

    #[test]
    fn inversion_is_a_ring_involution(a in poly1(), b in poly1()) {
        prop_assert_eq!(a.invert().invert(), a.clone());
        prop_assert_eq!((&a * &b).invert(), &a.invert() * &b.invert());
    }

    #[test]
    fn evaluation_is_multiplicative(a in poly1(), b in poly1(), x in prop::sample::select(vec![-3i64, -1, 2, 5])) {
        let (pn, pd) = (&a * &b).eval_int(x).unwrap();
        let (an, ad) = a.eval_int(x).unwrap();
        let (bn, bd) = b.eval_int(x).unwrap();
        prop_assert_eq!(pn * (&ad * &bd), an * bn * pd);
    }

    #[test]
    fn stretch_then_compress(a in poly1(), m in 1i32..4) {
        prop_assert_eq!(a.stretch(m).compress(m), Some(a.clone()));
    }

    #[test]
    fn two_variable_ring_laws(p in poly2(), q in poly2(), r in poly2()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
        prop_assert_eq!(p.invert_v().invert_v(), p.clone());
        prop_assert_eq!((&p * &q).invert_v(), &p.invert_v() * &q.invert_v());
    }

    #[test]
    fn specialization_is_a_homomorphism(p in poly2(), q in poly2()) {
        let v = Laurent1::from_whole(&[(-1, 1)]);
        let z = Laurent1::sqrt_t_difference();
        let lhs = (&p * &q).specialize(&v, &z).unwrap();
        let rhs = &p.specialize(&v, &z).unwrap() * &q.specialize(&v, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_coefficients_reassemble(p in poly2()) {
        let mut back = Laurent2::zero();
        for k in p.z_degrees() {
            for (e, c) in p.coeff_z(k).whole_terms().unwrap() {
                back = &back + &Laurent2::monomial(e, k, c);
            }
        }
        prop_assert_eq!(back, p);
    }
}

#[test]
fn spans_by_variable() {
    let p = Laurent2::from_terms(&[(2, 0, 2), (4, 0, -1), (2, 2, 1)]);
    assert_eq!(p.span(Var::V).unwrap(), 2);
    assert_eq!(p.span(Var::Z).unwrap(), 2);
    assert!(Laurent2::zero().span(Var::V).is_err());
    assert_eq!(p.coeff(4, 0), BigInt::from(-1));
}
