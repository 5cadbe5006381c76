use proptest::prelude::*;
use qalg::freealg::{coproduct, multiply};
use qalg::limit::{lift, pi};
use qalg::quotients::{basis, is_admissible, normalize, Normalizer};
use qalg::seq::compare;
use qalg::{AlgebraId, Element, Sequence};

fn seq(max_len: usize, max_entry: u32) -> impl Strategy<Value = Sequence> {
    prop::collection::vec(0..=max_entry, 1..=max_len).prop_map(Sequence::new)
}

fn quotient() -> impl Strategy<Value = AlgebraId> {
    prop_oneof![Just(AlgebraId::A2), Just(AlgebraId::U), Just(AlgebraId::R)]
}

proptest! {
    #[test]
    fn normal_forms_are_admissible_and_stable(s in seq(4, 9), alg in quotient()) {
        let x = normalize(&Element::monomial(s.clone()), alg).unwrap();
        for t in x.terms() {
            prop_assert!(is_admissible(t, alg).unwrap(), "{:?} -> {:?}", s, t);
            prop_assert_eq!(t.degree(), s.degree());
        }
        prop_assert_eq!(normalize(&x, alg).unwrap(), x);
    }

    #[test]
    fn normalization_respects_products(a in seq(2, 6), b in seq(2, 6), alg in prop_oneof![Just(AlgebraId::A2), Just(AlgebraId::R)]) {
        let (x, y) = (Element::monomial(a), Element::monomial(b));
        let direct = normalize(&multiply(&x, &y), alg).unwrap();
        let staged = normalize(
            &multiply(&normalize(&x, alg).unwrap(), &normalize(&y, alg).unwrap()),
            alg,
        )
        .unwrap();
        prop_assert_eq!(direct, staged);
    }

    #[test]
    fn steenrod_relations_form_a_coideal(s in seq(3, 6)) {
        let norm = Normalizer::default();
        let x = Element::monomial(s);
        let lhs = norm.normalize_tensor(&coproduct(&x), AlgebraId::A2).unwrap();
        let rhs = norm
            .normalize_tensor(&coproduct(&normalize(&x, AlgebraId::A2).unwrap()), AlgebraId::A2)
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compare_is_antisymmetric(a in seq(3, 6), b in seq(3, 6)) {
        prop_assert_eq!(compare(&a, &b), compare(&b, &a).reverse());
    }
}

#[test]
fn lifting_at_length_four() {
    for d in 0..=16 {
        for target in basis(AlgebraId::R, d, Some(4)).unwrap() {
            let k = lift(4, &target).unwrap();
            assert_eq!(
                pi(4, &k).unwrap(),
                Element::monomial(target.clone()),
                "{target:?}"
            );
        }
    }
}
