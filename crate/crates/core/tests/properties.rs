use std::collections::HashSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use nijenhuis::enveloping::{default_names, evaluate_hom, fixtures, IdealSpan, Membership};
use nijenhuis::expr::{eval_str, print_canonical};
use nijenhuis::matrix::{nullspace_basis, rref, RationalMatrix};
use nijenhuis::relations::{evaluate_relation, RelVector, COORDS};
use nijenhuis::{
    canonical_compare, derived_op, enumerate_words, lc_add, lc_scale, operator_n, product, LinComb,
    OpSymbol, Rational, Symbol, Word,
};

fn pool() -> &'static [Word] {
    static POOL: OnceLock<Vec<Word>> = OnceLock::new();
    POOL.get_or_init(|| {
        let a: Vec<Symbol> = ["x", "y"].iter().map(|n| Symbol::new(n).unwrap()).collect();
        enumerate_words(&a, 3)
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n, d))
}

fn word() -> impl Strategy<Value = Word> {
    (0..pool().len()).prop_map(|i| pool()[i].clone())
}

fn lincomb() -> impl Strategy<Value = LinComb> {
    prop::collection::vec((word(), rational()), 0..4).prop_map(|ts| ts.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_abelian(a in lincomb(), b in lincomb(), c in lincomb()) {
        prop_assert_eq!(lc_add(&a, &b), lc_add(&b, &a));
        prop_assert_eq!(lc_add(&lc_add(&a, &b), &c), lc_add(&a, &lc_add(&b, &c)));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scaling_distributes(a in lincomb(), b in lincomb(), s in rational(), t in rational()) {
        prop_assert_eq!(lc_scale(&s, &lc_add(&a, &b)), lc_add(&lc_scale(&s, &a), &lc_scale(&s, &b)));
        prop_assert_eq!(lc_scale(&(s.clone() + t.clone()), &a), lc_add(&lc_scale(&s, &a), &lc_scale(&t, &a)));
    }

    #[test]
    fn product_is_bilinear(a in lincomb(), b in lincomb(), c in lincomb(), s in rational()) {
        let left = product(&lc_add(&a, &lc_scale(&s, &b)), &c);
        prop_assert_eq!(left, lc_add(&product(&a, &c), &lc_scale(&s, &product(&b, &c))));
        let right = product(&c, &lc_add(&a, &lc_scale(&s, &b)));
        prop_assert_eq!(right, lc_add(&product(&c, &a), &lc_scale(&s, &product(&c, &b))));
    }

    #[test]
    fn products_are_size_additive(u in word(), v in word()) {
        let p = product(&LinComb::from_word(u.clone()), &LinComb::from_word(v.clone()));
        for w in p.words() {
            prop_assert_eq!(w.letter_count(), u.letter_count() + v.letter_count());
        }
    }

    #[test]
    fn nijenhuis_identity_on_combinations(a in lincomb(), b in lincomb()) {
        let (na, nb) = (operator_n(&a), operator_n(&b));
        let rhs = operator_n(&product(&na, &b)) + operator_n(&product(&a, &nb))
            - operator_n(&operator_n(&product(&a, &b)));
        prop_assert_eq!(product(&na, &nb), rhs);
    }

    #[test]
    fn star_is_sum_of_basic_ops(a in lincomb(), b in lincomb()) {
        let sum = OpSymbol::BASIC
            .iter()
            .fold(LinComb::zero(), |acc, op| acc + derived_op(*op, &a, &b));
        prop_assert_eq!(derived_op(OpSymbol::Star, &a, &b), sum);
    }

    #[test]
    fn relation_evaluation_is_linear(
        c1 in prop::collection::vec(rational(), COORDS),
        c2 in prop::collection::vec(rational(), COORDS),
        s in rational(),
    ) {
        let x = LinComb::from_word("x".parse().unwrap());
        let y = LinComb::from_word("y".parse().unwrap());
        let z = LinComb::from_word("z".parse().unwrap());
        let r1 = RelVector::from_coords(&c1);
        let r2 = RelVector::from_coords(&c2);
        let mixed: Vec<Rational> = c1.iter().zip(&c2).map(|(a, b)| a.clone() + s.clone() * b.clone()).collect();
        let r = RelVector::from_coords(&mixed);
        let want = evaluate_relation(&r1, &x, &y, &z) + evaluate_relation(&r2, &x, &y, &z).scale(&s);
        prop_assert_eq!(evaluate_relation(&r, &x, &y, &z), want);
    }

    #[test]
    fn canonical_print_round_trips(a in lincomb()) {
        let declared: HashSet<Symbol> = ["x", "y"].iter().map(|n| Symbol::new(n).unwrap()).collect();
        prop_assert_eq!(eval_str(&print_canonical(&a), &declared).unwrap(), a);
    }

    #[test]
    fn canonical_order_is_consistent(u in word(), v in word()) {
        let ord = canonical_compare(&u, &v);
        prop_assert_eq!(ord.reverse(), canonical_compare(&v, &u));
        prop_assert_eq!(ord.is_eq(), u == v);
    }

    #[test]
    fn nullspace_is_annihilated(entries in prop::collection::vec(-3i64..=3, 12)) {
        let rows: Vec<&[i64]> = entries.chunks(4).collect();
        let m = RationalMatrix::from_i64(&rows);
        let ns = nullspace_basis(&m);
        prop_assert_eq!(ns.len() + m.rank(), 4);
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
        let (r, pivots) = rref(&m);
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(rref(&r).0, r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// The recursive evaluation into a Nijenhuis algebra respects the product
    /// and the operator, for any choice of generator images.
    #[test]
    fn evaluation_is_a_morphism(a in lincomb(), b in lincomb(), f in prop::collection::vec(-2i64..=2, 4), which in 0usize..3) {
        let n = match which {
            0 => fixtures::projection(),
            1 => fixtures::scalar(2),
            _ => fixtures::scalar(0),
        };
        let names = vec![Symbol::new("x").unwrap(), Symbol::new("y").unwrap()];
        let map = RationalMatrix::from_i64(&[&f[..2], &f[2..]]);
        let ev = |c: &LinComb| evaluate_hom(&n, &map, &names, c).unwrap();
        prop_assert_eq!(ev(&product(&a, &b)), n.mul(&ev(&a), &ev(&b)));
        prop_assert_eq!(ev(&operator_n(&a)), n.apply_op(&ev(&a)));
    }
}

#[test]
fn membership_is_monotone_in_bound() {
    let names = default_names(1);
    let e1 = Word::letter(names[0].clone());
    let gens = vec![LinComb::from_word(Word::bracket(e1.clone())) - LinComb::from_word(e1.clone())];
    let small = IdealSpan::new(&gens, &names, 3);
    let large = IdealSpan::new(&gens, &names, 5);
    assert!(small.dimension() <= large.dimension());
    for w in enumerate_words(&names, 3) {
        let c = LinComb::from_word(w);
        if small.contains(&c).unwrap() == Membership::Member {
            assert_eq!(large.contains(&c).unwrap(), Membership::Member);
        }
    }
    let too_big = enumerate_words(&names, 4).pop().unwrap();
    assert!(small.contains(&LinComb::from_word(too_big)).is_err());
}
