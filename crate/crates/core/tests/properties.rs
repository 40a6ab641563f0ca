//! Property tests for the structural invariants: composition laws, basis
//! round trips, serialization stability, and exact coefficient
//! arithmetic.

use std::sync::Arc;

use num::{BigInt, BigRational};
use proptest::prelude::*;

use clique_operads::bases::{from_h, from_k, to_h, to_k};
use clique_operads::noncrossing::{from_dual_tree, to_dual_tree, DualTree};
use clique_operads::operad::{all_arcs, lin_compose, BasisTag, LinComb};
use clique_operads::{Clique, Element, UnitaryMagma};

fn z() -> Arc<UnitaryMagma> {
    UnitaryMagma::integers()
}

fn arc_count(arity: u32) -> usize {
    (arity * (arity + 1) / 2) as usize
}

prop_compose! {
    fn z_clique(max_arity: u32)
        (arity in 2..=max_arity)
        (labels in prop::collection::vec(-3i64..=3, arc_count(arity)), arity in Just(arity))
        -> Clique
    {
        let typed: Vec<((u32, u32), Element)> = all_arcs(arity)
            .into_iter()
            .zip(labels)
            .map(|(arc, v)| (arc, Element::Int(v.into())))
            .collect();
        Clique::new(&z(), arity, typed).unwrap()
    }
}

prop_compose! {
    fn z_lincomb()
        (cliques in prop::collection::vec(z_clique(3), 1..4),
         coeffs in prop::collection::vec((-9i64..=9, 1i64..=4), 4))
        -> LinComb
    {
        let arity = cliques[0].arity();
        let mut out = LinComb::zero(&z(), arity, BasisTag::Fundamental);
        for (c, (num, den)) in cliques.into_iter().filter(|c| c.arity() == arity).zip(coeffs) {
            out.add_term(c, BigRational::new(BigInt::from(num), BigInt::from(den))).unwrap();
        }
        out
    }
}

proptest! {
    #[test]
    fn composition_is_size_additive(p in z_clique(5), q in z_clique(5), i in 1u32..=5) {
        prop_assume!(i <= p.arity());
        let r = p.compose(i, &q).unwrap();
        prop_assert_eq!(r.arity(), p.arity() + q.arity() - 1);
    }

    #[test]
    fn sequential_law(p in z_clique(4), q in z_clique(4), r in z_clique(4),
                      i in 1u32..=4, j in 1u32..=4) {
        prop_assume!(i <= p.arity() && j <= q.arity());
        let lhs = p.compose(i, &q).unwrap().compose(i + j - 1, &r).unwrap();
        let rhs = p.compose(i, &q.compose(j, &r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn parallel_law(p in z_clique(4), q in z_clique(4), r in z_clique(4),
                    i in 1u32..=4, j in 1u32..=4) {
        prop_assume!(i < j && j <= p.arity());
        let m = q.arity();
        let lhs = p.compose(i, &q).unwrap().compose(j + m - 1, &r).unwrap();
        let rhs = p.compose(j, &r).unwrap().compose(i, &q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn full_rotation_is_identity(p in z_clique(5)) {
        let mut r = p.clone();
        for _ in 0..=p.arity() {
            r = r.rotate();
        }
        prop_assert_eq!(r, p);
    }

    #[test]
    fn crossing_of_composition_is_max_of_operands(p in z_clique(5), q in z_clique(5), i in 1u32..=5) {
        prop_assume!(i <= p.arity());
        let r = p.compose(i, &q).unwrap();
        let expected = p.stats().crossing.max(q.stats().crossing);
        prop_assert_eq!(r.stats().crossing, expected);
    }

    #[test]
    fn bubbles_never_cross(p in z_clique(5)) {
        let s = p.stats();
        prop_assert!(!s.bubble || s.crossing == 0);
        prop_assert_eq!(s.nesting_free, s.max_nesting == 0);
    }

    #[test]
    fn clique_json_round_trip(p in z_clique(5)) {
        let s = p.to_json_string();
        let back = Clique::from_json_str(&s).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_json_string(), s);
    }

    #[test]
    fn dual_tree_round_trip(p in z_clique(5)) {
        prop_assume!(p.stats().crossing == 0);
        let tree = to_dual_tree(&p).unwrap();
        prop_assert_eq!(from_dual_tree(&tree).unwrap(), p);
        let json = tree.to_json_string();
        let back = DualTree::from_json_str(&z(), &json).unwrap();
        prop_assert_eq!(back.to_json_string(), json);
    }

    #[test]
    fn hk_round_trips(f in z_lincomb()) {
        prop_assert_eq!(&from_h(&to_h(&f).unwrap()).unwrap(), &f);
        prop_assert_eq!(&from_k(&to_k(&f).unwrap()).unwrap(), &f);
    }

    #[test]
    fn composition_denominators_divide_products(f in z_lincomb(), g in z_lincomb(), i in 1u32..=3) {
        prop_assume!(i <= f.arity());
        let denom_bound: BigInt = f
            .terms()
            .chain(g.terms())
            .map(|(_, k)| k.denom().clone())
            .product();
        let composed = lin_compose(&f, i, &g).unwrap();
        for (_, coeff) in composed.terms() {
            // Every output denominator divides the product of the input
            // denominators: composition introduces no new fractions.
            prop_assert_eq!(&denom_bound % coeff.denom(), BigInt::from(0));
        }
    }
}
