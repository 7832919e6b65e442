use proptest::prelude::*;
use stonework_core::clopen::*;
use stonework_core::finset::{enum_finset, DyadicElem, FinSet};
use stonework_core::space::{BuiltinCantor, TPoint};

fn finset(bits: u32) -> impl Strategy<Value = FinSet> {
    (0u64..1 << bits).prop_map(enum_finset)
}

fn tpoint() -> impl Strategy<Value = TPoint> {
    (proptest::collection::vec(any::<bool>(), 0..5), proptest::collection::vec(any::<bool>(), 1..4))
        .prop_map(|(pre, period)| TPoint::new(pre, period).unwrap())
}

/// A basis set `E(l, L)` over the built-in space; points of `R` are dropped.
fn basis() -> impl Strategy<Value = ClopenExpr> {
    (finset(6), proptest::collection::vec(tpoint(), 0..3)).prop_map(|(l, pts)| {
        let space = BuiltinCantor::shared();
        let pts: Vec<TPoint> = pts.into_iter().filter(|t| !space.in_r(t)).collect();
        ClopenExpr::basis(BasisSet::new(&space, l, pts).unwrap())
    })
}

fn expr() -> impl Strategy<Value = ClopenExpr> {
    basis().prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|x| x.not()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(&b)),
            (inner.clone(), inner).prop_map(|(a, b)| a.or(&b)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_image_is_pointwise(e in expr(), n in 1u32..=8, k in finset(8)) {
        let moved = DyadicElem::generator(n).act(&k);
        prop_assert_eq!(sigma_image(n, &e).member(&k).unwrap(), e.member(&moved).unwrap());
    }

    #[test]
    fn epsilon_image_agrees_with_translation(e in expr(), g in finset(8), k in finset(8)) {
        let g = DyadicElem::from_support(g);
        prop_assert_eq!(epsilon_image(&g, &e).member(&k).unwrap(), e.translate(&g).member(&k).unwrap());
        prop_assert_eq!(e.translate(&g).member(&k).unwrap(), e.member(&g.act(&k)).unwrap());
    }

    #[test]
    fn witnesses_lie_inside(e in expr()) {
        if let Some(w) = find_witness(&e, 8).unwrap() {
            prop_assert!(e.member(&w).unwrap());
        }
    }

    #[test]
    fn split_keeps_the_anchor_and_stays_proper(k in finset(6)) {
        let full = ClopenExpr::full();
        let half = split(&full, &k, &FinSet::empty(), 10).unwrap();
        prop_assert!(half.member(&k).unwrap());
        prop_assert!(find_witness(&full.minus(&half), 10).unwrap().is_some());
    }
}
