use stonework_core::audit::Status;
use stonework_core::clopen::ClopenExpr;
use stonework_core::fermion::*;
use stonework_core::finset::DyadicElem;
use stonework_core::linalg::Matrix;
use stonework_core::scalar::{GaussRational, Scalar};

type Q = GaussRational;

fn span(gens: &[u32]) -> Vec<DyadicElem> {
    let mut out = vec![DyadicElem::zero()];
    for &j in gens {
        let g = DyadicElem::generator(j);
        let more: Vec<DyadicElem> = out.iter().map(|x| x.add(&g)).collect();
        out.extend(more);
    }
    out
}

#[test]
fn relations_and_independence_up_to_six() {
    for n in 1..=6 {
        let s = stage::<Q>(n).unwrap();
        for c in relations_check(&s, 0.0) {
            assert_eq!(c.status, Status::Pass, "n={n} {}: {:?}", c.name, c.counterexample);
        }
        let (ranks, check) = independence_check(&s, 0.0);
        assert!(check.passed());
        assert_eq!(ranks, vec![1; 1 << n]);
    }
}

#[test]
fn signed_products_are_the_point_projections() {
    let s = stage::<Q>(3).unwrap();
    for alpha in 0..8 {
        // alpha bit j-1 set selects 1 - e_j, which excludes j from the point.
        let point = !alpha & 7;
        let expected = Matrix::from_fn(8, 8, |x, y| Q::from_i64(i64::from(x == point && y == point)));
        assert_eq!(signed_product(&s, alpha), expected);
    }
}

#[test]
fn stages_four_generate_full_matrix_algebras() {
    let dims: Vec<usize> = (1..=4).map(|n| full_matrix_check(&stage::<Q>(n).unwrap()).unwrap()).collect();
    assert_eq!(dims, vec![4, 16, 64, 256]);
}

#[test]
fn afd_chain_to_four() {
    let audit = afd_audit::<Q>(4, 0.0).unwrap();
    assert_eq!(audit.full_dimensions.iter().map(|d| d.1).collect::<Vec<_>>(), vec![4, 16, 64, 256]);
    assert!(audit.checks.iter().all(|c| c.passed()));
}

#[test]
fn three_generator_saturation_on_the_depth_five_window() {
    let gens = [ClopenExpr::e(1), ClopenExpr::e(2), ClopenExpr::e(3)];
    let chain = [span(&[1]), span(&[1, 2]), span(&[1, 2, 3])];
    let sat = saturate_boolean(&gens, &chain, 5).unwrap();
    for c in sat.audit() {
        assert_eq!(c.status, Status::Pass, "{}: {:?}", c.name, c.counterexample);
    }
    let dims: Vec<(usize, usize)> = (1..=3)
        .map(|p| {
            let fd = findim_algebra(&sat, p).unwrap();
            (fd.dimension, fd.rank_dimension)
        })
        .collect();
    assert_eq!(dims, vec![(4, 4), (16, 16), (64, 64)]);
}
