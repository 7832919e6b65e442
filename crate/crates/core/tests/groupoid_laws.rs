use proptest::prelude::*;
use stonework_core::audit::Status;
use stonework_core::groupoid::*;
use stonework_core::linalg::Matrix;
use stonework_core::scalar::{gauss, GaussRational, Scalar};

fn rational() -> impl Strategy<Value = GaussRational> {
    (-6i128..=6, 1i128..=4, -6i128..=6, 1i128..=4).prop_map(|(a, b, c, d)| gauss((a, b), (c, d)))
}

fn kernel(n: u32) -> impl Strategy<Value = Matrix<GaussRational>> {
    let size = 1usize << n;
    proptest::collection::vec(rational(), size * size)
        .prop_map(move |v| Matrix::from_fn(size, size, |x, y| v[x * size + y]))
}

/// Sparse kernels, so that rows and diagonals vanish often.
fn sparse_kernel(n: u32) -> impl Strategy<Value = Matrix<GaussRational>> {
    let size = 1usize << n;
    proptest::collection::vec(prop_oneof![3 => Just(GaussRational::zero()), 1 => rational()], size * size)
        .prop_map(move |v| Matrix::from_fn(size, size, |x, y| v[x * size + y]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn convolution_matches_matrix_product(f in kernel(2), h in kernel(2)) {
        prop_assert_eq!(conv(&f, &h).unwrap(), f.mul(&h));
    }

    #[test]
    fn identities_hold_on_random_kernels(f in kernel(2), h in sparse_kernel(2), k in kernel(2)) {
        let w = OrbitWindow::new(2).unwrap();
        let samples = [f, h, k];
        let sets = vec![vec![0], vec![0, 3], vec![1, 2, 3]];
        let chains = vec![vec![vec![0], vec![0, 1], vec![0, 1, 2, 3]]];
        let checks = ring_law_checks(&w, &samples, 0.0)
            .into_iter()
            .chain(identity_suite(&w, &samples, &sets, 0.0))
            .chain(approximation_suite(&w, &samples, &chains, 0.0));
        for c in checks {
            prop_assert_eq!(c.status, Status::Pass, "{}: {:?}", c.name, c.counterexample);
        }
    }

    #[test]
    fn vanishing_iff_zero(z in sparse_kernel(2)) {
        let w = OrbitWindow::new(2).unwrap();
        prop_assert_eq!(vanishing_test(&w, &z).unwrap(), z.is_zero());
    }

    #[test]
    fn residuals_shrink_along_chains(z in kernel(3)) {
        let w = OrbitWindow::new(3).unwrap();
        let chain: Vec<Vec<usize>> = (0..=3).map(|m| (0..1usize << m).collect()).collect();
        let r = truncation_approx(&w, &z, &chain).unwrap();
        for pair in r.windows(2) {
            for (b, a) in pair[1].values().iter().zip(pair[0].values()) {
                prop_assert!(b.real_le(a, 0.0));
            }
        }
        prop_assert!(r.last().unwrap().is_zero());
    }

    #[test]
    fn phase_permutations_decompose(perm in Just((0..8usize).collect::<Vec<_>>()).prop_shuffle(), phases in proptest::collection::vec(0usize..4, 8)) {
        let w = OrbitWindow::new(3).unwrap();
        let unit = [gauss((1, 1), (0, 1)), gauss((0, 1), (1, 1)), gauss((-1, 1), (0, 1)), gauss((0, 1), (-1, 1))];
        let d: Vec<GaussRational> = phases.iter().map(|&i| unit[i]).collect();
        let m = phase_permutation(&d, &perm);
        match normalizer_decompose(&m, &w, 0.0) {
            Ok(dec) => {
                prop_assert_eq!(dec.d.values(), &d[..]);
                prop_assert_eq!(dec.residual_sqr, 0.0);
            }
            // Every permutation of the window is a piecewise translation, so
            // decomposition never fails on these inputs.
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn commutant_of_the_diagonal_is_the_diagonal() {
    for n in 1..=3 {
        let w = OrbitWindow::new(n).unwrap();
        assert_eq!(commutant_dimension(&w), w.size());
        assert!(masa_check(&w).iter().all(|c| c.status == Status::Pass));
    }
}
