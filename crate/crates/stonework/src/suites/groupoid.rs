//! Random-sample suites for the window convolution algebra.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use stonework_core::audit::Check;
use stonework_core::groupoid::{
    approximation_suite, identity_suite, masa_check, normalizer_decompose, phase_permutation, ring_law_checks, OrbitWindow,
};
use stonework_core::linalg::Matrix;
use stonework_core::Error;

use crate::report::{matrix_json, Suite};
use crate::rng::{substream, Sample};

pub const SAMPLES_PER_LAW: usize = 50;
pub const UNITARIES: usize = 100;
/// Kernels for the truncation suite, which includes the vanishing criterion.
pub const APPROXIMATION_SAMPLES: usize = 100;

pub fn random_kernel<S: Sample>(rng: &mut ChaCha8Rng, size: usize) -> Matrix<S> {
    Matrix::from_fn(size, size, |_, _| S::sample(rng))
}

fn samples<S: Sample>(rng: &mut ChaCha8Rng, w: &OrbitWindow, count: usize) -> Vec<Matrix<S>> {
    (0..count).map(|_| random_kernel(rng, w.size())).collect()
}

fn transcript<S: Sample>(samples: &[Matrix<S>], dump: bool) -> Value {
    if dump {
        Value::from(samples.iter().map(matrix_json).collect::<Vec<_>>())
    } else {
        Value::Null
    }
}

fn window(suite: &mut Suite, n: u32) -> Option<OrbitWindow> {
    match OrbitWindow::new(n) {
        Ok(w) => Some(w),
        Err(e) => {
            suite.checks.push(Check::errored("window", suite.anchor, &e));
            None
        }
    }
}

pub fn laws<S: Sample>(n: u32, seed: u64, tol: f64, dump: bool) -> Suite {
    let mut suite = Suite::new("groupoid-laws", "convolution/associative");
    let Some(w) = window(&mut suite, n) else { return suite };
    let s = samples::<S>(&mut substream(seed, "groupoid-laws"), &w, SAMPLES_PER_LAW);
    suite.checks = ring_law_checks(&w, &s, tol);
    suite.data = json!({ "samples": s.len(), "transcript": transcript(&s, dump) });
    suite
}

pub fn identities<S: Sample>(n: u32, seed: u64, tol: f64, dump: bool) -> Suite {
    let mut suite = Suite::new("groupoid-identities", "convolution/identity-i");
    let Some(w) = window(&mut suite, n) else { return suite };
    let mut rng = substream(seed, "groupoid-identities");
    let s = samples::<S>(&mut rng, &w, SAMPLES_PER_LAW);
    let mut sets: Vec<Vec<usize>> = vec![Vec::new(), vec![0], (0..w.size()).collect()];
    for _ in 0..4 {
        sets.push((0..w.size()).filter(|_| rng.gen_bool(0.5)).collect());
    }
    suite.checks = identity_suite(&w, &s, &sets, tol);
    suite.data = json!({ "samples": s.len(), "finite_sets": sets, "transcript": transcript(&s, dump) });
    suite
}

/// A strictly increasing chain of prefixes of a random ordering of the
/// group, ending at the whole group.
fn random_chain(rng: &mut ChaCha8Rng, size: usize) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..size).collect();
    order.shuffle(rng);
    let mut cuts: Vec<usize> = (0..size).filter(|_| rng.gen_bool(0.4)).collect();
    cuts.push(size);
    cuts.into_iter().map(|c| order[..c].to_vec()).collect()
}

pub fn approximation<S: Sample>(n: u32, seed: u64, tol: f64, dump: bool) -> Suite {
    let mut suite = Suite::new("groupoid-approximation", "truncation/monotone");
    let Some(w) = window(&mut suite, n) else { return suite };
    let mut rng = substream(seed, "groupoid-approximation");
    let s = samples::<S>(&mut rng, &w, APPROXIMATION_SAMPLES);
    let mut chains: Vec<Vec<Vec<usize>>> = (0..8).map(|_| random_chain(&mut rng, w.size())).collect();
    chains.push((0..=n).map(|m| (0..1usize << m).collect()).collect());
    suite.checks = approximation_suite(&w, &s, &chains, tol);
    suite.data = json!({ "samples": s.len(), "chains": chains.len(), "transcript": transcript(&s, dump) });
    suite
}

pub fn masa(n: u32) -> Suite {
    let mut suite = Suite::new("diagonal-masa", "diagonal/maximal-abelian");
    let Some(w) = window(&mut suite, n) else { return suite };
    suite.checks = masa_check(&w);
    suite
}

/// Decomposes random phase-times-permutation unitaries and compares the
/// factors with the ones used to build them. A rational rotation, which is
/// unitary but mixes two points, must be rejected.
pub fn normalizer<S: Sample>(n: u32, seed: u64, tol: f64) -> Suite {
    let mut suite = Suite::new("normalizer", "normalizer/decomposition");
    let Some(w) = window(&mut suite, n) else { return suite };
    let mut rng = substream(seed, "normalizer");
    let mut worst = 0.0f64;
    let mut residual_cex = None;
    let mut factor_cex = None;
    let mut errors = None;
    for i in 0..UNITARIES {
        let mut perm: Vec<usize> = (0..w.size()).collect();
        perm.shuffle(&mut rng);
        let phases: Vec<S> = (0..w.size()).map(|_| S::phase(&mut rng)).collect();
        let u = phase_permutation(&phases, &perm);
        match normalizer_decompose(&u, &w, tol) {
            Ok(dec) => {
                worst = worst.max(dec.residual_sqr);
                if dec.residual_sqr > tol * tol && residual_cex.is_none() {
                    residual_cex = Some(format!("sample {i}: residual^2 {:e}", dec.residual_sqr));
                }
                let perm_ok = dec.v == Matrix::from_partial_map(w.size(), |x| Some(perm[x]));
                let partition_ok = (0..w.size()).all(|x| (0..w.size()).filter(|&g| dec.support[g][x]).count() == 1);
                let phase_ok = dec.d.values().iter().zip(&phases).all(|(a, b)| a.near(b, tol));
                if !(perm_ok && partition_ok && phase_ok) && factor_cex.is_none() {
                    factor_cex = Some(format!("sample {i}: factors differ from the construction"));
                }
            }
            Err(e) => {
                errors.get_or_insert(format!("sample {i}: {e}"));
            }
        }
    }
    suite.checks.push(
        Check::from_counterexample("decomposition-residual", "normalizer/decomposition", residual_cex)
            .at_depth(n)
            .with_detail(&format!("{UNITARIES} unitaries, largest residual^2 {worst:e}")),
    );
    suite.checks.push(Check::from_counterexample("support-projections-partition", "normalizer/support-projections", factor_cex).at_depth(n));
    suite.checks.push(Check::from_counterexample("decomposition-errors", "normalizer/decomposition", errors).at_depth(n));
    let size = w.size();
    let (c, s) = (S::from_ratio(3, 5), S::from_ratio(4, 5));
    // The rotation (1/5)·[[3, 4], [-4, 3]] on the first two points is unitary
    // but mixes them, so it does not normalize the diagonal.
    let rotation = Matrix::from_fn(size, size, |x, y| match (x, y) {
        (0, 0) | (1, 1) => c.clone(),
        (0, 1) => s.clone(),
        (1, 0) => S::zero() - s.clone(),
        _ if x == y => S::one(),
        _ => S::zero(),
    });
    let rejected = match normalizer_decompose(&rotation, &w, tol) {
        Err(Error::NotNormalizing(_)) => None,
        other => Some(format!("rotation was not rejected as non-normalizing: {:?}", other.map(|d| d.residual_sqr))),
    };
    suite.checks.push(Check::from_counterexample("rejects-non-normalizing", "normalizer/decomposition", rejected).at_depth(n));
    suite.data = json!({ "unitaries": UNITARIES, "max_residual_sqr": worst });
    suite
}
