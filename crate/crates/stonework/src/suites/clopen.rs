//! Pointwise checks of the clopen image formulas on random basis sets.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stonework_core::audit::Check;
use stonework_core::clopen::{epsilon_image, sigma_basis_unguarded, sigma_case, sigma_image, BasisSet, ClopenExpr, SigmaCase};
use stonework_core::finset::{enum_finset, DyadicElem, FinSet};
use stonework_core::space::{eval_point, BuiltinCantor, PointQuery, SpaceRef, TPoint};

use crate::report::Suite;
use crate::rng::substream;

/// Largest generator index and orbit-index element drawn.
const RANGE: u32 = 10;

fn random_point(rng: &mut ChaCha8Rng, space: &SpaceRef) -> TPoint {
    loop {
        let pre = (0..rng.gen_range(0..5)).map(|_| rng.gen()).collect();
        let period = (0..rng.gen_range(1..4)).map(|_| rng.gen()).collect();
        let t = TPoint::new(pre, period).expect("period is non-empty");
        if !space.in_r(&t) {
            return t;
        }
    }
}

fn random_basis(rng: &mut ChaCha8Rng, space: &SpaceRef) -> (FinSet, Vec<TPoint>) {
    let l = enum_finset(rng.gen_range(0..1u64 << 8));
    let pts = (0..rng.gen_range(0..=2)).map(|_| random_point(rng, space)).collect();
    (l, pts)
}

/// `f_k ∈ σ_n[E(l, L)]` against `f_{σ_n(k)} ∈ E(l, L)` evaluated directly
/// from the definition of the points, over `samples` random `(k, n, l, L)`.
pub fn clopen_images(seed: u64, samples: usize) -> Suite {
    let mut suite = Suite::new("clopen-images", "clopen-images/sigma");
    let space = BuiltinCantor::shared();
    let mut rng = substream(seed, "clopen-images");
    let mut counts = [0usize; 3];
    let mut guard_needed = 0;
    let mut sigma_cex = None;
    let mut eps_cex = None;
    let mut errors = None;
    for _ in 0..samples {
        let (l, pts) = random_basis(&mut rng, &space);
        let k = enum_finset(rng.gen_range(0..1u64 << RANGE));
        let n = rng.gen_range(1..=RANGE);
        let b = BasisSet::new(&space, l.clone(), pts.clone()).expect("points avoid R");
        let case = sigma_case(n, &b);
        counts[case as usize] += 1;
        let e = ClopenExpr::basis(b.clone());
        let moved = DyadicElem::generator(n).act(&k);
        let direct = eval_point(&*space, &PointQuery { k: moved, l: l.clone(), points: pts.clone() });
        let (image, unguarded) = (sigma_image(n, &e).member(&k), sigma_basis_unguarded(n, &b).member(&k));
        match (direct, image, unguarded) {
            (Ok(d), Ok(i), Ok(u)) => {
                if d != i && sigma_cex.is_none() {
                    sigma_cex = Some(format!("k={k} n={n} set {b}: image says {i}, definition says {d}"));
                }
                if case == SigmaCase::Guarded && u != d {
                    guard_needed += 1;
                }
            }
            (d, i, u) => {
                errors.get_or_insert(format!("{:?} {:?} {:?}", d.err(), i.err(), u.err()));
            }
        }
        let g = DyadicElem::from_support(enum_finset(rng.gen_range(0..1u64 << 6)));
        let direct = eval_point(&*space, &PointQuery { k: g.act(&k), l, points: pts });
        match (direct, epsilon_image(&g, &e).member(&k)) {
            (Ok(d), Ok(i)) if d != i => {
                eps_cex.get_or_insert(format!("k={k} g={g} set {b}: image says {i}, definition says {d}"));
            }
            (Ok(_), Ok(_)) => {}
            (d, i) => {
                errors.get_or_insert(format!("{:?} {:?}", d.err(), i.err()));
            }
        }
    }
    let detail = format!("{samples} samples");
    suite.checks.push(Check::from_counterexample("sigma-image-pointwise", "clopen-images/sigma", sigma_cex).with_detail(&detail));
    suite.checks.push(Check::from_counterexample("epsilon-image-pointwise", "clopen-images/epsilon", eps_cex).with_detail(&detail));
    let guarded = counts[SigmaCase::Guarded as usize];
    let low = (guarded < 100).then(|| format!("only {guarded} samples hit the guarded branch"));
    suite.checks.push(
        Check::from_counterexample("guarded-branch-exercised", "clopen-images/guarded-branch", low)
            .with_detail(&format!("{guarded} guarded samples, {guard_needed} where the unguarded formula is wrong")),
    );
    suite.checks.push(Check::from_counterexample("evaluation-errors", "clopen-images/sigma", errors));
    suite.data = json!({
        "samples": samples,
        "removes": counts[SigmaCase::Removes as usize],
        "unguarded": counts[SigmaCase::Unguarded as usize],
        "guarded": guarded,
        "guard_needed": guard_needed,
    });
    suite
}
