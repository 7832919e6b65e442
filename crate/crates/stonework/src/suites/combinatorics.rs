//! Exhaustive checks of the dyadic action on orbit indices.

use std::collections::BTreeSet;

use rand::Rng;
use serde_json::json;
use stonework_core::audit::Check;
use stonework_core::finset::{enum_finset, subsets, DyadicElem, FinSet};

use crate::report::Suite;
use crate::rng::substream;

/// Enumeration index of `k`, used as an independent bitmask model of the action.
fn mask(k: &FinSet) -> u64 {
    k.iter().fold(0, |m, j| m | 1 << (j - 1))
}

/// Involution and commutation of the generators over every `k ⊆ {1..depth}`,
/// and the homomorphism law on sampled pairs of group elements.
pub fn dyadic_laws(depth: u32, seed: u64) -> Suite {
    let mut suite = Suite::new("dyadic-laws", "dyadic-action/laws");
    let window: Vec<FinSet> = subsets(depth).collect();
    let gen = |n| DyadicElem::generator(n);
    let mut involution = None;
    let mut commute = None;
    let mut model = None;
    for k in &window {
        for n in 1..=depth {
            let moved = gen(n).act(k);
            if involution.is_none() && gen(n).act(&moved) != *k {
                involution = Some(format!("sigma_{n} sigma_{n} {k} != {k}"));
            }
            if model.is_none() && mask(&moved) != mask(k) ^ 1 << (n - 1) {
                model = Some(format!("sigma_{n}({k}) = {moved} disagrees with the bitmask model"));
            }
            for m in 1..=depth {
                if commute.is_none() && gen(n).act(&gen(m).act(k)) != gen(m).act(&moved) {
                    commute = Some(format!("sigma_{n} and sigma_{m} disagree on {k}"));
                }
            }
        }
    }
    let d = Some(depth);
    suite.checks.push(Check::from_counterexample("generators-are-involutions", "dyadic-action/involution", involution).at_depth(depth));
    suite.checks.push(Check::from_counterexample("generators-commute", "dyadic-action/commute", commute).at_depth(depth));
    suite.checks.push(Check::from_counterexample("action-matches-bitmask-model", "dyadic-action/symmetric-difference", model).at_depth(depth));
    let mut rng = substream(seed, "dyadic-laws");
    let pairs = 4096;
    let mut hom = None;
    for _ in 0..pairs {
        let g = DyadicElem::from_support(enum_finset(rng.gen_range(0..1u64 << depth)));
        let h = DyadicElem::from_support(enum_finset(rng.gen_range(0..1u64 << depth)));
        let k = &window[rng.gen_range(0..window.len())];
        if hom.is_none() && g.add(&h).act(k) != g.act(&h.act(k)) {
            hom = Some(format!("({g} + {h}) acts on {k} unlike {g} after {h}"));
        }
    }
    suite.checks.push(
        Check::from_counterexample("action-is-a-homomorphism", "dyadic-action/homomorphism", hom)
            .at_depth(depth)
            .with_detail(&format!("{pairs} sampled triples")),
    );
    suite.data = json!({ "window": window.len(), "depth": d });
    suite
}

/// The orbit of `∅` under supports in `{1..depth}` is the whole window and
/// only the zero element fixes a point.
pub fn orbit_freeness(depth: u32) -> Suite {
    let mut suite = Suite::new("orbit-freeness", "dyadic-action/orbit");
    let group: Vec<DyadicElem> = subsets(depth).map(DyadicElem::from_support).collect();
    let orbit: BTreeSet<FinSet> = group.iter().map(|g| g.act(&FinSet::empty())).collect();
    let window: BTreeSet<FinSet> = subsets(depth).collect();
    let cex = (orbit != window).then(|| format!("orbit has {} points, window {}", orbit.len(), window.len()));
    suite.checks.push(Check::from_counterexample("orbit-of-origin-is-window", "dyadic-action/orbit", cex).at_depth(depth));
    let mut fixed = None;
    'scan: for g in &group {
        for k in &window {
            if g.act(k) == *k && !g.is_zero() {
                fixed = Some(format!("{g} fixes {k}"));
                break 'scan;
            }
        }
    }
    suite.checks.push(Check::from_counterexample("action-is-free", "dyadic-action/free", fixed).at_depth(depth));
    suite.data = json!({ "orbit_size": orbit.len() });
    suite
}
