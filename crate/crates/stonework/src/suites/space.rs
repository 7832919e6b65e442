//! Feasibility and admissibility audits of the built-in space, each result
//! re-checked against a direct model of cylinders and of `R`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stonework_core::audit::Check;
use stonework_core::space::{admissibility_audit, feasibility_audit, BuiltinCantor, TPoint};

use crate::report::Suite;
use crate::rng::substream;

pub const INSTANCES: usize = 50;
pub const SEARCH_BOUND: u32 = 10_000;

/// The word of `O_n` read off the binary expansion of `n`.
fn word(n: u32) -> Vec<bool> {
    format!("{n:b}").chars().skip(1).map(|c| c == '1').collect()
}

fn bits(t: &TPoint, len: usize) -> Vec<bool> {
    (1..=len).map(|i| t.bit(i)).collect()
}

/// `t ∈ O_n`: the first bits of `t` spell the word of `n`.
fn cylinder(n: u32, t: &TPoint) -> bool {
    let w = word(n);
    bits(t, w.len()) == w
}

/// `t ∈ R`: bits `2j-1` and `2j` agree, checked far past the period.
fn doubled(t: &TPoint) -> bool {
    let len = 4 * (t.preperiod().len() + 2 * t.period().len() + 2);
    let b = bits(t, len);
    b.chunks(2).all(|p| p[0] == p[1])
}

fn random_point(rng: &mut ChaCha8Rng) -> TPoint {
    let pre = (0..rng.gen_range(8..12)).map(|_| rng.gen()).collect();
    let period = (0..rng.gen_range(1..4)).map(|_| rng.gen()).collect();
    TPoint::new(pre, period).expect("period is non-empty")
}

/// A point `t` and others that differ from it within the first eight bits,
/// so that a separating cylinder exists below the search bound.
fn instance(rng: &mut ChaCha8Rng) -> (TPoint, Vec<TPoint>, u32) {
    let t = random_point(rng);
    let count = rng.gen_range(1..5);
    let mut others = Vec::new();
    while others.len() < count {
        let s = random_point(rng);
        if bits(&s, 8) != bits(&t, 8) {
            others.push(s);
        }
    }
    (t, others, rng.gen_range(0..200))
}

pub fn feasible_space(seed: u64, admissible_n: u32) -> Suite {
    let mut suite = Suite::new("feasible-space", "feasible-space/separation");
    let space = BuiltinCantor;
    let mut rng = substream(seed, "feasible-space");
    let mut cex = None;
    for i in 0..INSTANCES {
        let (t, others, m) = instance(&mut rng);
        let found = feasibility_audit(&space, &others, &t, m, SEARCH_BOUND);
        let separates = |n: u32| cylinder(n, &t) && others.iter().all(|s| !cylinder(n, s));
        let verdict = match found {
            Ok(n) if n > m && separates(n) && !(m + 1..n).any(separates) => None,
            Ok(n) => Some(format!("instance {i}: index {n} is not the least separating index above {m}")),
            Err(e) => Some(format!("instance {i}: {e}")),
        };
        if cex.is_none() {
            cex = verdict;
        }
    }
    suite.checks.push(
        Check::from_counterexample("feasibility-search", "feasible-space/separation", cex)
            .with_detail(&format!("{INSTANCES} random instances, bound {SEARCH_BOUND}")),
    );
    let mut cex = None;
    for n in 1..=admissible_n {
        let verdict = match admissibility_audit(&space, n) {
            Ok(t) if cylinder(n, &t) && !doubled(&t) => None,
            Ok(t) => Some(format!("witness {t} for O_{n} fails the direct model")),
            Err(e) => Some(format!("O_{n}: {e}")),
        };
        if cex.is_none() {
            cex = verdict;
        }
    }
    suite.checks.push(
        Check::from_counterexample("admissibility-witnesses", "feasible-space/admissible", cex)
            .with_detail(&format!("n = 1..={admissible_n}")),
    );
    suite.checks.push(Check::open(
        "r-cardinality",
        "feasible-space/admissible",
        "the size and nowhere-density of R are trusted from the construction, not verified",
    ));
    suite.data = json!({ "instances": INSTANCES, "admissible_n": admissible_n });
    suite
}
