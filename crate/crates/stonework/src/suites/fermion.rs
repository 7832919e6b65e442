//! Fermion tower stages, Boolean saturation and the AFD audit.

use serde_json::{json, Map, Value};
use stonework_core::audit::Check;
use stonework_core::clopen::ClopenExpr;
use stonework_core::fermion::{
    afd_audit, findim_algebra, full_matrix_check, independence_check, relations_check, saturate_boolean, stage,
    MAX_FULL_MATRIX,
};
use stonework_core::finset::DyadicElem;
use stonework_core::scalar::Field;

use crate::report::{matrix_json, Suite};

/// Relations and independence for every stage up to `max_n`, and generated
/// dimensions up to stage 4.
pub fn fermion_tower<S: Field>(max_n: u32, tol: f64, dump: bool) -> Suite {
    let mut suite = Suite::new("fermion-tower", "fermion/flip-complements");
    let mut dims = Vec::new();
    let mut ranks = Map::new();
    let mut matrices = Map::new();
    for n in 1..=max_n {
        let s = match stage::<S>(n) {
            Ok(s) => s,
            Err(e) => {
                suite.checks.push(Check::errored("stage", "fermion/flip-complements", &e).at_depth(n));
                continue;
            }
        };
        suite.checks.extend(relations_check(&s, tol));
        let (r, check) = independence_check(&s, tol);
        suite.checks.push(check);
        ranks.insert(n.to_string(), Value::from(r));
        if n <= MAX_FULL_MATRIX {
            let expected = 1usize << (2 * n);
            let check = match full_matrix_check(&s) {
                Ok(d) => {
                    dims.push(d);
                    let cex = (d != expected).then(|| format!("dimension {d}, expected {expected}"));
                    Check::from_counterexample("generated-dimension", "fermion/full-matrix-algebra", cex)
                }
                Err(e) => Check::errored("generated-dimension", "fermion/full-matrix-algebra", &e),
            };
            suite.checks.push(check.at_depth(n));
        }
        if dump {
            let gens: Map<String, Value> = s.generators().iter().map(|(name, m)| (name.clone(), matrix_json(m))).collect();
            matrices.insert(n.to_string(), Value::Object(gens));
        }
    }
    suite.data = json!({ "dimensions": dims, "signed_product_ranks": ranks });
    if dump {
        suite.data["matrices"] = Value::Object(matrices);
    }
    suite
}

pub fn afd<S: Field>(max_n: u32, tol: f64) -> Suite {
    let mut suite = Suite::new("afd", "fermion/unital-inclusions");
    match afd_audit::<S>(max_n, tol) {
        Ok(a) => {
            suite.checks = a.checks;
            suite.data = json!({ "full_dimensions": a.full_dimensions });
        }
        Err(e) => suite.checks.push(Check::errored("afd-audit", "fermion/unital-inclusions", &e)),
    }
    suite
}

/// `span{g_1, …, g_p}`.
pub fn generator_span(p: u32) -> Vec<DyadicElem> {
    let mut out = vec![DyadicElem::zero()];
    for j in 1..=p {
        let g = DyadicElem::generator(j);
        let more: Vec<DyadicElem> = out.iter().map(|x| x.add(&g)).collect();
        out.extend(more);
    }
    out
}

/// Generators `E_1..E_stages` saturated along `span{g_1} ⊂ … ⊂ span{g_1..g_stages}`
/// on the window of the given depth, with the crossed-product dimensions.
pub fn boolean_saturation(stages: u32, depth: u32) -> Suite {
    let mut suite = Suite::new("boolean-saturation", "boolean-saturation/partition");
    let gens: Vec<ClopenExpr> = (1..=stages).map(ClopenExpr::e).collect();
    let chain: Vec<Vec<DyadicElem>> = (1..=stages).map(generator_span).collect();
    let sat = match saturate_boolean(&gens, &chain, depth) {
        Ok(s) => s,
        Err(e) => {
            suite.checks.push(Check::errored("saturation", "boolean-saturation/partition", &e).at_depth(depth));
            return suite;
        }
    };
    suite.checks = sat.audit();
    let mut dims = Vec::new();
    let mut atoms = Vec::new();
    let mut empties = 0;
    for p in 1..=stages as usize {
        atoms.push(sat.stages[p - 1].atoms.len());
        empties += sat.stages[p - 1].empty_tags.len();
        let check = match findim_algebra(&sat, p) {
            Ok(fd) => {
                dims.push(fd.dimension);
                let cex = (fd.dimension != fd.rank_dimension)
                    .then(|| format!("stage {p}: product formula {} vs span rank {}", fd.dimension, fd.rank_dimension));
                Check::from_counterexample("findim-dimension-matches-rank", "crossed-product/finite-stages", cex)
                    .with_detail(&format!("stage {p}: {} atoms x {} elements, free {}", atoms[p - 1], chain[p - 1].len(), fd.free))
            }
            Err(e) => Check::errored("findim-dimension-matches-rank", "crossed-product/finite-stages", &e),
        };
        suite.checks.push(check.at_depth(depth));
    }
    let decreasing = dims.windows(2).any(|w| w[1] < w[0]);
    suite.checks.push(Check::from_counterexample(
        "findim-dimensions-increase",
        "crossed-product/finite-stages",
        decreasing.then(|| format!("dimensions {dims:?}")),
    ));
    suite.data = json!({ "atoms": atoms, "dimensions": dims, "cells_without_witness": empties, "empty_tag": format!("empty@{depth}") });
    suite
}
