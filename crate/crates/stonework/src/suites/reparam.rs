//! The involution tower, its dyadic action and the induced `Z`-action.

use serde_json::json;
use stonework_core::audit::Check;
use stonework_core::reparam::{audit_tower, audit_zaction, build_tower, build_zaction, default_neighborhoods, InvolutionTower};

use crate::report::{finset_json, Suite};

/// Window depth used for the preconditions of each swap.
pub const BUILD_DEPTH: u32 = 8;

pub fn build(n: u32) -> stonework_core::Result<InvolutionTower> {
    build_tower(n, &default_neighborhoods(n)?, BUILD_DEPTH.max(n))
}

/// Builds the `n`-level tower and audits it on the window `{1..n}`.
pub fn involution_tower(n: u32) -> (Suite, Option<InvolutionTower>) {
    let mut suite = Suite::new("involution-tower", "involution-tower/a");
    match build(n) {
        Ok(t) => {
            suite.checks = audit_tower(&t, n);
            suite.data = json!({ "levels": n, "leaves": t.level(n).len() });
            (suite, Some(t))
        }
        Err(e) => {
            suite.checks.push(Check::errored("tower-construction", "involution-tower/a", &e).at_depth(n));
            (suite, None)
        }
    }
}

pub fn z_action(t: &InvolutionTower) -> Suite {
    let mut suite = Suite::new("z-action", "z-action/odometer");
    match build_zaction(t) {
        Ok(z) => {
            suite.checks = audit_zaction(&z, t);
            let segment = z.orbit_segment(1usize << t.n()).unwrap_or_default();
            suite.data = json!({ "orbit_segment": segment.iter().map(finset_json).collect::<Vec<_>>() });
        }
        Err(e) => suite.checks.push(Check::errored("z-action-construction", "z-action/odometer", &e).at_depth(t.n())),
    }
    suite
}
