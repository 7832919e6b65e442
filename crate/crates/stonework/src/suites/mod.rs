//! Suites run by the CLI commands, each returning checks and report data.

pub mod clopen;
pub mod combinatorics;
pub mod fermion;
pub mod groupoid;
pub mod reparam;
pub mod space;

use stonework_core::scalar::{Float, GaussRational};

use crate::config::{Command, Mode, RunConfig};
use crate::report::Suite;

/// Instantiates a generic suite at the scalar type of the mode.
macro_rules! by_mode {
    ($mode:expr, $module:ident :: $f:ident ( $($arg:expr),* )) => {
        match $mode {
            Mode::Exact => $module::$f::<GaussRational>($($arg),*),
            Mode::Float => $module::$f::<Float>($($arg),*),
        }
    };
}

/// Clopen image samples drawn by `verify`.
pub const CLOPEN_SAMPLES: usize = 10_000;
/// Float tolerance; exact mode ignores it.
pub const FLOAT_TOL: f64 = 1e-9;

pub fn tolerance(mode: Mode) -> f64 {
    match mode {
        Mode::Exact => 0.0,
        Mode::Float => FLOAT_TOL,
    }
}

/// Runs the selected suites of `config` in report order.
pub fn run_suites(config: &RunConfig) -> Vec<Suite> {
    let d = config.depth;
    let (tower_n, groupoid_n, fermion_n) = match config.command {
        Command::Verify => (d.min(5), d.min(3), d.min(6)),
        Command::Groupoid => (0, config.n, 0),
        Command::Tower => (0, 0, config.max_n),
        _ => (d, 0, 0),
    };
    let tol = tolerance(config.mode);
    let mut out = Vec::new();
    let mut tower = None;
    for name in &config.suites {
        let suite = match name.as_str() {
            "dyadic-laws" => combinatorics::dyadic_laws(d, config.seed),
            "orbit-freeness" => combinatorics::orbit_freeness(d),
            "clopen-images" => clopen::clopen_images(config.seed, CLOPEN_SAMPLES),
            "involution-tower" => {
                let (suite, t) = reparam::involution_tower(tower_n);
                tower = t;
                suite
            }
            "z-action" => {
                if tower.is_none() {
                    tower = reparam::involution_tower(tower_n).1;
                }
                match &tower {
                    Some(t) => reparam::z_action(t),
                    None => {
                        let mut s = Suite::new("z-action", "z-action/odometer");
                        s.checks.push(stonework_core::audit::Check::errored("z-action-construction", s.anchor, &"no tower"));
                        s
                    }
                }
            }
            "groupoid-laws" => by_mode!(config.mode, groupoid::laws(groupoid_n, config.seed, tol, config.dump)),
            "groupoid-identities" => by_mode!(config.mode, groupoid::identities(groupoid_n, config.seed, tol, config.dump)),
            "groupoid-approximation" => {
                by_mode!(config.mode, groupoid::approximation(groupoid_n, config.seed, tol, config.dump))
            }
            "diagonal-masa" => groupoid::masa(groupoid_n),
            "normalizer" => by_mode!(config.mode, groupoid::normalizer(groupoid_n, config.seed, tol)),
            "fermion-tower" => by_mode!(config.mode, fermion::fermion_tower(fermion_n, tol, config.dump)),
            "afd" => by_mode!(config.mode, fermion::afd(fermion_n, tol)),
            "boolean-saturation" => fermion::boolean_saturation(3, 5),
            "feasible-space" => {
                let n = if config.command == Command::SpaceAudit { config.n } else { 200 };
                space::feasible_space(config.seed, n)
            }
            other => unreachable!("suite {other} passed validation"),
        };
        out.push(suite);
    }
    out
}
