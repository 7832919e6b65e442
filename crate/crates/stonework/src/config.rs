//! Run configuration and its validation.

use serde::Serialize;
use stonework_core::space::BuiltinCantor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Verify,
    Reparam,
    Zaction,
    Groupoid,
    Tower,
    SpaceAudit,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Reparam => "reparam",
            Command::Zaction => "zaction",
            Command::Groupoid => "groupoid",
            Command::Tower => "tower",
            Command::SpaceAudit => "space-audit",
        }
    }

    /// Suites a command can run, in report order.
    pub fn suites(self) -> &'static [&'static str] {
        match self {
            Command::Verify => &[
                "dyadic-laws",
                "orbit-freeness",
                "clopen-images",
                "involution-tower",
                "z-action",
                "groupoid-laws",
                "groupoid-identities",
                "groupoid-approximation",
                "diagonal-masa",
                "normalizer",
                "fermion-tower",
                "boolean-saturation",
                "feasible-space",
            ],
            Command::Reparam => &["involution-tower"],
            Command::Zaction => &["involution-tower", "z-action"],
            Command::Groupoid => &[
                "groupoid-laws",
                "groupoid-identities",
                "groupoid-approximation",
                "diagonal-masa",
                "normalizer",
            ],
            Command::Tower => &["fermion-tower", "afd"],
            Command::SpaceAudit => &["feasible-space"],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub depth: u32,
    pub n: u32,
    pub max_n: u32,
    pub seed: u64,
    pub mode: Mode,
    pub space: String,
    pub suites: Vec<String>,
    pub dump: bool,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{flag} = {value} outside {min}..={max} for {command}")]
    OutOfRange { command: &'static str, flag: &'static str, value: u32, min: u32, max: u32 },
    #[error("unknown suite {0:?} for {1}")]
    UnknownSuite(String, &'static str),
    #[error("unknown space {0:?}")]
    UnknownSpace(String),
}

/// Defaults for flags the user left out.
#[derive(Clone, Debug, Default)]
pub struct Flags {
    pub depth: Option<u32>,
    pub n: Option<u32>,
    pub max_n: Option<u32>,
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
    pub space: Option<String>,
    pub suites: Vec<String>,
    pub dump: bool,
}

pub const DEFAULT_SEED: u64 = 0x5eed;

impl RunConfig {
    pub fn new(command: Command, flags: Flags) -> Result<Self, ConfigError> {
        let default_depth = match command {
            Command::Reparam => 3,
            Command::Zaction => 5,
            _ => 6,
        };
        let config = RunConfig {
            command,
            depth: flags.depth.unwrap_or(default_depth),
            n: flags.n.unwrap_or(if command == Command::SpaceAudit { 200 } else { 3 }),
            max_n: flags.max_n.unwrap_or(4),
            seed: flags.seed.unwrap_or(DEFAULT_SEED),
            mode: flags.mode.unwrap_or(Mode::Exact),
            space: flags.space.unwrap_or_else(|| BuiltinCantor::NAME.to_string()),
            suites: expand_suites(command, &flags.suites)?,
            dump: flags.dump,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), ConfigError> {
        let command = self.command.name();
        let range = |flag, value: u32, min, max| {
            if (min..=max).contains(&value) {
                Ok(())
            } else {
                Err(ConfigError::OutOfRange { command, flag, value, min, max })
            }
        };
        match self.command {
            Command::Verify => range("--depth", self.depth, 1, 8)?,
            Command::Reparam => range("--depth", self.depth, 1, 6)?,
            Command::Zaction => range("--depth", self.depth, 2, 6)?,
            Command::Groupoid => range("--n", self.n, 1, 4)?,
            Command::Tower => range("--max-n", self.max_n, 1, 6)?,
            Command::SpaceAudit => range("--n", self.n, 1, 10_000)?,
        }
        if self.space != BuiltinCantor::NAME {
            return Err(ConfigError::UnknownSpace(self.space.clone()));
        }
        Ok(())
    }

    pub fn wants(&self, suite: &str) -> bool {
        self.suites.iter().any(|s| s == suite)
    }
}

fn expand_suites(command: Command, requested: &[String]) -> Result<Vec<String>, ConfigError> {
    let known = command.suites();
    let names: Vec<&str> = requested.iter().flat_map(|s| s.split(',')).map(str::trim).filter(|s| !s.is_empty()).collect();
    if names.is_empty() || names.contains(&"all") {
        return Ok(known.iter().map(|s| s.to_string()).collect());
    }
    for name in &names {
        if !known.contains(name) {
            return Err(ConfigError::UnknownSuite(name.to_string(), command.name()));
        }
    }
    // Report order follows the command's suite list, not the flag order.
    Ok(known.iter().filter(|k| names.contains(k)).map(|s| s.to_string()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_ranges() {
        let c = RunConfig::new(Command::Reparam, Flags::default()).unwrap();
        assert_eq!(c.depth, 3);
        assert_eq!(c.suites, vec!["involution-tower"]);
        let bad = Flags { depth: Some(9), ..Flags::default() };
        assert!(matches!(RunConfig::new(Command::Verify, bad), Err(ConfigError::OutOfRange { .. })));
        let bad = Flags { space: Some("other".into()), ..Flags::default() };
        assert!(matches!(RunConfig::new(Command::Verify, bad), Err(ConfigError::UnknownSpace(_))));
    }

    #[test]
    fn suite_selection() {
        let flags = Flags { suites: vec!["normalizer,groupoid-laws".into()], ..Flags::default() };
        let c = RunConfig::new(Command::Groupoid, flags).unwrap();
        assert_eq!(c.suites, vec!["groupoid-laws", "normalizer"]);
        let flags = Flags { suites: vec!["nope".into()], ..Flags::default() };
        assert!(matches!(RunConfig::new(Command::Groupoid, flags), Err(ConfigError::UnknownSuite(..))));
    }
}
