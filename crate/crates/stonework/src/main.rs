use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use stonework::config::{Command, Flags, Mode, RunConfig};

#[derive(Parser)]
#[command(name = "stonework", version, about = "Verification suites for dyadic reparametrization and groupoid algebras")]
struct Cli {
    #[arg(value_enum)]
    command: CommandArg,
    /// Window depth (verify, reparam, zaction).
    #[arg(long)]
    depth: Option<u32>,
    /// Window size for groupoid; largest admissibility index for space-audit.
    #[arg(long)]
    n: Option<u32>,
    /// Largest tower stage.
    #[arg(long)]
    max_n: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    space: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated suite names, or `all`.
    #[arg(long)]
    suite: Vec<String>,
    /// Include sample and generator matrices in the report.
    #[arg(long)]
    dump: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CommandArg {
    Verify,
    Reparam,
    Zaction,
    Groupoid,
    Tower,
    SpaceAudit,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(2);
        }
    };
    let command = match cli.command {
        CommandArg::Verify => Command::Verify,
        CommandArg::Reparam => Command::Reparam,
        CommandArg::Zaction => Command::Zaction,
        CommandArg::Groupoid => Command::Groupoid,
        CommandArg::Tower => Command::Tower,
        CommandArg::SpaceAudit => Command::SpaceAudit,
    };
    let flags = Flags {
        depth: cli.depth,
        n: cli.n,
        max_n: cli.max_n,
        seed: cli.seed,
        mode: cli.mode.map(|m| match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }),
        space: cli.space,
        suites: cli.suite,
        dump: cli.dump,
    };
    let config = match RunConfig::new(command, flags) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("stonework: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = stonework::run(&config);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.json) {
                eprintln!("stonework: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", outcome.json),
    }
    let s = outcome.summary;
    eprintln!("{}: {} pass, {} fail, {} open-evidence", config.command.name(), s.pass, s.fail, s.open);
    ExitCode::from(outcome.exit_code() as u8)
}
