use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dpquot_cli::config::split_words;
use dpquot_cli::{exit_code, run, Command, Format, RunConfig, EXIT_OK, EXIT_USAGE};

/// Exact computations for quotients of del Pezzo surfaces.
#[derive(Parser, Debug)]
#[command(name = "dpquot", version)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// JSON run configuration; flags on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads for `replay --all` and `verify-example --all`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(clap::Args, Debug, Default)]
struct GroupArgs {
    #[arg(long)]
    degree: Option<i64>,
    /// Generator words, separated by commas or spaces, e.g. "i12,i13" or "(12)(34)i15".
    #[arg(long)]
    group: Option<String>,
    /// Words for the Galois image.
    #[arg(long)]
    galois: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// The (-1)-curves and their incidence.
    Lines {
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Order of the Weyl group.
    WeylOrder {
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Orbits of the group (with Galois) on the (-1)-curves.
    Orbits(GroupArgs),
    /// Rationality verdict for a group action.
    Verdict {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        has_point: bool,
    },
    /// Replay a quotient construction.
    Replay {
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Resolutions of the nine singularities of the standard table.
    Table1,
    /// Hirzebruch-Jung resolution of 1/m(1,q).
    Hj {
        m: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
    },
    /// Verify an explicit example.
    VerifyExample {
        id: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Normal-subgroup witnesses for every subgroup of S5.
    S5Lemma,
}

fn apply_group(cfg: &mut RunConfig, g: GroupArgs) {
    if g.degree.is_some() {
        cfg.degree = g.degree;
    }
    if let Some(s) = g.group {
        cfg.group_spec = split_words(&s);
    }
    if let Some(s) = g.galois {
        cfg.galois_spec = split_words(&s);
    }
}

fn build(cli: Cli) -> Result<RunConfig, String> {
    let mut cfg = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            RunConfig::from_json(&text).map_err(|e| e.0)?
        }
        None => RunConfig::default(),
    };
    if let Some(f) = cli.format {
        cfg.output_format = f;
    }
    if cli.jobs.is_some() {
        cfg.jobs = cli.jobs;
    }
    let Some(cmd) = cli.command else {
        return Ok(cfg);
    };
    let (command, all, id) = match cmd {
        Cmd::Lines { degree } => {
            apply_group(
                &mut cfg,
                GroupArgs {
                    degree,
                    ..Default::default()
                },
            );
            (Command::Lines, false, None)
        }
        Cmd::WeylOrder { degree } => {
            apply_group(
                &mut cfg,
                GroupArgs {
                    degree,
                    ..Default::default()
                },
            );
            (Command::WeylOrder, false, None)
        }
        Cmd::Orbits(g) => {
            apply_group(&mut cfg, g);
            (Command::Orbits, false, None)
        }
        Cmd::Verdict { group, has_point } => {
            apply_group(&mut cfg, group);
            cfg.has_point |= has_point;
            (Command::Verdict, false, None)
        }
        Cmd::Replay { id, all } => (Command::Replay, all, id),
        Cmd::Table1 => (Command::Table1, false, None),
        Cmd::Hj { m, q } => {
            cfg.hj = Some((m, q));
            (Command::Hj, false, None)
        }
        Cmd::VerifyExample { id, all } => (Command::VerifyExample, all, id),
        Cmd::S5Lemma => (Command::S5Lemma, false, None),
    };
    if cfg.command != Some(command) {
        cfg.id = None;
        cfg.all = false;
    }
    cfg.command = Some(command);
    cfg.all |= all;
    if id.is_some() {
        cfg.id = id;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let cfg = match build(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let result = run(&cfg);
    let code = exit_code(&result);
    match &result {
        Ok(report) => match report.render(cfg.output_format) {
            Ok(s) => {
                let _ = std::io::stdout().write_all(s.as_bytes());
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}
