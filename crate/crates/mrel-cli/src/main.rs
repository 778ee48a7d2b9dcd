//! `mrel`: explore finite multirelations from model files.
//!
//! Exit codes: 0 on success, 1 when a checked law fails, 2 on usage or
//! parse errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use mrel_cli::model::Model;
use mrel_core::{
    compose_mr_capped, enumerate_pfns_c, enumerate_pfns_c_capped, fixture_table, lift_capped,
    sweep_traced, union_closure, up_closure, LawId, LawReport, LiftKind, Multirelation, SweepMode,
    SweepOptions, TraceRecord, Verdict, DEFAULT_POW_CAP,
};
use std::error::Error;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mrel",
    version,
    about = "Liftings, compositions and law sweeps for finite multirelations"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the powerset-level lifting of a multirelation
    Lift {
        #[arg(long, value_parser = parse_kind)]
        kind: LiftKind,
        /// Model file declaring carriers and multirelations
        #[arg(long)]
        model: PathBuf,
        /// Name of the multirelation to lift
        #[arg(long)]
        rel: String,
        /// Allow base carriers of up to this many elements
        #[arg(long)]
        cap: Option<usize>,
    },

    /// Compose two multirelations under the chosen lifting
    Compose {
        #[arg(long, value_parser = parse_kind)]
        kind: LiftKind,
        #[arg(long)]
        model: PathBuf,
        /// Left operand name
        #[arg(long)]
        lhs: String,
        /// Right operand name
        #[arg(long)]
        rhs: String,
        /// Allow base carriers of up to this many elements
        #[arg(long)]
        cap: Option<usize>,
    },

    /// Print the composition table of the four one-element fixtures
    Table {
        #[arg(long, value_parser = parse_kind)]
        kind: LiftKind,
        /// Base carrier size (tables are defined at size 1 only)
        #[arg(long, default_value_t = 1)]
        base: usize,
    },

    /// Check one law and print the verdict
    Check {
        #[command(flatten)]
        law: LawArgs,
    },

    /// Run a law sweep and print the full report line
    Sweep {
        #[command(flatten)]
        law: LawArgs,
    },

    /// Close a multirelation upward or under binary unions
    Closure {
        #[arg(value_enum)]
        op: ClosureOp,
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        rel: String,
        /// Allow base carriers of up to this many elements
        #[arg(long)]
        cap: Option<usize>,
    },

    /// List the partial choice functions contained in a multirelation
    Pfns {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        rel: String,
        /// Abort if more than this many functions would be listed
        #[arg(long)]
        cap: Option<u64>,
    },
}

#[derive(Args)]
struct LawArgs {
    /// Law identifier, e.g. kleisli-assoc or lift-extension-peleg
    #[arg(long, value_parser = parse_law)]
    law: LawId,

    /// Base carrier size
    #[arg(long)]
    base: usize,

    #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
    mode: Mode,

    /// Sample count for sampled mode
    #[arg(long, default_value_t = 1000)]
    samples: u64,

    /// RNG seed for sampled mode
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Powerset cap threaded through the sweep
    #[arg(long)]
    cap: Option<usize>,

    /// Emit one JSON record per checked instance before the result
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureOp {
    Up,
    Union,
}

fn parse_kind(s: &str) -> Result<LiftKind, String> {
    LiftKind::parse(s).ok_or_else(|| format!("unknown kind {s:?} (kleisli, parikh or peleg)"))
}

fn parse_law(s: &str) -> Result<LawId, String> {
    LawId::parse(s).ok_or_else(|| format!("unknown law {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Box<dyn Error>> {
    match cmd {
        Cmd::Lift {
            kind,
            model,
            rel,
            cap,
        } => {
            let m = load(&model, cap)?;
            println!(
                "{}",
                lift_capped(kind, named(&m, &rel)?, pow_cap(cap))?.render()
            );
        }
        Cmd::Compose {
            kind,
            model,
            lhs,
            rhs,
            cap,
        } => {
            let m = load(&model, cap)?;
            let out = compose_mr_capped(kind, named(&m, &lhs)?, named(&m, &rhs)?, pow_cap(cap))?;
            println!("{}", out.render());
        }
        Cmd::Table { kind, base } => {
            if base != 1 {
                return Err("composition tables are only defined at base size 1".into());
            }
            let t = fixture_table(kind)?;
            println!("kind={} base=1", kind.name());
            let mut header = String::from("*");
            for n in t.names {
                header.push('\t');
                header.push_str(n);
            }
            println!("{header}");
            for (i, row) in t.cells.iter().enumerate() {
                let mut line = String::from(t.names[i]);
                for &cell in row {
                    line.push('\t');
                    line.push_str(t.names[cell]);
                }
                println!("{line}");
            }
        }
        Cmd::Check { law } => return run_law(law, Style::Verdict),
        Cmd::Sweep { law } => return run_law(law, Style::Report),
        Cmd::Closure {
            op,
            model,
            rel,
            cap,
        } => {
            let m = load(&model, cap)?;
            let mr = named(&m, &rel)?;
            let closed = match op {
                ClosureOp::Up => up_closure(mr),
                ClosureOp::Union => union_closure(mr),
            };
            println!("{}", closed.render());
        }
        Cmd::Pfns { model, rel, cap } => {
            let m = load(&model, None)?;
            let mr = named(&m, &rel)?;
            let fns = match cap {
                Some(c) => enumerate_pfns_c_capped(mr, c)?,
                None => enumerate_pfns_c(mr)?,
            };
            for f in fns {
                println!("{}", f.render());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

enum Style {
    /// `check`: bare verdict, the seed when sampled, the witness if any.
    Verdict,
    /// `sweep`: the one-line law report.
    Report,
}

fn run_law(args: LawArgs, style: Style) -> Result<ExitCode, Box<dyn Error>> {
    let mode = match args.mode {
        Mode::Exhaustive => SweepMode::Exhaustive,
        Mode::Sampled => SweepMode::Sampled {
            count: args.samples,
            seed: args.seed,
        },
    };
    let opts = SweepOptions {
        pow_cap: pow_cap(args.cap),
        ..SweepOptions::default()
    };
    let report = if args.trace {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        let mut emit = |r: &TraceRecord| {
            let operands: Vec<serde_json::Value> = r
                .operands
                .iter()
                .map(|(role, text)| serde_json::json!([role, text]))
                .collect();
            let record = serde_json::json!({
                "index": r.index,
                "pinned": r.pinned,
                "operands": operands,
                "pass": r.pass,
            });
            writeln!(out, "{record}").expect("stdout");
        };
        sweep_traced(&args.law, args.base, mode, &opts, Some(&mut emit))?
    } else {
        sweep_traced(&args.law, args.base, mode, &opts, None)?
    };
    print_report(&report, &mode, style);
    Ok(match report.verdict {
        Verdict::Holds => ExitCode::SUCCESS,
        Verdict::Fails => ExitCode::from(1),
    })
}

fn print_report(report: &LawReport, mode: &SweepMode, style: Style) {
    match style {
        Style::Report => println!("{}", report.render()),
        Style::Verdict => {
            match mode {
                SweepMode::Sampled { seed, .. } => println!("{} seed={seed}", report.verdict),
                SweepMode::Exhaustive => println!("{}", report.verdict),
            }
            if let Some(w) = &report.witness {
                println!("witness: {w}");
            }
        }
    }
}

fn pow_cap(cap: Option<usize>) -> usize {
    cap.unwrap_or(DEFAULT_POW_CAP)
}

fn load(path: &Path, cap: Option<usize>) -> Result<Model, Box<dyn Error>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(Model::parse_capped(&text, pow_cap(cap))?)
}

fn named<'m>(model: &'m Model, name: &str) -> Result<&'m Multirelation, Box<dyn Error>> {
    model
        .mrel(name)
        .ok_or_else(|| format!("no multirelation named {name:?} in the model").into())
}
