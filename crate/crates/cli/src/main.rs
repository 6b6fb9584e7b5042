use std::io::{self, BufRead, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use locus_cli::doc::{render, Doc, Format, InputError};
use locus_cli::ops::{
    self, BehaviourOp, Criterion, GenOpts, LambdaOp, Named, NamedOpts, NormalizeOpts, OrderArg, UniverseOpts,
};
use locus_cli::session::{ChooseError, Choice, Store};

/// Proof nets, designs and their normalization.
#[derive(Parser)]
#[command(name = "locus", version)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide a correctness criterion on a structure.
    Check {
        #[arg(value_enum)]
        criterion: Criterion,
        /// Input file; standard input when absent or `-`.
        input: Option<PathBuf>,
    },
    /// Read back a sequent derivation.
    Sequentialize {
        #[arg(long)]
        mix: bool,
        input: Option<PathBuf>,
    },
    /// Eliminate cuts.
    CutNormalize {
        #[arg(long)]
        trace: bool,
        input: Option<PathBuf>,
    },
    /// Typing, order and named designs.
    Design {
        #[command(subcommand)]
        op: DesignCmd,
    },
    /// Normalize a net: its principal design, then its partners.
    Normalize {
        #[command(flatten)]
        opts: NormalizeOpts,
        input: Option<PathBuf>,
    },
    /// Orthogonality of a closed net.
    Orthogonal {
        /// Also run the token machine (pairs only).
        #[arg(long)]
        token: bool,
        input: Option<PathBuf>,
    },
    /// Behaviours in a finite universe; sections of the input are separated by `---`.
    Behaviour {
        #[arg(value_enum)]
        op: BehaviourOp,
        #[command(flatten)]
        opts: UniverseOpts,
        input: Option<PathBuf>,
    },
    /// Designs as terms.
    Lambda {
        #[arg(value_enum)]
        op: LambdaOp,
        /// Base for to-term / to-slice, e.g. "|- 1 2".
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        fuel: Option<usize>,
        input: Option<PathBuf>,
    },
    /// Seeded random structures.
    Gen(GenOpts),
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value_t = 7878)]
        port: u16,
        /// Append-only session log, replayed at startup.
        #[arg(long)]
        log: Option<PathBuf>,
    },
    /// Explore a normal form by hand: read `i J` choices from standard input.
    Explore {
        input: PathBuf,
        #[arg(long)]
        alphabet: Option<String>,
        #[arg(long)]
        fuel: Option<usize>,
        #[arg(long)]
        log: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DesignCmd {
    /// Least base of a design.
    InferBase { input: Option<PathBuf> },
    /// Check `design : base`.
    Check { input: Option<PathBuf> },
    /// Is the first design below the second?
    Compare {
        #[arg(long, value_enum, default_value = "obs")]
        order: OrderArg,
        input: Option<PathBuf>,
    },
    /// Print a named design.
    Named {
        #[arg(value_enum)]
        which: Named,
        #[command(flatten)]
        opts: NamedOpts,
    },
}

fn read_input(p: Option<&Path>) -> Result<String, InputError> {
    let mut s = String::new();
    match p {
        Some(p) if p != Path::new("-") => {
            s = std::fs::read_to_string(p).map_err(|e| InputError::Invalid(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin().read_to_string(&mut s).map_err(InputError::invalid)?;
        }
    }
    Ok(s)
}

fn run(cmd: Cmd, format: Format) -> Result<Doc, InputError> {
    let input = |p: Option<PathBuf>| read_input(p.as_deref());
    match cmd {
        Cmd::Check { criterion, input: p } => ops::check(criterion, &input(p)?),
        Cmd::Sequentialize { mix, input: p } => ops::sequentialize(&input(p)?, mix),
        Cmd::CutNormalize { trace, input: p } => ops::cut_elimination(&input(p)?, trace),
        Cmd::Design { op } => match op {
            DesignCmd::InferBase { input: p } => ops::infer_base(&input(p)?),
            DesignCmd::Check { input: p } => ops::check_typing(&input(p)?),
            DesignCmd::Compare { order, input: p } => ops::compare_designs(&input(p)?, order),
            DesignCmd::Named { which, opts } => ops::named_design(which, &opts),
        },
        Cmd::Normalize { opts, input: p } => ops::normalize(&input(p)?, &opts),
        Cmd::Orthogonal { token, input: p } => ops::orthogonal(&input(p)?, token),
        Cmd::Behaviour { op, opts, input: p } => ops::behaviour(op, &input(p)?, &opts),
        Cmd::Lambda { op, base, fuel, input: p } => ops::lambda(op, &input(p)?, base.as_deref(), fuel),
        Cmd::Gen(o) => ops::gen(&o),
        Cmd::Serve { port, log } => {
            let store = match log {
                Some(p) => Store::with_log(&p).map_err(InputError::invalid)?,
                None => Store::new(),
            };
            let rt = tokio::runtime::Runtime::new().map_err(InputError::invalid)?;
            rt.block_on(locus_cli::server::serve(port, Arc::new(store))).map_err(InputError::invalid)?;
            Ok(Doc::new(serde_json::json!({ "stopped": true })))
        }
        Cmd::Explore { input: p, alphabet, fuel, log } => explore(&read_input(Some(&p))?, alphabet, fuel, log, format),
    }
}

fn explore(
    net: &str,
    alphabet: Option<String>,
    fuel: Option<usize>,
    log: Option<PathBuf>,
    format: Format,
) -> Result<Doc, InputError> {
    let store = match log {
        Some(p) => Store::with_log(&p).map_err(InputError::invalid)?,
        None => Store::new(),
    };
    let mut state = store.create(net, alphabet.as_deref(), fuel)?;
    let id = state.id;
    let show = |v: &serde_json::Value| {
        let mut out = io::stdout().lock();
        let _ = out.write_all(render(v, format).as_bytes());
        let _ = out.flush();
    };
    let mut lines = io::stdin().lock().lines();
    while !state.offered.is_empty() {
        show(&serde_json::to_value(&state).expect("states serialize"));
        let Some(line) = lines.next() else { break };
        let line = line.map_err(InputError::invalid)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line == "quit" {
            break;
        }
        let Some((i, j)) = line.split_once(char::is_whitespace) else {
            eprintln!("expected `i J`, e.g. `1 {{1 2}}`");
            continue;
        };
        let Ok(i) = i.parse() else {
            eprintln!("bad bias {i}");
            continue;
        };
        match store.choose(id, Choice { i, j: j.trim().to_string() }) {
            Ok(s) => state = s,
            Err(ChooseError::Illegal { offered }) => {
                let o: Vec<String> = offered.iter().map(|c| format!("{} {}", c.i, c.j)).collect();
                eprintln!("illegal choice; offered: {}", o.join(", "));
            }
            Err(e) => eprintln!("{e}"),
        }
    }
    Ok(Doc::of(&state))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd, cli.format) {
        Ok(doc) => {
            print!("{}", doc.render(cli.format));
            ExitCode::from(doc.exit_code() as u8)
        }
        Err(e) => {
            eprint!("{}", render(&e.doc(), cli.format));
            ExitCode::from(2)
        }
    }
}
