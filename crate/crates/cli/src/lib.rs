//! Command-line front end. [`run`] is the whole program; `main` only
//! wires it to the process streams.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use hypergraphic::asymptotic::nongraphic_witness;
use hypergraphic::critical::{critical_hypergraph, critical_sequence, params};
use hypergraphic::exact::{fmt_sig, parse_decimal, to_f64};
use hypergraphic::io::{format_degree_sequence, format_hypergraph, parse_degree_sequence, parse_hypergraph};
use hypergraphic::oracle::{is_graphic_exhaustive, OracleStatus, DEFAULT_NODE_BUDGET};
use hypergraphic::realize::{decide_graphic_interval, realize, Verdict};
use hypergraphic::reduction::embed;
use hypergraphic::sequence::class_membership;
use hypergraphic::threshold::{c1_star, sweep};
use hypergraphic::{Error, Hypergraph3};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILS_MOD3: i32 = 3;
pub const EXIT_UNKNOWN: i32 = 4;
pub const EXIT_INTERNAL: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "hypergraphic", version, about = "Degree sequences of 3-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// c1*(c2) and its maximizer
    Threshold {
        #[arg(long)]
        c2: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// CSV of c1*(c2) over a grid of c2
    PlotData {
        #[arg(long)]
        c2_min: String,
        #[arg(long)]
        c2_max: String,
        #[arg(long)]
        step: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Critical degree sequence D(n, k, d_max) and its hypergraph
    Critical {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        skip_rounding_edge: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Realize a sequence in the always-graphic band
    Realize {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide membership in the always-graphic band
    Decide {
        #[command(flatten)]
        input: Input,
        #[arg(long, requires = "c2")]
        c1: Option<String>,
        #[arg(long, requires = "c1")]
        c2: Option<String>,
    },
    /// Embed D0 into the gadget and write D_B
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        epsilon: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        emit_hprime: Option<PathBuf>,
    },
    /// Exhaustive graphicality search for small sequences
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Non-graphicality certificate for a t-uniform half/half sequence
    Certify {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        p: String,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Degree sequence file, whitespace separated
    #[arg(long = "in")]
    path: PathBuf,
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Internal(_) | Error::Convergence(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn io_fail(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: EXIT_USAGE, msg: format!("{}: {e}", path.display()) }
}

fn internal(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_INTERNAL, msg: msg.into() }
}

type Outcome = std::result::Result<i32, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| io_fail(path, e))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_fail(path, e))
}

/// Writes `h` and checks that the file parses back to the same degrees.
fn write_hypergraph(path: &Path, h: &Hypergraph3, expected: &[u64]) -> std::result::Result<(), Failure> {
    let text = format_hypergraph(h);
    let back = parse_hypergraph(&text).map_err(|e| internal(format!("emitted hypergraph does not parse: {e}")))?;
    if back.degrees() != expected {
        return Err(internal("emitted hypergraph does not recount to the claimed sequence"));
    }
    write(path, &text)
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure { code: EXIT_USAGE, msg: format!("stdout: {e}") })
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Threshold { c2, tol } => {
            let r = c1_star(&parse_decimal(&c2)?, tol)?;
            let text = format!(
                "c2={}\nc1_star={}\nalpha_star={}\nbranch={}\n",
                fmt_sig(to_f64(&r.c2), 12),
                fmt_sig(r.c1_star, 12),
                fmt_sig(r.alpha_star, 12),
                r.branch
            );
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::PlotData { c2_min, c2_max, step, tol, out: path } => {
            let rows = sweep(&parse_decimal(&c2_min)?, &parse_decimal(&c2_max)?, &parse_decimal(&step)?, tol)?;
            let mut text = String::from("c2,c1_star,alpha_star\n");
            for r in rows {
                text.push_str(&format!(
                    "{},{},{}\n",
                    fmt_sig(to_f64(&r.c2), 12),
                    fmt_sig(r.c1_star, 12),
                    fmt_sig(r.alpha_star, 12)
                ));
            }
            match path {
                Some(p) => write(&p, &text)?,
                None => emit(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Critical { n, k, dmax, skip_rounding_edge, out: path } => {
            let p = params(n, k, dmax)?;
            let (h, _) = critical_hypergraph(&p, skip_rounding_edge).map_err(|e| internal(e.to_string()))?;
            let degrees = h.degree_sequence();
            if !skip_rounding_edge {
                let mut sorted = degrees.clone().into_vec();
                sorted.sort_unstable();
                if sorted != critical_sequence(&p).into_vec() {
                    return Err(internal("critical hypergraph does not realize the critical sequence"));
                }
            }
            emit(out, &format_degree_sequence(&degrees))?;
            if let Some(path) = path {
                write_hypergraph(&path, &h, degrees.degrees())?;
            }
            Ok(EXIT_OK)
        }
        Command::Realize { input, out: path } => {
            let d = parse_degree_sequence(&read(&input.path)?)?;
            d.check_degree_bound()?;
            let decision = decide_graphic_interval(&d)?;
            match decision.verdict {
                Verdict::FailsMod3 => return Ok(EXIT_FAILS_MOD3),
                Verdict::BelowThreshold => return Ok(EXIT_UNKNOWN),
                Verdict::Graphic => {}
            }
            let h = realize(&d).map_err(|e| internal(e.to_string()))?;
            write_hypergraph(&path, &h, d.degrees())?;
            emit(out, &format!("edges={}\n", h.edge_count()))?;
            Ok(EXIT_OK)
        }
        Command::Decide { input, c1, c2 } => {
            let d = parse_degree_sequence(&read(&input.path)?)?;
            d.check_degree_bound()?;
            let decision = decide_graphic_interval(&d)?;
            let mut text = format!("verdict={}\n", decision.verdict);
            if let Some(g) = &decision.g_star {
                text.push_str(&format!("g_star={}\nk_star={}\n", g.value, g.k));
            }
            if let (Some(c1), Some(c2)) = (c1, c2) {
                let inside = class_membership(&d, &parse_decimal(&c1)?, &parse_decimal(&c2)?, None)?;
                text.push_str(&format!("in_class={inside}\n"));
            }
            emit(out, &text)?;
            Ok(match decision.verdict {
                Verdict::Graphic => EXIT_OK,
                Verdict::FailsMod3 => EXIT_FAILS_MOD3,
                Verdict::BelowThreshold => EXIT_UNKNOWN,
            })
        }
        Command::Reduce { input, c2, epsilon, out: path, emit_hprime } => {
            let d0 = parse_degree_sequence(&read(&input.path)?)?;
            let a = embed(&d0, &parse_decimal(&c2)?, &parse_decimal(&epsilon)?)?;
            write(&path, &format_degree_sequence(&a.d_b))?;
            if let Some(hp) = emit_hprime {
                write_hypergraph(&hp, &a.h_prime, a.d_a_prime.degrees())?;
            }
            let text = format!(
                "m={}\nn={}\nd_max={}\nk_star={}\ncase={}\n",
                a.m, a.n, a.d_max, a.k_star, a.case
            );
            emit(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Oracle { input, budget, out: path } => {
            let d = parse_degree_sequence(&read(&input.path)?)?;
            let v = is_graphic_exhaustive(&d, budget);
            let (label, code) = match &v.status {
                OracleStatus::Graphic(h) => {
                    if h.degrees() != d.degrees() {
                        return Err(internal("oracle witness does not realize the sequence"));
                    }
                    if let Some(p) = &path {
                        write_hypergraph(p, h, d.degrees())?;
                    }
                    ("graphic", EXIT_OK)
                }
                OracleStatus::NonGraphic => ("non_graphic", EXIT_NEGATIVE),
                OracleStatus::BudgetExceeded => ("budget_exceeded", EXIT_UNKNOWN),
            };
            emit(out, &format!("status={label}\nnodes={}\n", v.nodes_explored))?;
            Ok(code)
        }
        Command::Certify { t, p, n } => {
            let c = nongraphic_witness(t, &parse_decimal(&p)?, n)?;
            emit(out, &format!("{c}\n"))?;
            Ok(if c.sound { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
