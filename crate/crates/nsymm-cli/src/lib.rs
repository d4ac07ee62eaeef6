//! Command-line front end for the `nsymm` engine: compute objects, run the
//! verification suites, and emit text or JSON.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nsymm::isobaric::{newton_p, newton_q, IsobaricTable, TableKind};
use nsymm::json as njson;
use nsymm::primitives::Engine;
use nsymm::qsymm;
use nsymm::verify::{index_table, run_suite, RunConfig, SUITES};
use nsymm::words::{enumerate_lyndon, Composition};

#[derive(Parser, Debug)]
#[command(
    name = "nsymm",
    about = "Exact arithmetic for noncommutative symmetric functions: Lyndon primitives, isobaric decompositions, and their verification",
    version
)]
pub struct Cli {
    /// Largest weight the verification suites work at.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_weight: u32,

    /// Curve truncation depth.
    #[arg(long, global = true, default_value_t = 3)]
    pub truncation: u32,

    /// Seed for the randomized property samples.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum IsobaricKind {
    L,
    N,
    LSwl,
    NSwl,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum NewtonKind {
    P,
    Q,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the Lyndon compositions of a weight, in wll order.
    Lyndon { weight: u32 },
    /// The primitive attached to a Lyndon composition, e.g. `[1,2]`.
    Primitive { alpha: String },
    /// The curve attached to a Lyndon composition, truncated at --truncation.
    Curve { alpha: String },
    /// One entry of an isobaric decomposition table.
    Isobaric {
        #[arg(value_enum)]
        kind: IsobaricKind,
        u: u32,
        v: u32,
    },
    /// A Newton primitive.
    Newton {
        #[arg(value_enum)]
        kind: NewtonKind,
        n: u32,
    },
    /// Overlapping shuffle product of two compositions.
    Shuffle { alpha: String, beta: String },
    /// Duality pairing of a polynomial (JSON file) with a quasisymmetric
    /// element (JSON file).
    Pair { p_file: String, q_file: String },
    /// The free-Lie-subalgebra index table, each row computed two ways.
    IndexTable,
    /// Run a verification suite.
    Verify { suite: String },
}

/// Outcome of one invocation: what to print and the process exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn usage_error(msg: impl Into<String>) -> Outcome {
    Outcome { stdout: format!("error: {}\n", msg.into()), code: 2 }
}

fn parse_composition(s: &str) -> Result<Composition, Outcome> {
    s.parse::<Composition>().map_err(|e| usage_error(e.to_string()))
}

fn parse_lyndon(s: &str) -> Result<Composition, Outcome> {
    let c = parse_composition(s)?;
    if c.is_empty() || !c.is_lyndon() {
        return Err(usage_error(format!("{c} is not a Lyndon composition")));
    }
    Ok(c)
}

pub fn run(cli: Cli) -> Outcome {
    let cfg = RunConfig {
        max_weight: cli.max_weight.max(1),
        truncation: cli.truncation.max(1),
        seed: cli.seed,
    };
    let json_out = cli.output == Output::Json;
    match cli.command {
        Command::Lyndon { weight } => {
            if weight == 0 {
                return usage_error("weight must be at least 1");
            }
            let words = enumerate_lyndon(weight);
            let stdout = if json_out {
                let arr: Vec<_> = words.iter().map(njson::composition_to_json).collect();
                format!("{}\n", serde_json::Value::Array(arr))
            } else {
                let mut line = words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ");
                line.push('\n');
                line
            };
            Outcome { stdout, code: 0 }
        }
        Command::Primitive { alpha } => {
            let alpha = match parse_lyndon(&alpha) {
                Ok(a) => a,
                Err(e) => return e,
            };
            let mut eng = Engine::new();
            let p = eng.primitive(&alpha);
            let stdout = if json_out {
                format!("{}\n", njson::poly_to_json(&p))
            } else {
                format!("{p}\n")
            };
            Outcome { stdout, code: 0 }
        }
        Command::Curve { alpha } => {
            let alpha = match parse_lyndon(&alpha) {
                Ok(a) => a,
                Err(e) => return e,
            };
            let mut eng = Engine::new();
            let d = eng.d_curve(&alpha, cfg.truncation);
            let stdout = if json_out {
                format!("{}\n", njson::curve_to_json(&d))
            } else {
                let mut s = String::new();
                for i in 1..=d.bound() {
                    s.push_str(&format!("d({i}) = {}\n", d.term(i)));
                }
                s
            };
            Outcome { stdout, code: 0 }
        }
        Command::Isobaric { kind, u, v } => {
            if u == 0 || v == 0 {
                return usage_error("table entries need u, v >= 1");
            }
            let kind = match kind {
                IsobaricKind::L => TableKind::LWl,
                IsobaricKind::N => TableKind::NWl,
                IsobaricKind::LSwl => TableKind::LSwl,
                IsobaricKind::NSwl => TableKind::NSwl,
            };
            let table = IsobaricTable::build(kind, u + v);
            let entry = table.entry(u, v);
            let stdout = if json_out {
                format!("{}\n", njson::poly_to_json(entry))
            } else {
                format!("{entry}\n")
            };
            Outcome { stdout, code: 0 }
        }
        Command::Newton { kind, n } => {
            if n == 0 {
                return usage_error("n must be at least 1");
            }
            let p = match kind {
                NewtonKind::P => newton_p(n),
                NewtonKind::Q => newton_q(n),
            };
            let stdout = if json_out {
                format!("{}\n", njson::poly_to_json(&p))
            } else {
                format!("{p}\n")
            };
            Outcome { stdout, code: 0 }
        }
        Command::Shuffle { alpha, beta } => {
            let a = match parse_composition(&alpha) {
                Ok(a) => a,
                Err(e) => return e,
            };
            let b = match parse_composition(&beta) {
                Ok(b) => b,
                Err(e) => return e,
            };
            let prod = qsymm::osh_mul(&a, &b);
            let stdout = if json_out {
                format!("{}\n", njson::qelem_to_json(&prod))
            } else {
                format!("{prod}\n")
            };
            Outcome { stdout, code: 0 }
        }
        Command::Pair { p_file, q_file } => {
            let read = |path: &str| -> Result<serde_json::Value, Outcome> {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| usage_error(format!("cannot read {path}: {e}")))?;
                serde_json::from_str(&text).map_err(|e| usage_error(format!("{path}: {e}")))
            };
            let pv = match read(&p_file) {
                Ok(v) => v,
                Err(e) => return e,
            };
            let qv = match read(&q_file) {
                Ok(v) => v,
                Err(e) => return e,
            };
            let p = match njson::poly_from_json(&pv) {
                Ok(p) => p,
                Err(e) => return usage_error(format!("{p_file}: {e}")),
            };
            let q = match njson::qelem_from_json(&qv) {
                Ok(q) => q,
                Err(e) => return usage_error(format!("{q_file}: {e}")),
            };
            if p.host() != nsymm::Host::NSymm {
                return usage_error("the pairing needs a polynomial over NSymm");
            }
            let value = qsymm::pairing(&p, &q);
            let stdout = if json_out {
                format!("{}\n", json!({ "pairing": value.to_string() }))
            } else {
                format!("{value}\n")
            };
            Outcome { stdout, code: 0 }
        }
        Command::IndexTable => {
            let rows = index_table(cfg.max_weight);
            let all_agree = rows.iter().all(|r| r.agree());
            let stdout = if json_out {
                let arr: Vec<_> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "weight": r.weight,
                            "lyndon_count": r.lyndon_count,
                            "index_lattice": r.by_lattice.to_string(),
                            "index_product": r.by_product.to_string(),
                            "agree": r.agree(),
                        })
                    })
                    .collect();
                format!("{}\n", serde_json::Value::Array(arr))
            } else {
                let mut s = String::from("weight  lyndon  index(lattice)  index(product)  agree\n");
                for r in &rows {
                    s.push_str(&format!(
                        "{:<7} {:<7} {:<15} {:<15} {}\n",
                        r.weight,
                        r.lyndon_count,
                        r.by_lattice,
                        r.by_product,
                        if r.agree() { "ok" } else { "MISMATCH" }
                    ));
                }
                s
            };
            Outcome { stdout, code: if all_agree { 0 } else { 1 } }
        }
        Command::Verify { suite } => {
            let Some(report) = run_suite(&suite, &cfg) else {
                return usage_error(format!(
                    "unknown suite {suite:?}; expected one of: {}",
                    SUITES.join(", ")
                ));
            };
            let stdout = if json_out {
                format!("{}\n", report.to_json())
            } else {
                report.render_text()
            };
            Outcome { stdout, code: if report.passed() { 0 } else { 1 } }
        }
    }
}

/// Parses and runs; convenient for tests.
pub fn run_from<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            // clap's rendered help/version go to stdout with code 0; real
            // usage errors exit 2.
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { stdout: e.render().to_string(), code }
        }
    }
}
