//! The `twistprover` command line.
//!
//! Exit codes: 0 success (proved, valid proof, countermodel found), 1 a
//! negative answer, 2 unknown, 64 usage or input errors, 74 I/O errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::calculi::CalculusId;
use crate::corpus::{curated, generate, run_benchmark, CorpusSpec, CuratedSet};
use crate::proof::{parse_json, render, to_json, ProofFormat};
use crate::search::{not_provable_certificate, prove, Certificate, Decision, SearchConfig};
use crate::semantics::{classical_countermodel, find_countermodel, FrameClass, MAX_WORLDS};
use crate::sequent::{Judgment, Sequent};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(name = "twistprover", version, about = "Proof search and checking for twist sequent calculi of modal logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a cut-free proof of a sequent.
    Prove(ProveArgs),
    /// Check a proof stored as JSON.
    Check(CheckArgs),
    /// Prove one sequent in several calculi and compare proof sizes.
    Compare(CompareArgs),
    /// Look for a Kripke countermodel or a falsifying valuation.
    Oracle(OracleArgs),
    /// Benchmark proof sizes over a seeded corpus.
    Bench(BenchArgs),
    /// Re-render a JSON proof as text, JSON or LaTeX.
    Render(RenderArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    fn proof_format(self) -> ProofFormat {
        match self {
            Format::Text => ProofFormat::Text,
            Format::Json => ProofFormat::Json,
            Format::Latex => ProofFormat::Latex,
        }
    }
}

fn parse_calculus(s: &str) -> Result<CalculusId, String> {
    CalculusId::from_key(s).ok_or_else(|| {
        let known: Vec<&str> = CalculusId::ALL.iter().map(|c| c.key()).collect();
        format!("unknown calculus `{s}` (expected one of {})", known.join(", "))
    })
}

fn parse_fraction(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&x) {
        Ok(x)
    } else {
        Err(format!("{x} is outside [0, 1]"))
    }
}

#[derive(Args, Debug)]
struct ProveArgs {
    /// Sequent such as `[]p => p`; HTS5 goals may list components with `;`.
    sequent: String,
    #[arg(short, long, default_value = "lts4", value_parser = parse_calculus)]
    calculus: CalculusId,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also print proof metrics and search statistics.
    #[arg(long)]
    stats: bool,
}

#[derive(Args, Debug)]
struct CheckArgs {
    file: PathBuf,
    /// Check under this calculus instead of the one the file names.
    #[arg(short, long, value_parser = parse_calculus)]
    calculus: Option<CalculusId>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CompareArgs {
    sequent: String,
    #[arg(long, value_delimiter = ',', default_value = "lts4,gts4,gs4", value_parser = parse_calculus)]
    calculi: Vec<CalculusId>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Frame {
    K,
    Kt,
    S4,
    S5,
    Classical,
}

#[derive(Args, Debug)]
struct OracleArgs {
    sequent: String,
    #[arg(long, value_enum, default_value_t = Frame::S4)]
    frame: Frame,
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=MAX_WORLDS as i64))]
    max_worlds: u8,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 4)]
    depth: usize,
    #[arg(long, default_value_t = 3)]
    vars: usize,
    #[arg(long, default_value_t = 0.5, value_parser = parse_fraction)]
    neg_bias: f64,
    #[arg(long, default_value_t = 0.3, value_parser = parse_fraction)]
    modal_bias: f64,
    /// Benchmark a curated list instead of a random corpus.
    #[arg(long)]
    curated: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "lts4,gts4,gs4", value_parser = parse_calculus)]
    calculi: Vec<CalculusId>,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// CSV report path; a JSON mirror is written next to it.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct RenderArgs {
    file: PathBuf,
    #[arg(short, long, value_parser = parse_calculus)]
    calculus: Option<CalculusId>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// An error message with its exit code.
struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

fn io(e: std::io::Error) -> Failure {
    Failure(EXIT_IO, e.to_string())
}

type Outcome = Result<i32, Failure>;

fn print_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json")).map_err(io)
}

fn decision_code(d: Decision) -> i32 {
    match d {
        Decision::Provable => EXIT_OK,
        Decision::NotProvable => EXIT_NEGATIVE,
        Decision::Unknown => EXIT_UNKNOWN,
    }
}

fn parse_goal(src: &str, c: CalculusId) -> Result<Judgment, Failure> {
    Judgment::parse(src, c).map_err(|e| usage(format!("cannot read `{src}`: {e}")))
}

fn certificate_lines(cert: &Certificate) -> Vec<String> {
    let mut lines = vec![format!("stuck: {}", cert.stuck)];
    if let Some(v) = &cert.valuation {
        let row: Vec<String> = v.iter().map(|(p, b)| format!("{p}={b}")).collect();
        lines.push(format!("valuation: {}", row.join(", ")));
    }
    if let Some(worlds) = &cert.worlds {
        lines.push(format!("countermodel: {} worlds, each seeing every world", worlds.len()));
        for (i, atoms) in worlds.iter().enumerate() {
            let atoms = if atoms.is_empty() { "-".to_string() } else { atoms.join(", ") };
            lines.push(format!("  world {i}: {atoms}"));
        }
    }
    lines
}

fn cmd_prove(a: ProveArgs, out: &mut dyn Write) -> Outcome {
    let c = a.calculus;
    let goal = parse_goal(&a.sequent, c)?;
    let r = prove(&goal, c, &SearchConfig::default());
    let cert = not_provable_certificate(&r, c);
    let metrics = r.proof.as_ref().map(|p| p.metrics());
    if a.format == Format::Json {
        let mut v = match &r.proof {
            Some(p) => to_json(p, c),
            None => json!({ "version": 1, "calculus": c.key(), "conclusion": goal.to_string() }),
        };
        v["decision"] = json!(r.decision);
        if let Some(cert) = &cert {
            v["certificate"] = json!(cert);
        }
        if a.stats {
            v["stats"] = json!(r.stats);
            if let Some(m) = metrics {
                v["metrics"] = json!(m);
            }
        }
        print_json(out, &v)?;
        return Ok(decision_code(r.decision));
    }
    let comment = if a.format == Format::Latex { "% " } else { "" };
    match (&r.proof, &cert) {
        (Some(p), _) => write!(out, "{}", render(p, c, a.format.proof_format())).map_err(io)?,
        (None, Some(cert)) => {
            writeln!(out, "{comment}not provable in {c}").map_err(io)?;
            for line in certificate_lines(cert) {
                writeln!(out, "{comment}{line}").map_err(io)?;
            }
        }
        (None, None) => writeln!(out, "{comment}unknown: search bound reached").map_err(io)?,
    }
    if a.stats {
        if let Some(m) = metrics {
            writeln!(
                out,
                "{comment}rules: {} (logical {}), height: {}, distinct sequents: {}",
                m.rule_applications, m.logical_rule_applications, m.height, m.distinct_sequents
            )
            .map_err(io)?;
        }
        let s = r.stats;
        writeln!(out, "{comment}visited: {}, branches: {}, max depth: {}", s.visited, s.branches, s.max_depth_reached)
            .map_err(io)?;
    }
    Ok(decision_code(r.decision))
}

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(EXIT_IO, format!("cannot read {}: {e}", path.display())))
}

fn cmd_check(a: CheckArgs, out: &mut dyn Write) -> Outcome {
    let src = read_file(&a.file)?;
    let (c, p) = parse_json(&src, a.calculus).map_err(|e| usage(format!("{}: {e}", a.file.display())))?;
    let result = p.check(c);
    if a.format == Format::Json {
        let v = match &result {
            Ok(()) => json!({ "ok": true, "calculus": c.key(), "metrics": p.metrics() }),
            Err(e) => json!({ "ok": false, "calculus": c.key(), "path": e.path, "violation": e.violation.to_string() }),
        };
        print_json(out, &v)?;
    } else {
        match &result {
            Ok(()) => {
                let m = p.metrics();
                writeln!(
                    out,
                    "ok: valid {c} proof of {} ({} rule applications, {} logical)",
                    p.conclusion, m.rule_applications, m.logical_rule_applications
                )
                .map_err(io)?;
            }
            Err(e) => writeln!(out, "invalid {c} proof: {e}").map_err(io)?,
        }
    }
    Ok(if result.is_ok() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_compare(a: CompareArgs, out: &mut dyn Write) -> Outcome {
    let mut rows = Vec::new();
    for &c in &a.calculi {
        let goal = parse_goal(&a.sequent, c)?;
        let r = prove(&goal, c, &SearchConfig::default());
        let m = r.proof.as_ref().map(|p| p.metrics());
        rows.push((c, r.decision, m, r.stats.visited));
    }
    if a.format == Format::Json {
        let v: Vec<Value> = rows
            .iter()
            .map(|(c, d, m, visited)| {
                json!({
                    "calculus": c.key(),
                    "decision": d,
                    "rulesTotal": m.map(|m| m.rule_applications),
                    "rulesLogical": m.map(|m| m.logical_rule_applications),
                    "visited": visited,
                })
            })
            .collect();
        print_json(out, &Value::Array(v))?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "{:<8} {:<13} {:>6} {:>8} {:>8}", "calculus", "decision", "rules", "logical", "visited").map_err(io)?;
    for (c, d, m, visited) in rows {
        let (t, l) = m.map_or(("-".into(), "-".into()), |m| {
            (m.rule_applications.to_string(), m.logical_rule_applications.to_string())
        });
        writeln!(out, "{:<8} {:<13} {t:>6} {l:>8} {visited:>8}", c.display_name(), d.to_string()).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_oracle(a: OracleArgs, out: &mut dyn Write) -> Outcome {
    let s = Sequent::parse(&a.sequent).map_err(|e| usage(format!("cannot read `{}`: {e}", a.sequent)))?;
    let json_out = a.format == Format::Json;
    if a.frame == Frame::Classical {
        let row = classical_countermodel(&s).map_err(|e| usage(e.to_string()))?;
        if json_out {
            print_json(out, &json!({ "found": row.is_some(), "valuation": row }))?;
        } else if let Some(v) = &row {
            let cells: Vec<String> = v.iter().map(|(p, b)| format!("{p}={b}")).collect();
            writeln!(out, "falsifying valuation: {}", cells.join(", ")).map_err(io)?;
        } else {
            writeln!(out, "classically valid").map_err(io)?;
        }
        return Ok(if row.is_some() { EXIT_OK } else { EXIT_NEGATIVE });
    }
    let fc = match a.frame {
        Frame::K => FrameClass::All,
        Frame::Kt => FrameClass::Reflexive,
        Frame::S4 => FrameClass::Preorder,
        _ => FrameClass::Equivalence,
    };
    let found = find_countermodel(&s, fc, a.max_worlds as usize);
    if json_out {
        let v = match &found {
            Some((m, w)) => json!({ "found": true, "frame": fc, "world": w, "model": m }),
            None => json!({ "found": false, "frame": fc, "maxWorlds": a.max_worlds }),
        };
        print_json(out, &v)?;
    } else {
        match &found {
            Some((m, w)) => {
                writeln!(out, "countermodel in {fc} with {} worlds, failing at world {w}", m.worlds).map_err(io)?;
                writeln!(out, "{}", m.to_json()).map_err(io)?;
            }
            None => writeln!(out, "no {fc} countermodel with at most {} worlds", a.max_worlds).map_err(io)?,
        }
    }
    Ok(if found.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_bench(a: BenchArgs, out: &mut dyn Write) -> Outcome {
    let goals: Vec<Sequent> = match &a.curated {
        Some(key) => {
            let set = CuratedSet::from_key(key).ok_or_else(|| usage(format!("unknown curated set `{key}`")))?;
            curated(set)
        }
        None => {
            let spec = CorpusSpec {
                seed: a.seed,
                count: a.count,
                max_depth: a.depth,
                var_count: a.vars,
                neg_bias: a.neg_bias,
                modal_bias: a.modal_bias,
            };
            spec.validate().map_err(usage)?;
            generate(&spec).into_iter().map(|f| Sequent::new([], [f])).collect()
        }
    };
    let report = run_benchmark(&goals, &a.calculi, &SearchConfig::default(), a.jobs).map_err(usage)?;
    report
        .write(&a.out)
        .map_err(|e| Failure(EXIT_IO, format!("cannot write {}: {e}", a.out.display())))?;
    if a.format == Format::Json {
        print_json(
            out,
            &json!({
                "out": a.out.display().to_string(),
                "rows": report.rows.len(),
                "aggregates": report.aggregates,
                "disagreements": report.disagreements,
            }),
        )?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "wrote {} rows to {}", report.rows.len(), a.out.display()).map_err(io)?;
    writeln!(
        out,
        "{:<8} {:>8} {:>12} {:>7} {:>6} {:>12} {:>14} {:>10}",
        "calculus", "provable", "not-provable", "unknown", "common", "mean-logical", "median-logical", "mean-total"
    )
    .map_err(io)?;
    for g in &report.aggregates {
        writeln!(
            out,
            "{:<8} {:>8} {:>12} {:>7} {:>6} {:>12.2} {:>14.1} {:>10.2}",
            g.calculus, g.provable, g.not_provable, g.unknown, g.common, g.mean_logical, g.median_logical, g.mean_total
        )
        .map_err(io)?;
    }
    if report.disagreements.is_empty() {
        writeln!(out, "decisions agree on every goal").map_err(io)?;
    } else {
        writeln!(out, "decisions disagree on goals {:?}", report.disagreements).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn cmd_render(a: RenderArgs, out: &mut dyn Write) -> Outcome {
    let src = read_file(&a.file)?;
    let (c, p) = parse_json(&src, a.calculus).map_err(|e| usage(format!("{}: {e}", a.file.display())))?;
    write!(out, "{}", render(&p, c, a.format.proof_format())).map_err(io)?;
    Ok(EXIT_OK)
}

/// Run the command line on `args` (program name first) and return the
/// exit code. Data goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Prove(a) => cmd_prove(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Compare(a) => cmd_compare(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Bench(a) => cmd_bench(a, out),
        Command::Render(a) => cmd_render(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "twistprover: {msg}");
            code
        }
    }
}
