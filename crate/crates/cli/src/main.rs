use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mzlab_cli::request::ProbePayload;
use mzlab_cli::{
    execute, format_json, format_text, parse_document, report_value, run_selftest, Command,
    Document, Outcome, ParseError, Request, Status,
};
use mzlab_core::Limits;
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "mzlab", version, about = "Mathieu-Zhao classification of derivation images over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Classify the image of a map, optionally restricted to an ideal.
    Classify(Common),
    /// Decide membership of `target` in the image.
    Member(Common),
    /// Row-reduced basis of the truncated image.
    Basis(Common),
    /// Local nilpotency.
    Ln(Common),
    /// Local finiteness.
    Lf(Common),
    /// Monomial membership table for I - phi, phi = x + c.
    #[command(name = "table-thm25")]
    TableThm25(Common),
    /// Two-slot coefficient table.
    #[command(name = "table-lemma37")]
    TableLemma37(Common),
    /// Brute-force radical candidates in the truncated image.
    #[command(name = "oracle-radical")]
    OracleRadical(Common),
    /// Replay a witness, or the classifier's own witness if none is given.
    #[command(name = "oracle-witness")]
    OracleWitness(Common),
    /// Run the acceptance sweep.
    Selftest(Common),
    /// Run requests of any command, as named in each request.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// Request file (a request or an array of requests); stdin if absent.
    #[arg(long, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Emit canonical JSON instead of tables.
    #[arg(long)]
    json: bool,
    /// Override caps.degree_cap.
    #[arg(long, value_name = "N")]
    max_degree: Option<usize>,
    /// Override caps.iteration_cap.
    #[arg(long, value_name = "N")]
    iteration_cap: Option<usize>,
    /// Override caps.probe.max_candidate_degree.
    #[arg(long, value_name = "D")]
    probe_degree: Option<usize>,
    /// Override caps.probe.power_floor.
    #[arg(long, value_name = "M")]
    probe_power_floor: Option<u32>,
}

impl Verb {
    fn split(&self) -> (Option<Command>, &Common) {
        match self {
            Verb::Classify(c) => (Some(Command::Classify), c),
            Verb::Member(c) => (Some(Command::Member), c),
            Verb::Basis(c) => (Some(Command::Basis), c),
            Verb::Ln(c) => (Some(Command::Ln), c),
            Verb::Lf(c) => (Some(Command::Lf), c),
            Verb::TableThm25(c) => (Some(Command::TableThm25), c),
            Verb::TableLemma37(c) => (Some(Command::TableLemma37), c),
            Verb::OracleRadical(c) => (Some(Command::OracleRadical), c),
            Verb::OracleWitness(c) => (Some(Command::OracleWitness), c),
            Verb::Selftest(c) => (Some(Command::Selftest), c),
            Verb::Run(c) => (None, c),
        }
    }
}

impl Common {
    fn apply(&self, req: &mut Request) {
        let caps = &mut req.caps;
        if let Some(n) = self.max_degree {
            caps.degree_cap = Some(n);
        }
        if let Some(n) = self.iteration_cap {
            caps.iteration_cap = Some(n);
        }
        if self.probe_degree.is_some() || self.probe_power_floor.is_some() {
            let probe = caps.probe.get_or_insert_with(ProbePayload::default);
            if let Some(d) = self.probe_degree {
                probe.max_candidate_degree = Some(d);
            }
            if let Some(m) = self.probe_power_floor {
                probe.power_floor = Some(m);
            }
        }
    }
}

fn limits() -> Result<Limits, ParseError> {
    let mut limits = Limits::default();
    if let Ok(raw) = std::env::var("MZLAB_BUDGET") {
        limits.enumeration_budget = raw
            .trim()
            .parse()
            .map_err(|_| ParseError::new("MZLAB_BUDGET", format!("not a budget: {raw:?}")))?;
    }
    Ok(limits)
}

fn read_input(path: &Option<PathBuf>) -> Result<Vec<u8>, ParseError> {
    match path {
        Some(p) => std::fs::read(p)
            .map_err(|e| ParseError::new("--input", format!("{}: {e}", p.display()))),
        None => {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| ParseError::new("stdin", e.to_string()))?;
            Ok(buf)
        }
    }
}

fn fail(err: ParseError, json_out: bool) -> ExitCode {
    if json_out {
        let v = json!({
            "status": "invalid_input",
            "result": { "error": err.message, "path": err.path },
        });
        print!("{}", format_json(&v));
    } else {
        eprintln!("error at {}: {}", err.path, err.message);
    }
    ExitCode::from(Status::InvalidInput.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (wanted, opts) = cli.command.split();
    let limits = match limits() {
        Ok(l) => l,
        Err(e) => return fail(e, opts.json),
    };

    if wanted == Some(Command::Selftest) && opts.input.is_none() {
        let out = run_selftest(&limits);
        let code = out.status.exit_code();
        emit(&[(None, out)], false, opts.json);
        return ExitCode::from(code);
    }

    let text = match read_input(&opts.input) {
        Ok(t) => t,
        Err(e) => return fail(e, opts.json),
    };
    let (mut requests, batch) = match parse_document(&text) {
        Ok(Document::Single(r)) => (vec![*r], false),
        Ok(Document::Batch(rs)) => (rs, true),
        Err(e) => return fail(e, opts.json),
    };
    if let Some(cmd) = wanted {
        if let Some((i, r)) = requests.iter().enumerate().find(|(_, r)| r.command != cmd) {
            let path = if batch { format!("[{i}].command") } else { "command".into() };
            let msg = format!(
                "request command {} does not match subcommand {}",
                r.command.as_str(),
                cmd.as_str()
            );
            return fail(ParseError::new(path, msg), opts.json);
        }
    }
    for r in &mut requests {
        opts.apply(r);
    }

    let outcomes: Vec<Outcome> = requests.par_iter().map(|r| execute(r, &limits)).collect();
    let statuses: Vec<Status> = outcomes.iter().map(|o| o.status).collect();
    let pairs: Vec<(Option<&Request>, Outcome)> =
        requests.iter().map(Some).zip(outcomes).collect();
    emit(&pairs, batch, opts.json);
    ExitCode::from(exit_status(&statuses))
}

fn exit_status(statuses: &[Status]) -> u8 {
    statuses.iter().map(|s| s.exit_code()).max().unwrap_or(0)
}

fn emit(items: &[(Option<&Request>, Outcome)], batch: bool, json_out: bool) {
    if json_out {
        let values: Vec<_> = items.iter().map(|(r, o)| report_value(*r, o)).collect();
        let v = if batch {
            serde_json::Value::Array(values)
        } else {
            values.into_iter().next().expect("one report")
        };
        print!("{}", format_json(&v));
    } else {
        for (i, (_, o)) in items.iter().enumerate() {
            if batch {
                println!("[{i}] {}", o.command.as_str());
            }
            print!("{}", format_text(o));
        }
    }
}
