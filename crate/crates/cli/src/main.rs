use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use kneadlab_core::address::{internal_address, upper_lower};
use kneadlab_core::angle::{angle_to_kneading, doubling_period};
use kneadlab_core::bifurcation::{enumerate_star_periodic, is_primitive};
use kneadlab_core::branch::{branch, BranchKind};
use kneadlab_core::charpoint::{chain_in, evil_points, find_dynamical_parent, Chain, CharPoint};
use kneadlab_core::export::{to_dot, to_json};
use kneadlab_core::order::{compare, find_subwake, leq, OrderRelation};
use kneadlab_core::tree::{build_tree, verify_axioms};
use kneadlab_core::{Error, Seq};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNDETERMINED: u8 = 3;
const EXIT_AXIOM: u8 = 4;

/// Census runs refuse periods above this unless KNEADLAB_MAX_PERIOD says otherwise.
const DEFAULT_PERIOD_CAP: usize = 12;

#[derive(Parser, Debug)]
#[command(name = "kneadlab", version, about = "Kneading sequences, Hubbard trees and the parameter tree")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Period bound for chains, truncations and branch searches.
    #[arg(long, global = true, default_value_t = 16)]
    bound: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Address, completions, admissibility, characteristic chain and parent.
    Analyze { seq: String },
    /// Build the Hubbard tree, check the axioms and export it.
    Tree {
        seq: String,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Compare two sequences in the parameter tree.
    Compare { a: String, b: String },
    /// Where the arcs from *̄ to the two sequences part.
    Branch { a: String, b: String },
    /// Analyze every *-periodic sequence up to a period.
    Census {
        #[arg(long)]
        max_period: usize,
        /// JSON-lines output; records go to stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Compare admissible sequences with those generated by angles.
        #[arg(long)]
        angle_check: bool,
        #[arg(long, env = "KNEADLAB_MAX_PERIOD", default_value_t = DEFAULT_PERIOD_CAP)]
        period_cap: usize,
    },
    /// Which wake or subwake of MU contains NU.
    Wake { mu: String, nu: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Syntax(_) | Error::LeadingZero(_) | Error::MultipleStars(_) => EXIT_PARSE,
            Error::Undetermined(_) => EXIT_UNDETERMINED,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        let code = if e.kind() == io::ErrorKind::BrokenPipe { 0 } else { EXIT_USAGE };
        Failure::new(code, e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn parse(text: &str) -> Result<Seq, Failure> {
    Seq::parse(text).map_err(|e| Failure::new(EXIT_PARSE, format!("cannot parse {text:?}: {e}")))
}

/// `println!` that reports a closed stdout instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(io::stdout(), $($arg)*)?
    };
}

fn print_json<T: Serialize>(value: &T) -> io::Result<()> {
    writeln!(io::stdout(), "{}", serde_json::to_string_pretty(value).expect("serializable"))
}

#[derive(Serialize)]
struct ChainEntry {
    itinerary: String,
    #[serde(rename = "type")]
    point_type: &'static str,
    period: usize,
    q: usize,
    #[serde(rename = "Q")]
    big_q: usize,
}

fn chain_entries(chain: &Chain) -> Vec<ChainEntry> {
    chain.points.iter().map(chain_entry).collect()
}

fn chain_entry(p: &CharPoint) -> ChainEntry {
    ChainEntry {
        itinerary: p.itinerary.to_string(),
        point_type: p.point_type.as_str(),
        period: p.period,
        q: p.q,
        big_q: p.arm_period,
    }
}

fn analyze(text: &str, bound: usize, as_json: bool) -> CliResult {
    let nu = parse(text)?;
    if !nu.in_parameter_tree() {
        return Err(Error::NotInParameterTree(nu.to_string()).into());
    }
    let address = internal_address(&nu, bound);
    let tree = build_tree(&nu)?;
    let axioms = verify_axioms(&tree);
    let evil = evil_points(&tree)?;
    let admissible = evil.is_empty();
    let completions = if nu.is_star_periodic() && !nu.is_star_bar() { Some(upper_lower(&nu)?) } else { None };
    let primitive = if nu.is_star_periodic() { Some(is_primitive(&nu)?) } else { None };
    let (chain, parent) = if nu.is_star_bar() {
        (None, None)
    } else {
        let parent = if nu.is_star_periodic() { Some(find_dynamical_parent(&nu)?) } else { None };
        (Some(chain_in(&tree, bound)?), parent)
    };
    let root = match evil.first() {
        Some(_) => Some(kneadlab_core::nonadmissible_root(&nu)?),
        None => None,
    };

    if as_json {
        print_json(&json!({
            "nu": nu,
            "kind": nu.kind(),
            "period": nu.period(),
            "preperiod": nu.preperiod(),
            "internal_address": address.entries,
            "address_truncated": address.truncated,
            "upper": completions.as_ref().map(|c| c.0.to_string()),
            "lower": completions.as_ref().map(|c| c.1.to_string()),
            "primitive": primitive,
            "admissible": admissible,
            "evil_points": evil.iter().map(chain_entry).collect::<Vec<_>>(),
            "root": root.as_ref().map(|(mu, q, _)| json!({"mu": mu, "q": q})),
            "tree": {"vertices": tree.len(), "edges": tree.edges().len(), "axioms_pass": axioms.passed()},
            "chain": chain.as_ref().map(chain_entries),
            "chain_reaches_critical_value": chain.as_ref().map(|c| c.reaches_critical_value),
            "parent": parent.as_ref().map(chain_entry),
        }))?;
        return Ok(());
    }

    out!("sequence:          {nu} ({:?})", nu.kind());
    out!("internal address:  {address}");
    if let Some((a, a_bar)) = &completions {
        out!("upper / lower:     {a} / {a_bar}");
    }
    if let Some(p) = primitive {
        out!("primitive:         {p}");
    }
    out!(
        "tree:              {} vertices, {} edges, axioms {}",
        tree.len(),
        tree.edges().len(),
        if axioms.passed() { "pass" } else { "FAIL" }
    );
    if tree.len() == 1 {
        out!("                   (the tree is a single point)");
    }
    out!("admissible:        {admissible}");
    for p in &evil {
        out!("evil branch point: {} period {} q={} Q={}", p.itinerary, p.period, p.q, p.arm_period);
    }
    if let Some((mu, q, _)) = &root {
        out!("root:              ({mu}, q={q})");
    }
    if let Some(chain) = &chain {
        let parts: Vec<String> = chain
            .points
            .iter()
            .map(|p| format!("{} [{} q={} Q={}]", p.itinerary, p.point_type.as_str(), p.q, p.arm_period))
            .collect();
        let tail = if chain.reaches_critical_value { " -> c1" } else { " -> ..." };
        out!("chain:             {}{tail}", parts.join(" -> "));
    }
    if let Some(p) = &parent {
        out!("parent:            {} [{}]", p.itinerary, p.point_type.as_str());
    }
    Ok(())
}

fn tree_cmd(text: &str, format: Format, bound: usize) -> CliResult {
    let nu = parse(text)?;
    let tree = build_tree(&nu)?;
    let report = verify_axioms(&tree);
    match format {
        Format::Dot => write!(io::stdout(), "{}", to_dot(&tree))?,
        Format::Json => {
            let chain = if nu.is_star_bar() { None } else { Some(chain_in(&tree, bound)?) };
            out!("{}", to_json(&tree, chain.as_ref()));
        }
    }
    if !report.passed() {
        let names: Vec<String> =
            report.failures().iter().map(|c| format!("{}: {}", c.name, c.detail.clone().unwrap_or_default())).collect();
        return Err(Failure::new(EXIT_AXIOM, format!("axiom check failed: {}", names.join("; "))));
    }
    Ok(())
}

fn compare_cmd(a: &str, b: &str, bound: usize, as_json: bool) -> CliResult {
    let (x, y) = (parse(a)?, parse(b)?);
    let rel = compare(&x, &y, bound)?;
    if as_json {
        print_json(&json!({"a": x, "b": y, "relation": rel.as_str(), "bound": bound}))?;
    } else {
        out!("{}", rel.as_str());
    }
    if matches!(rel, OrderRelation::Undetermined { .. }) {
        return Err(Failure::new(EXIT_UNDETERMINED, format!("undetermined within bound {bound}")));
    }
    Ok(())
}

fn branch_cmd(a: &str, b: &str, bound: usize, as_json: bool) -> CliResult {
    let (x, y) = (parse(a)?, parse(b)?);
    let r = branch(&x, &y, bound)?;
    if as_json {
        print_json(&r)?;
    } else {
        match r.kind {
            BranchKind::Comparable => out!("COMPARABLE {}", r.relation.map_or("", |rel| rel.as_str())),
            BranchKind::BranchAt => {
                out!("BRANCH_AT {} {}", r.mu.as_ref().unwrap(), r.case.unwrap().as_str());
                if let Some(w) = r.witness {
                    for (side, d) in [("left", w.left), ("right", w.right)] {
                        if let Some(d) = d {
                            out!("  {side}: q={} Q={} {}", d.q, d.arm_period, d.point_type.as_str());
                        }
                    }
                }
            }
            BranchKind::Undetermined => out!("UNDETERMINED (bound {bound})"),
        }
    }
    if r.kind == BranchKind::Undetermined {
        return Err(Failure::new(EXIT_UNDETERMINED, format!("undetermined within bound {bound}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct CensusRecord {
    nu: String,
    period: usize,
    internal_address: Vec<usize>,
    admissible: bool,
    chain: Vec<ChainEntry>,
    parent: Option<String>,
}

fn census_record(nu: &Seq, bound: usize) -> Result<CensusRecord, Error> {
    let tree = build_tree(nu)?;
    let admissible = evil_points(&tree)?.is_empty();
    let (chain, parent) = if nu.is_star_bar() {
        (Vec::new(), None)
    } else {
        (chain_entries(&chain_in(&tree, bound)?), Some(find_dynamical_parent(nu)?.itinerary.to_string()))
    };
    Ok(CensusRecord {
        nu: nu.to_string(),
        period: nu.period(),
        internal_address: internal_address(nu, nu.period()).entries,
        admissible,
        chain,
        parent,
    })
}

/// Distinct kneading sequences of the angles `p / (2ⁿ - 1)` of exact period n.
fn angle_sequences(n: usize) -> Result<BTreeSet<String>, Error> {
    let den = (1u64 << n) - 1;
    let mut out = BTreeSet::new();
    for p in 0..den.max(1) {
        if n == 1 || doubling_period(p, n as u32) == n as u32 {
            out.insert(angle_to_kneading(p, den.max(1))?.to_string());
        }
    }
    Ok(out)
}

fn census(
    max_period: usize,
    out: Option<&PathBuf>,
    angle_check: bool,
    cap: usize,
    bound: usize,
    as_json: bool,
) -> CliResult {
    if max_period > cap {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("--max-period {max_period} exceeds the cap {cap} (set KNEADLAB_MAX_PERIOD to raise it)"),
        ));
    }
    if max_period == 0 || max_period > 62 {
        return Err(Failure::new(EXIT_USAGE, "--max-period must be between 1 and 62"));
    }
    let seqs: Vec<Seq> = (1..=max_period).flat_map(enumerate_star_periodic).collect();
    let records: Vec<CensusRecord> = seqs.par_iter().map(|nu| census_record(nu, bound)).collect::<Result<_, _>>()?;

    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout()),
    };
    let mut w = BufWriter::new(sink);
    for r in &records {
        serde_json::to_writer(&mut w, r).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
        writeln!(w)?;
    }
    w.flush()?;
    drop(w);

    let mut per_period = Vec::new();
    let mut angle_ok = true;
    for n in 1..=max_period {
        let of_n: Vec<&CensusRecord> = records.iter().filter(|r| r.period == n).collect();
        let admissible: BTreeSet<String> = of_n.iter().filter(|r| r.admissible).map(|r| r.nu.clone()).collect();
        let non_admissible: Vec<String> = of_n.iter().filter(|r| !r.admissible).map(|r| r.nu.clone()).collect();
        let mut entry = json!({
            "period": n,
            "total": of_n.len(),
            "admissible": admissible.len(),
            "non_admissible": non_admissible,
        });
        if angle_check {
            let from_angles = angle_sequences(n)?;
            let missing: Vec<&String> = admissible.difference(&from_angles).collect();
            let extra: Vec<&String> = from_angles.difference(&admissible).collect();
            angle_ok &= missing.is_empty() && extra.is_empty();
            entry["angle_missing"] = json!(missing);
            entry["angle_extra"] = json!(extra);
        }
        per_period.push(entry);
    }
    let summary = json!({
        "records": records.len(),
        "admissible": records.iter().filter(|r| r.admissible).count(),
        "per_period": per_period,
        "angle_check": angle_check.then_some(angle_ok),
    });
    // With records on stdout the summary goes to stderr to keep the stream clean.
    let text = if as_json { serde_json::to_string_pretty(&summary).unwrap() } else { human_summary(&summary) };
    if out.is_some() {
        out!("{text}");
    } else {
        eprintln!("{text}");
    }
    Ok(())
}

fn human_summary(summary: &serde_json::Value) -> String {
    let mut lines = vec![format!("{} sequences, {} admissible", summary["records"], summary["admissible"])];
    for p in summary["per_period"].as_array().unwrap() {
        let mut line = format!("period {:>2}: {:>4} total, {:>4} admissible", p["period"], p["total"], p["admissible"]);
        let non: Vec<&str> = p["non_admissible"].as_array().unwrap().iter().filter_map(|v| v.as_str()).collect();
        if !non.is_empty() {
            line.push_str(&format!(", non-admissible: {}", non.join(" ")));
        }
        if let Some(m) = p.get("angle_missing") {
            let empty = m.as_array().unwrap().is_empty() && p["angle_extra"].as_array().unwrap().is_empty();
            line.push_str(if empty { ", angles agree" } else { ", ANGLES DISAGREE" });
        }
        lines.push(line);
    }
    lines.join("\n")
}

fn wake_cmd(mu_text: &str, nu_text: &str, bound: usize, as_json: bool) -> CliResult {
    let (mu, nu) = (parse(mu_text)?, parse(nu_text)?);
    if !mu.is_star_periodic() {
        return Err(Failure::new(EXIT_USAGE, format!("{mu} is not *-periodic")));
    }
    let in_wake = leq(&mu, &nu, bound)?.decided(bound)?;
    let sub = if mu == nu { None } else { find_subwake(&mu, &nu, bound).ok() };
    if as_json {
        print_json(&json!({
            "mu": mu,
            "nu": nu,
            "in_wake": in_wake,
            "subwake": sub.map(|(d, q)| json!({"direction": d, "q": q})),
        }))?;
    } else {
        out!("in wake of {mu}: {in_wake}");
        match sub {
            Some((d, q)) => out!("subwake: {d:?} q={q}"),
            None => out!("subwake: none"),
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Analyze { seq } => analyze(seq, cli.bound, cli.json),
        Command::Tree { seq, format } => tree_cmd(seq, *format, cli.bound),
        Command::Compare { a, b } => compare_cmd(a, b, cli.bound, cli.json),
        Command::Branch { a, b } => branch_cmd(a, b, cli.bound, cli.json),
        Command::Census { max_period, out, angle_check, period_cap } => {
            census(*max_period, out.as_ref(), *angle_check, *period_cap, cli.bound, cli.json)
        }
        Command::Wake { mu, nu } => wake_cmd(mu, nu, cli.bound, cli.json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
