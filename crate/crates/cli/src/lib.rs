//! Batch front end. Every command prints one key-sorted JSON report on
//! stdout; progress and errors go to stderr.
//!
//! Exit codes: 0 when every check passes, 1 when a finding was recorded,
//! 2 on usage or input errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use hallrad::catalog::{guralnick_cases, suite, verify_case, CaseReport, DEFAULT_Q_CAP};
use hallrad::constructions::{direct_product_with, generated_fixtures, wreath_base, wreath_top};
use hallrad::grpfile;
use hallrad::numtheory::{classify_consecutive, in_pi0};
use hallrad::theorems::{analyze_pair, AnalysisReport};
use hallrad::{Limits, PermGroup};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FINDING: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: hallrad::Error,
    },
    #[error(transparent)]
    Group(#[from] hallrad::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "hallrad", version, about = "Radical series and composition-factor checks for pairs (G, H) with |G:H| a prime power")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The simple groups with a solvable subgroup of prime-power index.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    #[command(subcommand)]
    Numtheory(NumtheoryCommand),
    /// Analyze a pair (G, H) given as group files.
    Analyze {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        /// Also write the report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Directory of `<name>.g.grp` / `<name>.h.grp` pairs for the corpus suite.
        dir: Option<PathBuf>,
    },
    #[command(subcommand)]
    Construct(ConstructCommand),
}

#[derive(Args, Debug, Clone)]
struct CatalogArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_Q_CAP)]
    qcap: u64,
    /// Include PSL(2, 2^(2^m)) for m >= 3.
    #[arg(long)]
    large_fermat: bool,
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List {
        #[command(flatten)]
        args: CatalogArgs,
    },
    Verify {
        #[command(flatten)]
        args: CatalogArgs,
        #[arg(long)]
        case: Option<u8>,
    },
}

#[derive(Subcommand, Debug)]
enum NumtheoryCommand {
    /// Classify the consecutive pair (q, q+1).
    Classify {
        #[arg(required = true)]
        q: Vec<u64>,
    },
    /// Membership of primes in pi0.
    Pi0 {
        #[arg(required = true)]
        p: Vec<u64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Catalog,
    Wreath,
    Corpus,
}

#[derive(Args, Debug)]
struct Outputs {
    /// Write W here as a group file.
    #[arg(long)]
    out_group: Option<PathBuf>,
    /// Write S here as a group file.
    #[arg(long)]
    out_subgroup: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    WreathTop {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[arg(long)]
        top: PathBuf,
        #[command(flatten)]
        out: Outputs,
    },
    WreathBase {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        base_subgroup: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        subgroup: PathBuf,
        #[command(flatten)]
        out: Outputs,
    },
    Product {
        /// `G.grp:H.grp`, repeated once per factor.
        #[arg(long = "pair", required = true)]
        pairs: Vec<String>,
        #[command(flatten)]
        out: Outputs,
    },
}

#[derive(Serialize)]
struct Report {
    tool_version: &'static str,
    command: String,
    inputs: BTreeMap<String, String>,
    results: Value,
    findings: Vec<Value>,
}

impl Report {
    fn exit_code(&self) -> i32 {
        if self.findings.is_empty() {
            EXIT_PASS
        } else {
            EXIT_FINDING
        }
    }
}

struct Session {
    limits: Limits,
    inputs: BTreeMap<String, String>,
    findings: Vec<Value>,
}

impl Session {
    fn read_group(&mut self, path: &Path) -> Result<PermGroup, CliError> {
        let bytes = fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        self.inputs
            .insert(path.display().to_string(), hex_digest(&bytes));
        let text = String::from_utf8_lossy(&bytes);
        grpfile::parse_group(&text).map_err(|source| CliError::Parse {
            path: path.to_path_buf(),
            source,
        })
    }

    fn finding(&mut self, subject: &str, value: impl Serialize) {
        let mut v = to_value(value);
        if let Value::Object(map) = &mut v {
            map.insert("subject".into(), Value::String(subject.into()));
        }
        self.findings.push(v);
    }
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Runs the tool with `argv` (including the program name), writing the
/// report to `out` and diagnostics to `err`.
pub fn run_with<O: Write, E: Write>(argv: &[String], out: &mut O, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let mut session = Session {
        limits: Limits::from_env(),
        inputs: BTreeMap::new(),
        findings: Vec::new(),
    };
    let command = command_name(&cli.command);
    let results = match dispatch(&cli.command, &mut session, err) {
        Ok(results) => results,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let report = Report {
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        inputs: session.inputs,
        results,
        findings: session.findings,
    };
    // serde_json maps are ordered, so the value round trip sorts every key
    let text = serde_json::to_string_pretty(&to_value(&report)).expect("reports serialize");
    if let Command::Analyze { json: Some(path), .. } = &cli.command {
        if let Err(e) = fs::write(path, format!("{text}\n")) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return EXIT_INPUT;
        }
    }
    if writeln!(out, "{text}").is_err() {
        return EXIT_INPUT;
    }
    report.exit_code()
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn command_name(c: &Command) -> String {
    match c {
        Command::Catalog(CatalogCommand::List { .. }) => "catalog list",
        Command::Catalog(CatalogCommand::Verify { .. }) => "catalog verify",
        Command::Numtheory(NumtheoryCommand::Classify { .. }) => "numtheory classify",
        Command::Numtheory(NumtheoryCommand::Pi0 { .. }) => "numtheory pi0",
        Command::Analyze { .. } => "analyze",
        Command::Verify { suite: Suite::Catalog, .. } => "verify --suite catalog",
        Command::Verify { suite: Suite::Wreath, .. } => "verify --suite wreath",
        Command::Verify { suite: Suite::Corpus, .. } => "verify --suite corpus",
        Command::Construct(ConstructCommand::WreathTop { .. }) => "construct wreath-top",
        Command::Construct(ConstructCommand::WreathBase { .. }) => "construct wreath-base",
        Command::Construct(ConstructCommand::Product { .. }) => "construct product",
    }
    .to_string()
}

fn dispatch<E: Write>(c: &Command, s: &mut Session, err: &mut E) -> Result<Value, CliError> {
    match c {
        Command::Catalog(CatalogCommand::List { args }) => catalog_list(args),
        Command::Catalog(CatalogCommand::Verify { args, case }) => catalog_verify(args, *case, s, err),
        Command::Numtheory(NumtheoryCommand::Classify { q }) => {
            let rows = q
                .iter()
                .map(|&q| classify_consecutive(q).map(to_value))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Array(rows))
        }
        Command::Numtheory(NumtheoryCommand::Pi0 { p }) => {
            let rows = p
                .iter()
                .map(|&p| in_pi0(p).map(|member| json!({ "p": p, "in_pi0": member })))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Value::Array(rows))
        }
        Command::Analyze { group, subgroup, .. } => {
            let g = s.read_group(group)?;
            let h = s.read_group(subgroup)?;
            let report = analyze_pair(&g, &h, &s.limits)?;
            record_analysis(s, "analyze", &report);
            Ok(to_value(&report))
        }
        Command::Verify { suite: Suite::Catalog, .. } => {
            let args = CatalogArgs {
                p: None,
                qcap: DEFAULT_Q_CAP,
                large_fermat: false,
            };
            catalog_verify(&args, None, s, err)
        }
        Command::Verify { suite: Suite::Wreath, .. } => verify_wreath(s, err),
        Command::Verify { suite: Suite::Corpus, dir } => {
            let dir = dir
                .as_ref()
                .ok_or_else(|| CliError::Usage("verify --suite corpus needs a directory".into()))?;
            verify_corpus(dir, s, err)
        }
        Command::Construct(cmd) => construct(cmd, s),
    }
}

fn catalog_cases(args: &CatalogArgs) -> Result<Vec<hallrad::catalog::GuralnickCase>, CliError> {
    let mut cases = match args.p {
        Some(p) => guralnick_cases(p, args.qcap)?,
        None => suite(args.qcap, args.large_fermat)?,
    };
    if !args.large_fermat {
        cases.retain(|c| c.m_param.is_none_or(|m| m <= 2));
    }
    Ok(cases)
}

fn catalog_list(args: &CatalogArgs) -> Result<Value, CliError> {
    let rows: Vec<Value> = catalog_cases(args)?
        .iter()
        .map(|c| {
            json!({
                "case_id": c.case_id,
                "t_name": c.t_name,
                "q": c.q,
                "p": c.p,
                "alpha": c.alpha,
                "t_order": c.t.order(),
                "h_order": c.h.order(),
                "out_order": c.out_order,
            })
        })
        .collect();
    Ok(Value::Array(rows))
}

fn catalog_verify<E: Write>(
    args: &CatalogArgs,
    case: Option<u8>,
    s: &mut Session,
    err: &mut E,
) -> Result<Value, CliError> {
    let mut cases = catalog_cases(args)?;
    if let Some(id) = case {
        cases.retain(|c| c.case_id == id);
    }
    let limits = s.limits;
    let reports: Vec<CaseReport> = cases
        .par_iter()
        .map(|c| verify_case(c, &limits))
        .collect::<Result<_, _>>()?;
    for r in &reports {
        let _ = writeln!(err, "case {} {}: {}", r.case_id, r.t_name, pass_word(r.passed()));
        if !r.passed() {
            s.finding(&format!("case {} {}", r.case_id, r.t_name), r);
        }
    }
    Ok(to_value(&reports))
}

fn pass_word(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FINDING"
    }
}

fn record_analysis(s: &mut Session, subject: &str, report: &AnalysisReport) {
    for f in &report.findings {
        s.finding(subject, f);
    }
}

fn verify_wreath<E: Write>(s: &mut Session, err: &mut E) -> Result<Value, CliError> {
    let limits = s.limits;
    let fixtures = generated_fixtures(&limits)?;
    let analyses: Vec<AnalysisReport> = fixtures
        .par_iter()
        .map(|f| analyze_pair(&f.w, &f.s, &limits))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (f, a) in fixtures.iter().zip(&analyses) {
        let _ = writeln!(err, "{}: {}", f.name, pass_word(a.passed() && f.index_ok()));
        if !f.index_ok() {
            s.finding(
                &f.name,
                json!({ "claim": "construction index formula", "detail": format!("expected {}^{}", f.p, f.expected_index_exponent) }),
            );
        }
        record_analysis(s, &f.name, a);
        rows.push(json!({
            "name": f.name,
            "index_ok": f.index_ok(),
            "expected_index_exponent": f.expected_index_exponent,
            "analysis": a,
        }));
    }
    Ok(Value::Array(rows))
}

fn verify_corpus<E: Write>(dir: &Path, s: &mut Session, err: &mut E) -> Result<Value, CliError> {
    let entries = fs::read_dir(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut names = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let file = entry.file_name().to_string_lossy().into_owned();
        if let Some(name) = file.strip_suffix(".g.grp") {
            names.push(name.to_string());
        }
    }
    names.sort();
    let mut pairs = Vec::new();
    for name in &names {
        let g = s.read_group(&dir.join(format!("{name}.g.grp")))?;
        let h = s.read_group(&dir.join(format!("{name}.h.grp")))?;
        pairs.push((g, h));
    }
    let limits = s.limits;
    let analyses: Vec<AnalysisReport> = pairs
        .par_iter()
        .map(|(g, h)| analyze_pair(g, h, &limits))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for (name, a) in names.iter().zip(&analyses) {
        let _ = writeln!(err, "{name}: {}", pass_word(a.passed()));
        record_analysis(s, name, a);
        rows.push(json!({ "name": name, "analysis": a }));
    }
    Ok(Value::Array(rows))
}

fn write_group(path: &Option<PathBuf>, g: &PermGroup) -> Result<(), CliError> {
    if let Some(path) = path {
        fs::write(path, grpfile::emit_group(g)).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

fn construct(cmd: &ConstructCommand, s: &mut Session) -> Result<Value, CliError> {
    let (w, sub, out) = match cmd {
        ConstructCommand::WreathTop { group, subgroup, top, out } => {
            let g = s.read_group(group)?;
            let h = s.read_group(subgroup)?;
            let k = s.read_group(top)?;
            let spec = wreath_top(&g, &h, &k, &s.limits)?;
            (spec.w, spec.s, out)
        }
        ConstructCommand::WreathBase { base, base_subgroup, group, subgroup, out } => {
            let k = s.read_group(base)?;
            let l = s.read_group(base_subgroup)?;
            let g = s.read_group(group)?;
            let h = s.read_group(subgroup)?;
            let spec = wreath_base(&k, &l, &g, &h, &s.limits)?;
            (spec.w, spec.s, out)
        }
        ConstructCommand::Product { pairs, out } => {
            let mut parts = Vec::new();
            for pair in pairs {
                let (g, h) = pair
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("expected G.grp:H.grp, found {pair:?}")))?;
                parts.push((s.read_group(Path::new(g))?, s.read_group(Path::new(h))?));
            }
            let (m, k) = direct_product_with(&parts, &s.limits)?;
            (m, k, out)
        }
    };
    write_group(&out.out_group, &w)?;
    write_group(&out.out_subgroup, &sub)?;
    Ok(json!({
        "degree": w.degree(),
        "w_order": w.order(),
        "s_order": sub.order(),
        "index": w.order() / sub.order(),
        "w": grpfile::emit_group(&w),
        "s": grpfile::emit_group(&sub),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn findings_set_the_exit_code() {
        let mut session = Session {
            limits: Limits::default(),
            inputs: BTreeMap::new(),
            findings: Vec::new(),
        };
        let report = |findings: Vec<Value>| Report {
            tool_version: "0",
            command: "test".into(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            findings,
        };
        assert_eq!(report(session.findings.clone()).exit_code(), EXIT_PASS);
        session.finding("x", json!({ "claim": "c", "detail": "d" }));
        assert_eq!(session.findings[0]["subject"], "x");
        assert_eq!(report(session.findings).exit_code(), EXIT_FINDING);
    }

    #[test]
    fn digests_are_sha256() {
        assert_eq!(
            hex_digest(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
