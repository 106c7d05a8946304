//! Command-line front end. Every command produces a [`CommandReport`] that is
//! rendered either as JSON lines (one record per object, then a summary
//! record) or as a plain table with `--pretty`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use amicable::amicability::{check_3iet_preservation, AmicablePair, NotTernarization, PreservationConfig};
use amicable::matrices::{
    brute_force_pairs, classify_matrix3, conjecture_probe, count_formula_total, e_condition, pair_histogram,
};
use amicable::morphism::{enumerate_sturmian, is_standard, k_index, standard_decomposition, standard_morphism};
use amicable::verify::{self, count_rows, Suite, TotalFormula, VerifyOptions};
use amicable::{
    is_balanced, is_nondegenerate_params, is_ternarization, three_iet_code, two_iet_code, Alphabet, Error,
    IntMatrix2, IntMatrix3, Morphism, QuadNumber, Strategy, ThreeIet, TwoIet,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    PropertyFalse,
    InvalidInput,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::PropertyFalse => 1,
            Status::InvalidInput => 2,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::PropertyFalse => "property-false",
            Status::InvalidInput => "invalid-input",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub status: Status,
    pub records: Vec<Value>,
    pub summary: Map<String, Value>,
    pub message: Option<String>,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl CommandReport {
    fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            status: Status::Ok,
            records: Vec::new(),
            summary: Map::new(),
            message: None,
            warnings: Vec::new(),
        }
    }

    fn invalid(command: &str, message: impl Into<String>) -> Self {
        CommandReport {
            status: Status::InvalidInput,
            message: Some(message.into()),
            ..CommandReport::new(command)
        }
    }

    fn record(&mut self, value: impl Serialize) {
        self.records.push(to_value(value));
    }

    fn set(&mut self, key: &str, value: impl Serialize) {
        self.summary.insert(key.to_string(), to_value(value));
    }

    fn fail(&mut self, message: impl Into<String>) {
        self.status = Status::PropertyFalse;
        self.message = Some(message.into());
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// JSON lines; the last line is the summary record.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        let mut summary = self.summary.clone();
        summary.insert("record".into(), json!("summary"));
        summary.insert("command".into(), json!(self.command));
        summary.insert("status".into(), to_value(self.status));
        summary.insert("records".into(), json!(self.records.len()));
        if let Some(m) = &self.message {
            summary.insert("message".into(), json!(m));
        }
        if !self.warnings.is_empty() {
            summary.insert("warnings".into(), json!(self.warnings));
        }
        out.push_str(&Value::Object(summary).to_string());
        out.push('\n');
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if !self.records.is_empty() {
            out.push_str(&table(&self.records));
            out.push('\n');
        }
        let _ = writeln!(out, "{}: {}", self.command, self.status.label());
        if let Some(m) = &self.message {
            let _ = writeln!(out, "  {m}");
        }
        for w in &self.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
        for (k, v) in &self.summary {
            let _ = writeln!(out, "  {k}: {}", cell(v));
        }
        out
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn table(records: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for r in records {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| rows.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&columns);
    out.push('\n');
    out.push_str(&line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>()));
    for r in &rows {
        out.push('\n');
        out.push_str(&line(r));
    }
    out
}

/// Overridable internals, used by tests to plant faults.
#[derive(Debug, Clone, Copy)]
pub struct Hooks {
    pub count_formula: TotalFormula,
}

impl Default for Hooks {
    fn default() -> Self {
        Hooks {
            count_formula: count_formula_total,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "amicable", version, about = "Sturmian morphisms, amicable pairs and ternarizations")]
struct Cli {
    /// Human-readable tables instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    /// Run sweeps on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Standard Sturmian morphism with the given incidence matrix.
    Std {
        #[arg(long)]
        matrix: IntMatrix2,
    },
    /// All Sturmian morphisms with the given incidence matrix.
    Enum {
        #[arg(long)]
        matrix: IntMatrix2,
    },
    /// Ordered amicable pairs with the given incidence matrix.
    Pairs {
        #[arg(long)]
        matrix: IntMatrix2,
        #[arg(long)]
        b: Option<usize>,
    },
    /// Closed-form pair counts for every unimodular matrix up to a norm.
    Count {
        #[arg(long)]
        max_norm: u64,
        /// Also count by brute force and compare.
        #[arg(long)]
        compare: bool,
    },
    /// Ternarization of an amicable pair.
    Ternarize {
        #[arg(long)]
        phi: Morphism,
        #[arg(long)]
        psi: Morphism,
    },
    /// Whether a ternary morphism is a ternarization.
    Member {
        #[arg(long)]
        eta: Morphism,
    },
    /// Classify a 3x3 incidence matrix.
    Classify {
        #[arg(long)]
        matrix3: IntMatrix3,
    },
    /// Coding of a 2-interval exchange.
    Word2 {
        #[arg(long)]
        slope: QuadNumber,
        #[arg(long, default_value = "0")]
        start: QuadNumber,
        #[arg(short = 'n', long = "length")]
        n: usize,
    },
    /// Coding of a 3-interval exchange.
    Word3 {
        #[arg(long)]
        alpha: QuadNumber,
        #[arg(long)]
        beta: QuadNumber,
        #[arg(long, default_value = "0")]
        start: QuadNumber,
        #[arg(short = 'n', long = "length")]
        n: usize,
    },
    /// Prefix-scale check that a morphism maps a 3iet word to a 3iet word.
    Preserve {
        #[arg(long)]
        eta: Morphism,
        #[arg(long)]
        alpha: QuadNumber,
        #[arg(long)]
        beta: QuadNumber,
        #[arg(long, default_value = "0")]
        start: QuadNumber,
        #[arg(short = 'n', long = "length", default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        kmax: usize,
    },
    /// Membership of eta and of its composites with the letter exchange and
    /// the Fibonacci ternarization.
    Probe {
        #[arg(long)]
        eta: Morphism,
    },
    /// Run an exhaustive verification suite.
    Verify {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        max_norm: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Std { .. } => "std",
            Command::Enum { .. } => "enum",
            Command::Pairs { .. } => "pairs",
            Command::Count { .. } => "count",
            Command::Ternarize { .. } => "ternarize",
            Command::Member { .. } => "member",
            Command::Classify { .. } => "classify",
            Command::Word2 { .. } => "word2",
            Command::Word3 { .. } => "word3",
            Command::Preserve { .. } => "preserve",
            Command::Probe { .. } => "probe",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Output of a full invocation: rendered text plus exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(argv: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &Hooks::default())
}

pub fn run_with<I, T>(argv: I, hooks: &Hooks) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Invocation {
                    stdout: e.render().to_string(),
                    stderr: String::new(),
                    code: 0,
                },
                _ => {
                    let report = parse_failure(&argv, &e);
                    Invocation {
                        stdout: report.to_json_lines(),
                        stderr: e.render().to_string(),
                        code: report.exit_code(),
                    }
                }
            };
        }
    };
    let report = execute(&cli, hooks);
    let stderr = report.warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    Invocation {
        stdout: if cli.pretty { report.to_table() } else { report.to_json_lines() },
        stderr,
        code: report.exit_code(),
    }
}

/// Parses and executes `argv`; parse failures become invalid-input reports.
pub fn dispatch<I, T>(argv: I) -> CommandReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    dispatch_with(argv, &Hooks::default())
}

pub fn dispatch_with<I, T>(argv: I, hooks: &Hooks) -> CommandReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&argv) {
        Ok(cli) => execute(&cli, hooks),
        Err(e) => parse_failure(&argv, &e),
    }
}

/// Invalid-input report naming the subcommand (when one was recognized) and
/// the first line of the parser's message.
fn parse_failure(argv: &[OsString], e: &clap::Error) -> CommandReport {
    use clap::CommandFactory;
    let cmd = Cli::command();
    let name = argv
        .iter()
        .skip(1)
        .filter_map(|a| a.to_str())
        .find(|a| cmd.get_subcommands().any(|s| s.get_name() == *a))
        .unwrap_or("");
    let rendered = e.render().to_string();
    let first = rendered.lines().next().unwrap_or_default();
    CommandReport::invalid(name, first.strip_prefix("error: ").unwrap_or(first))
}

pub fn write_invocation(inv: &Invocation, out: &mut impl Write, err: &mut impl Write) -> std::io::Result<()> {
    out.write_all(inv.stdout.as_bytes())?;
    err.write_all(inv.stderr.as_bytes())
}

fn execute(cli: &Cli, hooks: &Hooks) -> CommandReport {
    let name = cli.command.name();
    let strategy = if cli.sequential { Strategy::Sequential } else { Strategy::Parallel };
    let mut report = CommandReport::new(name);
    match run_command(&cli.command, strategy, hooks, &mut report) {
        Ok(()) => report,
        Err(e) => CommandReport::invalid(name, e.to_string()),
    }
}

fn pair_record(p: &AmicablePair) -> amicable::Result<Value> {
    Ok(json!({
        "k": p.k,
        "kbar": p.kbar,
        "b0": p.b0,
        "b1": p.b1,
        "b": p.b,
        "phi": p.phi,
        "psi": p.psi,
        "eta": p.eta,
        "matrix3": p.eta.incidence3()?,
    }))
}

fn require_ternary(eta: &Morphism) -> amicable::Result<()> {
    if eta.alphabet() == Alphabet::Ternary {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            expected: Alphabet::Ternary,
            found: eta.alphabet(),
        })
    }
}

fn run_command(cmd: &Command, strategy: Strategy, hooks: &Hooks, report: &mut CommandReport) -> amicable::Result<()> {
    match cmd {
        Command::Std { matrix } => {
            let m = standard_morphism(matrix)?;
            let ops: String = standard_decomposition(matrix)?.iter().map(|op| format!("{op:?}")).collect();
            report.record(json!({
                "matrix": matrix,
                "det": matrix.det(),
                "norm": matrix.norm(),
                "morphism": m,
                "decomposition": ops,
            }));
        }
        Command::Enum { matrix } => {
            let chain = enumerate_sturmian(matrix)?;
            for (i, m) in chain.iter().enumerate() {
                report.record(json!({
                    "index": i,
                    "morphism": m,
                    "k": k_index(m)?,
                    "standard": is_standard(m),
                }));
            }
            report.set("count", chain.len());
            report.set("expected", matrix.norm() - 1);
        }
        Command::Pairs { matrix, b } => {
            let pairs = brute_force_pairs(matrix)?;
            let selected: Vec<_> = pairs.iter().filter(|p| b.is_none_or(|b| p.b == b)).collect();
            for p in &selected {
                report.records.push(pair_record(p)?);
            }
            report.set("count", selected.len());
            report.set("by_b", pair_histogram(&pairs));
        }
        Command::Count { max_norm, compare } => {
            let rows = count_rows(*max_norm, *compare, strategy, hooks.count_formula)?;
            let mut disagree = 0usize;
            let mut total = 0u64;
            for row in &rows {
                total += row.formula;
                let agrees = row.agrees();
                disagree += usize::from(agrees == Some(false));
                let mut v = to_value(row);
                v["agrees"] = to_value(agrees);
                report.records.push(v);
            }
            report.set("matrices", rows.len());
            report.set("formula_total", total);
            if *compare {
                report.set("disagreements", disagree);
                if disagree > 0 {
                    report.fail(format!("{disagree} matrices where formula != brute force"));
                }
            }
        }
        Command::Ternarize { phi, psi } => match AmicablePair::new(phi, psi) {
            Ok(p) => report.records.push(pair_record(&p)?),
            Err(e @ (Error::NotAmicable(_) | Error::NotSturmian(_))) => report.fail(e.to_string()),
            Err(e) => return Err(e),
        },
        Command::Member { eta } => {
            require_ternary(eta)?;
            match is_ternarization(eta) {
                Ok((phi, psi)) => report.record(json!({ "eta": eta, "member": true, "phi": phi, "psi": psi })),
                Err(NotTernarization::NotTernary) => {
                    return Err(Error::Domain(format!("{eta} is not a non-erasing ternary morphism")))
                }
                Err(e) => {
                    report.record(json!({ "eta": eta, "member": false, "diagnostic": e.to_string() }));
                    report.fail(e.to_string());
                }
            }
        }
        Command::Classify { matrix3 } => {
            let witness = classify_matrix3(matrix3);
            report.record(json!({
                "matrix3": matrix3,
                "e_condition": e_condition(matrix3),
                "classified": witness.is_some(),
                "a": witness.map(|w| w.a),
                "b0": witness.map(|w| w.b0),
                "b1": witness.map(|w| w.b1),
                "delta": witness.map(|w| w.delta),
            }));
            if witness.is_none() {
                report.fail(format!("{matrix3} is not the incidence matrix of a ternarization"));
            }
        }
        Command::Word2 { slope, start, n } => {
            let word = two_iet_code(&TwoIet::new(*slope)?, start, *n)?;
            report.record(json!({
                "slope": slope,
                "start": start,
                "length": word.len(),
                "word": word,
                "balanced": is_balanced(&word)?,
            }));
        }
        Command::Word3 { alpha, beta, start, n } => {
            let params = ThreeIet::new(*alpha, *beta)?;
            let nondegenerate = is_nondegenerate_params(&params)?;
            if !nondegenerate {
                report.warnings.push(format!(
                    "(1-alpha)/(1+beta) = {} is rational; the coding is not a 3iet word",
                    params.rotation_ratio()?
                ));
            }
            let word = three_iet_code(&params, start, *n)?;
            report.record(json!({
                "alpha": alpha,
                "beta": beta,
                "start": start,
                "length": word.len(),
                "word": word,
                "nondegenerate": nondegenerate,
            }));
        }
        Command::Preserve { eta, alpha, beta, start, n, kmax } => {
            require_ternary(eta)?;
            let params = ThreeIet::new(*alpha, *beta)?;
            let config = PreservationConfig { n: *n, kmax: *kmax };
            let result = check_3iet_preservation(eta, &params, start, config)?;
            let holds = result.holds;
            let mut v = to_value(&result);
            v["eta"] = to_value(eta);
            report.records.push(v);
            if !holds {
                report.fail("a projection of the image is not Sturmian on the prefix");
            }
        }
        Command::Probe { eta } => {
            require_ternary(eta)?;
            let probe = conjecture_probe(eta)?;
            for e in &probe.entries {
                report.record(e);
            }
            report.set("eta", &probe.eta);
            report.set("first_member", probe.first_member().map(|e| e.label));
        }
        Command::Verify { suite, max_norm, seed, samples } => {
            let mut opts = VerifyOptions::for_suite(*suite);
            opts.strategy = strategy;
            if let Some(m) = max_norm {
                opts.max_norm = *m;
            }
            if let Some(s) = seed {
                opts.seed = *s;
            }
            if let Some(s) = samples {
                opts.samples = *s;
            }
            let result = match suite {
                Suite::Counting => verify::counting(opts.max_norm, strategy, hooks.count_formula)?,
                _ => verify::run_suite(*suite, &opts)?,
            };
            for c in &result.checks {
                report.record(c);
            }
            let failures = result.failures().count();
            report.set("suite", suite);
            report.set("max_norm", opts.max_norm);
            if *suite == Suite::Monoid {
                report.set("seed", opts.seed);
            }
            report.set("checks", result.checks.len());
            report.set("failures", failures);
            if failures > 0 {
                report.fail(format!("{failures} of {} checks failed", result.checks.len()));
            }
        }
    }
    Ok(())
}
