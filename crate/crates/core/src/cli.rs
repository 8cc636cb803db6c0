//! The `pda-press` command line.
//!
//! Verdict verbs print `yes`, `no` or `no (witness n=…)` and exit with 0
//! for yes, 1 for no and 3 when the budget ran out. Errors go to stderr
//! with exit status 2. With `--json` a single object carrying the verdict,
//! witness, sizes and timing is printed instead.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::compare::{comp_slp, CompareError, PartialOrderSpec, Relation, Verdict, DEFAULT_BUDGET};
use crate::decide::{self, DecideError};
use crate::intexpr::{eval_up_to, expr_to_cfg, parse_expr, universal_up_to, IntExprError};
use crate::reductions::{
    gen_compslp_to_inclusion, gen_gss_to_intexpr, gen_lohrey, gen_subsetsum_to_compslp,
    GssInstance, ReductionError, SubsetSumInstance,
};
use crate::slp::{parse_slp, EqualityOptions, Nat, Slp, SlpError};
use crate::translate::{
    indicator_to_udpda, parse_pair, slp_to_udpda_with, transcript_to_characteristic,
    udpda_to_indicator, udpda_to_transcript, AnyPair, GadgetOptions, IndicatorPair, SeqPair,
    TranscriptPair, TranslateError,
};
use crate::udpda::{
    membership_sim, parse_unpda, run_prefix, write_unpda, Ending, NormalUdpda, UdpdaError,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Slp { path: String, source: SlpError },
    #[error("{path}: {source}")]
    Udpda { path: String, source: UdpdaError },
    #[error("{path}: {source}")]
    Pair {
        path: String,
        source: TranslateError,
    },
    #[error("{path}: {source}")]
    Expr { path: String, source: IntExprError },
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Decide(#[from] DecideError),
    #[error(transparent)]
    Compare(#[from] CompareError),
    #[error(transparent)]
    IntExpr(#[from] IntExprError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    SlpOp(#[from] SlpError),
    #[error(transparent)]
    UdpdaOp(#[from] UdpdaError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "pda-press",
    version,
    about = "Translate and decide unary udpda through compressed characteristic sequences"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Number of bits printed by `sim prefix`.
    #[arg(long, global = true, default_value_t = 64)]
    pub cap: usize,
    /// Work limit for comparisons, inclusion and simulation fuel.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Upper end of the range for `intexpr` verbs.
    #[arg(long, global = true)]
    pub bound: Option<String>,
    /// Seed for fingerprint equality.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Build machines over two stack symbols.
    #[arg(long, global = true)]
    pub tight_stack: bool,
    /// Print one JSON object instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Output file, or directory for verbs producing several files.
    #[arg(short = 'o', long = "output", global = true)]
    pub output: Option<PathBuf>,
    /// Partial order for `slp compare`, e.g. `0<=1`.
    #[arg(long, global = true, conflicts_with = "relation")]
    pub order: Option<String>,
    /// Arbitrary relation for `slp compare`, e.g. `wildcard` or `a<=b,b<=a`.
    #[arg(long, global = true)]
    pub relation: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Translate between file formats.
    #[command(subcommand)]
    Convert(Convert),
    /// Decision problems on machines.
    #[command(subcommand)]
    Decide(Decide),
    /// Operations on single programs.
    #[command(subcommand)]
    Slp(SlpCmd),
    /// Integer expressions.
    #[command(subcommand)]
    Intexpr(IntexprCmd),
    /// Hardness instance generators.
    #[command(subcommand)]
    Gen(Gen),
    /// Reference simulation.
    #[command(subcommand)]
    Sim(Sim),
}

#[derive(Debug, Subcommand)]
pub enum Convert {
    SlpToUdpda { input: PathBuf },
    IndicatorToUdpda { input: PathBuf },
    UdpdaToIndicator { input: PathBuf },
    UdpdaToTranscript { input: PathBuf },
    TranscriptToIndicator { input: PathBuf },
    ExprToCfg { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Decide {
    /// Whether `a^n` is accepted; `n` may be written `b^e`.
    Member {
        machine: PathBuf,
        n: String,
    },
    Empty {
        machine: PathBuf,
    },
    Universal {
        machine: PathBuf,
    },
    Equal {
        a: PathBuf,
        b: PathBuf,
    },
    /// Whether `L(a) ⊆ L(b)`.
    Included {
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SlpCmd {
    Len {
        input: PathBuf,
    },
    Query {
        input: PathBuf,
        n: String,
    },
    Equal {
        a: PathBuf,
        b: PathBuf,
    },
    /// Componentwise comparison under `--order` or `--relation`.
    Compare {
        a: PathBuf,
        b: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum IntexprCmd {
    Eval { input: PathBuf },
    Universal { input: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    Lohrey(SubsetSumArgs),
    SubsetsumCompslp(SubsetSumArgs),
    CompslpInclusion {
        p1: PathBuf,
        p2: PathBuf,
        /// Loop program shared by both machines; `0` when omitted.
        #[arg(long = "loop")]
        looped: Option<PathBuf>,
    },
    Gss {
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        u: Vec<u64>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        v: Vec<u64>,
        #[arg(long)]
        target: u64,
    },
}

#[derive(Debug, Args)]
pub struct SubsetSumArgs {
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub weights: Vec<u64>,
    #[arg(long)]
    pub target: u64,
}

#[derive(Debug, Subcommand)]
pub enum Sim {
    /// The first `--cap` bits of the characteristic sequence.
    Prefix {
        machine: PathBuf,
    },
    Member {
        machine: PathBuf,
        n: u64,
    },
}

/// What a command produced.
#[derive(Debug, Default)]
struct Report {
    verdict: Option<Verdict>,
    /// Whether a failing verdict reports its index.
    witness: bool,
    /// Printed on stdout, or written to `-o`.
    text: Option<String>,
    /// Named files for multi-output verbs.
    files: Vec<(String, String)>,
    sizes: Map<String, Value>,
    extra: Map<String, Value>,
}

impl Report {
    fn verdict(v: Verdict) -> Self {
        Report {
            verdict: Some(v),
            witness: true,
            ..Report::default()
        }
    }

    fn boolean(b: bool) -> Self {
        Report {
            verdict: Some(if b {
                Verdict::Holds
            } else {
                Verdict::Fails(Nat::default())
            }),
            ..Report::default()
        }
    }

    fn text(s: String) -> Self {
        Report {
            text: Some(s),
            ..Report::default()
        }
    }

    fn size(mut self, key: &str, v: Value) -> Self {
        self.sizes.insert(key.into(), v);
        self
    }
}

/// Parses `args` and runs the command, writing to the given streams.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    run_cli(&cli, out, err)
}

pub fn run_cli(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let start = Instant::now();
    let report = dispatch(cli).and_then(|r| emit(cli, r, start, out));
    match report {
        Ok(code) => code,
        Err(e) => {
            if cli.global.json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({ "command": verb_name(&cli.command), "error": e.to_string() })
                );
            }
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn verb_name(c: &Command) -> String {
    let (group, verb) = match c {
        Command::Convert(v) => ("convert", format!("{v:?}")),
        Command::Decide(v) => ("decide", format!("{v:?}")),
        Command::Slp(v) => ("slp", format!("{v:?}")),
        Command::Intexpr(v) => ("intexpr", format!("{v:?}")),
        Command::Gen(v) => ("gen", format!("{v:?}")),
        Command::Sim(v) => ("sim", format!("{v:?}")),
    };
    let head: String = verb.chars().take_while(|c| c.is_alphanumeric()).collect();
    let mut kebab = String::new();
    for (i, ch) in head.chars().enumerate() {
        if ch.is_uppercase() && i > 0 {
            kebab.push('-');
        }
        kebab.push(ch.to_ascii_lowercase());
    }
    format!("{group} {kebab}")
}

fn exit_code(v: &Verdict) -> i32 {
    match v {
        Verdict::Holds => EXIT_YES,
        Verdict::Fails(_) => EXIT_NO,
        Verdict::BudgetExceeded => EXIT_BUDGET,
    }
}

fn emit(cli: &Cli, r: Report, start: Instant, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = &cli.global;
    let plain = !r.witness;
    let verdict_text = r.verdict.as_ref().map(|v| match v {
        Verdict::Fails(_) if plain => "no".to_string(),
        v => v.to_string(),
    });
    let mut written = Vec::new();
    if let Some(path) = &g.output {
        if let Some(text) = &r.text {
            write_file(path, text)?;
            written.push(path.display().to_string());
        } else if !r.files.is_empty() {
            fs::create_dir_all(path).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            for (name, body) in &r.files {
                let p = path.join(name);
                write_file(&p, body)?;
                written.push(p.display().to_string());
            }
        }
    }
    let io = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    if g.json {
        let mut obj = Map::new();
        obj.insert("command".into(), Value::String(verb_name(&cli.command)));
        let (label, witness) = match &r.verdict {
            None => (Value::Null, Value::Null),
            Some(Verdict::Holds) => (json!("yes"), Value::Null),
            Some(Verdict::Fails(_)) if plain => (json!("no"), Value::Null),
            Some(Verdict::Fails(n)) => (json!("no"), json!(n.to_string())),
            Some(Verdict::BudgetExceeded) => (json!("budget_exceeded"), Value::Null),
        };
        obj.insert("verdict".into(), label);
        obj.insert("witness".into(), witness);
        obj.insert("sizes".into(), Value::Object(r.sizes));
        for (k, v) in r.extra {
            obj.insert(k, v);
        }
        if g.output.is_none() {
            if let Some(text) = &r.text {
                obj.insert("output".into(), json!(text));
            }
            if !r.files.is_empty() {
                let files: Map<String, Value> =
                    r.files.iter().map(|(n, b)| (n.clone(), json!(b))).collect();
                obj.insert("files".into(), Value::Object(files));
            }
        } else {
            obj.insert("written".into(), json!(written));
        }
        obj.insert(
            "timing_ms".into(),
            json!(start.elapsed().as_secs_f64() * 1e3),
        );
        writeln!(out, "{}", Value::Object(obj)).map_err(io)?;
    } else {
        if let Some(v) = verdict_text {
            writeln!(out, "{v}").map_err(io)?;
        }
        if g.output.is_none() {
            if let Some(text) = &r.text {
                write!(out, "{text}").map_err(io)?;
                if !text.ends_with('\n') {
                    writeln!(out).map_err(io)?;
                }
            }
            for (name, body) in &r.files {
                writeln!(out, "# {name}").map_err(io)?;
                write!(out, "{body}").map_err(io)?;
            }
        }
    }
    Ok(r.verdict.as_ref().map_or(EXIT_YES, exit_code))
}

fn write_file(path: &Path, body: &str) -> Result<(), CliError> {
    fs::write(path, body).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read(path: &Path) -> Result<String, CliError> {
    let name = path.display().to_string();
    let io = |source| CliError::Io {
        path: name.clone(),
        source,
    };
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

fn load_slp(path: &Path) -> Result<Slp, CliError> {
    parse_slp(&read(path)?).map_err(|source| CliError::Slp {
        path: path.display().to_string(),
        source,
    })
}

fn load_machine(path: &Path) -> Result<NormalUdpda, CliError> {
    let err = |source| CliError::Udpda {
        path: path.display().to_string(),
        source,
    };
    let raw = parse_unpda(&read(path)?).map_err(err)?;
    raw.normalize().map_err(err)
}

fn load_pair(path: &Path) -> Result<AnyPair, CliError> {
    parse_pair(&read(path)?).map_err(|source| CliError::Pair {
        path: path.display().to_string(),
        source,
    })
}

fn load_indicator(path: &Path) -> Result<IndicatorPair, CliError> {
    match load_pair(path)? {
        AnyPair::Indicator(p) => Ok(p),
        AnyPair::Transcript(_) => Err(CliError::Usage(format!(
            "{}: expected an indicator pair",
            path.display()
        ))),
    }
}

fn load_transcript(path: &Path) -> Result<TranscriptPair, CliError> {
    match load_pair(path)? {
        AnyPair::Transcript(p) => Ok(p),
        AnyPair::Indicator(_) => Err(CliError::Usage(format!(
            "{}: expected a transcript pair",
            path.display()
        ))),
    }
}

/// A natural written in decimal or as `b^e`.
pub fn parse_nat(s: &str) -> Result<Nat, CliError> {
    let bad = || CliError::Usage(format!("not a natural number: {s:?}"));
    let s = s.trim();
    match s.split_once('^') {
        Some((b, e)) => {
            let b: Nat = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            Ok(b.pow(e))
        }
        None => s.parse().map_err(|_| bad()),
    }
}

fn machine_sizes(m: &NormalUdpda) -> Value {
    json!({ "states": m.num_states(), "stack": m.stack_size(), "size": m.size() })
}

fn pair_sizes(p: &SeqPair) -> Value {
    json!({
        "prefix_length": p.prefix().length().to_string(),
        "loop_length": p.looped().length().to_string(),
        "size": p.size(),
    })
}

fn slp_sizes(p: &Slp) -> Value {
    json!({ "rules": p.num_rules(), "size": p.size(), "length": p.length().to_string() })
}

fn equality_options(g: &Global) -> EqualityOptions {
    let mut eq = EqualityOptions::default();
    if let Some(seed) = g.seed {
        eq.seed = seed;
    }
    eq
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    let gadget = GadgetOptions {
        tight_stack: g.tight_stack,
    };
    Ok(match &cli.command {
        Command::Convert(c) => match c {
            Convert::SlpToUdpda { input } => {
                let p = load_slp(input)?;
                let m = slp_to_udpda_with(&p, gadget)?.machine;
                Report::text(write_unpda(&m.to_raw()))
                    .size("input", slp_sizes(&p))
                    .size("output", machine_sizes(&m))
            }
            Convert::IndicatorToUdpda { input } => {
                let ip = load_indicator(input)?;
                let m = indicator_to_udpda(&ip, gadget)?;
                Report::text(write_unpda(&m.to_raw()))
                    .size("input", pair_sizes(ip.pair()))
                    .size("output", machine_sizes(&m))
            }
            Convert::UdpdaToIndicator { input } => {
                let m = load_machine(input)?;
                let ip = udpda_to_indicator(&m)?;
                Report::text(ip.to_string())
                    .size("input", machine_sizes(&m))
                    .size("output", pair_sizes(ip.pair()))
            }
            Convert::UdpdaToTranscript { input } => {
                let m = load_machine(input)?;
                let tp = udpda_to_transcript(&m)?;
                Report::text(tp.to_string())
                    .size("input", machine_sizes(&m))
                    .size("output", pair_sizes(tp.pair()))
            }
            Convert::TranscriptToIndicator { input } => {
                let tp = load_transcript(input)?;
                let ip = transcript_to_characteristic(&tp)?;
                Report::text(ip.to_string())
                    .size("input", pair_sizes(tp.pair()))
                    .size("output", pair_sizes(ip.pair()))
            }
            Convert::ExprToCfg { input } => {
                let e = load_expr(input)?;
                let cfg = expr_to_cfg(&e);
                Report::text(cfg.to_string())
                    .size("input", json!({ "size": e.size(), "depth": e.depth() }))
                    .size(
                        "output",
                        json!({ "nonterminals": cfg.num_nonterminals(), "size": cfg.size() }),
                    )
            }
        },
        Command::Decide(d) => match d {
            Decide::Member { machine, n } => {
                let m = load_machine(machine)?;
                let n = parse_nat(n)?;
                Report::boolean(decide::compressed_membership(&m, &n)?)
                    .size("machine", machine_sizes(&m))
            }
            Decide::Empty { machine } => {
                let m = load_machine(machine)?;
                Report::boolean(decide::emptiness(&m)?).size("machine", machine_sizes(&m))
            }
            Decide::Universal { machine } => {
                let m = load_machine(machine)?;
                Report::boolean(decide::universality(&m)?).size("machine", machine_sizes(&m))
            }
            Decide::Equal { a, b } => {
                let (ma, mb) = (load_machine(a)?, load_machine(b)?);
                let (pa, pb) = (udpda_to_indicator(&ma)?, udpda_to_indicator(&mb)?);
                Report::boolean(decide::pairs_equivalent(&pa, &pb, &equality_options(g))?)
                    .size("a", machine_sizes(&ma))
                    .size("b", machine_sizes(&mb))
            }
            Decide::Included { a, b } => {
                let (ma, mb) = (load_machine(a)?, load_machine(b)?);
                Report::verdict(decide::inclusion(&ma, &mb, g.budget)?)
                    .size("a", machine_sizes(&ma))
                    .size("b", machine_sizes(&mb))
            }
        },
        Command::Slp(s) => match s {
            SlpCmd::Len { input } => {
                let p = load_slp(input)?;
                Report::text(p.length().to_string()).size("input", slp_sizes(&p))
            }
            SlpCmd::Query { input, n } => {
                let p = load_slp(input)?;
                Report::text(p.query(&parse_nat(n)?)?.to_string()).size("input", slp_sizes(&p))
            }
            SlpCmd::Equal { a, b } => {
                let (p, q) = (load_slp(a)?, load_slp(b)?);
                Report::boolean(p.equal(&q, &equality_options(g))?)
                    .size("a", slp_sizes(&p))
                    .size("b", slp_sizes(&q))
            }
            SlpCmd::Compare { a, b } => {
                let (p, q) = (load_slp(a)?, load_slp(b)?);
                let verdict = match (&g.order, &g.relation) {
                    (Some(o), _) => comp_slp(
                        &p,
                        &q,
                        &PartialOrderSpec::try_from(Relation::parse(o)?)?,
                        g.budget,
                    )?,
                    (None, Some(r)) => comp_slp(&p, &q, &Relation::parse(r)?, g.budget)?,
                    (None, None) => {
                        let rel = Relation::equality(p.alphabet().union(q.alphabet()));
                        comp_slp(&p, &q, &rel, g.budget)?
                    }
                };
                Report::verdict(verdict)
                    .size("a", slp_sizes(&p))
                    .size("b", slp_sizes(&q))
            }
        },
        Command::Intexpr(c) => {
            let bound = g
                .bound
                .as_deref()
                .ok_or_else(|| CliError::Usage("`--bound` is required".into()))?;
            let bound = parse_nat(bound)?;
            match c {
                IntexprCmd::Eval { input } => {
                    let e = load_expr(input)?;
                    let set = eval_up_to(&e, &bound)?;
                    let listed: Vec<String> = set.iter().map(|v| v.to_string()).collect();
                    Report::text(listed.join(" ")).size("members", json!(set.len()))
                }
                IntexprCmd::Universal { input } => {
                    let e = load_expr(input)?;
                    Report::verdict(universal_up_to(&e, &bound)?).size("expr", json!(e.size()))
                }
            }
        }
        Command::Gen(c) => match c {
            Gen::Lohrey(a) => {
                let (w1, w2) = gen_lohrey(&SubsetSumInstance::new(a.weights.clone(), a.target))?;
                two_slps(w1, w2)
            }
            Gen::SubsetsumCompslp(a) => {
                let (p1, p2) =
                    gen_subsetsum_to_compslp(&SubsetSumInstance::new(a.weights.clone(), a.target))?;
                two_slps(p1, p2)
            }
            Gen::CompslpInclusion { p1, p2, looped } => {
                let (p1, p2) = (load_slp(p1)?, load_slp(p2)?);
                let p0 = match looped {
                    Some(path) => load_slp(path)?,
                    None => Slp::literal(&crate::translate::bits_alphabet(), "0")?,
                };
                let (a1, a2) = gen_compslp_to_inclusion(&p1, &p2, &p0, gadget)?;
                Report {
                    files: vec![
                        ("a1.updpa".into(), write_unpda(&a1.to_raw())),
                        ("a2.updpa".into(), write_unpda(&a2.to_raw())),
                    ],
                    ..Report::default()
                }
                .size("a1", machine_sizes(&a1))
                .size("a2", machine_sizes(&a2))
            }
            Gen::Gss { u, v, target } => {
                let inst = GssInstance::new(u.clone(), v.clone(), *target);
                let (e, bound) = gen_gss_to_intexpr(&inst);
                let mut r =
                    Report::text(format!("# bound {bound}\n{e}\n")).size("expr", json!(e.size()));
                r.extra.insert("bound".into(), json!(bound.to_string()));
                r
            }
        },
        Command::Sim(s) => match s {
            Sim::Prefix { machine } => {
                let m = load_machine(machine)?;
                let run = run_prefix(&m, g.cap as u64, g.budget);
                let bits: String = run
                    .bits
                    .iter()
                    .map(|&b| if b { '1' } else { '0' })
                    .collect();
                let ending = match run.ending {
                    Ending::Reached => json!({ "kind": "reached" }),
                    Ending::EpsilonLoop { consumed, finals } => {
                        json!({ "kind": "epsilon_loop", "consumed": consumed, "finals": finals })
                    }
                    Ending::FuelExhausted { consumed } => {
                        json!({ "kind": "fuel_exhausted", "consumed": consumed })
                    }
                };
                let mut r = Report::text(bits).size("machine", machine_sizes(&m));
                r.extra.insert("ending".into(), ending);
                r
            }
            Sim::Member { machine, n } => {
                let m = load_machine(machine)?;
                Report::boolean(membership_sim(&m, *n, g.budget)?)
                    .size("machine", machine_sizes(&m))
            }
        },
    })
}

fn load_expr(path: &Path) -> Result<crate::intexpr::IntExpr, CliError> {
    parse_expr(&read(path)?).map_err(|source| CliError::Expr {
        path: path.display().to_string(),
        source,
    })
}

fn two_slps(p1: Slp, p2: Slp) -> Report {
    let r = Report::default()
        .size("p1", slp_sizes(&p1))
        .size("p2", slp_sizes(&p2));
    Report {
        files: vec![
            ("p1.slp".into(), p1.to_string()),
            ("p2.slp".into(), p2.to_string()),
        ],
        ..r
    }
}
