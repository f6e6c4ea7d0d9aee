use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use qsympat::avoid::{count_avoiders, for_each_avoider, knuth_closure_break, q_n};
use qsympat::paperlab::{self, CheckSpec, Status};
use qsympat::qsym::{set_cache_dir, to_schur};
use qsympat::tableau::{knuth_class, rsk, rsk_inverse};
use qsympat::{PatternSet, Permutation, SchurExpansion, StandardTableau};

const DEFAULT_N_CAP: usize = 12;

#[derive(Parser, Debug)]
#[command(
    name = "qsympat",
    version,
    about = "Pattern avoidance and quasisymmetric generating functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,

    /// Emit tab-separated values instead of text.
    #[arg(long, global = true)]
    tsv: bool,

    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    /// Directory for cached per-grade tableau statistics.
    #[arg(long, global = true, env = "QSYMPAT_CACHE")]
    cache_dir: Option<PathBuf>,

    /// Allow grades above 12.
    #[arg(long, global = true)]
    unsafe_n: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List or count the permutations of size n avoiding every pattern.
    Avoiders {
        #[arg(short = 'n', long = "grade")]
        n: usize,
        #[arg(short, long, default_value = "")]
        patterns: PatternSet,
        /// Print only the number of avoiders.
        #[arg(long)]
        count: bool,
    },
    /// Fundamental expansion of Q_n, optionally in the Schur basis.
    Qsym {
        #[arg(short = 'n', long = "grade")]
        n: usize,
        #[arg(short, long, default_value = "")]
        patterns: PatternSet,
        #[arg(long)]
        schur: bool,
    },
    /// Run named checks and print one JSON result per line.
    Verify(VerifyArgs),
    /// Robinson–Schensted: a permutation gives (P, Q); two tableaux give the permutation.
    Rsk {
        #[arg(num_args = 1..=2, required = true)]
        input: Vec<String>,
    },
    /// Knuth classes and pattern-Knuth closure.
    Knuth {
        /// Print the permutations with this insertion tableau (rows separated by `/`).
        #[arg(long, value_name = "TABLEAU", conflicts_with_all = ["closed", "patterns"])]
        class: Option<StandardTableau>,
        /// Test whether the Knuth class of this tableau is pattern-Knuth closed.
        #[arg(long, value_name = "TABLEAU", conflicts_with = "patterns")]
        closed: Option<StandardTableau>,
        /// Test whether this pattern set is pattern-Knuth closed.
        #[arg(short, long)]
        patterns: Option<PatternSet>,
    },
    /// Symmetry and Schur positivity of Q_n over a range of grades.
    Probe {
        #[arg(short, long, default_value = "")]
        patterns: PatternSet,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A check id, or `all`.
    check: Option<String>,
    /// Use reduced sizes for `all`.
    #[arg(long)]
    quick: bool,
    /// JSON array of {check_id, parameters}.
    #[arg(long, conflicts_with_all = ["check", "quick"])]
    manifest: Option<PathBuf>,
    /// List the check ids.
    #[arg(long, exclusive = true)]
    list: bool,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(short = 'j')]
    j: Option<usize>,
    #[arg(short = 'm')]
    m: Option<usize>,
    /// Left factor for shuffle-recursion.
    #[arg(long)]
    left: Option<String>,
    /// Right factor for shuffle-recursion.
    #[arg(long)]
    right: Option<String>,
    /// Extra parameter as KEY=JSON.
    #[arg(long = "param", value_name = "KEY=JSON")]
    params: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Tsv,
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// stdout was closed by the reader
    Closed,
}

impl From<qsympat::Error> for Failure {
    fn from(e: qsympat::Error) -> Self {
        use qsympat::Error::*;
        match e {
            InvalidInput(_) | Parse(_) | UnknownCheck(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

type CliResult = Result<ExitCode, Failure>;

fn usage<T>(msg: impl Display) -> Result<T, Failure> {
    Err(Failure::Usage(msg.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Closed) => ExitCode::SUCCESS,
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let g = &cli.global;
    if let Some(t) = g.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    set_cache_dir(g.cache_dir.clone());
    let format = match (g.json, g.tsv) {
        (true, _) => Format::Json,
        (_, true) => Format::Tsv,
        _ => Format::Text,
    };
    let cap = |n: usize| -> Result<(), Failure> {
        if n > DEFAULT_N_CAP && !g.unsafe_n {
            return usage(format!(
                "n = {n} exceeds the safety cap of {DEFAULT_N_CAP}; pass --unsafe-n to allow it"
            ));
        }
        Ok(())
    };
    let mut out = BufWriter::new(io::stdout().lock());
    let code = match cli.command {
        Command::Avoiders { n, patterns, count } => {
            cap(n)?;
            avoiders(&mut out, format, n, &patterns, count)?
        }
        Command::Qsym { n, patterns, schur } => {
            cap(n)?;
            qsym(&mut out, format, n, &patterns, schur)?
        }
        Command::Verify(args) => {
            if let Some(n) = args.n_max {
                cap(n)?;
            }
            verify(&mut out, format, args)?
        }
        Command::Rsk { input } => rsk_cmd(&mut out, format, &input)?,
        Command::Knuth {
            class,
            closed,
            patterns,
        } => knuth(&mut out, format, class, closed, patterns)?,
        Command::Probe {
            patterns,
            n_min,
            n_max,
        } => {
            cap(n_max)?;
            if n_min > n_max {
                return usage("--n-min exceeds --n-max");
            }
            probe(&mut out, format, &patterns, n_min, n_max)?
        }
    };
    out.flush()?;
    Ok(code)
}

fn perm_text(p: &Permutation) -> String {
    if p.is_empty() {
        "()".to_string()
    } else {
        p.to_string()
    }
}

fn avoiders(
    out: &mut impl Write,
    format: Format,
    n: usize,
    patterns: &PatternSet,
    count_only: bool,
) -> CliResult {
    if count_only {
        let count = count_avoiders(n, patterns);
        match format {
            Format::Json => {
                serde_json::to_writer(
                    &mut *out,
                    &json!({ "n": n, "patterns": patterns, "count": count }),
                )?;
                writeln!(out)?;
            }
            Format::Tsv => writeln!(out, "n\tcount\n{n}\t{count}")?,
            Format::Text => writeln!(out, "{count}")?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    let mut count = 0u64;
    let mut err = None;
    match format {
        Format::Json => {
            write!(
                out,
                "{{\"n\":{n},\"patterns\":{},\"members\":[",
                serde_json::to_string(patterns)?
            )?;
            for_each_avoider(n, patterns, |e| {
                let p = Permutation::new(e.iter().map(|&v| v as usize))
                    .expect("avoider is a permutation");
                let sep = if count == 0 { "" } else { "," };
                if err.is_none() {
                    err = write!(
                        out,
                        "{sep}{}",
                        serde_json::to_string(&p).expect("serializable")
                    )
                    .err();
                }
                count += 1;
            });
            if let Some(e) = err {
                return Err(e.into());
            }
            writeln!(out, "]}}")?;
        }
        Format::Tsv | Format::Text => {
            if format == Format::Tsv {
                writeln!(out, "permutation\tdescents")?;
            }
            for_each_avoider(n, patterns, |e| {
                let p = Permutation::new(e.iter().map(|&v| v as usize))
                    .expect("avoider is a permutation");
                count += 1;
                if err.is_some() {
                    return;
                }
                err = if format == Format::Tsv {
                    writeln!(out, "{p}\t{}", p.descent_set())
                } else {
                    writeln!(out, "{}", perm_text(&p))
                }
                .err();
            });
            if let Some(e) = err {
                return Err(e.into());
            }
            if format == Format::Text {
                writeln!(out, "count {count}")?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn qsym(
    out: &mut impl Write,
    format: Format,
    n: usize,
    patterns: &PatternSet,
    schur: bool,
) -> CliResult {
    let q = q_n(patterns, n)?;
    let expansion = if schur { Some(to_schur(&q)?) } else { None };
    match format {
        Format::Json => {
            let mut obj = Map::new();
            obj.insert("n".into(), json!(n));
            obj.insert("patterns".into(), serde_json::to_value(patterns)?);
            obj.insert("q".into(), serde_json::to_value(&q)?);
            obj.insert("symmetric".into(), json!(q.is_symmetric()));
            if let Some(e) = &expansion {
                obj.insert("schur".into(), serde_json::to_value(e)?);
                obj.insert(
                    "schur_nonnegative".into(),
                    json!(e.as_sym().is_some_and(|s| s.is_schur_nonnegative())),
                );
            }
            serde_json::to_writer(&mut *out, &Value::Object(obj))?;
            writeln!(out)?;
        }
        Format::Tsv => match &expansion {
            Some(SchurExpansion::InSpan(s)) => {
                writeln!(out, "partition\tcoeff")?;
                for (l, c) in s.terms() {
                    writeln!(out, "{l}\t{c}")?;
                }
            }
            Some(SchurExpansion::NotInSpan { witness, .. }) => {
                writeln!(out, "NOT SYMMETRIC\t{witness}")?;
            }
            None => {
                writeln!(out, "descents\tcoeff")?;
                for (s, c) in q.terms() {
                    writeln!(out, "{s}\t{c}")?;
                }
            }
        },
        Format::Text => {
            writeln!(out, "{q}")?;
            match &expansion {
                Some(SchurExpansion::InSpan(s)) => writeln!(out, "{s}")?,
                Some(SchurExpansion::NotInSpan { witness, residual }) => {
                    writeln!(out, "NOT SYMMETRIC")?;
                    if let Some((a, b)) = q.asymmetry_witness() {
                        writeln!(out, "monomial coefficients differ at {a} and {b}")?;
                    }
                    writeln!(out, "residual at {witness}: {residual}")?;
                }
                None => {}
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(out: &mut impl Write, format: Format, args: VerifyArgs) -> CliResult {
    if args.list {
        for (id, about) in paperlab::CHECKS {
            match format {
                Format::Json => {
                    serde_json::to_writer(
                        &mut *out,
                        &json!({ "check_id": id, "description": about }),
                    )?;
                    writeln!(out)?;
                }
                Format::Tsv => writeln!(out, "{id}\t{about}")?,
                Format::Text => writeln!(out, "{id:<22} {about}")?,
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let overrides = args.n_max.is_some()
        || args.j.is_some()
        || args.m.is_some()
        || args.left.is_some()
        || args.right.is_some()
        || !args.params.is_empty();
    let specs = if let Some(path) = &args.manifest {
        if overrides {
            return usage("parameter flags cannot be combined with --manifest");
        }
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        paperlab::load_manifest(&text).map_err(|e| Failure::Usage(format!("bad manifest: {e}")))?
    } else {
        match args.check.as_deref() {
            None => return usage("name a check id, `all`, --manifest or --list"),
            Some("all") => {
                if overrides {
                    return usage("parameter flags need a single check id");
                }
                if args.quick {
                    paperlab::quick_suite()
                } else {
                    paperlab::full_suite()
                }
            }
            Some(id) => {
                if args.quick {
                    return usage("--quick applies to `all`");
                }
                vec![CheckSpec::new(id, check_parameters(id, &args)?)]
            }
        }
    };
    if let Some(spec) = specs
        .iter()
        .find(|s| !paperlab::CHECKS.iter().any(|(id, _)| *id == s.check_id))
    {
        return usage(format!(
            "unknown check id `{}`; see `verify --list`",
            spec.check_id
        ));
    }

    let mut failed = false;
    let mut first_error = None;
    if format == Format::Tsv {
        writeln!(out, "check_id\tstatus\telapsed_ms\tparameters")?;
    }
    for result in paperlab::run_suite(&specs) {
        let r = match result {
            Ok(r) => r,
            Err(e) => {
                first_error.get_or_insert(Failure::from(e));
                continue;
            }
        };
        failed |= r.is_failure();
        match format {
            Format::Tsv => writeln!(
                out,
                "{}\t{}\t{}\t{}",
                r.check_id, r.status, r.elapsed_ms, r.parameters
            )?,
            _ => paperlab::write_jsonl(out, std::slice::from_ref(&r))?,
        }
        if format == Format::Text
            && r.status != Status::Pass
            && r.status != Status::ConjectureConsistent
        {
            eprintln!("{}: {}", r.check_id, r.status);
        }
    }
    if let Some(e) = first_error {
        out.flush()?;
        return Err(e);
    }
    Ok(if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn check_parameters(id: &str, args: &VerifyArgs) -> Result<Value, Failure> {
    let mut p = Map::new();
    if let Some(n) = args.n_max {
        let key = if matches!(id, "knuth-classification" | "fine-characters") {
            "size_max"
        } else {
            "n_max"
        };
        p.insert(key.into(), json!(n));
    }
    if let Some(j) = args.j {
        p.insert("j".into(), json!(j));
    }
    if let Some(m) = args.m {
        p.insert("m".into(), json!(m));
    }
    if let Some(l) = &args.left {
        p.insert("left".into(), json!(l));
    }
    if let Some(r) = &args.right {
        p.insert("right".into(), json!(r));
    }
    for kv in &args.params {
        let Some((k, v)) = kv.split_once('=') else {
            return usage(format!("--param expects KEY=JSON, got `{kv}`"));
        };
        let v: Value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
        p.insert(k.to_string(), v);
    }
    Ok(Value::Object(p))
}

fn rsk_cmd(out: &mut impl Write, format: Format, input: &[String]) -> CliResult {
    if let [word] = input {
        let sigma: Permutation = word.parse()?;
        let (p, q) = rsk(&sigma);
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, &json!({ "permutation": sigma, "p": p, "q": q }))?;
                writeln!(out)?;
            }
            Format::Tsv => writeln!(out, "permutation\tp\tq\n{sigma}\t{p}\t{q}")?,
            Format::Text => writeln!(out, "P={p}\nQ={q}")?,
        }
    } else {
        let p: StandardTableau = input[0].parse()?;
        let q: StandardTableau = input[1].parse()?;
        let sigma = rsk_inverse(&p, &q)?;
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, &json!({ "permutation": sigma, "p": p, "q": q }))?;
                writeln!(out)?;
            }
            Format::Tsv => writeln!(out, "permutation\tp\tq\n{sigma}\t{p}\t{q}")?,
            Format::Text => writeln!(out, "{}", perm_text(&sigma))?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn knuth(
    out: &mut impl Write,
    format: Format,
    class: Option<StandardTableau>,
    closed: Option<StandardTableau>,
    patterns: Option<PatternSet>,
) -> CliResult {
    if let Some(t) = class {
        let members = knuth_class(&t);
        match format {
            Format::Json => {
                serde_json::to_writer(&mut *out, &json!({ "tableau": t, "members": members }))?;
                writeln!(out)?;
            }
            _ => {
                for p in &members {
                    writeln!(out, "{}", perm_text(p))?;
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let (set, tableau) = match (closed, patterns) {
        (Some(t), None) => (knuth_class(&t).into_iter().collect::<PatternSet>(), Some(t)),
        (None, Some(p)) => (p, None),
        _ => return usage("give one of --class, --closed or --patterns"),
    };
    if let Some(m) = set.max_len() {
        if m + 1 > DEFAULT_N_CAP {
            return usage(format!(
                "closure test enumerates up to n = {}, above the safety cap",
                m + 1
            ));
        }
    }
    let brk = knuth_closure_break(&set)?;
    let hook = tableau.as_ref().map(StandardTableau::is_superstandard_hook);
    match format {
        Format::Json => {
            let mut obj = Map::new();
            if let Some(t) = &tableau {
                obj.insert("tableau".into(), serde_json::to_value(t)?);
                obj.insert("superstandard_hook".into(), json!(hook));
            }
            obj.insert("patterns".into(), serde_json::to_value(&set)?);
            obj.insert("closed".into(), json!(brk.is_none()));
            obj.insert("break".into(), serde_json::to_value(&brk)?);
            serde_json::to_writer(&mut *out, &Value::Object(obj))?;
            writeln!(out)?;
        }
        Format::Tsv => writeln!(out, "patterns\tclosed\n{set}\t{}", brk.is_none())?,
        Format::Text => match (&brk, hook) {
            (None, Some(true)) => writeln!(out, "CLOSED (superstandard hook)")?,
            (None, _) => writeln!(out, "CLOSED")?,
            (Some(b), _) => writeln!(
                out,
                "NOT CLOSED: at n = {} the class of {} has {} inside and {} outside",
                b.n,
                b.tableau,
                perm_text(&b.inside),
                perm_text(&b.outside)
            )?,
        },
    }
    Ok(ExitCode::SUCCESS)
}

fn probe(
    out: &mut impl Write,
    format: Format,
    patterns: &PatternSet,
    n_min: usize,
    n_max: usize,
) -> CliResult {
    let report = paperlab::stability_probe(patterns, n_min, n_max)?;
    match format {
        Format::Json => {
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Tsv | Format::Text => {
            let sep = if format == Format::Tsv { "\t" } else { "  " };
            writeln!(
                out,
                "{}",
                ["n", "count", "symmetric", "nonnegative", "expansion"].join(sep)
            )?;
            for r in &report.rows {
                let expansion = match (&r.expansion, &r.asymmetry) {
                    (Some(s), _) => s.to_string(),
                    (None, Some((a, b))) => format!("not symmetric: {a} vs {b}"),
                    (None, None) => "not symmetric".to_string(),
                };
                writeln!(
                    out,
                    "{}",
                    [
                        r.n.to_string(),
                        r.count.to_string(),
                        r.symmetric.to_string(),
                        r.schur_nonnegative.to_string(),
                        expansion
                    ]
                    .join(sep)
                )?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
