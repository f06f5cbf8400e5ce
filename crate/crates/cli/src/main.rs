use std::collections::BTreeMap;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use glplane::classify::{classify, classify_unscoped, exhaustive_search, ClassVerdict, ClusterSubcatDesc};
use glplane::endo::emit_quiver;
use glplane::error::Error;
use glplane::lattice::{TwistClass, Weight};
use glplane::render;
use glplane::symbolic::parse_degree_list;
use glplane::tilting::{assemble_unchecked, for_each_normalized_form, validate_form, BundleCollection, TiltingForm};
use glplane::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "glplane", version, about = "ACM tilting bundles on GL projective planes of weight type (2,2,2,p)")]
struct Cli {
    /// Worker threads for `verify`; 1 runs everything on the calling thread.
    #[arg(long, global = true, env = "GLPLANE_THREADS", default_value_t = 1)]
    threads: usize,
    /// Largest weight p accepted by `enumerate` and `verify`.
    #[arg(long, global = true, default_value_t = 6)]
    cap: i64,
    /// Repeat for more log output on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Assemble the collection described by a tilting form.
    Construct(ConstructArgs),
    /// Sort a collection into canonical, slice or (2,2)-form, or explain why it is none.
    Classify(InputArgs),
    /// Stream every normalized form, or with --exhaustive every rigid collection found by search.
    Enumerate(EnumerateArgs),
    /// Run the worked examples and the oracle cross-checks.
    Verify(VerifyArgs),
    /// Draw a window of the Auslander-Reiten quiver or an endomorphism quiver.
    Render {
        #[command(subcommand)]
        what: RenderCommand,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Form as JSON (`{"i":..,"j":..,"k":[..],"g":..,"h":..,"upset":[..]}`); `-` reads stdin.
    #[arg(long, conflicts_with_all = ["i", "j", "k", "g", "h", "upset"])]
    input: Option<PathBuf>,
    #[arg(long)]
    p: i64,
    #[arg(long)]
    i: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    /// Offsets k_i..k_j, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    k: Option<Vec<i64>>,
    #[arg(long)]
    g: Option<String>,
    #[arg(long)]
    h: Option<String>,
    /// Degrees of the upset, e.g. `[x13bar-4x4]` or `[(0,1,1,1,-1)]`.
    #[arg(long, allow_hyphen_values = true)]
    upset: Option<String>,
}

#[derive(Args)]
struct InputArgs {
    /// Collection document or bare JSON array of bundles; `-` reads stdin.
    #[arg(long)]
    input: PathBuf,
    /// Weight, needed when the input is a bare array.
    #[arg(long)]
    p: Option<i64>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    p: i64,
    #[arg(long)]
    exhaustive: bool,
    /// Offsets k_0..k_{p-2} of the cluster tilting base; the standard base by default.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    base_k: Option<Vec<i64>>,
    /// Largest omega-shift of the base used for rank-four summands.
    #[arg(long, default_value_t = 1)]
    window: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Figures,
    Oracles,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Weights for the oracle checks; all of 2..=6 by default.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<i64>>,
    /// Harness self-test: alter one hand-written label so the run must fail.
    #[arg(long, hide = true)]
    corrupt: bool,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DrawFormat {
    Dot,
    Tikz,
    Json,
}

#[derive(Subcommand)]
enum RenderCommand {
    /// Rank-four rows and the two line rows over a range of offsets.
    Ar {
        #[arg(long)]
        p: i64,
        /// Offsets `lo..hi`.
        #[arg(long, allow_hyphen_values = true, default_value = "-5..5")]
        window: String,
        /// Collection whose members are highlighted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DrawFormat::Dot)]
        format: DrawFormat,
    },
    /// Gabriel quiver of the endomorphism algebra of a tilting collection.
    Endo {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: Option<i64>,
        #[arg(long, value_enum, default_value_t = DrawFormat::Dot)]
        format: DrawFormat,
    },
}

/// Exit status: 1 when a check or invariant fails, 2 when the input is malformed.
enum Failure {
    Check(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).parse_default_env().init();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let res = run(&cli, &mut out);
    let flushed = out.flush();
    match res {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Construct(a) => construct(a, out),
        Command::Classify(a) => classify_cmd(a, out),
        Command::Enumerate(a) => enumerate(cli.cap, a, out),
        Command::Verify(a) => verify_cmd(cli.cap, cli.threads, a, out),
        Command::Render { what } => render_cmd(what, out),
    }
}

fn weight(p: i64) -> Result<Weight, Failure> {
    Ok(Weight::new(p)?)
}

fn capped(p: i64, cap: i64) -> Result<Weight, Failure> {
    if p > cap {
        return Err(Error::CapExceeded { p, cap }.into());
    }
    weight(p)
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Reads a collection document (`{"p":..,"bundles":[..]}`) or a bare array with `--p`.
fn read_collection(path: &PathBuf, p: Option<i64>) -> Result<BundleCollection, Failure> {
    let v = read_json(path)?;
    let (p, bundles) = match &v {
        Value::Array(_) => (p, &v),
        Value::Object(m) => (
            m.get("p").and_then(Value::as_i64).or(p),
            m.get("bundles")
                .ok_or_else(|| Failure::Input("collection document has no \"bundles\"".into()))?,
        ),
        _ => return Err(Failure::Input("expected a collection document or an array".into())),
    };
    let p = p.ok_or_else(|| Failure::Input("weight unknown: pass --p or include \"p\"".into()))?;
    Ok(BundleCollection::from_json(weight(p)?, bundles)?)
}

/// Verdict inside the standard subcategory, or without one when `c` leaves it.
fn verdict(c: &BundleCollection) -> Result<ClassVerdict, Failure> {
    let u = ClusterSubcatDesc::standard(c.weight());
    match classify(c, &u) {
        Ok(v) => Ok(v),
        Err(Error::NotInSubcategory(_)) => Ok(classify_unscoped(c)),
        Err(e) => Err(Failure::Check(e.to_string())),
    }
}

fn document(c: &BundleCollection, v: &ClassVerdict) -> Value {
    json!({
        "p": c.weight().p(),
        "summands": c.len(),
        "rigid": c.is_rigid(),
        "verdict": v,
        "bundles": c.to_json(),
    })
}

fn write_json(out: &mut dyn Write, v: &Value) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Input(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn twist(s: &Option<String>) -> Result<Option<TwistClass>, Failure> {
    Ok(s.as_deref().map(TwistClass::parse).transpose()?)
}

fn construct(a: &ConstructArgs, out: &mut dyn Write) -> Outcome {
    let w = weight(a.p)?;
    let form = match &a.input {
        Some(path) => TiltingForm::from_json(w, &read_json(path)?)?,
        None => {
            let missing = |f: &str| Failure::Input(format!("--{f} is required without --input"));
            let i = a.i.ok_or_else(|| missing("i"))?;
            let j = a.j.ok_or_else(|| missing("j"))?;
            let k = a.k.clone().ok_or_else(|| missing("k"))?;
            let upset = match &a.upset {
                Some(s) => parse_degree_list(w, s)?.into_iter().collect(),
                None => Default::default(),
            };
            TiltingForm::with_default_twists(w, i, j, k, twist(&a.g)?, twist(&a.h)?, upset)?
        }
    };
    form.check(w)?;
    let c = assemble_unchecked(w, &form)?;
    if let Some((x, y, why)) = c.rigidity_violation() {
        return Err(Failure::Check(format!("assembled collection is not rigid: {x} and {y} ({why})")));
    }
    let want = BundleCollection::tilting_size(w);
    if c.len() != want {
        return Err(Failure::Check(format!("assembled {} summands, expected {want}", c.len())));
    }
    let v = verdict(&c)?;
    let mut doc = document(&c, &v);
    doc["form"] = serde_json::to_value(&form).map_err(|e| Failure::Input(e.to_string()))?;
    write_json(out, &doc)
}

fn classify_cmd(a: &InputArgs, out: &mut dyn Write) -> Outcome {
    let c = read_collection(&a.input, a.p)?;
    let v = verdict(&c)?;
    let mut doc = document(&c, &v);
    if let Some(form) = validate_form(&c) {
        doc["form"] = serde_json::to_value(&form).map_err(|e| Failure::Input(e.to_string()))?;
    }
    write_json(out, &doc)?;
    match v {
        ClassVerdict::NotTilting { .. } => Err(Failure::Check("not a tilting bundle of a known shape".into())),
        _ => Ok(()),
    }
}

fn enumerate(cap: i64, a: &EnumerateArgs, out: &mut dyn Write) -> Outcome {
    let w = capped(a.p, cap)?;
    let mut histogram: BTreeMap<&'static str, usize> = BTreeMap::new();
    if a.exhaustive {
        let u = match &a.base_k {
            Some(ks) => ClusterSubcatDesc::new(w, ks)?,
            None => ClusterSubcatDesc::standard(w),
        };
        let records = exhaustive_search(w, &u, a.window, cap).map_err(|e| Failure::Check(e.to_string()))?;
        for r in records {
            *histogram.entry(r.verdict.name()).or_default() += 1;
            let summands = r.collection.as_array().map_or(0, Vec::len);
            let line = json!({
                "p": w.p(),
                "summands": summands,
                "verdict": r.verdict,
                "witnesses": r.witnesses,
                "bundles": r.collection,
            });
            writeln!(out, "{line}")?;
        }
    } else {
        let mut failure = None;
        let mut io_err = None;
        for_each_normalized_form(w, &mut |f| {
            if failure.is_some() || io_err.is_some() {
                return;
            }
            let c = match assemble_unchecked(w, f) {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e.to_string());
                    return;
                }
            };
            match verdict(&c) {
                Ok(v) => {
                    *histogram.entry(v.name()).or_default() += 1;
                    let line = json!({
                        "p": w.p(),
                        "summands": c.len(),
                        "verdict": v,
                        "form": f,
                        "bundles": c.to_json(),
                    });
                    if let Err(e) = writeln!(out, "{line}") {
                        io_err = Some(e);
                    }
                }
                Err(Failure::Check(m) | Failure::Input(m)) => failure = Some(format!("{f}: {m}")),
            }
        });
        if let Some(e) = io_err {
            return Err(e.into());
        }
        if let Some(m) = failure {
            return Err(Failure::Check(m));
        }
    }
    eprintln!("{}", json!({ "histogram": histogram }));
    Ok(())
}

fn verify_cmd(cap: i64, threads: usize, a: &VerifyArgs, out: &mut dyn Write) -> Outcome {
    let suite = match a.suite {
        SuiteArg::Figures => Suite::Figures,
        SuiteArg::Oracles => Suite::Oracles,
        SuiteArg::All => Suite::All,
    };
    let ps = a.p.clone().unwrap_or_else(|| (2..=6).collect());
    for &p in &ps {
        capped(p, cap)?;
    }
    // one job for the examples and one per weight; results keep job order
    let mut jobs: Vec<Box<dyn Fn() -> Vec<verify::Check> + Send + Sync>> = Vec::new();
    if matches!(suite, Suite::Figures | Suite::All) {
        let corrupt = a.corrupt;
        jobs.push(Box::new(move || verify::figure_checks(corrupt)));
    }
    if matches!(suite, Suite::Oracles | Suite::All) {
        for &p in &ps {
            jobs.push(Box::new(move || verify::oracle_checks(Weight::new(p).expect("checked above"))));
        }
    }
    let checks: Vec<verify::Check> = if threads <= 1 {
        jobs.iter().flat_map(|j| j()).collect()
    } else {
        let mut slots: Vec<Vec<verify::Check>> = vec![Vec::new(); jobs.len()];
        std::thread::scope(|s| {
            for (chunk_jobs, chunk_slots) in jobs.chunks(jobs.len().div_ceil(threads)).zip(slots.chunks_mut(jobs.len().div_ceil(threads))) {
                s.spawn(move || {
                    for (job, slot) in chunk_jobs.iter().zip(chunk_slots) {
                        *slot = job();
                    }
                });
            }
        });
        slots.into_iter().flatten().collect()
    };
    if a.format == ReportFormat::Json {
        write_json(out, &json!({ "passed": verify::all_passed(&checks), "checks": checks }))?;
    } else {
        for c in &checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{mark}  {}: {}", c.name, c.detail)?;
        }
        let failed = checks.iter().filter(|c| !c.passed).count();
        writeln!(out, "{} checks, {failed} failed", checks.len())?;
    }
    if verify::all_passed(&checks) {
        Ok(())
    } else {
        Err(Failure::Check("verification failed".into()))
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || Failure::Input(format!("window {s:?}: expected lo..hi"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn render_cmd(what: &RenderCommand, out: &mut dyn Write) -> Outcome {
    match what {
        RenderCommand::Ar { p, window, input, format } => {
            let w = weight(*p)?;
            let (lo, hi) = parse_window(window)?;
            let highlight = match input {
                Some(path) => Some(read_collection(path, Some(*p))?),
                None => None,
            };
            let members = highlight.as_ref().map(BundleCollection::members);
            match format {
                DrawFormat::Dot => write!(out, "{}", render::ar_dot(w, lo, hi, members))?,
                DrawFormat::Tikz => write!(out, "{}", render::ar_tikz(w, lo, hi, members))?,
                DrawFormat::Json => {
                    let verts = render::ar_window(w, lo, hi);
                    let arrows = render::ar_arrows(w, &verts);
                    write_json(out, &json!({ "vertices": verts, "arrows": arrows }))?;
                }
            }
        }
        RenderCommand::Endo { input, p, format } => {
            let c = read_collection(input, *p)?;
            let q = emit_quiver(&c).map_err(|e| Failure::Check(e.to_string()))?;
            match format {
                DrawFormat::Dot => write!(out, "{}", q.to_dot())?,
                DrawFormat::Tikz => write!(out, "{}", render::endo_tikz(&q))?,
                DrawFormat::Json => write_json(out, &serde_json::to_value(&q).map_err(|e| Failure::Input(e.to_string()))?)?,
            }
        }
    }
    Ok(())
}
