//! Command-line front end: flag and config-file parsing, thread pool setup,
//! and the single writer for CSV, JSON and manifest outputs.

use clap::{Args, Parser, Subcommand};
use ldl_core::lab::{self, ExperimentSpec, Kind, RunRecord, Schedule, Solver, CSV_HEADER};
use ldl_core::lattice::{sample_walk, Base, Point, PointSet};
use ldl_core::tsp::{box_tsp_diluted, exact_tsp, read_points, tsp_auto, BoxOptions, TspResult, DEFAULT_EXACT_CAP};
use ldl_core::{Error, Result};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "LDL_THREADS";

#[derive(Parser, Debug)]
#[command(name = "ldl", version, about = "Lamplighter drift lab experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diluted-box TSP constant α_p.
    Alpha(ExpArgs),
    /// S-path analogue α_{p,S} by exact search.
    AlphaS(ExpArgs),
    /// Drift constant of switch-walk-switch walks.
    Drift(ExpArgs),
    /// Range law of large numbers.
    Range(ExpArgs),
    /// Inner-boundary statistic of the range.
    Boundary(ExpArgs),
    /// Thin-point statistic.
    Flatto(ExpArgs),
    /// Good-update coupling on a torus.
    GoodUpdate(ExpArgs),
    /// One-dimensional limit law against a Brownian reference.
    OnedDist(ExpArgs),
    /// Per-site costs c₁, c₂ on Z≀F.
    OnedConst(ExpArgs),
    /// Local-time functionals.
    LocalTime(ExpArgs),
    /// Length bounds on Z²≀Z.
    Zwrapz(ExpArgs),
    /// Open-path TSP on a CSV point set.
    Tsp(TspArgs),
    /// Dump one trajectory.
    Walk(WalkArgs),
    /// Print the normalised spec without running it.
    Validate(ValidateArgs),
}

#[derive(Args, Debug, Default, Clone)]
struct ExpArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated size schedule (box sides or step counts).
    #[arg(long, alias = "sides", value_delimiter = ',')]
    sizes: Option<Vec<u64>>,
    #[arg(long)]
    p: Option<f64>,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long, value_parser = ["exact", "strip", "box"])]
    solver: Option<String>,
    /// JSON spec file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    box_side: Option<i64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long, value_parser = ["literal", "tail-balanced"])]
    schedule: Option<String>,
    #[arg(long)]
    reference_trials: Option<usize>,
    #[arg(long)]
    reference_steps: Option<u64>,
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_parser = ["line", "plane"])]
    base: Option<String>,
    #[arg(long)]
    lamp_order: Option<u32>,
}

#[derive(Args, Debug)]
struct ValidateArgs {
    /// Experiment kind; may instead come from the config file.
    kind: Option<String>,
    #[command(flatten)]
    exp: ExpArgs,
}

#[derive(Args, Debug)]
struct TspArgs {
    /// CSV file with x,y rows.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_parser = ["exact", "strip", "box"], default_value = "strip")]
    solver: String,
    #[arg(long, default_value_t = 4)]
    box_side: i64,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct WalkArgs {
    #[arg(long)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = ["line", "plane"], default_value = "plane")]
    base: String,
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

/// Exit status for an error category.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 3,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn error_line(tag: &str, msg: &str) -> String {
    let flat: String = msg.split_whitespace().collect::<Vec<_>>().join(" ");
    format!("ldl-error: kind={tag} msg={flat}")
}

/// Parse arguments, run, write outputs. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            eprintln!("{}", error_line("config", first));
            return 2;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", error_line(e.tag(), &e.to_string()));
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    let (kind, args) = match cmd {
        Command::Alpha(a) => (Kind::Alpha, a),
        Command::AlphaS(a) => (Kind::AlphaS, a),
        Command::Drift(a) => (Kind::Drift, a),
        Command::Range(a) => (Kind::Range, a),
        Command::Boundary(a) => (Kind::Boundary, a),
        Command::Flatto(a) => (Kind::Flatto, a),
        Command::GoodUpdate(a) => (Kind::GoodUpdate, a),
        Command::OnedDist(a) => (Kind::OnedDist, a),
        Command::OnedConst(a) => (Kind::OnedConst, a),
        Command::LocalTime(a) => (Kind::LocalTime, a),
        Command::Zwrapz(a) => (Kind::Zwrapz, a),
        Command::Tsp(a) => return run_tsp(a),
        Command::Walk(a) => return run_walk(a),
        Command::Validate(v) => return run_validate(v),
    };
    run_experiment(kind, &args)
}

/// Config file (if any) with the flags applied on top.
fn build_spec(kind: Option<Kind>, args: &ExpArgs) -> Result<ExperimentSpec> {
    let mut value = match &args.config {
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<Value>(&text).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?
        }
        None => json!({}),
    };
    let obj = value.as_object_mut().ok_or_else(|| Error::Config("config file must hold a JSON object".into()))?;
    match (kind, obj.get("kind").and_then(Value::as_str).map(str::to_string)) {
        (Some(k), Some(file_kind)) => {
            if Kind::parse(&file_kind) != Some(k) {
                return Err(Error::Config(format!("config kind {file_kind} does not match subcommand {}", k.name())));
            }
        }
        (Some(k), None) => {
            obj.insert("kind".into(), json!(k.name()));
        }
        (None, Some(_)) => {}
        (None, None) => return Err(Error::Config("experiment kind missing".into())),
    }
    let mut spec: ExperimentSpec = serde_json::from_value(value).map_err(|e| Error::Config(format!("config: {e}")))?;
    if let Some(k) = kind {
        spec.kind = k;
    }
    if args.seed.is_some() {
        spec.seed = args.seed;
    }
    if args.trials.is_some() {
        spec.trials = args.trials;
    }
    if args.sizes.is_some() {
        spec.sizes = args.sizes.clone();
    }
    if let Some(p) = args.p {
        spec.p = p;
    }
    if let Some(s) = &args.solver {
        spec.solver = Solver::parse(s).expect("clap restricts values");
    }
    if args.box_side.is_some() {
        spec.box_side = args.box_side;
    }
    if args.q.is_some() {
        spec.q = args.q;
    }
    if let Some(a) = args.a {
        spec.a = a;
    }
    if let Some(e) = args.eta {
        spec.eta = e;
    }
    if let Some(a) = args.alpha {
        spec.alpha = a;
    }
    if let Some(e) = args.eps {
        spec.eps = e;
    }
    if let Some(s) = &args.schedule {
        spec.schedule = if s == "literal" { Schedule::Literal } else { Schedule::TailBalanced };
    }
    if args.reference_trials.is_some() {
        spec.reference_trials = args.reference_trials;
    }
    if let Some(r) = args.reference_steps {
        spec.reference_steps = r;
    }
    if let Some(b) = args.budget {
        spec.budget = b;
    }
    if let Some(b) = &args.base {
        let mut w = spec.walk.clone().unwrap_or_default();
        w.base = if b == "line" { Base::Line } else { Base::Plane };
        spec.walk = Some(w);
    }
    if let Some(m) = args.lamp_order {
        spec.lamps = lab::LampSpec::Cyclic(m);
    }
    Ok(spec)
}

/// Worker count from `LDL_THREADS`, else the available cores.
pub fn thread_count() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Config(format!("{THREADS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn now_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis())
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn run_experiment(kind: Kind, args: &ExpArgs) -> Result<()> {
    let spec = build_spec(Some(kind), args)?;
    let v = lab::validate(&spec)?;
    for w in &v.warnings {
        eprintln!("ldl-warning: {w}");
    }
    let threads = thread_count()?;
    let started = now_ms();
    let record = in_pool(threads, || lab::run_validated(&v.spec))??;
    let finished = now_ms();
    let name = kind.name();
    let csv = csv_bytes(&record)?;
    let json_text = serde_json::to_string_pretty(&record).expect("record serialises") + "\n";
    let files = vec![(format!("{name}.csv"), csv), (format!("{name}.json"), json_text.into_bytes())];
    let manifest = manifest(name, &record.spec_hash, record.seed, started, finished, threads, &files, json!(v.spec));
    write_outputs(&args.out, files, manifest)
}

/// CSV in the fixed column order.
pub fn csv_bytes(record: &RunRecord) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in &record.rows {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.into_inner().map_err(|e| Error::Io(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

#[allow(clippy::too_many_arguments)]
fn manifest(
    kind: &str,
    hash: &str,
    seed: u64,
    started: u128,
    finished: u128,
    threads: usize,
    files: &[(String, Vec<u8>)],
    spec: Value,
) -> Value {
    let mut outputs: Vec<&str> = files.iter().map(|f| f.0.as_str()).collect();
    outputs.push("manifest.json");
    json!({
        "tool": "ldl",
        "tool_version": env!("CARGO_PKG_VERSION"),
        "kind": kind,
        "spec_hash": hash,
        "seed": seed,
        "started_unix_ms": started as u64,
        "finished_unix_ms": finished as u64,
        "threads": threads,
        "deterministic": true,
        "outputs": outputs,
        "spec": spec,
    })
}

/// All files are rendered before the first write, so failures leave nothing behind.
fn write_outputs(dir: &Path, files: Vec<(String, Vec<u8>)>, manifest: Value) -> Result<()> {
    fs::create_dir_all(dir)?;
    for (name, bytes) in files {
        fs::write(dir.join(name), bytes)?;
    }
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises") + "\n";
    fs::write(dir.join("manifest.json"), text)?;
    Ok(())
}

fn run_validate(v: ValidateArgs) -> Result<()> {
    let kind = match &v.kind {
        Some(k) => Some(Kind::parse(k).ok_or_else(|| Error::Config(format!("unknown experiment kind {k}")))?),
        None => None,
    };
    let spec = build_spec(kind, &v.exp)?;
    let valid = lab::validate(&spec)?;
    for w in &valid.warnings {
        eprintln!("ldl-warning: {w}");
    }
    let out = json!({ "spec_hash": valid.spec.hash(), "spec": valid.spec });
    println!("{}", serde_json::to_string_pretty(&out).expect("serialises"));
    Ok(())
}

fn run_tsp(a: TspArgs) -> Result<()> {
    let text =
        fs::read_to_string(&a.input).map_err(|e| Error::Config(format!("cannot read {}: {e}", a.input.display())))?;
    let points = read_points(text.as_bytes())?;
    let started = now_ms();
    let result: TspResult = match a.solver.as_str() {
        "exact" => exact_tsp(&points, DEFAULT_EXACT_CAP)?,
        "box" => {
            let (lo, hi) = points.bounding_box().ok_or_else(|| Error::Domain("point set is empty".into()))?;
            let side = (hi.x - lo.x).max(hi.y - lo.y) + 1;
            let square = PointSet::square(lo, side);
            box_tsp_diluted(&points, &square, a.box_side, BoxOptions::default())?.result
        }
        _ => tsp_auto(&points),
    };
    let finished = now_ms();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["index", "x", "y"]).map_err(csv_err)?;
    for (i, p) in result.order.iter().enumerate() {
        w.write_record([i.to_string(), p.x.to_string(), p.y.to_string()]).map_err(csv_err)?;
    }
    let csv = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    let summary = json!({
        "points": points.len(),
        "length": result.length,
        "exact": result.exact,
        "solver": a.solver,
    });
    let files = vec![
        ("tsp.csv".to_string(), csv),
        ("tsp.json".to_string(), (serde_json::to_string_pretty(&summary).expect("serialises") + "\n").into_bytes()),
    ];
    let m = manifest("tsp", "", 0, started, finished, 1, &files, json!({ "input": a.input, "solver": a.solver }));
    write_outputs(&a.out, files, m)
}

fn run_walk(a: WalkArgs) -> Result<()> {
    let base = if a.base == "line" { Base::Line } else { Base::Plane };
    let dist = ldl_core::lattice::StepDistribution::srw(base);
    let started = now_ms();
    let t = sample_walk(&dist, a.steps, a.seed);
    let finished = now_ms();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["t", "x", "y"]).map_err(csv_err)?;
    for (i, p) in t.positions.iter().enumerate() {
        let p: &Point = p;
        w.write_record([i.to_string(), p.x.to_string(), p.y.to_string()]).map_err(csv_err)?;
    }
    let csv = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    let files = vec![("walk.csv".to_string(), csv)];
    let m = manifest("walk", "", a.seed, started, finished, 1, &files, json!({ "steps": a.steps, "base": a.base }));
    write_outputs(&a.out, files, m)
}
