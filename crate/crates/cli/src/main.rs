//! Command-line front end: bounds table, local arithmetic, isomorphism tests,
//! Vinberg's algorithm, overlattices and the full classification.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use hyperlat::coxeter::VolumeVerdict;
use hyperlat::edge_bounds::{bounds_table, BoundRow};
use hyperlat::lattice::{overlattices, GramMatrix, QuadLattice};
use hyperlat::local::{anisotropic_places, z_isomorphic, IsomVerdict, NoWitness};
use hyperlat::pipeline::{self, BoundMode};
use hyperlat::vinberg::{self, Budget, NormPolicy};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "hyperlat", version, about = "Exact tools for integral hyperbolic lattices")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Reserved; every algorithm is deterministic, so this has no effect.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Width bounds for the outermost edge, one row per angle set.
    Bounds {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Anisotropy over the rationals of a rank-4 lattice.
    Aniso {
        lattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral isomorphism of two lattices.
    Isom {
        a: PathBuf,
        b: PathBuf,
        /// Coordinate bound of the explicit isometry search.
        #[arg(long, default_value_t = pipeline::ISOM_HEIGHT)]
        height: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Vinberg's algorithm.
    Vinberg {
        lattice: PathBuf,
        /// `all`, or a comma-separated list of root norms such as `1,2`.
        #[arg(long, default_value = "all")]
        norms: String,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the Coxeter diagram in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integral overlattices, optionally keeping the basis vectors as roots.
    Extensions {
        lattice: PathBuf,
        /// Require every basis vector to stay a root of its norm.
        #[arg(long)]
        keep_basis_roots: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The full classification of (1,2)-reflective anisotropic lattices of rank 4.
    Classify {
        #[command(flatten)]
        budget: BudgetArgs,
        /// Bound |g34| by the maximum over both face labelings.
        #[arg(long)]
        symmetric_bounds: bool,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Dump the edge configurations.
    Enumerate {
        #[arg(long)]
        symmetric_bounds: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args, Debug, Clone)]
struct BudgetArgs {
    #[arg(long, default_value_t = 64)]
    max_roots: usize,
    #[arg(long, default_value_t = 1_000_000)]
    max_priority: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        Budget { max_roots: self.max_roots, max_priority: BigRational::from_integer(BigInt::from(self.max_priority)) }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<hyperlat::Error> for Failure {
    fn from(e: hyperlat::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn io_err(path: &Path, e: std::io::Error) -> Failure {
    Failure::Compute(format!("{}: {e}", path.display()))
}

/// Parses `{"gram": [[int, ...], ...], "name": string?}`.
fn parse_lattice(text: &str, origin: &str) -> Outcome<QuadLattice> {
    let bad = |msg: String| Failure::Usage(format!("{origin}: {msg}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON: {e}")))?;
    let rows = v.get("gram").and_then(Value::as_array).ok_or_else(|| bad("missing array \"gram\"".into()))?;
    let n = rows.len();
    let mut m = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad(format!("gram[{i}] is not an array")))?;
        if row.len() != n {
            return Err(bad(format!("gram[{i}] has {} entries, expected {n}", row.len())));
        }
        let mut r = Vec::with_capacity(n);
        for (j, x) in row.iter().enumerate() {
            let parsed = match x {
                Value::Number(num) if num.is_i64() || num.is_u64() => num.to_string().parse::<BigInt>().ok(),
                Value::String(s) => s.trim().parse::<BigInt>().ok(),
                _ => None,
            };
            r.push(parsed.ok_or_else(|| bad(format!("gram[{i}][{j}] = {x} is not an integer")))?);
        }
        m.push(r);
    }
    let gram = GramMatrix::new(m).map_err(|e| bad(e.to_string()))?;
    let mut l = QuadLattice::new(gram).map_err(|e| bad(e.to_string()))?;
    if let Some(name) = v.get("name") {
        let name = name.as_str().ok_or_else(|| bad("\"name\" is not a string".into()))?;
        l = l.with_name(name);
    }
    Ok(l)
}

fn read_lattice(path: &Path) -> Outcome<QuadLattice> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_lattice(&text, &path.display().to_string())
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> Outcome<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_err(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| io_err(path, e))?;
    tmp.persist(path).map_err(|e| io_err(path, e.error))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Outcome<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

struct Run {
    command: &'static str,
    parameters: Value,
    threads: usize,
    seed: u64,
    started: SystemTime,
    clock: Instant,
}

impl Run {
    /// `{"header": ..., "body": ...}`; only the header carries timing.
    fn envelope<T: Serialize>(&self, body: &T) -> Outcome<String> {
        let header = json!({
            "tool": "hyperlat",
            "version": env!("CARGO_PKG_VERSION"),
            "report_version": pipeline::REPORT_VERSION,
            "command": self.command,
            "parameters": self.parameters,
            "threads": self.threads,
            "seed": self.seed,
            "started_unix": self.started.duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            "elapsed_ms": self.clock.elapsed().as_millis() as u64,
        });
        let body = serde_json::to_value(body).map_err(|e| Failure::Compute(e.to_string()))?;
        let mut s = serde_json::to_string_pretty(&json!({ "header": header, "body": body })).map_err(|e| Failure::Compute(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

fn bounds_csv(rows: &[BoundRow]) -> String {
    let mut s = String::from("angle_set,t_raw,t_display\n");
    for r in rows {
        let set = r.angle_set.denominators().map(|m| format!("pi/{m}")).join(" ");
        match &r.bound {
            Some(b) => s.push_str(&format!("{set},{:.8},{:.2}\n", b.t, b.t_display)),
            None => s.push_str(&format!("{set},,\n")),
        }
    }
    s
}

#[derive(Serialize)]
struct BoundsBody {
    rows: Vec<BoundsRowOut>,
    max: Option<BoundsRowOut>,
}

#[derive(Serialize, Clone)]
struct BoundsRowOut {
    angle_set: [u32; 5],
    t_raw: Option<String>,
    t_display: Option<String>,
    t_symmetric: Option<String>,
    flag: Option<String>,
    detail: Option<hyperlat::edge_bounds::EdgeBound>,
}

fn bounds_body(rows: &[BoundRow]) -> BoundsBody {
    let out: Vec<BoundsRowOut> = rows
        .iter()
        .map(|r| BoundsRowOut {
            angle_set: r.angle_set.denominators(),
            t_raw: r.bound.as_ref().map(|b| format!("{:.8}", b.t)),
            t_display: r.bound.as_ref().map(|b| format!("{:.2}", b.t_display)),
            t_symmetric: r.bound.as_ref().map(|b| format!("{:.8}", b.t_symmetric)),
            flag: r.flag.clone(),
            detail: r.bound.clone(),
        })
        .collect();
    let max = rows
        .iter()
        .zip(&out)
        .filter_map(|(r, o)| r.bound.as_ref().map(|b| (b.t, o)))
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, o)| o.clone());
    BoundsBody { rows: out, max }
}

fn isom_json(v: &IsomVerdict) -> Value {
    match v {
        IsomVerdict::Yes(u) => json!({
            "verdict": "yes",
            "transform": u.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        }),
        IsomVerdict::No(w) => json!({ "verdict": "no", "witness": no_witness(w) }),
        IsomVerdict::Unknown => json!({ "verdict": "unknown" }),
    }
}

fn no_witness(w: &NoWitness) -> Value {
    serde_json::to_value(w).unwrap_or(Value::Null)
}

fn parse_norms(s: &str) -> Outcome<NormPolicy> {
    if s.trim() == "all" {
        return Ok(NormPolicy::AllDivisors);
    }
    let norms = s
        .split(',')
        .map(|t| t.trim().parse::<u64>().map_err(|_| Failure::Usage(format!("--norms: '{t}' is not a positive integer"))))
        .collect::<Outcome<Vec<u64>>>()?;
    NormPolicy::explicit(norms).map_err(|e| Failure::Usage(format!("--norms: {e}")))
}

fn run(cli: Cli) -> Outcome<()> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Failure::Compute(e.to_string()))?;
    }
    let threads = rayon::current_num_threads();
    let mut ctx = Run {
        command: "",
        parameters: Value::Null,
        threads,
        seed: cli.seed,
        started: SystemTime::now(),
        clock: Instant::now(),
    };
    match cli.command {
        Command::Bounds { format, out } => {
            let rows = bounds_table();
            ctx.command = "bounds";
            let text = match format {
                Format::Csv => bounds_csv(&rows),
                Format::Json => {
                    ctx.parameters = json!({ "format": "json" });
                    ctx.envelope(&bounds_body(&rows))?
                }
            };
            emit(out.as_deref(), &text)
        }
        Command::Aniso { lattice, out } => {
            let l = read_lattice(&lattice)?;
            let places = anisotropic_places(&l)?;
            ctx.command = "aniso";
            ctx.parameters = json!({ "lattice": lattice.display().to_string() });
            let body = json!({
                "anisotropic": !places.is_empty(),
                "anisotropic_places": places.iter().map(|p| p.code()).collect::<Vec<_>>(),
                "lattice": l,
            });
            emit(out.as_deref(), &ctx.envelope(&body)?)
        }
        Command::Isom { a, b, height, out } => {
            let (la, lb) = (read_lattice(&a)?, read_lattice(&b)?);
            ctx.command = "isom";
            ctx.parameters = json!({ "a": a.display().to_string(), "b": b.display().to_string(), "height": height });
            emit(out.as_deref(), &ctx.envelope(&isom_json(&z_isomorphic(&la, &lb, height)))?)
        }
        Command::Vinberg { lattice, norms, budget, dot, out } => {
            let l = read_lattice(&lattice)?;
            let policy = parse_norms(&norms)?;
            let b = budget.budget();
            let report = vinberg::run(&l, &policy, &b)?;
            let volume = report.diagram.volume_verdict()?;
            if let Some(p) = &dot {
                write_atomic(p, &report.diagram.to_dot(l.name().unwrap_or("lattice")))?;
            }
            ctx.command = "vinberg";
            ctx.parameters = json!({ "lattice": lattice.display().to_string(), "norms": norms, "budget": b });
            let body = json!({
                "lattice": l,
                "volume": match volume {
                    VolumeVerdict::Compact => "compact",
                    VolumeVerdict::FiniteVolumeNonCompact => "finite_volume_non_compact",
                    VolumeVerdict::NotFiniteVolume => "not_finite_volume",
                },
                "bad_group": if report.bad_finite { "finite" } else { "infinite" },
                "report": report,
            });
            emit(out.as_deref(), &ctx.envelope(&body)?)
        }
        Command::Extensions { lattice, keep_basis_roots, out } => {
            let l = read_lattice(&lattice)?;
            let roots: Vec<(Vec<BigInt>, BigInt)> = if keep_basis_roots {
                (0..l.rank())
                    .map(|i| ((0..l.rank()).map(|j| BigInt::from((i == j) as i64)).collect(), l.gram().get(i, i).clone()))
                    .collect()
            } else {
                Vec::new()
            };
            let ext: Vec<Value> = overlattices(&l, &roots)
                .iter()
                .map(|m| {
                    json!({
                        "index": m.index.to_string(),
                        "basis_change": m.basis_change.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                        "gram": m.gram,
                    })
                })
                .collect();
            ctx.command = "extensions";
            ctx.parameters = json!({ "lattice": lattice.display().to_string(), "keep_basis_roots": keep_basis_roots });
            emit(out.as_deref(), &ctx.envelope(&json!({ "lattice": l, "overlattices": ext }))?)
        }
        Command::Classify { budget, symmetric_bounds, report } => {
            let b = budget.budget();
            let mode = if symmetric_bounds { BoundMode::Symmetric } else { BoundMode::Printed };
            let r = pipeline::classify_with(&b, mode)?;
            ctx.command = "classify";
            ctx.parameters = json!({ "budget": b, "bound_mode": mode });
            emit(report.as_deref(), &ctx.envelope(&r)?)
        }
        Command::Enumerate { symmetric_bounds, out } => {
            let mode = if symmetric_bounds { BoundMode::Symmetric } else { BoundMode::Printed };
            let en = pipeline::enumerate(mode);
            ctx.command = "enumerate";
            ctx.parameters = json!({ "bound_mode": mode });
            emit(out.as_deref(), &ctx.envelope(&en)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
