//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 malformed input or IO failure,
//! 3 internal invariant violation.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::arrangement::{decode, Arrangement, GaussPairCode};
use crate::canonical::{symmetry, EquivalenceMode};
use crate::catalog::{catalog_file_name, parse_lines, write_catalog};
use crate::generator::{enumerate_up_to, CountRow, Level};
use crate::oracle::{brute_force, LimitMode, MAX_ORACLE_POINTS};
use crate::regions::{defining_vectors, region_graph, RegionColor};
use crate::render::{layout, to_svg, OuterFace, SvgStyle};

/// Environment variable holding the default output directory.
pub const OUT_DIR_ENV: &str = "TWOCIRCLES_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "twocircles", version, about = "Two transversal circles on the sphere")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate all classes level by level and write catalog files.
    Enumerate(EnumerateArgs),
    /// Print configuration and flow counts per level.
    Count(CountArgs),
    /// Brute-force enumeration over all Gauss-pair codes.
    Oracle(OracleArgs),
    /// Region graph, defining vectors and signed matrix of each input.
    Invariants(InvariantsArgs),
    /// Curve-swap symmetry of each input.
    Symmetry(InputArgs),
    /// Draw each input as an SVG file.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct ModeArgs {
    /// Do not identify configurations that differ by exchanging the curves.
    #[arg(long)]
    pub no_swap: bool,
    /// Do not identify mirror images.
    #[arg(long)]
    pub no_reflection: bool,
}

impl ModeArgs {
    pub fn mode(&self) -> EquivalenceMode {
        EquivalenceMode {
            allow_swap: !self.no_swap,
            allow_reflection: !self.no_reflection,
        }
    }
}

fn even_points(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n < 2 || !n.is_multiple_of(2) {
        return Err(format!("must be even and at least 2, got {n}"));
    }
    Ok(n)
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long, default_value_t = 10, value_parser = even_points)]
    pub max_points: usize,
    #[arg(long, env = OUT_DIR_ENV, default_value = "catalog")]
    pub out_dir: PathBuf,
    /// Overwrite existing catalog files.
    #[arg(long)]
    pub force: bool,
    /// Print counts only.
    #[arg(long)]
    pub no_write: bool,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, default_value_t = 10, value_parser = even_points)]
    pub max_points: usize,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 8, value_parser = even_points)]
    pub max_points: usize,
    /// Permit the 10-point search.
    #[arg(long)]
    pub allow_long: bool,
    /// Try every curve-2 order instead of those starting at point 1.
    #[arg(long)]
    pub full: bool,
    /// Also write one catalog file per level into this directory.
    #[arg(long)]
    pub catalog_dir: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Files or catalog directories; standard input when empty or `-`.
    pub inputs: Vec<PathBuf>,
    /// A single code given inline, e.g. "GP1 2 1 2 + -".
    #[arg(long, conflicts_with = "inputs")]
    pub code: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, env = OUT_DIR_ENV, default_value = "catalog")]
    pub out_dir: PathBuf,
    /// Face id drawn as the unbounded region.
    #[arg(long)]
    pub outer_face: Option<usize>,
    #[arg(long, default_value = "#c0392b")]
    pub stroke_1: String,
    #[arg(long, default_value = "#2471a3")]
    pub stroke_2: String,
    #[arg(long, default_value_t = 2.0)]
    pub stroke_width: f64,
    /// Canvas width and height in pixels.
    #[arg(long, default_value_t = 400, value_parser = clap::value_parser!(u32).range(16..))]
    pub size: u32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_INPUT,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    run_cli(cli, stdout, stderr)
}

pub fn run_cli(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut out = String::new();
    let mut diagnostics = String::new();
    let result = match cli.jobs {
        Some(jobs) => match rayon::ThreadPoolBuilder::new().num_threads(jobs as usize).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command, &mut out, &mut diagnostics)),
            Err(e) => Err(Failure::Internal(format!("thread pool: {e}"))),
        },
        None => dispatch(&cli.command, &mut out, &mut diagnostics),
    };
    let _ = stdout.write_all(out.as_bytes());
    let _ = stderr.write_all(diagnostics.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: &Command, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    match command {
        Command::Enumerate(a) => cmd_enumerate(a, out).map(|_| EXIT_OK),
        Command::Count(a) => cmd_count(a, out).map(|_| EXIT_OK),
        Command::Oracle(a) => cmd_oracle(a, out, err).map(|_| EXIT_OK),
        Command::Invariants(a) => cmd_invariants(a, out, err),
        Command::Symmetry(a) => cmd_symmetry(a, out, err),
        Command::Render(a) => cmd_render(a, out, err),
    }
}

fn levels(max_points: usize, mode: EquivalenceMode) -> Result<Vec<Level>, Failure> {
    enumerate_up_to(max_points, mode).map_err(|e| Failure::Internal(e.to_string()))
}

/// Writes one file per level. Refuses to touch existing files unless `force`.
fn write_catalogs(dir: &Path, levels: &[Level], force: bool) -> Result<Vec<PathBuf>, Failure> {
    let paths: Vec<PathBuf> = levels.iter().map(|l| dir.join(catalog_file_name(l.n_points))).collect();
    if !force {
        if let Some(p) = paths.iter().find(|p| p.exists()) {
            return Err(Failure::Usage(format!(
                "{} exists; pass --force to overwrite",
                p.display()
            )));
        }
    }
    fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
    for (level, path) in levels.iter().zip(&paths) {
        fs::write(path, write_catalog(level)).map_err(|e| io_failure(path, e))?;
    }
    Ok(paths)
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut String) -> Result<(), Failure> {
    let levels = levels(a.max_points, a.mode.mode())?;
    for l in &levels {
        let _ = writeln!(out, "points={} classes={}", l.n_points, l.len());
    }
    if !a.no_write {
        for p in write_catalogs(&a.out_dir, &levels, a.force)? {
            let _ = writeln!(out, "wrote {}", p.display());
        }
    }
    let counts: Vec<String> = levels.iter().map(|l| l.len().to_string()).collect();
    let _ = writeln!(out, "counts: {}", counts.join(" "));
    Ok(())
}

fn write_table(rows: &[CountRow], out: &mut String) -> Result<(), Failure> {
    let _ = writeln!(out, "{:>4} {:>8} {:>10} {:>11} {:>6}", "2n", "configs", "symmetric", "asymmetric", "flows");
    for r in rows {
        if r.flows != r.symmetric + 2 * r.asymmetric || r.flows < r.configurations {
            return Err(Failure::Internal(format!("inconsistent counts at {} points", r.n_points)));
        }
        let _ = writeln!(
            out,
            "{:>4} {:>8} {:>10} {:>11} {:>6}",
            r.n_points, r.configurations, r.symmetric, r.asymmetric, r.flows
        );
    }
    Ok(())
}

fn cmd_count(a: &CountArgs, out: &mut String) -> Result<(), Failure> {
    let levels = levels(a.max_points, a.mode.mode())?;
    let rows: Vec<CountRow> = levels.iter().map(Level::count_row).collect();
    write_table(&rows, out)?;
    let flows: Vec<String> = rows.iter().map(|r| r.flows.to_string()).collect();
    let _ = writeln!(out, "flows: {}", flows.join(" "));
    Ok(())
}

fn cmd_oracle(a: &OracleArgs, out: &mut String, err: &mut String) -> Result<(), Failure> {
    if a.max_points > MAX_ORACLE_POINTS {
        return Err(Failure::Usage(format!(
            "the oracle supports at most {MAX_ORACLE_POINTS} points"
        )));
    }
    if a.max_points == MAX_ORACLE_POINTS && !a.allow_long {
        return Err(Failure::Usage(format!(
            "{MAX_ORACLE_POINTS} points takes a long time; pass --allow-long"
        )));
    }
    let limit = if a.full { LimitMode::Full } else { LimitMode::SymmetricReduced };
    let mut rows = Vec::new();
    let mut levels = Vec::new();
    for points in (2..=a.max_points).step_by(2) {
        let result = brute_force(points, limit).map_err(|e| Failure::Usage(e.to_string()))?;
        let _ = writeln!(
            err,
            "oracle points={points} accepted={} classes={} elapsed={:.3}s",
            result.raw_accepted,
            result.classes.len(),
            result.elapsed.as_secs_f64()
        );
        let level = result.to_level();
        rows.push(level.count_row());
        levels.push(level);
    }
    write_table(&rows, out)?;
    if let Some(dir) = &a.catalog_dir {
        for p in write_catalogs(dir, &levels, a.force)? {
            let _ = writeln!(out, "wrote {}", p.display());
        }
    }
    Ok(())
}

/// One parsed and decoded input record.
struct Record {
    source: String,
    line: usize,
    code: GaussPairCode,
    arr: Arrangement,
}

fn catalog_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| io_failure(dir, e))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("catalog-") && n.ends_with(".txt"))
        })
        .collect();
    files.sort();
    Ok(files)
}

/// Collects inputs, reporting every bad line on `err`. The flag is true when
/// at least one line was rejected.
fn read_records(input: &InputArgs, err: &mut String) -> Result<(Vec<Record>, bool), Failure> {
    let mut sources: Vec<(String, String)> = Vec::new();
    if let Some(code) = &input.code {
        sources.push(("--code".into(), code.clone()));
    } else if input.inputs.is_empty() || input.inputs.iter().any(|p| p.as_os_str() == "-") {
        if input.inputs.len() > 1 {
            return Err(Failure::Usage("`-` cannot be combined with other inputs".into()));
        }
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        sources.push(("<stdin>".into(), text));
    } else {
        for path in &input.inputs {
            let files = if path.is_dir() { catalog_files(path)? } else { vec![path.clone()] };
            for f in files {
                let text = fs::read_to_string(&f).map_err(|e| io_failure(&f, e))?;
                sources.push((f.display().to_string(), text));
            }
        }
    }
    let mut records = Vec::new();
    let mut rejected = false;
    for (source, text) in &sources {
        for line in parse_lines(text) {
            match line.code.and_then(|code| decode(&code).map(|arr| (code, arr))) {
                Ok((code, arr)) => records.push(Record {
                    source: source.clone(),
                    line: line.line_number,
                    code,
                    arr,
                }),
                Err(e) => {
                    rejected = true;
                    let _ = writeln!(err, "{source}:{}: {e}", line.line_number);
                }
            }
        }
    }
    Ok((records, rejected))
}

fn exit_for(rejected: bool) -> i32 {
    if rejected {
        EXIT_INPUT
    } else {
        EXIT_OK
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn cmd_invariants(a: &InvariantsArgs, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    let (records, rejected) = read_records(&a.input, err)?;
    let blocks: Vec<Result<String, Failure>> = records
        .par_iter()
        .map(|r| invariants_block(r, a.format))
        .collect();
    for b in blocks {
        out.push_str(&b?);
    }
    Ok(exit_for(rejected))
}

fn invariants_block(r: &Record, format: Format) -> Result<String, Failure> {
    let graph = region_graph(&r.arr).map_err(|e| Failure::Internal(e.to_string()))?;
    let n = r.code.n_points();
    if !graph.is_bipartite() || graph.region_count() != n + 2 || graph.edges.len() != 2 * n {
        return Err(Failure::Internal(format!(
            "{}:{}: region graph violates its invariants",
            r.source, r.line
        )));
    }
    let vectors = defining_vectors(&graph);
    let black = graph.colors.iter().filter(|&&c| c == RegionColor::Black).count();
    let white = graph.region_count() - black;
    let mut s = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(s, "{}", r.code);
            let _ = writeln!(s, "  points:  {n}");
            let _ = writeln!(s, "  regions: {} ({black} black, {white} white)", graph.region_count());
            let _ = writeln!(s, "  vectors: {vectors}");
            match &graph.matrix {
                Some(m) => {
                    let _ = writeln!(s, "  matrix:");
                    for row in m.to_string().lines() {
                        let _ = writeln!(s, "  {row}");
                    }
                }
                None => {
                    let _ = writeln!(s, "  matrix:  none (regions share several arcs)");
                }
            }
            s.push('\n');
        }
        Format::Kv => {
            let _ = writeln!(s, "code={}", r.code);
            let _ = writeln!(s, "points={n}");
            let _ = writeln!(s, "regions={}", graph.region_count());
            let _ = writeln!(s, "black={black}");
            let _ = writeln!(s, "white={white}");
            let _ = writeln!(s, "black_degrees={}", join(&vectors.black_degrees, ","));
            let _ = writeln!(s, "white_degrees={}", join(&vectors.white_degrees, ","));
            let _ = writeln!(s, "simple={}", graph.simple);
            if let Some(m) = &graph.matrix {
                let rows: Vec<String> = (0..m.rows)
                    .map(|i| join(&m.entries[i * m.cols..(i + 1) * m.cols], ","))
                    .collect();
                let _ = writeln!(s, "matrix={}", rows.join(";"));
            }
            s.push_str("end\n");
        }
    }
    Ok(s)
}

fn cmd_symmetry(a: &InputArgs, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    let (records, rejected) = read_records(a, err)?;
    let reports: Vec<_> = records
        .par_iter()
        .map(|r| symmetry(&r.arr).map_err(|e| Failure::Internal(e.to_string())))
        .collect::<Result<_, _>>()?;
    let (mut symmetric, mut asymmetric) = (0, 0);
    for (r, s) in records.iter().zip(&reports) {
        let _ = writeln!(
            out,
            "{} automorphisms={} reflection={} {}",
            s.letter(),
            s.automorphism_count,
            if s.has_reflection_automorphism { "yes" } else { "no" },
            r.code
        );
        if s.has_swap_automorphism {
            symmetric += 1;
        } else {
            asymmetric += 1;
        }
    }
    let _ = writeln!(
        out,
        "# symmetric={symmetric} asymmetric={asymmetric} flows={}",
        symmetric + 2 * asymmetric
    );
    Ok(exit_for(rejected))
}

fn cmd_render(a: &RenderArgs, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    let (records, rejected) = read_records(&a.input, err)?;
    let style = SvgStyle {
        curve1_color: a.stroke_1.clone(),
        curve2_color: a.stroke_2.clone(),
        stroke_width: a.stroke_width,
        canvas_size: a.size,
    };
    let outer = a.outer_face.map_or(OuterFace::Auto, OuterFace::Face);
    // index within each point count, in input order
    let mut seen = std::collections::BTreeMap::<usize, usize>::new();
    let names: Vec<usize> = records
        .iter()
        .map(|r| {
            let i = seen.entry(r.code.n_points()).or_insert(0);
            *i += 1;
            *i
        })
        .collect();
    let drawings: Vec<Result<(String, String), Failure>> = records
        .par_iter()
        .zip(&names)
        .map(|(r, &index)| {
            let lay = layout(&r.arr, outer).map_err(|e| match e {
                crate::render::RenderError::NoSuchFace(_) => {
                    Failure::Usage(format!("{}:{}: {e}", r.source, r.line))
                }
                _ => Failure::Internal(format!("{}:{}: {e}", r.source, r.line)),
            })?;
            let letter = symmetry(&r.arr).map_err(|e| Failure::Internal(e.to_string()))?.letter();
            let name = format!("{}-{index}-{letter}.svg", r.code.n_points());
            Ok((name, to_svg(&r.arr, &lay, &style)))
        })
        .collect();
    let drawings: Vec<(String, String)> = drawings.into_iter().collect::<Result<_, _>>()?;
    fs::create_dir_all(&a.out_dir).map_err(|e| io_failure(&a.out_dir, e))?;
    for (name, svg) in drawings {
        let path = a.out_dir.join(name);
        fs::write(&path, svg).map_err(|e| io_failure(&path, e))?;
        let _ = writeln!(out, "wrote {}", path.display());
    }
    Ok(exit_for(rejected))
}
