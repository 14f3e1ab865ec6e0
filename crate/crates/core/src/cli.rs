//! The `turning` command line. Argument parsing and command bodies live here
//! so the binary stays a one-line wrapper and tests can drive commands
//! in-process.

use crate::distance::{d2_general, dp_general, dp_turning};
use crate::error::{Error, Result};
use crate::lattice::{exact_table, generate_lattice, Lattice};
use crate::manifest::{digest_file, manifest_path, sha256_hex, FileDigest, RunManifest, STDOUT};
use crate::network::{disorder_report, read_network, DisorderOptions};
use crate::plot::{trace_svg, Table, DEFAULT_COLUMNS};
use crate::polygon::{read_polygon, Polygon};
use crate::regular::{d2_circle_polygon, d2_circle_regular, d2_regular_closed, d2_segment_vs, OrderedTarget, PolygonTrace, RegularPolygonSpec};
use crate::sim::{
    metadata_path, run_rupture_observed, run_t1_observed, PatchSize, RecordContext, RuptureConfig, SimulationTrace,
    T1Config, TraceRecord, TRACE_HEADER,
};
use crate::sweep::{parse_range, rectangle_sweep};
use crate::turning::turning_function;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(name = "turning", version, about = "Turning-function distances and turning disorders of planar networks")]
pub struct Cli {
    /// Write the run manifest here instead of next to the first output file.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// 2-turning distance between polygons, regular polygons, circles, or segments.
    Distance(DistanceArgs),
    /// The six turning disorders of a network file.
    Disorder(DisorderArgs),
    /// Archimedean lattice patches and their limiting disorders.
    #[command(subcommand)]
    Lattice(LatticeCommand),
    /// Run a stochastic network process and write its disorder trace.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// SVG line plot of trace columns.
    Plot(PlotArgs),
    /// Repeat a run from its manifest and check the outputs match.
    Rerun(RerunArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct DistanceArgs {
    #[arg(long, value_name = "FILE")]
    pub poly_a: Option<PathBuf>,
    #[arg(long, value_name = "FILE")]
    pub poly_b: Option<PathBuf>,
    /// Exponent of the p-turning distance (polygon and regular pairs only).
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Regular polygon side count; give twice for a regular pair.
    #[arg(long = "regular", value_name = "N")]
    pub regular: Vec<u64>,
    /// Compare against the circle.
    #[arg(long)]
    pub circle: bool,
    /// Compare the two-sided segment R2.
    #[arg(long)]
    pub segment: bool,
    #[arg(long, value_name = "FILE")]
    pub poly: Option<PathBuf>,
    /// Rectangle aspect-ratio sweep `start:end:step` against square, hexagon, and circle.
    #[arg(long, value_name = "A:B:STEP")]
    pub rect_sweep: Option<String>,
    /// Write the sweep CSV here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct DisorderArgs {
    #[arg(long, value_name = "FILE")]
    pub network: PathBuf,
    /// Ignore faces touching the boundary.
    #[arg(long)]
    pub interior_only: bool,
    /// Also write per-face distances as CSV.
    #[arg(long, value_name = "OUT.csv")]
    pub per_face: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum LatticeCommand {
    /// Write a lattice patch as network JSON.
    Generate(GenerateArgs),
    /// Print the limiting disorders in closed form.
    Exact(ExactArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GenerateArgs {
    #[arg(long)]
    pub name: String,
    /// Half-width of the square window, in lattice edge lengths.
    #[arg(long)]
    pub size: u32,
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ExactArgs {
    #[arg(long)]
    pub name: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum SimulateCommand {
    /// T1 moves with Tutte re-embedding, from a Voronoi start.
    T1(T1Args),
    /// Edge rupture on a fixed hexagonal patch.
    Rupture(RuptureArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct TraceArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,
    /// Record every this many accepted moves.
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
    /// Write the network at every recorded step into this directory.
    #[arg(long, value_name = "DIR")]
    pub snapshots: Option<PathBuf>,
    /// No progress on standard error.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct T1Args {
    #[arg(long, default_value_t = 1000)]
    pub cells: usize,
    #[arg(long, default_value_t = 3000)]
    pub moves: usize,
    /// Edges shorter than this are collapsed when measuring.
    #[arg(long, default_value_t = 1e-6)]
    pub merge_tolerance: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub trace: TraceArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct RuptureArgs {
    #[arg(long, default_value_t = 1067)]
    pub cells: usize,
    /// Explicit patch rows (with --cols) instead of --cells.
    #[arg(long, requires = "cols")]
    pub rows: Option<usize>,
    #[arg(long, requires = "rows")]
    pub cols: Option<usize>,
    #[arg(long, default_value_t = 900)]
    pub ruptures: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub trace: TraceArgs,
}

#[derive(Debug, Args, Serialize)]
pub struct PlotArgs {
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,
    #[arg(long, value_name = "FIG.svg")]
    pub out: PathBuf,
    /// Comma-separated columns (default: the six disorders).
    #[arg(long, value_delimiter = ',')]
    pub columns: Vec<String>,
    #[arg(long)]
    pub title: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct RerunArgs {
    #[arg(long = "from", value_name = "MANIFEST")]
    pub from: PathBuf,
}

/// Exit status for an error: 2 for bad input, 1 for internal failures.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        2
    } else {
        1
    }
}

/// Parses `args` (program name first) and runs the command, writing results
/// to `out` and diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return e.exit_code();
        }
    };
    let recorded: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(cli, recorded, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// What a command read and wrote, for its manifest.
#[derive(Default)]
struct Session {
    stdout: String,
    inputs: Vec<PathBuf>,
    outputs: Vec<PathBuf>,
    seed: Option<u64>,
}

impl Session {
    fn input(&mut self, path: &Path) -> PathBuf {
        self.inputs.push(path.to_path_buf());
        path.to_path_buf()
    }

    fn write_file(&mut self, path: &Path, contents: &str) -> Result<()> {
        std::fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }
}

fn execute(cli: Cli, recorded: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if let Command::Rerun(args) = &cli.command {
        return rerun(&args.from, out, err);
    }
    let mut session = Session::default();
    let (name, options) = match &cli.command {
        Command::Distance(a) => {
            cmd_distance(a, &mut session)?;
            ("distance", serde_json::to_value(a))
        }
        Command::Disorder(a) => {
            cmd_disorder(a, &mut session)?;
            ("disorder", serde_json::to_value(a))
        }
        Command::Lattice(LatticeCommand::Generate(a)) => {
            cmd_generate(a, &mut session)?;
            ("lattice generate", serde_json::to_value(a))
        }
        Command::Lattice(LatticeCommand::Exact(a)) => {
            cmd_exact(a, &mut session)?;
            ("lattice exact", serde_json::to_value(a))
        }
        Command::Simulate(SimulateCommand::T1(a)) => {
            cmd_t1(a, &mut session, err)?;
            ("simulate t1", serde_json::to_value(a))
        }
        Command::Simulate(SimulateCommand::Rupture(a)) => {
            cmd_rupture(a, &mut session, err)?;
            ("simulate rupture", serde_json::to_value(a))
        }
        Command::Plot(a) => {
            cmd_plot(a, &mut session)?;
            ("plot", serde_json::to_value(a))
        }
        Command::Rerun(_) => unreachable!("handled above"),
    };
    out.write_all(session.stdout.as_bytes())?;
    out.flush()?;

    let target = cli.manifest.clone().or_else(|| session.outputs.first().map(|p| manifest_path(p)));
    if let Some(path) = target {
        let digests = |paths: &[PathBuf]| paths.iter().map(|p| digest_file(p)).collect::<Result<Vec<_>>>();
        let mut outputs = digests(&session.outputs)?;
        if !session.stdout.is_empty() {
            outputs.push(FileDigest { path: STDOUT.into(), sha256: sha256_hex(session.stdout.as_bytes()) });
        }
        let manifest = RunManifest {
            tool: "turning".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: name.into(),
            args: recorded,
            options: options.expect("options serialize"),
            seed: session.seed,
            inputs: digests(&session.inputs)?,
            outputs,
        };
        manifest.write(&path)?;
    }
    Ok(())
}

fn rerun(path: &Path, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let manifest = RunManifest::read(path)?;
    let changed = manifest.changed_inputs();
    if !changed.is_empty() {
        return Err(Error::InvalidConfig(format!("inputs changed since the recorded run: {}", changed.join(", "))));
    }
    let mut argv = vec!["turning".to_string()];
    argv.extend(manifest.args.iter().cloned());
    let cli = Cli::try_parse_from(&argv).map_err(|e| Error::Parse(format!("manifest arguments: {e}")))?;
    if matches!(cli.command, Command::Rerun(_)) {
        return Err(Error::InvalidConfig("a manifest cannot record a rerun".into()));
    }
    let mut captured = Vec::new();
    execute(cli, manifest.args.clone(), &mut captured, err)?;
    out.write_all(&captured)?;

    let mut mismatched = Vec::new();
    for d in &manifest.outputs {
        let now = if d.path == STDOUT { sha256_hex(&captured) } else { digest_file(Path::new(&d.path))?.sha256 };
        if now != d.sha256 {
            mismatched.push(d.path.clone());
        }
    }
    if !mismatched.is_empty() {
        return Err(Error::Io(format!("rerun did not reproduce: {}", mismatched.join(", "))));
    }
    writeln!(err, "reproduced {} output(s) from {}", manifest.outputs.len(), path.display())?;
    Ok(())
}

/// `x` with 17 significant digits, positional unless very large or small.
pub fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..17).contains(&e) {
        format!("{:.*}", (16 - e) as usize, x)
    } else {
        format!("{x:.16e}")
    }
}

#[derive(Debug, Serialize)]
struct DistanceOutput {
    distance: f64,
    p: f64,
    method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimal_shift_t: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimal_rotation_theta: Option<f64>,
}

fn load_polygon(flag: &str, path: &Path, session: &mut Session) -> Result<Polygon> {
    read_polygon(&session.input(path))
        .map(|l| l.polygon)
        .map_err(|e| Error::InvalidConfig(format!("--{flag} {}: {e}", path.display())))
}

fn cmd_distance(a: &DistanceArgs, session: &mut Session) -> Result<()> {
    if let Some(range) = &a.rect_sweep {
        return rect_sweep(a, range, session);
    }
    if !(a.p >= 1.0) {
        return Err(Error::UnsupportedExponent(a.p));
    }
    let formula_only = |what: &str| {
        if a.p != 2.0 {
            Err(Error::InvalidConfig(format!("{what} distances are only available for p = 2")))
        } else {
            Ok(())
        }
    };
    let general = |r: crate::distance::DistanceResult, method| DistanceOutput {
        distance: r.distance,
        p: r.p,
        method,
        formula: None,
        optimal_shift_t: Some(r.optimal_shift_t),
        optimal_rotation_theta: Some(r.optimal_rotation_theta),
    };
    let closed = |distance, formula: String| DistanceOutput {
        distance,
        p: 2.0,
        method: "closed_form",
        formula: Some(formula),
        optimal_shift_t: None,
        optimal_rotation_theta: None,
    };
    let result = match (&a.poly_a, &a.poly_b, a.regular.as_slice(), a.circle, a.segment, &a.poly) {
        (Some(pa), Some(pb), [], false, false, None) => {
            let (pa, pb) = (load_polygon("poly-a", pa, session)?, load_polygon("poly-b", pb, session)?);
            let r = if a.p == 2.0 { d2_general(&pa, &pb) } else { dp_general(&pa, &pb, a.p)? };
            general(r, "general")
        }
        (None, None, &[n, k], false, false, None) => {
            if a.p == 2.0 {
                let r = d2_regular_closed(n, k)?;
                closed(r.distance, r.tag())
            } else {
                let (f, g) = (RegularPolygonSpec::new(n)?.turning_function(), RegularPolygonSpec::new(k)?.turning_function());
                general(dp_turning(&f, &g, a.p)?, "general")
            }
        }
        (None, None, [], true, false, Some(path)) => {
            formula_only("circle")?;
            let poly = load_polygon("poly", path, session)?;
            let trace = PolygonTrace::from_turning(&turning_function(&poly))?;
            closed(d2_circle_polygon(&trace), "circle_polygon".into())
        }
        (None, None, &[n], true, false, None) => {
            formula_only("circle")?;
            closed(d2_circle_regular(n)?, "circle_regular".into())
        }
        (None, None, &[n], false, true, None) => {
            formula_only("segment")?;
            closed(d2_segment_vs(OrderedTarget::Regular(n))?, "segment_regular".into())
        }
        (None, None, [], true, true, None) => {
            formula_only("segment")?;
            closed(d2_segment_vs(OrderedTarget::Circle)?, "segment_circle".into())
        }
        _ => {
            return Err(Error::InvalidConfig(
                "choose one of: --poly-a F --poly-b F | --regular N --regular K | --circle --poly F | \
                 --circle --regular N | --segment --regular N | --segment --circle | --rect-sweep A:B:STEP"
                    .into(),
            ))
        }
    };
    if a.json {
        session.stdout = serde_json::to_string_pretty(&result).expect("serializes") + "\n";
    } else {
        let s = &mut session.stdout;
        let _ = writeln!(s, "distance {}", sig17(result.distance));
        let _ = writeln!(s, "p {}", result.p);
        let _ = writeln!(s, "method {}", result.method);
        if let Some(f) = &result.formula {
            let _ = writeln!(s, "formula {f}");
        }
        if let (Some(t), Some(theta)) = (result.optimal_shift_t, result.optimal_rotation_theta) {
            let _ = writeln!(s, "t {}", sig17(t));
            let _ = writeln!(s, "theta {}", sig17(theta));
        }
    }
    Ok(())
}

fn rect_sweep(a: &DistanceArgs, range: &str, session: &mut Session) -> Result<()> {
    if a.poly_a.is_some() || a.poly_b.is_some() || !a.regular.is_empty() || a.circle || a.segment || a.poly.is_some() {
        return Err(Error::InvalidConfig("--rect-sweep takes no shape arguments".into()));
    }
    let (start, end, step) = parse_range(range)?;
    let rows = rectangle_sweep(start, end, step)?;
    let mut csv = String::from("aspect,d_square,d_hexagon,d_circle,ordering\n");
    for r in &rows {
        let _ = writeln!(csv, "{},{},{},{},{}", r.aspect, r.d_square, r.d_hexagon, r.d_circle, r.ordering());
    }
    match &a.out {
        Some(path) => session.write_file(path, &csv),
        None => {
            session.stdout = csv;
            Ok(())
        }
    }
}

fn cmd_disorder(a: &DisorderArgs, session: &mut Session) -> Result<()> {
    let net = read_network(&session.input(&a.network))
        .map_err(|e| Error::InvalidConfig(format!("--network {}: {e}", a.network.display())))?;
    let options = DisorderOptions { interior_only: a.interior_only, per_face: a.per_face.is_some() };
    let report = disorder_report(&net, &options)?;
    if let (Some(path), Some(rows)) = (&a.per_face, &report.per_face) {
        let mut csv = String::from("face,sides,area,regular,hexagon,circle\n");
        for r in rows {
            let _ = writeln!(csv, "{},{},{},{},{},{}", r.face, r.sides, r.area, r.regular, r.hexagon, r.circle);
        }
        session.write_file(path, &csv)?;
    }
    if a.json {
        let summary = crate::network::DisorderReport { per_face: None, ..report };
        session.stdout = serde_json::to_string_pretty(&summary).expect("serializes") + "\n";
    } else {
        let s = &mut session.stdout;
        let _ = writeln!(s, "faces {}", report.faces);
        for (name, v) in ["D", "D_w", "D6", "D6_w", "Dc", "Dc_w"].iter().zip(report.values()) {
            let _ = writeln!(s, "{name:<5} {}", sig17(v));
        }
    }
    Ok(())
}

fn lattice_named(name: &str) -> Result<Lattice> {
    name.parse::<Lattice>()
}

fn cmd_generate(a: &GenerateArgs, session: &mut Session) -> Result<()> {
    let net = generate_lattice(lattice_named(&a.name)?, a.size)?;
    session.write_file(&a.out, &(net.to_json() + "\n"))?;
    let _ = writeln!(session.stdout, "wrote {} faces, {} vertices to {}", net.face_count(), net.vertices().len(), a.out.display());
    Ok(())
}

fn cmd_exact(a: &ExactArgs, session: &mut Session) -> Result<()> {
    let lattice = lattice_named(&a.name)?;
    let table = exact_table(lattice)?;
    if a.json {
        let doc = json!({ "lattice": lattice.name(), "entries": table });
        session.stdout = serde_json::to_string_pretty(&doc).expect("serializes") + "\n";
    } else {
        let s = &mut session.stdout;
        let _ = writeln!(s, "lattice {}", lattice.name());
        for e in &table {
            let _ = writeln!(s, "{:<5} {:.4}  {}  {}", e.measure, e.value, sig17(e.value), e.expression);
        }
    }
    Ok(())
}

/// Writes trace rows as they arrive, plus optional snapshots and progress.
struct TraceSink<'a> {
    file: BufWriter<File>,
    snapshots: Option<PathBuf>,
    written: Vec<PathBuf>,
    progress: Option<&'a mut dyn Write>,
    total: usize,
}

impl<'a> TraceSink<'a> {
    fn open(args: &TraceArgs, total: usize, err: &'a mut dyn Write) -> Result<Self> {
        let file = File::create(&args.trace).map_err(|e| Error::Io(format!("{}: {e}", args.trace.display())))?;
        let mut file = BufWriter::new(file);
        writeln!(file, "{TRACE_HEADER}")?;
        file.flush()?;
        if let Some(dir) = &args.snapshots {
            std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        }
        Ok(TraceSink {
            file,
            snapshots: args.snapshots.clone(),
            written: Vec::new(),
            progress: if args.quiet { None } else { Some(err) },
            total,
        })
    }

    fn record(&mut self, rec: &TraceRecord, ctx: &RecordContext<'_>) -> Result<()> {
        writeln!(self.file, "{}", rec.csv_line())?;
        self.file.flush()?;
        if let Some(dir) = &self.snapshots {
            let path = dir.join(format!("step_{:06}.json", rec.step));
            ctx.network().write_json(&path)?;
            self.written.push(path);
        }
        if let Some(p) = self.progress.as_mut() {
            let _ = writeln!(p, "step {}/{}  faces {}  D {:.4}  D6 {:.4}  Dc {:.4}", rec.step, self.total, rec.faces, rec.values[0], rec.values[2], rec.values[4]);
        }
        Ok(())
    }
}

fn finish_trace(args: &TraceArgs, sink: TraceSink<'_>, trace: &SimulationTrace, session: &mut Session) -> Result<()> {
    session.outputs.push(args.trace.clone());
    let meta = metadata_path(&args.trace);
    session.write_file(&meta, &(serde_json::to_string_pretty(&trace.metadata).expect("serializes") + "\n"))?;
    session.outputs.extend(sink.written);
    session.seed = Some(args.seed);
    let last = trace.last().expect("trace has a first record");
    let _ = writeln!(
        session.stdout,
        "{} accepted, {} records, final faces {}, trace {}",
        trace.metadata.accepted,
        trace.records.len(),
        last.faces,
        args.trace.display()
    );
    Ok(())
}

fn cmd_t1(a: &T1Args, session: &mut Session, err: &mut dyn Write) -> Result<()> {
    let mut config = T1Config::new(a.cells, a.moves, a.trace.seed);
    config.merge_tolerance = a.merge_tolerance;
    config.trace_stride = a.trace.stride;
    config.validate()?;
    let mut sink = TraceSink::open(&a.trace, a.moves, err)?;
    let trace = run_t1_observed(&config, &mut |rec, ctx| sink.record(rec, ctx))?;
    finish_trace(&a.trace, sink, &trace, session)
}

fn cmd_rupture(a: &RuptureArgs, session: &mut Session, err: &mut dyn Write) -> Result<()> {
    let mut config = RuptureConfig::new(a.cells, a.ruptures, a.trace.seed);
    if let (Some(rows), Some(cols)) = (a.rows, a.cols) {
        config.patch = PatchSize::Grid { rows, cols };
    }
    config.trace_stride = a.trace.stride;
    config.validate()?;
    let mut sink = TraceSink::open(&a.trace, a.ruptures, err)?;
    let trace = run_rupture_observed(&config, &mut |rec, ctx| sink.record(rec, ctx))?;
    finish_trace(&a.trace, sink, &trace, session)
}

fn cmd_plot(a: &PlotArgs, session: &mut Session) -> Result<()> {
    let path = session.input(&a.trace);
    let text = std::fs::read_to_string(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let table = Table::parse(&text).map_err(|e| Error::InvalidConfig(format!("--trace {}: {e}", path.display())))?;
    let columns: Vec<String> =
        if a.columns.is_empty() { DEFAULT_COLUMNS.iter().map(|c| c.to_string()).collect() } else { a.columns.clone() };
    let title = a.title.clone().unwrap_or_else(|| {
        path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "trace".into())
    });
    let svg = trace_svg(&table, &columns, &title)?;
    session.write_file(&a.out, &svg)?;
    let _ = writeln!(session.stdout, "plotted {} series over {} rows to {}", columns.len(), table.rows.len(), a.out.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("turning").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig17(0.5), "0.50000000000000000");
        assert_eq!(sig17(12.25), "12.250000000000000");
        assert_eq!(sig17(0.0), "0");
        assert_eq!(sig17(1e-9), "1.0000000000000001e-9");
    }

    #[test]
    fn regular_pair_and_usage_errors() {
        let (code, out, _) = run_str(&["distance", "--regular", "4", "--regular", "6"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("distance 0.5013"), "{out}");
        assert!(out.contains("formula gcd+consecutive"));
        assert_eq!(run_str(&["distance", "--regular", "4"]).0, 2);
        assert_eq!(run_str(&["distance", "--regular", "1", "--regular", "4"]).0, 2);
        assert_eq!(run_str(&["no-such-command"]).0, 2);
        assert_eq!(run_str(&["--version"]).0, 0);
    }

    #[test]
    fn unknown_lattice_lists_supported() {
        let (code, _, err) = run_str(&["lattice", "exact", "--name", "5.5.5"]);
        assert_eq!(code, 2);
        assert!(err.contains("4.8.8"));
    }
}
