//! `optcolor`: generate, color, verify and benchmark graphs from the shell.
//!
//! Exit codes: 0 success, 1 invalid parameters, 2 usage error, 3 parse
//! error, 4 verification failure, 5 I/O failure.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use optcolor::bench::GraphStats;
use optcolor::io::mesh::{hexahedral_mesh, tetrahedral_mesh, triangle_mesh};
use optcolor::io::{
    generate_rmat, load_edge_list_declared, load_matrix_market, shuffle_vertices, write_edge_list, RmatPreset,
};
use optcolor::lockstep::{cyclic_lanes, lockstep_color};
use optcolor::{
    color_graph, relative_speedup, run_benchmark_with, verify_coloring, write_csv, Algorithm, BenchReport, Coloring,
    Error, Graph, ParallelConfig, UNCOLORED,
};

const EXIT_INVALID: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(name = "optcolor", version, about = "Parallel optimistic graph coloring")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an R-MAT or mesh graph and write it as an edge list.
    Generate(GenerateArgs),
    /// Color a graph, verify the result and report statistics.
    Color(ColorArgs),
    /// Check a coloring file (one color per line) against a graph.
    Verify(VerifyArgs),
    /// Time algorithms over a list of thread counts.
    Bench(BenchArgs),
    /// Simulate lockstep (SIMT) execution of optimistic coloring.
    Lockstep(LockstepArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    RmatEr,
    RmatG,
    RmatB,
    TriMesh,
    TetMesh,
    HexMesh,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Mm,
    Edgelist,
}

#[derive(Args)]
struct GenerateArgs {
    preset: Preset,
    /// log2 of the vertex count (R-MAT presets).
    #[arg(long, default_value_t = 16)]
    scale: u32,
    /// Edge samples per vertex (R-MAT presets).
    #[arg(long, default_value_t = 8)]
    edge_factor: u64,
    /// Grid dimensions for mesh presets, e.g. 300x200 or 40x40x30.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Randomly relabel vertices (seeded by --seed).
    #[arg(long)]
    shuffle: bool,
    /// Edge-list output path [default: <preset>-<size>.el]
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file (Matrix Market or edge list).
    input: PathBuf,
    /// Input format [default: mm for .mtx files, edgelist otherwise]
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value = "rsoc")]
    algorithm: Algorithm,
    /// Worker threads [default: available parallelism]
    #[arg(long)]
    threads: Option<usize>,
    /// Write the JSON stats report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the coloring, one color per line.
    #[arg(long)]
    coloring: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Coloring file: line i holds the color of vertex i.
    coloring: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_delimiter = ',', default_value = "seq,catalyurek,rsoc")]
    algorithms: Vec<Algorithm>,
    #[arg(long, value_delimiter = ',', default_value = "1")]
    threads: Vec<usize>,
    #[arg(long, default_value_t = optcolor::bench::DEFAULT_REPEATS)]
    repeats: usize,
    /// Directory receiving one JSON report per algorithm.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write one CSV row per run.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct LockstepArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Lane count (vertices dealt cyclically) or one lane id per vertex.
    #[arg(long, value_delimiter = ',', default_value = "1")]
    lanes: Vec<usize>,
    #[arg(long, default_value_t = 100)]
    cap: usize,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: io::Error) -> Self {
        Failure::new(EXIT_IO, format!("{}: {e}", path.display()))
    }

    fn from_error(path: Option<&Path>, e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::EntryOutOfBounds { .. }
            | Error::UnsupportedFormat(_)
            | Error::VertexOutOfRange { .. } => EXIT_PARSE,
            Error::LengthMismatch { .. } | Error::IncompleteColoring { .. } | Error::Verification { .. } => EXIT_VERIFY,
            Error::Io(_) => EXIT_IO,
            Error::Capacity(_) | Error::InvalidParams(_) => EXIT_INVALID,
        };
        match path {
            Some(p) => Failure::new(code, format!("{}: {e}", p.display())),
            None => Failure::new(code, e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Color(a) => cmd_color(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Lockstep(a) => cmd_lockstep(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("optcolor: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load_graph(args: &InputArgs) -> Result<Graph, Failure> {
    let path = &args.input;
    let file = File::open(path).map_err(|e| Failure::io(path, e))?;
    let format = args.format.unwrap_or_else(|| {
        if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("mtx")) {
            Format::Mm
        } else {
            Format::Edgelist
        }
    });
    let reader = BufReader::new(file);
    let loaded = match format {
        Format::Mm => load_matrix_market(reader),
        Format::Edgelist => load_edge_list_declared(reader),
    };
    loaded.map_err(|e| Failure::from_error(Some(path), e))
}

fn graph_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(|e| Failure::io(path, e))
}

fn parse_dims<const N: usize>(dims: &str) -> Result<[usize; N], Failure> {
    let parts: Vec<usize> = dims
        .split('x')
        .map(|p| p.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::new(EXIT_INVALID, format!("bad --dims {dims:?}")))?;
    parts
        .try_into()
        .map_err(|_| Failure::new(EXIT_INVALID, format!("--dims needs {N} components, got {dims:?}")))
}

fn cmd_generate(a: GenerateArgs) -> CmdResult {
    let rmat = match a.preset {
        Preset::RmatEr => Some(RmatPreset::Er),
        Preset::RmatG => Some(RmatPreset::Good),
        Preset::RmatB => Some(RmatPreset::Bad),
        _ => None,
    };
    let (graph, label, samples) = if let Some(preset) = rmat {
        let params = preset.params(a.scale, a.edge_factor, a.seed);
        let samples = params.num_samples().map_err(|e| Failure::from_error(None, e))?;
        let g = generate_rmat(&params).map_err(|e| Failure::from_error(None, e))?;
        (g, format!("{preset}-s{}-e{}", a.scale, a.edge_factor), Some(samples))
    } else {
        let dims = a
            .dims
            .as_deref()
            .ok_or_else(|| Failure::new(EXIT_INVALID, "mesh presets require --dims"))?;
        let g = match a.preset {
            Preset::TriMesh => {
                let [x, y] = parse_dims(dims)?;
                triangle_mesh(x, y)
            }
            Preset::TetMesh => {
                let [x, y, z] = parse_dims(dims)?;
                tetrahedral_mesh(x, y, z)
            }
            _ => {
                let [x, y, z] = parse_dims(dims)?;
                hexahedral_mesh(x, y, z)
            }
        }
        .map_err(|e| Failure::from_error(None, e))?;
        let name = match a.preset {
            Preset::TriMesh => "tri-mesh",
            Preset::TetMesh => "tet-mesh",
            _ => "hex-mesh",
        };
        (g, format!("{name}-{dims}"), None)
    };
    let graph = if a.shuffle {
        shuffle_vertices(&graph, a.seed).0
    } else {
        graph
    };

    let path = a.output.unwrap_or_else(|| PathBuf::from(format!("{label}.el")));
    let mut out = create(&path)?;
    write_edge_list(&graph, &mut out)
        .and_then(|()| out.flush())
        .map_err(|e| Failure::io(&path, e))?;

    println!("output: {}", path.display());
    println!("vertices: {}", graph.num_vertices());
    if let Some(s) = samples {
        println!("edge samples: {s}");
    }
    println!("edges: {}", graph.num_edges());
    println!("max_degree: {}", graph.max_degree());
    Ok(())
}

fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn cmd_color(a: ColorArgs) -> CmdResult {
    let g = load_graph(&a.input)?;
    let threads = a.threads.unwrap_or_else(default_threads);
    let (coloring, stats) =
        color_graph(&g, a.algorithm, &ParallelConfig::new(threads)).map_err(|e| Failure::from_error(None, e))?;

    if let Some(path) = &a.coloring {
        let mut out = create(path)?;
        write_coloring(&coloring, &mut out).map_err(|e| Failure::io(path, e))?;
    }

    let report = serde_json::json!({
        "graph_name": graph_name(&a.input.input),
        "graph_stats": GraphStats::of(&g),
        "stats": stats,
    });
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &a.output {
        Some(path) => {
            fs::write(path, text + "\n").map_err(|e| Failure::io(path, e))?;
            println!(
                "{}: {} colors, {} rounds, {} conflicts, {:.3} ms",
                stats.algorithm,
                stats.num_colors,
                stats.rounds,
                stats.conflicts_total,
                stats.wall_time_ns as f64 / 1e6
            );
        }
        None => println!("{text}"),
    }

    let violations = verify_coloring(&g, &coloring).map_err(|e| Failure::from_error(None, e))?;
    if !violations.is_empty() {
        return Err(Failure::new(
            EXIT_VERIFY,
            format!("improper coloring: {} violations", violations.violations.len()),
        ));
    }
    Ok(())
}

fn write_coloring(c: &Coloring, out: &mut impl Write) -> io::Result<()> {
    for &color in c.as_slice() {
        writeln!(out, "{color}")?;
    }
    out.flush()
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    let file = File::open(path).map_err(|e| Failure::io(path, e))?;
    let mut colors = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Failure::io(path, e))?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let c = t.parse().map_err(|_| {
            Failure::new(
                EXIT_PARSE,
                format!("{}: line {}: bad color {t:?}", path.display(), i + 1),
            )
        })?;
        colors.push(c);
    }
    Ok(Coloring::from_vec(colors))
}

fn cmd_verify(a: VerifyArgs) -> CmdResult {
    let g = load_graph(&a.input)?;
    let coloring = read_coloring(&a.coloring)?;
    let report = verify_coloring(&g, &coloring).map_err(|e| Failure::from_error(Some(&a.coloring), e))?;
    if report.is_empty() {
        println!("proper: {} vertices", g.num_vertices());
        return Ok(());
    }
    for v in &report.violations {
        println!("conflict: {} {} (color {})", v.u, v.v, v.color);
    }
    Err(Failure::new(
        EXIT_VERIFY,
        format!("{} conflicting edges", report.violations.len()),
    ))
}

fn cmd_bench(a: BenchArgs) -> CmdResult {
    let g = load_graph(&a.input)?;
    let name = graph_name(&a.input.input);
    let base = ParallelConfig::new(1);
    let mut reports: Vec<BenchReport> = Vec::new();
    for &alg in &a.algorithms {
        let report = run_benchmark_with(&g, &name, alg, &a.threads, a.repeats, &base)
            .map_err(|e| Failure::from_error(None, e))?;
        reports.push(report);
    }

    if let Some(dir) = &a.output {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        for r in &reports {
            let path = dir.join(format!("{name}-{}.json", r.algorithm));
            fs::write(&path, r.to_json() + "\n").map_err(|e| Failure::io(&path, e))?;
        }
    }
    if let Some(path) = &a.csv {
        write_csv(&reports, create(path)?).map_err(|e| Failure::from_error(Some(path), e))?;
    }

    print_summary(&name, &reports);
    Ok(())
}

fn print_summary(name: &str, reports: &[BenchReport]) {
    let Some(first) = reports.first() else { return };
    let s = first.graph_stats;
    println!(
        "{name}: {} vertices, {} edges, max degree {}, {} repeats",
        s.num_vertices, s.num_edges, s.max_degree, first.repeats
    );
    let mut header = format!("{:>7}", "threads");
    for r in reports {
        header += &format!(
            " {:>12} {:>6} {:>6} {:>9}",
            format!("{} ms", r.algorithm),
            "colors",
            "rounds",
            "conflicts"
        );
    }
    // Speedups are relative to the first algorithm listed.
    for r in &reports[1..] {
        header += &format!(" {:>18}", format!("{}/{}", first.algorithm, r.algorithm));
    }
    println!("{header}");
    for entry in &first.entries {
        let t = entry.thread_count;
        let mut row = format!("{t:>7}");
        for r in reports {
            let e = r.entry(t).expect("same thread list for every report");
            let colors = e.runs.iter().map(|s| s.num_colors).max().unwrap_or(0);
            row += &format!(
                " {:>12.3} {:>6} {:>6.2} {:>9.1}",
                e.aggregate.mean_wall_time_ns / 1e6,
                colors,
                e.aggregate.mean_rounds,
                e.aggregate.mean_conflicts
            );
        }
        for r in &reports[1..] {
            let speedup = relative_speedup(r, first)
                .into_iter()
                .find(|&(threads, _)| threads == t)
                .map_or(f64::NAN, |(_, x)| x);
            row += &format!(" {speedup:>18.3}");
        }
        println!("{row}");
    }
}

fn cmd_lockstep(a: LockstepArgs) -> CmdResult {
    let g = load_graph(&a.input)?;
    let n = g.num_vertices();
    let lanes = match a.lanes.as_slice() {
        &[count] if n != 1 => cyclic_lanes(n, count),
        explicit => explicit.to_vec(),
    };
    let out = lockstep_color(&g, &lanes, a.cap).map_err(|e| Failure::from_error(None, e))?;
    for (r, c) in out.color_trace.iter().enumerate() {
        let colors: Vec<String> = c
            .as_slice()
            .iter()
            .map(|&x| if x == UNCOLORED { "-".into() } else { x.to_string() })
            .collect();
        println!("round {}: {}", r + 1, colors.join(" "));
    }
    if out.converged {
        println!("converged in {} rounds", out.rounds_executed);
    } else {
        println!("not converged after {} rounds", out.rounds_executed);
    }
    Ok(())
}
