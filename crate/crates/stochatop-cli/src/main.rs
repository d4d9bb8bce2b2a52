//! Command-line interface for the stochatop toolkit: sampling random
//! complexes, exact cohomology analysis, threshold tables, Monte Carlo
//! experiments, suspensions, collapses, and pattern counting.
//!
//! Exit codes: 0 on success, 1 on computational failure (unreadable or
//! malformed inputs, resource limits), 2 on usage errors. Every subcommand
//! is deterministic given its flags, and `--json` emits a schema-stable
//! object on stdout.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

/// Writes a line to stdout, exiting quietly if the receiving end of a pipe
/// has closed (e.g. `stochatop ... | head`).
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let mut lock = std::io::stdout().lock();
        if writeln!(lock, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

/// `outln!` without the trailing newline.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let mut lock = std::io::stdout().lock();
        if write!(lock, $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

use stochatop::cohomology::{betti_numbers, cup_length, sq_is_nontrivial};
use stochatop::collapse::{collapse_to_dim, free_faces};
use stochatop::complex::SimplicialComplex;
use stochatop::experiments::{resolve_pattern, run as run_experiment, ExperimentConfig};
use stochatop::field::Field;
use stochatop::io::{write_complex, write_complex_file};
use stochatop::models::{lower_closure, upper_closure, ParamVector, SampleSeed, Tail};
use stochatop::params::{cohomology_region, s1, s2, upper_model_params, UpperModelParams};
use stochatop::subcount::count_subcomplex_copies;

const FORMAT_HELP: &str = "\
COMPLEX FILE FORMAT
  Plain text. `#` starts a comment. The first significant line is
  `n <vertex count>`; every following line lists the vertices of one maximal
  simplex, separated by spaces (vertices are 0-based integers below n). The
  complex is the downward closure of the listed simplices.

      # hollow triangle
      n 3
      0 1
      1 2
      0 2

EXPERIMENT CONFIG SCHEMA (JSON)
  {
    \"model\": \"lower\" | \"upper\",
    \"n\": [20, 30, 40],              // strictly ascending scales
    \"params\": {
      \"alpha\": [0.6, 0.1],          // exponent per dimension: p_i = n^-alpha_i
      \"tail\": \"zero\" | \"one\",     // beyond the list: never / always present
      \"dim_cap\": 2                  // optional, defaults to the list length
    },
    \"trials\": 100,
    \"seed\": 2024,
    \"measurements\": [
      {\"kind\": \"betti\"},
      {\"kind\": \"cup_length\"},
      {\"kind\": \"sq\", \"i\": 1, \"d\": 2},
      {\"kind\": \"collapse\", \"d\": 1},
      {\"kind\": \"copy_count\", \"pattern\": \"torus\"}
    ],
    \"field\": \"q\",                  // optional: q, f2, f3, f5, ...
    \"restarts\": 16                  // optional collapse restarts
  }

BUNDLED DATASETS (usable wherever a pattern or file is expected)
  torus, projective_plane, dunce_hat, complex_projective_plane, klein_bottle
";

#[derive(Parser)]
#[command(
    name = "stochatop",
    version,
    about = "Random simplicial complexes with exact cohomology",
    after_long_help = FORMAT_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random complex and write it in the complex text format.
    Sample(SampleArgs),
    /// Betti numbers, cup length, Steenrod squares, strong components, and
    /// collapse attempts for a complex file.
    Analyze(AnalyzeArgs),
    /// Threshold table (s1, s2, region) and upper-model exponents for an
    /// exponent vector.
    Thresholds(ThresholdsArgs),
    /// Run a Monte Carlo experiment from a JSON config; writes CSV and a
    /// summary JSON.
    Experiment(ExperimentArgs),
    /// Iterate the suspension-like construction on a complex file.
    Suspend(SuspendArgs),
    /// Randomized discrete collapse of a complex file toward a target
    /// dimension.
    Collapse(CollapseArgs),
    /// Count embeddings, automorphisms, and copies of a pattern inside a
    /// host complex.
    Count(CountArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Lower,
    Upper,
}

#[derive(Clone, Copy, ValueEnum)]
enum TailArg {
    Zero,
    One,
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Tail {
        match t {
            TailArg::Zero => Tail::Zero,
            TailArg::One => Tail::One,
        }
    }
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

#[derive(Args)]
struct SampleArgs {
    /// Closure to take: lower (boundary-complete) or upper (downward).
    #[arg(long, value_enum)]
    model: ModelArg,
    /// Number of vertices.
    #[arg(long)]
    n: usize,
    /// Exponents per dimension (face probability n^-alpha_i), e.g. 0.5,1.0.
    #[arg(long, value_delimiter = ',', num_args = 1.., required_unless_present = "p")]
    alpha: Option<Vec<f64>>,
    /// Probabilities per dimension instead of exponents, e.g. 1,0.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "alpha")]
    p: Option<Vec<f64>>,
    /// Behavior above the supplied dimensions.
    #[arg(long, value_enum, default_value = "zero")]
    tail: TailArg,
    /// Hard dimension cap (defaults to the exponent list length).
    #[arg(long)]
    dim_cap: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Trial index within the seed's stream.
    #[arg(long, default_value_t = 0)]
    trial: u64,
    /// Output file; the complex goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Complex file (or bundled dataset name).
    #[arg(long = "in")]
    input: String,
    /// Coefficient field: q, f2, f3, f5, ...
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: Field,
    /// Betti numbers (default when no analysis flag is given).
    #[arg(long)]
    betti: bool,
    /// Cup length (default when no analysis flag is given).
    #[arg(long)]
    cup_length: bool,
    /// Steenrod square nontriviality table over F2.
    #[arg(long)]
    sq: bool,
    /// Strong connectivity components of the given dimension.
    #[arg(long)]
    components: Option<usize>,
    /// Attempt random collapses to the given dimension.
    #[arg(long)]
    collapse: Option<usize>,
    /// Restart budget for --collapse.
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Seed for --collapse.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ThresholdsArgs {
    /// Exponents per dimension, e.g. 0.45,0.2.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    alpha: Vec<f64>,
    /// Behavior above the supplied dimensions.
    #[arg(long, value_enum, default_value = "zero")]
    tail: TailArg,
    /// Dimension cap for a probability-one tail.
    #[arg(long)]
    dim_cap: Option<usize>,
    /// Largest degree k to tabulate (defaults to the exponent count).
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ExperimentArgs {
    /// JSON config file (see --help for the schema).
    #[arg(long)]
    config: PathBuf,
    /// Worker threads; 1 forces the sequential path, default uses all cores.
    #[arg(long)]
    workers: Option<usize>,
    /// Directory for results.csv, summary.json, and trends.svg.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Also write an SVG of measurement means against n.
    #[arg(long)]
    svg: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SuspendArgs {
    /// Complex file (or bundled dataset name).
    #[arg(long = "in")]
    input: String,
    /// Number of times to apply the construction.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Output file; the complex goes to stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CollapseArgs {
    /// Complex file (or bundled dataset name).
    #[arg(long = "in")]
    input: String,
    /// Target dimension.
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 16)]
    restarts: usize,
    /// Write the final complex of the reported attempt here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CountArgs {
    /// Pattern complex file (or bundled dataset name).
    #[arg(long)]
    pattern: String,
    /// Host complex file (or bundled dataset name).
    #[arg(long)]
    host: String,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Usage(String),
    Run(stochatop::Error),
}

impl From<stochatop::Error> for Failure {
    fn from(e: stochatop::Error) -> Failure {
        Failure::Run(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

type CliResult = Result<(), Failure>;

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Analyze(args) => cmd_analyze(args),
        Command::Thresholds(args) => cmd_thresholds(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::Suspend(args) => cmd_suspend(args),
        Command::Collapse(args) => cmd_collapse(args),
        Command::Count(args) => cmd_count(args),
    };
    match outcome {
        Ok(()) => {}
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}

fn print_json<T: Serialize>(value: &T) {
    outln!(
        "{}",
        serde_json::to_string_pretty(value).expect("output serializes")
    );
}

/// Reads a complex from a bundled dataset name or a file path.
fn load_complex(reference: &str) -> Result<SimplicialComplex, Failure> {
    Ok(resolve_pattern(reference)?)
}

#[derive(Serialize)]
struct ComplexReport {
    file: Option<PathBuf>,
    n_vertices: usize,
    dim: Option<usize>,
    f_vector: Vec<usize>,
    fingerprint: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    complex: Option<String>,
}

/// Writes or prints a produced complex, plus its metadata.
fn emit_complex(complex: &SimplicialComplex, out: Option<PathBuf>, json: bool) -> CliResult {
    if let Some(path) = &out {
        write_complex_file(path, complex)?;
    }
    let report = ComplexReport {
        file: out.clone(),
        n_vertices: complex.n_vertices(),
        dim: complex.dim(),
        f_vector: complex.f_vector().clone(),
        fingerprint: format!("{:016x}", complex.fingerprint()),
        complex: if out.is_none() && json {
            Some(write_complex(complex))
        } else {
            None
        },
    };
    if json {
        print_json(&report);
    } else if let Some(path) = &out {
        outln!("wrote {}", path.display());
        outln!("f_vector {:?}", report.f_vector);
    } else {
        out!("{}", write_complex(complex));
        eprintln!("f_vector {:?}", report.f_vector);
    }
    Ok(())
}

fn build_params(
    n: usize,
    alpha: Option<Vec<f64>>,
    p: Option<Vec<f64>>,
    tail: Tail,
    dim_cap: Option<usize>,
) -> Result<ParamVector, Failure> {
    let params = match (alpha, p) {
        (Some(a), None) => ParamVector::new(a, tail, dim_cap),
        (None, Some(probs)) => ParamVector::from_probabilities(n, &probs, tail, dim_cap),
        _ => return Err(usage("give exactly one of --alpha or --p")),
    };
    params.map_err(|e| usage(e.to_string()))
}

fn cmd_sample(args: SampleArgs) -> CliResult {
    if args.n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let params = build_params(args.n, args.alpha, args.p, args.tail.into(), args.dim_cap)?;
    let seed = SampleSeed::new(args.seed, args.trial);
    let complex = match args.model {
        ModelArg::Lower => lower_closure(args.n, &params, seed)?,
        ModelArg::Upper => upper_closure(args.n, &params, seed)?,
    };
    emit_complex(&complex, args.out, args.json)
}

#[derive(Serialize)]
struct SqEntry {
    i: usize,
    d: usize,
    nontrivial: bool,
}

#[derive(Serialize)]
struct ComponentsReport {
    dim: usize,
    count: usize,
    /// Number of `dim`-simplices in each component.
    sizes: Vec<usize>,
}

#[derive(Serialize)]
struct CollapseReport {
    target_dim: usize,
    success: bool,
    final_dim: Option<usize>,
    pairs_removed: usize,
    attempts: usize,
    initial_free_pairs: usize,
}

#[derive(Serialize)]
struct AnalyzeReport {
    input: String,
    field: String,
    n_vertices: usize,
    dim: Option<usize>,
    f_vector: Vec<usize>,
    betti: Option<Vec<usize>>,
    cup_length: Option<usize>,
    sq: Option<Vec<SqEntry>>,
    components: Option<ComponentsReport>,
    collapse: Option<CollapseReport>,
}

fn cmd_analyze(args: AnalyzeArgs) -> CliResult {
    let complex = load_complex(&args.input)?;
    let default_ops = !args.betti
        && !args.cup_length
        && !args.sq
        && args.components.is_none()
        && args.collapse.is_none();
    let want_betti = args.betti || default_ops;
    let want_cup = args.cup_length || default_ops;

    let betti = if want_betti {
        Some(betti_numbers(&complex, args.field)?)
    } else {
        None
    };
    let cup = if want_cup {
        Some(cup_length(&complex, args.field)?)
    } else {
        None
    };
    let sq_table = if args.sq {
        let mut entries = Vec::new();
        if let Some(top) = complex.dim() {
            for d in 0..=top {
                for i in 0..=(top - d) {
                    entries.push(SqEntry {
                        i,
                        d,
                        nontrivial: sq_is_nontrivial(&complex, i, d)?,
                    });
                }
            }
        }
        Some(entries)
    } else {
        None
    };
    let components = match args.components {
        None => None,
        Some(d) => {
            let comps = complex.strong_components(d)?;
            Some(ComponentsReport {
                dim: d,
                count: comps.len(),
                sizes: comps.iter().map(|c| c.simplices_of_dim(d).len()).collect(),
            })
        }
    };
    let collapse = match args.collapse {
        None => None,
        Some(d) => {
            if args.restarts == 0 {
                return Err(usage("--restarts must be at least 1"));
            }
            let outcome = collapse_to_dim(&complex, d, args.seed, args.restarts)?;
            Some(CollapseReport {
                target_dim: d,
                success: outcome.success,
                final_dim: outcome.complex.dim(),
                pairs_removed: outcome.pairs_removed,
                attempts: outcome.attempts,
                initial_free_pairs: free_faces(&complex).len(),
            })
        }
    };

    let report = AnalyzeReport {
        input: args.input,
        field: args.field.to_string(),
        n_vertices: complex.n_vertices(),
        dim: complex.dim(),
        f_vector: complex.f_vector().clone(),
        betti,
        cup_length: cup,
        sq: sq_table,
        components,
        collapse,
    };
    if args.json {
        print_json(&report);
        return Ok(());
    }
    outln!("input {}", report.input);
    outln!("f_vector {:?}", report.f_vector);
    if let Some(b) = &report.betti {
        outln!("betti ({}) {:?}", report.field, b);
    }
    if let Some(c) = report.cup_length {
        outln!("cup_length ({}) {}", report.field, c);
    }
    if let Some(entries) = &report.sq {
        outln!("steenrod squares over f2 (source degree d, square i):");
        if entries.is_empty() {
            outln!("  (empty complex)");
        }
        let top = report.dim.unwrap_or(0);
        for d in 0..=top {
            let row: Vec<String> = entries
                .iter()
                .filter(|e| e.d == d)
                .map(|e| format!("Sq^{}:{}", e.i, if e.nontrivial { "nonzero" } else { "0" }))
                .collect();
            if !row.is_empty() {
                outln!("  d={d}  {}", row.join("  "));
            }
        }
    }
    if let Some(c) = &report.components {
        outln!(
            "strong components (dim {}): {} with {:?} simplices",
            c.dim,
            c.count,
            c.sizes
        );
    }
    if let Some(c) = &report.collapse {
        outln!(
            "collapse to dim {}: {} (final dim {:?}, {} pairs removed, {} attempts, {} initial free pairs)",
            c.target_dim,
            if c.success { "success" } else { "failure" },
            c.final_dim,
            c.pairs_removed,
            c.attempts,
            c.initial_free_pairs
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct ThresholdRow {
    k: usize,
    s1: f64,
    s2: f64,
    region: String,
}

#[derive(Serialize)]
struct ThresholdsReport {
    /// Effective exponents per dimension (JSON null means infinite: faces of
    /// that dimension never appear).
    alphas_effective: Vec<f64>,
    rows: Vec<ThresholdRow>,
    upper: Option<UpperModelParams>,
}

fn cmd_thresholds(args: ThresholdsArgs) -> CliResult {
    let kmax = args.kmax.unwrap_or(args.alpha.len().max(1));
    if kmax == 0 {
        return Err(usage("--kmax must be at least 1"));
    }
    let params = ParamVector::new(args.alpha, args.tail.into(), args.dim_cap)
        .map_err(|e| usage(e.to_string()))?;
    let padded = params.padded_alphas(kmax + 1);
    let rows: Vec<ThresholdRow> = (1..=kmax)
        .map(|k| ThresholdRow {
            k,
            s1: s1(k, &padded),
            s2: s2(k, &padded),
            region: cohomology_region(k, &padded).to_string(),
        })
        .collect();
    let upper_input = params.padded_alphas(params.resolved_dim_cap().max(1));
    let upper = upper_model_params(&upper_input).ok();
    let report = ThresholdsReport {
        alphas_effective: padded,
        rows,
        upper,
    };
    if args.json {
        print_json(&report);
        return Ok(());
    }
    outln!("{:<4} {:>12} {:>12}  {}", "k", "s1", "s2", "region");
    for row in &report.rows {
        outln!(
            "{:<4} {:>12.6} {:>12.6}  {}",
            row.k,
            row.s1,
            row.s2,
            row.region
        );
    }
    match &report.upper {
        Some(u) => {
            outln!("upper model: beta {:?}", u.beta);
            outln!(
                "  beta_max {:.6}  l {}  l_prime {}  integer_boundary {}",
                u.beta_max,
                u.l,
                u.l_prime,
                u.beta_integer_boundary
            );
            outln!("  gamma {:?}", u.gamma);
            outln!("  excess {:?}", u.excess);
        }
        None => outln!("upper model: not defined for these exponents"),
    }
    Ok(())
}

#[derive(Serialize)]
struct ExperimentPaths {
    csv: PathBuf,
    summary: PathBuf,
    #[serde(skip_serializing_if = "Option::is_none")]
    svg: Option<PathBuf>,
}

fn cmd_experiment(args: ExperimentArgs) -> CliResult {
    if args.workers == Some(0) {
        return Err(usage("--workers must be at least 1"));
    }
    let text = fs::read_to_string(&args.config).map_err(stochatop::Error::from)?;
    let config = ExperimentConfig::from_json(&text)?;
    let result = run_experiment(&config, args.workers)?;
    fs::create_dir_all(&args.out_dir).map_err(stochatop::Error::from)?;
    let paths = ExperimentPaths {
        csv: args.out_dir.join("results.csv"),
        summary: args.out_dir.join("summary.json"),
        svg: args.svg.then(|| args.out_dir.join("trends.svg")),
    };
    fs::write(&paths.csv, result.csv()).map_err(stochatop::Error::from)?;
    fs::write(&paths.summary, result.summary_json()).map_err(stochatop::Error::from)?;
    if let Some(svg) = &paths.svg {
        fs::write(svg, result.trend_svg()).map_err(stochatop::Error::from)?;
    }
    if args.json {
        #[derive(Serialize)]
        struct ExperimentOutput<'a> {
            paths: &'a ExperimentPaths,
            summary: &'a stochatop::experiments::ExperimentSummary,
        }
        print_json(&ExperimentOutput {
            paths: &paths,
            summary: &result.summary,
        });
        return Ok(());
    }
    outln!("wrote {}", paths.csv.display());
    outln!("wrote {}", paths.summary.display());
    if let Some(svg) = &paths.svg {
        outln!("wrote {}", svg.display());
    }
    outln!(
        "{:<6} {:<24} {:>8} {:>12} {:>12} {:>10}",
        "n",
        "measurement",
        "count",
        "mean",
        "sd",
        "positive"
    );
    for m in &result.summary.measurements {
        outln!(
            "{:<6} {:<24} {:>8} {:>12.4} {:>12.4} {:>10.3}",
            m.n,
            m.measurement,
            m.count,
            m.mean,
            m.sd,
            m.positive_fraction
        );
    }
    for c in &result.summary.censoring {
        if c.censored > 0 {
            outln!("n={} censored {}/{}", c.n, c.censored, c.trials);
        }
    }
    Ok(())
}

fn cmd_suspend(args: SuspendArgs) -> CliResult {
    if args.r == 0 {
        return Err(usage("--r must be at least 1"));
    }
    let mut complex = load_complex(&args.input)?;
    for _ in 0..args.r {
        complex = complex.prime_suspension()?;
    }
    emit_complex(&complex, args.out, args.json)
}

fn cmd_collapse(args: CollapseArgs) -> CliResult {
    if args.restarts == 0 {
        return Err(usage("--restarts must be at least 1"));
    }
    let complex = load_complex(&args.input)?;
    let outcome = collapse_to_dim(&complex, args.d, args.seed, args.restarts)?;
    if let Some(path) = &args.out {
        write_complex_file(path, &outcome.complex)?;
    }
    let report = CollapseReport {
        target_dim: args.d,
        success: outcome.success,
        final_dim: outcome.complex.dim(),
        pairs_removed: outcome.pairs_removed,
        attempts: outcome.attempts,
        initial_free_pairs: free_faces(&complex).len(),
    };
    if args.json {
        print_json(&report);
        return Ok(());
    }
    outln!(
        "collapse to dim {}: {} (final dim {:?}, {} pairs removed, {} attempts, {} initial free pairs)",
        report.target_dim,
        if report.success { "success" } else { "failure" },
        report.final_dim,
        report.pairs_removed,
        report.attempts,
        report.initial_free_pairs
    );
    if let Some(path) = &args.out {
        outln!("wrote {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct CountReport {
    pattern: String,
    host: String,
    embeddings: u64,
    automorphisms: u64,
    copies: u64,
}

fn cmd_count(args: CountArgs) -> CliResult {
    let pattern = load_complex(&args.pattern)?;
    let host = load_complex(&args.host)?;
    let count = count_subcomplex_copies(&pattern, &host)?;
    let report = CountReport {
        pattern: args.pattern,
        host: args.host,
        embeddings: count.embeddings,
        automorphisms: count.automorphisms,
        copies: count.copies,
    };
    if args.json {
        print_json(&report);
        return Ok(());
    }
    outln!(
        "embeddings {} automorphisms {} copies {}",
        report.embeddings,
        report.automorphisms,
        report.copies
    );
    Ok(())
}
