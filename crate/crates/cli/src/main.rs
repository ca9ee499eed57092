//! `schubert`: coset tables and Schubert structure constants from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use schubert_core::coset::ElementKey;
use schubert_core::render::{self, Format};
use schubert_core::verify::{self, Report};
use schubert_core::{
    expand_product, multiplication_table, oracle, structure_constant, weyl, BuildOptions, CartanMatrix, CosetTable,
    ElementId, Error, EvalOptions, Execution, FlagSpec, SelectionMode,
};

const EXIT_COMPUTATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_VERIFY: u8 = 3;

#[derive(Parser)]
#[command(name = "schubert", version, about = "Schubert calculus on flag manifolds G/H")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for coefficient evaluation; 1 runs sequentially.
    #[arg(long, global = true, env = "SCHUBERT_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate minimal coset representatives with their reduced words.
    Coset {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        max_length: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Structure constant a_{u,v}^w, or the whole product P_u·P_v.
    Multiply {
        #[command(flatten)]
        spec: SpecArgs,
        /// "r.i" stratum index or dot-word such as 3.4.2
        u: String,
        v: String,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All products P_u·P_v of a given total degree.
    Table {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite: tables, grassmannian or properties.
    Verify {
        suite: String,
        /// Restrict the grassmannian suite to G(n,k).
        #[arg(long, requires = "k")]
        n: Option<usize>,
        #[arg(long, requires = "n")]
        k: Option<usize>,
    },
    /// List the built-in Cartan types.
    Presets,
}

#[derive(Args)]
struct SpecArgs {
    /// Built-in Cartan type such as E6, B3 or A4.
    #[arg(long, conflicts_with = "spec")]
    preset: Option<String>,
    /// JSON flag spec: {"preset": "E6", "K": [...]} or {"cartan": [[...]], "K": [...]}.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Nodes outside K, comma separated.
    #[arg(long, conflicts_with = "k_set")]
    complement: Option<String>,
    /// Nodes of K, comma separated; "" for the full flag manifold.
    #[arg(long = "K", id = "k_set")]
    k_set: Option<String>,
    /// Coset table cache file; defaults to a file under $SCHUBERT_CACHE_DIR when set.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Naive,
    Pruned,
}

impl From<ModeArg> for SelectionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Naive => SelectionMode::Naive,
            ModeArg::Pruned => SelectionMode::Pruned,
        }
    }
}

enum Failure {
    Core(Error),
    Usage(String),
    Verify(Vec<Report>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Core(e.into())
    }
}

type CliResult<T> = Result<T, Failure>;

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|_| Failure::Usage(format!("bad node list {:?}", s))))
        .collect()
}

impl SpecArgs {
    fn resolve(&self) -> CliResult<FlagSpec> {
        if let Some(path) = &self.spec {
            if self.complement.is_some() || self.k_set.is_some() {
                return Err(Failure::Usage("--spec already fixes K".into()));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
            return Ok(FlagSpec::from_json(&text)?);
        }
        let preset = self
            .preset
            .as_deref()
            .ok_or_else(|| Failure::Usage("give --preset or --spec".into()))?;
        let spec = match (&self.complement, &self.k_set) {
            (Some(c), _) => FlagSpec::preset_with_complement(preset, &parse_list(c)?)?,
            (None, Some(k)) => FlagSpec::preset_with_k(preset, &parse_list(k)?)?,
            (None, None) => FlagSpec::preset_with_k(preset, &[])?,
        };
        Ok(spec)
    }

    fn cache_path(&self, spec: &FlagSpec) -> Option<PathBuf> {
        if let Some(p) = &self.cache {
            return Some(p.clone());
        }
        let dir = std::env::var_os("SCHUBERT_CACHE_DIR")?;
        Some(Path::new(&dir).join(cache_file_name(spec)))
    }
}

fn cache_file_name(spec: &FlagSpec) -> String {
    // FNV-1a over the Cartan entries and K
    let mut h: u64 = 0xcbf29ce484222325;
    let mut feed = |x: i64| {
        for b in x.to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    for row in spec.cartan.rows() {
        row.into_iter().for_each(&mut feed);
    }
    feed(-100);
    for &k in spec.k_set.members() {
        feed(k as i64);
    }
    let base = spec.preset.clone().unwrap_or_else(|| format!("rank{}", spec.rank()));
    format!("{}-{:016x}.json", base, h)
}

/// Builds the table through `need` (or completely), reusing and refreshing a cache.
fn load_table(args: &SpecArgs, need: Option<usize>) -> CliResult<CosetTable> {
    let spec = args.resolve()?;
    let cache = args.cache_path(&spec);
    let covers = |t: &CosetTable| match need {
        Some(n) => t.is_complete() || t.built_len() >= n,
        None => t.is_complete(),
    };
    if let Some(path) = cache.as_ref().filter(|p| p.exists()) {
        let text = std::fs::read_to_string(path)?;
        let table = CosetTable::from_json(&text)?;
        if *table.spec() != spec {
            return Err(Error::CacheMismatch(format!(
                "{} holds {}, requested {}",
                path.display(),
                table.spec().label(),
                spec.label()
            ))
            .into());
        }
        if covers(&table) {
            eprintln!("loaded {} from {}", table.spec().label(), path.display());
            return Ok(table);
        }
    }
    let start = Instant::now();
    let opts = match need {
        Some(n) => BuildOptions::up_to(n),
        None => BuildOptions::default(),
    };
    let table = CosetTable::build(&spec, opts)?;
    eprintln!(
        "built {} cosets of {} through length {} in {:.3?}",
        table.total(),
        spec.label(),
        table.built_len(),
        start.elapsed()
    );
    if let Some(path) = cache {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&path, table.to_json())?;
    }
    Ok(table)
}

fn emit(output: &OutputArgs, text: &str) -> CliResult<()> {
    match &output.out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{}", text);
            Ok(())
        }
    }
}

/// Length of an element named by `key`, without a table.
fn key_length(c: &CartanMatrix, key: &ElementKey) -> CliResult<usize> {
    Ok(match key {
        ElementKey::Index(id) => id.len,
        ElementKey::Word(w) => weyl::length(c, w)?,
        ElementKey::B(b) => weyl::length_of(c, b)?,
    })
}

fn cmd_coset(spec: &SpecArgs, max_length: Option<usize>, output: &OutputArgs) -> CliResult<()> {
    let table = load_table(spec, max_length)?;
    let table = match max_length {
        Some(m) => table.truncated(m),
        None => table,
    };
    emit(output, &render::render_cosets(&table, output.format.into()))
}

fn cmd_multiply(
    spec: &SpecArgs,
    u: &str,
    v: &str,
    w: Option<&str>,
    opts: EvalOptions,
    output: &OutputArgs,
) -> CliResult<()> {
    let flag = spec.resolve()?;
    let keys = [Some(u), Some(v), w]
        .into_iter()
        .flatten()
        .map(ElementKey::parse)
        .collect::<Result<Vec<_>, _>>()?;
    let lengths = keys
        .iter()
        .map(|k| key_length(&flag.cartan, k))
        .collect::<CliResult<Vec<_>>>()?;
    let need = lengths.iter().copied().max().unwrap_or(0).max(lengths[0] + lengths[1]);
    let table = load_table(spec, Some(need))?;
    let u = table.lookup(&keys[0])?;
    let v = table.lookup(&keys[1])?;
    let start = Instant::now();
    let text = match keys.get(2) {
        Some(key) => {
            let w = table.lookup(key)?;
            let a = structure_constant(&table, u, v, w, opts.mode)?;
            match Format::from(output.format) {
                Format::Text => format!("{}\n", a),
                Format::Csv => format!(
                    "u,v,w,a\n{}.{},{}.{},{}.{},{}\n",
                    u.len, u.idx, v.len, v.idx, w.len, w.idx, a
                ),
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"u": u.id(), "v": v.id(), "w": w.id(), "a": a})
                ),
            }
        }
        None => render::render_expansion(&expand_product(&table, u, v, opts)?, output.format.into()),
    };
    eprintln!("evaluated in {:.3?}", start.elapsed());
    emit(output, &text)
}

fn cmd_table(spec: &SpecArgs, degree: usize, opts: EvalOptions, output: &OutputArgs) -> CliResult<()> {
    let table = load_table(spec, Some(degree))?;
    let start = Instant::now();
    let rows = multiplication_table(&table, degree, opts)?;
    eprintln!("{} products of degree {} in {:.3?}", rows.len(), degree, start.elapsed());
    let columns: Vec<ElementId> = table.stratum(degree)?.iter().map(|w| w.id()).collect();
    emit(output, &render::render_products(&columns, &rows, output.format.into()))
}

fn cmd_verify(suite: &str, nk: Option<(usize, usize)>, opts: EvalOptions) -> CliResult<()> {
    let start = Instant::now();
    let report = match (suite, nk) {
        ("grassmannian", Some((n, k))) => {
            oracle::grassmannian_spec(n, k)?;
            Report {
                suite: "grassmannian".into(),
                checks: vec![verify::grassmannian_check(n, k, opts)],
            }
        }
        (_, Some(_)) => return Err(Failure::Usage("--n/--k only apply to the grassmannian suite".into())),
        _ => verify::run_suite(suite, opts).map_err(|e| Failure::Usage(e.to_string()))?,
    };
    println!("{}", report);
    eprintln!("{} suite ran in {:.3?}", suite, start.elapsed());
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verify(vec![report]))
    }
}

fn cmd_presets() {
    let rows = [
        ("A", "n >= 1"),
        ("B", "n >= 2"),
        ("C", "n >= 3"),
        ("D", "n >= 4"),
        ("E", "n = 6, 7, 8"),
        ("F", "n = 4"),
        ("G", "n = 2"),
    ];
    for (series, ranks) in rows {
        let example = (1..=8)
            .find_map(|n| CartanMatrix::preset(series.chars().next().unwrap(), n).ok().map(|_| n))
            .unwrap();
        println!("{}n  {:<12} e.g. --preset {}{}", series, ranks, series, example);
    }
}

fn execution(jobs: Option<usize>) -> CliResult<Execution> {
    match jobs {
        Some(0) => Err(Failure::Usage("--jobs must be at least 1".into())),
        Some(1) => Ok(Execution::Sequential),
        Some(n) => {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
            Ok(Execution::Parallel)
        }
        None => Ok(Execution::Parallel),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let exec = execution(cli.jobs)?;
    let opts = |mode: ModeArg| EvalOptions {
        mode: mode.into(),
        exec,
    };
    match &cli.command {
        Command::Coset {
            spec,
            max_length,
            output,
        } => cmd_coset(spec, *max_length, output),
        Command::Multiply {
            spec,
            u,
            v,
            w,
            mode,
            output,
        } => cmd_multiply(spec, u, v, w.as_deref(), opts(*mode), output),
        Command::Table {
            spec,
            degree,
            mode,
            output,
        } => cmd_table(spec, *degree, opts(*mode), output),
        Command::Verify { suite, n, k } => cmd_verify(suite, n.zip(*k), opts(ModeArg::Pruned)),
        Command::Presets => {
            cmd_presets();
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(if e.is_usage() { EXIT_USAGE } else { EXIT_COMPUTATION })
        }
        Err(Failure::Verify(reports)) => {
            for r in &reports {
                for c in r.failures() {
                    eprintln!("{}", c);
                }
            }
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
