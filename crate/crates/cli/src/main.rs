use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use orthocentric::generate::{generate_scenes, GenerateOptions};
use orthocentric::par::{map, Parallelism};
use orthocentric::plot::plot_document;
use orthocentric::report::{analyze, error_document, locus_document, pretty, sorted, AnalyzeOptions};
use orthocentric::scene::{Backend, SceneError, SceneFile};
use orthocentric::NormSpec;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Generalized orthocenters of triangles in R^n: analysis, verification
/// and plot data.
#[derive(Debug, Parser)]
#[command(name = "orthocentric", version)]
struct Cli {
    /// Scalar backend, overriding the scene.
    #[arg(long, global = true, value_parser = parse_backend)]
    backend: Option<Backend>,
    /// Norm as `euclidean`, `p:<value>` or `p:inf`, overriding the scene.
    #[arg(long, global = true, value_parser = parse_norm)]
    norm: Option<NormSpec>,
    /// Float comparison tolerance, overriding the scene.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for sampling and generation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (or directory for batch analysis and generation).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Sphere sample count: Feuerbach checks for `analyze`, plot points
    /// per sphere for `plotdata`.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Process batches on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify every clause for a scene file, or for each `.json` scene in a
    /// directory.
    Analyze { path: PathBuf },
    /// Write reproducible random scenes.
    Generate {
        /// Ambient dimension.
        #[arg(short = 'n', long, default_value_t = 3)]
        dimension: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Coordinates lie in [-bound, bound].
        #[arg(long, default_value_t = 5)]
        bound: i64,
    },
    /// Circumcenter locus and orthocenter set of a scene's triangle.
    Locus { path: PathBuf },
    /// Labeled points, Euler line and sphere samples for plotting.
    Plotdata { path: PathBuf },
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse()
}

fn parse_norm(s: &str) -> Result<NormSpec, String> {
    s.parse::<NormSpec>().map_err(|e| e.to_string())
}

impl Cli {
    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            backend: self.backend,
            norm: self.norm,
            tol: self.tol,
            seed: self.seed,
            samples: self.samples,
        }
    }

    fn mode(&self) -> Parallelism {
        if self.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::Parallel
        }
    }
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp =
        tempfile::NamedTempFile::new_in(dir).with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            std::io::stdout().write_all(contents.as_bytes())?;
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<SceneFile, SceneError> {
    let text = fs::read_to_string(path).map_err(|e| SceneError::Field {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    SceneFile::parse(&text)
}

fn report_error(path: &Path, e: &SceneError) -> u8 {
    eprintln!("{}: {e}", path.display());
    eprint!("{}", pretty(&error_document(e)));
    EXIT_INPUT
}

fn analyze_file(cli: &Cli, path: &Path) -> anyhow::Result<u8> {
    let result = load(path).and_then(|scene| analyze(&scene, &cli.options()));
    match result {
        Ok(rep) => {
            emit(cli.out.as_deref(), &rep.to_pretty())?;
            Ok(if rep.all_pass() { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(e) => Ok(report_error(path, &e)),
    }
}

fn scene_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn analyze_dir(cli: &Cli, dir: &Path) -> anyhow::Result<u8> {
    let files = scene_files(dir)?;
    if let Some(out) = &cli.out {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    }
    let opts = cli.options();
    let results = map(&files, cli.mode(), |path| -> anyhow::Result<(Value, u8)> {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let outcome = load(path).and_then(|scene| analyze(&scene, &opts));
        Ok(match outcome {
            Ok(rep) => {
                if let Some(out) = &cli.out {
                    let stem = path
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_default();
                    write_atomic(&out.join(format!("{stem}.report.json")), &rep.to_pretty())?;
                }
                let code = if rep.all_pass() { EXIT_PASS } else { EXIT_FAIL };
                let status = if code == EXIT_PASS { "pass" } else { "fail" };
                (
                    json!({ "file": name, "status": status, "summary": rep.document["summary"] }),
                    code,
                )
            }
            Err(e) => (
                json!({ "file": name, "status": "error", "error": error_document(&e)["error"] }),
                EXIT_INPUT,
            ),
        })
    });
    let mut entries = Vec::new();
    let mut code = EXIT_PASS;
    let (mut passed, mut failed, mut errors) = (0, 0, 0);
    for r in results {
        let (entry, c) = r?;
        match c {
            EXIT_PASS => passed += 1,
            EXIT_FAIL => failed += 1,
            _ => errors += 1,
        }
        code = code.max(c);
        entries.push(entry);
    }
    let doc = sorted(json!({
        "scenes": entries,
        "summary": { "scenes": files.len(), "pass": passed, "fail": failed, "error": errors },
    }));
    std::io::stdout().write_all(pretty(&doc).as_bytes())?;
    Ok(code)
}

fn generate(cli: &Cli, dimension: usize, count: usize, bound: i64) -> anyhow::Result<u8> {
    let Some(out) = &cli.out else {
        bail!("generate needs --out <directory>");
    };
    if dimension < 2 {
        bail!("dimension must be at least 2, got {dimension}");
    }
    if count == 0 {
        bail!("count must be at least 1");
    }
    if bound < 1 {
        bail!("bound must be at least 1, got {bound}");
    }
    let opts = GenerateOptions {
        seed: cli.seed,
        dimension,
        count,
        bound,
    };
    let scenes = generate_scenes(&opts, cli.mode())?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for (name, scene) in &scenes {
        write_atomic(&out.join(name), &scene.to_pretty())?;
    }
    let names: Vec<&str> = scenes.iter().map(|(n, _)| n.as_str()).collect();
    let doc = sorted(json!({ "directory": out.display().to_string(), "scenes": names }));
    std::io::stdout().write_all(pretty(&doc).as_bytes())?;
    Ok(EXIT_PASS)
}

fn document(cli: &Cli, path: &Path, build: impl Fn(&SceneFile) -> Result<Value, SceneError>) -> anyhow::Result<u8> {
    match load(path).and_then(|s| build(&s)) {
        Ok(doc) => {
            emit(cli.out.as_deref(), &pretty(&doc))?;
            Ok(EXIT_PASS)
        }
        Err(e) => Ok(report_error(path, &e)),
    }
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    if let Some(t) = cli.tol {
        if !(t.is_finite() && t >= 0.0) {
            bail!("--tol must be a finite non-negative number");
        }
    }
    match &cli.command {
        Command::Analyze { path } if path.is_dir() => analyze_dir(cli, path),
        Command::Analyze { path } => analyze_file(cli, path),
        Command::Generate {
            dimension,
            count,
            bound,
        } => generate(cli, *dimension, *count, *bound),
        Command::Locus { path } => document(cli, path, |s| locus_document(s, &cli.options())),
        Command::Plotdata { path } => {
            let samples = cli.samples.unwrap_or(64);
            document(cli, path, |s| plot_document(s, &cli.options(), samples))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
