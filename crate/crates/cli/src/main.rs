//! `polycanon`: reduced degrees, canonical module generators and
//! triangulations of lattice polytopes from the command line.
//!
//! Every report goes to stdout as canonical JSON (sorted keys). Exit codes:
//! 0 success, 1 input error, 2 verification failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polycanon_core::format::{family, PolytopeFile};
use polycanon_core::triangulation::{full_lattice_triangulation, interior_respecting_triangulation};
use polycanon_core::verify::{verify_all, verify_corpus, CorpusSpec, SuiteOptions};
use polycanon_core::{Error, LatticeVector, Polytope, Semigroup};

#[derive(Parser)]
#[command(name = "polycanon", version, about)]
struct Cli {
    /// Worker threads (overrides POLYCANON_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Add wall-clock time to the report (breaks byte-identical output).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal generators of the interior points of the cone.
    Generators {
        file: PathBuf,
        /// Generators under the full semigroup of cone points.
        #[arg(long)]
        full: bool,
    },
    /// Reduced degree of an interior cone point, last coordinate = degree.
    Rdeg {
        file: PathBuf,
        #[arg(required = true, num_args = 1.., allow_negative_numbers = true)]
        point: Vec<i64>,
    },
    /// Write a fixture polytope file.
    Family {
        name: FamilyName,
        /// Dimension d (or q for reeve).
        n: i64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite on a file or a seeded random corpus.
    Verify {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        file: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2)]
        min_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = -3, allow_negative_numbers = true)]
        coord_min: i64,
        #[arg(long, default_value_t = 3, allow_negative_numbers = true)]
        coord_max: i64,
        #[arg(long, default_value_t = 8)]
        max_points: usize,
        /// Skip vertex-dropping minimization of a failing polytope.
        #[arg(long)]
        no_minimize: bool,
    },
    /// Lattice triangulation, Σ′ and the interior decomposition check.
    Triangulate {
        file: PathBuf,
        #[arg(long)]
        interior_respecting: bool,
    },
    /// Integer decomposition property up to dilation kmax.
    Idp { file: PathBuf, kmax: i64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    Example1,
    Example2,
    Unit,
    Reeve,
}

enum Failure {
    Input(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports are plain data")
}

fn load(path: &Path) -> Result<Polytope, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(PolytopeFile::parse(&text)?.to_polytope()?)
}

fn describe(path: &Path, p: &Polytope) -> Value {
    json!({
        "file": path.display().to_string(),
        "name": p.name(),
        "ambient_dim": p.ambient_dim(),
        "dim": p.dim(),
        "vertices": p.vertices(),
    })
}

fn report(command: &str, input: Value, result: Value) -> Value {
    json!({ "command": command, "input": input, "result": result })
}

fn generators(file: &Path, full: bool) -> Outcome {
    let p = load(file)?;
    let sg = Semigroup::new(&p)?;
    let r = if full {
        sg.full_generators()?
    } else {
        sg.irreducible_generators()?
    };
    let out = report("generators", describe(file, &p), to_value(&r));
    if r.invariant > r.bound_value {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

fn rdeg(file: &Path, point: Vec<i64>) -> Outcome {
    let p = load(file)?;
    let sg = Semigroup::new(&p)?;
    let y = LatticeVector::new(point);
    let (r, witness) = sg.rdeg(&y)?;
    let irreducible = sg.is_irreducible(&y)?;
    Ok(report(
        "rdeg",
        describe(file, &p),
        json!({
            "point": y,
            "degree": y.last(),
            "rdeg": r,
            "irreducible": irreducible,
            "witness": witness,
        }),
    ))
}

fn family_cmd(name: FamilyName, n: i64, output: Option<PathBuf>) -> Outcome {
    let d = || usize::try_from(n).map_err(|_| Error::InvalidParameter(format!("bad dimension {n}")));
    let file = match name {
        FamilyName::Example1 => family::example1_file(d()?)?,
        FamilyName::Example2 => family::example2_file(d()?)?,
        FamilyName::Unit => family::unit_file(d()?)?,
        FamilyName::Reeve => family::reeve_file(n)?,
    };
    let text = file.to_json();
    match output {
        Some(path) => {
            std::fs::write(&path, format!("{text}\n"))
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(report("family", json!({ "name": file.name, "n": n }), json!({ "written": path.display().to_string() })))
        }
        None => Ok(serde_json::from_str(&text).expect("valid JSON")),
    }
}

fn triangulate(file: &Path, interior_respecting: bool) -> Outcome {
    let p = load(file)?;
    let t = if interior_respecting {
        interior_respecting_triangulation(&p)?
    } else {
        full_lattice_triangulation(&p)?
    };
    let kmax = p.dim() as i64 + 1;
    let verdict = t.verify_decomposition(&p, kmax)?;
    let volume = p.normalized_volume()?;
    let cell_volume = t.total_volume()?;
    let out = report(
        "triangulate",
        describe(file, &p),
        json!({
            "interior_respecting": interior_respecting,
            "triangulation": t,
            "cell_count": t.cells().len(),
            "sigma_prime": t.sigma_prime(&p),
            "normalized_volume": volume,
            "cell_volume_sum": cell_volume,
            "decomposition": verdict,
        }),
    );
    if !verdict.holds || volume != cell_volume {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

fn idp(file: &Path, kmax: i64) -> Outcome {
    if kmax < 2 {
        return Err(Failure::Input(format!("kmax must be at least 2, got {kmax}")));
    }
    let p = load(file)?;
    let v = Semigroup::new(&p)?.idp_check(kmax)?;
    Ok(report("idp", describe(file, &p), to_value(&v)))
}

fn verify(cmd: Command) -> Outcome {
    let Command::Verify {
        file,
        corpus,
        seed,
        count,
        min_dim,
        max_dim,
        coord_min,
        coord_max,
        max_points,
        no_minimize,
    } = cmd
    else {
        unreachable!()
    };
    let opts = SuiteOptions {
        minimize: !no_minimize,
        ..SuiteOptions::default()
    };
    let (input, r) = if corpus {
        let spec = CorpusSpec {
            seed,
            count,
            min_ambient: min_dim,
            max_ambient: max_dim,
            coord_min,
            coord_max,
            max_points,
        };
        (json!({ "corpus": spec }), verify_corpus(&spec, &opts)?)
    } else {
        let path = file.expect("clap requires a file without --corpus");
        let p = load(&path)?;
        (describe(&path, &p), verify_all(&[p], seed, &opts))
    };
    let out = report("verify", input, to_value(&r));
    if r.passed() {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn thread_cap(flag: Option<usize>) -> Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("POLYCANON_THREADS") {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .map(Some)
            .ok_or_else(|| format!("POLYCANON_THREADS must be a positive integer, got {s:?}")),
        _ => Ok(None),
    }
}

fn emit(mut value: Value, started: Option<Instant>) {
    if let (Some(t), Value::Object(map)) = (started, &mut value) {
        map.insert("timing_ms".into(), json!(t.elapsed().as_millis() as u64));
    }
    println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match thread_cap(cli.threads) {
        Ok(Some(n)) => {
            if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
        Ok(None) => {}
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    }
    let started = cli.timing.then(Instant::now);
    let outcome = match cli.command {
        Command::Generators { file, full } => generators(&file, full),
        Command::Rdeg { file, point } => rdeg(&file, point),
        Command::Family { name, n, output } => family_cmd(name, n, output),
        Command::Triangulate {
            file,
            interior_respecting,
        } => triangulate(&file, interior_respecting),
        Command::Idp { file, kmax } => idp(&file, kmax),
        cmd @ Command::Verify { .. } => verify(cmd),
    };
    match outcome {
        Ok(v) => {
            emit(v, started);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(v)) => {
            emit(v, started);
            eprintln!("error: verification failed");
            ExitCode::from(2)
        }
    }
}
