use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use veerkit::cable_glue::rv_via_symplectic;
use veerkit::cfk::{
    b_invariant, b_invariant_via_top_differential, flatten, mirror, spectral_sequence, tau, tensor,
    validate_cfk, ReducedCFK, Slice,
};
use veerkit::classify::{classify_fibered, consistency_audit};
use veerkit::floer_symp::hf_symp_dim;
use veerkit::surface_map::{validate, CircleId, Sign, StandardFormMap};
use veerkit::surgery::{build_j, check_yi, zero_surgery_top_minus_one};
use veerkit::twist_calculus::{fdtc, veering};
use veerkit_cli::corpus::{self, Corpus, LoadError};
use veerkit_cli::verify::{self, Property};

#[derive(Parser)]
#[command(
    name = "veerkit",
    version,
    about = "Right-veering and knot Floer invariants of fibered knots"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for every randomized command.
    #[arg(long, global = true, env = "VEERKIT_SEED")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Check a standard-form map against its axioms.
    Validate { map: PathBuf },
    /// Fractional Dehn twist coefficient at a boundary circle.
    Fdtc {
        map: PathBuf,
        /// Defaults to the only boundary circle.
        #[arg(long)]
        boundary: Option<String>,
    },
    /// Right-veering verdict from the standard form.
    Veering { map: PathBuf },
    /// Symplectic Floer dimension of a closed map.
    Hfsymp { map: PathBuf },
    /// Glue on both cable models and compare the verdict with the twist route.
    GlueCheck {
        map: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Run a randomized property check.
    Verify {
        #[arg(value_enum)]
        property: Property,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Knot Floer complex operations.
    Cfk {
        #[command(subcommand)]
        op: CfkOp,
    },
    /// Zero-surgery next-to-top homology.
    Surgery {
        #[command(subcommand)]
        op: SurgeryOp,
    },
    /// Classify a fibered knot from its complex, optionally auditing a monodromy.
    Classify {
        complex: PathBuf,
        #[arg(long)]
        monodromy: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// The bundled corpus.
    Corpus {
        #[command(subcommand)]
        op: CorpusOp,
        /// Read the corpus from a directory instead.
        #[arg(long, global = true)]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CfkOp {
    Validate {
        complex: PathBuf,
    },
    Dims {
        complex: PathBuf,
    },
    Tau {
        complex: PathBuf,
    },
    B {
        complex: PathBuf,
    },
    Genus {
        complex: PathBuf,
    },
    Thin {
        complex: PathBuf,
    },
    /// Spectral sequence pages of a slice such as `i=0` or `j=-1`.
    Pages {
        complex: PathBuf,
        #[arg(long, default_value = "i=0", value_parser = parse_slice)]
        slice: Slice,
    },
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    Mirror {
        a: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SurgeryOp {
    TopMinusOne {
        complex: PathBuf,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value = "+", value_parser = parse_side, allow_hyphen_values = true)]
        side: Sign,
    },
    CheckYi {
        complex: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        n: Vec<u32>,
    },
}

#[derive(Subcommand)]
enum CorpusOp {
    List,
    Check {
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
}

fn parse_side(s: &str) -> Result<Sign, String> {
    match s {
        "+" | "plus" | "positive" => Ok(Sign::Positive),
        "-" | "minus" | "negative" => Ok(Sign::Negative),
        _ => Err(format!("side must be + or -, got `{s}`")),
    }
}

fn parse_slice(s: &str) -> Result<Slice, String> {
    let (axis, k) = s.split_once('=').ok_or("slice looks like i=0 or j=-1")?;
    let k: i64 = k
        .trim()
        .parse()
        .map_err(|e| format!("bad slice level: {e}"))?;
    match axis.trim() {
        "i" => Ok(Slice::I(k)),
        "j" => Ok(Slice::J(k)),
        other => Err(format!("slice axis must be i or j, got `{other}`")),
    }
}

enum Failure {
    /// Exit code 2.
    Malformed(Value),
    /// Exit code 1.
    Domain(Value),
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::Io { file, message } => Failure::Malformed(
                json!({"error": "unreadable input", "file": file, "message": message}),
            ),
            LoadError::Parse {
                file,
                line,
                column,
                message,
            } => Failure::Malformed(json!({
                "error": "malformed input", "file": file, "line": line, "column": column, "message": message
            })),
        }
    }
}

impl From<veerkit::Error> for Failure {
    fn from(e: veerkit::Error) -> Self {
        let mut v = json!({"error": e.to_string()});
        if let veerkit::Error::InvalidMap(r) | veerkit::Error::InvalidComplex(r) = &e {
            v["violations"] = serde_json::to_value(&r.violations).expect("serializable");
        }
        Failure::Domain(v)
    }
}

type Outcome = Result<Value, Failure>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("outputs serialize")
}

fn read<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| LoadError::Io {
        file: name.clone(),
        message: e.to_string(),
    })?;
    Ok(corpus::parse(&name, &text)?)
}

fn write_or_return(c: &ReducedCFK, output: &Option<PathBuf>) -> Outcome {
    match output {
        Some(path) => {
            fs::write(path, c.to_json() + "\n").map_err(|e| {
                Failure::Domain(json!({"error": "cannot write output", "file": path.display().to_string(), "message": e.to_string()}))
            })?;
            Ok(json!({"written": path.display().to_string(), "generators": c.len()}))
        }
        None => Ok(to_value(c)),
    }
}

fn only_boundary(m: &StandardFormMap) -> Result<CircleId, Failure> {
    match m.surface_boundary.as_slice() {
        [b] => Ok(b.clone()),
        _ => Err(Failure::Domain(json!({
            "error": "the map has several boundary circles; pass --boundary"
        }))),
    }
}

fn run_cfk(op: CfkOp) -> Outcome {
    match op {
        CfkOp::Validate { complex } => {
            let r = validate_cfk(&read(&complex)?);
            let v = json!({"valid": r.is_valid(), "violations": r.violations});
            if r.is_valid() {
                Ok(v)
            } else {
                Err(Failure::Domain(v))
            }
        }
        CfkOp::Dims { complex } => {
            let c: ReducedCFK = read(&complex)?;
            if let Err(e) = flatten(&c, Slice::I(0)) {
                return Err(e.into());
            }
            Ok(json!({"dims": c.hfk_dims(), "by_alexander": c.dims_by_alexander()}))
        }
        CfkOp::Tau { complex } => Ok(json!({"tau": tau(&read(&complex)?)?})),
        CfkOp::B { complex } => {
            let c: ReducedCFK = read(&complex)?;
            Ok(json!({
                "b": b_invariant(&c)?,
                "top_differential_nonzero": b_invariant_via_top_differential(&c)?,
            }))
        }
        CfkOp::Genus { complex } => {
            let c: ReducedCFK = read(&complex)?;
            flatten(&c, Slice::I(0))?;
            Ok(json!({"genus": c.genus()}))
        }
        CfkOp::Thin { complex } => {
            let c: ReducedCFK = read(&complex)?;
            flatten(&c, Slice::I(0))?;
            Ok(json!({"thin": c.is_thin()?}))
        }
        CfkOp::Pages { complex, slice } => {
            let f = flatten(&read(&complex)?, slice)?;
            Ok(to_value(&spectral_sequence(&f)))
        }
        CfkOp::Tensor { a, b, output } => {
            let t = tensor(&read(&a)?, &read(&b)?)?;
            write_or_return(&t, &output)
        }
        CfkOp::Mirror { a, output } => {
            let m = mirror(&read(&a)?)?;
            write_or_return(&m, &output)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Validate { map } => {
            let m: StandardFormMap = read(&map)?;
            let r = validate(&m);
            let v = json!({"valid": r.is_valid(), "violations": r.violations});
            if r.is_valid() {
                Ok(v)
            } else {
                Err(Failure::Domain(v))
            }
        }
        Command::Fdtc { map, boundary } => {
            let m: StandardFormMap = read(&map)?;
            let b = match boundary {
                Some(b) => CircleId::from(b.as_str()),
                None => only_boundary(&m)?,
            };
            Ok(to_value(&fdtc(&m, &b)?))
        }
        Command::Veering { map } => Ok(json!({"verdict": veering(&read(&map)?)?})),
        Command::Hfsymp { map } => {
            let d = hf_symp_dim(&read(&map)?)?;
            Ok(json!({"total": d.total(), "breakdown": d}))
        }
        Command::GlueCheck { map, n } => {
            let h: StandardFormMap = read(&map)?;
            let symp = rv_via_symplectic(&h, n)?;
            let twist = veering(&h)?;
            Ok(json!({
                "difference": symp.difference,
                "symplectic": symp.verdict,
                "standard_form": twist,
                "agree": symp.verdict == twist,
            }))
        }
        Command::Verify { property, trials } => Ok(to_value(&verify::run(property, trials, seed))),
        Command::Cfk { op } => run_cfk(op),
        Command::Surgery { op } => match op {
            SurgeryOp::TopMinusOne { complex, n, side } => {
                let j = build_j(&read(&complex)?, n, side)?;
                Ok(to_value(&zero_surgery_top_minus_one(&j)?))
            }
            SurgeryOp::CheckYi { complex, n } => Ok(to_value(&check_yi(&read(&complex)?, &n)?)),
        },
        Command::Classify {
            complex,
            monodromy,
            n,
        } => {
            let c: ReducedCFK = read(&complex)?;
            let mut v = to_value(&classify_fibered(&c)?);
            if let Some(path) = monodromy {
                let h: StandardFormMap = read(&path)?;
                v["audit"] = to_value(&consistency_audit(&c, Some(&h), n)?);
            }
            Ok(v)
        }
        Command::Corpus { op, dir } => {
            let corpus = match dir {
                Some(d) => Corpus::from_dir(&d)?,
                None => Corpus::bundled(),
            };
            match op {
                CorpusOp::List => Ok(json!({"entries": corpus.entries})),
                CorpusOp::Check { n } => {
                    let report = corpus::check(&corpus, n);
                    let v = to_value(&report);
                    if report.failed == 0 {
                        Ok(v)
                    } else {
                        Err(Failure::Domain(v))
                    }
                }
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            map.iter()
                .map(|(k, x)| match x {
                    Value::Array(items)
                        if items.iter().all(Value::is_object) && !items.is_empty() =>
                    {
                        let rows: Vec<String> =
                            items.iter().map(|i| format!("  {}", cell(i))).collect();
                        format!("{k}\n{}", rows.join("\n"))
                    }
                    _ => format!("{k:width$}  {}", cell(x)),
                })
                .collect::<Vec<_>>()
                .join("\n")
        }
        other => cell(other),
    }
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("values serialize"),
        Format::Table => table(v),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(v) => {
            println!("{}", render(&v, format));
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(v)) => {
            println!("{}", render(&v, format));
            ExitCode::from(1)
        }
        Err(Failure::Malformed(v)) => {
            eprintln!("{}", render(&v, format));
            ExitCode::from(2)
        }
    }
}
