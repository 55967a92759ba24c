//! `thinlie`: compute, analyse and verify graded Lie algebras from the
//! command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 structural finding reported by `analyze`.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thinlie::analysis::{full_report, ReportOptions};
use thinlie::harness::{self, ExperimentSpec, ResultsDocument};
use thinlie::{
    build_minus1, build_theorem41, compute, lucas_binomial, parse_relators, GradedAlgebra,
    Presentation, PrimeField,
};

const DIMS_SCHEMA: &str = "thinlie.dims/v1";

#[derive(Parser)]
#[command(name = "thinlie", version, about = "Graded Lie algebras on two generators over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the dimensions of the maximal graded algebra of a presentation.
    Compute(ComputeArgs),
    /// Compute, take the thin core and report covering, centralizers and diamonds.
    Analyze(AnalyzeArgs),
    /// Run a named experiment, or the whole built-in grid with `all`.
    Verify(VerifyArgs),
    /// Dimensions of the free Lie algebra on two generators.
    FreeDims(FreeDimsArgs),
    /// Binomial coefficient modulo p.
    Binom(BinomArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    Theorem41,
    Minus1,
    Free,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SourceArgs {
    /// Built-in presentation family.
    #[arg(long, value_enum, conflicts_with = "relators")]
    preset: Option<Preset>,
    /// Relator file in the presentation DSL.
    #[arg(long, value_name = "FILE")]
    relators: Option<PathBuf>,
    /// Odd prime; must agree with the header of a relator file.
    #[arg(short = 'p')]
    p: Option<u32>,
    /// Exponent with q = p^n.
    #[arg(short = 'n')]
    n: Option<u32>,
    /// Exponent of p in the theorem41 family.
    #[arg(short = 's')]
    s: Option<u32>,
    /// Chain length of the minus1 family.
    #[arg(short = 'a')]
    a: Option<u32>,
    /// Type relator coefficient of the minus1 family (default 1).
    #[arg(long)]
    lambda: Option<u32>,
    /// Also impose [v_k x x] = 0 for odd k (minus1 preset).
    #[arg(long)]
    odd_k: bool,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Highest degree computed.
    #[arg(long)]
    max_degree: usize,
    /// Report the thin core instead of the raw algebra.
    #[arg(long)]
    thin_core: bool,
    /// Defaults to max-degree - 2.
    #[arg(long)]
    reliable_bound: Option<usize>,
    /// Save the computed algebra as JSON.
    #[arg(long, value_name = "PATH")]
    save_algebra: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Analyse a saved algebra instead of computing one.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["preset", "relators"])]
    load_algebra: Option<PathBuf>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    reliable_bound: Option<usize>,
    /// q used to place fake diamonds; inferred when absent.
    #[arg(long)]
    q: Option<usize>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// theorem41, ldies, lemma-identities, prop-chains, second-diamond, superfluity or all.
    experiment: String,
    #[arg(short = 'p')]
    p: Option<u32>,
    #[arg(short = 'n', default_value_t = 1)]
    n: u32,
    #[arg(short = 's', default_value_t = 1)]
    s: u32,
    #[arg(short = 'a')]
    a: Option<u32>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    reliable_bound: Option<usize>,
    /// Experiment grid to use with `all` instead of the built-in one.
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct FreeDimsArgs {
    #[arg(short = 'p')]
    p: u32,
    #[arg(long)]
    max_degree: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct BinomArgs {
    #[arg(short = 'p')]
    p: u32,
    a: u64,
    b: u64,
    #[command(flatten)]
    out: OutputArgs,
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn field(p: u32) -> Result<PrimeField, Failure> {
    PrimeField::new(p).map_err(usage)
}

fn load_presentation(src: &SourceArgs) -> Result<(Presentation, String), Failure> {
    if let Some(path) = &src.relators {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let pres = parse_relators(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        if let Some(p) = src.p {
            if p != pres.field.p() {
                return Err(usage(format!(
                    "-p {p} disagrees with p={} in {}",
                    pres.field.p(),
                    path.display()
                )));
            }
        }
        return Ok((pres, format!("file {}", path.display())));
    }
    let preset = src
        .preset
        .ok_or_else(|| usage("give a presentation with --preset or --relators"))?;
    let p = src.p.ok_or_else(|| usage("-p is required"))?;
    let n = src.n.unwrap_or(1);
    match preset {
        Preset::Theorem41 => {
            let s = src.s.unwrap_or(1);
            let pres = build_theorem41(p, n, s).map_err(usage)?;
            Ok((pres, format!("theorem41 p={p} n={n} s={s}")))
        }
        Preset::Minus1 => {
            let a = src.a.ok_or_else(|| usage("-a is required for the minus1 preset"))?;
            let lambda = src.lambda.unwrap_or(1);
            let pres = build_minus1(p, n, a, lambda, src.odd_k).map_err(usage)?;
            Ok((
                pres,
                format!("minus1 p={p} n={n} a={a} lambda={lambda} odd_k={}", src.odd_k),
            ))
        }
        Preset::Free => Ok((Presentation::free(field(p)?), format!("free p={p}"))),
    }
}

fn reliable(max_degree: usize, bound: Option<usize>) -> Result<usize, Failure> {
    let r = bound.unwrap_or(max_degree.saturating_sub(2));
    if r < 2 || r >= max_degree {
        return Err(usage(format!(
            "reliable bound {r} must satisfy 2 <= bound < max-degree ({max_degree})"
        )));
    }
    Ok(r)
}

fn emit(out: &OutputArgs, json_text: String, text: String) -> Result<(), Failure> {
    let body = match out.format {
        Format::Json => json_text + "\n",
        Format::Text => text,
    };
    match &out.output {
        Some(path) => fs::write(path, body)
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

fn dims_output(
    out: &OutputArgs,
    alg: &GradedAlgebra,
    source: &str,
    thin_core: bool,
) -> Result<(), Failure> {
    let dims = alg.dims();
    let doc = json!({
        "schema": DIMS_SCHEMA,
        "source": source,
        "p": alg.field().p(),
        "max_degree": alg.max_degree(),
        "thin_core": thin_core,
        "dims": dims,
        "collapse_degree": alg.collapse_degree(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "source          {source}");
    let _ = writeln!(text, "p               {}", alg.field().p());
    let _ = writeln!(text, "max_degree      {}", alg.max_degree());
    let _ = writeln!(text, "thin_core       {thin_core}");
    let _ = writeln!(text, "dims            {}", join(&dims));
    let _ = writeln!(
        text,
        "collapse_degree {}",
        alg.collapse_degree().map_or("none".into(), |d| d.to_string())
    );
    emit(out, serde_json::to_string_pretty(&doc).unwrap(), text)
}

fn cmd_compute(args: &ComputeArgs) -> Result<u8, Failure> {
    let (pres, source) = load_presentation(&args.source)?;
    let raw = compute(&pres, args.max_degree).map_err(usage)?;
    let alg = if args.thin_core {
        let r = reliable(args.max_degree, args.reliable_bound)?;
        raw.thin_core(r).map_err(usage)?
    } else {
        raw
    };
    if let Some(path) = &args.save_algebra {
        fs::write(path, alg.to_json() + "\n")
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    dims_output(&args.out, &alg, &source, args.thin_core)?;
    Ok(0)
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<u8, Failure> {
    let (raw, q) = if let Some(path) = &args.load_algebra {
        let text = fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        let alg = GradedAlgebra::from_json(&text).map_err(usage)?;
        (alg, None)
    } else {
        let (pres, _) = load_presentation(&args.source)?;
        let d = args
            .max_degree
            .ok_or_else(|| usage("--max-degree is required"))?;
        (compute(&pres, d).map_err(usage)?, pres.q())
    };
    let r = reliable(raw.max_degree(), args.reliable_bound)?;
    let core = raw.thin_core(r).map_err(usage)?;
    let report = full_report(
        &core,
        &ReportOptions {
            q: args.q.or(q),
            ..Default::default()
        },
    );
    emit(&args.out, report.to_json(), report.to_text())?;
    Ok(if report.has_findings() { 3 } else { 0 })
}

fn verify_spec(args: &VerifyArgs) -> Result<ExperimentSpec, Failure> {
    let need = |v: Option<u32>, flag: &str| v.ok_or_else(|| usage(format!("{flag} is required")));
    let p = need(args.p, "-p")?;
    let max_degree = args
        .max_degree
        .ok_or_else(|| usage("--max-degree is required"))?;
    let (n, s, reliable_bound) = (args.n, args.s, args.reliable_bound);
    Ok(match args.experiment.as_str() {
        "theorem41" => ExperimentSpec::Theorem41 { p, n, s, max_degree, reliable_bound },
        "lemma-identities" => ExperimentSpec::LemmaIdentities { p, n, s, max_degree, reliable_bound },
        "prop-chains" => ExperimentSpec::PropChains { p, n, s, max_degree, reliable_bound },
        "second-diamond" => ExperimentSpec::SecondDiamond { p, n, s, max_degree, reliable_bound },
        "ldies" => ExperimentSpec::Ldies {
            p,
            n,
            a: need(args.a, "-a")?,
            max_degree,
            reliable_bound,
        },
        "superfluity" => ExperimentSpec::Superfluity {
            p,
            n,
            a: need(args.a, "-a")?,
            max_degree,
            reliable_bound,
        },
        other => return Err(usage(format!("unknown experiment '{other}'"))),
    })
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let results = if args.experiment == "all" {
        let specs = match &args.manifest {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                let v: serde_json::Value = serde_json::from_str(&text).map_err(usage)?;
                serde_json::from_value(v["experiments"].clone()).map_err(usage)?
            }
            None => harness::manifest(),
        };
        harness::run_all(&specs)
    } else {
        let spec = verify_spec(args)?;
        vec![spec.run().map_err(usage)?]
    };
    let doc = ResultsDocument::new(results);
    emit(&args.out, doc.to_json(), doc.to_text())?;
    Ok(if doc.failed == 0 { 0 } else { 1 })
}

fn cmd_free_dims(args: &FreeDimsArgs) -> Result<u8, Failure> {
    let alg = compute(&Presentation::free(field(args.p)?), args.max_degree).map_err(usage)?;
    let dims = alg.dims();
    let doc = json!({
        "schema": DIMS_SCHEMA,
        "source": format!("free p={}", args.p),
        "p": args.p,
        "max_degree": args.max_degree,
        "thin_core": false,
        "dims": dims,
        "collapse_degree": null,
    });
    emit(
        &args.out,
        serde_json::to_string_pretty(&doc).unwrap(),
        join(&dims) + "\n",
    )?;
    Ok(0)
}

fn cmd_binom(args: &BinomArgs) -> Result<u8, Failure> {
    let value = lucas_binomial(args.a, args.b, field(args.p)?).value();
    let doc = json!({ "p": args.p, "a": args.a, "b": args.b, "value": value });
    emit(
        &args.out,
        serde_json::to_string_pretty(&doc).unwrap(),
        format!("{value}\n"),
    )?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(a) => cmd_compute(a),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Verify(a) => cmd_verify(a),
        Command::FreeDims(a) => cmd_free_dims(a),
        Command::Binom(a) => cmd_binom(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
