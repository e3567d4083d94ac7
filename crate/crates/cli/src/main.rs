//! `slrev`: classify Jordan data for reversibility in SL(n, ℂ), build and
//! check reversing witnesses, show Weyr data, and run the self-test suite.
//!
//! Exit codes depend only on the verdict, never on `--format`.

use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use slrev::reversal::{is_strongly_reversible, pair_blocks, theorem_verdict};
use slrev::verify::{mutant_classifier, run_selftest};
use slrev::{
    check_witness, det_sign_of_involutive_reverser, involutive_witness, sl_reverser_witness, weyr_of,
    DetSignPrediction, ExactMatrix, JordanSpec, Partition, ReversalError, VerificationReport,
};

const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "slrev", version, about = "Reversibility and strong reversibility in SL(n, C) from Jordan data")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide reversibility and strong reversibility.
    /// Exit 0 strongly reversible, 1 reversible only, 2 not reversible.
    Classify(SpecInput),
    /// Build and verify a reversing element.
    /// Exit 2 if not reversible, 1 if an involutive one was asked for but cannot exist.
    Witness(WitnessArgs),
    /// Check a candidate g against A. Exit 0 iff g reverses A, g² = I and det g = 1.
    Verify(VerifyArgs),
    /// Weyr structures, Weyr matrix and the duality permutation.
    Weyr(SpecInput),
    /// Run every verification suite. Exit 0 iff there are no failures.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct SpecInput {
    /// Jordan spec JSON file, or `-` for stdin.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[command(flatten)]
    spec: SpecInput,
    /// Require g² = I (the default).
    #[arg(long, conflicts_with = "sl_only")]
    involutive: bool,
    /// Only require g ∈ SL(n).
    #[arg(long)]
    sl_only: bool,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).multiple(true))]
struct VerifyArgs {
    /// Matrix JSON for A, or a witness JSON (its `a` field is used).
    #[arg(long, group = "source", requires = "matrix_g")]
    matrix_a: Option<PathBuf>,
    /// Matrix JSON for g, or a witness JSON (its `g` field is used).
    #[arg(long, group = "source", requires = "matrix_a")]
    matrix_g: Option<PathBuf>,
    /// Witness JSON as written by `slrev witness --format json`.
    #[arg(long, group = "source", conflicts_with_all = ["matrix_a", "matrix_g"])]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, default_value_t = 6)]
    max_n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Judge with a deliberately broken classifier; the run must fail.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

/// Bad input: reported on stderr with exit code 3.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<u8, InputError>;

fn read_text(path: &Path) -> Result<String, InputError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn parse_file<T: DeserializeOwned>(path: &Path) -> Result<T, InputError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_spec(input: &SpecInput) -> Result<JordanSpec, InputError> {
    parse_file(&input.input)
}

/// A bare matrix, or the `field` member of a witness document.
fn read_matrix(path: &Path, field: &str) -> Result<ExactMatrix, InputError> {
    let mut value: Value = parse_file(path)?;
    let is_witness = value.get("a").is_some() && value.get("g").is_some();
    if is_witness {
        value = value[field].take();
    }
    serde_json::from_value(value).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn diagram(label: &str, p: &Partition) {
    println!("{label} = {p}");
    if p.is_empty() {
        println!("  (empty)");
    }
    for line in p.young_ascii().lines() {
        println!("  {line}");
    }
}

fn classify(format: Format, input: &SpecInput) -> Outcome {
    let spec = read_spec(input)?;
    let pairing = pair_blocks(&spec);
    let strong = is_strongly_reversible(&spec);
    let det_sign = det_sign_of_involutive_reverser(&spec).ok();
    match format {
        Format::Json => print_json(&json!({
            "spec": spec,
            "reversibility": pairing,
            "strong_reversibility": strong,
            "involutive_det_sign": det_sign.map(|d| d.to_string()),
        })),
        Format::Text => {
            println!("spec {spec}, n = {}", spec.n());
            match &pairing.failure_witness {
                Some(b) => println!("not reversible: {b} has no partner"),
                None => {
                    for p in &pairing.pairs {
                        println!("pair      {} <-> {}", p.first.block, p.second.block);
                    }
                    for s in &pairing.singletons {
                        println!("self-dual {}", s.block);
                    }
                    println!("p = {}, q = {}", strong.p, strong.q);
                    diagram("d(p)", &strong.dp);
                    diagram("d(q)", &strong.dq);
                    println!("condition (1), an odd ±1 block: {}", strong.condition1);
                    println!(
                        "condition (2), weight {} is even: {}",
                        strong.condition2_value, strong.condition2
                    );
                    if let Some(d) = det_sign {
                        println!("det of involutive reversers: {d}");
                    }
                    println!(
                        "{}",
                        if strong.strongly_reversible { "strongly reversible" } else { "reversible, not strongly reversible" }
                    );
                }
            }
        }
    }
    Ok(match (strong.reversible, strong.strongly_reversible) {
        (true, true) => 0,
        (true, false) => 1,
        _ => 2,
    })
}

fn witness(format: Format, args: &WitnessArgs) -> Outcome {
    let spec = read_spec(&args.spec)?;
    let involutive = !args.sl_only;
    let built = if involutive { involutive_witness(&spec) } else { sl_reverser_witness(&spec) };
    let bundle = match built {
        Ok(b) => b,
        Err(ReversalError::NotReversible(block)) => {
            eprintln!("not reversible: {block} has no partner, so no reverser exists");
            return Ok(2);
        }
        Err(ReversalError::NotStronglyReversible(prediction)) => {
            let cited = match prediction {
                DetSignPrediction::Forced(s) => format!("Forced({s})"),
                DetSignPrediction::Free => prediction.to_string(),
            };
            eprintln!(
                "no involutive reverser in SL(n): every involutive reverser of {spec} has determinant {prediction} ({cited}); \
                 use --sl-only for a non-involutive one"
            );
            return Ok(1);
        }
        Err(e) => return Err(e.into()),
    };
    let report = check_witness(&bundle.a, &bundle.g)?;
    match format {
        Format::Json => print_json(&json!({
            "spec": spec,
            "mode": if involutive { "involutive" } else { "sl-only" },
            "a": bundle.a,
            "g": bundle.g,
            "report": report,
            "transcript": bundle.transcript,
        })),
        Format::Text => {
            println!("A =\n{}", bundle.a);
            println!("g =\n{}", bundle.g);
            for line in &bundle.transcript {
                println!("# {line}");
            }
            print_report(&report);
            if !report.involution {
                let square = bundle.g.mul(&bundle.g)?;
                if square == ExactMatrix::identity(square.rows()).neg() {
                    println!("note: g² = -I");
                }
            }
        }
    }
    Ok(0)
}

fn print_report(report: &VerificationReport) {
    println!("reverses (gAg⁻¹ = A⁻¹): {}", report.reverses);
    println!("involution (g² = I): {}", report.involution);
    println!("det g = {}", report.determinant);
    for r in &report.residuals {
        println!("  {r}");
    }
}

fn verify(format: Format, args: &VerifyArgs) -> Outcome {
    let (a, g) = match (&args.input, &args.matrix_a, &args.matrix_g) {
        (Some(w), _, _) => (read_matrix(w, "a")?, read_matrix(w, "g")?),
        (None, Some(a), Some(g)) => (read_matrix(a, "a")?, read_matrix(g, "g")?),
        _ => return Err(InputError("need --input, or both --matrix-a and --matrix-g".into())),
    };
    if !a.is_square() || a.shape() != g.shape() {
        return Err(InputError(format!(
            "dimension mismatch: A is {}x{}, g is {}x{}",
            a.rows(),
            a.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let report = check_witness(&a, &g)?;
    match format {
        Format::Json => print_json(&report),
        Format::Text => print_report(&report),
    }
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn weyr(format: Format, input: &SpecInput) -> Outcome {
    let spec = read_spec(input)?;
    let form = weyr_of(&spec)?;
    let jordan: Vec<Partition> = form.structures.iter().map(|w| spec.jordan_structure(&w.eigenvalue)).collect();
    match format {
        Format::Json => print_json(&json!({
            "spec": spec,
            "structures": form.structures.iter().zip(&jordan).map(|(w, j)| json!({
                "eigenvalue": w.eigenvalue,
                "jordan": j,
                "weyr": w.sizes,
            })).collect::<Vec<_>>(),
            "matrix": form.matrix,
            "permutation": form.permutation,
        })),
        Format::Text => {
            for (w, j) in form.structures.iter().zip(&jordan) {
                println!("eigenvalue {}", w.eigenvalue);
                diagram("  Jordan", j);
                diagram("  Weyr", &w.sizes);
            }
            println!("Weyr matrix =\n{}", form.matrix);
            let images: Vec<String> = (0..spec.n()).map(|k| (form.permutation.apply(k) + 1).to_string()).collect();
            println!("Jordan index -> Weyr index: [{}]", images.join(", "));
        }
    }
    Ok(0)
}

fn selftest(format: Format, args: &SelftestArgs) -> Outcome {
    let classifier = if args.inject_fault { mutant_classifier } else { theorem_verdict };
    let report = run_selftest(args.max_n, args.seed, classifier);
    match format {
        Format::Json => print_json(&json!({ "passed": report.passed(), "report": report })),
        Format::Text => {
            println!("selftest max_n = {}, seed = {}", report.max_n, report.seed);
            for s in &report.sections {
                let verdict = if s.summary.passed() { "ok  " } else { "FAIL" };
                println!(
                    "{verdict} {:<20} {} cases, {} checks, {} failures",
                    s.name,
                    s.summary.cases,
                    s.summary.checks,
                    s.summary.failures.len()
                );
                for f in s.summary.failures.iter().take(5) {
                    let spec = f.spec.as_ref().map(ToString::to_string).unwrap_or_default();
                    println!("     {} {spec}: {}", f.check, f.detail);
                }
            }
            println!("{}", if report.passed() { "passed" } else { "failed" });
        }
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which would read as "not reversible".
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Classify(input) => classify(cli.format, input),
        Command::Witness(args) => witness(cli.format, args),
        Command::Verify(args) => verify(cli.format, args),
        Command::Weyr(input) => weyr(cli.format, input),
        Command::Selftest(args) => selftest(cli.format, args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
