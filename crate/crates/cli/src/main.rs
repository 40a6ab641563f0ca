//! Command-line front end: composition, enumeration, dimension tables,
//! Hilbert series, basis conversion, dual-tree conversion, and the full
//! verification suite, all with deterministic byte-stable output.

use std::fmt;
use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use clique_operads::bases;
use clique_operads::enumeration::{self, EnumError, EnumGuard};
use clique_operads::families::{FamilyError, OperadFamily};
use clique_operads::noncrossing::{self, NcError};
use clique_operads::operad::{self, AxiomMode, BasisTag, LinComb, OperadError, Report};
use clique_operads::presentation;
use clique_operads::{Clique, CliqueError, MagmaError, UnitaryMagma};

const WORKERS_ENV: &str = "CLIQUE_OPERADS_WORKERS";
const DEFAULT_SEED: u64 = 42;
const DEFAULT_SAMPLES: u32 = 1000;
const SAMPLE_WINDOW: i64 = 3;

#[derive(Parser)]
#[command(
    name = "clique-operads",
    about = "Operads of decorated cliques: exact composition, enumeration, and verification",
    version
)]
struct Cli {
    /// Worker threads for parallel checks; also read from
    /// CLIQUE_OPERADS_WORKERS. Output is independent of this value.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two cliques read from JSON files.
    Compose(ComposeArgs),
    /// Dimension table of a family against its expected sequence.
    Dims(DimsArgs),
    /// Coefficients of the noncrossing Hilbert series or its dual.
    Hilbert(HilbertArgs),
    /// Convert a linear combination between the fund/H/K bases.
    Basis(BasisArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Enumerate cliques, optionally filtered by a family.
    Enumerate(EnumerateArgs),
    /// Span of lower-arity compositions versus the generating set.
    Span(SpanArgs),
    /// Convert between clique JSON and dual-tree JSON.
    Tree(TreeArgs),
}

#[derive(Args)]
struct ComposeArgs {
    /// Expected magma of both operands (checked against the files).
    #[arg(long)]
    magma: Option<String>,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
    #[arg(long)]
    pos: u32,
    /// fund composes cliques; H and K apply the closed basis formulas.
    #[arg(long, default_value = "fund")]
    basis: String,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct DimsArgs {
    /// Family name, e.g. NC, Bub, Cro:2, Deg:1, Sch.
    #[arg(long)]
    family: String,
    #[arg(long)]
    magma: String,
    /// Largest arity to tabulate.
    #[arg(long)]
    max: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Raise the enumeration guard after printing a resource estimate.
    #[arg(long)]
    force: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct HilbertArgs {
    /// Magma cardinality.
    #[arg(long)]
    m: u64,
    #[arg(long)]
    terms: u32,
    /// Compute the Koszul-dual series instead.
    #[arg(long)]
    dual: bool,
}

#[derive(Args)]
struct BasisArgs {
    /// Target basis: fund, H, or K.
    #[arg(long)]
    to: String,
    /// Input linear-combination JSON file.
    #[arg(long)]
    input: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite: axioms, ideal, cyclic, basic, presentation, koszul,
    /// reconstruction, bijection, or all.
    which: String,
    #[arg(long)]
    magma: String,
    /// Arity bound for the exhaustive checks.
    #[arg(long, default_value_t = 3)]
    max: u32,
    /// Seed for sampled checks over the integers.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Sample count for sampled checks over the integers.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u32,
    /// Family for the ideal suite.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    magma: String,
    #[arg(long)]
    arity: u32,
    /// Restrict to members of this family.
    #[arg(long)]
    family: Option<String>,
    /// Print only the count.
    #[arg(long)]
    count: bool,
    /// Raise the enumeration guard after printing a resource estimate.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SpanArgs {
    #[arg(long)]
    magma: String,
    #[arg(long)]
    arity: u32,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct TreeArgs {
    /// Input file: clique JSON, or tree JSON with --from-tree.
    #[arg(long)]
    input: String,
    /// Interpret the input as a dual tree and emit the clique.
    #[arg(long)]
    from_tree: bool,
    /// Magma for --from-tree (tree JSON carries no magma name).
    #[arg(long)]
    magma: Option<String>,
    #[arg(long)]
    out: Option<String>,
}

/// CLI failure: a message and the exit code documented for its error
/// class (2 usage, 3 I/O or JSON, 4 magma, 5 family, 6 guard, 7 domain).
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> CliError {
        CliError {
            code,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> CliError {
        CliError::new(2, message)
    }

    fn io(message: impl fmt::Display) -> CliError {
        CliError::new(3, message.to_string())
    }
}

impl From<MagmaError> for CliError {
    fn from(e: MagmaError) -> Self {
        match e {
            MagmaError::UnknownName(_) | MagmaError::InvalidParameter(_) => {
                CliError::new(4, e.to_string())
            }
            _ => CliError::new(7, e.to_string()),
        }
    }
}

impl From<CliqueError> for CliError {
    fn from(e: CliqueError) -> Self {
        match e {
            CliqueError::Json(_) => CliError::new(3, e.to_string()),
            _ => CliError::new(7, e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::UnknownFamily(_)
            | FamilyError::MissingParameter(_)
            | FamilyError::Inadmissible { .. } => CliError::new(5, e.to_string()),
            _ => CliError::new(7, e.to_string()),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::GuardExceeded { .. } => CliError::new(6, e.to_string()),
            EnumError::Family(f) => f.into(),
            _ => CliError::new(7, e.to_string()),
        }
    }
}

impl From<OperadError> for CliError {
    fn from(e: OperadError) -> Self {
        match e {
            OperadError::Clique(c) => c.into(),
            _ => CliError::new(7, e.to_string()),
        }
    }
}

impl From<NcError> for CliError {
    fn from(e: NcError) -> Self {
        match e {
            NcError::Json(_) => CliError::new(3, e.to_string()),
            _ => CliError::new(7, e.to_string()),
        }
    }
}

impl From<bases::BasesError> for CliError {
    fn from(e: bases::BasesError) -> Self {
        CliError::new(7, e.to_string())
    }
}

impl From<presentation::PresentationError> for CliError {
    fn from(e: presentation::PresentationError) -> Self {
        CliError::new(7, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| {
        std::env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(n) = workers {
        // Results are independent of the pool size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli.command) {
        Ok(Outcome { output, all_pass }) => {
            print!("{output}");
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct Outcome {
    output: String,
    all_pass: bool,
}

impl Outcome {
    fn ok(output: String) -> Outcome {
        Outcome {
            output,
            all_pass: true,
        }
    }
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Compose(args) => compose_cmd(args),
        Command::Dims(args) => dims_cmd(args),
        Command::Hilbert(args) => hilbert_cmd(args),
        Command::Basis(args) => basis_cmd(args),
        Command::Verify(args) => verify_cmd(args),
        Command::Enumerate(args) => enumerate_cmd(args),
        Command::Span(args) => span_cmd(args),
        Command::Tree(args) => tree_cmd(args),
    }
}

fn magma_by_name(name: &str) -> Result<Arc<UnitaryMagma>, CliError> {
    Ok(UnitaryMagma::builtin(name)?)
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(format!("{path}: {e}")))
}

fn emit(out: Option<&str>, content: &str) -> Result<String, CliError> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| CliError::io(format!("{path}: {e}")))?;
            Ok(format!("wrote {path}\n"))
        }
        None => Ok(format!("{content}\n")),
    }
}

fn guard_for(force: bool, estimate: Option<String>, buffer: &mut String) -> EnumGuard {
    if force {
        if let Some(est) = estimate {
            buffer.push_str(&format!("# resource estimate: {est}\n"));
        }
        EnumGuard::unlimited()
    } else {
        EnumGuard::default()
    }
}

fn compose_cmd(args: ComposeArgs) -> Result<Outcome, CliError> {
    let lhs = Clique::from_json_str(&read_file(&args.lhs)?)?;
    let rhs = Clique::from_json_str(&read_file(&args.rhs)?)?;
    if let Some(name) = &args.magma {
        for (side, clique) in [("lhs", &lhs), ("rhs", &rhs)] {
            if clique.magma().name() != name {
                return Err(CliError::new(
                    7,
                    format!(
                        "{side} clique is over {}, expected {name}",
                        clique.magma().name()
                    ),
                ));
            }
        }
    }
    let basis = BasisTag::parse(&args.basis)
        .ok_or_else(|| CliError::usage(format!("unknown basis {}", args.basis)))?;
    let content = match basis {
        BasisTag::Fundamental => lhs.compose(args.pos, &rhs)?.to_json_string(),
        BasisTag::H => bases::h_compose(&lhs, args.pos, &rhs)?.to_json_string(),
        BasisTag::K => bases::k_compose(&lhs, args.pos, &rhs)?.to_json_string(),
    };
    Ok(Outcome::ok(emit(args.out.as_deref(), &content)?))
}

fn dims_cmd(args: DimsArgs) -> Result<Outcome, CliError> {
    let magma = magma_by_name(&args.magma)?;
    let family = OperadFamily::parse(&args.family, &magma)?;
    let mut header = format!(
        "# clique-operads dims\n# family: {}\n# magma: {}\n# max arity: {}\n",
        family.name(),
        magma.name(),
        args.max
    );
    let estimate = magma
        .cardinality()
        .and_then(|m| enumeration::space_size(m as u64, args.max))
        .map(|s| format!("largest space {s} cliques"));
    let guard = guard_for(args.force, estimate, &mut header);
    let table = enumeration::dimension_table(&family, args.max, &guard)?;
    let body = match args.format {
        TableFormat::Csv => table.to_csv(),
        TableFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&table).map_err(CliError::io)?
        ),
    };
    Ok(Outcome {
        output: format!("{header}{body}"),
        all_pass: table.verdict(),
    })
}

fn hilbert_cmd(args: HilbertArgs) -> Result<Outcome, CliError> {
    if args.m < 1 || args.terms < 1 {
        return Err(CliError::usage("hilbert needs m >= 1 and terms >= 1"));
    }
    let series = if args.dual {
        noncrossing::nc_dual_hilbert(args.m, args.terms)
    } else {
        noncrossing::nc_hilbert(args.m, args.terms)
    };
    Ok(Outcome::ok(format!("{series}\n")))
}

fn convert_to(f: &LinComb, target: BasisTag) -> Result<LinComb, CliError> {
    // Route through the fundamental basis.
    let fundamental = match f.basis() {
        BasisTag::Fundamental => f.clone(),
        BasisTag::H => bases::from_h(f)?,
        BasisTag::K => bases::from_k(f)?,
    };
    Ok(match target {
        BasisTag::Fundamental => fundamental,
        BasisTag::H => bases::to_h(&fundamental)?,
        BasisTag::K => bases::to_k(&fundamental)?,
    })
}

fn basis_cmd(args: BasisArgs) -> Result<Outcome, CliError> {
    let target = BasisTag::parse(&args.to)
        .ok_or_else(|| CliError::usage(format!("unknown basis {}", args.to)))?;
    let input = LinComb::from_json_str(&read_file(&args.input)?)?;
    let converted = convert_to(&input, target)?;
    Ok(Outcome::ok(emit(
        args.out.as_deref(),
        &converted.to_json_string(),
    )?))
}

fn enumerate_cmd(args: EnumerateArgs) -> Result<Outcome, CliError> {
    let magma = magma_by_name(&args.magma)?;
    let family = args
        .family
        .as_deref()
        .map(|f| OperadFamily::parse(f, &magma))
        .transpose()?;
    let mut header = format!(
        "# clique-operads enumerate\n# magma: {}\n# arity: {}\n# family: {}\n",
        magma.name(),
        args.arity,
        family.as_ref().map_or("none", |f| f.name())
    );
    let estimate = magma
        .cardinality()
        .and_then(|m| enumeration::space_size(m as u64, args.arity))
        .map(|s| format!("{s} cliques"));
    let guard = guard_for(args.force, estimate, &mut header);
    if args.count {
        let count = enumeration::enumerate_count(&magma, args.arity, family.as_ref(), &guard)?;
        return Ok(Outcome::ok(format!("{header}count: {count}\n")));
    }
    let mut body = String::new();
    let mut count = 0u64;
    for clique in enumeration::enumerate_stream(&magma, args.arity, &guard)? {
        if family.as_ref().is_none_or(|f| f.member(&clique)) {
            body.push_str(&clique.to_json_string());
            body.push('\n');
            count += 1;
        }
    }
    body.push_str(&format!("count: {count}\n"));
    Ok(Outcome::ok(format!("{header}{body}")))
}

fn span_cmd(args: SpanArgs) -> Result<Outcome, CliError> {
    let magma = magma_by_name(&args.magma)?;
    let mut header = format!(
        "# clique-operads span\n# magma: {}\n# arity: {}\n",
        magma.name(),
        args.arity
    );
    let estimate = magma
        .cardinality()
        .and_then(|m| enumeration::space_size(m as u64, args.arity))
        .map(|s| format!("{s} basis cliques"));
    let guard = guard_for(args.force, estimate, &mut header);
    let result = enumeration::generating_span(&magma, args.arity, &guard)?;
    let body = match args.format {
        TableFormat::Csv => format!(
            "arity: {}\nspan dimension: {}\ngenerators: {}\ntotal dimension: {}\nverdict: {}\n",
            result.arity,
            result.span_dim,
            result.generator_count,
            result.total_dim,
            result.verdict
        ),
        TableFormat::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&result).map_err(CliError::io)?
        ),
    };
    Ok(Outcome {
        output: format!("{header}{body}"),
        all_pass: result.verdict,
    })
}

fn tree_cmd(args: TreeArgs) -> Result<Outcome, CliError> {
    let input = read_file(&args.input)?;
    if args.from_tree {
        let name = args
            .magma
            .ok_or_else(|| CliError::usage("--from-tree needs --magma"))?;
        let magma = magma_by_name(&name)?;
        let tree = noncrossing::DualTree::from_json_str(&magma, &input)?;
        let clique = noncrossing::from_dual_tree(&tree)?;
        Ok(Outcome::ok(emit(
            args.out.as_deref(),
            &clique.to_json_string(),
        )?))
    } else {
        let clique = Clique::from_json_str(&input)?;
        let tree = noncrossing::to_dual_tree(&clique)?;
        Ok(Outcome::ok(emit(
            args.out.as_deref(),
            &tree.to_json_string(),
        )?))
    }
}

/// Default families exercised by `verify ideal` and `verify all`.
const IDEAL_FAMILIES: [&str; 6] = ["NC", "Bub", "Acy", "Nes", "Deg:1", "Deg:2"];

fn verify_cmd(args: VerifyArgs) -> Result<Outcome, CliError> {
    let magma = magma_by_name(&args.magma)?;
    let known = [
        "axioms",
        "ideal",
        "cyclic",
        "basic",
        "presentation",
        "koszul",
        "reconstruction",
        "bijection",
        "all",
    ];
    if !known.contains(&args.which.as_str()) {
        return Err(CliError::usage(format!(
            "unknown verification {}; expected one of {}",
            args.which,
            known.join(", ")
        )));
    }
    let mut reports: Vec<Report> = Vec::new();
    let mut skipped: Vec<String> = Vec::new();
    let all = args.which == "all";

    if all || args.which == "axioms" {
        let mode = if magma.is_finite() {
            AxiomMode::Exhaustive
        } else {
            AxiomMode::Sampled {
                samples: args.samples,
                seed: args.seed,
                window: SAMPLE_WINDOW,
            }
        };
        let bound = if magma.is_finite() {
            args.max
        } else {
            args.max.max(4)
        };
        reports.push(operad::verify_operad_axioms(&magma, bound, mode));
    }
    if all || args.which == "ideal" {
        if !magma.is_finite() {
            skipped.push("ideal: needs a finite magma".into());
        } else {
            match &args.family {
                Some(f) => {
                    let family = OperadFamily::parse(f, &magma)?;
                    reports.push(clique_operads::families::verify_ideal(&family, args.max)?);
                }
                None => {
                    for name in IDEAL_FAMILIES {
                        match OperadFamily::parse(name, &magma) {
                            Ok(family) => reports
                                .push(clique_operads::families::verify_ideal(&family, args.max)?),
                            Err(FamilyError::Inadmissible { family, condition }) => {
                                skipped.push(format!("ideal-{family}: {condition}"));
                            }
                            Err(e) => return Err(e.into()),
                        }
                    }
                }
            }
        }
    }
    if all || args.which == "cyclic" {
        if magma.is_finite() {
            reports.push(operad::check_cyclic(&magma, args.max));
        } else {
            skipped.push("cyclic: needs a finite magma".into());
        }
    }
    if all || args.which == "basic" {
        if magma.is_finite() {
            // Cubic in the component sizes; cap the arity for larger magmas.
            let bound = if magma.cardinality().unwrap() > 2 {
                args.max.min(2)
            } else {
                args.max
            };
            reports.push(operad::check_basic(&magma, bound));
        } else {
            skipped.push("basic: needs a finite magma".into());
        }
    }
    if all || args.which == "presentation" {
        if magma.is_finite() {
            reports.push(presentation::verify_presentation(&magma, args.max + 2)?);
        } else {
            skipped.push("presentation: needs a finite magma".into());
        }
    }
    if all || args.which == "koszul" {
        if magma.is_finite() {
            reports.push(presentation::verify_koszul_duality(&magma)?);
        } else {
            skipped.push("koszul: needs a finite magma".into());
        }
    }
    if all || args.which == "reconstruction" {
        reports.push(enumeration::reconstruction_checks());
    }
    if all || args.which == "bijection" {
        if magma.is_finite() {
            reports.push(noncrossing::verify_bijection(&magma, args.max)?);
        } else {
            skipped.push("bijection: needs a finite magma".into());
        }
    }

    let mut output = String::new();
    output.push_str(&format!(
        "# clique-operads verify {}\n# magma: {}\n# max arity: {}\n# seed: {} ({} samples, labels in [-{}, {}], sampled checks only)\n",
        args.which,
        magma.name(),
        args.max,
        args.seed,
        args.samples,
        SAMPLE_WINDOW,
        SAMPLE_WINDOW
    ));
    // Conventions pinned or discovered by the verifiers.
    output.push_str("# conventions:\n");
    output.push_str("#   rotation: counterclockwise, vertex 1 -> n+1, x -> x-1\n");
    if magma.is_finite() {
        if let Some(law) = operad::discover_cyclic_law(&magma, args.max.min(3)) {
            output.push_str(&format!("#   cyclic law: {}\n", law.describe()));
        }
    }
    output.push_str(
        "#   duality pairing: +1 on slot-1 x slot-1, -1 on slot-2 x slot-2, 0 across shapes\n",
    );
    output.push_str(
        "#   rewrite orientation: slot-1 cancelling patterns rewrite to slot-2; glued pairs rewrite to the lexicographically least pair with the same product\n",
    );
    for s in &skipped {
        output.push_str(&format!("skipped {s}\n"));
    }
    let mut all_pass = true;
    for report in &reports {
        output.push_str(&report.render());
        all_pass &= report.verdict();
    }
    output.push_str(&format!(
        "verdict: {} ({}/{} checks pass)\n",
        if all_pass { "pass" } else { "FAIL" },
        reports.iter().filter(|r| r.verdict()).count(),
        reports.len()
    ));
    Ok(Outcome { output, all_pass })
}
