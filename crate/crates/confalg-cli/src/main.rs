//! `confalg` — exact configuration-space cohomology tables from an algebra
//! presentation.
//!
//! Verbs: `compute` (Betti tables per cardinality), `validate` (check an
//! input document), `stability` (dimension-level stability consistency).
//! Exit codes: 0 success, 1 validation failure, 2 parse error,
//! 3 precondition failure, 4 stability mismatch.

mod cache;
mod doc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use confalg::cdga::{self, builtin, BuiltinId, CdgaError, GCAlgebra};
use confalg::confspace::{
    conf_cohomology, default_generator, stability_report, ConfResult, ConfspaceError,
};
use confalg::grvec::{BasisElement, Bidegree, GradedSpace};
use doc::Normalization;
use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "confalg",
    version,
    about = "Exact (associated-graded) compactly-supported cohomology of unordered configuration spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Betti tables of Conf_k for k = 1..=max-card
    Compute(ComputeArgs),
    /// Validate an input document; exit 0 iff it is a valid presentation
    Validate { path: PathBuf },
    /// Check dimension-level homological stability against the stable ranges
    Stability(StabilityArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Builtin space: affine | projective | curve
    #[arg(long, conflicts_with = "input")]
    builtin: Option<String>,
    /// Dimension parameter for affine/projective builtins
    #[arg(long)]
    n: Option<u32>,
    /// Genus parameter for the curve builtin
    #[arg(long)]
    genus: Option<u32>,
    /// Path to an input document (TOML)
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest configuration cardinality to compute
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_card: u32,
    /// Generator space: "default" (constant sheaf) or "deg:wt[,deg:wt...]"
    #[arg(long, default_value = "default")]
    generator: String,
    #[arg(long, value_enum, default_value_t = NormalizationArg::Constant)]
    normalization: NormalizationArg,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Cache directory (CONFALG_CACHE_DIR overrides when the flag is absent)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct StabilityArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    max_card: u32,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NormalizationArg {
    Constant,
    Dualizing,
    Both,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Constant => Normalization::Constant,
            NormalizationArg::Dualizing => Normalization::Dualizing,
            NormalizationArg::Both => Normalization::Both,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

enum CliError {
    Validation(Vec<cdga::Diagnostic>),
    Parse(String),
    Precondition(String),
    Mismatch,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Mismatch => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(diags) => {
                writeln!(f, "validation failed:")?;
                for d in diags {
                    writeln!(f, "  - {d}")?;
                }
                Ok(())
            }
            CliError::Parse(msg) => writeln!(f, "parse error: {msg}"),
            CliError::Precondition(msg) => writeln!(f, "precondition failed: {msg}"),
            CliError::Mismatch => writeln!(f, "stability MISMATCH detected"),
        }
    }
}

impl From<CdgaError> for CliError {
    fn from(e: CdgaError) -> Self {
        match e {
            CdgaError::ValidationFailed(diags) => CliError::Validation(diags),
            CdgaError::ParseError(m) => CliError::Parse(m),
            CdgaError::DuplicateLabel(l) => CliError::Parse(format!("duplicate basis label `{l}`")),
            CdgaError::UnknownBuiltin(b) => {
                CliError::Precondition(format!("unknown builtin `{b}`"))
            }
            CdgaError::InvalidParams { id, reason } => {
                CliError::Precondition(format!("invalid parameters for `{id}`: {reason}"))
            }
        }
    }
}

impl From<ConfspaceError> for CliError {
    fn from(e: ConfspaceError) -> Self {
        match e {
            ConfspaceError::ValidationFailed(diags) => CliError::Validation(diags),
            ConfspaceError::PreconditionFailed { hypothesis } => CliError::Precondition(hypothesis),
            ConfspaceError::DualizingUnavailable => CliError::Precondition(
                "dualizing normalization needs a smooth space with known dimension".into(),
            ),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl InputArgs {
    fn resolve(&self) -> Result<GCAlgebra, CliError> {
        match (&self.builtin, &self.input) {
            (Some(name), None) => {
                let id = BuiltinId::parse(name)
                    .ok_or_else(|| CdgaError::UnknownBuiltin(name.clone()))?;
                let param = match id {
                    BuiltinId::AffineSpace | BuiltinId::ProjectiveSpace => self
                        .n
                        .ok_or_else(|| CliError::Precondition("builtin requires --n".into()))?,
                    BuiltinId::SmoothProperCurve => self.genus.ok_or_else(|| {
                        CliError::Precondition("curve builtin requires --genus".into())
                    })?,
                };
                Ok(builtin(id, param)?)
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
                Ok(cdga::load(&text)?)
            }
            _ => Err(CliError::Precondition(
                "exactly one of --builtin or --input is required".into(),
            )),
        }
    }
}

fn parse_generator(spec: &str) -> Result<GradedSpace, CliError> {
    if spec == "default" {
        return Ok(default_generator());
    }
    let mut basis = Vec::new();
    for (i, item) in spec.split(',').enumerate() {
        let (deg, wt) = item.trim().split_once(':').ok_or_else(|| {
            CliError::Parse(format!("generator item `{item}` is not of the form deg:wt"))
        })?;
        let deg: i64 = deg
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("bad generator degree `{deg}`")))?;
        let wt: i64 = wt
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("bad generator weight `{wt}`")))?;
        basis.push(BasisElement::new(
            format!("gen{}", i + 1),
            Bidegree::new(deg, wt, 0),
        ));
    }
    GradedSpace::new(basis).map_err(|e| CliError::Parse(e.to_string()))
}

fn generator_canonical(g: &GradedSpace) -> String {
    g.basis()
        .iter()
        .map(|b| format!("{}:{}", b.bidegree.coh_deg, b.bidegree.tate_weight))
        .collect::<Vec<_>>()
        .join(",")
}

fn run_conf(
    algebra: &GCAlgebra,
    generator: &GradedSpace,
    max_card: u32,
) -> Result<ConfResult, CliError> {
    Ok(conf_cohomology(algebra, generator, max_card)?)
}

fn cmd_compute(args: &ComputeArgs) -> Result<(), CliError> {
    let algebra = args.input.resolve()?;
    let generator = parse_generator(&args.generator)?;
    let normalization: Normalization = args.normalization.into();

    if matches!(
        normalization,
        Normalization::Dualizing | Normalization::Both
    ) && !(algebra.meta().smooth && algebra.meta().dimension.is_some())
    {
        return Err(ConfspaceError::DualizingUnavailable.into());
    }

    let cache_dir = cache::cache_dir(args.cache_dir.as_deref());
    let key = cache::cache_key(
        &cdga::serialize(&algebra),
        &generator_canonical(&generator),
        args.max_card,
        normalization.as_str(),
    );

    let json = match cache_dir
        .as_deref()
        .and_then(|dir| cache::lookup(dir, &key))
        .filter(|text| doc::parse_json(text).is_some())
    {
        Some(cached) => cached,
        None => {
            let result = run_conf(&algebra, &generator, args.max_card)?;
            let docs = doc::documents(&result, normalization);
            let json = doc::render_json(&docs);
            if let Some(dir) = cache_dir.as_deref() {
                cache::store(dir, &key, &json);
            }
            json
        }
    };

    let docs = doc::parse_json(&json).expect("cache contents were verified");
    match args.format {
        Format::Json => print!("{json}"),
        Format::Table => print!("{}", doc::render_table(&docs)),
        Format::Csv => print!("{}", doc::render_csv(&docs)),
    }
    Ok(())
}

fn cmd_validate(path: &PathBuf) -> Result<(), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
    let algebra = cdga::load(&text)?;
    println!(
        "ok: `{}` is a valid presentation ({} basis elements)",
        algebra.meta().name,
        algebra.dim()
    );
    Ok(())
}

fn cmd_stability(args: &StabilityArgs) -> Result<(), CliError> {
    let algebra = args.input.resolve()?;
    let result = run_conf(&algebra, &default_generator(), args.max_card)?;
    let report = stability_report(&result)?;
    let document = doc::stability_document(&result, &report);
    match args.format {
        Format::Json => print!("{}", doc::render_stability_json(&document)),
        Format::Table => print!("{}", doc::render_stability_table(&document)),
        Format::Csv => print!("{}", doc::render_stability_csv(&document)),
    }
    if report.has_mismatch() {
        return Err(CliError::Mismatch);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Validate { path } => cmd_validate(path),
        Command::Stability(args) => cmd_stability(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprint!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}
