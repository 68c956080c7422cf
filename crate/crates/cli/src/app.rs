use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lvknot::audit::audit;
use lvknot::biquandle::Biquandle;
use lvknot::calibrate::{calibrate_convention, CalibrationError};
use lvknot::coloring::{self, build_constraints, ColoringError, Engine};
use lvknot::diagram::{builtin, parse_diagram, LongDiagram};
use lvknot::fmap::FCandidate;
use lvknot::group::{build_group, GroupElement, TorusGroup};
use lvknot::instance::{select_f, STANDARD_TWIST};
use lvknot::words::eval_str;

use crate::ftable::{self, FTableError};
use crate::report::{
    AuditBody, CalibrateBody, CenterBody, ColorBody, DistinguishBody, EvalBody, ParityBody, Render, Report, TableBody,
};

#[derive(Debug, Parser)]
#[command(name = "lvknot", version, about = "Long virtual biquandle colorings over the 64-element torus group")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group computations.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Check every biquandle axiom over its full domain.
    Audit(AuditArgs),
    /// Enumerate colorings of a diagram with a fixed first arc.
    Color(ColorArgs),
    /// Compare the coloring invariants of two diagrams.
    Distinguish(DistinguishArgs),
}

#[derive(Debug, Subcommand)]
pub enum GroupCommand {
    /// Evaluate a word and print its vertex label.
    Eval { expr: String },
    /// List the center.
    Center,
    /// Print the 64x64 multiplication table.
    Table,
    /// Compare x y^2 x^-1 y^-2 by parity class with the reference table.
    ParityTable,
    /// Show how the grid convention was chosen.
    Calibrate,
}

/// Which `f` map to attach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FChoice {
    None,
    Substitution,
    Shear,
    /// The map chosen to reproduce the trefoil computation.
    Seeded,
    Table(PathBuf),
}

fn parse_f(s: &str) -> Result<FChoice, String> {
    match s {
        "none" => Ok(FChoice::None),
        "substitution" => Ok(FChoice::Substitution),
        "shear" => Ok(FChoice::Shear),
        "seeded" => Ok(FChoice::Seeded),
        _ => match s.strip_prefix("table:") {
            Some(path) if !path.is_empty() => Ok(FChoice::Table(PathBuf::from(path))),
            _ => Err("expected none, substitution, shear, seeded or table:<file>".into()),
        },
    }
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    /// Twist exponent: x ⋆ y = y^(n+1) x y^-(n+1).
    #[arg(long, default_value_t = STANDARD_TWIST)]
    pub n: u32,
    /// f map: none, substitution, shear, seeded or table:<file>.
    #[arg(long, value_parser = parse_f, default_value = "none")]
    pub f: FChoice,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EngineArg {
    Propagation,
    Exhaustive,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Propagation => Engine::Propagation,
            EngineArg::Exhaustive => Engine::Exhaustive,
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// Color of the first arc, as a word in a and b.
    #[arg(long)]
    pub start: String,
    /// Twist exponent.
    #[arg(long, default_value_t = STANDARD_TWIST)]
    pub n: u32,
    /// f map: none, substitution, shear, seeded or table:<file>.
    #[arg(long, value_parser = parse_f, default_value = "seeded")]
    pub f: FChoice,
    #[arg(long, value_enum, default_value_t = EngineArg::Propagation)]
    pub engine: EngineArg,
}

#[derive(Debug, Args)]
pub struct ColorArgs {
    /// Diagram file, or builtin:right-trefoil, builtin:left-trefoil, builtin:unknot.
    pub diagram: String,
    #[command(flatten)]
    pub solve: SolveArgs,
    /// Keep only colorings whose last arc has this color (a word).
    #[arg(long)]
    pub end: Option<String>,
    /// Quandle mode: every crossing uses ∘ and virtual passes are refused.
    #[arg(long)]
    pub classical: bool,
}

#[derive(Debug, Args)]
pub struct DistinguishArgs {
    pub first: String,
    pub second: String,
    #[command(flatten)]
    pub solve: SolveArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{what}: {message}")]
    Parse { what: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    FTable { path: PathBuf, source: FTableError },
    #[error("unknown builtin diagram `{0}` (known: right-trefoil, left-trefoil, unknot)")]
    UnknownBuiltin(String),
    #[error("{0}")]
    Calibration(#[from] CalibrationError),
    #[error("{0}; attach one with --f seeded, --f shear, --f substitution or --f table:<file>")]
    MissingF(ColoringError),
    #[error("{0}; drop --classical to color with the biquandle")]
    Classical(ColoringError),
    #[error("twist exponent must be at least 1")]
    InvalidTwist,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub struct Outcome {
    pub output: String,
    pub exit_code: i32,
}

fn calibrated() -> Result<(TorusGroup, String), CliError> {
    let cal = calibrate_convention()?;
    let group = build_group(cal.convention).expect("calibrated conventions build");
    Ok((group, cal.convention.to_string()))
}

fn element(what: &str, expr: &str, group: &TorusGroup) -> Result<GroupElement, CliError> {
    eval_str(expr, group).map_err(|e| CliError::Parse {
        what: format!("{what} `{expr}`"),
        message: e.to_string(),
    })
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })
}

pub fn load_diagram(spec: &str) -> Result<LongDiagram, CliError> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).ok_or_else(|| CliError::UnknownBuiltin(name.to_string()));
    }
    let path = PathBuf::from(spec);
    let text = read(&path)?;
    parse_diagram(&text).map_err(|e| CliError::Parse {
        what: spec.to_string(),
        message: e.to_string(),
    })
}

pub fn load_f(choice: &FChoice, group: &TorusGroup) -> Result<Option<FCandidate>, CliError> {
    Ok(match choice {
        FChoice::None => None,
        FChoice::Substitution => Some(FCandidate::substitution(group)),
        FChoice::Shear => Some(FCandidate::shear(group)),
        FChoice::Seeded => Some(select_f(group).chosen),
        FChoice::Table(path) => {
            let text = read(path)?;
            Some(ftable::load_candidate(&text, group).map_err(|source| CliError::FTable {
                path: path.clone(),
                source,
            })?)
        }
    })
}

fn biquandle(group: &TorusGroup, n: u32, f: Option<FCandidate>) -> Result<Biquandle, CliError> {
    let bq = Biquandle::from_group(group, n).map_err(|_| CliError::InvalidTwist)?;
    Ok(match f {
        Some(f) => bq.with_f(f),
        None => bq,
    })
}

fn emit<T: Render + serde::Serialize>(format: Format, command: &'static str, convention: String, body: T) -> String {
    let report = Report {
        command,
        convention,
        body,
    };
    match format {
        Format::Text => report.text(),
        Format::Json => report.json(),
    }
}

fn color_one(
    d: &LongDiagram,
    bq: &Biquandle,
    start: (GroupElement, &str),
    end: Option<(GroupElement, &str)>,
    engine: Engine,
    classical: bool,
) -> Result<ColorBody, CliError> {
    let cs = if classical {
        coloring::classical_constraints(d).map_err(CliError::Classical)?
    } else {
        build_constraints(d, bq).map_err(CliError::MissingF)?
    };
    let result = coloring::solve(&cs, bq, start.0, end.map(|e| e.0), engine);
    let f = if classical { None } else { bq.f() };
    Ok(ColorBody::new(
        d,
        &cs,
        &result,
        bq.n_twist(),
        f,
        classical,
        start.1,
        end.map(|e| e.1),
    ))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let (group, convention) = calibrated()?;
    let ok = |output| Outcome { output, exit_code: 0 };
    match &cli.command {
        Command::Group(cmd) => {
            let out = match cmd {
                GroupCommand::Eval { expr } => {
                    let g = element("expression", expr, &group)?;
                    emit(cli.format, "group eval", convention, EvalBody::new(expr, g, &group))
                }
                GroupCommand::Center => {
                    let center = group.center();
                    let body = CenterBody {
                        size: center.len(),
                        members: center.iter().map(crate::report::label).collect(),
                    };
                    emit(cli.format, "group center", convention, body)
                }
                GroupCommand::Table => emit(cli.format, "group table", convention, TableBody::new(&group)),
                GroupCommand::ParityTable => emit(
                    cli.format,
                    "group parity-table",
                    convention,
                    ParityBody::new(&group.parity_table()),
                ),
                GroupCommand::Calibrate => {
                    let cal = calibrate_convention()?;
                    emit(cli.format, "group calibrate", convention, CalibrateBody::new(&cal))
                }
            };
            Ok(ok(out))
        }
        Command::Audit(args) => {
            let f = load_f(&args.f, &group)?;
            let bq = biquandle(&group, args.n, f)?;
            let report = audit(&bq, &group);
            let body = AuditBody::new(args.n, bq.f(), &report);
            let exit_code = if report.all_passed() { 0 } else { 1 };
            Ok(Outcome {
                output: emit(cli.format, "audit", convention, body),
                exit_code,
            })
        }
        Command::Color(args) => {
            let d = load_diagram(&args.diagram)?;
            let start = element("--start", &args.solve.start, &group)?;
            let end = args
                .end
                .as_deref()
                .map(|e| element("--end", e, &group).map(|g| (g, e)))
                .transpose()?;
            let f = load_f(&args.solve.f, &group)?;
            let bq = biquandle(&group, args.solve.n, f)?;
            let body = color_one(
                &d,
                &bq,
                (start, &args.solve.start),
                end,
                args.solve.engine.into(),
                args.classical,
            )?;
            Ok(ok(emit(cli.format, "color", convention, body)))
        }
        Command::Distinguish(args) => {
            let d1 = load_diagram(&args.first)?;
            let d2 = load_diagram(&args.second)?;
            let start = element("--start", &args.solve.start, &group)?;
            let f = load_f(&args.solve.f, &group)?;
            let bq = biquandle(&group, args.solve.n, f)?;
            let engine: Engine = args.solve.engine.into();
            let verdict = coloring::distinguish(&d1, &d2, &bq, start, engine).map_err(CliError::MissingF)?;
            let start = (start, args.solve.start.as_str());
            let first = color_one(&d1, &bq, start, None, engine, false)?;
            let second = color_one(&d2, &bq, start, None, engine, false)?;
            Ok(ok(emit(
                cli.format,
                "distinguish",
                convention,
                DistinguishBody::new(&verdict, first, second),
            )))
        }
    }
}
