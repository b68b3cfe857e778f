use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use refex::compare::compare;
use refex::describe::{IncrementalOptions, DEFAULT_ORACLE_GUARD};
use refex::genre::{implicature_risk, ImplicatureWarning};
use refex::goals::{plan_description_with, Goal, ItemAttribution};
use refex::hearer::interpret;
use refex::{
    AttributeValue, ContextSet, Description, Error, GenreProfile, GoalAgenda, KnowledgeBase,
    Strategy,
};

const ORACLE_GUARD_VAR: &str = "REFEX_ORACLE_GUARD";

#[derive(Parser)]
#[command(
    name = "refex",
    version,
    about = "Generate and interpret distinguishing descriptions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a description for a referent, folding in any --convey payloads.
    Generate(GenerateArgs),
    /// Resolve a description against a context and classify its items.
    Interpret(InterpretArgs),
    /// Run every strategy and the exhaustive oracle side by side.
    Compare(CompareArgs),
    /// Rewrite a knowledge-base or genre file in canonical form.
    Normalize(NormalizeArgs),
}

#[derive(Args)]
struct Scene {
    /// Knowledge-base JSON file.
    #[arg(long)]
    kb: PathBuf,
    /// Comma-separated context ids; defaults to every entity in the knowledge base.
    #[arg(long, value_delimiter = ',')]
    context: Option<Vec<String>>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    scene: Scene,
    #[arg(long)]
    referent: String,
    /// full-brevity, greedy or incremental.
    #[arg(long, default_value = "greedy")]
    strategy: String,
    /// Genre JSON file, or a bundled genre name (casual, inventory).
    #[arg(long, default_value = "casual")]
    genre: String,
    /// Property to convey about the referent (attr=value); repeatable.
    #[arg(long)]
    convey: Vec<String>,
    /// Do not add the referent's type to incremental output.
    #[arg(long)]
    no_type: bool,
    /// Also run the implicature-risk analysis on the result.
    #[arg(long)]
    analyze: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct InterpretArgs {
    #[command(flatten)]
    scene: Scene,
    /// Comma-separated attr=value pairs.
    #[arg(long)]
    description: String,
    /// Intended referent; enables per-item purpose classification.
    #[arg(long)]
    referent: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    scene: Scene,
    #[arg(long)]
    referent: String,
    #[arg(long, default_value = "casual")]
    genre: String,
    #[arg(long)]
    json: bool,
    /// Include wall-clock times (output is then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct NormalizeArgs {
    #[arg(long)]
    kb: Option<PathBuf>,
    #[arg(long)]
    genre: Option<PathBuf>,
}

enum Failure {
    Input(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Domain(
                Error::NoDistinguishingDescription(_) | Error::NotDistinguishing(_),
            ) => 2,
            Failure::Domain(Error::QualityViolation(_)) => 3,
            Failure::Domain(Error::VerificationFailure { .. }) => 4,
            Failure::Domain(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Interpret(args) => run_interpret(args),
        Command::Compare(args) => run_compare(args),
        Command::Normalize(args) => normalize(args),
    };
    match result {
        Ok(stdout) => {
            print!("{stdout}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            match &failure {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Domain(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_scene(scene: &Scene) -> Result<(KnowledgeBase, ContextSet), Failure> {
    let kb = KnowledgeBase::from_json(&read(&scene.kb)?)?;
    let context = match &scene.context {
        Some(ids) => ContextSet::new(ids.iter().map(|s| s.trim()), &kb)?,
        None => ContextSet::all(&kb)?,
    };
    Ok((kb, context))
}

fn load_genre(name: &str) -> Result<GenreProfile, Failure> {
    let path = Path::new(name);
    if path.exists() {
        return Ok(GenreProfile::from_json(&read(path)?)?);
    }
    GenreProfile::builtin(name).ok_or_else(|| {
        Failure::Input(format!(
            "`{name}` is neither a genre file nor a bundled genre"
        ))
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct GoalSummary<'a> {
    satisfied: &'a [Goal],
    outstanding: &'a [Goal],
}

#[derive(Serialize)]
struct GenerateReport<'a> {
    strategy: Strategy,
    description: &'a Description,
    trace: &'a refex::describe::GenerationTrace,
    warnings: &'a [ImplicatureWarning],
    goals: GoalSummary<'a>,
    attributions: &'a [ItemAttribution],
    #[serde(skip_serializing_if = "Option::is_none")]
    implicature_risk: Option<&'a [ImplicatureWarning]>,
}

fn generate(args: GenerateArgs) -> Result<String, Failure> {
    let (kb, context) = load_scene(&args.scene)?;
    let strategy: Strategy = args
        .strategy
        .parse()
        .map_err(|e: Error| Failure::Input(e.to_string()))?;
    let genre = load_genre(&args.genre)?;
    let payloads = args
        .convey
        .iter()
        .map(|s| s.parse::<AttributeValue>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Input(e.to_string()))?;
    let agenda = GoalAgenda::with_payloads(args.referent.clone(), payloads);
    let options = IncrementalOptions {
        always_include_type: !args.no_type,
    };
    let report = plan_description_with(&agenda, &context, &kb, &genre, strategy, options)?;
    let risk = if args.analyze {
        Some(implicature_risk(
            &report.description,
            &args.referent,
            &context,
            &kb,
            &genre,
        )?)
    } else {
        None
    };

    for w in report.warnings.iter().chain(risk.iter().flatten()) {
        eprintln!("warning: {}", w.render(&genre));
    }
    if args.json {
        Ok(to_json(&GenerateReport {
            strategy,
            description: &report.description,
            trace: &report.trace,
            warnings: &report.warnings,
            goals: GoalSummary {
                satisfied: &report.satisfied,
                outstanding: &report.outstanding,
            },
            attributions: &report.attributions,
            implicature_risk: risk.as_deref(),
        }))
    } else {
        Ok(format!("{}\n", report.description))
    }
}

fn run_interpret(args: InterpretArgs) -> Result<String, Failure> {
    let (kb, context) = load_scene(&args.scene)?;
    let description: Description = args
        .description
        .parse()
        .map_err(|e: Error| Failure::Input(e.to_string()))?;
    let report = interpret(&description, &context, &kb, args.referent.as_deref())?;
    if args.json {
        return Ok(to_json(&report));
    }
    let mut out = format!("outcome: {}\n", report.outcome);
    let resolved: Vec<&str> = report.resolved.iter().map(String::as_str).collect();
    out.push_str(&format!("resolved: {}\n", resolved.join(",")));
    for (item, role) in &report.classifications {
        out.push_str(&format!("{item}: {role}\n"));
    }
    Ok(out)
}

fn oracle_guard() -> Result<usize, Failure> {
    match std::env::var(ORACLE_GUARD_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "{ORACLE_GUARD_VAR}=`{v}` is not a non-negative integer"
            ))
        }),
        Err(_) => Ok(DEFAULT_ORACLE_GUARD),
    }
}

fn run_compare(args: CompareArgs) -> Result<String, Failure> {
    let (kb, context) = load_scene(&args.scene)?;
    let genre = load_genre(&args.genre)?;
    let mut report = compare(&args.referent, &context, &kb, &genre, oracle_guard()?)?;
    if !args.timings {
        report = report.without_timings();
    }
    Ok(if args.json {
        to_json(&report)
    } else {
        report.render_table(&genre)
    })
}

fn normalize(args: NormalizeArgs) -> Result<String, Failure> {
    match (args.kb, args.genre) {
        (Some(path), _) => Ok(KnowledgeBase::from_json(&read(&path)?)?.to_json()),
        (_, Some(path)) => Ok(GenreProfile::from_json(&read(&path)?)?.to_json()),
        (None, None) => unreachable!("clap requires one of --kb or --genre"),
    }
}
