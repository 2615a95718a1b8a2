use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use homepi::io::{
    certificate_from_json, emit_json, emit_text, run_tasks, verify_certificate, workers_from_env, Fixture, Overrides,
    TaskSpec,
};

#[derive(Parser)]
#[command(name = "homepi", version, about = "Run homological checks from a fixture file")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every task in the fixture.
    Run(Shared),
    CheckHepi(Shared),
    LiftMap(Shared),
    LiftComplex(Shared),
    RecognizeTriangle(Shared),
    CheckIdeal(Shared),
    TelescopeReport(Shared),
    AlmostReport(Shared),
    VerifyContraction(Shared),
    /// Replay a lift certificate against the task that produced it.
    VerifyCertificate {
        #[command(flatten)]
        shared: Shared,
        /// JSON file holding a certificate or a lift-map report.
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Shared {
    #[arg(long)]
    fixture: PathBuf,
    /// Only run the task with this id.
    #[arg(long)]
    task: Option<String>,
    #[arg(long)]
    max_degree: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// Shift window as `lo,hi`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    #[arg(long, value_enum, default_value = "json")]
    out: Format,
    /// Worker threads; defaults to HOMEPI_WORKERS, then the core count.
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(',').ok_or("expected lo,hi")?;
    let lo: i64 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: i64 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo},{hi}"));
    }
    Ok((lo, hi))
}

fn run(shared: &Shared, kind: Option<&str>) -> Result<(), String> {
    let fx = Fixture::from_path(&shared.fixture).map_err(|e| format!("{}: {e}", shared.fixture.display()))?;
    let tasks: Vec<&TaskSpec> = fx
        .file
        .tasks
        .iter()
        .filter(|t| kind.is_none_or(|k| t.kind() == k))
        .filter(|t| shared.task.as_deref().is_none_or(|id| t.id() == id))
        .collect();
    if let Some(id) = &shared.task {
        if tasks.is_empty() {
            return Err(format!("no task '{id}'{}", kind.map(|k| format!(" of kind {k}")).unwrap_or_default()));
        }
    }
    let ov = Overrides {
        max_degree: shared.max_degree,
        depth: shared.depth,
        window: shared.window,
    };
    let started = Instant::now();
    let reports = run_tasks(&fx, &tasks, &ov, shared.workers.or_else(workers_from_env)).map_err(|e| e.to_string())?;
    match shared.out {
        Format::Json => print!("{}", emit_json(&reports)),
        Format::Text => {
            print!("{}", emit_text(&reports));
            eprintln!("{} task(s) in {:.3}s", reports.len(), started.elapsed().as_secs_f64());
        }
    }
    Ok(())
}

fn replay(shared: &Shared, path: &PathBuf) -> Result<(), String> {
    let fx = Fixture::from_path(&shared.fixture).map_err(|e| format!("{}: {e}", shared.fixture.display()))?;
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let cert = certificate_from_json(&value).map_err(|e| e.to_string())?;
    let ok = verify_certificate(&fx, &cert).map_err(|e| e.to_string())?;
    let verdict = if ok { "certified" } else { "refuted" };
    match shared.out {
        Format::Json => println!("{}", serde_json::json!({"task": cert.task, "verdict": verdict})),
        Format::Text => println!("{} [verify-certificate]: {verdict}", cert.task),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(s) => run(s, None),
        Command::CheckHepi(s) => run(s, Some("check-hepi")),
        Command::LiftMap(s) => run(s, Some("lift-map")),
        Command::LiftComplex(s) => run(s, Some("lift-complex")),
        Command::RecognizeTriangle(s) => run(s, Some("recognize-triangle")),
        Command::CheckIdeal(s) => run(s, Some("check-ideal")),
        Command::TelescopeReport(s) => run(s, Some("telescope-report")),
        Command::AlmostReport(s) => run(s, Some("almost-report")),
        Command::VerifyContraction(s) => run(s, Some("verify-contraction")),
        Command::VerifyCertificate { shared, certificate } => replay(shared, certificate),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
