use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use presheaf_topos::audit::{run_all, Command};
use presheaf_topos::workspace::{fixture_workspaces, Workspace};
use presheaf_topos::{Error, Result};

/// Audit Lawvere-Tierney structure on presheaves over a finite category.
#[derive(Parser)]
#[command(version)]
struct Cli {
    /// Workspace JSON file.
    workspace: Option<PathBuf>,
    /// Command and its arguments; defaults to the workspace requests, then full-audit.
    command: Vec<String>,
    /// Write the JSON report here.
    #[arg(long, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Override a size cap, e.g. `--cap max_elements=100`.
    #[arg(long, value_name = "KEY=N", value_parser = parse_cap)]
    cap: Vec<(String, usize)>,
    /// Emit the built-in fixture workspaces, one file per fixture into DIR,
    /// or as a single JSON object on stdout.
    #[arg(long, value_name = "DIR", num_args = 0..=1)]
    fixtures: Option<Option<PathBuf>>,
}

fn parse_cap(s: &str) -> std::result::Result<(String, usize), String> {
    let (k, v) = s.split_once('=').ok_or("expected KEY=N")?;
    Ok((k.to_string(), v.parse().map_err(|e| format!("{e}"))?))
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io { path: path.display().to_string(), message: e.to_string() })
}

fn emit_fixtures(dir: &Option<PathBuf>) -> Result<()> {
    let all = fixture_workspaces();
    match dir {
        Some(d) => {
            for (name, f) in &all {
                write(&d.join(format!("{name}.json")), &(f.to_json() + "\n"))?;
            }
        }
        None => {
            let map: serde_json::Map<String, serde_json::Value> = all
                .iter()
                .map(|(n, f)| (n.to_string(), serde_json::to_value(f).expect("workspace serializes")))
                .collect();
            println!("{}", serde_json::to_string_pretty(&map).expect("map serializes"));
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(dir) = &cli.fixtures {
        emit_fixtures(dir)?;
        return Ok(true);
    }
    let path = cli.workspace.as_ref().ok_or_else(|| Error::Malformed("no workspace given".into()))?;
    let ws = Workspace::load(path, &cli.cap)?;
    let cmds = if !cli.command.is_empty() {
        vec![Command::from_words(&cli.command)?]
    } else if !ws.requests.is_empty() {
        ws.requests.iter().map(|r| Command::parse(r)).collect::<Result<_>>()?
    } else {
        vec![Command::FullAudit]
    };
    let report = run_all(&ws, &cmds)?;
    print!("{}", report.to_text());
    if let Some(p) = &cli.json {
        write(p, &report.to_json())?;
    }
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
