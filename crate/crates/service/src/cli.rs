//! `axolotl check | prove | export | serve`.
//!
//! Exit status: 0 on success, 1 when a problem, script or proof is rejected,
//! 2 when a file cannot be read or written or the listen address cannot be
//! bound.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use log::{error, info};

use axolotl::engine::ProofSession;
use axolotl::export::{export, ExportFormat};
use axolotl::problem::{parse_problem_with, ParseDiagnostic, ParseOptions, ProblemSpec};
use axolotl::script::parse_script;

use crate::store::{bundled_entries, load_library_dir, Store};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REJECTED: i32 = 1;
pub const EXIT_ENVIRONMENT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "axolotl", version, about = "Rule-based proof workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate problem files.
    Check {
        files: Vec<PathBuf>,
        /// Accept a final newline, reporting it as a warning.
        #[arg(long)]
        lenient: bool,
    },
    /// Replay a proof script and report whether it completes the proof.
    Prove {
        file: PathBuf,
        script: PathBuf,
        #[arg(long)]
        lenient: bool,
    },
    /// Replay a proof script (if any) and export the proof.
    Export {
        file: PathBuf,
        #[arg(long)]
        script: Option<PathBuf>,
        #[arg(long, default_value = "latex")]
        format: ExportFormat,
        /// Output path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        lenient: bool,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        listen: SocketAddr,
        /// Directory of additional `.axolotl` problems.
        #[arg(long)]
        library: Option<PathBuf>,
        /// Directory for uploaded problems and sessions.
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn rejected(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_REJECTED,
            message: message.into(),
        }
    }

    fn environment(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_ENVIRONMENT,
            message: message.into(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ENVIRONMENT } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Check { files, lenient } => check(&files, lenient, out, err),
        Command::Prove { file, script, lenient } => prove(&file, &script, lenient, out),
        Command::Export {
            file,
            script,
            format,
            out: path,
            lenient,
        } => export_cmd(&file, script.as_deref(), format, path.as_deref(), lenient, out),
        Command::Serve { listen, library, data } => serve(listen, library, data),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(err, "{}", f.message);
            }
            f.code
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::environment(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("problem").to_string()
}

fn diagnostic_line(path: &Path, d: &ParseDiagnostic) -> String {
    format!("{}:{}:{}: {}: {}", path.display(), d.line, d.column, d.kind, d.message)
}

fn load_problem(path: &Path, lenient: bool, err: Option<&mut dyn Write>) -> Result<ProblemSpec, Failure> {
    let text = read(path)?;
    let opts = ParseOptions {
        lenient,
        source_name: stem(path),
    };
    match parse_problem_with(&text, &opts) {
        Ok(parsed) => {
            if let Some(err) = err {
                for w in &parsed.warnings {
                    let _ = writeln!(err, "{} (warning)", diagnostic_line(path, w));
                }
            }
            Ok(parsed.spec)
        }
        Err(diags) => Err(Failure::rejected(
            diags.iter().map(|d| diagnostic_line(path, d)).collect::<Vec<_>>().join("\n"),
        )),
    }
}

fn check(files: &[PathBuf], lenient: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    if files.is_empty() {
        return Err(Failure::environment("no files given"));
    }
    let mut worst = EXIT_OK;
    for path in files {
        match load_problem(path, lenient, Some(&mut *err)) {
            Ok(spec) => {
                let _ = writeln!(out, "{}: ok ({} goals, {} rules)", path.display(), spec.goals.len(), spec.rules.len());
            }
            Err(f) => {
                let _ = writeln!(err, "{}", f.message);
                worst = worst.max(f.code);
            }
        }
    }
    match worst {
        EXIT_OK => Ok(()),
        code => Err(Failure {
            code,
            message: String::new(),
        }),
    }
}

fn replay(spec: ProblemSpec, script_path: &Path) -> Result<ProofSession, Failure> {
    let text = read(script_path)?;
    let steps = parse_script(&text, &spec.signature)
        .map_err(|e| Failure::rejected(format!("{}: {e}", script_path.display())))?;
    let apps: Vec<_> = steps.iter().map(|s| s.application.clone()).collect();
    ProofSession::replay(spec, &apps).map_err(|e| {
        let line = steps[e.step - 1].line;
        Failure::rejected(format!("{}:{line}: step {}: {}", script_path.display(), e.step, e.error))
    })
}

fn prove(file: &Path, script: &Path, lenient: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let spec = load_problem(file, lenient, None)?;
    let session = replay(spec, script)?;
    let steps = session.history.len();
    if session.is_complete() {
        let _ = writeln!(out, "{steps} steps, complete");
        Ok(())
    } else {
        let _ = writeln!(out, "{steps} steps, complete=false, open={}", session.goals().len());
        Err(Failure::rejected(""))
    }
}

fn export_cmd(
    file: &Path,
    script: Option<&Path>,
    format: ExportFormat,
    path: Option<&Path>,
    lenient: bool,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let spec = load_problem(file, lenient, None)?;
    let session = match script {
        Some(s) => replay(spec, s)?,
        None => ProofSession::new(spec),
    };
    let doc = export(&session, format).map_err(|e| Failure::rejected(e.to_string()))?;
    match path {
        Some(p) => fs::write(p, doc).map_err(|e| Failure::environment(format!("{}: {e}", p.display()))),
        None => out
            .write_all(doc.as_bytes())
            .map_err(|e| Failure::environment(format!("standard output: {e}"))),
    }
}

fn serve(listen: SocketAddr, library: Option<PathBuf>, data: Option<PathBuf>) -> Result<(), Failure> {
    let mut entries = bundled_entries();
    if let Some(dir) = &library {
        let extra = load_library_dir(dir).map_err(|e| Failure::environment(format!("{}: {e}", dir.display())))?;
        entries.extend(extra);
    }
    let store = Store::open(entries, data).map_err(|e| Failure::environment(format!("data directory: {e}")))?;
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::environment(e.to_string()))?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(listen)
            .await
            .map_err(|e| Failure::environment(format!("cannot listen on {listen}: {e}")))?;
        info!("serving {} problems on http://{}", store.library().len(), listener.local_addr().unwrap_or(listen));
        let shutdown = async {
            let _ = tokio::signal::ctrl_c().await;
            info!("shutting down");
        };
        crate::http::serve(listener, Arc::new(store), shutdown).await.map_err(|e| {
            error!("server error: {e}");
            Failure::environment(e.to_string())
        })
    })
}
