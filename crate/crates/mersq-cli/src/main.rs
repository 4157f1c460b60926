//! `mersq` is a client of the mersq HTTP service: point it at a running
//! `mersq-serve` with `--server`, or let it spin up an in-process listener
//! on a loopback port for the single request.

mod output;

use std::fmt;
use std::future::IntoFuture;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mersq_api::{self as api, codes};
use mersq_client::{ApiClient, ClientError};

#[derive(Parser)]
#[command(
    name = "mersq",
    version,
    about = "Solve M_p^x + (M_q+1)^y = (lz)^2 over the non-negative integers"
)]
struct Cli {
    /// Base URL of a running mersq-serve; spawns an in-process service when absent
    #[arg(long, global = true, value_name = "URL")]
    server: Option<String>,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to this path instead of stdout (a directory for `tables`)
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Text => "txt",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

#[derive(Args)]
struct InstanceArgs {
    /// Mersenne exponent p (2^p - 1 must be prime)
    #[arg(long, conflicts_with = "mp")]
    p: Option<u32>,

    /// Mersenne value M_p; back-solved to its exponent
    #[arg(long, value_name = "VALUE")]
    mp: Option<String>,

    /// Mersenne exponent q
    #[arg(long, conflicts_with = "mq")]
    q: Option<u32>,

    /// Mersenne value M_q; back-solved to its exponent
    #[arg(long, value_name = "VALUE")]
    mq: Option<String>,

    /// The prime l of the right-hand side (lz)^2
    #[arg(long)]
    l: u64,
}

impl InstanceArgs {
    fn spec(&self) -> api::InstanceSpec {
        api::InstanceSpec {
            p: self.p,
            mp: self.mp.clone(),
            q: self.q,
            mq: self.mq.clone(),
            l: self.l,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify the complete solution set of one equation instance
    Solve {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Keep only solutions with x, y, z all positive
        #[arg(long)]
        positive_only: bool,
    },
    /// Check one candidate (x, y, z) by exact big-integer evaluation
    Verify {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long)]
        x: u32,
        #[arg(long)]
        y: u32,
        #[arg(long)]
        z: String,
    },
    /// Brute-force sweep within explicit bounds, independent of the solver
    Search {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, default_value_t = 12)]
        x_max: u32,
        #[arg(long, default_value_t = 12)]
        y_max: u32,
        #[arg(long)]
        z_max: Option<String>,
    },
    /// Reproduce the solvable and unsolvable instance tables
    Tables {
        /// Enumerate Mersenne exponents up to this limit
        #[arg(long, default_value_t = 7)]
        p_limit: u32,
    },
    /// Inspect one Mersenne exponent or list them up to a limit
    Mersenne {
        #[arg(long, conflicts_with = "p_limit")]
        p: Option<u32>,
        #[arg(long)]
        p_limit: Option<u32>,
    },
}

#[derive(Debug)]
enum CliError {
    Client(ClientError),
    Io(std::io::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Client(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<ClientError> for CliError {
    fn from(e: ClientError) -> Self {
        CliError::Client(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Client(ClientError::Api { code, .. }) => match code.as_str() {
                codes::INVALID_INPUT => 2,
                codes::CAP_EXCEEDED => 3,
                _ => 1,
            },
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[tokio::main]
async fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli).await {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

async fn run(cli: Cli) -> Result<(), CliError> {
    let base = match &cli.server {
        Some(url) => url.clone(),
        None => spawn_embedded().await?,
    };
    let client = ApiClient::new(base);
    let format = cli.format;

    match cli.command {
        Command::Solve {
            instance,
            positive_only,
        } => {
            let set = client
                .solve(&api::SolveRequest {
                    instance: instance.spec(),
                    positive_only,
                })
                .await?;
            let rendered = match format {
                Format::Text => output::solution_set_text(&set, positive_only, None),
                Format::Json => output::json(&set),
                Format::Csv => output::solution_set_csv(&set),
            };
            emit(cli.out.as_deref(), &rendered)
        }
        Command::Verify { instance, x, y, z } => {
            let resp = client
                .verify(&api::VerifyRequest {
                    instance: instance.spec(),
                    x,
                    y,
                    z,
                })
                .await?;
            let rendered = match format {
                Format::Text => output::verify_text(&resp),
                Format::Json => output::json(&resp),
                Format::Csv => output::verify_csv(&resp),
            };
            emit(cli.out.as_deref(), &rendered)
        }
        Command::Search {
            instance,
            x_max,
            y_max,
            z_max,
        } => {
            let set = client
                .search(&api::SearchRequest {
                    instance: instance.spec(),
                    x_max,
                    y_max,
                    z_max: z_max.clone(),
                })
                .await?;
            let rendered = match format {
                Format::Text => {
                    let mut bounds = format!("x <= {x_max}, y <= {y_max}");
                    if let Some(z) = &z_max {
                        bounds.push_str(&format!(", z <= {z}"));
                    }
                    output::solution_set_text(&set, false, Some(&bounds))
                }
                Format::Json => output::json(&set),
                Format::Csv => output::solution_set_csv(&set),
            };
            emit(cli.out.as_deref(), &rendered)
        }
        Command::Tables { p_limit } => {
            let table1 = client.table1(p_limit).await?;
            let table2 = client.table2().await?;
            emit_tables(cli.out.as_deref(), format, p_limit, &table1, &table2)
        }
        Command::Mersenne { p, p_limit } => {
            let rendered = match (p, p_limit) {
                (Some(p), None) => {
                    let report = client.mersenne_report(p).await?;
                    match format {
                        Format::Text => output::mersenne_report_text(&report),
                        Format::Json => output::json(&report),
                        Format::Csv => output::mersenne_report_csv(&report),
                    }
                }
                (None, Some(p_limit)) => {
                    let rows = client.mersenne_list(p_limit).await?;
                    match format {
                        Format::Text => output::mersenne_list_text(&rows, p_limit),
                        Format::Json => output::json(&rows),
                        Format::Csv => output::mersenne_list_csv(&rows),
                    }
                }
                _ => {
                    return Err(CliError::Usage(
                        "mersenne needs exactly one of --p or --p-limit".into(),
                    ));
                }
            };
            emit(cli.out.as_deref(), &rendered)
        }
    }
}

/// Binds a loopback listener on an ephemeral port and serves the API from
/// this process for the duration of the invocation.
async fn spawn_embedded() -> Result<String, CliError> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", 0)).await?;
    let addr = listener.local_addr()?;
    tokio::spawn(axum::serve(listener, mersq_service::router()).into_future());
    Ok(format!("http://{addr}"))
}

fn emit(out: Option<&Path>, rendered: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, rendered)?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn emit_tables(
    out: Option<&Path>,
    format: Format,
    p_limit: u32,
    table1: &[mersq_core::catalog::CatalogRow],
    table2: &[mersq_core::catalog::CatalogRow],
) -> Result<(), CliError> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let ext = format.extension();
            let t1_path = dir.join(format!("table1_p{p_limit}.{ext}"));
            let t2_path = dir.join(format!("table2.{ext}"));
            let (t1, t2) = render_tables_pair(format, p_limit, table1, table2);
            std::fs::write(&t1_path, t1)?;
            eprintln!("wrote {}", t1_path.display());
            std::fs::write(&t2_path, t2)?;
            eprintln!("wrote {}", t2_path.display());
            Ok(())
        }
        None => {
            match format {
                Format::Json => {
                    let combined = serde_json::json!({ "table1": table1, "table2": table2 });
                    print!("{}", output::json(&combined));
                }
                _ => {
                    let (t1, t2) = render_tables_pair(format, p_limit, table1, table2);
                    print!("{t1}\n{t2}");
                }
            }
            Ok(())
        }
    }
}

fn render_tables_pair(
    format: Format,
    p_limit: u32,
    table1: &[mersq_core::catalog::CatalogRow],
    table2: &[mersq_core::catalog::CatalogRow],
) -> (String, String) {
    match format {
        Format::Text => (
            output::rows_text(
                &format!("Table 1: solvable instances (p <= {p_limit})"),
                table1,
            ),
            output::rows_text("Table 2: unsolvable instances", table2),
        ),
        Format::Json => (output::json(&table1), output::json(&table2)),
        Format::Csv => (output::rows_csv(table1), output::rows_csv(table2)),
    }
}
