//! `hoch run <job.json>` and `hoch explain <job.json>`.

mod report;
mod run;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::run::Failure;
use crate::spec::{parse_window, Format, JobSpec, Overrides};

#[derive(Parser)]
#[command(name = "hoch", version, about = "Exact higher Hochschild homology from JSON job files")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a job and print its report; exits 0 iff the verdict is pass.
    Run(JobArgs),
    /// Print the truncation level, chain dimensions and elimination cost.
    Explain(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    spec: PathBuf,
    /// `Q` or `Fp:<p>`.
    #[arg(long)]
    coefficients: Option<String>,
    /// Degree window `a..b`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<[i64; 2]>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    weights: Option<Vec<i64>>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Worker threads for rank computations.
    #[arg(long)]
    threads: Option<usize>,
    /// Largest admissible block dimension.
    #[arg(long)]
    cap: Option<usize>,
}

impl JobArgs {
    fn load(&self) -> Result<JobSpec, Failure> {
        if let Some(n) = self.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Failure::Usage(e.to_string()))?;
        }
        let text = std::fs::read_to_string(&self.spec)
            .map_err(|e| Failure::Usage(format!("{}: {e}", self.spec.display())))?;
        let overrides = Overrides {
            coefficients: self.coefficients.clone(),
            window: self.window,
            weights: self.weights.clone(),
            format: self.format,
            cap: self.cap,
        };
        JobSpec::parse(&text).and_then(|s| s.apply(&overrides)).map_err(Failure::Usage)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(args) => args.load().and_then(|spec| {
            let r = run::run(&spec)?;
            match spec.output.unwrap_or(Format::Text) {
                Format::Text => print!("{}", r.to_text()),
                Format::Json => println!("{}", r.to_json()),
            }
            Ok(if r.verdict == report::Verdict::Pass { 0 } else { 1 })
        }),
        Command::Explain(args) => args.load().and_then(|spec| {
            let e = run::explain(&spec)?;
            match spec.output.unwrap_or(Format::Text) {
                Format::Text => print!("{}", e.to_text()),
                Format::Json => println!("{}", serde_json::to_string_pretty(&e).expect("explanations serialize")),
            }
            Ok(0)
        }),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("hoch: {f}");
            ExitCode::from(f.exit_code() as u8)
        }
    }
}
