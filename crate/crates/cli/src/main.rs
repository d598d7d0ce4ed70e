use clap::{Parser, Subcommand};
use planescat_cli::{load, run_file};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "planescat", version, about = "Emitters near a partially reflecting plane")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its CSV.
    Run {
        config: PathBuf,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also write an SVG line plot.
        #[arg(long)]
        svg: bool,
        /// Relative quadrature tolerance, overriding the scenario.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Check a scenario file without running it.
    Validate { config: PathBuf },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors share the configuration-error exit code
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Run { config, out, svg, tol } => run_file(&config, &out, svg, tol).map(|w| {
            for (x, why) in &w.skipped {
                eprintln!("warning: skipped {x}: {why}");
            }
            println!("{}", w.csv.display());
            if let Some(p) = w.svg {
                println!("{}", p.display());
            }
        }),
        Command::Validate { config } => load(&config).map(|s| println!("ok: {}", s.mode.name())),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
