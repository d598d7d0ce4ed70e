//! Scenario files, sweep orchestration and CSV/SVG output for `planescat`.

pub mod config;
pub mod output;
pub mod runner;

use config::Scenario;
use planescat::sweep::Execution;
use runner::RunError;
use std::path::{Path, PathBuf};

/// Files written by [`run_file`].
#[derive(Debug, Clone, PartialEq)]
pub struct Written {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
    pub skipped: Vec<(f64, String)>,
}

pub fn load(path: &Path) -> Result<Scenario, RunError> {
    let text = std::fs::read_to_string(path)?;
    Ok(Scenario::parse(&text)?)
}

/// Runs the scenario at `path` and writes `<stem>.csv` (and `<stem>.svg`)
/// into `out_dir`. `rel_tol` overrides the scenario's quadrature tolerance.
pub fn run_file(path: &Path, out_dir: &Path, svg: bool, rel_tol: Option<f64>) -> Result<Written, RunError> {
    let mut scenario = load(path)?;
    if let Some(tol) = rel_tol {
        if !(tol.is_finite() && tol > 0.0) {
            return Err(RunError::Config(config::ConfigError {
                line: None,
                field: "--tol".into(),
                message: "must be > 0".into(),
            }));
        }
        scenario.quad.rel_tol = tol;
    }
    let table = runner::run(&scenario, Execution::Parallel)?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("scenario");
    std::fs::create_dir_all(out_dir)?;
    let csv = out_dir.join(format!("{stem}.csv"));
    std::fs::write(&csv, output::to_csv(&scenario, &table))?;
    let svg = if svg {
        let p = out_dir.join(format!("{stem}.svg"));
        let title = if scenario.title.is_empty() { stem } else { &scenario.title };
        std::fs::write(&p, output::to_svg(title, &table))?;
        Some(p)
    } else {
        None
    };
    Ok(Written {
        csv,
        svg,
        skipped: table.skipped,
    })
}
