//! Turns a scenario into a table of rows.

use crate::config::{ConfigError, MediumConfig, Mode, Range, Scenario};
use planescat::multiatom::{AtomSystem, Medium};
use planescat::plane_green::angle_averaged_s_transmission;
use planescat::superradiance::{intensity_trace, InitialState};
use planescat::sweep::{grid, pair_interaction_sweep, pair_superradiance_sweep, single_atom_sweep, Execution};
use planescat::{Dipole, Error, PlaneMedium, QuadSpec};
use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error("numerical failure{}: {source}", at.map(|x| format!(" at {x}")).unwrap_or_default())]
    Numerical { source: Error, at: Option<f64> },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => 1,
            RunError::Numerical { .. } | RunError::Io(_) => 2,
        }
    }
}

fn numerical(source: Error) -> RunError {
    RunError::Numerical { source, at: None }
}

/// Output columns with unit suffixes and rows in coordinate order.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    /// Rows skipped because the configuration is forbidden there.
    pub skipped: Vec<(f64, String)>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
            skipped: Vec::new(),
        }
    }

    /// Appends the row at `x`, skipping domain errors and failing on the rest.
    fn push<T>(&mut self, x: f64, row: planescat::Result<T>, f: impl FnOnce(T) -> Vec<f64>) -> Result<(), RunError> {
        match row {
            Ok(v) => {
                let mut r = vec![x];
                r.extend(f(v));
                if r.iter().any(|v| !v.is_finite()) {
                    self.skipped.push((x, "non-finite value".into()));
                } else {
                    self.rows.push(r);
                }
                Ok(())
            }
            Err(e) if e.is_domain() => {
                self.skipped.push((x, e.to_string()));
                Ok(())
            }
            Err(e) => Err(RunError::Numerical { source: e, at: Some(x) }),
        }
    }
}

fn quad_spec(s: &Scenario) -> QuadSpec {
    QuadSpec {
        rel_tol: s.quad.rel_tol,
        abs_tol: s.quad.abs_tol,
        max_subdivisions: s.quad.max_subdivisions,
        ..QuadSpec::default()
    }
}

fn plane(s: &Scenario) -> Result<PlaneMedium, RunError> {
    match s.medium {
        MediumConfig::Plane { z_plane, d_eff } => PlaneMedium::new(z_plane, d_eff).map_err(numerical),
        MediumConfig::Free => unreachable!("validated at parse time"),
    }
}

fn medium(s: &Scenario) -> Result<Medium, RunError> {
    Ok(match s.medium {
        MediumConfig::Free => Medium::Free,
        MediumConfig::Plane { .. } => Medium::Plane(plane(s)?),
    })
}

fn points(r: Option<Range>) -> Result<Vec<f64>, RunError> {
    let r = r.expect("validated at parse time");
    grid(r.start, r.stop, r.step).map_err(numerical)
}

pub fn run(s: &Scenario, exec: Execution) -> Result<Table, RunError> {
    let quad = quad_spec(s);
    quad.validate().map_err(numerical)?;
    match s.mode {
        Mode::SingleAtomSweep => {
            let zs = points(s.sweep)?;
            let mut t = Table::new(vec!["z_over_lambda", "gamma_over_gamma0", "delta_over_gamma0"]);
            for (z, r) in zs.iter().zip(single_atom_sweep(&zs, &plane(s)?, &quad, exec)) {
                t.push(*z, r, |c| vec![c.gamma, c.delta])?;
            }
            Ok(t)
        }
        Mode::PairInteractionSweep => {
            let zs = points(s.sweep)?;
            let mut t = Table::new(vec![
                "z2_over_lambda",
                "abs_j_over_abs_j_free",
                "re_j_over_gamma0",
                "im_j_over_gamma0",
            ]);
            for (z, r) in zs.iter().zip(pair_interaction_sweep(s.z1, &zs, &plane(s)?, &quad, exec)) {
                t.push(*z, r, |row| vec![row.j.norm() / row.j_free.norm(), row.j.re, row.j.im])?;
            }
            Ok(t)
        }
        Mode::PairSuperradianceSweep => {
            let zs = points(s.sweep)?;
            let mut t = Table::new(vec![
                "z2_over_lambda",
                "gamma_plus_over_gamma0",
                "gamma_minus_over_gamma0",
                "abs_c2_over_c1_plus",
            ]);
            for (z, r) in zs.iter().zip(pair_superradiance_sweep(s.z1, &zs, medium(s)?, &quad, exec)) {
                t.push(*z, r, |p| vec![p.gamma_plus, p.gamma_minus, p.amplitude_ratio()])?;
            }
            Ok(t)
        }
        Mode::IntensityTrace => {
            let ts = points(s.time)?;
            let atoms: Vec<Dipole> = std::iter::once(s.z1).chain(s.z2).map(Dipole::on_axis).collect();
            let mut t = Table::new(vec!["t_times_gamma0", "intensity_over_free_peak"]);
            let sys = AtomSystem::with_coupling(atoms, medium(s)?, s.gamma0_over_omega).map(|a| a.with_quad(quad));
            let state = InitialState::new(s.p, s.phi).map_err(numerical)?;
            let trace = sys.and_then(|sys| intensity_trace(&sys, state, s.detector_z.unwrap_or_default(), &ts));
            match trace {
                Ok(values) => {
                    for (x, v) in ts.iter().zip(values) {
                        t.push(*x, Ok(v), |v| vec![v])?;
                    }
                }
                Err(e) if e.is_domain() => {
                    return Err(RunError::Config(ConfigError {
                        line: None,
                        field: "detector/atoms".into(),
                        message: e.to_string(),
                    }))
                }
                Err(e) => return Err(numerical(e)),
            }
            Ok(t)
        }
        Mode::Transmission => {
            let p = plane(s)?;
            let mut t = Table::new(vec!["d_eff_over_lambda", "transmission"]);
            t.push(p.d_eff, angle_averaged_s_transmission(&p, 1.0), |v| vec![v])?;
            Ok(t)
        }
    }
}
