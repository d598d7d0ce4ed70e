//! Parameter sweeps over atomic positions.
//!
//! Rows are independent except for the square-root branch of the pair
//! resonances, which is chained along the sweep. Pair sweeps therefore
//! evaluate all couplings first (in parallel when enabled) and then select
//! branches in order.

use crate::coupling::{self_coupling_with, j_free, j_plane_with, Coupling};
use crate::error::{Error, Result};
use crate::multiatom::{AtomSystem, Medium};
use crate::quad::QuadSpec;
use crate::superradiance::{pair_couplings, solve_pair_on, Branch, PairSolution};
use crate::system::{Dipole, PlaneMedium};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Data-parallel over rows when the `parallel` feature is enabled.
    #[default]
    Parallel,
    Sequential,
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if exec == Execution::Parallel {
            use rayon::prelude::*;
            return items.par_iter().map(f).collect();
        }
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// start, start + step, … up to and including `stop` (within 1e-9 steps),
/// snapped to 1e-12 so that nominal grid points are hit exactly.
pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && stop >= start) {
        return Err(Error::InvalidInput("sweep needs finite start <= stop and step > 0".into()));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| ((start + step * i as f64) * 1e12).round() / 1e12).collect())
}

/// Γ and Δ of a single on-axis dipole at each z.
pub fn single_atom_sweep(
    zs: &[f64],
    plane: &PlaneMedium,
    quad: &QuadSpec,
    exec: Execution,
) -> Vec<Result<Coupling>> {
    map(exec, zs, |&z| self_coupling_with(&Dipole::on_axis(z), 1.0, plane, quad))
}

/// Interaction with the plane and in free space for atom 2 at each z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionRow {
    pub j: Complex64,
    pub j_free: Complex64,
}

pub fn pair_interaction_sweep(
    z1: f64,
    z2s: &[f64],
    plane: &PlaneMedium,
    quad: &QuadSpec,
    exec: Execution,
) -> Vec<Result<InteractionRow>> {
    map(exec, z2s, |&z2| {
        let (a, b) = (Dipole::on_axis(z1), Dipole::on_axis(z2));
        Ok(InteractionRow {
            j: j_plane_with(&a, &b, 1.0, plane, quad)?,
            j_free: j_free(&a, &b, 1.0)?,
        })
    })
}

/// Branch-tracked pair resonances for atom 1 at `z1` and atom 2 at each z.
///
/// The labelling is anchored at the valid row closest to atom 1, where Ω₊ is
/// the superradiant root, and continued outwards in both directions. Rows that
/// fail are skipped by the continuation.
pub fn pair_superradiance_sweep(
    z1: f64,
    z2s: &[f64],
    medium: Medium,
    quad: &QuadSpec,
    exec: Execution,
) -> Vec<Result<PairSolution>> {
    let couplings = map(exec, z2s, |&z2| {
        let sys = AtomSystem::new(vec![Dipole::on_axis(z1), Dipole::on_axis(z2)], medium)?.with_quad(*quad);
        pair_couplings(&sys)
    });
    let mut out: Vec<Result<PairSolution>> = couplings
        .iter()
        .map(|c| c.clone().and_then(|c| solve_pair_on(c, Branch::Principal)))
        .collect();
    let Some(anchor) = (0..z2s.len())
        .filter(|&i| out[i].is_ok())
        .min_by(|&a, &b| (z2s[a] - z1).abs().total_cmp(&(z2s[b] - z1).abs()))
    else {
        return out;
    };
    let anchored = couplings[anchor].clone().and_then(|c| solve_pair_on(c, Branch::Superradiant));
    let chain = |indices: &mut dyn Iterator<Item = usize>, out: &mut Vec<Result<PairSolution>>| {
        let mut seed = anchored.clone().ok();
        for i in indices {
            if let Ok(c) = &couplings[i] {
                let sol = solve_pair_on(*c, seed.as_ref().map_or(Branch::Principal, Branch::Continue));
                if let Ok(s) = &sol {
                    seed = Some(*s);
                }
                out[i] = sol;
            }
        }
    };
    chain(&mut (anchor + 1..z2s.len()), &mut out);
    chain(&mut (0..anchor).rev(), &mut out);
    out[anchor] = anchored;
    out
}
