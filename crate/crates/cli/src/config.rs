//! Scenario files: flat `key = value` lines grouped under `[section]`
//! headers. `#` starts a comment. Unknown sections and keys are errors.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{}{field}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, field: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            field: field.into(),
            message: message.into(),
        }
    }

    fn missing(field: &str) -> Self {
        Self {
            line: None,
            field: field.into(),
            message: "required but not set".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    SingleAtomSweep,
    PairInteractionSweep,
    PairSuperradianceSweep,
    IntensityTrace,
    Transmission,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::SingleAtomSweep => "single_atom_sweep",
            Mode::PairInteractionSweep => "pair_interaction_sweep",
            Mode::PairSuperradianceSweep => "pair_superradiance_sweep",
            Mode::IntensityTrace => "intensity_trace",
            Mode::Transmission => "transmission",
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Mode::SingleAtomSweep,
            Mode::PairInteractionSweep,
            Mode::PairSuperradianceSweep,
            Mode::IntensityTrace,
            Mode::Transmission,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown mode '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MediumConfig {
    Free,
    Plane { z_plane: f64, d_eff: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

/// A fully specified run with defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub mode: Mode,
    pub title: String,
    pub medium: MediumConfig,
    /// Swept coordinate: z for single atoms, z₂ for pairs [λ].
    pub sweep: Option<Range>,
    pub z1: f64,
    /// Second atom of an intensity trace; absent for a single atom.
    pub z2: Option<f64>,
    pub gamma0_over_omega: f64,
    pub p: f64,
    pub phi: f64,
    pub detector_z: Option<f64>,
    /// Time grid [1/Γ₀].
    pub time: Option<Range>,
    pub quad: QuadConfig,
}

const DEFAULT_QUAD: QuadConfig = QuadConfig {
    rel_tol: 1e-9,
    abs_tol: 1e-12,
    max_subdivisions: 2000,
};

const KEYS: &[(&str, &[&str])] = &[
    ("", &["mode", "title"]),
    ("medium", &["kind", "z_plane", "d_eff"]),
    ("sweep", &["start", "stop", "step"]),
    ("atoms", &["z1", "z2", "gamma0_over_omega"]),
    ("state", &["p", "phi"]),
    ("detector", &["z"]),
    ("time", &["start", "stop", "step"]),
    ("quad", &["rel_tol", "abs_tol", "max_subdivisions"]),
];

struct Entry {
    value: String,
    line: usize,
}

struct Raw(BTreeMap<(String, String), Entry>);

impl Raw {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut section = String::new();
        let mut map = BTreeMap::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw_line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::at(line, content, "unterminated section header"))?
                    .trim();
                if !KEYS.iter().any(|(s, _)| *s == name) || name.is_empty() {
                    return Err(ConfigError::at(line, name, "unknown section"));
                }
                section = name.to_string();
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| ConfigError::at(line, content, "expected key = value"))?;
            let (key, value) = (key.trim(), value.trim());
            let allowed = KEYS.iter().find(|(s, _)| *s == section).map(|(_, k)| *k).unwrap_or(&[]);
            let field = qualified(&section, key);
            if !allowed.contains(&key) {
                return Err(ConfigError::at(line, field, "unknown key"));
            }
            if value.is_empty() {
                return Err(ConfigError::at(line, field, "empty value"));
            }
            let previous = map.insert(
                (section.clone(), key.to_string()),
                Entry {
                    value: value.to_string(),
                    line,
                },
            );
            if previous.is_some() {
                return Err(ConfigError::at(line, field, "duplicate key"));
            }
        }
        Ok(Raw(map))
    }

    fn get<T: FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        let Some(e) = self.0.get(&(section.to_string(), key.to_string())) else {
            return Ok(None);
        };
        e.value
            .parse()
            .map(Some)
            .map_err(|err| ConfigError::at(e.line, qualified(section, key), format!("{err}")))
    }

    fn finite(&self, section: &str, key: &str) -> Result<Option<f64>, ConfigError> {
        let v: Option<f64> = self.get(section, key)?;
        match v {
            Some(x) if !x.is_finite() => Err(self.invalid(section, key, "must be finite")),
            other => Ok(other),
        }
    }

    fn has_section(&self, section: &str) -> bool {
        self.0.keys().any(|(s, _)| s == section)
    }

    fn invalid(&self, section: &str, key: &str, message: &str) -> ConfigError {
        let line = self.0.get(&(section.to_string(), key.to_string())).map(|e| e.line);
        ConfigError {
            line,
            field: qualified(section, key),
            message: message.into(),
        }
    }

    fn range(&self, section: &str) -> Result<Option<Range>, ConfigError> {
        if !self.has_section(section) {
            return Ok(None);
        }
        let need = |key: &str| {
            self.finite(section, key)?
                .ok_or_else(|| ConfigError::missing(&qualified(section, key)))
        };
        let range = Range {
            start: need("start")?,
            stop: need("stop")?,
            step: need("step")?,
        };
        if range.step <= 0.0 {
            return Err(self.invalid(section, "step", "must be > 0"));
        }
        if range.stop < range.start {
            return Err(self.invalid(section, "stop", "must not be below start"));
        }
        Ok(Some(range))
    }
}

fn qualified(section: &str, key: &str) -> String {
    if section.is_empty() {
        key.to_string()
    } else {
        format!("{section}.{key}")
    }
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let raw = Raw::parse(text)?;
        let mode: Mode = raw.get("", "mode")?.ok_or_else(|| ConfigError::missing("mode"))?;
        let title = raw.get("", "title")?.unwrap_or_default();

        let kind: String = raw.get("medium", "kind")?.unwrap_or_else(|| "plane".into());
        let medium = match kind.as_str() {
            "free" => {
                for key in ["z_plane", "d_eff"] {
                    if raw.0.contains_key(&("medium".into(), key.into())) {
                        return Err(raw.invalid("medium", key, "not used with kind = free"));
                    }
                }
                MediumConfig::Free
            }
            "plane" => {
                let z_plane = raw.finite("medium", "z_plane")?.unwrap_or(0.0);
                let d_eff = raw
                    .finite("medium", "d_eff")?
                    .ok_or_else(|| ConfigError::missing("medium.d_eff"))?;
                if d_eff <= 0.0 {
                    return Err(raw.invalid("medium", "d_eff", "must be > 0"));
                }
                MediumConfig::Plane { z_plane, d_eff }
            }
            _ => return Err(raw.invalid("medium", "kind", "expected 'plane' or 'free'")),
        };

        let quad = QuadConfig {
            rel_tol: raw.finite("quad", "rel_tol")?.unwrap_or(DEFAULT_QUAD.rel_tol),
            abs_tol: raw.finite("quad", "abs_tol")?.unwrap_or(DEFAULT_QUAD.abs_tol),
            max_subdivisions: raw
                .get("quad", "max_subdivisions")?
                .unwrap_or(DEFAULT_QUAD.max_subdivisions),
        };
        if quad.rel_tol <= 0.0 {
            return Err(raw.invalid("quad", "rel_tol", "must be > 0"));
        }
        if quad.abs_tol <= 0.0 {
            return Err(raw.invalid("quad", "abs_tol", "must be > 0"));
        }
        if quad.max_subdivisions == 0 {
            return Err(raw.invalid("quad", "max_subdivisions", "must be > 0"));
        }

        let p = raw.finite("state", "p")?.unwrap_or(1.0);
        if !(0.0..=1.0).contains(&p) {
            return Err(raw.invalid("state", "p", "must lie in [0, 1]"));
        }
        let gamma0_over_omega = raw.finite("atoms", "gamma0_over_omega")?.unwrap_or(1e-6);
        if gamma0_over_omega <= 0.0 {
            return Err(raw.invalid("atoms", "gamma0_over_omega", "must be > 0"));
        }

        let scenario = Scenario {
            mode,
            title,
            medium,
            sweep: raw.range("sweep")?,
            z1: raw.finite("atoms", "z1")?.unwrap_or(0.0),
            z2: raw.finite("atoms", "z2")?,
            gamma0_over_omega,
            p,
            phi: raw.finite("state", "phi")?.unwrap_or(0.0),
            detector_z: raw.finite("detector", "z")?,
            time: raw.range("time")?,
            quad,
        };
        scenario.check_mode(&raw)?;
        Ok(scenario)
    }

    fn check_mode(&self, raw: &Raw) -> Result<(), ConfigError> {
        let plane_only = |what: &str| match self.medium {
            MediumConfig::Plane { .. } => Ok(()),
            MediumConfig::Free => Err(raw.invalid("medium", "kind", &format!("{what} needs a plane"))),
        };
        match self.mode {
            Mode::SingleAtomSweep | Mode::PairInteractionSweep => {
                plane_only(self.mode.name())?;
                self.sweep.ok_or_else(|| ConfigError::missing("sweep"))?;
            }
            Mode::PairSuperradianceSweep => {
                self.sweep.ok_or_else(|| ConfigError::missing("sweep"))?;
            }
            Mode::IntensityTrace => {
                self.detector_z.ok_or_else(|| ConfigError::missing("detector.z"))?;
                self.time.ok_or_else(|| ConfigError::missing("time"))?;
            }
            Mode::Transmission => plane_only("transmission")?,
        }
        Ok(())
    }

    /// Canonical form of the effective configuration; parses back to `self`.
    pub fn to_config_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode = {}", self.mode.name());
        if !self.title.is_empty() {
            let _ = writeln!(s, "title = {}", self.title);
        }
        s.push_str("[medium]\n");
        match self.medium {
            MediumConfig::Free => s.push_str("kind = free\n"),
            MediumConfig::Plane { z_plane, d_eff } => {
                let _ = writeln!(s, "kind = plane\nz_plane = {z_plane:?}\nd_eff = {d_eff:?}");
            }
        }
        if let Some(r) = self.sweep {
            let _ = writeln!(s, "[sweep]\nstart = {:?}\nstop = {:?}\nstep = {:?}", r.start, r.stop, r.step);
        }
        let _ = writeln!(s, "[atoms]\nz1 = {:?}", self.z1);
        if let Some(z2) = self.z2 {
            let _ = writeln!(s, "z2 = {z2:?}");
        }
        let _ = writeln!(s, "gamma0_over_omega = {:?}", self.gamma0_over_omega);
        let _ = writeln!(s, "[state]\np = {:?}\nphi = {:?}", self.p, self.phi);
        if let Some(z) = self.detector_z {
            let _ = writeln!(s, "[detector]\nz = {z:?}");
        }
        if let Some(r) = self.time {
            let _ = writeln!(s, "[time]\nstart = {:?}\nstop = {:?}\nstep = {:?}", r.start, r.stop, r.step);
        }
        let q = self.quad;
        let _ = writeln!(
            s,
            "[quad]\nrel_tol = {:?}\nabs_tol = {:?}\nmax_subdivisions = {}",
            q.rel_tol, q.abs_tol, q.max_subdivisions
        );
        s
    }
}
