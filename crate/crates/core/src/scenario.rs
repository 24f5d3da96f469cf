//! Scenario files: a line-oriented `key = value` description of a grid, a
//! catalog geometry and a catalog spinor field.
//!
//! ```text
//! # comments and blank lines are ignored
//! name = product-kahler
//! grid.n = 16
//! geometry.name = product          # flat | conformal | product
//! geometry.amplitudes = 0.2 0 0.2 0
//! geometry.frequencies = 1 1 1 1   # optional, positive integers
//! geometry.phases = 0 0 0 0        # optional
//! spinor.name = constant           # constant | trig | exp
//! spinor.value = 1 0 0 0
//! tol.nonzero = 1e-6               # optional overrides
//! ```
//!
//! A `trig` spinor takes `spinor.w`, `spinor.x`, `spinor.y`, `spinor.z`, each nine
//! coefficients `c0 s0 c0' s1 c1' …` of `c0 + Σ_a (s_a sin 2πx_a + c_a cos 2πx_a)`.
//! An `exp` spinor is `e^{Σ_a A_a sin(2πk_a x_a + φ_a)} · value` and takes
//! `spinor.value`, `spinor.amplitudes`, and optionally `spinor.frequencies` and `spinor.phases`.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fiber::Quaternion;
use crate::geometry::{AxisWaves, GeometryError, GeometrySpec, Grid, LCConnection};
use crate::minimization::DetectionTolerances;
use crate::spinc::{SpinorField, SpinorSpec};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    Missing(&'static str),
    #[error("cannot read scenario: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub n: usize,
    pub geometry: GeometrySpec,
    pub spinor: SpinorSpec,
    pub tolerances: DetectionTolerances,
}

const GEOMETRY_KEYS: [&str; 3] = ["geometry.amplitudes", "geometry.frequencies", "geometry.phases"];
const TRIG_KEYS: [&str; 4] = ["spinor.w", "spinor.x", "spinor.y", "spinor.z"];
const EXP_KEYS: [&str; 4] = ["spinor.value", "spinor.amplitudes", "spinor.frequencies", "spinor.phases"];
const TOL_KEYS: [&str; 3] = ["tol.nonzero", "tol.closed", "tol.coincide"];

struct Entry {
    line: usize,
    value: String,
}

struct Entries {
    map: BTreeMap<String, Entry>,
}

impl Entries {
    fn parse(text: &str) -> Result<Self, ScenarioError> {
        let mut map = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some((key, value)) = content.split_once('=') else {
                return Err(ScenarioError::Parse {
                    line,
                    message: format!("expected `key = value`, found `{content}`"),
                });
            };
            let key = key.trim().to_string();
            if key.is_empty() {
                return Err(ScenarioError::Parse { line, message: "empty key".into() });
            }
            if let Some(prev) = map.insert(key.clone(), Entry { line, value: value.trim().to_string() }) {
                return Err(ScenarioError::Parse {
                    line,
                    message: format!("duplicate key `{key}` (first set on line {})", prev.line),
                });
            }
        }
        Ok(Self { map })
    }

    fn take(&mut self, key: &str) -> Option<Entry> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &'static str) -> Result<Entry, ScenarioError> {
        self.take(key).ok_or(ScenarioError::Missing(key))
    }

    fn reject_all(&mut self, keys: &[&str], reason: &str) -> Result<(), ScenarioError> {
        for k in keys {
            if let Some(e) = self.take(k) {
                return Err(ScenarioError::Parse { line: e.line, message: format!("`{k}` {reason}") });
            }
        }
        Ok(())
    }
}

fn bad(e: &Entry, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Parse { line: e.line, message: message.into() }
}

fn floats<const N: usize>(e: &Entry) -> Result<[f64; N], ScenarioError> {
    let parsed: Vec<f64> = e
        .value
        .split_whitespace()
        .map(|tok| tok.parse::<f64>().map_err(|_| bad(e, format!("`{tok}` is not a number"))))
        .collect::<Result<_, _>>()?;
    if parsed.iter().any(|v| !v.is_finite()) {
        return Err(bad(e, "values must be finite"));
    }
    parsed.try_into().map_err(|v: Vec<f64>| bad(e, format!("expected {N} numbers, found {}", v.len())))
}

fn frequencies(e: &Entry) -> Result<[u32; 4], ScenarioError> {
    let parsed: Vec<u32> = e
        .value
        .split_whitespace()
        .map(|tok| match tok.parse::<u32>() {
            Ok(k) if k > 0 => Ok(k),
            _ => Err(bad(e, format!("`{tok}` is not a positive integer frequency"))),
        })
        .collect::<Result<_, _>>()?;
    parsed.try_into().map_err(|v: Vec<u32>| bad(e, format!("expected 4 frequencies, found {}", v.len())))
}

fn positive(e: &Entry) -> Result<f64, ScenarioError> {
    let [v] = floats::<1>(e)?;
    if v <= 0.0 {
        return Err(bad(e, "must be positive"));
    }
    Ok(v)
}

fn waves(entries: &mut Entries, prefix: &str) -> Result<AxisWaves, ScenarioError> {
    let amp_key = format!("{prefix}.amplitudes");
    let amplitudes = match entries.take(&amp_key) {
        Some(e) => floats::<4>(&e)?,
        None => {
            return Err(ScenarioError::Missing(if prefix == "geometry" {
                "geometry.amplitudes"
            } else {
                "spinor.amplitudes"
            }))
        }
    };
    let frequencies = match entries.take(&format!("{prefix}.frequencies")) {
        Some(e) => frequencies(&e)?,
        None => [1; 4],
    };
    let phases = match entries.take(&format!("{prefix}.phases")) {
        Some(e) => floats::<4>(&e)?,
        None => [0.0; 4],
    };
    Ok(AxisWaves { amplitudes, frequencies, phases })
}

fn join<T: std::fmt::Display>(vals: &[T]) -> String {
    vals.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        let mut entries = Entries::parse(text)?;
        let name = entries.require("name")?.value;
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(ScenarioError::Parse { line: 0, message: "name must be a single non-empty word".into() });
        }
        let n_entry = entries.require("grid.n")?;
        let n: usize = n_entry.value.parse().map_err(|_| bad(&n_entry, "grid.n must be an integer"))?;
        if n < Grid::MIN_POINTS {
            return Err(bad(&n_entry, format!("grid.n must be at least {}", Grid::MIN_POINTS)));
        }

        let geo = entries.require("geometry.name")?;
        let geometry = match geo.value.as_str() {
            "flat" => {
                entries.reject_all(&GEOMETRY_KEYS, "does not apply to a flat geometry")?;
                GeometrySpec::Flat
            }
            "conformal" => GeometrySpec::Conformal(waves(&mut entries, "geometry")?),
            "product" => GeometrySpec::Product(waves(&mut entries, "geometry")?),
            other => return Err(bad(&geo, format!("unknown geometry `{other}` (flat, conformal, product)"))),
        };

        let sp = entries.require("spinor.name")?;
        let spinor = match sp.value.as_str() {
            "constant" => {
                entries.reject_all(&TRIG_KEYS, "does not apply to a constant spinor")?;
                entries.reject_all(&EXP_KEYS[1..], "does not apply to a constant spinor")?;
                SpinorSpec::Constant(Quaternion::from_array(floats::<4>(&entries.require("spinor.value")?)?))
            }
            "trig" => {
                entries.reject_all(&EXP_KEYS, "does not apply to a trig spinor")?;
                let mut coeffs = [[0.0; 9]; 4];
                for (row, key) in coeffs.iter_mut().zip(TRIG_KEYS) {
                    if let Some(e) = entries.take(key) {
                        *row = floats::<9>(&e)?;
                    }
                }
                SpinorSpec::Trig(coeffs)
            }
            "exp" => {
                entries.reject_all(&TRIG_KEYS, "does not apply to an exp spinor")?;
                let value = Quaternion::from_array(floats::<4>(&entries.require("spinor.value")?)?);
                SpinorSpec::Exp { value, waves: waves(&mut entries, "spinor")? }
            }
            other => return Err(bad(&sp, format!("unknown spinor `{other}` (constant, trig, exp)"))),
        };

        let mut tolerances = DetectionTolerances::default();
        for key in TOL_KEYS {
            if let Some(e) = entries.take(key) {
                let v = positive(&e)?;
                match key {
                    "tol.nonzero" => tolerances.nonzero = v,
                    "tol.closed" => tolerances.closed = v,
                    _ => tolerances.coincide = v,
                }
            }
        }
        if let Some((key, e)) = entries.map.iter().min_by_key(|(_, e)| e.line) {
            return Err(bad(e, format!("unknown key `{key}`")));
        }

        let mut scenario = Self { name, n, geometry, spinor, tolerances };
        scenario.tolerances.wavenumber = scenario.wavenumber();
        Ok(scenario)
    }

    pub fn from_file(path: &Path) -> Result<Self, ScenarioError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// `2π` times the largest frequency present in the geometry or the spinor.
    pub fn wavenumber(&self) -> f64 {
        let geo = match &self.geometry {
            GeometrySpec::Flat => 1,
            GeometrySpec::Conformal(w) | GeometrySpec::Product(w) => *w.frequencies.iter().max().unwrap_or(&1),
        };
        let spin = match &self.spinor {
            SpinorSpec::Exp { waves, .. } => *waves.frequencies.iter().max().unwrap_or(&1),
            _ => 1,
        };
        TAU * geo.max(spin) as f64
    }

    pub fn with_grid(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn grid(&self) -> Result<Grid, ScenarioError> {
        Ok(Grid::new(self.n)?)
    }

    /// Samples the metric (validating it) and the spinor field.
    pub fn build(&self) -> Result<(LCConnection, SpinorField), ScenarioError> {
        let grid = self.grid()?;
        let metric = self.geometry.build(grid)?;
        Ok((LCConnection::new(&metric), self.spinor.build(grid)))
    }

    /// Canonical text form; [`Scenario::parse`] reads it back unchanged.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "name = {}", self.name);
        let _ = writeln!(out, "grid.n = {}", self.n);
        let _ = writeln!(out, "geometry.name = {}", self.geometry.name());
        let write_waves = |out: &mut String, prefix: &str, w: &AxisWaves| {
            let _ = writeln!(out, "{prefix}.amplitudes = {}", join(&w.amplitudes));
            let _ = writeln!(out, "{prefix}.frequencies = {}", join(&w.frequencies));
            let _ = writeln!(out, "{prefix}.phases = {}", join(&w.phases));
        };
        if let GeometrySpec::Conformal(w) | GeometrySpec::Product(w) = &self.geometry {
            write_waves(&mut out, "geometry", w);
        }
        let _ = writeln!(out, "spinor.name = {}", self.spinor.name());
        match &self.spinor {
            SpinorSpec::Constant(q) => {
                let _ = writeln!(out, "spinor.value = {}", join(&q.to_array()));
            }
            SpinorSpec::Trig(c) => {
                for (row, key) in c.iter().zip(TRIG_KEYS) {
                    let _ = writeln!(out, "{key} = {}", join(row));
                }
            }
            SpinorSpec::Exp { value, waves } => {
                let _ = writeln!(out, "spinor.value = {}", join(&value.to_array()));
                write_waves(&mut out, "spinor", waves);
            }
        }
        let defaults = DetectionTolerances::default();
        let t = &self.tolerances;
        for (key, v, d) in [
            ("tol.nonzero", t.nonzero, defaults.nonzero),
            ("tol.closed", t.closed, defaults.closed),
            ("tol.coincide", t.coincide, defaults.coincide),
        ] {
            if v != d {
                let _ = writeln!(out, "{key} = {v}");
            }
        }
        out
    }

    /// A random smooth scenario: one of the three geometry families with small
    /// first-harmonic waves, and a nowhere-vanishing trigonometric spinor.
    pub fn random_smooth(seed: u64, n: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = AxisWaves { frequencies: [1; 4], ..AxisWaves::default() };
        for a in 0..4 {
            w.amplitudes[a] = rng.gen_range(-0.15..0.15);
            w.phases[a] = rng.gen_range(0.0..TAU);
        }
        let geometry = match rng.gen_range(0..3) {
            0 => GeometrySpec::Flat,
            1 => GeometrySpec::Conformal(w),
            _ => GeometrySpec::Product(w),
        };
        let coeffs = std::array::from_fn(|c| {
            let mut row = [0.0; 9];
            row[0] = if c == 0 { rng.gen_range(1.2..2.0) } else { rng.gen_range(-0.5..0.5) };
            for v in row.iter_mut().skip(1) {
                *v = rng.gen_range(-0.15..0.15);
            }
            row
        });
        let mut scenario = Self {
            name: format!("random-{seed}"),
            n,
            geometry,
            spinor: SpinorSpec::Trig(coeffs),
            tolerances: DetectionTolerances::default(),
        };
        scenario.tolerances.wavenumber = scenario.wavenumber();
        scenario
    }
}
