//! Run configuration: one JSON document per run, with `key=value`
//! overrides applied to dotted paths before deserialization.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::geometry::{high_frequency_nodes, CurveSpec};
use crate::medium::ElasticMedium;
use crate::solver::{IncidentField, SolverConfig};

fn default_lambda() -> f64 {
    2.0
}

fn default_one() -> f64 {
    1.0
}

/// Material block; `omega` is mandatory, the rest default to the
/// reference material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MediumBlock {
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    #[serde(default = "default_one")]
    pub mu: f64,
    #[serde(default = "default_one")]
    pub rho: f64,
    pub omega: f64,
}

impl MediumBlock {
    pub fn medium(&self) -> Result<ElasticMedium> {
        ElasticMedium::new(self.lambda, self.mu, self.rho, self.omega)
    }
}

/// A curve given by name or as a full shape description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CurveChoice {
    Named(String),
    Shape(CurveSpec),
}

impl CurveChoice {
    pub fn resolve(&self) -> Result<CurveSpec> {
        match self {
            CurveChoice::Named(name) => CurveSpec::by_name(name).map_err(|e| Error::Config(e.to_string())),
            CurveChoice::Shape(spec) => Ok(spec.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AutoNodes {
    /// Resolution rule for high frequencies (see
    /// [`high_frequency_nodes`]).
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeCount {
    Fixed(usize),
    Rule(AutoNodes),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryBlock {
    pub curve: CurveChoice,
    #[serde(rename = "N", alias = "n")]
    pub nodes: NodeCount,
}

/// Node counts and frequencies of a convergence table. Empty lists fall
/// back to the geometry and medium blocks.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StudyBlock {
    #[serde(rename = "N", alias = "n")]
    pub nodes: Vec<usize>,
    pub omegas: Vec<f64>,
}

/// Rectangular evaluation grid, `nx × ny` points including the corners.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub x: [f64; 2],
    pub y: [f64; 2],
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.x[1] > self.x[0] && self.y[1] > self.y[0] && self.nx >= 2 && self.ny >= 2;
        let finite = self.x.iter().chain(&self.y).all(|v| v.is_finite());
        if !ok || !finite {
            return Err(Error::Config(format!(
                "grid needs increasing finite extents and at least 2 points per axis, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Points in row-major order (`y` outer, `x` inner).
    pub fn points(&self) -> Vec<[f64; 2]> {
        let step = |r: [f64; 2], n: usize, k: usize| r[0] + (r[1] - r[0]) * k as f64 / (n - 1) as f64;
        (0..self.ny)
            .flat_map(|j| (0..self.nx).map(move |i| [step(self.x, self.nx, i), step(self.y, self.ny, j)]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    #[default]
    Scattered,
    Total,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputBlock {
    /// Output directory; `--out` takes precedence.
    pub dir: Option<PathBuf>,
    pub grid: Option<GridSpec>,
    pub field: FieldKind,
}

fn default_incident() -> IncidentField {
    IncidentField::manufactured([0.0, 0.0])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Free-form note carried along with the fixture.
    #[serde(default)]
    pub description: String,
    pub medium: MediumBlock,
    pub geometry: GeometryBlock,
    #[serde(default)]
    pub solver: SolverConfig,
    #[serde(default = "default_incident")]
    pub incident: IncidentField,
    #[serde(default)]
    pub study: StudyBlock,
    #[serde(default)]
    pub output: OutputBlock,
}

impl RunConfig {
    /// Parses JSON text and applies `key=value` overrides.
    pub fn from_json(text: &str, overrides: &[String]) -> Result<RunConfig> {
        let parse_error = |e: serde_json::Error| Error::Parse {
            what: "configuration".into(),
            message: e.to_string(),
        };
        let config: RunConfig = if overrides.is_empty() {
            serde_json::from_str(text).map_err(parse_error)?
        } else {
            let mut value: Value = serde_json::from_str(text).map_err(parse_error)?;
            for item in overrides {
                apply_override(&mut value, item)?;
            }
            serde_json::from_value(value).map_err(parse_error)?
        };
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            what: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text, overrides)
    }

    /// Checks everything that can be checked without a mesh.
    pub fn validate(&self) -> Result<()> {
        self.medium.medium()?;
        self.curve()?;
        self.solver.validate()?;
        if let NodeCount::Fixed(n) = self.geometry.nodes {
            if n < 3 {
                return Err(Error::Config(format!("N = {n} is too small")));
            }
        }
        if let Some(grid) = &self.output.grid {
            grid.validate()?;
        }
        for &omega in &self.study.omegas {
            self.medium.medium()?.with_omega(omega)?;
        }
        Ok(())
    }

    pub fn medium(&self) -> Result<ElasticMedium> {
        self.medium.medium()
    }

    pub fn curve(&self) -> Result<CurveSpec> {
        self.geometry.curve.resolve()
    }

    /// Node count, resolving the `"auto"` rule against the medium.
    pub fn nodes(&self) -> Result<usize> {
        match self.geometry.nodes {
            NodeCount::Fixed(n) => Ok(n),
            NodeCount::Rule(AutoNodes::Auto) => high_frequency_nodes(&self.curve()?, &self.medium()?),
        }
    }

    /// Node counts of a convergence study.
    pub fn study_nodes(&self) -> Result<Vec<usize>> {
        if self.study.nodes.is_empty() {
            Ok(vec![self.nodes()?])
        } else {
            Ok(self.study.nodes.clone())
        }
    }

    /// Media of a convergence study.
    pub fn study_media(&self) -> Result<Vec<ElasticMedium>> {
        let base = self.medium()?;
        if self.study.omegas.is_empty() {
            Ok(vec![base])
        } else {
            self.study.omegas.iter().map(|&w| base.with_omega(w)).collect()
        }
    }
}

/// Sets `path` (dot separated) in `root` to `raw`, parsed as JSON when
/// possible and as a string otherwise. Intermediate objects are created.
pub fn apply_override(root: &mut Value, item: &str) -> Result<()> {
    let (path, raw) = item
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("override {item:?} is not of the form key=value")))?;
    let path = path.trim();
    if path.is_empty() || path.split('.').any(str::is_empty) {
        return Err(Error::Config(format!("override {item:?} has an empty key")));
    }
    let value = serde_json::from_str(raw.trim()).unwrap_or_else(|_| Value::String(raw.trim().to_string()));
    let mut node = root;
    let keys: Vec<&str> = path.split('.').collect();
    for (depth, key) in keys.iter().enumerate() {
        let map = match node {
            Value::Object(map) => map,
            _ => {
                return Err(Error::Config(format!(
                    "override {item:?}: {} is not an object",
                    keys[..depth].join(".")
                )))
            }
        };
        if depth + 1 == keys.len() {
            map.insert(key.to_string(), value);
            return Ok(());
        }
        node = map
            .entry(key.to_string())
            .or_insert_with(|| Value::Object(Default::default()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const KITE: &str = r#"{
        "medium": { "omega": 1.0 },
        "geometry": { "curve": "kite", "N": 64 }
    }"#;

    #[test]
    fn defaults_mirror_the_reference_setup() {
        let c = RunConfig::from_json(KITE, &[]).unwrap();
        assert_eq!((c.medium.lambda, c.medium.mu, c.medium.rho), (2.0, 1.0, 1.0));
        assert_eq!(c.solver.eta, 1.0);
        assert_eq!(c.solver.m_max, 20);
        assert_eq!(c.incident, IncidentField::manufactured([0.0, 0.0]));
        assert_eq!(c.nodes().unwrap(), 64);
    }

    #[test]
    fn missing_omega_is_named() {
        let text = r#"{ "medium": { "mu": 1.0 }, "geometry": { "curve": "kite", "N": 64 } }"#;
        let err = RunConfig::from_json(text, &[]).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(err.to_string().contains("omega"), "{err}");
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = r#"{ "medium": { "omega": 1, "nu": 0.3 }, "geometry": { "curve": "kite", "N": 64 } }"#;
        let err = RunConfig::from_json(text, &[]).unwrap_err();
        assert!(err.to_string().contains("nu"), "{err}");
    }

    #[test]
    fn zero_eta_is_rejected_before_solving() {
        let err = RunConfig::from_json(KITE, &["solver.eta=0".into()]).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{err}");
    }

    #[test]
    fn overrides_reach_nested_blocks() {
        let c = RunConfig::from_json(
            KITE,
            &[
                "medium.omega=3".into(),
                "geometry.curve=star".into(),
                "study.N=[32,64]".into(),
                "solver.M=15".into(),
            ],
        )
        .unwrap();
        assert_eq!(c.medium.omega, 3.0);
        assert_eq!(c.curve().unwrap(), CurveSpec::Star);
        assert_eq!(c.study_nodes().unwrap(), vec![32, 64]);
        assert_eq!(c.solver.m_max, 15);
        assert!(RunConfig::from_json(KITE, &["medium".into()]).is_err());
        assert!(RunConfig::from_json(KITE, &["medium.omega.x=1".into()]).is_err());
    }

    #[test]
    fn curves_resolve_by_name_or_shape() {
        let shape = r#"{ "medium": { "omega": 1 },
            "geometry": { "curve": { "shape": "circle", "radius": 2.0 }, "N": 32 } }"#;
        let c = RunConfig::from_json(shape, &[]).unwrap();
        assert!(matches!(c.curve().unwrap(), CurveSpec::Circle { radius, .. } if radius == 2.0));
        assert!(RunConfig::from_json(KITE, &["geometry.curve=blob".into()]).is_err());
    }

    #[test]
    fn automatic_node_count() {
        let c = RunConfig::from_json(
            KITE,
            &[
                "geometry.curve=rounded_triangle".into(),
                "geometry.N=auto".into(),
                format!("medium.omega={}", 10.0 * std::f64::consts::PI),
            ],
        )
        .unwrap();
        assert_eq!(c.nodes().unwrap(), 630);
    }

    #[test]
    fn grid_points_cover_the_extents() {
        let g = GridSpec {
            x: [-1.0, 1.0],
            y: [0.0, 2.0],
            nx: 3,
            ny: 2,
        };
        let p = g.points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], [-1.0, 0.0]);
        assert_eq!(p[5], [1.0, 2.0]);
        assert!(GridSpec { nx: 1, ..g }.validate().is_err());
    }
}
