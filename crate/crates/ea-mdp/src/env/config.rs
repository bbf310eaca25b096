//! Self-describing JSON environment configs.
//!
//! A config document selects `"kind": "two_site"` or `"kind": "lattice"` and
//! overrides any subset of the bundled defaults. Amplitudes are written as
//! `[re, im]` pairs; angles are radians; lattice sites are 1-based `[x, y]`
//! pairs. Unknown keys are rejected.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::mdp::EaMdp;
use crate::quantum::{RewardSpec, StateVector};

use super::{
    build_lattice, build_two_site, default_ea_assignments, EnvError, LatticeSpec, TwoSiteSpec,
};

/// Config form of the two-site system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoSiteConfig {
    pub kind: String,
    #[serde(default = "defaults::two_site_gamma")]
    pub gamma: f64,
    #[serde(default)]
    pub theta1: f64,
    #[serde(default)]
    pub theta2: f64,
    #[serde(default = "defaults::c1")]
    pub c1: Vec<(f64, f64)>,
    #[serde(default = "defaults::c2")]
    pub c2: Vec<(f64, f64)>,
    #[serde(default = "defaults::two_site_rewards")]
    pub rewards: Vec<f64>,
}

impl Default for TwoSiteConfig {
    fn default() -> Self {
        Self {
            kind: "two_site".into(),
            gamma: defaults::two_site_gamma(),
            theta1: 0.0,
            theta2: 0.0,
            c1: defaults::c1(),
            c2: defaults::c2(),
            rewards: defaults::two_site_rewards(),
        }
    }
}

impl TwoSiteConfig {
    pub fn to_spec(&self) -> Result<TwoSiteSpec, EnvError> {
        let c1 = amps_to_state(&self.c1, "c1")?;
        let c2 = amps_to_state(&self.c2, "c2")?;
        let rewards = RewardSpec::new(self.rewards.clone())?;
        let spec = TwoSiteSpec::new(c1, c2, rewards, self.gamma)?;
        Ok(spec.with_phases(self.theta1, self.theta2))
    }
}

/// One per-site evidence assignment of a lattice config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EaAssignmentConfig {
    pub site: (usize, usize),
    pub amps: Vec<(f64, f64)>,
}

/// Config form of the lattice system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub kind: String,
    #[serde(default = "defaults::width")]
    pub width: usize,
    #[serde(default = "defaults::height")]
    pub height: usize,
    #[serde(default = "defaults::obstacles")]
    pub obstacles: Vec<(usize, usize)>,
    #[serde(default = "defaults::goal")]
    pub goal: (usize, usize),
    #[serde(default = "defaults::start")]
    pub start: (usize, usize),
    #[serde(default)]
    pub phi1: f64,
    #[serde(default)]
    pub phi2: f64,
    #[serde(default = "defaults::lattice_rewards")]
    pub rewards: Vec<f64>,
    #[serde(default = "defaults::lattice_gamma")]
    pub gamma: f64,
    #[serde(default = "defaults::assignments")]
    pub ea_assignments: Vec<EaAssignmentConfig>,
    /// Extra sites whose optimal values sweep outputs should report, in
    /// addition to the start site.
    #[serde(default)]
    pub probes: Vec<(usize, usize)>,
}

impl Default for LatticeConfig {
    fn default() -> Self {
        Self {
            kind: "lattice".into(),
            width: defaults::width(),
            height: defaults::height(),
            obstacles: defaults::obstacles(),
            goal: defaults::goal(),
            start: defaults::start(),
            phi1: 0.0,
            phi2: 0.0,
            rewards: defaults::lattice_rewards(),
            gamma: defaults::lattice_gamma(),
            ea_assignments: defaults::assignments(),
            probes: Vec::new(),
        }
    }
}

impl LatticeConfig {
    pub fn to_spec(&self) -> Result<LatticeSpec, EnvError> {
        let mut ea_assignments = BTreeMap::new();
        for record in &self.ea_assignments {
            let key = format!("ea_assignments[{:?}]", record.site);
            let psi = amps_to_state(&record.amps, &key)?;
            if ea_assignments.insert(record.site, psi).is_some() {
                return Err(EnvError::Invalid {
                    key: "ea_assignments".into(),
                    msg: format!("duplicate site {:?}", record.site),
                });
            }
        }
        let spec = LatticeSpec {
            width: self.width,
            height: self.height,
            obstacles: BTreeSet::from_iter(self.obstacles.iter().copied()),
            goal: self.goal,
            start: self.start,
            ea_assignments,
            phi1: self.phi1,
            phi2: self.phi2,
            rewards: RewardSpec::new(self.rewards.clone())?,
            gamma: self.gamma,
        };
        spec.validate()?;
        for (i, &site) in self.probes.iter().enumerate() {
            if !spec.in_bounds(site) {
                return Err(EnvError::Invalid {
                    key: format!("probes[{i}]"),
                    msg: format!("site {site:?} is outside the lattice"),
                });
            }
        }
        Ok(spec)
    }
}

/// A parsed, schema-checked environment document.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum EnvironmentConfig {
    TwoSite(TwoSiteConfig),
    Lattice(LatticeConfig),
}

impl<'de> serde::Deserialize<'de> for EnvironmentConfig {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        use serde::de::Error;
        let value = serde_json::Value::deserialize(deserializer)?;
        Self::from_value(value).map_err(D::Error::custom)
    }
}

impl EnvironmentConfig {
    /// Parses a JSON document, dispatching on its `kind` field. Unknown keys
    /// and malformed values are reported with the offending key name.
    pub fn from_json(text: &str) -> Result<Self, EnvError> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        Self::from_value(value)
    }

    fn from_value(value: serde_json::Value) -> Result<Self, EnvError> {
        let kind = value
            .get("kind")
            .and_then(serde_json::Value::as_str)
            .ok_or_else(|| EnvError::Invalid {
                key: "kind".into(),
                msg: "missing or not a string".into(),
            })?;
        match kind {
            "two_site" => Ok(Self::TwoSite(serde_json::from_value(value)?)),
            "lattice" => Ok(Self::Lattice(serde_json::from_value(value)?)),
            other => Err(EnvError::UnknownKind { kind: other.into() }),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }

    pub fn kind(&self) -> &str {
        match self {
            Self::TwoSite(_) => "two_site",
            Self::Lattice(_) => "lattice",
        }
    }

    pub fn gamma(&self) -> f64 {
        match self {
            Self::TwoSite(c) => c.gamma,
            Self::Lattice(c) => c.gamma,
        }
    }

    /// Validates the document semantically and constructs the process.
    pub fn build(&self) -> Result<EaMdp, EnvError> {
        match self {
            Self::TwoSite(c) => build_two_site(&c.to_spec()?),
            Self::Lattice(c) => build_lattice(&c.to_spec()?),
        }
    }
}

/// Reads, parses, validates, and constructs in one step.
pub fn load_config<P: AsRef<Path>>(path: P) -> Result<(EnvironmentConfig, EaMdp), EnvError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| EnvError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let config = EnvironmentConfig::from_json(&text)?;
    let mdp = config.build()?;
    Ok((config, mdp))
}

fn amps_to_state(amps: &[(f64, f64)], key: &str) -> Result<StateVector, EnvError> {
    let amps: Vec<Complex64> = amps.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
    let v = StateVector::new(amps).map_err(|e| EnvError::Invalid {
        key: key.into(),
        msg: e.to_string(),
    })?;
    if !v.is_normalized() {
        return Err(EnvError::NotNormalized {
            key: key.into(),
            norm_sqr: v.norm_sqr(),
        });
    }
    Ok(v)
}

mod defaults {
    use super::EaAssignmentConfig;

    pub fn two_site_gamma() -> f64 {
        0.8
    }

    pub fn c1() -> Vec<(f64, f64)> {
        vec![(2.0 / 3.0, 0.0), (2.0 / 3.0, 0.0), (1.0 / 3.0, 0.0)]
    }

    pub fn c2() -> Vec<(f64, f64)> {
        vec![(2.0 / 3.0, 0.0), (1.0 / 3.0, 0.0), (2.0 / 3.0, 0.0)]
    }

    pub fn two_site_rewards() -> Vec<f64> {
        vec![-1.0, 1.0, 2.0]
    }

    pub fn width() -> usize {
        5
    }

    pub fn height() -> usize {
        5
    }

    pub fn obstacles() -> Vec<(usize, usize)> {
        vec![(2, 2), (4, 4)]
    }

    pub fn goal() -> (usize, usize) {
        (5, 5)
    }

    pub fn start() -> (usize, usize) {
        (1, 1)
    }

    pub fn lattice_rewards() -> Vec<f64> {
        vec![-1.0, -2.0, -3.0, 1.0]
    }

    pub fn lattice_gamma() -> f64 {
        0.9
    }

    pub fn assignments() -> Vec<EaAssignmentConfig> {
        super::default_ea_assignments()
            .into_iter()
            .map(|(site, psi)| EaAssignmentConfig {
                site,
                amps: psi.amps().iter().map(|a| (a.re, a.im)).collect(),
            })
            .collect()
    }
}
