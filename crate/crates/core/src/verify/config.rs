use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::continuous::QuadOptions;
use crate::error::{Error, Result};
use crate::nome::Nome;

/// A group of related checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Core,
    Det,
    Discrete,
    Continuous,
    ProofReplay,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Core, Suite::Det, Suite::Discrete, Suite::Continuous, Suite::ProofReplay];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Det => "det",
            Suite::Discrete => "discrete",
            Suite::Continuous => "continuous",
            Suite::ProofReplay => "proof-replay",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite '{s}' (expected one of core, det, discrete, continuous, proof-replay, all)")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(Error::Config(format!("unknown format '{s}' (expected text or json)"))),
        }
    }
}

/// A complex number given as `[modulus, phase]`.
pub type Polar = [f64; 2];

/// Everything a verification run depends on. Field names are the JSON keys
/// of a config file; absent keys take the defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    /// Instances per check, by suite name; suites not listed use each
    /// check's own default.
    pub counts: BTreeMap<Suite, usize>,
    pub p: Polar,
    pub q: Polar,
    /// Tolerance overrides by check id.
    pub tol: BTreeMap<String, f64>,
    /// Largest node count per dimension for 1-, 2- and 3-variable integrals.
    pub quad_caps: Vec<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// Record wall-clock time per check (otherwise `runtime_ms` is 0 and
    /// reports are reproducible byte for byte).
    pub timing: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suites: Suite::ALL.to_vec(),
            seed: 0,
            counts: BTreeMap::new(),
            p: [0.20, 0.3],
            q: [0.45, 1.1],
            tol: BTreeMap::new(),
            quad_caps: (1..=3).map(|n| QuadOptions::for_dims(n).cap).collect(),
            out: None,
            format: Format::Text,
            timing: false,
        }
    }
}

impl SuiteConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let config: SuiteConfig = serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.nome()?;
        if let Some((suite, _)) = self.counts.iter().find(|(_, &c)| c == 0) {
            return Err(Error::Config(format!("count for suite {suite} must be at least 1")));
        }
        if let Some((id, t)) = self.tol.iter().find(|(_, &t)| !(t > 0.0)) {
            return Err(Error::Config(format!("tolerance for {id} must be positive (got {t})")));
        }
        if self.quad_caps.is_empty() || self.quad_caps.iter().any(|&c| c < crate::continuous::MIN_NODES) {
            return Err(Error::Config(format!(
                "quadrature caps must be at least {} (got {:?})",
                crate::continuous::MIN_NODES,
                self.quad_caps
            )));
        }
        Ok(())
    }

    pub fn nome(&self) -> Result<Nome> {
        let [pm, pa] = self.p;
        let [qm, qa] = self.q;
        Nome::from_polar(pm, pa, qm, qa).map_err(|e| Error::Config(e.to_string()))
    }

    /// Instances for a check whose own default is `default`.
    pub fn count(&self, suite: Suite, default: usize) -> usize {
        self.counts.get(&suite).copied().unwrap_or(default)
    }

    /// Effective tolerance of `check_id`.
    pub fn tolerance(&self, check_id: &str, default: f64) -> f64 {
        self.tol.get(check_id).copied().unwrap_or(default)
    }

    /// Quadrature options for `n` variables under the configured caps.
    pub fn quad_options(&self, n: usize) -> QuadOptions {
        let cap = self.quad_caps[(n - 1).min(self.quad_caps.len() - 1)];
        QuadOptions::for_dims(n).with_cap(cap)
    }
}
