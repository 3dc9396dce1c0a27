//! Campaign configuration and its `key = value` file format.
//!
//! ```text
//! # lines starting with '#' are comments
//! group = Q8
//! checks = p_property, isoperimetric
//! mode = sampled
//! seed = 7
//! ```
//!
//! Keys: `group`, `checks` (or `all`), `mode`, `seed`, `count`, `family`,
//! `output`, `delta`, `iota`, `r0`, `n`, `p`, `v0`, `c_variant`.

use std::path::PathBuf;
use std::str::FromStr;

use noncomm_core::isoperimetry::ConstantVariant;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    PProperty,
    Isoperimetric,
    SobolevFlat,
    Dagger,
    DoubleDagger,
    Chain,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::PProperty,
        Check::Isoperimetric,
        Check::SobolevFlat,
        Check::Dagger,
        Check::DoubleDagger,
        Check::Chain,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::PProperty => "p_property",
            Check::Isoperimetric => "isoperimetric",
            Check::SobolevFlat => "sobolev_flat",
            Check::Dagger => "dagger",
            Check::DoubleDagger => "double_dagger",
            Check::Chain => "chain",
        }
    }
}

impl FromStr for Check {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        Check::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| CliError::Config(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModeKind {
    Exhaustive,
    Sampled,
}

impl FromStr for ModeKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exhaustive" => Ok(ModeKind::Exhaustive),
            "sampled" => Ok(ModeKind::Sampled),
            _ => Err(CliError::Config(format!("unknown mode {s:?}"))),
        }
    }
}

pub fn parse_variant(s: &str) -> Result<ConstantVariant, CliError> {
    match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
        "general" => Ok(ConstantVariant::General),
        "gamma_g" | "gammag" => Ok(ConstantVariant::GammaG),
        _ => Err(CliError::Config(format!("unknown c variant {s:?}"))),
    }
}

/// Per-check overrides.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Parameters {
    pub delta: f64,
    pub iota: f64,
    pub r0: f64,
    /// Dimension; defaults to `δ ν_{R₀+1}` from the certificate.
    pub n: Option<f64>,
    /// Exponent of the flat Sobolev form.
    pub p: f64,
    /// Defaults to `1 + μ(V)`, which makes `K(Ω₀)` vanish for every `f`.
    pub v0: Option<f64>,
    pub c_variant: ConstantVariant,
}

impl Default for Parameters {
    fn default() -> Self {
        Parameters {
            delta: 1.0,
            iota: 1.0,
            r0: 1.0,
            n: None,
            p: 2.0,
            v0: None,
            c_variant: ConstantVariant::GammaG,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CampaignConfig {
    pub group_spec: String,
    pub checks: Vec<Check>,
    pub parameters: Parameters,
    pub family: String,
    pub seed: Option<u64>,
    pub count: usize,
    pub mode: ModeKind,
    pub output: Option<PathBuf>,
}

impl CampaignConfig {
    pub fn new(group_spec: impl Into<String>) -> Self {
        CampaignConfig {
            group_spec: group_spec.into(),
            checks: Check::ALL.to_vec(),
            parameters: Parameters::default(),
            family: "default".into(),
            seed: None,
            count: 200,
            mode: ModeKind::Exhaustive,
            output: None,
        }
    }

    /// Parses a config file. `group` may be left out when the command line
    /// supplies it.
    pub fn from_key_values(text: &str) -> Result<Self, CliError> {
        let mut config = CampaignConfig::new("");
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            config
                .apply(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", lineno + 1)))?;
        }
        Ok(config)
    }

    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
            value
                .parse()
                .map_err(|_| CliError::Config(format!("{key}: cannot parse {value:?}")))
        }
        let params = &mut self.parameters;
        match key.to_ascii_lowercase().as_str() {
            "group" => self.group_spec = value.to_string(),
            "checks" => {
                self.checks = if value.trim().eq_ignore_ascii_case("all") {
                    Check::ALL.to_vec()
                } else {
                    let mut checks = value
                        .split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(Check::from_str)
                        .collect::<Result<Vec<_>, _>>()?;
                    checks.sort();
                    checks.dedup();
                    checks
                }
            }
            "all" => {
                if num::<bool>(key, value)? {
                    self.checks = Check::ALL.to_vec();
                }
            }
            "mode" => self.mode = value.parse()?,
            "seed" => self.seed = Some(num(key, value)?),
            "count" => self.count = num(key, value)?,
            "family" => self.family = value.to_string(),
            "output" => self.output = Some(PathBuf::from(value)),
            "delta" => params.delta = num(key, value)?,
            "iota" => params.iota = num(key, value)?,
            "r0" => params.r0 = num(key, value)?,
            "n" => params.n = Some(num(key, value)?),
            "p" => params.p = num(key, value)?,
            "v0" => params.v0 = Some(num(key, value)?),
            "c_variant" => params.c_variant = parse_variant(value)?,
            _ => return Err(CliError::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.group_spec.trim().is_empty() {
            return Err(CliError::Config("no group given".into()));
        }
        if self.checks.is_empty() {
            return Err(CliError::Config("no checks selected".into()));
        }
        if self.mode == ModeKind::Sampled && self.seed.is_none() {
            return Err(CliError::Config(
                "sampled mode needs an explicit seed".into(),
            ));
        }
        let p = &self.parameters;
        if !(p.p >= 1.0 && p.p.is_finite()) {
            return Err(CliError::Config(format!("p = {} must be at least 1", p.p)));
        }
        if let Some(v0) = p.v0 {
            if !(v0 > 0.0) {
                return Err(CliError::Config(format!("v0 = {v0} must be positive")));
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file() {
        let text = "# campaign\ngroup = S3\nchecks = dagger, p_property, dagger\nmode = sampled\nseed = 9\n\nc_variant = general\n";
        let c = CampaignConfig::from_key_values(text).unwrap();
        assert_eq!(c.group_spec, "S3");
        assert_eq!(c.checks, [Check::PProperty, Check::Dagger]);
        assert_eq!((c.mode, c.seed), (ModeKind::Sampled, Some(9)));
        assert_eq!(c.parameters.c_variant, ConstantVariant::General);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(CampaignConfig::from_key_values("group Q8").is_err());
        assert!(CampaignConfig::from_key_values("colour = red").is_err());
        assert!(CampaignConfig::from_key_values("checks = nash").is_err());
        assert!(CampaignConfig::from_key_values("seed = -1").is_err());
    }

    #[test]
    fn sampled_needs_seed() {
        let mut c = CampaignConfig::new("Q8");
        c.apply("mode", "sampled").unwrap();
        assert!(c.validate().is_err());
        c.apply("seed", "0").unwrap();
        c.validate().unwrap();
    }
}
