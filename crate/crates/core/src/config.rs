//! Campaign configuration files (TOML). See `campaign.example.toml` at the
//! repository root for an annotated example.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::evaluator::list_cnf_files;
use crate::proposer::LlmSettings;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Ghc,
    Ea,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "snake_case")]
pub enum ProposerConfig {
    /// Catalog walk; `catalog` is a directory of `<slot>/<variant>.txt`
    /// files, defaulting to the built-in catalog.
    Mock {
        #[serde(default)]
        catalog: Option<PathBuf>,
    },
    Llm(LlmSettings),
}

fn default_budget() -> usize {
    60
}

fn default_parallelism() -> usize {
    1
}

fn default_workspace() -> PathBuf {
    PathBuf::from("workspace")
}

fn default_output() -> PathBuf {
    PathBuf::from("campaign")
}

fn default_compile_timeout() -> u64 {
    120
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub strategy: Strategy,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// Per-instance timeout in seconds.
    pub timeout: f64,
    /// `.cnf` files, or directories whose `.cnf` files are all used.
    pub instance_set: Vec<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_parallelism")]
    pub parallelism: usize,
    pub proposer: ProposerConfig,
    /// Compiler command line with `{source}` and `{binary}` placeholders.
    #[serde(default)]
    pub toolchain: Option<Vec<String>>,
    #[serde(default = "default_compile_timeout")]
    pub compile_timeout: u64,
    /// Marked solver source; the built-in template when absent.
    #[serde(default)]
    pub template: Option<PathBuf>,
    #[serde(default = "default_workspace")]
    pub workspace: PathBuf,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parsing config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl CampaignConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let c: CampaignConfig = toml::from_str(text)?;
        c.validate()?;
        Ok(c)
    }

    /// Loads a config file; relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut c = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        c.rebase(base);
        Ok(c)
    }

    fn rebase(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        self.instance_set.iter_mut().for_each(fix);
        fix(&mut self.workspace);
        fix(&mut self.output_dir);
        if let Some(t) = self.template.as_mut() {
            fix(t);
        }
        if let ProposerConfig::Mock {
            catalog: Some(c),
        } = &mut self.proposer
        {
            fix(c);
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: &str| Err(ConfigError::Invalid(m.to_string()));
        if self.budget == 0 {
            return bad("budget must be at least 1");
        }
        if !(self.timeout > 0.0) || !self.timeout.is_finite() {
            return bad("timeout must be a positive number of seconds");
        }
        if self.parallelism == 0 {
            return bad("parallelism must be at least 1");
        }
        if self.instance_set.is_empty() {
            return bad("instance_set is empty");
        }
        if let ProposerConfig::Llm(s) = &self.proposer {
            if !(s.temperature >= 0.0) {
                return bad("temperature must be non-negative");
            }
        }
        if matches!(&self.toolchain, Some(t) if t.is_empty()) {
            return bad("toolchain command is empty");
        }
        Ok(())
    }

    /// The instance files, with directories expanded.
    pub fn instance_paths(&self) -> Result<Vec<PathBuf>, ConfigError> {
        let mut out = Vec::new();
        for p in &self.instance_set {
            if p.is_dir() {
                let files = list_cnf_files(p).map_err(|source| ConfigError::Io {
                    path: p.clone(),
                    source,
                })?;
                out.extend(files);
            } else {
                out.push(p.clone());
            }
        }
        if out.is_empty() {
            return Err(ConfigError::Invalid("instance_set has no .cnf files".into()));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = include_str!("../../../campaign.example.toml");

    #[test]
    fn example_config_parses() {
        let c = CampaignConfig::from_toml(EXAMPLE).unwrap();
        assert_eq!(c.strategy, Strategy::Ea);
        assert_eq!(c.budget, 60);
        assert!(c.budget as f64 >= 0.6 * 81.0);
        assert!(matches!(c.proposer, ProposerConfig::Mock { .. }));
    }

    #[test]
    fn defaults_and_llm_section() {
        let c = CampaignConfig::from_toml(
            r#"
strategy = "ghc"
timeout = 5.0
instance_set = ["bench"]

[proposer]
backend = "llm"
model = "some-model"
"#,
        )
        .unwrap();
        assert_eq!(c.budget, 60);
        assert_eq!(c.parallelism, 1);
        assert_eq!(c.compile_timeout, 120);
        let ProposerConfig::Llm(s) = c.proposer else {
            panic!()
        };
        assert_eq!(s.model, "some-model");
        assert_eq!(s.temperature, 1.0);
        assert_eq!(s.max_retries, 3);
    }

    #[test]
    fn invalid_values_rejected() {
        let base = "strategy = \"ea\"\ninstance_set = [\"x\"]\n[proposer]\nbackend = \"mock\"\n";
        assert!(CampaignConfig::from_toml(&format!("timeout = 0.0\n{base}")).is_err());
        assert!(CampaignConfig::from_toml(&format!("timeout = 1.0\nbudget = 0\n{base}")).is_err());
        assert!(CampaignConfig::from_toml(&format!("timeout = 1.0\nbogus = 1\n{base}")).is_err());
        assert!(CampaignConfig::from_toml(&format!("timeout = 1.0\n{base}")).is_ok());
    }

    #[test]
    fn relative_paths_follow_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        fs::write(
            &path,
            "strategy = \"ea\"\ntimeout = 1.0\ninstance_set = [\"inst\"]\n[proposer]\nbackend = \"mock\"\n",
        )
        .unwrap();
        let c = CampaignConfig::load(&path).unwrap();
        assert_eq!(c.instance_set[0], dir.path().join("inst"));
        assert_eq!(c.output_dir, dir.path().join("campaign"));
    }
}
