use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::language::{ShiftKind, SubshiftSpec, DEFAULT_WORD_CAP};

/// The configuration shipped with the crate.
pub const BUNDLED_CONFIG: &str = include_str!("../../../../configs/bundled.toml");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Horizons {
    pub n_max: usize,
    /// Range used for specs without their own `aut_range`; unset means 2 for
    /// binary substitutions and 1 otherwise.
    pub aut_range: Option<usize>,
    pub max_inv_range: usize,
    /// Endomorphy depth; unset means the per-spec default.
    pub depth: Option<usize>,
    pub max_b: usize,
    pub max_a: i64,
    pub rect_grid: Vec<usize>,
    pub word_cap: usize,
    pub max_nodes: u64,
}

impl Default for Horizons {
    fn default() -> Self {
        Horizons {
            n_max: 40,
            aut_range: None,
            max_inv_range: 2,
            depth: None,
            max_b: 8,
            max_a: 24,
            rect_grid: vec![4, 8, 16, 32],
            word_cap: DEFAULT_WORD_CAP,
            max_nodes: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("report"), formats: vec![Format::Json, Format::Csv, Format::Text] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
    pub r: i64,
}

/// One `[specs.NAME]` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecEntry {
    #[serde(rename = "type")]
    pub kind: String,
    pub alphabet: Option<String>,
    pub forbidden: Option<Vec<String>>,
    pub rules: Option<BTreeMap<String, String>>,
    pub seed: Option<String>,
    pub alpha: Option<Slope>,
    pub word: Option<String>,
    pub aut_range: Option<usize>,
}

fn need<'a, T>(name: &str, field: &str, v: &'a Option<T>) -> Result<&'a T> {
    v.as_ref().ok_or_else(|| Error::Config(format!("spec {name:?}: missing field {field:?}")))
}

fn single_char(name: &str, field: &str, s: &str) -> Result<char> {
    let mut cs = s.chars();
    match (cs.next(), cs.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::Config(format!("spec {name:?}: {field} {s:?} is not a single symbol"))),
    }
}

impl SpecEntry {
    /// Parses one spec table given on its own, e.g. `type = "sft"` plus fields.
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_spec(&self, name: &str) -> Result<SubshiftSpec> {
        let alphabet = || -> Result<Alphabet> {
            match &self.alphabet {
                Some(a) => Alphabet::new(a.chars()),
                None => Ok(Alphabet::binary()),
            }
        };
        let unused = |fields: &[(&str, bool)]| -> Result<()> {
            match fields.iter().find(|(_, set)| *set) {
                Some((f, _)) => Err(Error::Config(format!("spec {name:?}: field {f:?} does not apply to type {:?}", self.kind))),
                None => Ok(()),
            }
        };
        let spec = match self.kind.as_str() {
            "full" => {
                unused(&[("forbidden", self.forbidden.is_some()), ("rules", self.rules.is_some()), ("seed", self.seed.is_some()), ("alpha", self.alpha.is_some()), ("word", self.word.is_some())])?;
                SubshiftSpec::full(alphabet()?)
            }
            "sft" => {
                unused(&[("rules", self.rules.is_some()), ("seed", self.seed.is_some()), ("alpha", self.alpha.is_some()), ("word", self.word.is_some())])?;
                let f: Vec<&str> = need(name, "forbidden", &self.forbidden)?.iter().map(String::as_str).collect();
                SubshiftSpec::sft(alphabet()?, &f)?
            }
            "substitution" => {
                unused(&[("forbidden", self.forbidden.is_some()), ("alpha", self.alpha.is_some()), ("word", self.word.is_some())])?;
                let rules = need(name, "rules", &self.rules)?
                    .iter()
                    .map(|(k, v)| Ok((single_char(name, "rule key", k)?, v.as_str())))
                    .collect::<Result<Vec<_>>>()?;
                let seed = match &self.seed {
                    Some(s) => single_char(name, "seed", s)?,
                    None => rules.first().map(|r| r.0).ok_or_else(|| Error::Config(format!("spec {name:?}: no rules")))?,
                };
                SubshiftSpec::substitution(alphabet()?, &rules, seed)?
            }
            "sturmian" => {
                unused(&[("forbidden", self.forbidden.is_some()), ("rules", self.rules.is_some()), ("seed", self.seed.is_some()), ("word", self.word.is_some())])?;
                if self.alphabet.as_deref().is_some_and(|a| a != "01") {
                    return Err(Error::Config(format!("spec {name:?}: mechanical words use the alphabet \"01\"")));
                }
                let a = need(name, "alpha", &self.alpha)?;
                SubshiftSpec::sturmian(a.p, a.q, a.r)?
            }
            "periodic" => {
                unused(&[("forbidden", self.forbidden.is_some()), ("rules", self.rules.is_some()), ("seed", self.seed.is_some()), ("alpha", self.alpha.is_some())])?;
                SubshiftSpec::periodic(alphabet()?, need(name, "word", &self.word)?)?
            }
            other => return Err(Error::Config(format!("spec {name:?}: unknown type {other:?}"))),
        };
        Ok(spec)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub horizons: Horizons,
    pub output: OutputConfig,
    /// Named specs; a `BTreeMap` so iteration order is the name order.
    pub specs: BTreeMap<String, SpecEntry>,
}

/// A spec ready to run, with its effective automorphism range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedSpec {
    pub name: String,
    pub spec: SubshiftSpec,
    pub aut_range: usize,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn bundled() -> Self {
        Self::from_toml(BUNDLED_CONFIG).expect("bundled config is valid")
    }

    pub fn validate(&self) -> Result<()> {
        let h = &self.horizons;
        if h.n_max == 0 || h.max_b == 0 || h.max_a < 0 || h.word_cap == 0 || h.max_nodes == 0 {
            return Err(Error::Config("horizons must be positive".into()));
        }
        if h.rect_grid.contains(&0) {
            return Err(Error::Config("rect_grid entries must be positive".into()));
        }
        if h.depth == Some(0) {
            return Err(Error::Config("depth must be positive".into()));
        }
        self.resolved_specs().map(|_| ())
    }

    /// Specs in name order, each parsed and structurally checked.
    pub fn resolved_specs(&self) -> Result<Vec<NamedSpec>> {
        self.specs
            .iter()
            .map(|(name, entry)| {
                let spec = entry.to_spec(name)?;
                let aut_range = entry.aut_range.or(self.horizons.aut_range).unwrap_or_else(|| default_aut_range(&spec));
                Ok(NamedSpec { name: name.clone(), spec, aut_range })
            })
            .collect()
    }
}

pub fn default_aut_range(spec: &SubshiftSpec) -> usize {
    match spec.kind {
        ShiftKind::Substitution { .. } if spec.alphabet.size() == 2 => 2,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_parses() {
        let cfg = ExperimentConfig::bundled();
        let specs = cfg.resolved_specs().unwrap();
        let fib = specs.iter().find(|s| s.name == "fibonacci").unwrap();
        assert_eq!(fib.spec, SubshiftSpec::fibonacci());
        assert_eq!(fib.aut_range, 2);
        assert_eq!(specs.iter().find(|s| s.name == "full2").unwrap().aut_range, 0);
    }

    #[test]
    fn defaults_and_errors() {
        let cfg = ExperimentConfig::from_toml("").unwrap();
        assert_eq!(cfg.horizons, Horizons::default());
        assert!(cfg.specs.is_empty());

        let cfg = ExperimentConfig::from_toml("[specs.tm]\ntype = \"substitution\"\nrules = { 0 = \"01\", 1 = \"10\" }\n").unwrap();
        assert_eq!(cfg.resolved_specs().unwrap()[0].aut_range, 2);

        for bad in [
            "[horizons]\nn_max = 0\n",
            "[specs.x]\ntype = \"cellular\"\n",
            "[specs.x]\ntype = \"sft\"\n",
            "[specs.x]\ntype = \"full\"\nword = \"01\"\n",
            "[specs.x]\ntype = \"substitution\"\nrules = { 0 = \"00\", 1 = \"11\" }\n",
            "[horizons]\nbogus = 1\n",
        ] {
            assert!(ExperimentConfig::from_toml(bad).is_err(), "{bad}");
        }
    }
}
