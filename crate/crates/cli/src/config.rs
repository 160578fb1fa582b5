//! Run configuration: a TOML file whose values command-line flags override.

use std::fs;
use std::path::{Path, PathBuf};

use feature_tags::polarity::{PmiVariant, PolarityConfig};
use feature_tags::templates::DEFAULT_MAX_WINDOW;
use feature_tags::{CountingUnit, Strictness};
use serde::Deserialize;

use crate::error::{CliError, CliResult};

/// The file as written. Every key is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub corpus: Option<PathBuf>,
    pub features: Option<PathBuf>,
    pub evaluations: Option<PathBuf>,
    pub adverbs: Option<PathBuf>,
    pub negations: Option<PathBuf>,
    pub references: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
    pub similarity: Option<PathBuf>,
    pub templates: Option<PathBuf>,
    pub relation_map: Option<PathBuf>,
    pub gold: Option<PathBuf>,
    pub tags: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub theta_hownet: Option<f64>,
    pub theta_pmi: Option<f64>,
    pub pmi_variant: Option<PmiVariant>,
    pub smoothing: Option<f64>,
    pub strictness: Option<Strictness>,
    pub max_window: Option<usize>,
    pub jobs: Option<usize>,
    pub negation: Option<bool>,
    /// Count co-occurrence in sliding windows of this many tokens instead of
    /// per sentence.
    pub cooccurrence_window: Option<usize>,
    pub top_k: Option<usize>,
}

/// Values given on the command line.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub theta_hownet: Option<f64>,
    pub theta_pmi: Option<f64>,
    pub pmi_variant: Option<PmiVariant>,
    pub strictness: Option<Strictness>,
    pub max_window: Option<usize>,
    pub jobs: Option<usize>,
    pub output: Option<PathBuf>,
    pub no_negation: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Input {
    Corpus,
    Features,
    Evaluations,
    Adverbs,
    Negations,
    References,
    Synonyms,
    Similarity,
    Templates,
    RelationMap,
    Gold,
    Tags,
}

impl Input {
    pub fn key(self) -> &'static str {
        match self {
            Input::Corpus => "corpus",
            Input::Features => "features",
            Input::Evaluations => "evaluations",
            Input::Adverbs => "adverbs",
            Input::Negations => "negations",
            Input::References => "references",
            Input::Synonyms => "synonyms",
            Input::Similarity => "similarity",
            Input::Templates => "templates",
            Input::RelationMap => "relation_map",
            Input::Gold => "gold",
            Input::Tags => "tags",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    inputs: Vec<(Input, PathBuf)>,
    pub output: Option<PathBuf>,
    pub polarity: PolarityConfig,
    pub strictness: Strictness,
    pub max_window: usize,
    pub jobs: Option<usize>,
    pub detect_negation: bool,
    pub unit: CountingUnit,
    pub top_k: usize,
}

impl RunConfig {
    /// Reads `path` (if any), applies `overrides` and resolves relative
    /// paths against the config file's directory.
    pub fn load(path: Option<&Path>, overrides: &Overrides) -> CliResult<Self> {
        let (file, base) = match path {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                let file: FileConfig = toml::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e.message())))?;
                let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
                (file, base)
            }
            None => (FileConfig::default(), PathBuf::new()),
        };
        Self::resolve(file, &base, overrides)
    }

    pub fn resolve(file: FileConfig, base: &Path, overrides: &Overrides) -> CliResult<Self> {
        let join = |p: Option<PathBuf>| p.map(|p| base.join(p));
        let inputs = [
            (Input::Corpus, file.corpus),
            (Input::Features, file.features),
            (Input::Evaluations, file.evaluations),
            (Input::Adverbs, file.adverbs),
            (Input::Negations, file.negations),
            (Input::References, file.references),
            (Input::Synonyms, file.synonyms),
            (Input::Similarity, file.similarity),
            (Input::Templates, file.templates),
            (Input::RelationMap, file.relation_map),
            (Input::Gold, file.gold),
            (Input::Tags, file.tags),
        ]
        .into_iter()
        .filter_map(|(k, p)| join(p).map(|p| (k, p)))
        .collect();

        let defaults = PolarityConfig::default();
        let polarity = PolarityConfig {
            theta_hownet: overrides
                .theta_hownet
                .or(file.theta_hownet)
                .unwrap_or(defaults.theta_hownet),
            theta_pmi: overrides
                .theta_pmi
                .or(file.theta_pmi)
                .unwrap_or(defaults.theta_pmi),
            pmi_variant: overrides
                .pmi_variant
                .or(file.pmi_variant)
                .unwrap_or(defaults.pmi_variant),
            smoothing: file.smoothing.unwrap_or(defaults.smoothing),
        };
        polarity
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;

        let max_window = overrides
            .max_window
            .or(file.max_window)
            .unwrap_or(DEFAULT_MAX_WINDOW);
        if max_window == 0 {
            return Err(CliError::Usage("max_window must be at least 1".into()));
        }
        let jobs = overrides.jobs.or(file.jobs);
        if jobs == Some(0) {
            return Err(CliError::Usage("jobs must be at least 1".into()));
        }
        let unit = match file.cooccurrence_window {
            None => CountingUnit::Sentence,
            Some(0) => {
                return Err(CliError::Usage(
                    "cooccurrence_window must be at least 1".into(),
                ))
            }
            Some(k) => CountingUnit::Window(k),
        };
        Ok(RunConfig {
            inputs,
            output: overrides.output.clone().or(join(file.output)),
            polarity,
            strictness: overrides.strictness.or(file.strictness).unwrap_or_default(),
            max_window,
            jobs,
            detect_negation: file.negation.unwrap_or(true) && !overrides.no_negation,
            unit,
            top_k: file.top_k.unwrap_or(10),
        })
    }

    /// Path of an optional input; configured paths must exist.
    pub fn optional(&self, input: Input) -> CliResult<Option<&Path>> {
        match self.inputs.iter().find(|(k, _)| *k == input) {
            None => Ok(None),
            Some((_, path)) if path.is_file() => Ok(Some(path)),
            Some((_, path)) => Err(CliError::Usage(format!(
                "{}: {} file does not exist",
                path.display(),
                input.key()
            ))),
        }
    }

    pub fn required(&self, input: Input) -> CliResult<&Path> {
        self.optional(input)?
            .ok_or_else(|| CliError::Usage(format!("configuration does not set `{}`", input.key())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_carry_published_thresholds() {
        let config =
            RunConfig::resolve(FileConfig::default(), Path::new(""), &Overrides::default())
                .unwrap();
        assert_eq!(config.polarity.theta_hownet, 0.73);
        assert_eq!(config.polarity.theta_pmi, 0.50);
        assert_eq!(config.max_window, 5);
        assert_eq!(config.strictness, Strictness::Core);
        assert!(config.detect_negation);
    }

    #[test]
    fn flags_win_over_file() {
        let file: FileConfig =
            toml::from_str("theta_pmi = 0.9\nmax_window = 7\nstrictness = \"full\"").unwrap();
        let overrides = Overrides {
            theta_pmi: Some(0.1),
            ..Overrides::default()
        };
        let config = RunConfig::resolve(file, Path::new(""), &overrides).unwrap();
        assert_eq!(config.polarity.theta_pmi, 0.1);
        assert_eq!(config.max_window, 7);
        assert_eq!(config.strictness, Strictness::Full);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<FileConfig>("thetahownet = 0.5").is_err());
    }

    #[test]
    fn out_of_range_threshold_is_usage_error() {
        let file: FileConfig = toml::from_str("theta_hownet = 1.5").unwrap();
        let err = RunConfig::resolve(file, Path::new(""), &Overrides::default()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn paths_resolve_against_base() {
        let file: FileConfig = toml::from_str("corpus = \"c.conllu\"").unwrap();
        let config =
            RunConfig::resolve(file, Path::new("/nonexistent/dir"), &Overrides::default()).unwrap();
        let err = config.required(Input::Corpus).unwrap_err().to_string();
        assert!(err.contains("/nonexistent/dir/c.conllu"), "{err}");
        assert!(config.optional(Input::Gold).unwrap().is_none());
        assert!(config.required(Input::Gold).is_err());
    }
}
