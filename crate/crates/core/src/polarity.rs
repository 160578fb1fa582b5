//! Sentiment polarity of candidate evaluation words.
//!
//! Two kinds of evidence are combined. The lexicon side scores a word by its
//! similarity to commendatory and derogatory reference words and, when the
//! best similarity clears `theta_hownet`, inherits the intensity of that
//! reference. The corpus side scores a word by its pointwise association with
//! the same references. A word with neither a close reference nor a PMI score
//! above `theta_pmi` is filtered out.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::normalize_lemma;
use crate::error::{Error, Result};
use crate::lexicon::{expand_synonyms, SentimentLexicon};
use crate::stats::CorpusStats;

pub const DEFAULT_THETA_HOWNET: f64 = 0.73;
pub const DEFAULT_THETA_PMI: f64 = 0.50;
pub const DEFAULT_SMOOTHING: f64 = 1.0;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PmiVariant {
    /// Joint probability over the product of marginals.
    #[default]
    Ratio,
    /// Base-2 logarithm of the ratio.
    Log2,
}

impl FromStr for PmiVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "ratio" => Ok(PmiVariant::Ratio),
            "log2" => Ok(PmiVariant::Log2),
            other => Err(format!(
                "unknown PMI variant {other:?} (expected ratio or log2)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarityConfig {
    pub theta_hownet: f64,
    pub theta_pmi: f64,
    pub pmi_variant: PmiVariant,
    pub smoothing: f64,
}

impl Default for PolarityConfig {
    fn default() -> Self {
        PolarityConfig {
            theta_hownet: DEFAULT_THETA_HOWNET,
            theta_pmi: DEFAULT_THETA_PMI,
            pmi_variant: PmiVariant::Ratio,
            smoothing: DEFAULT_SMOOTHING,
        }
    }
}

impl PolarityConfig {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta_hownet) {
            return Err(Error::Config(format!(
                "theta_hownet {} is outside [0, 1]",
                self.theta_hownet
            )));
        }
        if !self.theta_pmi.is_finite() {
            return Err(Error::Config("theta_pmi must be finite".into()));
        }
        if !(self.smoothing.is_finite() && self.smoothing >= 0.0) {
            return Err(Error::Config(format!(
                "smoothing {} must be a non-negative number",
                self.smoothing
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarityLabel {
    Commendatory,
    Derogatory,
    Filtered,
}

impl fmt::Display for PolarityLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolarityLabel::Commendatory => "commendatory",
            PolarityLabel::Derogatory => "derogatory",
            PolarityLabel::Filtered => "filtered",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarityVerdict {
    pub word: String,
    pub hownet_score: f64,
    pub so_hownet: Option<f64>,
    /// Reference whose intensity was inherited, when `so_hownet` is present.
    pub reference: Option<String>,
    pub pmi_score: f64,
    pub label: PolarityLabel,
}

/// Reference substitution result: the closest reference, its similarity and
/// the inherited signed intensity.
#[derive(Debug, Clone, PartialEq)]
pub struct SoHowNet {
    pub reference: String,
    pub similarity: f64,
    pub intensity: f64,
}

/// 1 on the diagonal, then the similarity table, then 1 for co-members of a
/// synonym set, otherwise 0.
pub fn similarity(a: &str, b: &str, lexicon: &SentimentLexicon) -> f64 {
    if a == b {
        return 1.0;
    }
    if let Some(value) = lexicon.table_similarity(a, b) {
        return value;
    }
    match (lexicon.synonym_set(a), lexicon.synonym_set(b)) {
        (Some(sa), Some(_)) if sa.contains(b) => 1.0,
        _ => 0.0,
    }
}

fn require_references(lexicon: &SentimentLexicon) -> Result<()> {
    if lexicon.is_empty() {
        return Err(Error::Config(
            "sentiment lexicon has no reference words".into(),
        ));
    }
    Ok(())
}

/// Sum of similarities to commendatory references minus the sum over
/// derogatory references.
pub fn hownet_score(word: &str, lexicon: &SentimentLexicon) -> Result<f64> {
    require_references(lexicon)?;
    let positive: f64 = lexicon
        .commendatory()
        .map(|r| similarity(word, &r.lemma, lexicon))
        .sum();
    let negative: f64 = lexicon
        .derogatory()
        .map(|r| similarity(word, &r.lemma, lexicon))
        .sum();
    Ok(positive - negative)
}

/// Score of an expanded synonym set: the sum of its members' scores.
pub fn hownet_set_score<'a, I>(words: I, lexicon: &SentimentLexicon) -> Result<f64>
where
    I: IntoIterator<Item = &'a str>,
{
    words.into_iter().map(|w| hownet_score(w, lexicon)).sum()
}

/// Picks the most similar reference (earliest on ties) and, when that
/// similarity exceeds `theta_hownet`, returns `Sim × So(reference)`.
pub fn so_hownet(
    word: &str,
    lexicon: &SentimentLexicon,
    config: &PolarityConfig,
) -> Option<SoHowNet> {
    let mut best: Option<(&str, f64, f64)> = None;
    for r in lexicon.references() {
        let sim = similarity(word, &r.lemma, lexicon);
        if best.is_none_or(|(_, max, _)| sim > max) {
            best = Some((&r.lemma, sim, r.intensity));
        }
    }
    let (reference, max, intensity) = best?;
    (max > config.theta_hownet).then(|| SoHowNet {
        reference: reference.to_string(),
        similarity: max,
        intensity: max * intensity,
    })
}

/// Association of two words from smoothed unit probabilities:
/// `p(a,b) / (p(a) p(b))`, or its base-2 log.
pub fn pmi(a: &str, b: &str, stats: &CorpusStats, config: &PolarityConfig) -> Result<f64> {
    let s = config.smoothing;
    let total = stats.total_units() as f64 + s;
    if total == 0.0 {
        return Err(Error::EmptyCorpus);
    }
    let pa = (stats.unigram(a) as f64 + s) / total;
    let pb = (stats.unigram(b) as f64 + s) / total;
    for (word, p) in [(a, pa), (b, pb)] {
        if p == 0.0 {
            return Err(Error::DivideByZero {
                word: word.to_string(),
            });
        }
    }
    let joint = (stats.cooccur(a, b) as f64 + s) / total;
    // Multiplying the marginals in a fixed order keeps the result symmetric.
    let (first, second) = if a <= b { (pa, pb) } else { (pb, pa) };
    let ratio = joint / (first * second);
    Ok(match config.pmi_variant {
        PmiVariant::Ratio => ratio,
        PmiVariant::Log2 => ratio.log2(),
    })
}

/// Sum of PMI with commendatory references minus the sum with derogatory ones.
pub fn pmi_score(
    word: &str,
    lexicon: &SentimentLexicon,
    stats: &CorpusStats,
    config: &PolarityConfig,
) -> Result<f64> {
    let mut positive = 0.0;
    for r in lexicon.commendatory() {
        positive += pmi(word, &r.lemma, stats, config)?;
    }
    let mut negative = 0.0;
    for r in lexicon.derogatory() {
        negative += pmi(word, &r.lemma, stats, config)?;
    }
    Ok(positive - negative)
}

/// Score of an expanded synonym set: the mean of its members' scores.
pub fn pmi_set_score<'a, I>(
    words: I,
    lexicon: &SentimentLexicon,
    stats: &CorpusStats,
    config: &PolarityConfig,
) -> Result<f64>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut sum = 0.0;
    let mut n = 0usize;
    for w in words {
        sum += pmi_score(w, lexicon, stats, config)?;
        n += 1;
    }
    Ok(if n == 0 { 0.0 } else { sum / n as f64 })
}

/// Filtering and labelling rule. A word is kept when it inherits a reference
/// intensity or its PMI score exceeds `theta_pmi`; the inherited intensity
/// decides the sign when present.
pub fn decide_label(
    so_hownet: Option<f64>,
    pmi_score: f64,
    config: &PolarityConfig,
) -> PolarityLabel {
    match so_hownet {
        Some(so) if so > 0.0 => PolarityLabel::Commendatory,
        Some(_) => PolarityLabel::Derogatory,
        None if pmi_score > config.theta_pmi => PolarityLabel::Commendatory,
        None => PolarityLabel::Filtered,
    }
}

pub fn classify(
    word: &str,
    lexicon: &SentimentLexicon,
    stats: &CorpusStats,
    config: &PolarityConfig,
) -> Result<PolarityVerdict> {
    let word = normalize_lemma(word);
    let expansion = expand_synonyms(&word, lexicon);
    let hownet = hownet_set_score(expansion.iter().map(String::as_str), lexicon)?;
    let pmi = pmi_set_score(expansion.iter().map(String::as_str), lexicon, stats, config)?;
    let substitution = so_hownet(&word, lexicon, config);
    let so = substitution.as_ref().map(|s| s.intensity);
    Ok(PolarityVerdict {
        label: decide_label(so, pmi, config),
        word,
        hownet_score: hownet,
        so_hownet: so,
        reference: substitution.map(|s| s.reference),
        pmi_score: pmi,
    })
}

/// Verdicts for every candidate that survives filtering, keyed by word.
pub fn filter_lexicon<'a, I>(
    candidates: I,
    lexicon: &SentimentLexicon,
    stats: &CorpusStats,
    config: &PolarityConfig,
) -> Result<BTreeMap<String, PolarityVerdict>>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut survivors = BTreeMap::new();
    for word in candidates {
        let verdict = classify(word, lexicon, stats, config)?;
        if verdict.label != PolarityLabel::Filtered {
            survivors.insert(verdict.word.clone(), verdict);
        }
    }
    Ok(survivors)
}
