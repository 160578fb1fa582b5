//! Feature-tag extraction.
//!
//! Per sentence: lexicon mentions are matched and adjacent same-role mentions
//! merged, every feature is paired with every evaluation term, the adverb and
//! negation slots are filled by the dependency rules, and the candidates are
//! checked against the template library. Across the corpus, evaluation terms
//! without clear polarity are dropped and each surviving candidate takes its
//! most frequent matching template.

mod candidates;
mod mentions;
mod ranking;
mod rules;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{ParsedSentence, Review};
use crate::error::{Error, Result};
use crate::lexicon::{SentimentLexicon, WordLists};
use crate::polarity::{filter_lexicon, PolarityConfig};
use crate::stats::CorpusStats;
use crate::templates::TemplateLibrary;

pub use candidates::{admit_window, match_templates, pair_candidates, CandidatePair};
pub use mentions::{match_mentions, merge_adjacent, Mention, TokenSpan};
pub use ranking::{rank_and_select, template_frequencies, SentenceCandidates};
pub use rules::{
    dependency_path, find_adverb, find_negation, linkage, Linkage, ADVERBIAL_RELATION, ADVERB_POS,
};

/// One extracted opinion: product feature, optional negation, optional
/// degree adverb and evaluation term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureTag {
    pub review_id: String,
    pub sentence_id: String,
    pub feature: String,
    pub negation: Option<String>,
    pub adverb: Option<String>,
    pub evaluation: String,
    pub template_id: String,
    /// Signed intensity inherited by the evaluation term, flipped under
    /// negation.
    pub polarity: Option<f64>,
    #[serde(skip)]
    pub feature_span: TokenSpan,
    #[serde(skip)]
    pub evaluation_span: TokenSpan,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtractOptions {
    pub polarity: PolarityConfig,
    /// When off, the negation rule is not applied (rules-only baseline).
    pub detect_negation: bool,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            polarity: PolarityConfig::default(),
            detect_negation: true,
        }
    }
}

/// The loaded resources the extractor needs.
#[derive(Debug, Clone)]
pub struct Resources {
    pub word_lists: WordLists,
    pub sentiment: SentimentLexicon,
    pub templates: TemplateLibrary,
}

/// Candidates of one sentence with their admissible templates.
pub fn sentence_candidates(
    sentence: &ParsedSentence,
    resources: &Resources,
    detect_negation: bool,
) -> Vec<CandidatePair> {
    let mentions = merge_adjacent(&match_mentions(sentence, &resources.word_lists));
    let mut pairs = pair_candidates(
        &mentions,
        sentence,
        &resources.word_lists,
        &resources.templates,
        detect_negation,
    );
    for pair in &mut pairs {
        pair.templates = match_templates(pair, sentence, &resources.templates);
        admit_window(pair, &resources.templates);
    }
    pairs
}

pub fn extract(
    corpus: &[Review],
    resources: &Resources,
    options: &ExtractOptions,
    stats: &CorpusStats,
) -> Result<Vec<FeatureTag>> {
    options.polarity.validate()?;
    let mut sentences: Vec<SentenceCandidates> = corpus
        .par_iter()
        .flat_map_iter(|review| {
            review.sentences.iter().map(move |s| SentenceCandidates {
                review_id: review.review_id.clone(),
                sentence_id: s.sentence_id.clone(),
                candidates: sentence_candidates(s, resources, options.detect_negation),
            })
        })
        .collect();

    let evaluations: BTreeSet<&str> = sentences
        .iter()
        .flat_map(|s| &s.candidates)
        .filter(|c| !c.templates.is_empty())
        .map(|c| c.evaluation.lemma.as_str())
        .collect();
    let survivors = filter_lexicon(evaluations, &resources.sentiment, stats, &options.polarity)?;

    for s in &mut sentences {
        s.candidates
            .retain(|c| survivors.contains_key(&c.evaluation.lemma));
    }
    let mut tags = rank_and_select(&sentences, &resources.templates);
    for tag in &mut tags {
        let so = survivors.get(&tag.evaluation).and_then(|v| v.so_hownet);
        tag.polarity = so.map(|p| if tag.negation.is_some() { -p } else { p });
    }
    Ok(tags)
}

/// One JSON object per line, fields in declaration order, absent slots as
/// `null`.
pub fn write_tags_jsonl(tags: &[FeatureTag]) -> String {
    let mut out = String::new();
    for tag in tags {
        out.push_str(&serde_json::to_string(tag).expect("tags serialize"));
        out.push('\n');
    }
    out
}

pub fn read_tags_jsonl(text: &str) -> Result<Vec<FeatureTag>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            serde_json::from_str(l).map_err(|e| Error::Parse {
                line: n + 1,
                message: e.to_string(),
            })
        })
        .collect()
}
