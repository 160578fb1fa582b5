use std::cmp::Reverse;
use std::collections::HashMap;

use crate::templates::TemplateLibrary;

use super::candidates::CandidatePair;
use super::FeatureTag;

/// Candidates of one sentence, tagged with where they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct SentenceCandidates {
    pub review_id: String,
    pub sentence_id: String,
    pub candidates: Vec<CandidatePair>,
}

/// Counts, for every template, how many candidates it matches.
pub fn template_frequencies(sentences: &[SentenceCandidates]) -> HashMap<&str, usize> {
    let mut freq = HashMap::new();
    for c in sentences.iter().flat_map(|s| &s.candidates) {
        for id in &c.templates {
            *freq.entry(id.as_str()).or_insert(0) += 1;
        }
    }
    freq
}

/// Assigns every candidate its most frequent matching template (library
/// order breaks ties) and drops candidates that match none. Output is sorted
/// by review, sentence and feature position; evaluations of the same feature
/// follow template frequency, then position.
pub fn rank_and_select(
    sentences: &[SentenceCandidates],
    library: &TemplateLibrary,
) -> Vec<FeatureTag> {
    let freq = template_frequencies(sentences);
    let order: HashMap<&str, usize> = library
        .templates()
        .iter()
        .enumerate()
        .map(|(i, t)| (t.id.as_str(), i))
        .collect();

    let mut ranked = Vec::new();
    for s in sentences {
        for c in &s.candidates {
            let best = c.templates.iter().min_by_key(|id| {
                (
                    Reverse(freq.get(id.as_str()).copied().unwrap_or(0)),
                    order.get(id.as_str()).copied().unwrap_or(usize::MAX),
                )
            });
            let Some(best) = best else { continue };
            let tag = FeatureTag {
                review_id: s.review_id.clone(),
                sentence_id: s.sentence_id.clone(),
                feature: c.feature.lemma.clone(),
                negation: c.negation.as_ref().map(|m| m.lemma.clone()),
                adverb: c.adverb.as_ref().map(|m| m.lemma.clone()),
                evaluation: c.evaluation.lemma.clone(),
                template_id: best.clone(),
                polarity: None,
                feature_span: c.feature.span,
                evaluation_span: c.evaluation.span,
            };
            ranked.push((freq[best.as_str()], tag));
        }
    }
    ranked.sort_by(|(fa, a), (fb, b)| {
        (&a.review_id, &a.sentence_id, a.feature_span)
            .cmp(&(&b.review_id, &b.sentence_id, b.feature_span))
            .then(fb.cmp(fa))
            .then(a.evaluation_span.cmp(&b.evaluation_span))
    });
    ranked.into_iter().map(|(_, tag)| tag).collect()
}
