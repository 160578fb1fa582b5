//! Precision, recall and F-score of extracted tags against gold annotations,
//! overall and per product category.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{normalize_lemma, UNKNOWN_CATEGORY};
use crate::error::{Error, Result};
use crate::extraction::FeatureTag;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldAnnotation {
    pub review_id: String,
    pub sentence_id: String,
    pub feature: String,
    pub negation: Option<String>,
    pub adverb: Option<String>,
    pub evaluation: String,
}

fn slot(field: &str) -> Option<String> {
    match field.trim() {
        "" | "-" => None,
        v => Some(normalize_lemma(v)),
    }
}

/// Reads the six-column gold TSV (`review_id, sentence_id, feature,
/// negation, adverb, evaluation`, `-` for an empty slot). A header row whose
/// first field is `review_id` and `#` comment lines are skipped.
pub fn parse_gold(text: &str) -> Result<Vec<GoldAnnotation>> {
    let mut gold = Vec::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
        if fields.len() != 6 {
            return Err(Error::Parse {
                line: n + 1,
                message: format!("expected 6 tab-separated columns, found {}", fields.len()),
            });
        }
        if gold.is_empty() && fields[0] == "review_id" {
            continue;
        }
        let (Some(feature), Some(evaluation)) = (slot(fields[2]), slot(fields[5])) else {
            return Err(Error::Parse {
                line: n + 1,
                message: "feature and evaluation are required".into(),
            });
        };
        gold.push(GoldAnnotation {
            review_id: fields[0].to_string(),
            sentence_id: fields[1].to_string(),
            feature,
            negation: slot(fields[3]),
            adverb: slot(fields[4]),
            evaluation,
        });
    }
    Ok(gold)
}

pub fn write_gold(gold: &[GoldAnnotation]) -> String {
    let mut out = String::from("review_id\tsentence_id\tfeature\tnegation\tadverb\tevaluation\n");
    for g in gold {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            g.review_id,
            g.sentence_id,
            g.feature,
            g.negation.as_deref().unwrap_or("-"),
            g.adverb.as_deref().unwrap_or("-"),
            g.evaluation
        );
    }
    out
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    /// Feature and evaluation must agree.
    #[default]
    Core,
    /// Negation and adverb slots must agree as well.
    Full,
}

impl FromStr for Strictness {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "core" => Ok(Strictness::Core),
            "full" => Ok(Strictness::Full),
            other => Err(format!(
                "unknown strictness {other:?} (expected core or full)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCounts {
    /// Correctly extracted tags (A).
    pub correct: u64,
    /// Incorrectly extracted tags (B).
    pub incorrect: u64,
    /// Gold tags that were not extracted (C).
    pub missed: u64,
}

impl MatchCounts {
    pub fn new(correct: u64, incorrect: u64, missed: u64) -> Self {
        MatchCounts {
            correct,
            incorrect,
            missed,
        }
    }

    pub fn extracted(&self) -> u64 {
        self.correct + self.incorrect
    }

    pub fn gold(&self) -> u64 {
        self.correct + self.missed
    }
}

impl std::ops::Add for MatchCounts {
    type Output = MatchCounts;

    fn add(self, o: MatchCounts) -> MatchCounts {
        MatchCounts::new(
            self.correct + o.correct,
            self.incorrect + o.incorrect,
            self.missed + o.missed,
        )
    }
}

/// A / (A + B).
pub fn precision(c: &MatchCounts) -> Result<f64> {
    if c.extracted() == 0 {
        return Err(Error::UndefinedMetric(
            "precision",
            "no tags were extracted",
        ));
    }
    Ok(c.correct as f64 / c.extracted() as f64)
}

/// A / (A + C).
pub fn recall(c: &MatchCounts) -> Result<f64> {
    if c.gold() == 0 {
        return Err(Error::UndefinedMetric("recall", "the gold set is empty"));
    }
    Ok(c.correct as f64 / c.gold() as f64)
}

/// Harmonic mean of precision and recall, 0 when both are 0.
pub fn f_score(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn gold_key(g: &GoldAnnotation) -> (&str, &str, &str, &str) {
    (&g.review_id, &g.sentence_id, &g.feature, &g.evaluation)
}

fn check_gold(gold: &[GoldAnnotation]) -> Result<()> {
    let mut seen = HashSet::new();
    for g in gold {
        if !seen.insert(gold_key(g)) {
            return Err(Error::GoldSet(format!(
                "duplicate annotation ({}, {}, {}, {})",
                g.review_id, g.sentence_id, g.feature, g.evaluation
            )));
        }
    }
    Ok(())
}

fn same_slot(a: &Option<String>, b: &Option<String>) -> bool {
    a.as_deref().map(normalize_lemma) == b.as_deref().map(normalize_lemma)
}

fn agrees(tag: &FeatureTag, g: &GoldAnnotation, strictness: Strictness) -> bool {
    let core = normalize_lemma(&tag.feature) == g.feature
        && normalize_lemma(&tag.evaluation) == g.evaluation;
    match strictness {
        Strictness::Core => core,
        Strictness::Full => {
            core && same_slot(&tag.negation, &g.negation) && same_slot(&tag.adverb, &g.adverb)
        }
    }
}

/// Counts correct, incorrect and missed tags. Each gold entry absorbs at most
/// one extracted tag, assigned greedily in extraction order.
pub fn match_tags(
    extracted: &[FeatureTag],
    gold: &[GoldAnnotation],
    strictness: Strictness,
) -> Result<MatchCounts> {
    check_gold(gold)?;
    let extracted: Vec<&FeatureTag> = extracted.iter().collect();
    let gold: Vec<&GoldAnnotation> = gold.iter().collect();
    Ok(count_matches(&extracted, &gold, strictness))
}

fn count_matches(
    extracted: &[&FeatureTag],
    gold: &[&GoldAnnotation],
    strictness: Strictness,
) -> MatchCounts {
    let mut by_sentence: HashMap<(&str, &str), Vec<(&GoldAnnotation, bool)>> = HashMap::new();
    for g in gold {
        by_sentence
            .entry((&g.review_id, &g.sentence_id))
            .or_default()
            .push((g, false));
    }
    let mut counts = MatchCounts::default();
    for tag in extracted {
        let hit = by_sentence
            .get_mut(&(tag.review_id.as_str(), tag.sentence_id.as_str()))
            .and_then(|entries| {
                entries
                    .iter_mut()
                    .find(|(g, used)| !*used && agrees(tag, g, strictness))
            });
        match hit {
            Some(entry) => {
                entry.1 = true;
                counts.correct += 1;
            }
            None => counts.incorrect += 1,
        }
    }
    counts.missed = gold.len() as u64 - counts.correct;
    counts
}

/// One line of a report. Metrics are `None` where undefined.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRow {
    pub category: String,
    pub total_extracted: u64,
    pub correct: u64,
    pub missed: u64,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub f_score: Option<f64>,
}

impl MetricsRow {
    pub fn from_counts(category: impl Into<String>, counts: MatchCounts) -> Self {
        let precision = precision(&counts).ok();
        let recall = recall(&counts).ok();
        let f = match (precision, recall) {
            (Some(p), Some(r)) => Some(f_score(p, r)),
            _ => None,
        };
        MetricsRow {
            category: category.into(),
            total_extracted: counts.extracted(),
            correct: counts.correct,
            missed: counts.missed,
            precision,
            recall,
            f_score: f,
        }
    }

    pub fn counts(&self) -> MatchCounts {
        MatchCounts::new(
            self.correct,
            self.total_extracted - self.correct,
            self.missed,
        )
    }
}

/// Per-category rows sorted by category name plus a totals row computed from
/// the summed counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub rows: Vec<MetricsRow>,
    pub total: MetricsRow,
    /// Categories left out because they had neither extractions nor gold.
    pub omitted: Vec<String>,
}

impl MetricsReport {
    pub fn from_counts<I, S>(groups: I) -> Self
    where
        I: IntoIterator<Item = (S, MatchCounts)>,
        S: Into<String>,
    {
        let mut merged: BTreeMap<String, MatchCounts> = BTreeMap::new();
        for (category, counts) in groups {
            let entry = merged.entry(category.into()).or_default();
            *entry = *entry + counts;
        }
        let mut rows = Vec::new();
        let mut omitted = Vec::new();
        let mut total = MatchCounts::default();
        for (category, counts) in merged {
            if counts.extracted() == 0 && counts.gold() == 0 {
                omitted.push(category);
                continue;
            }
            total = total + counts;
            rows.push(MetricsRow::from_counts(category, counts));
        }
        MetricsReport {
            rows,
            total: MetricsRow::from_counts("Total", total),
            omitted,
        }
    }

    /// Aligned text table with metrics at two decimals.
    pub fn render(&self) -> String {
        let header = [
            "Category",
            "Extracted",
            "Correct",
            "Missed",
            "Precision",
            "Recall",
            "F-score",
        ];
        let fmt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"));
        let line = |r: &MetricsRow| {
            vec![
                r.category.clone(),
                r.total_extracted.to_string(),
                r.correct.to_string(),
                r.missed.to_string(),
                fmt(r.precision),
                fmt(r.recall),
                fmt(r.f_score),
            ]
        };
        let mut table: Vec<Vec<String>> = vec![header.iter().map(|h| h.to_string()).collect()];
        table.extend(self.rows.iter().map(line));
        table.push(line(&self.total));

        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                table
                    .iter()
                    .map(|r| r[c].chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for (i, row) in table.iter().enumerate() {
            if i == table.len() - 1 {
                let rule: usize = widths.iter().sum::<usize>() + 2 * (widths.len() - 1);
                let _ = writeln!(out, "{}", "-".repeat(rule));
            }
            let cells: Vec<String> = row
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (cell, w))| {
                    if c == 0 {
                        format!("{cell:<w$}")
                    } else {
                        format!("{cell:>w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "{}", cells.join("  ").trim_end());
        }
        out
    }

    /// One JSON record per category row, then the totals row.
    pub fn to_jsonl(&self) -> String {
        self.rows
            .iter()
            .chain(std::iter::once(&self.total))
            .map(|r| serde_json::to_string(r).expect("rows serialize") + "\n")
            .collect()
    }
}

/// Groups tags and gold by the category of their review (`categories` maps
/// review id to category; unmapped reviews are `unknown`) and scores each
/// group.
pub fn category_report(
    extracted: &[FeatureTag],
    gold: &[GoldAnnotation],
    strictness: Strictness,
    categories: &HashMap<String, String>,
) -> Result<MetricsReport> {
    check_gold(gold)?;
    let category = |review: &str| {
        categories
            .get(review)
            .map(String::as_str)
            .unwrap_or(UNKNOWN_CATEGORY)
    };
    let mut groups: BTreeMap<&str, (Vec<&FeatureTag>, Vec<&GoldAnnotation>)> = BTreeMap::new();
    for t in extracted {
        groups.entry(category(&t.review_id)).or_default().0.push(t);
    }
    for g in gold {
        groups.entry(category(&g.review_id)).or_default().1.push(g);
    }
    Ok(MetricsReport::from_counts(groups.into_iter().map(
        |(category, (tags, gold))| (category, count_matches(&tags, &gold, strictness)),
    )))
}
