//! CoNLL-U reading and writing.
//!
//! Reviews are delimited by `# review_id = …` comments; `# category = …` sets
//! the category of the review being read and `# sent_id = …` names the next
//! sentence. Multi-word token ranges (`1-2`) and empty nodes (`1.1`) are
//! skipped. The NER label, when present, is read from the MISC column as
//! `NER=<label>`.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use crate::corpus::{validate_tree, DependencyToken, ParsedSentence, Review, UNKNOWN_CATEGORY};
use crate::error::{Error, Result};

const COLUMNS: usize = 10;

/// Translates source relation labels (e.g. `SBV`, `HED`) into the labels the
/// rule engine expects. Labels without an entry pass through unchanged.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RelationMap {
    map: HashMap<String, String>,
}

impl RelationMap {
    /// Two-column TSV: source label, canonical label. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').map(str::trim).collect();
            if fields.len() != 2 || fields.iter().any(|f| f.is_empty()) {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("expected `source<TAB>canonical`, got {line:?}"),
                });
            }
            map.insert(fields[0].to_string(), fields[1].to_string());
        }
        Ok(RelationMap { map })
    }

    pub fn insert(&mut self, source: impl Into<String>, canonical: impl Into<String>) {
        self.map.insert(source.into(), canonical.into());
    }

    pub fn translate<'a>(&'a self, label: &'a str) -> &'a str {
        self.map.get(label).map(String::as_str).unwrap_or(label)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

pub fn parse_conllu(text: &str) -> Result<Vec<Review>> {
    parse_conllu_with(text, &RelationMap::default())
}

/// Parses a CoNLL-U document, translating relation labels through `relations`
/// before the tree is validated.
pub fn parse_conllu_with(text: &str, relations: &RelationMap) -> Result<Vec<Review>> {
    let mut reader = Reader::new(relations);
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    for (n, raw) in text.lines().enumerate() {
        reader.line(n + 1, raw.trim_end_matches('\r'))?;
    }
    reader.finish()
}

#[derive(Default)]
struct Pending {
    review_id: Option<String>,
    category: Option<String>,
    sent_id: Option<String>,
}

struct Reader<'a> {
    relations: &'a RelationMap,
    reviews: Vec<Review>,
    seen: HashSet<String>,
    /// Whether the last review was opened by an explicit `# review_id`.
    explicit: bool,
    pending: Pending,
    tokens: Vec<DependencyToken>,
    sentence_count: usize,
}

impl<'a> Reader<'a> {
    fn new(relations: &'a RelationMap) -> Self {
        Reader {
            relations,
            reviews: Vec::new(),
            seen: HashSet::new(),
            explicit: false,
            pending: Pending::default(),
            tokens: Vec::new(),
            sentence_count: 0,
        }
    }

    fn line(&mut self, number: usize, line: &str) -> Result<()> {
        if line.trim().is_empty() {
            return self.flush_sentence();
        }
        if let Some(comment) = line.strip_prefix('#') {
            self.comment(comment)?;
            return Ok(());
        }
        self.token(number, line)
    }

    fn comment(&mut self, comment: &str) -> Result<()> {
        let Some((key, value)) = comment.split_once('=') else {
            return Ok(());
        };
        let value = value.trim().to_string();
        match key.trim() {
            "review_id" => {
                // A header that never received a sentence still denotes a review.
                if let Some(previous) = self.pending.review_id.take() {
                    let category = self.pending.category.take();
                    self.open_review(previous, category)?;
                }
                self.pending.review_id = Some(value);
            }
            "category" => self.pending.category = Some(value),
            "sent_id" => self.pending.sent_id = Some(value),
            _ => {}
        }
        Ok(())
    }

    fn token(&mut self, number: usize, line: &str) -> Result<()> {
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != COLUMNS {
            return Err(Error::Parse {
                line: number,
                message: format!(
                    "expected {COLUMNS} tab-separated columns, found {}",
                    fields.len()
                ),
            });
        }
        let id = fields[0];
        if id.contains('-') || id.contains('.') {
            return Ok(());
        }
        let index: usize = id.parse().map_err(|_| Error::Parse {
            line: number,
            message: format!("token id {id:?} is not an integer"),
        })?;
        let head: usize = fields[6].parse().map_err(|_| Error::Parse {
            line: number,
            message: format!("head {:?} is not an integer", fields[6]),
        })?;
        let surface = fields[1].to_string();
        let lemma = match fields[2] {
            "_" => surface.clone(),
            lemma => lemma.to_string(),
        };
        let relation = match fields[7] {
            "_" => String::new(),
            rel => self.relations.translate(rel).to_string(),
        };
        let ner = fields[9]
            .split('|')
            .find_map(|item| item.strip_prefix("NER="))
            .map(str::to_string);
        self.tokens.push(DependencyToken {
            index,
            surface,
            lemma,
            pos: fields[3].to_string(),
            ner,
            head,
            relation,
        });
        Ok(())
    }

    fn open_review(&mut self, review_id: String, category: Option<String>) -> Result<()> {
        if !self.seen.insert(review_id.clone()) {
            return Err(Error::DuplicateReview(review_id));
        }
        let category = category.unwrap_or_else(|| UNKNOWN_CATEGORY.to_string());
        self.reviews.push(Review::new(review_id, category));
        self.explicit = true;
        Ok(())
    }

    fn flush_sentence(&mut self) -> Result<()> {
        if self.tokens.is_empty() {
            return Ok(());
        }
        self.sentence_count += 1;
        let pending = std::mem::take(&mut self.pending);

        let continuing = match (&pending.review_id, self.reviews.last()) {
            (Some(id), Some(last)) => self.explicit && last.review_id == *id,
            (None, Some(_)) => self.explicit,
            _ => false,
        };
        if !continuing {
            match pending.review_id {
                Some(id) => self.open_review(id, pending.category.clone())?,
                None => {
                    let id = pending
                        .sent_id
                        .clone()
                        .unwrap_or_else(|| self.sentence_count.to_string());
                    self.open_review(id, pending.category.clone())?;
                    self.explicit = false;
                }
            }
        } else if let Some(category) = pending.category {
            if let Some(review) = self.reviews.last_mut() {
                review.category = category;
            }
        }

        let review = self.reviews.last_mut().expect("a review was just opened");
        let sentence_id = pending
            .sent_id
            .unwrap_or_else(|| (review.sentences.len() + 1).to_string());
        let sentence = ParsedSentence::new(sentence_id, std::mem::take(&mut self.tokens));
        let violations = validate_tree(&sentence);
        if !violations.is_empty() {
            return Err(Error::Structural {
                sentence_id: sentence.sentence_id,
                violations,
            });
        }
        review.sentences.push(sentence);
        Ok(())
    }

    fn finish(mut self) -> Result<Vec<Review>> {
        self.flush_sentence()?;
        if let Some(id) = self.pending.review_id.take() {
            let category = self.pending.category.take();
            self.open_review(id, category)?;
        }
        Ok(self.reviews)
    }
}

/// Serializes reviews back to CoNLL-U. Every review, category and sentence id
/// is written explicitly so the output parses back to identical values.
pub fn write_conllu(reviews: &[Review]) -> String {
    let mut out = String::new();
    for review in reviews {
        let _ = writeln!(out, "# review_id = {}", review.review_id);
        let _ = writeln!(out, "# category = {}", review.category);
        if review.sentences.is_empty() {
            out.push('\n');
        }
        for sentence in &review.sentences {
            let _ = writeln!(out, "# sent_id = {}", sentence.sentence_id);
            for t in &sentence.tokens {
                let misc = t
                    .ner
                    .as_ref()
                    .map(|ner| format!("NER={ner}"))
                    .unwrap_or_else(|| "_".to_string());
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t{}",
                    t.index,
                    t.surface,
                    t.lemma,
                    t.pos,
                    t.head,
                    if t.relation.is_empty() {
                        "_"
                    } else {
                        &t.relation
                    },
                    misc
                );
            }
            out.push('\n');
        }
    }
    out
}
