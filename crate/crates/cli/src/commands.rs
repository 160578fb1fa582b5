use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fs;
use std::io::Write;
use std::path::Path;

use feature_tags::evaluation::category_report;
use feature_tags::{
    classify, collect_stats, extract, parse_conllu_with, parse_gold, read_tags_jsonl,
    write_tags_jsonl, ExtractOptions, RelationMap, Resources, Review, SentimentLexicon,
    TemplateLibrary, WordKind, WordList, WordLists,
};

use crate::config::{Input, RunConfig};
use crate::error::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn read_optional(config: &RunConfig, input: Input) -> CliResult<String> {
    match config.optional(input)? {
        Some(path) => read(path),
        None => Ok(String::new()),
    }
}

fn load_corpus(config: &RunConfig) -> CliResult<Vec<Review>> {
    let relations = match config.optional(Input::RelationMap)? {
        Some(path) => RelationMap::parse(&read(path)?).map_err(|e| CliError::in_file(path, e))?,
        None => RelationMap::default(),
    };
    let path = config.required(Input::Corpus)?;
    parse_conllu_with(&read(path)?, &relations).map_err(|e| CliError::in_file(path, e))
}

fn load_list(config: &RunConfig, input: Input, kind: WordKind) -> CliResult<WordList> {
    let path = config.required(input)?;
    WordList::parse(&read(path)?, kind).map_err(|e| CliError::in_file(path, e))
}

fn load_sentiment(config: &RunConfig) -> CliResult<SentimentLexicon> {
    let references = config.required(Input::References)?;
    let synonyms = read_optional(config, Input::Synonyms)?;
    let similarity = read_optional(config, Input::Similarity)?;
    // Errors carry a line number; name the file they most likely came from.
    SentimentLexicon::parse(&read(references)?, &synonyms, &similarity).map_err(|e| {
        let culprit = match &e {
            feature_tags::Error::SynonymOverlap { .. } => {
                config.optional(Input::Synonyms).ok().flatten()
            }
            feature_tags::Error::Range {
                what: "similarity", ..
            } => config.optional(Input::Similarity).ok().flatten(),
            _ => None,
        };
        CliError::in_file(culprit.unwrap_or(references), e)
    })
}

fn load_templates(config: &RunConfig) -> CliResult<TemplateLibrary> {
    match config.optional(Input::Templates)? {
        Some(path) => TemplateLibrary::parse(&read(path)?, config.max_window)
            .map_err(|e| CliError::in_file(path, e)),
        None => Ok(TemplateLibrary::new(
            TemplateLibrary::default_library().templates().to_vec(),
            config.max_window,
        )?),
    }
}

fn load_resources(config: &RunConfig) -> CliResult<Resources> {
    let word_lists = WordLists::new(
        load_list(config, Input::Features, WordKind::Feature)?,
        load_list(config, Input::Evaluations, WordKind::Evaluation)?,
        load_list(config, Input::Adverbs, WordKind::Adverb)?,
        load_list(config, Input::Negations, WordKind::Negation)?,
    )?;
    Ok(Resources {
        word_lists,
        sentiment: load_sentiment(config)?,
        templates: load_templates(config)?,
    })
}

fn emit(config: &RunConfig, data: &str) -> CliResult<()> {
    match &config.output {
        Some(path) => {
            fs::write(path, data).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
        }
        None => std::io::stdout()
            .write_all(data.as_bytes())
            .map_err(|e| CliError::Data(format!("stdout: {e}"))),
    }
}

pub fn cmd_extract(config: &RunConfig) -> CliResult<()> {
    let resources = load_resources(config)?;
    let corpus = load_corpus(config)?;
    if corpus.iter().all(|r| r.sentences.is_empty()) {
        emit(config, "")?;
        eprintln!("0 tags (the corpus has no sentences)");
        return Ok(());
    }
    let stats = collect_stats(&corpus, config.unit)?;
    let options = ExtractOptions {
        polarity: config.polarity,
        detect_negation: config.detect_negation,
    };
    let tags = extract(&corpus, &resources, &options, &stats)?;
    emit(config, &write_tags_jsonl(&tags))?;

    let categories: HashMap<&str, &str> = corpus
        .iter()
        .map(|r| (r.review_id.as_str(), r.category.as_str()))
        .collect();
    let mut per_category: BTreeMap<&str, usize> =
        corpus.iter().map(|r| (r.category.as_str(), 0)).collect();
    for tag in &tags {
        *per_category
            .entry(categories[tag.review_id.as_str()])
            .or_default() += 1;
    }
    for (category, n) in per_category {
        eprintln!("{category}\t{n}");
    }
    eprintln!("{} tags", tags.len());
    Ok(())
}

pub fn cmd_polarity(config: &RunConfig, words: &[String]) -> CliResult<()> {
    let lexicon = load_sentiment(config)?;
    let corpus = load_corpus(config)?;
    let stats = collect_stats(&corpus, config.unit)?;
    let mut out = String::new();
    for word in words {
        let verdict = classify(word, &lexicon, &stats, &config.polarity)?;
        out.push_str(&serde_json::to_string(&verdict).expect("verdicts serialize"));
        out.push('\n');
    }
    emit(config, &out)
}

pub fn cmd_eval(config: &RunConfig) -> CliResult<()> {
    let tags_path = config.required(Input::Tags)?;
    let gold_path = config.required(Input::Gold)?;
    let mut tags =
        read_tags_jsonl(&read(tags_path)?).map_err(|e| CliError::in_file(tags_path, e))?;
    let mut gold = parse_gold(&read(gold_path)?).map_err(|e| CliError::in_file(gold_path, e))?;
    if gold.is_empty() {
        return Err(CliError::Data(format!(
            "{}: recall is undefined: the gold set is empty",
            gold_path.display()
        )));
    }

    let tag_reviews: BTreeSet<String> = tags.iter().map(|t| t.review_id.clone()).collect();
    let gold_reviews: BTreeSet<String> = gold.iter().map(|g| g.review_id.clone()).collect();
    let orphans: Vec<&String> = tag_reviews.symmetric_difference(&gold_reviews).collect();
    if !orphans.is_empty() && !tag_reviews.is_empty() {
        let list: Vec<&str> = orphans.iter().map(|s| s.as_str()).collect();
        eprintln!(
            "warning: review ids present in only one of the tag and gold files: {}",
            list.join(", ")
        );
        tags.retain(|t| gold_reviews.contains(&t.review_id));
        gold.retain(|g| tag_reviews.contains(&g.review_id));
    }

    let categories: HashMap<String, String> = match config.optional(Input::Corpus)? {
        Some(_) => load_corpus(config)?
            .into_iter()
            .map(|r| (r.review_id, r.category))
            .collect(),
        None => HashMap::new(),
    };
    let report = category_report(&tags, &gold, config.strictness, &categories)?;
    emit(config, &report.render())
}

pub fn cmd_stats(config: &RunConfig) -> CliResult<()> {
    let corpus = load_corpus(config)?;
    let stats = collect_stats(&corpus, config.unit)?;
    let mut out = format!(
        "total_units\t{}\nvocabulary_size\t{}\n",
        stats.total_units(),
        stats.vocabulary_size()
    );
    for (a, b, n) in stats.top_pairs(config.top_k) {
        out.push_str(&format!("pair\t{a}\t{b}\t{n}\n"));
    }
    emit(config, &out)
}
