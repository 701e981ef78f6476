//! Labeled corpora: file ingestion and a seeded synthetic generator.
//!
//! Two file formats are accepted, both UTF-8: line-delimited JSON records
//! with `text` and `label` fields, and CSV with a `text,label` header.
//! Malformed records are counted and reported, never silently dropped.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Binary sentiment class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn opposite(self) -> Label {
        match self {
            Label::Positive => Label::Negative,
            Label::Negative => Label::Positive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Positive => "positive",
            Label::Negative => "negative",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" => Ok(Label::Positive),
            "negative" => Ok(Label::Negative),
            other => Err(format!(
                "unknown label {other:?} (expected positive or negative)"
            )),
        }
    }
}

/// One raw text with its sentiment label; the unit of every corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDocument {
    pub text: String,
    pub label: Label,
}

impl LabeledDocument {
    pub fn new(text: impl Into<String>, label: Label) -> Self {
        Self {
            text: text.into(),
            label,
        }
    }
}

/// On-disk corpus encodings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorpusFormat {
    /// One JSON object per line: `{"text": "...", "label": "positive"}`.
    Jsonl,
    /// A delimited table with a `text,label` header.
    Csv,
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::Jsonl => "jsonl",
            CorpusFormat::Csv => "csv",
        })
    }
}

impl FromStr for CorpusFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "jsonl" | "ndjson" => Ok(CorpusFormat::Jsonl),
            "csv" => Ok(CorpusFormat::Csv),
            other => Err(format!("unknown corpus format {other:?} (expected jsonl or csv)")),
        }
    }
}

impl CorpusFormat {
    /// Infers the format from a file extension.
    pub fn from_path(path: &Path) -> Result<Self, Error> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase())
            .as_deref()
        {
            Some("jsonl") | Some("ndjson") | Some("json") => Ok(CorpusFormat::Jsonl),
            Some("csv") => Ok(CorpusFormat::Csv),
            _ => Err(Error::UnknownCorpusFormat(path.to_path_buf())),
        }
    }
}

/// How an ingest went: accepted documents and rejected records.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IngestSummary {
    pub accepted: usize,
    pub rejected: usize,
}

impl IngestSummary {
    pub fn total(&self) -> usize {
        self.accepted + self.rejected
    }
}

#[derive(Deserialize)]
struct RawRecord {
    text: String,
    label: String,
}

/// Reads a corpus file, returning the parsed documents in file order and a
/// summary of how many records were accepted and rejected.
///
/// `format` of `None` infers the encoding from the file extension. A file
/// where more than half of the records are malformed is rejected outright.
pub fn ingest_corpus(
    path: &Path,
    format: Option<CorpusFormat>,
) -> Result<(Vec<LabeledDocument>, IngestSummary), Error> {
    let format = match format {
        Some(f) => f,
        None => CorpusFormat::from_path(path)?,
    };
    let content = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;

    let mut documents = Vec::new();
    let mut summary = IngestSummary::default();
    match format {
        CorpusFormat::Jsonl => {
            for line in content.lines() {
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<RawRecord>(line) {
                    Ok(raw) => match raw.label.parse::<Label>() {
                        Ok(label) => {
                            documents.push(LabeledDocument::new(raw.text, label));
                            summary.accepted += 1;
                        }
                        Err(_) => summary.rejected += 1,
                    },
                    Err(_) => summary.rejected += 1,
                }
            }
        }
        CorpusFormat::Csv => {
            if !content.trim().is_empty() {
                let mut reader = csv::ReaderBuilder::new()
                    .flexible(true)
                    .from_reader(content.as_bytes());
                let headers = reader
                    .headers()
                    .map_err(|_| malformed(path, 1, 1))?
                    .clone();
                let text_col = headers.iter().position(|h| h.trim() == "text");
                let label_col = headers.iter().position(|h| h.trim() == "label");
                let (text_col, label_col) = match (text_col, label_col) {
                    (Some(t), Some(l)) => (t, l),
                    _ => return Err(malformed(path, 1, 1)),
                };
                for record in reader.records() {
                    match record {
                        Ok(record) => {
                            let text = record.get(text_col);
                            let label = record.get(label_col).map(str::parse::<Label>);
                            match (text, label) {
                                (Some(text), Some(Ok(label))) => {
                                    documents.push(LabeledDocument::new(text, label));
                                    summary.accepted += 1;
                                }
                                _ => summary.rejected += 1,
                            }
                        }
                        Err(_) => summary.rejected += 1,
                    }
                }
            }
        }
    }

    if summary.rejected * 2 > summary.total() && summary.total() > 0 {
        return Err(malformed(path, summary.rejected, summary.total()));
    }
    Ok((documents, summary))
}

fn malformed(path: &Path, rejected: usize, total: usize) -> Error {
    Error::MalformedCorpus {
        path: path.to_path_buf(),
        rejected,
        total,
    }
}

/// Writes a corpus in the given encoding; the inverse of [`ingest_corpus`].
pub fn write_corpus(
    corpus: &[LabeledDocument],
    path: &Path,
    format: CorpusFormat,
) -> Result<(), Error> {
    let io_error = |source: std::io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut out: Vec<u8> = Vec::new();
    match format {
        CorpusFormat::Jsonl => {
            for document in corpus {
                serde_json::to_writer(&mut out, document)
                    .map_err(|e| io_error(std::io::Error::other(e)))?;
                out.push(b'\n');
            }
        }
        CorpusFormat::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            writer
                .write_record(["text", "label"])
                .and_then(|_| {
                    corpus.iter().try_for_each(|d| {
                        writer.write_record([d.text.as_str(), d.label.as_str()])
                    })
                })
                .and_then(|_| writer.flush().map_err(csv::Error::from))
                .map_err(|e| io_error(std::io::Error::other(e)))?;
            drop(writer);
        }
    }
    fs::write(path, out).map_err(io_error)
}

/// Default document length range for the synthetic generator.
pub const DEFAULT_DOC_LEN: (usize, usize) = (20, 40);

/// Generates a balanced two-class corpus with a tunable amount of class
/// signal, deterministically for a given seed.
///
/// Positive documents draw their characters from `a..=m` and negative ones
/// from `n..=z`; each character is flipped to the other half with probability
/// `(1 - separability) / 2`. At `separability = 1.0` the classes share no
/// characters at all; at `0.0` the labels carry no signal.
///
/// Document lengths use [`DEFAULT_DOC_LEN`]; see
/// [`generate_synthetic_corpus_with_lengths`] to control them.
pub fn generate_synthetic_corpus(
    size: usize,
    separability: f64,
    seed: u64,
) -> Vec<LabeledDocument> {
    generate_synthetic_corpus_with_lengths(
        size,
        separability,
        seed,
        DEFAULT_DOC_LEN.0,
        DEFAULT_DOC_LEN.1,
    )
}

/// [`generate_synthetic_corpus`] with an explicit inclusive document length
/// range.
pub fn generate_synthetic_corpus_with_lengths(
    size: usize,
    separability: f64,
    seed: u64,
    min_len: usize,
    max_len: usize,
) -> Vec<LabeledDocument> {
    assert!(size >= 2, "a corpus needs at least one document per class");
    assert!(
        (0.0..=1.0).contains(&separability),
        "separability must be within [0, 1]"
    );
    assert!(min_len >= 1 && min_len <= max_len, "bad length range");

    let flip_probability = (1.0 - separability) / 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut corpus = Vec::with_capacity(size);
    for i in 0..size {
        let label = if i % 2 == 0 {
            Label::Positive
        } else {
            Label::Negative
        };
        let len = rng.gen_range(min_len..=max_len);
        let mut text = String::with_capacity(len);
        for _ in 0..len {
            let own_half = !rng.gen_bool(flip_probability);
            let positive_half = (label == Label::Positive) == own_half;
            let offset: u8 = if positive_half { 0 } else { 13 };
            text.push((b'a' + offset + rng.gen_range(0..13u8)) as char);
        }
        corpus.push(LabeledDocument::new(text, label));
    }
    corpus
}
