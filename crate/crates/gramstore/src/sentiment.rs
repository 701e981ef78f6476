//! Per-gram sentiment weights learned from a labeled corpus, plus the two
//! classifiers built on them: the threshold rule over mean gram weights and
//! multinomial Naive Bayes.
//!
//! A trained model is frozen: training is single-writer, after which any
//! number of threads may classify concurrently through `&self`.

use crate::corpus::{Label, LabeledDocument};
use crate::ngram::NGram;
use crate::normalization::{normalize_strict, to_indices, ALPHABET_LEN};
use crate::store::{build_store, Backend, NGramStore};
use crate::Error;

/// Knobs for [`SentimentModel::train`].
#[derive(Clone, Debug)]
pub struct TrainOptions {
    /// Gram length.
    pub n: usize,
    /// Which store implementation holds the per-class gram counts.
    pub backend: Backend,
    /// Bucket count for [`Backend::Bucket`]; `None` means `26^n`.
    pub buckets: Option<usize>,
    /// Additive smoothing constant, strictly positive.
    pub alpha: f64,
    /// Bypass the dimensional-map memory guard for `n >= 7`.
    pub allow_large_n: bool,
}

impl Default for TrainOptions {
    fn default() -> Self {
        Self {
            n: 5,
            backend: Backend::Dimensional,
            buckets: None,
            alpha: 1.0,
            allow_large_n: false,
        }
    }
}

/// Per-class gram counts learned from a corpus.
///
/// The smoothed vocabulary is the full gram space `V = 26^n`, matching the
/// key space of the stores, so unseen grams are handled uniformly.
pub struct SentimentModel {
    n: usize,
    alpha: f64,
    backend: Backend,
    positive: Box<dyn NGramStore>,
    negative: Box<dyn NGramStore>,
    positive_docs: u64,
    negative_docs: u64,
    positive_grams: u64,
    negative_grams: u64,
}

impl SentimentModel {
    /// Counts gram occurrences per class over the normalized corpus.
    ///
    /// The corpus must contain at least one document of each class. The
    /// resulting counts are identical whatever backend holds them.
    pub fn train<'a, I>(corpus: I, options: &TrainOptions) -> Result<Self, Error>
    where
        I: IntoIterator<Item = &'a LabeledDocument>,
    {
        if options.n == 0 {
            return Err(Error::ZeroGramLength);
        }
        if !(options.alpha.is_finite() && options.alpha > 0.0) {
            return Err(Error::InvalidAlpha(options.alpha));
        }
        let mut model = Self {
            n: options.n,
            alpha: options.alpha,
            backend: options.backend,
            positive: build_store(
                options.backend,
                options.n,
                options.buckets,
                options.allow_large_n,
            )?,
            negative: build_store(
                options.backend,
                options.n,
                options.buckets,
                options.allow_large_n,
            )?,
            positive_docs: 0,
            negative_docs: 0,
            positive_grams: 0,
            negative_grams: 0,
        };
        for document in corpus {
            let clean = normalize_strict(&document.text);
            let indices = to_indices(&clean).expect("normalized text maps to the alphabet");
            let (store, docs, grams) = match document.label {
                Label::Positive => (
                    &mut model.positive,
                    &mut model.positive_docs,
                    &mut model.positive_grams,
                ),
                Label::Negative => (
                    &mut model.negative,
                    &mut model.negative_docs,
                    &mut model.negative_grams,
                ),
            };
            *docs += 1;
            for gram in indices.windows(options.n) {
                store.increment(gram, 1)?;
                *grams += 1;
            }
        }
        if model.positive_docs == 0 {
            return Err(Error::DegenerateCorpus {
                missing: Label::Positive,
            });
        }
        if model.negative_docs == 0 {
            return Err(Error::DegenerateCorpus {
                missing: Label::Negative,
            });
        }
        Ok(model)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn class_store(&self, label: Label) -> &dyn NGramStore {
        match label {
            Label::Positive => self.positive.as_ref(),
            Label::Negative => self.negative.as_ref(),
        }
    }

    pub fn document_count(&self, label: Label) -> u64 {
        match label {
            Label::Positive => self.positive_docs,
            Label::Negative => self.negative_docs,
        }
    }

    /// Total gram occurrences counted for a class during training.
    pub fn gram_occurrences(&self, label: Label) -> u64 {
        match label {
            Label::Positive => self.positive_grams,
            Label::Negative => self.negative_grams,
        }
    }

    /// Size of the smoothing vocabulary, `26^n`, as a float.
    fn vocabulary(&self) -> f64 {
        (ALPHABET_LEN as f64).powi(self.n as i32)
    }

    fn smoothed_log_likelihood(&self, label: Label, gram: &[u8]) -> f64 {
        let store = self.class_store(label);
        let count = store.get(gram).expect("extracted grams are valid") as f64;
        let total = self.gram_occurrences(label) as f64;
        ((count + self.alpha) / (total + self.alpha * self.vocabulary())).ln()
    }

    /// Smoothed log-odds of one gram: positive when the gram leans positive,
    /// negative when it leans negative, and exactly zero for a gram unseen in
    /// both classes of a gram-balanced corpus.
    pub fn gram_weight(&self, gram: &NGram) -> Result<f64, Error> {
        if gram.len() != self.n {
            return Err(Error::GramLengthMismatch {
                expected: self.n,
                actual: gram.len(),
            });
        }
        Ok(self.weight_of(gram.indices()))
    }

    fn weight_of(&self, gram: &[u8]) -> f64 {
        self.smoothed_log_likelihood(Label::Positive, gram)
            - self.smoothed_log_likelihood(Label::Negative, gram)
    }

    fn document_grams(&self, text: &str) -> Vec<u8> {
        let clean = normalize_strict(text);
        to_indices(&clean).expect("normalized text maps to the alphabet")
    }

    /// Mean gram weight over the document's grams, 0 for a document too short
    /// to contain any gram.
    pub fn score_document(&self, text: &str) -> f64 {
        let indices = self.document_grams(text);
        let mut sum = 0.0;
        let mut count = 0u64;
        for gram in indices.windows(self.n) {
            sum += self.weight_of(gram);
            count += 1;
        }
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    /// Positive iff the document score strictly exceeds `threshold`; ties go
    /// negative.
    pub fn classify_threshold(&self, text: &str, threshold: f64) -> Label {
        if self.score_document(text) > threshold {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    /// Multinomial Naive Bayes decision with the posterior probability of
    /// the chosen class; the two class posteriors sum to one.
    ///
    /// A document with no grams falls back to the class priors; an exact tie
    /// goes negative.
    pub fn classify_naive_bayes(&self, text: &str) -> (Label, f64) {
        let indices = self.document_grams(text);
        let total_docs = (self.positive_docs + self.negative_docs) as f64;
        let mut log_positive = (self.positive_docs as f64 / total_docs).ln();
        let mut log_negative = (self.negative_docs as f64 / total_docs).ln();
        for gram in indices.windows(self.n) {
            log_positive += self.smoothed_log_likelihood(Label::Positive, gram);
            log_negative += self.smoothed_log_likelihood(Label::Negative, gram);
        }
        let (label, chosen, other) = if log_positive > log_negative {
            (Label::Positive, log_positive, log_negative)
        } else {
            (Label::Negative, log_negative, log_positive)
        };
        let posterior = 1.0 / (1.0 + (other - chosen).exp());
        (label, posterior)
    }
}
