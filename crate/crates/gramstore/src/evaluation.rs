//! Stratified k-fold cross validation and the three benchmark KPIs:
//! accuracy (success ratio), Cohen's kappa, and wall-clock execution time.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{Label, LabeledDocument};
use crate::sentiment::{SentimentModel, TrainOptions};
use crate::store::Backend;
use crate::Error;

/// The classifiers the evaluation harness knows how to drive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Threshold,
    NaiveBayes,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::Threshold, Algorithm::NaiveBayes];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Threshold => "threshold",
            Algorithm::NaiveBayes => "naive_bayes",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "threshold" => Ok(Algorithm::Threshold),
            "naive_bayes" | "naive-bayes" | "nb" => Ok(Algorithm::NaiveBayes),
            other => Err(format!(
                "unknown algorithm {other:?} (expected threshold or naive_bayes)"
            )),
        }
    }
}

/// A stratified assignment of corpus documents to folds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldPlan {
    k: usize,
    seed: u64,
    assignment: Vec<usize>,
}

impl FoldPlan {
    pub fn fold_count(&self) -> usize {
        self.k
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Fold id per document index.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn fold_of(&self, document: usize) -> usize {
        self.assignment[document]
    }

    /// Document indices held out by `fold`.
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] == fold)
            .collect()
    }

    /// Document indices trained on when `fold` is held out.
    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&i| self.assignment[i] != fold)
            .collect()
    }
}

/// Stratified fold assignment: shuffle each class with a seeded generator,
/// then deal all documents round-robin with a single running counter, so fold
/// sizes differ by at most one overall and per class.
pub fn make_folds(corpus: &[LabeledDocument], k: usize, seed: u64) -> Result<FoldPlan, Error> {
    if k < 2 {
        return Err(Error::BadFoldCount(k));
    }
    if corpus.len() < k {
        return Err(Error::CorpusTooSmall {
            len: corpus.len(),
            k,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut by_class: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for (i, document) in corpus.iter().enumerate() {
        match document.label {
            Label::Positive => by_class[0].push(i),
            Label::Negative => by_class[1].push(i),
        }
    }
    let mut assignment = vec![0usize; corpus.len()];
    let mut next_fold = 0usize;
    for class in &mut by_class {
        class.shuffle(&mut rng);
        for &document in class.iter() {
            assignment[document] = next_fold;
            next_fold = (next_fold + 1) % k;
        }
    }
    Ok(FoldPlan {
        k,
        seed,
        assignment,
    })
}

/// Pooled binary confusion counts; "positive" is the positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    pub true_positives: u64,
    pub false_positives: u64,
    pub false_negatives: u64,
    pub true_negatives: u64,
}

impl ConfusionMatrix {
    pub fn new(
        true_positives: u64,
        false_positives: u64,
        false_negatives: u64,
        true_negatives: u64,
    ) -> Self {
        Self {
            true_positives,
            false_positives,
            false_negatives,
            true_negatives,
        }
    }

    pub fn record(&mut self, actual: Label, predicted: Label) {
        match (actual, predicted) {
            (Label::Positive, Label::Positive) => self.true_positives += 1,
            (Label::Negative, Label::Positive) => self.false_positives += 1,
            (Label::Positive, Label::Negative) => self.false_negatives += 1,
            (Label::Negative, Label::Negative) => self.true_negatives += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.true_positives + self.false_positives + self.false_negatives + self.true_negatives
    }

    /// Fraction of correctly labeled documents.
    pub fn accuracy(&self) -> Result<f64, Error> {
        if self.total() == 0 {
            return Err(Error::EmptyConfusionMatrix);
        }
        Ok((self.true_positives + self.true_negatives) as f64 / self.total() as f64)
    }

    /// Cohen's kappa, see [`cohen_kappa`].
    pub fn kappa(&self) -> Result<f64, Error> {
        cohen_kappa(self)
    }
}

/// Chance-corrected agreement `(p_o - p_e) / (1 - p_e)` where `p_o` is the
/// observed accuracy and `p_e` the agreement expected from the marginals.
///
/// Evaluated as a single division of integer-valued numerator and denominator
/// so clean fractions come out exact; returns 0 when `p_e = 1` (a matrix with
/// only one occupied row and column).
pub fn cohen_kappa(matrix: &ConfusionMatrix) -> Result<f64, Error> {
    let total = matrix.total();
    if total == 0 {
        return Err(Error::EmptyConfusionMatrix);
    }
    let tp = matrix.true_positives as i128;
    let fp = matrix.false_positives as i128;
    let fn_ = matrix.false_negatives as i128;
    let tn = matrix.true_negatives as i128;
    let total = total as i128;
    // p_e * total^2, from the row and column marginals
    let expected = (tp + fn_) * (tp + fp) + (fp + tn) * (fn_ + tn);
    let numerator = total * (tp + tn) - expected;
    let denominator = total * total - expected;
    if denominator == 0 {
        return Ok(0.0);
    }
    Ok(numerator as f64 / denominator as f64)
}

/// The three KPIs for one `(backend, algorithm)` experiment.
#[derive(Clone, Debug)]
pub struct EvaluationResult {
    pub backend: Backend,
    pub algorithm: Algorithm,
    pub accuracy: f64,
    pub kappa: f64,
    /// Wall-clock training time summed over the folds, in seconds.
    pub train_seconds: f64,
    /// Wall-clock classification time summed over the folds, in seconds.
    pub eval_seconds: f64,
    /// The pooled confusion matrix the KPIs were computed from.
    pub confusion: ConfusionMatrix,
}

impl EvaluationResult {
    pub fn total_seconds(&self) -> f64 {
        self.train_seconds + self.eval_seconds
    }
}

/// Runs k-fold cross validation: trains on the complement of each fold,
/// classifies the held-out fold, and pools every held-out prediction into one
/// confusion matrix.
///
/// Folds execute strictly sequentially so the summed wall times are
/// uncontended; correctness and timing come from the same run. Everything but
/// the two time fields is deterministic in `(corpus, k, seed)` and identical
/// across backends.
pub fn run_crossval(
    corpus: &[LabeledDocument],
    k: usize,
    seed: u64,
    train_options: &TrainOptions,
    algorithm: Algorithm,
    threshold: f64,
) -> Result<EvaluationResult, Error> {
    let plan = make_folds(corpus, k, seed)?;
    let mut confusion = ConfusionMatrix::default();
    let mut train_seconds = 0.0;
    let mut eval_seconds = 0.0;
    for fold in 0..k {
        let train_set: Vec<&LabeledDocument> = plan
            .train_indices(fold)
            .into_iter()
            .map(|i| &corpus[i])
            .collect();
        let started = Instant::now();
        let model = SentimentModel::train(train_set.iter().copied(), train_options).map_err(
            |error| match error {
                Error::DegenerateCorpus { missing } => Error::DegenerateFold { fold, missing },
                other => other,
            },
        )?;
        train_seconds += started.elapsed().as_secs_f64();

        let started = Instant::now();
        for &document in &plan.test_indices(fold) {
            let document = &corpus[document];
            let predicted = match algorithm {
                Algorithm::Threshold => model.classify_threshold(&document.text, threshold),
                Algorithm::NaiveBayes => model.classify_naive_bayes(&document.text).0,
            };
            confusion.record(document.label, predicted);
        }
        eval_seconds += started.elapsed().as_secs_f64();
    }
    Ok(EvaluationResult {
        backend: train_options.backend,
        algorithm,
        accuracy: confusion.accuracy()?,
        kappa: confusion.kappa()?,
        train_seconds,
        eval_seconds,
        confusion,
    })
}
