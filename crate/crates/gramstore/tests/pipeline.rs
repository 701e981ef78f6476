//! Cross-module properties: the classification pipeline must behave
//! identically whatever store backend carries it, and the learned weights
//! must obey the symmetries the formulas promise.

use gramstore::store::sorted_entries;
use gramstore::{
    generate_synthetic_corpus, run_crossval, Algorithm, Backend, Label, LabeledDocument, NGram,
    SentimentModel, TrainOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn options(n: usize, backend: Backend) -> TrainOptions {
    TrainOptions {
        n,
        backend,
        ..TrainOptions::default()
    }
}

/// A reproducible corpus with partially overlapping classes.
fn mixed_corpus(size: usize, seed: u64) -> Vec<LabeledDocument> {
    generate_synthetic_corpus(size, 0.6, seed)
}

fn random_texts(count: usize, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..30);
            (0..len)
                .map(|_| (b'a' + rng.gen_range(0..26u8)) as char)
                .collect()
        })
        .collect()
}

#[test]
fn trained_counts_are_backend_independent() {
    let corpus = mixed_corpus(60, 17);
    let models: Vec<SentimentModel> = Backend::ALL
        .iter()
        .map(|&backend| SentimentModel::train(&corpus, &options(3, backend)).unwrap())
        .collect();
    for label in [Label::Positive, Label::Negative] {
        let reference = sorted_entries(models[0].class_store(label));
        assert!(!reference.is_empty());
        for model in &models[1..] {
            assert_eq!(sorted_entries(model.class_store(label)), reference);
        }
    }
}

#[test]
fn classifications_are_bit_identical_across_backends() {
    let corpus = mixed_corpus(60, 23);
    let models: Vec<SentimentModel> = Backend::ALL
        .iter()
        .map(|&backend| SentimentModel::train(&corpus, &options(3, backend)).unwrap())
        .collect();
    for text in random_texts(200, 5) {
        let scores: Vec<f64> = models.iter().map(|m| m.score_document(&text)).collect();
        assert!(scores.windows(2).all(|w| w[0] == w[1]), "text {text:?}");
        let nb: Vec<(Label, f64)> = models.iter().map(|m| m.classify_naive_bayes(&text)).collect();
        assert!(nb.windows(2).all(|w| w[0] == w[1]), "text {text:?}");
        for tau in [-0.5, 0.0, 0.5] {
            let decisions: Vec<Label> = models
                .iter()
                .map(|m| m.classify_threshold(&text, tau))
                .collect();
            assert!(decisions.windows(2).all(|w| w[0] == w[1]));
        }
    }
}

#[test]
fn label_swap_negates_weights_and_scores() {
    let corpus = mixed_corpus(40, 31);
    let swapped: Vec<LabeledDocument> = corpus
        .iter()
        .map(|d| LabeledDocument::new(d.text.clone(), d.label.opposite()))
        .collect();
    let model = SentimentModel::train(&corpus, &options(3, Backend::Dimensional)).unwrap();
    let mirror = SentimentModel::train(&swapped, &options(3, Backend::Dimensional)).unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let gram: Vec<u8> = (0..3).map(|_| rng.gen_range(0..26u8)).collect();
        let gram = NGram::from_indices(&gram).unwrap();
        let w = model.gram_weight(&gram).unwrap();
        let m = mirror.gram_weight(&gram).unwrap();
        assert_eq!(w, -m, "gram {gram}");
    }
    for text in random_texts(100, 6) {
        assert_eq!(model.score_document(&text), -mirror.score_document(&text));
    }
}

#[test]
fn naive_bayes_decision_survives_corpus_duplication() {
    let corpus = mixed_corpus(50, 41);
    let model = SentimentModel::train(&corpus, &options(3, Backend::Dimensional)).unwrap();
    for k in [2usize, 3] {
        let duplicated: Vec<LabeledDocument> = std::iter::repeat(corpus.clone())
            .take(k)
            .flatten()
            .collect();
        let scaled = SentimentModel::train(&duplicated, &options(3, Backend::Dimensional)).unwrap();
        for text in random_texts(200, 12) {
            assert_eq!(
                model.classify_naive_bayes(&text).0,
                scaled.classify_naive_bayes(&text).0,
                "k = {k}, text {text:?}"
            );
        }
    }
}

#[test]
fn threshold_sweep_is_monotone() {
    let corpus = mixed_corpus(50, 47);
    let model = SentimentModel::train(&corpus, &options(3, Backend::Bucket)).unwrap();
    let texts = random_texts(200, 8);
    let mut previous_positives = usize::MAX;
    for step in -10..=10 {
        let tau = step as f64 / 10.0;
        let positives = texts
            .iter()
            .filter(|t| model.classify_threshold(t, tau) == Label::Positive)
            .count();
        assert!(
            positives <= previous_positives,
            "raising tau to {tau} grew the positive set"
        );
        previous_positives = positives;
    }
}

#[test]
fn crossval_kpis_are_backend_invariant() {
    let corpus = mixed_corpus(60, 53);
    let results: Vec<_> = Backend::ALL
        .iter()
        .map(|&backend| {
            run_crossval(&corpus, 5, 7, &options(3, backend), Algorithm::NaiveBayes, 0.0).unwrap()
        })
        .collect();
    assert!(results.windows(2).all(|w| {
        w[0].accuracy == w[1].accuracy
            && w[0].kappa == w[1].kappa
            && w[0].confusion == w[1].confusion
    }));
}

#[test]
fn random_labels_score_near_chance() {
    // labels carry no signal at separability zero; with a few thousand
    // documents the pooled kappa settles near 0
    let corpus = generate_synthetic_corpus(2_000, 0.0, 61);
    let result = run_crossval(
        &corpus,
        10,
        13,
        &options(3, Backend::Dimensional),
        Algorithm::NaiveBayes,
        0.0,
    )
    .unwrap();
    assert!(result.kappa.abs() < 0.1, "kappa = {}", result.kappa);
    assert!((result.accuracy - 0.5).abs() < 0.05);
}
