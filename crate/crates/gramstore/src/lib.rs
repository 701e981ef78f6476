//! Storage structures for character n-gram frequency data, and the harness
//! for comparing them.
//!
//! Three interchangeable stores map grams to integer weights:
//!
//! - a **linear pair list**, the O(entries) baseline;
//! - a **bucketed hash list**, O(1) bucket pick plus a collision-list scan;
//! - a **dimensional map**, where the gram's own characters address a flat
//!   `26^n` array, so access is O(1) with a footprint that never depends on
//!   the data.
//!
//! Around them sit closed-form size estimators for the latter two layouts,
//! text normalization down to the 26-letter alphabet, gram/bag/graph
//! extraction, a sentiment scorer with threshold and Naive Bayes classifiers,
//! stratified k-fold cross validation with accuracy/kappa/time KPIs, and a
//! benchmark grid that pits every backend against every classifier.
//!
//! ```
//! use gramstore::{
//!     normalize_strict, to_indices, build_store, Backend,
//! };
//!
//! let mut store = build_store(Backend::Dimensional, 3, None, false)?;
//! let indices = to_indices(&normalize_strict("Banana bandana!"))?;
//! for gram in indices.windows(3) {
//!     store.increment(gram, 1)?;
//! }
//! assert_eq!(store.get(to_indices("ana")?.as_slice())?, 3);
//! # Ok::<(), gramstore::Error>(())
//! ```
//!
//! The `book/` directory of the repository walks through every concept; its
//! code snippets compile and run as doc-tests of this crate.

pub mod bench;
pub mod corpus;
mod error;
pub mod evaluation;
pub mod ngram;
pub mod normalization;
pub mod sentiment;
pub mod store;

pub use corpus::{
    generate_synthetic_corpus, generate_synthetic_corpus_with_lengths, ingest_corpus,
    write_corpus, CorpusFormat, IngestSummary, Label, LabeledDocument,
};
pub use error::Error;
pub use evaluation::{
    cohen_kappa, make_folds, run_crossval, Algorithm, ConfusionMatrix, EvaluationResult, FoldPlan,
};
pub use ngram::{bag_of_words, build_ngram_graph, extract_ngrams, BagOfWords, NGram, NGramGraph};
pub use normalization::{
    char_to_index, index_to_char, normalize_segments, normalize_strict, to_indices, AlphabetIndex,
    ALPHABET_LEN,
};
pub use sentiment::{SentimentModel, TrainOptions};
pub use store::{
    build_store, estimate_dimensional_map_bytes, estimate_hash_list_bytes, flat_index, gram_space,
    Backend, BucketListStore, DimensionalMapStore, LinearStore, NGramStore, SizeEstimate,
    SizeModel, BYTES_PER_MEGABYTE, DIMENSIONAL_GUARD_MAX_N,
};
pub use bench::{
    emit_report, format_report, parse_report, render_grids, run_benchmark_grid, BenchmarkReport,
    BenchmarkRow, CellFailure, GridOptions, REPORT_HEADER,
};

// Every Rust snippet in the guide compiles and runs under `cargo test --doc`,
// keeping the book in sync with the crate.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/normalization.md")]
    pub mod normalization {}
    #[doc = include_str!("../../../book/src/ngrams.md")]
    pub mod ngrams {}
    #[doc = include_str!("../../../book/src/stores.md")]
    pub mod stores {}
    #[doc = include_str!("../../../book/src/size-estimation.md")]
    pub mod size_estimation {}
    #[doc = include_str!("../../../book/src/sentiment.md")]
    pub mod sentiment {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    pub mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
