//! Crate-wide error type.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::Label;

/// Everything that can go wrong across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("character {0:?} is outside the a-z alphabet (was the text normalized?)")]
    OutOfAlphabet(char),

    #[error("alphabet index {0} is outside 0..=25")]
    IndexOutOfRange(u8),

    #[error("gram length must be at least 1")]
    ZeroGramLength,

    #[error("neighbour window must be at least 1")]
    ZeroWindow,

    #[error("gram has length {actual}, expected {expected}")]
    GramLengthMismatch { expected: usize, actual: usize },

    #[error("gram length {0} makes the flat index exceed 64 bits")]
    GramSpaceOverflow(usize),

    #[error("weight overflow while updating a gram")]
    WeightOverflow,

    #[error("a dimensional map with n = {0} would need 26^{0} cells; use the large-gram-space override if you really want this")]
    GramSpaceGuard(usize),

    #[error("gram space 26^{0} does not fit in memory addresses on this platform")]
    GramSpaceUnaddressable(usize),

    #[error("bucket count must be at least 1")]
    ZeroBuckets,

    #[error("empty buckets ({empty}) exceed the bucket count ({buckets})")]
    EmptyBucketsExceedBuckets { empty: u64, buckets: u64 },

    #[error("size estimate overflows a 64-bit byte count")]
    SizeEstimateOverflow,

    #[error("smoothing alpha must be a positive finite number, got {0}")]
    InvalidAlpha(f64),

    #[error("corpus contains no {missing} documents")]
    DegenerateCorpus { missing: Label },

    #[error("fold {fold}: training split contains no {missing} documents")]
    DegenerateFold { fold: usize, missing: Label },

    #[error("fold count must be at least 2, got {0}")]
    BadFoldCount(usize),

    #[error("corpus has {len} documents, fewer than the {k} folds requested")]
    CorpusTooSmall { len: usize, k: usize },

    #[error("confusion matrix is empty")]
    EmptyConfusionMatrix,

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{}: cannot infer corpus format from the file extension; pass it explicitly", .0.display())]
    UnknownCorpusFormat(PathBuf),

    #[error("{}: {rejected} of {total} records are malformed", path.display())]
    MalformedCorpus {
        path: PathBuf,
        rejected: usize,
        total: usize,
    },

    #[error("report line {line}: {message}")]
    MalformedReport { line: usize, message: String },
}
