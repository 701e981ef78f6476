//! The three interchangeable n-gram weight stores.
//!
//! All backends expose the same conceptual mapping `gram -> i64 weight`:
//! absent grams read as 0, writes are last-write-wins, and any operation
//! sequence leaves the three backends observationally identical. What differs
//! is the cost model:
//!
//! * [`LinearStore`] keeps one flat pair list and scans it, so every access
//!   is O(entries).
//! * [`BucketListStore`] hashes a gram to one of `B` buckets and scans only
//!   that bucket's collision list.
//! * [`DimensionalMapStore`] uses the gram itself as the address into a
//!   `26^n`-cell array, so access cost never depends on what is stored.

mod bucket;
mod dimensional;
mod estimate;
mod linear;

pub use bucket::BucketListStore;
pub use dimensional::{DimensionalMapStore, DIMENSIONAL_GUARD_MAX_N};
pub use linear::LinearStore;
pub use estimate::{
    estimate_dimensional_map_bytes, estimate_hash_list_bytes, SizeEstimate, SizeModel,
    BYTES_PER_MEGABYTE,
};

use std::fmt;
use std::str::FromStr;

use crate::ngram::NGram;
use crate::normalization::ALPHABET_LEN;
use crate::Error;

/// Which store implementation backs an [`NGramStore`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Backend {
    Linear,
    Bucket,
    Dimensional,
}

impl Backend {
    pub const ALL: [Backend; 3] = [Backend::Linear, Backend::Bucket, Backend::Dimensional];

    pub fn as_str(self) -> &'static str {
        match self {
            Backend::Linear => "linear",
            Backend::Bucket => "bucket",
            Backend::Dimensional => "dimensional",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "linear" => Ok(Backend::Linear),
            "bucket" => Ok(Backend::Bucket),
            "dimensional" => Ok(Backend::Dimensional),
            other => Err(format!(
                "unknown backend {other:?} (expected linear, bucket or dimensional)"
            )),
        }
    }
}

/// Number of distinct grams of length `n`, i.e. `26^n`.
pub fn gram_space(n: usize) -> Result<u64, Error> {
    if n == 0 {
        return Err(Error::ZeroGramLength);
    }
    let mut space: u64 = 1;
    for _ in 0..n {
        space = space
            .checked_mul(ALPHABET_LEN as u64)
            .ok_or(Error::GramSpaceOverflow(n))?;
    }
    Ok(space)
}

/// Flattens a gram to its offset in `[0, 26^n)`: the base-26 value of its
/// index digits, most significant first. Bijective over grams of one length.
pub fn flat_index(indices: &[u8]) -> Result<u64, Error> {
    if indices.is_empty() {
        return Err(Error::ZeroGramLength);
    }
    let mut offset: u64 = 0;
    for &digit in indices {
        if usize::from(digit) >= ALPHABET_LEN {
            return Err(Error::IndexOutOfRange(digit));
        }
        offset = offset
            .checked_mul(ALPHABET_LEN as u64)
            .and_then(|o| o.checked_add(u64::from(digit)))
            .ok_or(Error::GramSpaceOverflow(indices.len()))?;
    }
    Ok(offset)
}

/// Validates a raw gram against a store's configured length.
fn check_gram(gram: &[u8], n: usize) -> Result<(), Error> {
    if gram.len() != n {
        return Err(Error::GramLengthMismatch {
            expected: n,
            actual: gram.len(),
        });
    }
    for &digit in gram {
        if usize::from(digit) >= ALPHABET_LEN {
            return Err(Error::IndexOutOfRange(digit));
        }
    }
    Ok(())
}

/// Uniform mapping `gram -> weight` over grams of one fixed length.
///
/// Grams are passed as raw index bytes (`0..=25` each, length `n`); absent
/// grams read as weight 0. Stores are single-writer while being built and can
/// then serve any number of concurrent readers.
pub trait NGramStore: Send + Sync {
    fn backend(&self) -> Backend;

    /// The configured gram length `n`.
    fn gram_len(&self) -> usize;

    /// Last written weight of `gram`, or 0 if it was never written.
    fn get(&self, gram: &[u8]) -> Result<i64, Error>;

    /// Sets the weight of `gram`, leaving every other gram untouched.
    fn set(&mut self, gram: &[u8], weight: i64) -> Result<(), Error>;

    /// Adds `delta` to the weight of `gram` and returns the new weight.
    fn increment(&mut self, gram: &[u8], delta: i64) -> Result<i64, Error>;

    /// All grams with nonzero weight, each exactly once. Order is
    /// backend-private; the multiset is not.
    fn iter(&self) -> Box<dyn Iterator<Item = (NGram, i64)> + '_>;
}

/// Builds a store of the requested backend.
///
/// `buckets` only matters for [`Backend::Bucket`] and defaults to `26^n`.
/// `allow_large_n` bypasses the dimensional-map memory guard for `n >= 7`.
pub fn build_store(
    backend: Backend,
    n: usize,
    buckets: Option<usize>,
    allow_large_n: bool,
) -> Result<Box<dyn NGramStore>, Error> {
    match backend {
        Backend::Linear => Ok(Box::new(linear::LinearStore::new(n)?)),
        Backend::Bucket => {
            let buckets = match buckets {
                Some(b) => b,
                None => usize::try_from(gram_space(n)?)
                    .map_err(|_| Error::GramSpaceUnaddressable(n))?,
            };
            Ok(Box::new(bucket::BucketListStore::new(n, buckets)?))
        }
        Backend::Dimensional => {
            let store = if allow_large_n {
                dimensional::DimensionalMapStore::new_unguarded(n)?
            } else {
                dimensional::DimensionalMapStore::new(n)?
            };
            Ok(Box::new(store))
        }
    }
}

/// Sorted `(gram, weight)` snapshot of a store, for cross-backend comparison.
pub fn sorted_entries(store: &dyn NGramStore) -> Vec<(NGram, i64)> {
    let mut entries: Vec<_> = store.iter().collect();
    entries.sort();
    entries
}
