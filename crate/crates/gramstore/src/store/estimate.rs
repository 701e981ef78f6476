//! Closed-form size estimators for the two non-trivial store layouts.
//!
//! Both formulas model the object layout of a managed runtime (12-byte object
//! headers, 4-byte null slots, 2-byte characters) rather than this crate's
//! own allocations; they are pure functions of their parameters, deliberately
//! decoupled from what the live stores allocate. Throughout, 1 MB means
//! 2^20 bytes.

use std::fmt;

use crate::normalization::ALPHABET_LEN;
use crate::Error;

/// 1 MB = 2^20 bytes everywhere sizes are reported.
pub const BYTES_PER_MEGABYTE: u64 = 1 << 20;

/// Which layout a [`SizeEstimate`] describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeModel {
    HashList,
    DimensionalMap,
}

impl SizeModel {
    pub fn as_str(self) -> &'static str {
        match self {
            SizeModel::HashList => "hash_list",
            SizeModel::DimensionalMap => "dimensional_map",
        }
    }
}

impl fmt::Display for SizeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A byte count produced by one of the estimators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeEstimate {
    pub bytes: u64,
    pub model: SizeModel,
}

impl SizeEstimate {
    /// The byte count in 2^20-byte megabytes.
    pub fn megabytes(&self) -> f64 {
        self.bytes as f64 / BYTES_PER_MEGABYTE as f64
    }
}

impl fmt::Display for SizeEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bytes ({:.2} MB)", self.bytes, self.megabytes())
    }
}

/// Estimated footprint of a hash list holding `unique_grams` distinct grams
/// of length `n` in `buckets` buckets of which `empty_buckets` are empty:
///
/// ```text
/// 12 + (B - E) * 12 + E * 4 + U * (N * 2 + 72)
/// ```
///
/// Known quirk, kept as documentation rather than patched away: the published
/// best-case parameter set for 5-grams (`U = 1`, `B = 26^5 / 2`,
/// `E = 200,610`) evaluates to about 66.5 MB under this formula, not the
/// reported 23 MB — swapping the roles of `E` and `B - E` would land near
/// 24.2 MB, suggesting the two were transposed at some point. The average
/// case (`U = 7,510,766`, `B = 26^5`, `E = 2,679,046`) evaluates to about
/// 702.9 MB against a reported 682 MB. The worst case agrees. The formula is
/// implemented exactly as written and the parameter sets are not "fixed".
pub fn estimate_hash_list_bytes(
    n: usize,
    unique_grams: u64,
    buckets: u64,
    empty_buckets: u64,
) -> Result<SizeEstimate, Error> {
    if n == 0 {
        return Err(Error::ZeroGramLength);
    }
    if buckets == 0 {
        return Err(Error::ZeroBuckets);
    }
    if empty_buckets > buckets {
        return Err(Error::EmptyBucketsExceedBuckets {
            empty: empty_buckets,
            buckets,
        });
    }
    let per_gram = (n as u64)
        .checked_mul(2)
        .and_then(|c| c.checked_add(72))
        .ok_or(Error::SizeEstimateOverflow)?;
    let bytes = (buckets - empty_buckets)
        .checked_mul(12)
        .and_then(|occupied| occupied.checked_add(empty_buckets.checked_mul(4)?))
        .and_then(|b| b.checked_add(unique_grams.checked_mul(per_gram)?))
        .and_then(|b| b.checked_add(12))
        .ok_or(Error::SizeEstimateOverflow)?;
    Ok(SizeEstimate {
        bytes,
        model: SizeModel::HashList,
    })
}

/// Estimated footprint of a dimensional map for grams of length `n`:
///
/// ```text
/// 26^N * 4 + sum over i in 1..=N of 26^(N-i) * 12
/// ```
///
/// Independent of how many grams are stored — the leaf level holds `26^N`
/// primitive cells and each higher level contributes its `26^(N-i)` array
/// headers.
pub fn estimate_dimensional_map_bytes(n: usize) -> Result<SizeEstimate, Error> {
    if n == 0 {
        return Err(Error::ZeroGramLength);
    }
    let a = ALPHABET_LEN as u64;
    let mut power: u64 = 1; // 26^(n-i) walked down from i = n to i = 1
    let mut header_bytes: u64 = 0;
    for _ in 0..n {
        header_bytes = power
            .checked_mul(12)
            .and_then(|h| header_bytes.checked_add(h))
            .ok_or(Error::SizeEstimateOverflow)?;
        power = power.checked_mul(a).ok_or(Error::SizeEstimateOverflow)?;
    }
    let bytes = power
        .checked_mul(4)
        .and_then(|cells| cells.checked_add(header_bytes))
        .ok_or(Error::SizeEstimateOverflow)?;
    Ok(SizeEstimate {
        bytes,
        model: SizeModel::DimensionalMap,
    })
}
