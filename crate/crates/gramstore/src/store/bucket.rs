//! The bucketed hash list: a fixed array of buckets, each holding a collision
//! list of `(gram, weight)` pairs.

use crate::ngram::NGram;
use crate::store::{check_gram, Backend, NGramStore};
use crate::Error;

/// Hashes each gram to one of `B` predefined buckets and scans only that
/// bucket's list, so access costs O(1) bucket selection plus O(list length).
///
/// The hash is `flat_index(gram) mod B`: deterministic and uniform over the
/// gram space. With the default `B = 26^n` almost every gram gets its own
/// bucket; small `B` degrades towards [`super::LinearStore`].
pub struct BucketListStore {
    n: usize,
    buckets: Vec<Vec<(NGram, i64)>>,
}

impl BucketListStore {
    pub fn new(n: usize, buckets: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroGramLength);
        }
        if buckets == 0 {
            return Err(Error::ZeroBuckets);
        }
        Ok(Self {
            n,
            buckets: vec![Vec::new(); buckets],
        })
    }

    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// Buckets currently holding no entries.
    pub fn empty_bucket_count(&self) -> usize {
        self.buckets.iter().filter(|b| b.is_empty()).count()
    }

    /// `flat_index(gram) mod B`, evaluated digit by digit so the length of
    /// the gram never overflows the intermediate product.
    fn bucket_of(&self, gram: &[u8]) -> usize {
        let b = self.buckets.len() as u64;
        let mut h: u64 = 0;
        for &digit in gram {
            h = (h * 26 + u64::from(digit)) % b;
        }
        h as usize
    }
}

impl NGramStore for BucketListStore {
    fn backend(&self) -> Backend {
        Backend::Bucket
    }

    fn gram_len(&self) -> usize {
        self.n
    }

    fn get(&self, gram: &[u8]) -> Result<i64, Error> {
        check_gram(gram, self.n)?;
        let bucket = &self.buckets[self.bucket_of(gram)];
        Ok(bucket
            .iter()
            .find(|(g, _)| g.indices() == gram)
            .map_or(0, |(_, w)| *w))
    }

    fn set(&mut self, gram: &[u8], weight: i64) -> Result<(), Error> {
        check_gram(gram, self.n)?;
        let slot = self.bucket_of(gram);
        let bucket = &mut self.buckets[slot];
        match bucket.iter_mut().find(|(g, _)| g.indices() == gram) {
            Some((_, w)) => *w = weight,
            None => bucket.push((NGram::from_indices(gram).expect("gram was checked"), weight)),
        }
        Ok(())
    }

    fn increment(&mut self, gram: &[u8], delta: i64) -> Result<i64, Error> {
        check_gram(gram, self.n)?;
        let slot = self.bucket_of(gram);
        let bucket = &mut self.buckets[slot];
        match bucket.iter_mut().find(|(g, _)| g.indices() == gram) {
            Some((_, w)) => {
                let updated = w.checked_add(delta).ok_or(Error::WeightOverflow)?;
                *w = updated;
                Ok(updated)
            }
            None => {
                bucket.push((NGram::from_indices(gram).expect("gram was checked"), delta));
                Ok(delta)
            }
        }
    }

    fn iter(&self) -> Box<dyn Iterator<Item = (NGram, i64)> + '_> {
        Box::new(
            self.buckets
                .iter()
                .flatten()
                .filter(|(_, w)| *w != 0)
                .map(|(g, w)| (g.clone(), *w)),
        )
    }
}
