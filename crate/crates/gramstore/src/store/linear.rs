//! The pair-list baseline: one flat list of `(gram, weight)` entries.

use crate::ngram::NGram;
use crate::store::{check_gram, Backend, NGramStore};
use crate::Error;

/// Stores every gram in a single unordered list and finds it by scanning, so
/// gets and updates cost O(entries). This is the baseline the other two
/// backends are measured against.
pub struct LinearStore {
    n: usize,
    entries: Vec<(NGram, i64)>,
}

impl LinearStore {
    pub fn new(n: usize) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::ZeroGramLength);
        }
        Ok(Self {
            n,
            entries: Vec::new(),
        })
    }

    /// Number of entries physically held, explicit zeros included.
    pub fn entry_count(&self) -> usize {
        self.entries.len()
    }

    fn position(&self, gram: &[u8]) -> Option<usize> {
        self.entries.iter().position(|(g, _)| g.indices() == gram)
    }
}

impl NGramStore for LinearStore {
    fn backend(&self) -> Backend {
        Backend::Linear
    }

    fn gram_len(&self) -> usize {
        self.n
    }

    fn get(&self, gram: &[u8]) -> Result<i64, Error> {
        check_gram(gram, self.n)?;
        Ok(self.position(gram).map_or(0, |i| self.entries[i].1))
    }

    fn set(&mut self, gram: &[u8], weight: i64) -> Result<(), Error> {
        check_gram(gram, self.n)?;
        match self.position(gram) {
            Some(i) => self.entries[i].1 = weight,
            None => self
                .entries
                .push((NGram::from_indices(gram).expect("gram was checked"), weight)),
        }
        Ok(())
    }

    fn increment(&mut self, gram: &[u8], delta: i64) -> Result<i64, Error> {
        check_gram(gram, self.n)?;
        match self.position(gram) {
            Some(i) => {
                let updated = self.entries[i]
                    .1
                    .checked_add(delta)
                    .ok_or(Error::WeightOverflow)?;
                self.entries[i].1 = updated;
                Ok(updated)
            }
            None => {
                self.entries
                    .push((NGram::from_indices(gram).expect("gram was checked"), delta));
                Ok(delta)
            }
        }
    }

    fn iter(&self) -> Box<dyn Iterator<Item = (NGram, i64)> + '_> {
        Box::new(
            self.entries
                .iter()
                .filter(|(_, w)| *w != 0)
                .map(|(g, w)| (g.clone(), *w)),
        )
    }
}
