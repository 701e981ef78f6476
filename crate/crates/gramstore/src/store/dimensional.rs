//! Dimensional mapping: the gram's own characters address its weight cell.

use crate::ngram::NGram;
use crate::normalization::ALPHABET_LEN;
use crate::store::{check_gram, gram_space, Backend, NGramStore};
use crate::Error;

/// Largest gram length the plain constructor accepts; `26^7` cells already
/// means tens of gigabytes of weights.
pub const DIMENSIONAL_GUARD_MAX_N: usize = 6;

/// Keeps one weight cell for every possible gram of length `n` in a single
/// contiguous array of `26^n` cells; the cell offset is the gram's base-26
/// value, so conceptually `dm[g0][g1]...[gn-1]` with one flat allocation.
///
/// Access is one array read or write: O(1) with no dependence on the data or
/// on a hash function. The price is that the footprint is fixed at `26^n`
/// cells no matter how few grams are stored.
pub struct DimensionalMapStore {
    n: usize,
    weights: Vec<i64>,
}

impl DimensionalMapStore {
    /// Builds a store for grams of length `n`, refusing `n` large enough that
    /// the array itself becomes a memory hazard (see
    /// [`DIMENSIONAL_GUARD_MAX_N`]).
    pub fn new(n: usize) -> Result<Self, Error> {
        if n > DIMENSIONAL_GUARD_MAX_N {
            return Err(Error::GramSpaceGuard(n));
        }
        Self::new_unguarded(n)
    }

    /// Builds a store of any gram length the address space can express,
    /// bypassing the memory guard. `26^n * 8` bytes are allocated up front.
    pub fn new_unguarded(n: usize) -> Result<Self, Error> {
        let cells = usize::try_from(gram_space(n)?)
            .map_err(|_| Error::GramSpaceUnaddressable(n))?;
        Ok(Self {
            n,
            weights: vec![0; cells],
        })
    }

    /// Total number of cells, i.e. `26^n`.
    pub fn cell_count(&self) -> usize {
        self.weights.len()
    }

    fn offset(&self, gram: &[u8]) -> usize {
        let mut offset = 0usize;
        for &digit in gram {
            offset = offset * ALPHABET_LEN + usize::from(digit);
        }
        offset
    }
}

impl NGramStore for DimensionalMapStore {
    fn backend(&self) -> Backend {
        Backend::Dimensional
    }

    fn gram_len(&self) -> usize {
        self.n
    }

    fn get(&self, gram: &[u8]) -> Result<i64, Error> {
        check_gram(gram, self.n)?;
        Ok(self.weights[self.offset(gram)])
    }

    fn set(&mut self, gram: &[u8], weight: i64) -> Result<(), Error> {
        check_gram(gram, self.n)?;
        let offset = self.offset(gram);
        self.weights[offset] = weight;
        Ok(())
    }

    fn increment(&mut self, gram: &[u8], delta: i64) -> Result<i64, Error> {
        check_gram(gram, self.n)?;
        let offset = self.offset(gram);
        let updated = self.weights[offset]
            .checked_add(delta)
            .ok_or(Error::WeightOverflow)?;
        self.weights[offset] = updated;
        Ok(updated)
    }

    fn iter(&self) -> Box<dyn Iterator<Item = (NGram, i64)> + '_> {
        let n = self.n;
        Box::new(
            self.weights
                .iter()
                .enumerate()
                .filter(|(_, w)| **w != 0)
                .map(move |(offset, w)| {
                    let mut indices = vec![0u8; n];
                    let mut rest = offset;
                    for digit in indices.iter_mut().rev() {
                        *digit = (rest % ALPHABET_LEN) as u8;
                        rest /= ALPHABET_LEN;
                    }
                    (
                        NGram::from_indices(&indices).expect("cell offset decodes to a gram"),
                        *w,
                    )
                }),
        )
    }
}
