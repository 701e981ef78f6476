//! The three sentence representations: bag of words, sliding-window character
//! n-grams, and the n-gram co-occurrence graph.
//!
//! Extraction here is alphabet-agnostic and works on any string, spaces and
//! capitals included; the stores layer is what insists on normalized,
//! index-mapped grams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use smallvec::SmallVec;

use crate::normalization::{char_to_index, AlphabetIndex, ALPHABET_LEN};
use crate::Error;

/// A fixed-length gram over alphabet indices; the key type of every store.
///
/// Grams of length up to 8 are stored inline, so iterating a large store does
/// not allocate per entry.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NGram(SmallVec<[u8; 8]>);

impl NGram {
    /// Builds a gram from raw index bytes, rejecting values outside `0..=25`
    /// and the empty sequence.
    pub fn from_indices(indices: &[u8]) -> Result<Self, Error> {
        if indices.is_empty() {
            return Err(Error::ZeroGramLength);
        }
        for &i in indices {
            if usize::from(i) >= ALPHABET_LEN {
                return Err(Error::IndexOutOfRange(i));
            }
        }
        Ok(Self(SmallVec::from_slice(indices)))
    }

    /// Builds a gram from lowercase letters, e.g. `NGram::parse("fdsgh")`.
    pub fn parse(text: &str) -> Result<Self, Error> {
        if text.is_empty() {
            return Err(Error::ZeroGramLength);
        }
        let indices = text
            .chars()
            .map(|c| char_to_index(c).map(AlphabetIndex::get))
            .collect::<Result<SmallVec<[u8; 8]>, Error>>()?;
        Ok(Self(indices))
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for NGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in self.indices() {
            f.write_fmt(format_args!("{}", (b'a' + i) as char))?;
        }
        Ok(())
    }
}

impl fmt::Debug for NGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NGram({self})")
    }
}

/// Returns the `|text| - n + 1` contiguous character windows of `text`, in
/// order, duplicates preserved. Empty when the text is shorter than `n`.
///
/// Lengths are counted in characters, not bytes, so multi-byte input is safe.
pub fn extract_ngrams(text: &str, n: usize) -> Result<Vec<String>, Error> {
    if n == 0 {
        return Err(Error::ZeroGramLength);
    }
    let chars: Vec<char> = text.chars().collect();
    if chars.len() < n {
        return Ok(Vec::new());
    }
    Ok(chars.windows(n).map(|w| w.iter().collect()).collect())
}

/// An order-free multiset of whitespace-delimited tokens.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BagOfWords {
    counts: BTreeMap<String, u64>,
}

impl BagOfWords {
    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    /// Multiplicity of one word, zero if absent.
    pub fn get(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }

    /// Number of distinct words.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Total multiplicity, i.e. the token count of the source text.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Splits `text` on whitespace and collects the tokens into a [`BagOfWords`],
/// discarding grammatical order.
pub fn bag_of_words(text: &str) -> BagOfWords {
    let mut counts = BTreeMap::new();
    for token in text.split_whitespace() {
        *counts.entry(token.to_string()).or_insert(0u64) += 1;
    }
    BagOfWords { counts }
}

/// A graph whose nodes are the distinct grams of a text and whose undirected
/// edges count how often two grams co-occur within the neighbour window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NGramGraph {
    n: usize,
    window: usize,
    nodes: BTreeSet<String>,
    edges: BTreeMap<(String, String), u64>,
}

impl NGramGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn nodes(&self) -> &BTreeSet<String> {
        &self.nodes
    }

    /// Edge multiplicities keyed by the ordered pair `(min, max)`; `(a, b)`
    /// and `(b, a)` are the same edge.
    pub fn edges(&self) -> &BTreeMap<(String, String), u64> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn distinct_edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_edge_multiplicity(&self) -> u64 {
        self.edges.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Builds the n-gram graph of `text`: one node per distinct gram, and for
/// each gram position `i` an edge to each of the `window` following grams.
pub fn build_ngram_graph(text: &str, n: usize, window: usize) -> Result<NGramGraph, Error> {
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    let grams = extract_ngrams(text, n)?;
    let mut nodes = BTreeSet::new();
    let mut edges = BTreeMap::new();
    for gram in &grams {
        nodes.insert(gram.clone());
    }
    for i in 0..grams.len() {
        for j in (i + 1)..grams.len().min(i + window + 1) {
            let (a, b) = if grams[i] <= grams[j] {
                (grams[i].clone(), grams[j].clone())
            } else {
                (grams[j].clone(), grams[i].clone())
            };
            *edges.entry((a, b)).or_insert(0u64) += 1;
        }
    }
    Ok(NGramGraph {
        n,
        window,
        nodes,
        edges,
    })
}
