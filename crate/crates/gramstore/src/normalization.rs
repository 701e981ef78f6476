//! Cleansing raw text down to the 26-letter lowercase English alphabet and
//! the character/index mapping that makes grams directly indexable.
//!
//! Every store backend keys grams by these indices, so the mapping fixes the
//! key space to exactly `26^n` for grams of length `n`.

use crate::Error;

/// Number of symbols in the alphabet: the lowercase letters `'a'..='z'`.
pub const ALPHABET_LEN: usize = 26;

/// Dense index of one alphabet character, always in `0..=25`.
///
/// `'a'` maps to 0 and `'z'` to 25, by ordinal distance from `'a'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphabetIndex(u8);

impl AlphabetIndex {
    /// Wraps a raw index, rejecting anything outside `0..=25`.
    pub fn new(value: u8) -> Result<Self, Error> {
        if usize::from(value) < ALPHABET_LEN {
            Ok(Self(value))
        } else {
            Err(Error::IndexOutOfRange(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

/// Maps a lowercase letter to its alphabet index.
///
/// Anything outside `'a'..='z'` is rejected; hitting that error means a
/// caller skipped [`normalize_strict`].
pub fn char_to_index(c: char) -> Result<AlphabetIndex, Error> {
    if c.is_ascii_lowercase() {
        Ok(AlphabetIndex(c as u8 - b'a'))
    } else {
        Err(Error::OutOfAlphabet(c))
    }
}

/// Inverse of [`char_to_index`].
pub fn index_to_char(index: AlphabetIndex) -> char {
    (b'a' + index.0) as char
}

/// Lowercases `A`-`Z` and deletes every other character outside `'a'..='z'`,
/// concatenating the survivors in order.
///
/// Deletion joins neighbours: `"a b"` becomes `"ab"`, so grams may span what
/// used to be a word boundary (see [`normalize_segments`] for the splitting
/// variant). Only the ASCII letters are case-folded; accented and non-Latin
/// letters are deleted, not transliterated, which keeps the index space at
/// exactly 26 symbols. Idempotent.
pub fn normalize_strict(text: &str) -> String {
    text.chars()
        .filter_map(|c| match c {
            'a'..='z' => Some(c),
            'A'..='Z' => Some(c.to_ascii_lowercase()),
            _ => None,
        })
        .collect()
}

/// Like [`normalize_strict`], but splits at every deleted character instead
/// of joining across it, so no gram extracted from a segment can span a word
/// boundary. Empty segments are dropped.
///
/// This is an opt-in alternative; the default pipeline everywhere else is the
/// joining [`normalize_strict`].
pub fn normalize_segments(text: &str) -> Vec<String> {
    let mut segments = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        match c {
            'a'..='z' => current.push(c),
            'A'..='Z' => current.push(c.to_ascii_lowercase()),
            _ => {
                if !current.is_empty() {
                    segments.push(std::mem::take(&mut current));
                }
            }
        }
    }
    if !current.is_empty() {
        segments.push(current);
    }
    segments
}

/// Maps already-cleansed text to its index bytes.
///
/// Errors on the first character outside `'a'..='z'`.
pub fn to_indices(clean: &str) -> Result<Vec<u8>, Error> {
    clean
        .chars()
        .map(|c| char_to_index(c).map(AlphabetIndex::get))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Character-by-character restatement of the cleansing rule, kept
    /// deliberately independent of `normalize_strict`.
    fn cleanse_oracle(text: &str) -> String {
        let mut out = String::new();
        for c in text.chars() {
            let folded = if c.is_ascii_uppercase() {
                c.to_ascii_lowercase()
            } else {
                c
            };
            if ('a'..='z').contains(&folded) {
                out.push(folded);
            }
        }
        out
    }

    #[test]
    fn normalize_deletes_and_folds() {
        assert_eq!(normalize_strict("AbC! d"), "abcd");
        assert_eq!(normalize_strict(""), "");
    }

    #[test]
    fn normalize_example_sentence() {
        let sentence = "This is a nice weather we have today!";
        // Fixture frozen from the oracle below; note the single 'w' between
        // "nice" and "eather" -- naive hand expansions tend to double it.
        let expected = "thisisaniceweatherwehavetoday";
        assert_eq!(cleanse_oracle(sentence), expected);
        assert_eq!(normalize_strict(sentence), expected);
    }

    #[test]
    fn normalize_matches_oracle_on_mixed_input() {
        for text in [
            "Motörhead",
            "naïve café",
            "ONE-two_THREE 4 five!",
            "ß³¼ Ω",
            "\tl i n e\nbreaks\r\n",
        ] {
            assert_eq!(normalize_strict(text), cleanse_oracle(text));
        }
    }

    #[test]
    fn normalize_is_idempotent_and_bounded() {
        for text in ["AbC! d", "ÄÖÜ", "This is a nice weather we have today!"] {
            let once = normalize_strict(text);
            assert_eq!(normalize_strict(&once), once);
            assert!(once.chars().count() <= text.chars().count());
        }
    }

    #[test]
    fn segments_split_at_deletions() {
        assert_eq!(
            normalize_segments("This is a nice weather we have today!"),
            vec!["this", "is", "a", "nice", "weather", "we", "have", "today"]
        );
        assert_eq!(normalize_segments("!!!"), Vec::<String>::new());
        assert_eq!(normalize_segments("one"), vec!["one"]);
    }

    #[test]
    fn char_index_round_trip() {
        assert_eq!(char_to_index('a').unwrap().get(), 0);
        assert_eq!(char_to_index('z').unwrap().get(), 25);
        assert_eq!(char_to_index('f').unwrap().get(), 5);
        assert_eq!(index_to_char(AlphabetIndex::new(0).unwrap()), 'a');
        assert_eq!(index_to_char(AlphabetIndex::new(25).unwrap()), 'z');
        assert_eq!(index_to_char(AlphabetIndex::new(7).unwrap()), 'h');
        for c in 'a'..='z' {
            assert_eq!(index_to_char(char_to_index(c).unwrap()), c);
        }
        for i in 0..26u8 {
            let index = AlphabetIndex::new(i).unwrap();
            assert_eq!(char_to_index(index_to_char(index)).unwrap(), index);
        }
    }

    #[test]
    fn rejects_out_of_alphabet() {
        assert!(matches!(char_to_index('!'), Err(Error::OutOfAlphabet('!'))));
        assert!(matches!(char_to_index('A'), Err(Error::OutOfAlphabet('A'))));
        assert!(matches!(char_to_index('é'), Err(Error::OutOfAlphabet('é'))));
        assert!(matches!(
            AlphabetIndex::new(26),
            Err(Error::IndexOutOfRange(26))
        ));
    }

    #[test]
    fn normalized_text_is_closed_under_indexing() {
        let clean = normalize_strict("Mixed CASE with 123 and punctuation!?");
        let indices = to_indices(&clean).unwrap();
        assert_eq!(indices.len(), clean.chars().count());
        assert!(indices.iter().all(|&i| i < 26));
        assert!(to_indices("not clean!").is_err());
    }
}
