use std::cmp::Ordering;

use crate::alphabet::{Symbol, Word};

/// The admissible words of one fixed length, sorted in canonical order.
///
/// Words are packed into one flat buffer with stride `length`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordSet {
    length: usize,
    data: Vec<Symbol>,
}

impl WordSet {
    /// Builds a set from words of length `length`, sorting and deduplicating.
    pub fn from_words<I, W>(length: usize, words: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: AsRef<[Symbol]>,
    {
        let mut rows: Vec<Vec<Symbol>> = words
            .into_iter()
            .map(|w| {
                let w = w.as_ref();
                assert_eq!(w.len(), length, "word length mismatch");
                w.to_vec()
            })
            .collect();
        rows.sort_unstable();
        rows.dedup();
        let mut data = Vec::with_capacity(rows.len() * length);
        for r in rows {
            data.extend_from_slice(&r);
        }
        WordSet { length, data }
    }

    /// Wraps a buffer that is already sorted and free of duplicates.
    pub(crate) fn from_sorted_flat(length: usize, data: Vec<Symbol>) -> Self {
        debug_assert!(length == 0 || data.len() % length == 0);
        let set = WordSet { length, data };
        debug_assert!(set.iter().zip(set.iter().skip(1)).all(|(a, b)| a < b));
        set
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn count(&self) -> usize {
        if self.length == 0 {
            // Only the empty word.
            1
        } else {
            self.data.len() / self.length
        }
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn get(&self, idx: usize) -> &[Symbol] {
        &self.data[idx * self.length..(idx + 1) * self.length]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[Symbol]> + Clone + '_ {
        (0..self.count()).map(move |i| self.get(i))
    }

    pub fn to_words(&self) -> Vec<Word> {
        self.iter().map(Word::from).collect()
    }

    /// Position of `w` in canonical order, if present.
    pub fn index_of(&self, w: &[Symbol]) -> Option<usize> {
        if w.len() != self.length {
            return None;
        }
        let (mut lo, mut hi) = (0usize, self.count());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(w) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        self.index_of(w).is_some()
    }
}
