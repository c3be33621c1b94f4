//! Languages of primitive substitutions.
//!
//! The length-n language is read off the images `s^k(ab)` of the admissible
//! two-letter words, with `k` large enough that every block `s^k(c)` has
//! length at least `n - 1`. A window of length `n` then meets at most two
//! consecutive blocks, so nothing is missed.

use std::collections::BTreeSet;

use crate::alphabet::Symbol;

use super::wordset::WordSet;

/// A symbol-to-word rule, indexed by symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Substitution {
    pub rules: Vec<Vec<Symbol>>,
}

impl Substitution {
    pub fn alphabet_size(&self) -> usize {
        self.rules.len()
    }

    pub fn apply(&self, w: &[Symbol]) -> Vec<Symbol> {
        let mut out = Vec::new();
        for &s in w {
            out.extend_from_slice(&self.rules[usize::from(s)]);
        }
        out
    }

    pub fn iterate(&self, w: &[Symbol], times: usize) -> Vec<Symbol> {
        let mut cur = w.to_vec();
        for _ in 0..times {
            cur = self.apply(&cur);
        }
        cur
    }

    /// Some power of the incidence matrix is entrywise positive.
    ///
    /// Uses Wielandt's bound: a primitive d x d matrix has `M^((d-1)^2+1) > 0`.
    pub fn is_primitive(&self) -> bool {
        let d = self.alphabet_size();
        if d == 0 || self.rules.iter().any(|r| r.is_empty()) {
            return false;
        }
        let mut incidence = vec![vec![false; d]; d];
        for (a, img) in self.rules.iter().enumerate() {
            for &b in img {
                incidence[a][usize::from(b)] = true;
            }
        }
        let exponent = (d - 1) * (d - 1) + 1;
        let mut power = incidence.clone();
        for _ in 1..exponent {
            power = bool_mul(&power, &incidence);
        }
        power.iter().all(|row| row.iter().all(|&x| x))
    }

    /// Smallest `k` with `|s^k(c)| >= target` for every symbol `c`.
    ///
    /// Returns `None` when the substitution does not grow (a single symbol
    /// mapped to itself).
    fn exponent_for_block_length(&self, target: usize) -> Option<usize> {
        let mut lens = vec![1usize; self.alphabet_size()];
        let mut k = 0;
        loop {
            if lens.iter().all(|&l| l >= target) {
                return Some(k);
            }
            let next: Vec<usize> = self
                .rules
                .iter()
                .map(|img| img.iter().map(|&s| lens[usize::from(s)]).sum())
                .collect();
            if next == lens {
                return None;
            }
            lens = next;
            k += 1;
        }
    }

    /// The admissible two-letter words, as a closure under the substitution.
    pub fn two_letter_words(&self) -> BTreeSet<[Symbol; 2]> {
        let mut set = BTreeSet::new();
        let Some(k) = self.exponent_for_block_length(2) else {
            // s(c) = c on a one-letter alphabet.
            set.insert([0, 0]);
            return set;
        };
        for c in 0..self.alphabet_size() {
            let w = self.iterate(&[c as Symbol], k);
            set.extend(w.windows(2).map(|p| [p[0], p[1]]));
        }
        let mut frontier: Vec<[Symbol; 2]> = set.iter().copied().collect();
        while let Some(pair) = frontier.pop() {
            let img = self.apply(&pair);
            for p in img.windows(2) {
                let p = [p[0], p[1]];
                if set.insert(p) {
                    frontier.push(p);
                }
            }
        }
        set
    }

    /// All length-`n` factors of the substitution shift, with `cap` on the count.
    pub fn factors(&self, n: usize, cap: usize) -> Option<WordSet> {
        let pairs = self.two_letter_words();
        let k = match self.exponent_for_block_length(n.saturating_sub(1)) {
            Some(k) => k,
            None => return Some(WordSet::from_words(n, [vec![0; n]])),
        };
        let mut words = BTreeSet::new();
        for pair in &pairs {
            let img = self.iterate(pair, k);
            for f in img.windows(n) {
                if !words.contains(f) {
                    words.insert(f.to_vec());
                    if words.len() > cap {
                        return None;
                    }
                }
            }
        }
        Some(WordSet::from_words(n, words))
    }
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let d = a.len();
    let mut out = vec![vec![false; d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] {
                for j in 0..d {
                    out[i][j] |= b[k][j];
                }
            }
        }
    }
    out
}
