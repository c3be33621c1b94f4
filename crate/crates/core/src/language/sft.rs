//! Shifts of finite type given by forbidden words.
//!
//! Legal words of length `L = max(F_max, 1)` are generated depth-first, then
//! refined to the bi-extendable core by deleting words without a legal left
//! or right extension until nothing changes. Since every forbidden word fits
//! inside one vertex, paths in the overlap graph on the core are exactly the
//! words of the shift of length `>= L`.

use std::collections::VecDeque;

use crate::alphabet::Symbol;
use crate::error::{Error, Result};

use super::wordset::WordSet;

#[derive(Debug, Clone)]
pub struct CoreGraph {
    pub vertices: WordSet,
    pub succ: Vec<Vec<u32>>,
}

impl CoreGraph {
    pub fn build(alphabet_size: usize, forbidden: &[Vec<Symbol>]) -> Result<Self> {
        let fmax = forbidden.iter().map(Vec::len).max().unwrap_or(0);
        let len = fmax.max(1);
        let legal = legal_words(alphabet_size, forbidden, len);
        let n = legal.count();

        let neighbours = |idx: usize, forward: bool| -> Vec<usize> {
            let w = legal.get(idx);
            let mut probe = vec![0; len];
            (0..alphabet_size as Symbol)
                .filter_map(|c| {
                    if forward {
                        probe[..len - 1].copy_from_slice(&w[1..]);
                        probe[len - 1] = c;
                    } else {
                        probe[0] = c;
                        probe[1..].copy_from_slice(&w[..len - 1]);
                    }
                    legal.index_of(&probe)
                })
                .collect()
        };
        let out: Vec<Vec<usize>> = (0..n).map(|i| neighbours(i, true)).collect();
        let inc: Vec<Vec<usize>> = (0..n).map(|i| neighbours(i, false)).collect();

        let mut out_deg: Vec<usize> = out.iter().map(Vec::len).collect();
        let mut in_deg: Vec<usize> = inc.iter().map(Vec::len).collect();
        let mut alive = vec![true; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| out_deg[i] == 0 || in_deg[i] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for &p in &inc[v] {
                if alive[p] {
                    out_deg[p] -= 1;
                    if out_deg[p] == 0 {
                        queue.push_back(p);
                    }
                }
            }
            for &s in &out[v] {
                if alive[s] {
                    in_deg[s] -= 1;
                    if in_deg[s] == 0 {
                        queue.push_back(s);
                    }
                }
            }
        }

        let mut remap = vec![u32::MAX; n];
        let mut data = Vec::new();
        let mut kept = 0u32;
        for i in 0..n {
            if alive[i] {
                remap[i] = kept;
                kept += 1;
                data.extend_from_slice(legal.get(i));
            }
        }
        if kept == 0 {
            return Err(Error::EmptyLanguage);
        }
        let succ = (0..n)
            .filter(|&i| alive[i])
            .map(|i| out[i].iter().filter(|&&s| alive[s]).map(|&s| remap[s]).collect())
            .collect();
        Ok(CoreGraph {
            vertices: WordSet::from_sorted_flat(len, data),
            succ,
        })
    }

    pub fn vertex_len(&self) -> usize {
        self.vertices.length()
    }

    /// Words of length `n`, in canonical order; `None` if more than `cap`.
    pub fn words(&self, n: usize, cap: usize) -> Option<WordSet> {
        let len = self.vertex_len();
        if n < len {
            let mut data: Vec<Symbol> = Vec::new();
            let mut count = 0usize;
            for w in self.vertices.iter() {
                let prefix = &w[..n];
                if count == 0 || &data[(count - 1) * n..] != prefix {
                    data.extend_from_slice(prefix);
                    count += 1;
                    if count > cap {
                        return None;
                    }
                }
            }
            return Some(WordSet::from_sorted_flat(n, data));
        }

        // Depth-first over paths; successor lists are in symbol order, so
        // the output comes out sorted.
        let mut out = PathSink { data: Vec::new(), count: 0, cap };
        let mut word: Vec<Symbol> = Vec::with_capacity(n);
        for start in 0..self.vertices.count() {
            word.clear();
            word.extend_from_slice(self.vertices.get(start));
            if !self.walk(start, n - len, &mut word, &mut out) {
                return None;
            }
        }
        Some(WordSet::from_sorted_flat(n, out.data))
    }

    fn walk(&self, v: usize, steps: usize, word: &mut Vec<Symbol>, out: &mut PathSink) -> bool {
        if steps == 0 {
            out.data.extend_from_slice(word);
            out.count += 1;
            return out.count <= out.cap;
        }
        let last = self.vertex_len() - 1;
        for &s in &self.succ[v] {
            word.push(self.vertices.get(s as usize)[last]);
            let ok = self.walk(s as usize, steps - 1, word, out);
            word.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    /// Number of words of length `n` without materializing them (n >= vertex length).
    pub fn count_paths(&self, n: usize) -> Option<u128> {
        let len = self.vertex_len();
        debug_assert!(n >= len);
        let mut counts = vec![1u128; self.vertices.count()];
        for _ in 0..n - len {
            let mut next = vec![0u128; counts.len()];
            for (v, succ) in self.succ.iter().enumerate() {
                for &s in succ {
                    next[s as usize] = next[s as usize].checked_add(counts[v])?;
                }
            }
            counts = next;
        }
        counts.into_iter().try_fold(0u128, |acc, c| acc.checked_add(c))
    }

    pub fn is_strongly_connected(&self) -> bool {
        let n = self.succ.len();
        if n == 0 {
            return false;
        }
        let mut pred: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (v, succ) in self.succ.iter().enumerate() {
            for &s in succ {
                pred[s as usize].push(v as u32);
            }
        }
        reaches_all(&self.succ) && reaches_all(&pred)
    }
}

struct PathSink {
    data: Vec<Symbol>,
    count: usize,
    cap: usize,
}

fn reaches_all(adj: &[Vec<u32>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0u32];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &s in &adj[v as usize] {
            if !seen[s as usize] {
                seen[s as usize] = true;
                stack.push(s);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Words of length `len` with no forbidden factor, in canonical order.
fn legal_words(alphabet_size: usize, forbidden: &[Vec<Symbol>], len: usize) -> WordSet {
    let ends_forbidden = |w: &[Symbol]| forbidden.iter().any(|f| w.ends_with(f));
    let mut data = Vec::new();
    let mut word: Vec<Symbol> = Vec::with_capacity(len);
    fn extend(
        word: &mut Vec<Symbol>,
        len: usize,
        k: usize,
        data: &mut Vec<Symbol>,
        bad: &dyn Fn(&[Symbol]) -> bool,
    ) {
        if word.len() == len {
            data.extend_from_slice(word);
            return;
        }
        for c in 0..k as Symbol {
            word.push(c);
            if !bad(word) {
                extend(word, len, k, data, bad);
            }
            word.pop();
        }
    }
    extend(&mut word, len, alphabet_size, &mut data, &ends_forbidden);
    WordSet::from_sorted_flat(len, data)
}
