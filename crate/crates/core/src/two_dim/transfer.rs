//! Rectangle counts for full shifts and SFTs without enumerating seeds.
//!
//! Column `i` of a window depends only on a bounded segment of the seed
//! around `i`, so a window is the image of a path in the de Bruijn-style
//! graph on segments, labelled by columns. Distinct windows are distinct
//! label sequences; those are counted with an on-the-fly subset
//! construction, one layer per column.

use std::collections::HashMap;

use crate::alphabet::Symbol;
use crate::codes::SlidingBlockCode;
use crate::error::{Error, Result};
use crate::language::Subshift;

/// The narrowest offsets `lo..=hi` (relative to the centre) that the rule
/// actually reads, with the rule restricted to them.
#[derive(Debug, Clone)]
struct Factored {
    lo: i64,
    hi: i64,
    table: HashMap<Vec<Symbol>, Symbol>,
}

fn factor(code: &SlidingBlockCode) -> Factored {
    let n = code.range();
    let win = code.window_len();
    for width in 1..=win {
        'start: for start in 0..=win - width {
            let mut table = HashMap::new();
            for (w, img) in code.table() {
                let key = w[start..start + width].to_vec();
                if *table.entry(key).or_insert(img) != img {
                    continue 'start;
                }
            }
            let lo = start as i64 - n as i64;
            return Factored { lo, hi: lo + width as i64 - 1, table };
        }
    }
    unreachable!("the full window always works")
}

/// Offsets `(lo, hi)` relative to the centre that the rule depends on.
pub fn effective_span(code: &SlidingBlockCode) -> (i64, i64) {
    let f = factor(code);
    (f.lo, f.hi)
}

struct Columns<'a> {
    g: &'a Factored,
    start: i64,
    k: usize,
}

impl Columns<'_> {
    fn column(&self, segment: &[Symbol]) -> Result<Vec<Symbol>> {
        let width = (self.g.hi - self.g.lo + 1) as usize;
        let mut out = Vec::with_capacity(self.k);
        let mut cur = segment.to_vec();
        let mut start = self.start;
        for j in 0..self.k {
            out.push(cur[(-start) as usize]);
            if j + 1 < self.k {
                cur = cur
                    .windows(width)
                    .map(|w| self.g.table.get(w).copied().ok_or_else(|| Error::InadmissibleWindow(format!("{w:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                start -= self.g.lo;
            }
        }
        Ok(out)
    }
}

/// Same count as exhaustive seed enumeration, for full shifts and SFTs.
pub fn rect_complexity_transfer(shift: &Subshift, code: &SlidingBlockCode, n: usize, k: usize) -> Result<u64> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidSpec("window dimensions must be positive".into()));
    }
    code.check_bound(shift)?;
    if !shift.spec().has_exact_endomorphy_bound() {
        return Err(Error::InvalidSpec(format!("transfer counting needs a full shift or SFT, got {}", shift.spec())));
    }
    let g = factor(code);
    let reach = (k - 1) as i64;
    let start = (reach * g.lo).min(0);
    let end = (reach * g.hi).max(0);
    // Segments must be long enough that gluing admissible segments along
    // their overlaps gives admissible words.
    let min_len = shift.core_graph().map_or(1, |c| c.vertex_len());
    let seg_len = ((end - start + 1) as usize).max(min_len);
    let cols = Columns { g: &g, start, k };

    let segments = shift.words(seg_len)?;
    let states = if seg_len > 1 { Some(shift.words(seg_len - 1)?) } else { None };
    let state_of = |w: &[Symbol]| -> u32 {
        states.as_ref().map_or(0, |s| s.index_of(w).expect("factor of an admissible word") as u32)
    };
    let state_count = states.as_ref().map_or(1, |s| s.count());

    let mut labels: HashMap<Vec<Symbol>, u32> = HashMap::new();
    let mut edges: Vec<Vec<(u32, u32)>> = vec![Vec::new(); state_count];
    let mut first: HashMap<u32, Vec<u32>> = HashMap::new();
    for u in segments.iter() {
        let col = cols.column(u)?;
        let next_id = labels.len() as u32;
        let label = *labels.entry(col).or_insert(next_id);
        let to = state_of(&u[1..]);
        edges[state_of(&u[..seg_len - 1]) as usize].push((label, to));
        first.entry(label).or_default().push(to);
    }
    for e in &mut edges {
        e.sort_unstable();
    }

    let cap = shift.word_cap();
    let mut layer: HashMap<Vec<u32>, u128> = HashMap::new();
    for (_, mut set) in first {
        set.sort_unstable();
        set.dedup();
        *layer.entry(set).or_default() += 1;
    }
    for _ in 1..n {
        let mut next: HashMap<Vec<u32>, u128> = HashMap::new();
        let mut size = 0usize;
        for (set, count) in &layer {
            let mut by_label: HashMap<u32, Vec<u32>> = HashMap::new();
            for &s in set {
                for &(label, to) in &edges[s as usize] {
                    by_label.entry(label).or_default().push(to);
                }
            }
            for (_, mut target) in by_label {
                target.sort_unstable();
                target.dedup();
                let slot = next.entry(target).or_insert_with_key(|t| {
                    size += t.len();
                    0
                });
                *slot += count;
            }
            if size > cap {
                return Err(Error::ResourceLimit(format!(
                    "subset construction for {n}x{k} windows exceeded {cap} stored states"
                )));
            }
        }
        layer = next;
    }
    let total: u128 = layer.values().sum();
    u64::try_from(total).map_err(|_| Error::ResourceLimit(format!("rectangle count for {n}x{k} overflows u64")))
}
