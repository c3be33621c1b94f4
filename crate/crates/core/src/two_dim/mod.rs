//! Finite windows of `eta(i, j) = (phi^j x)(i)` and their rectangle counts.
//!
//! Row `j` of a window is the `j`-fold image of the seed, cut to the `n`
//! central columns, so a seed of length `2N(k-1) + n` determines an `n x k`
//! window. Period vectors `(a, b)` mean `eta(i + a, j + b) = eta(i, j)`.

mod transfer;

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alphabet::{Alphabet, Symbol};
use crate::codes::{apply_code, order_mod_shift, AutomorphismCertificate, OrderModShift, SlidingBlockCode};
use crate::error::{Error, Result};
use crate::language::{ShiftKind, Subshift};

pub use transfer::{effective_span, rect_complexity_transfer};

/// An `n x k` window, row-major with row 0 first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RectPattern {
    width: usize,
    height: usize,
    cells: Vec<Symbol>,
}

impl RectPattern {
    pub fn from_rows(rows: Vec<Vec<Symbol>>) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        if width == 0 || rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidSpec("pattern rows must be nonempty and of equal length".into()));
        }
        Ok(RectPattern { width, height, cells: rows.concat() })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn row(&self, j: usize) -> &[Symbol] {
        &self.cells[j * self.width..(j + 1) * self.width]
    }

    /// Cell `(i, j)`: column `i`, row `j`.
    pub fn get(&self, i: usize, j: usize) -> Symbol {
        self.cells[j * self.width + i]
    }

    /// One line per row, row 0 first.
    pub fn to_grid(&self, alphabet: &Alphabet) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for j in 0..self.height {
            out.push_str(&alphabet.render(self.row(j)));
            out.push('\n');
        }
        out
    }

    pub fn to_file(&self, alphabet: &Alphabet) -> RectPatternFile {
        RectPatternFile {
            width: self.width,
            height: self.height,
            rows: (0..self.height).map(|j| alphabet.render(self.row(j))).collect(),
        }
    }
}

/// JSON form of a [`RectPattern`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectPatternFile {
    pub width: usize,
    pub height: usize,
    pub rows: Vec<String>,
}

impl RectPatternFile {
    pub fn to_pattern(&self, alphabet: &Alphabet) -> Result<RectPattern> {
        let rows = self
            .rows
            .iter()
            .map(|r| alphabet.parse_word(r).map(|w| w.0))
            .collect::<Result<Vec<_>>>()?;
        let p = RectPattern::from_rows(rows)?;
        if p.width != self.width || p.height != self.height {
            return Err(Error::InvalidSpec("pattern dimensions do not match its rows".into()));
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodVector {
    pub a: i64,
    pub b: i64,
}

impl PeriodVector {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 && b == 0 {
            return Err(Error::InvalidSpec("period vector must be nonzero".into()));
        }
        Ok(PeriodVector { a, b })
    }
}

impl fmt::Display for PeriodVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Seed length needed for an `n x k` window of a range-`range` code.
pub fn seed_len(range: usize, n: usize, k: usize) -> usize {
    2 * range * (k - 1) + n
}

/// Is `w` an admissible word? Avoids materializing long word sets for SFTs.
fn admissible(shift: &Subshift, w: &[Symbol]) -> Result<bool> {
    let k = shift.alphabet().size();
    if w.iter().any(|&s| usize::from(s) >= k) {
        return Ok(false);
    }
    match &shift.spec().kind {
        ShiftKind::Full => Ok(true),
        ShiftKind::Sft { .. } => {
            let l = shift.core_graph().expect("sft").vertex_len();
            if w.len() <= l {
                return Ok(shift.words(w.len())?.contains(w));
            }
            let v = shift.words(l)?;
            Ok(w.windows(l).all(|x| v.contains(x)))
        }
        _ => Ok(shift.words(w.len())?.contains(w)),
    }
}

fn check_dims(n: usize, k: usize) -> Result<()> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidSpec("window dimensions must be positive".into()));
    }
    Ok(())
}

/// The window `eta(i, j)` for `0 <= i < n`, `0 <= j < k`, for any point
/// whose central word is `seed` (positions `-N(k-1) .. N(k-1)+n-1`).
pub fn build_eta_window(
    shift: &Subshift,
    code: &SlidingBlockCode,
    seed: &[Symbol],
    n: usize,
    k: usize,
) -> Result<RectPattern> {
    check_dims(n, k)?;
    code.check_bound(shift)?;
    let expected = seed_len(code.range(), n, k);
    if seed.len() != expected {
        return Err(Error::SeedLengthMismatch { expected, got: seed.len() });
    }
    if !admissible(shift, seed)? {
        return Err(Error::InadmissibleWindow(shift.alphabet().render(seed)));
    }
    window_unchecked(code, seed, n, k)
}

fn window_unchecked(code: &SlidingBlockCode, seed: &[Symbol], n: usize, k: usize) -> Result<RectPattern> {
    let r = code.range();
    let mut cells = Vec::with_capacity(n * k);
    let mut cur = seed.to_vec();
    for j in 0..k {
        let off = r * (k - 1 - j);
        cells.extend_from_slice(&cur[off..off + n]);
        if j + 1 < k {
            cur = apply_code(code, &cur)?.0;
        }
    }
    Ok(RectPattern { width: n, height: k, cells })
}

/// Number of distinct `n x k` windows over all admissible seeds.
///
/// Seeds are enumerated when there are at most `word_cap` of them; full
/// shifts and SFTs with more seeds go through [`rect_complexity_transfer`].
pub fn rect_complexity(shift: &Subshift, code: &SlidingBlockCode, n: usize, k: usize) -> Result<u64> {
    check_dims(n, k)?;
    code.check_bound(shift)?;
    let len = seed_len(code.range(), n, k);
    let seeds = shift.complexity(len);
    let small = matches!(seeds, Ok(c) if c <= shift.word_cap() as u64);
    if !small && shift.spec().has_exact_endomorphy_bound() {
        return rect_complexity_transfer(shift, code, n, k);
    }
    rect_complexity_exhaustive(shift, code, n, k)
}

/// Enumerates every admissible seed and deduplicates the windows.
pub fn rect_complexity_exhaustive(shift: &Subshift, code: &SlidingBlockCode, n: usize, k: usize) -> Result<u64> {
    check_dims(n, k)?;
    code.check_bound(shift)?;
    let seeds = shift.words(seed_len(code.range(), n, k))?;
    let distinct = (0..seeds.count())
        .into_par_iter()
        .try_fold(HashSet::new, |mut set, i| {
            set.insert(window_unchecked(code, seeds.get(i), n, k)?.cells);
            Ok::<_, Error>(set)
        })
        .try_reduce(HashSet::new, |mut a, mut b| {
            if a.len() < b.len() {
                std::mem::swap(&mut a, &mut b);
            }
            a.extend(b);
            Ok(a)
        })?;
    Ok(distinct.len() as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QzVerdict {
    Triggered,
    NotTriggered,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QzCheck {
    pub n: usize,
    pub k: usize,
    pub count: u64,
    pub verdict: QzVerdict,
}

/// Compares the rectangle count with `n k / 16`, exactly.
pub fn qz_threshold_check(shift: &Subshift, code: &SlidingBlockCode, n: usize, k: usize) -> Result<QzCheck> {
    let count = rect_complexity(shift, code, n, k)?;
    Ok(QzCheck { n, k, count, verdict: qz_verdict(count, n, k) })
}

pub fn qz_verdict(count: u64, n: usize, k: usize) -> QzVerdict {
    if u128::from(count) * 16 <= (n as u128) * (k as u128) {
        QzVerdict::Triggered
    } else {
        QzVerdict::NotTriggered
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PeriodSearch {
    Found(PeriodVector),
    BoundExhausted { max_b: usize, max_a: i64 },
}

/// A period vector shared by every `eta_{phi, x}`, from `sigma^a phi^b = id`.
pub fn certify_period(
    shift: &Subshift,
    cert: &AutomorphismCertificate,
    max_b: usize,
    max_a: i64,
) -> Result<PeriodSearch> {
    Ok(match order_mod_shift(shift, &cert.code, max_b, max_a)? {
        OrderModShift::Found { b, a } => PeriodSearch::Found(PeriodVector::new(a, b as i64)?),
        OrderModShift::BoundExhausted { max_b, max_a } => PeriodSearch::BoundExhausted { max_b, max_a },
    })
}

/// Do the cells agree with their translates by `v` wherever both lie in the window?
pub fn verify_window_periodicity(pattern: &RectPattern, v: PeriodVector) -> Result<bool> {
    let (n, k) = (pattern.width as i64, pattern.height as i64);
    if v.a.abs() >= n || v.b.abs() >= k {
        return Err(Error::NoOverlap);
    }
    for j in 0.max(-v.b)..k.min(k - v.b) {
        for i in 0.max(-v.a)..n.min(n - v.a) {
            if pattern.get(i as usize, j as usize) != pattern.get((i + v.a) as usize, (j + v.b) as usize) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
