//! Sliding block codes on a subshift.
//!
//! A code of range `N` is a rule on the admissible `(2N+1)`-words, read as
//! `(phi x)(i) = rule(x[i-N ..= i+N])`. Rules are stored only on admissible
//! windows, in canonical order, so two codes of equal range agree on the
//! subshift exactly when their image tables agree.

mod inverse;
mod order;
mod search;
mod serial;

use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::language::{Subshift, SubshiftSpec, WordSet};

pub use inverse::{find_inverse, AutomorphismCertificate, InverseSearch, NonInvertibility};
pub use order::{is_shift_power, order_mod_shift, OrderModShift};
pub use search::{enumerate_automorphisms, AutomorphismSearch, SearchLimits, SearchStats};
pub use serial::{code_from_json, CertificateFile, CodeFile};

#[derive(Clone)]
pub struct SlidingBlockCode {
    range: usize,
    windows: Arc<WordSet>,
    images: Vec<Symbol>,
    spec: Arc<SubshiftSpec>,
}

impl fmt::Debug for SlidingBlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.spec.alphabet;
        let mut m = f.debug_map();
        for (w, &s) in self.windows.iter().zip(&self.images) {
            m.entry(&a.render(w), &a.char_of(s));
        }
        m.finish()?;
        write!(f, " (range {})", self.range)
    }
}

impl PartialEq for SlidingBlockCode {
    /// Table equality; use [`codes_equal_on`] to compare codes of different range.
    fn eq(&self, other: &Self) -> bool {
        self.range == other.range && self.images == other.images && self.spec == other.spec
    }
}

impl Eq for SlidingBlockCode {}

impl SlidingBlockCode {
    /// Builds a range-`range` code by evaluating `rule` on every admissible window.
    pub fn from_fn(shift: &Subshift, range: usize, rule: impl Fn(&[Symbol]) -> Symbol) -> Result<Self> {
        let windows = shift.words(2 * range + 1)?;
        let images = windows.iter().map(rule).collect();
        Self::from_images(shift, range, windows, images)
    }

    pub(crate) fn from_images(
        shift: &Subshift,
        range: usize,
        windows: Arc<WordSet>,
        images: Vec<Symbol>,
    ) -> Result<Self> {
        debug_assert_eq!(windows.length(), 2 * range + 1);
        let k = shift.alphabet().size();
        if images.len() != windows.count() {
            return Err(Error::MalformedCode(format!(
                "{} images for {} windows",
                images.len(),
                windows.count()
            )));
        }
        if let Some(&bad) = images.iter().find(|&&s| usize::from(s) >= k) {
            return Err(Error::MalformedCode(format!("symbol index {bad} outside alphabet")));
        }
        Ok(SlidingBlockCode {
            range,
            windows,
            images,
            spec: Arc::new(shift.spec().clone()),
        })
    }

    pub fn identity(shift: &Subshift) -> Result<Self> {
        Self::from_fn(shift, 0, |w| w[0])
    }

    /// The code of `sigma^k`: `(sigma^k x)(i) = x(i + k)`, with range `|k|`.
    pub fn shift_power(shift: &Subshift, k: i64) -> Result<Self> {
        let range = k.unsigned_abs() as usize;
        let pos = (range as i64 + k) as usize;
        Self::from_fn(shift, range, |w| w[pos])
    }

    pub fn range(&self) -> usize {
        self.range
    }

    pub fn window_len(&self) -> usize {
        2 * self.range + 1
    }

    pub fn spec(&self) -> &SubshiftSpec {
        &self.spec
    }

    pub fn windows(&self) -> &WordSet {
        &self.windows
    }

    pub fn images(&self) -> &[Symbol] {
        &self.images
    }

    /// Image of one admissible window.
    pub fn rule(&self, window: &[Symbol]) -> Result<Symbol> {
        self.windows
            .index_of(window)
            .map(|i| self.images[i])
            .ok_or_else(|| Error::InadmissibleWindow(self.spec.alphabet.render(window)))
    }

    /// Pairs of (window, image) in canonical order.
    pub fn table(&self) -> impl Iterator<Item = (&[Symbol], Symbol)> + '_ {
        self.windows.iter().zip(self.images.iter().copied())
    }

    pub(crate) fn check_bound(&self, shift: &Subshift) -> Result<()> {
        if *self.spec == *shift.spec() {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }
}

/// Applies `code` to every window of `w`; the output has length `|w| - 2N`.
pub fn apply_code(code: &SlidingBlockCode, w: &[Symbol]) -> Result<Word> {
    let win = code.window_len();
    if w.len() < win {
        return Err(Error::WordTooShort { len: w.len(), window: win });
    }
    w.windows(win).map(|x| code.rule(x)).collect::<Result<Vec<_>>>().map(Word)
}

/// `c1 ∘ c2` (`c2` first), as a code of range `N1 + N2`.
pub fn compose(shift: &Subshift, c1: &SlidingBlockCode, c2: &SlidingBlockCode) -> Result<SlidingBlockCode> {
    c1.check_bound(shift)?;
    c2.check_bound(shift)?;
    let range = c1.range + c2.range;
    let windows = shift.words(2 * range + 1)?;
    let images = windows
        .iter()
        .map(|u| {
            let mid = apply_code(c2, u)?;
            c1.rule(&mid)
        })
        .collect::<Result<Vec<_>>>()?;
    SlidingBlockCode::from_images(shift, range, windows, images)
}

/// The same map on the subshift, written with a wider window.
pub fn pad_range(shift: &Subshift, code: &SlidingBlockCode, new_range: usize) -> Result<SlidingBlockCode> {
    code.check_bound(shift)?;
    if new_range < code.range {
        return Err(Error::RangeShrink { requested: new_range, range: code.range });
    }
    if new_range == code.range {
        return Ok(code.clone());
    }
    let margin = new_range - code.range;
    let windows = shift.words(2 * new_range + 1)?;
    let images = windows
        .iter()
        .map(|u| code.rule(&u[margin..u.len() - margin]))
        .collect::<Result<Vec<_>>>()?;
    SlidingBlockCode::from_images(shift, new_range, windows, images)
}

/// Do `c1` and `c2` define the same map on the subshift?
///
/// Sound because every admissible word is the central window of some point.
pub fn codes_equal_on(shift: &Subshift, c1: &SlidingBlockCode, c2: &SlidingBlockCode) -> Result<bool> {
    c1.check_bound(shift)?;
    c2.check_bound(shift)?;
    let n = c1.range.max(c2.range);
    if c1.range == c2.range {
        return Ok(c1.images == c2.images);
    }
    let windows = shift.words(2 * n + 1)?;
    for u in windows.iter() {
        let m1 = n - c1.range;
        let m2 = n - c2.range;
        if c1.rule(&u[m1..u.len() - m1])? != c2.rule(&u[m2..u.len() - m2])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Does `code` map admissible `m`-words to admissible `(m - 2N)`-words for
/// every `m` in `[2N+1, depth]`?
///
/// Exact for full shifts and SFTs once `depth >= F_max + 2N`; otherwise
/// evidence up to `depth`.
pub fn is_endomorphism(shift: &Subshift, code: &SlidingBlockCode, depth: usize) -> Result<bool> {
    code.check_bound(shift)?;
    let win = code.window_len();
    if depth < win {
        return Err(Error::DepthTooSmall { depth, window: win });
    }
    for m in win..=depth {
        let source = shift.words(m)?;
        let target = shift.words(m - 2 * code.range)?;
        for u in source.iter() {
            if !target.contains(&apply_code(code, u)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
