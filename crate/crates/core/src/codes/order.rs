use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::language::Subshift;

use super::{compose, SlidingBlockCode};

/// Order of a code's image in `Aut(X)/<sigma>`, as far as the bounds reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderModShift {
    /// `sigma^a ∘ phi^b = id` on the subshift, with `b` least.
    Found { b: usize, a: i64 },
    BoundExhausted { max_b: usize, max_a: i64 },
}

impl OrderModShift {
    pub fn is_found(&self) -> bool {
        matches!(self, OrderModShift::Found { .. })
    }
}

/// Is `code` equal to `sigma^s` on the subshift?
///
/// For `|s|` within the code's range this compares the rule against the
/// symbol at offset `s`. Beyond it, `code = sigma^s` would make every word
/// of length `|s| + N` uniquely extendable on one side, so it requires the
/// plateau `P(|s|+N+1) = P(|s|+N)`; only then are the (few) longer words
/// enumerated and compared.
pub fn is_shift_power(shift: &Subshift, code: &SlidingBlockCode, s: i64) -> Result<bool> {
    let n = code.range();
    let reach = s.unsigned_abs() as usize;
    if reach <= n {
        let pos = (n as i64 + s) as usize;
        return Ok(code.table().all(|(w, img)| w[pos] == img));
    }
    let span = reach + n;
    if shift.complexity(span + 1)? != shift.complexity(span)? {
        return Ok(false);
    }
    let words = shift.words(2 * reach + 1)?;
    let margin = reach - n;
    let pos = (reach as i64 + s) as usize;
    for u in words.iter() {
        if code.rule(&u[margin..u.len() - margin])? != u[pos] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least `b <= max_b` and then least `|a| <= max_a` (positive first) with
/// `sigma^a ∘ phi^b = id`.
pub fn order_mod_shift(shift: &Subshift, code: &SlidingBlockCode, max_b: usize, max_a: i64) -> Result<OrderModShift> {
    let mut power = code.clone();
    for b in 1..=max_b {
        if b > 1 {
            power = compose(shift, code, &power)?;
        }
        for a in tie_order(max_a) {
            // sigma^a phi^b = id  <=>  phi^b = sigma^(-a)
            if is_shift_power(shift, &power, -a)? {
                return Ok(OrderModShift::Found { b, a });
            }
        }
    }
    Ok(OrderModShift::BoundExhausted { max_b, max_a })
}

/// 0, 1, -1, 2, -2, ...
fn tie_order(max_a: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=max_a).flat_map(|m| [m, -m]))
}
