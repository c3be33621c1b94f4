use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Symbol, Word};
use crate::error::{Error, Result};
use crate::language::Subshift;

use super::{apply_code, codes_equal_on, compose, is_endomorphism, SlidingBlockCode};

/// Longest period tried when looking for two periodic points with one image.
pub const MAX_WITNESS_PERIOD: usize = 8;

/// A code together with a verified two-sided inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismCertificate {
    pub code: SlidingBlockCode,
    pub inverse: SlidingBlockCode,
    /// Word length up to which endomorphy of both codes was checked.
    pub verification_depth: usize,
    /// The depth bound is exact for this subshift (full shift or SFT).
    pub exact: bool,
}

/// Why no inverse was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NonInvertibility {
    /// The distinct periodic points `first^inf` and `second^inf` both map to `image^inf`.
    NonInjective { first: Word, second: Word, image: Word },
    /// An admissible word that no admissible word maps onto.
    NonSurjective { missing: Word },
    /// No inverse of range `<= max_inv_range`; neither a proof nor a refutation.
    BoundExhausted {
        max_inv_range: usize,
        /// Two admissible words with equal images but different centre
        /// symbols at the largest range tried.
        conflict: Option<(Word, Word)>,
    },
}

impl NonInvertibility {
    pub fn is_proof(&self) -> bool {
        !matches!(self, NonInvertibility::BoundExhausted { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InverseSearch {
    Found(AutomorphismCertificate),
    NotInvertibleWithinBounds(NonInvertibility),
}

enum Attempt {
    Inverse(SlidingBlockCode),
    Conflict(Word, Word),
    Missing(Word),
}

/// The inverse is read off directly: `g(code(u)) = u[centre]` for every
/// admissible `u` of length `2(N + N') + 1`. Two `u` with equal images but
/// different centres rule out range `N'`; an admissible `(2N'+1)`-word that
/// is never an image proves non-surjectivity.
fn attempt(shift: &Subshift, code: &SlidingBlockCode, inv_range: usize) -> Result<Attempt> {
    let outer = code.range() + inv_range;
    let sources = shift.words(2 * outer + 1)?;
    let targets = shift.words(2 * inv_range + 1)?;
    let mut forced: Vec<Option<(Symbol, usize)>> = vec![None; targets.count()];
    let mut conflict = None;
    for (ui, u) in sources.iter().enumerate() {
        let v = apply_code(code, u)?;
        let vi = targets
            .index_of(&v)
            .ok_or_else(|| Error::InadmissibleWindow(shift.alphabet().render(&v)))?;
        let centre = u[outer];
        match forced[vi] {
            None => forced[vi] = Some((centre, ui)),
            Some((c, prev)) if c != centre && conflict.is_none() => {
                conflict = Some((Word::from(sources.get(prev)), Word::from(u)));
            }
            Some(_) => {}
        }
    }
    if let Some(i) = forced.iter().position(Option::is_none) {
        return Ok(Attempt::Missing(Word::from(targets.get(i))));
    }
    if let Some((a, b)) = conflict {
        return Ok(Attempt::Conflict(a, b));
    }
    let images = forced.into_iter().map(|f| f.expect("filled").0).collect();
    SlidingBlockCode::from_images(shift, inv_range, targets, images).map(Attempt::Inverse)
}

/// Two distinct periodic points of period `<= MAX_WITNESS_PERIOD` with the
/// same image, when periodic-point membership is decidable for the shift.
fn periodic_collision(shift: &Subshift, code: &SlidingBlockCode) -> Result<Option<NonInvertibility>> {
    let k = shift.alphabet().size();
    let n = code.range();
    for p in 1..=MAX_WITNESS_PERIOD {
        let Some(total) = (k as u64).checked_pow(p as u32).filter(|&t| t <= 1 << 16) else {
            break;
        };
        let mut seen: HashMap<Vec<Symbol>, Vec<Symbol>> = HashMap::new();
        let mut w = vec![0 as Symbol; p];
        for _ in 0..total {
            match shift.contains_periodic_point(&w) {
                None => return Ok(None),
                Some(false) => {}
                Some(true) => {
                    let long: Vec<Symbol> = w.iter().copied().cycle().skip(p - n % p).take(p + 2 * n).collect();
                    let image = apply_code(code, &long)?.0;
                    if let Some(other) = seen.get(&image) {
                        return Ok(Some(NonInvertibility::NonInjective {
                            first: Word(other.clone()),
                            second: Word(w.clone()),
                            image: Word(image),
                        }));
                    }
                    seen.insert(image, w.clone());
                }
            }
            for pos in (0..p).rev() {
                if usize::from(w[pos]) + 1 < k {
                    w[pos] += 1;
                    break;
                }
                w[pos] = 0;
            }
        }
    }
    Ok(None)
}

/// Searches inverse ranges `0..=max_inv_range` and certifies the first inverse found.
pub fn find_inverse(
    shift: &Subshift,
    code: &SlidingBlockCode,
    max_inv_range: usize,
    depth: usize,
) -> Result<InverseSearch> {
    let identity = SlidingBlockCode::identity(shift)?;
    let mut last_conflict = None;
    for inv_range in 0..=max_inv_range {
        match attempt(shift, code, inv_range)? {
            Attempt::Missing(missing) => {
                return Ok(InverseSearch::NotInvertibleWithinBounds(NonInvertibility::NonSurjective { missing }));
            }
            Attempt::Conflict(a, b) => last_conflict = Some((a, b)),
            Attempt::Inverse(g) => {
                let left = compose(shift, &g, code)?;
                let right = compose(shift, code, &g)?;
                if !codes_equal_on(shift, &left, &identity)? || !codes_equal_on(shift, &right, &identity)? {
                    continue;
                }
                let verification_depth = depth.max(shift.spec().default_depth(inv_range)).max(code.window_len());
                if !is_endomorphism(shift, code, verification_depth)? || !is_endomorphism(shift, &g, verification_depth)? {
                    continue;
                }
                return Ok(InverseSearch::Found(AutomorphismCertificate {
                    code: code.clone(),
                    inverse: g,
                    verification_depth,
                    exact: shift.spec().has_exact_endomorphy_bound(),
                }));
            }
        }
    }
    if let Some(witness) = periodic_collision(shift, code)? {
        return Ok(InverseSearch::NotInvertibleWithinBounds(witness));
    }
    Ok(InverseSearch::NotInvertibleWithinBounds(NonInvertibility::BoundExhausted {
        max_inv_range,
        conflict: last_conflict,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::SubshiftSpec;

    #[test]
    fn flip_is_its_own_inverse() {
        let s = Subshift::new(SubshiftSpec::full_binary()).unwrap();
        let flip = SlidingBlockCode::from_fn(&s, 0, |w| 1 - w[0]).unwrap();
        let InverseSearch::Found(cert) = find_inverse(&s, &flip, 2, 4).unwrap() else {
            panic!("flip is invertible");
        };
        assert_eq!(cert.inverse, flip);
        assert!(cert.exact);
    }

    #[test]
    fn shift_inverse_is_back_shift() {
        for spec in [SubshiftSpec::full_binary(), SubshiftSpec::fibonacci(), SubshiftSpec::golden_mean()] {
            let s = Subshift::new(spec).unwrap();
            let sigma = SlidingBlockCode::shift_power(&s, 1).unwrap();
            let InverseSearch::Found(cert) = find_inverse(&s, &sigma, 2, 12).unwrap() else {
                panic!("shift is invertible");
            };
            assert_eq!(cert.inverse.range(), 1);
            assert_eq!(cert.inverse, SlidingBlockCode::shift_power(&s, -1).unwrap());
        }
    }

    #[test]
    fn xor_right_collapses_constant_points() {
        let s = Subshift::new(SubshiftSpec::full_binary()).unwrap();
        let xr = SlidingBlockCode::from_fn(&s, 1, |w| w[1] ^ w[2]).unwrap();
        let r = find_inverse(&s, &xr, 3, 12).unwrap();
        assert_eq!(
            r,
            InverseSearch::NotInvertibleWithinBounds(NonInvertibility::NonInjective {
                first: Word(vec![0]),
                second: Word(vec![1]),
                image: Word(vec![0]),
            })
        );
    }

    #[test]
    fn constant_code_is_not_surjective() {
        let s = Subshift::new(SubshiftSpec::full_binary()).unwrap();
        let zero = SlidingBlockCode::from_fn(&s, 0, |_| 0).unwrap();
        let r = find_inverse(&s, &zero, 1, 4).unwrap();
        assert_eq!(
            r,
            InverseSearch::NotInvertibleWithinBounds(NonInvertibility::NonSurjective { missing: Word(vec![1]) })
        );
    }

    #[test]
    fn inverse_bound_too_small() {
        let s = Subshift::new(SubshiftSpec::fibonacci()).unwrap();
        let sigma2 = SlidingBlockCode::shift_power(&s, 2).unwrap();
        let r = find_inverse(&s, &sigma2, 1, 12).unwrap();
        assert!(matches!(
            r,
            InverseSearch::NotInvertibleWithinBounds(NonInvertibility::BoundExhausted { max_inv_range: 1, conflict: Some(_) })
        ));
    }
}
