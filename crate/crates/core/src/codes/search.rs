//! Depth-first search over local rules.
//!
//! Rule values are assigned to the admissible `(2N+1)`-windows in canonical
//! order. Every admissible word `u` of length `m <= depth` becomes a
//! constraint "the image of `u` is admissible", attached to the last window
//! of `u` in assignment order, and is checked as soon as that window gets a
//! value. Complete rules are handed to [`find_inverse`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::Symbol;
use crate::error::{Error, Result};
use crate::language::{Subshift, WordSet};

use super::inverse::{find_inverse, AutomorphismCertificate, InverseSearch, NonInvertibility};
use super::{codes_equal_on, SlidingBlockCode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of search-tree nodes visited.
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_nodes: 50_000_000 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub windows: usize,
    pub constraints: usize,
    pub nodes: u64,
    pub pruned: u64,
    pub endomorphisms: usize,
    pub proved_non_injective: usize,
    pub proved_non_surjective: usize,
    pub inverse_bound_exhausted: usize,
}

#[derive(Debug, Clone)]
pub struct AutomorphismSearch {
    pub range: usize,
    pub max_inv_range: usize,
    pub depth: usize,
    pub certificates: Vec<AutomorphismCertificate>,
    pub stats: SearchStats,
}

struct Constraint {
    windows: Vec<u32>,
    target: Arc<WordSet>,
}

struct Dfs<'a> {
    alphabet_size: usize,
    by_last: Vec<Vec<Constraint>>,
    assignment: Vec<Symbol>,
    stats: &'a mut SearchStats,
    limits: SearchLimits,
    complete: Vec<Vec<Symbol>>,
    scratch: Vec<Symbol>,
}

impl Dfs<'_> {
    fn satisfied(&mut self, last: usize) -> bool {
        for c in &self.by_last[last] {
            self.scratch.clear();
            self.scratch.extend(c.windows.iter().map(|&i| self.assignment[i as usize]));
            if !c.target.contains(&self.scratch) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        if pos == self.assignment.len() {
            self.complete.push(self.assignment.clone());
            return Ok(());
        }
        for s in 0..self.alphabet_size as Symbol {
            self.stats.nodes += 1;
            if self.stats.nodes > self.limits.max_nodes {
                return Err(Error::ResourceLimit(format!(
                    "rule search exceeded {} nodes ({} windows, {} constraints, {} pruned, {} complete rules)",
                    self.limits.max_nodes,
                    self.stats.windows,
                    self.stats.constraints,
                    self.stats.pruned,
                    self.complete.len()
                )));
            }
            self.assignment[pos] = s;
            if self.satisfied(pos) {
                self.run(pos + 1)?;
            } else {
                self.stats.pruned += 1;
            }
        }
        Ok(())
    }
}

/// All automorphisms of range `range` whose inverse has range `<= max_inv_range`,
/// with endomorphy checked to word length `depth`.
pub fn enumerate_automorphisms(
    shift: &Subshift,
    range: usize,
    max_inv_range: usize,
    depth: usize,
    limits: SearchLimits,
) -> Result<AutomorphismSearch> {
    let win = 2 * range + 1;
    if depth < win {
        return Err(Error::DepthTooSmall { depth, window: win });
    }
    let windows = shift.words(win)?;
    let mut stats = SearchStats { windows: windows.count(), ..Default::default() };

    let mut by_last: Vec<Vec<Constraint>> = (0..windows.count()).map(|_| Vec::new()).collect();
    for m in win..=depth {
        let target = shift.words(m - 2 * range)?;
        for u in shift.words(m)?.iter() {
            let idx: Vec<u32> = u
                .windows(win)
                .map(|w| windows.index_of(w).expect("factor of an admissible word is admissible") as u32)
                .collect();
            let last = *idx.iter().max().expect("nonempty") as usize;
            by_last[last].push(Constraint { windows: idx, target: Arc::clone(&target) });
            stats.constraints += 1;
        }
    }

    let mut dfs = Dfs {
        alphabet_size: shift.alphabet().size(),
        by_last,
        assignment: vec![0; windows.count()],
        stats: &mut stats,
        limits,
        complete: Vec::new(),
        scratch: Vec::new(),
    };
    dfs.run(0)?;
    let complete = std::mem::take(&mut dfs.complete);
    stats.endomorphisms = complete.len();

    let mut certificates: Vec<AutomorphismCertificate> = Vec::new();
    for images in complete {
        let code = SlidingBlockCode::from_images(shift, range, Arc::clone(&windows), images)?;
        match find_inverse(shift, &code, max_inv_range, depth)? {
            InverseSearch::Found(cert) => {
                let mut duplicate = false;
                for c in &certificates {
                    if codes_equal_on(shift, &c.code, &cert.code)? {
                        duplicate = true;
                        break;
                    }
                }
                if !duplicate {
                    certificates.push(cert);
                }
            }
            InverseSearch::NotInvertibleWithinBounds(why) => match why {
                NonInvertibility::NonInjective { .. } => stats.proved_non_injective += 1,
                NonInvertibility::NonSurjective { .. } => stats.proved_non_surjective += 1,
                NonInvertibility::BoundExhausted { .. } => stats.inverse_bound_exhausted += 1,
            },
        }
    }

    Ok(AutomorphismSearch { range, max_inv_range, depth, certificates, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::language::SubshiftSpec;

    fn search(spec: SubshiftSpec, range: usize, inv: usize) -> AutomorphismSearch {
        let s = Subshift::new(spec).unwrap();
        let depth = s.spec().default_depth(range);
        enumerate_automorphisms(&s, range, inv, depth, SearchLimits::default()).unwrap()
    }

    #[test]
    fn full_binary_range_zero() {
        let r = search(SubshiftSpec::full_binary(), 0, 2);
        let tables: Vec<Vec<Symbol>> = r.certificates.iter().map(|c| c.code.images().to_vec()).collect();
        assert_eq!(tables, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(r.stats.endomorphisms, 4);
        assert_eq!(r.stats.proved_non_surjective, 2);
    }

    #[test]
    fn two_cycle_range_zero() {
        let r = search(SubshiftSpec::periodic(Alphabet::binary(), "01").unwrap(), 0, 1);
        let tables: Vec<Vec<Symbol>> = r.certificates.iter().map(|c| c.code.images().to_vec()).collect();
        assert_eq!(tables, vec![vec![0, 1], vec![1, 0]]);
        assert!(r.stats.pruned > 0);
    }

    #[test]
    fn node_cap() {
        let s = Subshift::new(SubshiftSpec::full_binary()).unwrap();
        let r = enumerate_automorphisms(&s, 1, 1, 6, SearchLimits { max_nodes: 10 });
        assert!(matches!(r, Err(Error::ResourceLimit(_))));
    }
}
