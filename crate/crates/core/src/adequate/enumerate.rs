use num_bigint::BigUint;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use super::{cover_mask, signature, AdequateSet, CoverageMask, ScaledWeights};
use crate::error::{HatError, Result};
use crate::hatcore::{check_players, GameParams, HatConfig};

/// Lexicographic stream of the size-`das` adequate sets.
///
/// Branches that can no longer reach a cover are skipped; the output is the
/// same as testing every `das`-subset in nested-loop order.
pub struct AdequateSets {
    n_players: usize,
    das: usize,
    balls: Vec<CoverageMask>,
    /// `covers[k]`: union of the balls of the first `k` chosen elements.
    covers: Vec<CoverageMask>,
    chosen: Vec<u32>,
    next: u32,
    /// Restricts the first element to this value when set.
    first: Option<u32>,
    done: bool,
}

impl AdequateSets {
    pub fn new(n_players: usize, das: usize) -> Result<Self> {
        check_players(n_players)?;
        let size = 1usize << n_players;
        if das == 0 || das > size {
            return Err(HatError::SetSize { das, max: size });
        }
        let balls = HatConfig::all(n_players).map(super::ball_mask).collect();
        Ok(Self {
            n_players,
            das,
            balls,
            covers: vec![CoverageMask::empty(n_players); das + 1],
            chosen: Vec::with_capacity(das),
            next: 0,
            first: None,
            done: false,
        })
    }

    /// Only the sets whose smallest element is `first`.
    pub fn with_first(n_players: usize, das: usize, first: u32) -> Result<Self> {
        let mut it = Self::new(n_players, das)?;
        it.first = Some(first);
        it.next = first;
        Ok(it)
    }

    fn universe(&self) -> u32 {
        1 << self.n_players
    }

    /// False when no extension of the current prefix using candidates `>= next` can cover.
    fn viable(&self) -> bool {
        let depth = self.chosen.len();
        let cover = &self.covers[depth];
        let slots = self.das - depth;
        let missing = self.universe() as usize - cover.count();
        if missing > slots * (self.n_players + 1) {
            return false;
        }
        match cover.first_missing() {
            None => true,
            Some(u) => {
                // some later element must lie in the ball around u
                let top = super::ball_codes(u, self.n_players)
                    .into_iter()
                    .max()
                    .unwrap_or(u);
                top >= self.next
            }
        }
    }

    fn backtrack(&mut self) -> bool {
        match self.chosen.pop() {
            Some(last) => {
                if self.chosen.is_empty() && self.first.is_some() {
                    return false;
                }
                self.next = last + 1;
                true
            }
            None => false,
        }
    }
}

impl Iterator for AdequateSets {
    type Item = AdequateSet;

    fn next(&mut self) -> Option<AdequateSet> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.chosen.len();
            if depth == self.das {
                let hit = self.covers[depth].is_full();
                let found = hit.then(|| {
                    AdequateSet::from_sorted_unchecked(self.chosen.clone(), self.n_players)
                });
                if !self.backtrack() {
                    self.done = true;
                }
                if found.is_some() {
                    return found;
                }
                if self.done {
                    return None;
                }
                continue;
            }
            let last_start = self.universe() - (self.das - depth) as u32;
            let first_blocked = depth == 0 && self.first.is_some_and(|f| self.next != f);
            if self.next > last_start || first_blocked || !self.viable() {
                if !self.backtrack() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            let c = self.next;
            let (head, tail) = self.covers.split_at_mut(depth + 1);
            tail[0].assign_union(&head[depth], &self.balls[c as usize]);
            self.chosen.push(c);
            self.next = c + 1;
        }
    }
}

/// Every size-`das` adequate set in lexicographic order.
///
/// Work is split by smallest element across the current rayon pool; the
/// result order does not depend on the number of threads.
pub fn enumerate_adequate(n_players: usize, das: usize) -> Result<Vec<AdequateSet>> {
    AdequateSets::new(n_players, das)?;
    let last_first = (1u32 << n_players) - das as u32;
    let chunks: Vec<Vec<AdequateSet>> = (0..=last_first)
        .into_par_iter()
        .map(|first| {
            AdequateSets::with_first(n_players, das, first)
                .map(Iterator::collect)
                .unwrap_or_default()
        })
        .collect();
    Ok(chunks.concat())
}

/// Largest N for which [`min_das`] runs the exhaustive ascending search.
pub const MIN_DAS_EXHAUSTIVE_MAX_N: usize = 5;

/// Smallest size of an adequate set (the covering radius-1 number K(N,1)).
///
/// Up to N = 5 this tries das = 1, 2, ... exhaustively; above that a
/// minimum-cardinality branch and bound is used within the default search limits.
pub fn min_das(n_players: usize) -> Result<usize> {
    check_players(n_players)?;
    if n_players <= MIN_DAS_EXHAUSTIVE_MAX_N {
        for das in 1..=1usize << n_players {
            if AdequateSets::new(n_players, das)?.next().is_some() {
                return Ok(das);
            }
        }
        unreachable!("the full configuration set is adequate");
    }
    super::optimize::min_cardinality(n_players, &super::SearchLimits::default())
}

/// All size-`das` adequate sets of minimum probability, with that minimum.
pub fn optimal_sets(
    n_players: usize,
    params: &GameParams,
    das: usize,
) -> Result<(Vec<AdequateSet>, BigRational)> {
    if params.n_players() != n_players {
        return Err(HatError::DimensionMismatch {
            matrix: n_players,
            config: params.n_players(),
        });
    }
    let sets = enumerate_adequate(n_players, das)?;
    let (best, min) = minimal_by_weight(sets, &ScaledWeights::new(params));
    if best.is_empty() {
        return Err(HatError::NoAdequateSet { n: n_players, das });
    }
    Ok((best, min))
}

pub(crate) fn minimal_by_weight(
    sets: Vec<AdequateSet>,
    weights: &ScaledWeights,
) -> (Vec<AdequateSet>, BigRational) {
    let mut best: Vec<AdequateSet> = Vec::new();
    let mut min: Option<BigUint> = None;
    for s in sets {
        let w = weights.signature_sum(signature(&s).counts());
        match &min {
            Some(m) if w > *m => {}
            Some(m) if w == *m => best.push(s),
            _ => {
                min = Some(w);
                best = vec![s];
            }
        }
    }
    let value = min.map(|m| weights.to_rational(&m)).unwrap_or_default();
    (best, value)
}

/// How the size-`das` adequate sets relate to the size-`das - 1` ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtensionReport {
    pub das: usize,
    pub total: usize,
    /// Sets that are a smaller adequate set plus one element.
    pub extensions: usize,
    /// Sets with no adequate subset one element smaller (irredundant sets).
    pub new_sets: usize,
}

pub fn extension_report(n_players: usize, das: usize) -> Result<ExtensionReport> {
    let sets = enumerate_adequate(n_players, das)?;
    let new_sets = sets
        .par_iter()
        .filter(|s| {
            das == 1
                || (0..s.len()).all(|skip| {
                    let rest: Vec<u32> = s
                        .elements()
                        .iter()
                        .enumerate()
                        .filter(|(k, _)| *k != skip)
                        .map(|(_, c)| *c)
                        .collect();
                    !cover_mask(&rest, n_players).is_full()
                })
        })
        .count();
    Ok(ExtensionReport {
        das,
        total: sets.len(),
        extensions: sets.len() - new_sets,
        new_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adequate::is_adequate;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn elems(sets: &[AdequateSet]) -> Vec<Vec<u32>> {
        sets.iter().map(|s| s.elements().to_vec()).collect()
    }

    /// Nested-loop reference: test every das-subset with the definition oracle.
    fn brute(n: usize, das: usize) -> Vec<Vec<u32>> {
        let size = 1u32 << n;
        let mut out = Vec::new();
        let mut idx: Vec<u32> = (0..das as u32).collect();
        loop {
            if is_adequate(&idx, n).unwrap() {
                out.push(idx.clone());
            }
            let mut k = das;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if idx[k] < size - (das - k) as u32 {
                    idx[k] += 1;
                    for j in k + 1..das {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    #[test]
    fn small_enumerations() {
        assert!(enumerate_adequate(3, 1).unwrap().is_empty());
        assert_eq!(
            elems(&enumerate_adequate(3, 2).unwrap()),
            vec![vec![0, 7], vec![1, 6], vec![2, 5], vec![3, 4]]
        );
        assert_eq!(enumerate_adequate(2, 2).unwrap().len(), 6);
        assert_eq!(enumerate_adequate(2, 4).unwrap().len(), 1);
        assert!(enumerate_adequate(3, 0).is_err());
        assert!(enumerate_adequate(3, 9).is_err());
    }

    #[test]
    fn pruned_enumeration_matches_nested_loops() {
        for (n, das) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 2),
            (3, 3),
            (3, 4),
            (3, 5),
            (4, 4),
            (4, 5),
            (4, 6),
        ] {
            assert_eq!(
                elems(&enumerate_adequate(n, das).unwrap()),
                brute(n, das),
                "n={n} das={das}"
            );
        }
    }

    #[test]
    fn sequential_stream_equals_parallel() {
        let seq: Vec<AdequateSet> = AdequateSets::new(4, 5).unwrap().collect();
        assert_eq!(seq, enumerate_adequate(4, 5).unwrap());
        assert_eq!(seq.len(), 560);
    }

    #[test]
    fn minimum_sizes() {
        assert_eq!(min_das(2).unwrap(), 2);
        assert_eq!(min_das(3).unwrap(), 2);
        assert_eq!(min_das(4).unwrap(), 4);
    }

    #[test]
    fn optimal_set_examples() {
        let g = GameParams::with_ratio(3, 9, 10).unwrap();
        let (sets, min) = optimal_sets(3, &g, 2).unwrap();
        assert_eq!(elems(&sets), vec![vec![1, 6], vec![2, 5], vec![3, 4]]);
        assert_eq!(min, r(9, 100));
        let half = GameParams::with_ratio(3, 1, 2).unwrap();
        let (sets, min) = optimal_sets(3, &half, 2).unwrap();
        assert_eq!(sets.len(), 4);
        assert_eq!(min, r(1, 4));
        let g4 = GameParams::with_ratio(4, 9, 10).unwrap();
        let (sets, min) = optimal_sets(4, &g4, 4).unwrap();
        assert_eq!(sets.len(), 24);
        assert_eq!(min, r(9, 100));
        assert_eq!(
            optimal_sets(3, &g, 1),
            Err(HatError::NoAdequateSet { n: 3, das: 1 })
        );
        let g2 = GameParams::with_ratio(2, 9, 10).unwrap();
        let (sets, _) = optimal_sets(2, &g2, 2).unwrap();
        assert_eq!(elems(&sets), vec![vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn das5_extension_counts() {
        let rep = extension_report(4, 5).unwrap();
        assert_eq!(rep.total, 560);
        assert_eq!(rep.extensions + rep.new_sets, 560);
    }
}
