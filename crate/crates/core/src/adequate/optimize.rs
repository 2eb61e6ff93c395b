//! Exact minimum-probability adequate sets by branch and bound.
//!
//! Branching always targets the lowest uncovered configuration and tries the
//! members of its radius-1 ball in ascending weight; once a member has been
//! tried it is excluded from the later sibling branches. The lower bound adds
//! the cheapest admissible element for a family of uncovered configurations
//! whose candidate balls are pairwise disjoint.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use std::ops::Add;

use super::{ball_codes, AdequateSet, CoverageMask, ScaledWeights};
use crate::error::{HatError, Result};
use crate::hatcore::{check_players, GameParams, HatConfig};

/// Node budget for the exact searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self {
            max_nodes: 200_000_000,
        }
    }
}

trait Cost: Clone + Ord + Zero + Add<Output = Self> {}
impl<T: Clone + Ord + Zero + Add<Output = T>> Cost for T {}

#[derive(Debug, Clone, Copy)]
enum Mode {
    /// Irredundant covers with at most `limit` elements.
    AtMost(Option<usize>),
    /// Sets of exactly this many elements.
    Exactly(usize),
}

struct Search<C> {
    n_players: usize,
    weights: Vec<C>,
    /// Codes by ascending (weight, code).
    order: Vec<u32>,
    /// Ball around each configuration, sorted by rank.
    candidates: Vec<Vec<u32>>,
    balls: Vec<CoverageMask>,
    mode: Mode,
    best: Option<(C, Vec<u32>)>,
    nodes: u64,
    max_nodes: u64,
    aborted: bool,
}

impl<C: Cost> Search<C> {
    fn new(n_players: usize, weights: Vec<C>, mode: Mode, limits: &SearchLimits) -> Self {
        let size = 1u32 << n_players;
        let mut order: Vec<u32> = (0..size).collect();
        order.sort_by(|a, b| {
            weights[*a as usize]
                .cmp(&weights[*b as usize])
                .then(a.cmp(b))
        });
        let mut rank = vec![0usize; size as usize];
        for (k, c) in order.iter().enumerate() {
            rank[*c as usize] = k;
        }
        let candidates = (0..size)
            .map(|u| {
                let mut b = ball_codes(u, n_players);
                b.sort_by_key(|c| rank[*c as usize]);
                b
            })
            .collect();
        let balls = HatConfig::all(n_players).map(super::ball_mask).collect();
        Self {
            n_players,
            weights,
            order,
            candidates,
            balls,
            mode,
            best: None,
            nodes: 0,
            max_nodes: limits.max_nodes,
            aborted: false,
        }
    }

    fn run(mut self) -> Result<Option<(C, Vec<u32>)>> {
        let size = 1usize << self.n_players;
        let mut chosen = Vec::new();
        let mut excluded = vec![false; size];
        self.dfs(
            &CoverageMask::empty(self.n_players),
            &mut chosen,
            &mut excluded,
            C::zero(),
        );
        if self.aborted {
            return Err(HatError::ResourceLimit(format!(
                "branch and bound exceeded {} nodes for N={}",
                self.max_nodes, self.n_players
            )));
        }
        Ok(self.best.map(|(c, mut set)| {
            set.sort_unstable();
            (c, set)
        }))
    }

    fn improves(&self, cost: &C) -> bool {
        self.best.as_ref().is_none_or(|(b, _)| cost < b)
    }

    fn dfs(&mut self, cover: &CoverageMask, chosen: &mut Vec<u32>, excluded: &mut [bool], cost: C) {
        if self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.aborted = true;
            return;
        }
        let Some(target) = cover.first_missing() else {
            self.leaf(chosen, cost);
            return;
        };
        let room = match self.mode {
            Mode::AtMost(Some(limit)) | Mode::Exactly(limit) => limit.saturating_sub(chosen.len()),
            Mode::AtMost(None) => usize::MAX,
        };
        if room == 0 {
            return;
        }
        let Some(bound) = self.lower_bound(cover, chosen, excluded, room) else {
            return;
        };
        if !self.improves(&(cost.clone() + bound)) {
            return;
        }
        let branch: Vec<u32> = self.candidates[target as usize]
            .iter()
            .copied()
            .filter(|c| !excluded[*c as usize])
            .collect();
        let mut next = CoverageMask::empty(self.n_players);
        for (k, &c) in branch.iter().enumerate() {
            next.assign_union(cover, &self.balls[c as usize]);
            chosen.push(c);
            let step = cost.clone() + self.weights[c as usize].clone();
            self.dfs(&next, chosen, excluded, step);
            chosen.pop();
            if k + 1 < branch.len() {
                excluded[c as usize] = true;
            }
        }
        for &c in &branch {
            excluded[c as usize] = false;
        }
    }

    fn leaf(&mut self, chosen: &[u32], cost: C) {
        match self.mode {
            Mode::AtMost(_) => {
                if self.improves(&cost) && is_irredundant(chosen, &self.balls, self.n_players) {
                    self.best = Some((cost, chosen.to_vec()));
                }
            }
            Mode::Exactly(das) => {
                let fill: Vec<u32> = self
                    .order
                    .iter()
                    .copied()
                    .filter(|c| !chosen.contains(c))
                    .take(das - chosen.len())
                    .collect();
                let total = fill
                    .iter()
                    .fold(cost, |acc, c| acc + self.weights[*c as usize].clone());
                if self.improves(&total) {
                    let mut set = chosen.to_vec();
                    set.extend(fill);
                    self.best = Some((total, set));
                }
            }
        }
    }

    /// Lower bound on the cost still to be added, or `None` if the node is infeasible.
    fn lower_bound(
        &self,
        cover: &CoverageMask,
        chosen: &[u32],
        excluded: &[bool],
        room: usize,
    ) -> Option<C> {
        let size = 1u32 << self.n_players;
        let mut used = vec![false; size as usize];
        let mut packed = 0usize;
        let mut sum = C::zero();
        for v in (0..size).filter(|v| !cover.contains(*v)) {
            let allowed = self.candidates[v as usize]
                .iter()
                .filter(|c| !excluded[**c as usize]);
            let mut cheapest = None;
            let mut disjoint = true;
            for &c in allowed {
                cheapest.get_or_insert(c);
                disjoint &= !used[c as usize];
            }
            let cheapest = cheapest?;
            if disjoint {
                for &c in &self.candidates[v as usize] {
                    used[c as usize] = true;
                }
                packed += 1;
                sum = sum + self.weights[cheapest as usize].clone();
            }
        }
        if packed > room {
            return None;
        }
        if let Mode::Exactly(das) = self.mode {
            let extra = das - chosen.len() - packed;
            for c in self
                .order
                .iter()
                .filter(|c| !chosen.contains(c))
                .take(extra)
            {
                sum = sum + self.weights[*c as usize].clone();
            }
        }
        Some(sum)
    }
}

fn is_irredundant(chosen: &[u32], balls: &[CoverageMask], n_players: usize) -> bool {
    (0..chosen.len()).all(|skip| {
        let mut m = CoverageMask::empty(n_players);
        for (k, c) in chosen.iter().enumerate() {
            if k != skip {
                m.union_with(&balls[*c as usize]);
            }
        }
        !m.is_full()
    })
}

fn solve(
    params: &GameParams,
    mode: Mode,
    limits: &SearchLimits,
) -> Result<Option<(BigRational, Vec<u32>)>> {
    let n = params.n_players();
    let w = ScaledWeights::new(params);
    let zeros: Vec<usize> = (0..1u32 << n)
        .map(|c| n - c.count_ones() as usize)
        .collect();
    match w.as_u128() {
        Some(small) => {
            let weights = zeros.iter().map(|z| small[*z]).collect();
            Ok(Search::new(n, weights, mode, limits)
                .run()?
                .map(|(c, set)| (w.to_rational(&BigUint::from(c)), set)))
        }
        None => {
            let weights = zeros.iter().map(|z| w.per_zero[*z].clone()).collect();
            Ok(Search::new(n, weights, mode, limits)
                .run()?
                .map(|(c, set)| (w.to_rational(&c), set)))
        }
    }
}

/// Globally minimum-probability adequate set over all sizes (at most
/// `das_limit` elements when given). The witness is irredundant.
pub fn min_cover_optimize(
    n_players: usize,
    params: &GameParams,
    das_limit: Option<usize>,
    limits: &SearchLimits,
) -> Result<(AdequateSet, BigRational)> {
    check_players(n_players)?;
    if params.n_players() != n_players {
        return Err(HatError::DimensionMismatch {
            matrix: n_players,
            config: params.n_players(),
        });
    }
    match solve(params, Mode::AtMost(das_limit), limits)? {
        Some((value, set)) => Ok((AdequateSet::from_sorted_unchecked(set, n_players), value)),
        None => Err(HatError::NoAdequateSet {
            n: n_players,
            das: das_limit.unwrap_or(0),
        }),
    }
}

/// Minimum-probability adequate set with exactly `das` elements.
pub fn min_cover_with_size(
    n_players: usize,
    params: &GameParams,
    das: usize,
    limits: &SearchLimits,
) -> Result<(AdequateSet, BigRational)> {
    check_players(n_players)?;
    if params.n_players() != n_players {
        return Err(HatError::DimensionMismatch {
            matrix: n_players,
            config: params.n_players(),
        });
    }
    let size = 1usize << n_players;
    if das == 0 || das > size {
        return Err(HatError::SetSize { das, max: size });
    }
    match solve(params, Mode::Exactly(das), limits)? {
        Some((value, set)) => Ok((AdequateSet::from_sorted_unchecked(set, n_players), value)),
        None => Err(HatError::NoAdequateSet { n: n_players, das }),
    }
}

/// Fewest elements of any adequate set, by branch and bound on unit weights.
pub(crate) fn min_cardinality(n_players: usize, limits: &SearchLimits) -> Result<usize> {
    let weights = vec![1u128; 1 << n_players];
    let found = Search::new(n_players, weights, Mode::AtMost(None), limits).run()?;
    let (count, _) = found.expect("the full set is adequate");
    Ok(count as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adequate::{enumerate_adequate, optimal_sets, set_probability};

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn global_optimum_examples() {
        let lim = SearchLimits::default();
        let (set, v) =
            min_cover_optimize(4, &GameParams::with_ratio(4, 9, 10).unwrap(), None, &lim).unwrap();
        assert_eq!(v, r(9, 100));
        assert_eq!(
            set_probability(&set, &GameParams::with_ratio(4, 9, 10).unwrap()).unwrap(),
            v
        );
        assert!(set.is_irredundant());
        let (_, v) =
            min_cover_optimize(3, &GameParams::with_ratio(3, 1, 2).unwrap(), None, &lim).unwrap();
        assert_eq!(v, r(1, 4));
        // 2pq^4 + 4p^2q^3 + p^5 at p = 11/20
        let g = GameParams::with_ratio(5, 11, 20).unwrap();
        let (p, q) = (r(11, 20), r(9, 20));
        let expected = r(2, 1) * &p * num_traits::pow(q.clone(), 4)
            + r(4, 1) * num_traits::pow(p.clone(), 2) * num_traits::pow(q, 3)
            + num_traits::pow(p, 5);
        let (set, v) = min_cover_optimize(5, &g, None, &lim).unwrap();
        assert_eq!(v, expected);
        assert_eq!(crate::adequate::signature(&set).to_string(), "024001");
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let lim = SearchLimits::default();
        for n in 2..=4usize {
            for (a, b) in [(1, 2), (9, 10), (11, 20), (1, 10), (3, 10)] {
                let g = GameParams::with_ratio(n, a, b).unwrap();
                let mut best: Option<BigRational> = None;
                for das in 1..=1usize << n {
                    if let Ok((_, v)) = optimal_sets(n, &g, das) {
                        let (_, exact) = min_cover_with_size(n, &g, das, &lim).unwrap();
                        assert_eq!(exact, v, "n={n} p={a}/{b} das={das}");
                        best = Some(best.map_or(v.clone(), |b: BigRational| b.min(v)));
                    } else {
                        assert!(min_cover_with_size(n, &g, das, &lim).is_err());
                    }
                }
                let (_, global) = min_cover_optimize(n, &g, None, &lim).unwrap();
                assert_eq!(Some(global), best, "n={n} p={a}/{b}");
            }
        }
    }

    #[test]
    fn size_limit_and_cardinality() {
        let lim = SearchLimits::default();
        let g = GameParams::with_ratio(4, 1, 2).unwrap();
        assert!(min_cover_optimize(4, &g, Some(3), &lim).is_err());
        assert_eq!(min_cover_optimize(4, &g, Some(4), &lim).unwrap().1, r(1, 4));
        assert_eq!(min_cardinality(4, &lim).unwrap(), 4);
        assert_eq!(min_cardinality(5, &lim).unwrap(), 7);
        let tiny = SearchLimits { max_nodes: 3 };
        assert!(matches!(
            min_cover_optimize(5, &GameParams::with_ratio(5, 1, 2).unwrap(), None, &tiny),
            Err(HatError::ResourceLimit(_))
        ));
        assert_eq!(enumerate_adequate(4, 4).unwrap().len(), 40);
    }
}
