//! Adequate sets: the losing configurations of a strategy.
//!
//! A set `A` of configurations is adequate when every configuration agrees
//! with some member of `A` on all but at most one hat, i.e. shares one
//! player's score with it. Equivalently the radius-1 Hamming balls around
//! `A` cover `{0,1}^N`.

mod enumerate;
mod mask;
mod optimize;
mod sweep;
mod weights;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{HatError, Result};
use crate::hatcore::{GameParams, HatConfig};

pub use enumerate::{
    enumerate_adequate, extension_report, min_das, optimal_sets, AdequateSets, ExtensionReport,
};
pub use mask::{ball_mask, CoverageMask};
pub use optimize::{min_cover_optimize, min_cover_with_size, SearchLimits};
pub use sweep::{das_sweep, SweepMode, SweepRow};

pub(crate) use mask::ball_codes;
pub(crate) use weights::ScaledWeights;

/// Sorted, duplicate-free adequate set of configuration codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdequateSet {
    elements: Vec<u32>,
    n_players: usize,
}

impl AdequateSet {
    /// Validates ordering, range and adequacy.
    pub fn new(elements: Vec<u32>, n_players: usize) -> Result<Self> {
        validate(&elements, n_players)?;
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HatError::InvalidSet(format!(
                "{elements:?} is not strictly increasing"
            )));
        }
        if !is_adequate_hamming(&elements, n_players)? {
            return Err(HatError::InvalidSet(format!(
                "{elements:?} is not adequate for N={n_players}"
            )));
        }
        Ok(Self {
            elements,
            n_players,
        })
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u32>, n_players: usize) -> Self {
        Self {
            elements,
            n_players,
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn configs(&self) -> impl Iterator<Item = HatConfig> + '_ {
        self.elements
            .iter()
            .map(|&c| HatConfig::raw(c, self.n_players))
    }

    pub fn contains(&self, code: u32) -> bool {
        self.elements.binary_search(&code).is_ok()
    }

    /// White-hat count of each element, in element order.
    pub fn zero_counts(&self) -> Vec<usize> {
        self.configs().map(|c| c.zeros()).collect()
    }

    /// Bitwise complement of every element (colour swap).
    pub fn complement(&self) -> Self {
        let mask = (1u32 << self.n_players) - 1;
        let mut elements: Vec<u32> = self.elements.iter().map(|c| c ^ mask).collect();
        elements.sort_unstable();
        Self {
            elements,
            n_players: self.n_players,
        }
    }

    /// True when removing any single element breaks adequacy.
    pub fn is_irredundant(&self) -> bool {
        (0..self.elements.len()).all(|skip| {
            let rest: Vec<u32> = self
                .elements
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != skip)
                .map(|(_, c)| *c)
                .collect();
            rest.is_empty() || !cover_mask(&rest, self.n_players).is_full()
        })
    }
}

impl fmt::Display for AdequateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// `counts[j]` = number of elements with exactly `j` white hats.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Signature {
    counts: Vec<u32>,
}

impl Signature {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n_players(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Signature of the colour-swapped set.
    pub fn reversed(&self) -> Self {
        Self {
            counts: self.counts.iter().rev().copied().collect(),
        }
    }

    /// `sum_j c_j p^j q^(N-j)`.
    pub fn probability(&self, params: &GameParams) -> BigRational {
        let w = ScaledWeights::new(params);
        w.to_rational(&w.signature_sum(&self.counts))
    }
}

impl fmt::Display for Signature {
    /// Digit string such as `01210`; counts of ten or more switch to `1-5-10-...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.counts.iter().all(|&c| c < 10) {
            for c in &self.counts {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.counts.iter().map(ToString::to_string).collect();
            f.write_str(&parts.join("-"))
        }
    }
}

impl FromStr for Signature {
    type Err = HatError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || HatError::InvalidSet(format!("bad signature {s:?}"));
        let counts = if s.contains('-') {
            s.split('-')
                .map(|t| t.parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(bad))
                .collect::<Result<Vec<_>>>()?
        };
        if counts.len() < 3 {
            return Err(bad());
        }
        Ok(Self { counts })
    }
}

fn validate(elements: &[u32], n_players: usize) -> Result<()> {
    crate::hatcore::check_players(n_players)?;
    if elements.is_empty() {
        return Err(HatError::EmptySet);
    }
    let limit = 1u64 << n_players;
    let mut seen = elements.to_vec();
    seen.sort_unstable();
    if seen.windows(2).any(|w| w[0] == w[1]) {
        return Err(HatError::InvalidSet(format!("{elements:?} has duplicates")));
    }
    if seen.iter().any(|&c| u64::from(c) >= limit) {
        return Err(HatError::InvalidSet(format!(
            "{elements:?} has codes outside 0..{limit}"
        )));
    }
    Ok(())
}

/// Adequacy straight from the definition: every configuration shares some
/// player's score with some element.
pub fn is_adequate(elements: &[u32], n_players: usize) -> Result<bool> {
    validate(elements, n_players)?;
    let members: Vec<Vec<u32>> = elements
        .iter()
        .map(|&c| HatConfig::raw(c, n_players).score_vector().0)
        .collect();
    Ok(HatConfig::all(n_players).all(|s| {
        let scores = s.score_vector().0;
        members
            .iter()
            .any(|a| a.iter().zip(&scores).any(|(x, y)| x == y))
    }))
}

/// Adequacy as a covering test: radius-1 balls around the elements cover every configuration.
pub fn is_adequate_hamming(elements: &[u32], n_players: usize) -> Result<bool> {
    validate(elements, n_players)?;
    Ok(cover_mask(elements, n_players).is_full())
}

pub(crate) fn cover_mask(elements: &[u32], n_players: usize) -> CoverageMask {
    let mut m = CoverageMask::empty(n_players);
    for &c in elements {
        m.union_with(&ball_mask(HatConfig::raw(c, n_players)));
    }
    m
}

pub fn signature(set: &AdequateSet) -> Signature {
    let mut counts = vec![0u32; set.n_players() + 1];
    for c in set.configs() {
        counts[c.zeros()] += 1;
    }
    Signature { counts }
}

/// Total probability of the set's configurations (the loss probability of its strategy).
pub fn set_probability(set: &AdequateSet, params: &GameParams) -> Result<BigRational> {
    if params.n_players() != set.n_players() {
        return Err(HatError::DimensionMismatch {
            matrix: set.n_players(),
            config: params.n_players(),
        });
    }
    Ok(signature(set).probability(params))
}
