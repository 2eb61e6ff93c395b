use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{HatError, Result};
use crate::exact::{self, serde_rational};
use crate::MAX_PLAYERS;

/// Number of players plus the exact white-hat probability `p` (and `q = 1 - p`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GameParams {
    n_players: usize,
    #[serde(with = "serde_rational")]
    p_white: BigRational,
    #[serde(with = "serde_rational")]
    q_black: BigRational,
}

impl GameParams {
    pub fn new(n_players: usize, p_white: BigRational) -> Result<Self> {
        check_players(n_players)?;
        if p_white <= BigRational::zero() || p_white >= BigRational::one() {
            return Err(HatError::Probability(exact::to_fraction(&p_white)));
        }
        let q_black = BigRational::one() - &p_white;
        Ok(Self {
            n_players,
            p_white,
            q_black,
        })
    }

    /// Convenience constructor for `p = num/den`.
    pub fn with_ratio(n_players: usize, num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(HatError::ProbabilitySyntax(format!("{num}/{den}")));
        }
        Self::new(
            n_players,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    /// Parses `p` from user text (`0.9`, `9/10`).
    pub fn parse(n_players: usize, p: &str) -> Result<Self> {
        Self::new(n_players, exact::parse_rational(p)?)
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn p(&self) -> &BigRational {
        &self.p_white
    }

    pub fn q(&self) -> &BigRational {
        &self.q_black
    }

    /// Same game with the colours swapped (`p <-> q`).
    pub fn swapped(&self) -> Self {
        Self {
            n_players: self.n_players,
            p_white: self.q_black.clone(),
            q_black: self.p_white.clone(),
        }
    }

    /// `weights[z] = p^z q^(N-z)`: probability of one configuration with `z` white hats.
    pub fn zero_weights(&self) -> Vec<BigRational> {
        let n = self.n_players;
        let mut p_pow = vec![BigRational::one(); n + 1];
        let mut q_pow = vec![BigRational::one(); n + 1];
        for k in 1..=n {
            p_pow[k] = &p_pow[k - 1] * &self.p_white;
            q_pow[k] = &q_pow[k - 1] * &self.q_black;
        }
        (0..=n).map(|z| &p_pow[z] * &q_pow[n - z]).collect()
    }
}

pub(crate) fn check_players(n: usize) -> Result<()> {
    if (2..=MAX_PLAYERS).contains(&n) {
        Ok(())
    } else {
        Err(HatError::PlayerCount(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_probabilities() {
        assert!(GameParams::with_ratio(3, 0, 1).is_err());
        assert!(GameParams::with_ratio(3, 1, 1).is_err());
        assert!(GameParams::with_ratio(3, 3, 2).is_err());
        assert!(GameParams::with_ratio(1, 1, 2).is_err());
        assert!(GameParams::with_ratio(17, 1, 2).is_err());
        assert!(GameParams::with_ratio(16, 1, 2).is_ok());
    }

    #[test]
    fn p_plus_q_is_one() {
        let g = GameParams::parse(4, "0.9").unwrap();
        assert_eq!(g.p() + g.q(), BigRational::one());
        let w = g.zero_weights();
        assert_eq!(w.len(), 5);
        assert_eq!(w[4], BigRational::new(6561.into(), 10000.into()));
    }
}
