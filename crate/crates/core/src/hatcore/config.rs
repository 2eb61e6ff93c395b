use num_rational::BigRational;
use serde::Serialize;

use super::params::{check_players, GameParams};
use crate::error::{HatError, Result};

/// One assignment of hat colours, stored as an N-bit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HatConfig {
    code: u32,
    n_players: u8,
}

/// What every player observes: `scores[i - 1]` is player `i`'s score.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ScoreVector(pub Vec<u32>);

impl HatConfig {
    pub fn new(code: u32, n_players: usize) -> Result<Self> {
        check_players(n_players)?;
        if u64::from(code) >= 1u64 << n_players {
            return Err(HatError::ConfigCode { code, n: n_players });
        }
        Ok(Self {
            code,
            n_players: n_players as u8,
        })
    }

    /// Unchecked constructor for codes already known to be in range.
    pub(crate) fn raw(code: u32, n_players: usize) -> Self {
        debug_assert!(u64::from(code) < 1u64 << n_players);
        Self {
            code,
            n_players: n_players as u8,
        }
    }

    /// Rebuilds the configuration seen by `player` as `score` when that player's own bit is `bit`.
    pub fn from_score(player: usize, score: u32, bit: u8, n_players: usize) -> Result<Self> {
        check_players(n_players)?;
        check_player(player, n_players)?;
        if u64::from(score) >= 1u64 << (n_players - 1) || bit > 1 {
            return Err(HatError::ConfigCode {
                code: score,
                n: n_players - 1,
            });
        }
        Ok(Self::raw(
            insert_bit(score, n_players - player, bit),
            n_players,
        ))
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn n_players(&self) -> usize {
        usize::from(self.n_players)
    }

    /// Hat of `player` (1-based): 0 white, 1 black.
    pub fn bit(&self, player: usize) -> u8 {
        ((self.code >> (self.n_players() - player)) & 1) as u8
    }

    /// `b_1 .. b_N`, most significant first.
    pub fn bits(&self) -> Vec<u8> {
        (1..=self.n_players()).map(|i| self.bit(i)).collect()
    }

    /// Number of white hats.
    pub fn zeros(&self) -> usize {
        self.n_players() - self.code.count_ones() as usize
    }

    /// Score of `player`: the other bits read MSB-first as a binary number.
    pub fn score(&self, player: usize) -> u32 {
        delete_bit(self.code, self.n_players() - player)
    }

    pub fn score_vector(&self) -> ScoreVector {
        ScoreVector((1..=self.n_players()).map(|i| self.score(i)).collect())
    }

    /// Counterpart: the configuration differing only in `player`'s hat.
    pub fn flip(&self, player: usize) -> Result<Self> {
        check_player(player, self.n_players())?;
        Ok(self.flipped(player))
    }

    pub(crate) fn flipped(&self, player: usize) -> Self {
        Self {
            code: self.code ^ (1 << (self.n_players() - player)),
            n_players: self.n_players,
        }
    }

    /// `p^z q^(N-z)` with `z` the number of white hats.
    pub fn probability(&self, params: &GameParams) -> Result<BigRational> {
        if params.n_players() != self.n_players() {
            return Err(HatError::DimensionMismatch {
                matrix: params.n_players(),
                config: self.n_players(),
            });
        }
        let z = self.zeros();
        Ok(num_traits::pow(params.p().clone(), z)
            * num_traits::pow(params.q().clone(), self.n_players() - z))
    }

    /// Binary string, player 1 first.
    pub fn binary(&self) -> String {
        self.bits().iter().map(|b| char::from(b'0' + b)).collect()
    }

    /// All `2^N` configurations in code order.
    pub fn all(n_players: usize) -> impl Iterator<Item = HatConfig> {
        (0..1u32 << n_players).map(move |c| HatConfig::raw(c, n_players))
    }
}

impl ScoreVector {
    pub fn get(&self, player: usize) -> u32 {
        self.0[player - 1]
    }
}

fn check_player(player: usize, n: usize) -> Result<()> {
    if (1..=n).contains(&player) {
        Ok(())
    } else {
        Err(HatError::PlayerIndex { player, n })
    }
}

/// Removes bit `pos` (counted from the LSB) and closes the gap.
pub(crate) fn delete_bit(code: u32, pos: usize) -> u32 {
    let low = code & ((1 << pos) - 1);
    ((code >> (pos + 1)) << pos) | low
}

/// Inverse of [`delete_bit`]: opens a gap at `pos` and writes `bit` there.
pub(crate) fn insert_bit(score: u32, pos: usize, bit: u8) -> u32 {
    let low = score & ((1 << pos) - 1);
    ((score >> pos) << (pos + 1)) | (u32::from(bit) << pos) | low
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn cfg(code: u32, n: usize) -> HatConfig {
        HatConfig::new(code, n).unwrap()
    }

    #[test]
    fn bits_are_msb_first() {
        assert_eq!(cfg(1, 3).bits(), vec![0, 0, 1]);
        assert_eq!(cfg(0, 4).bits(), vec![0, 0, 0, 0]);
        assert_eq!(cfg(10, 4).bits(), vec![1, 0, 1, 0]);
        assert_eq!(cfg(10, 4).binary(), "1010");
    }

    #[test]
    fn score_vectors_match_printed_tables() {
        assert_eq!(cfg(2, 3).score_vector().0, vec![2, 0, 1]);
        assert_eq!(cfg(0, 3).score_vector().0, vec![0, 0, 0]);
        assert_eq!(cfg(10, 4).score_vector().0, vec![2, 6, 4, 5]);
        // full N=3 Scode column
        let scodes: Vec<Vec<u32>> = HatConfig::all(3).map(|c| c.score_vector().0).collect();
        let expected = [
            [0, 0, 0],
            [1, 1, 0],
            [2, 0, 1],
            [3, 1, 1],
            [0, 2, 2],
            [1, 3, 2],
            [2, 2, 3],
            [3, 3, 3],
        ];
        for (got, want) in scodes.iter().zip(expected.iter()) {
            assert_eq!(got.as_slice(), want.as_slice());
        }
        // the §1.2 example rows for {1,6,9,14}
        assert_eq!(cfg(9, 4).score_vector().0, vec![1, 5, 5, 4]);
        assert_eq!(cfg(14, 4).score_vector().0, vec![6, 6, 6, 7]);
    }

    #[test]
    fn score_matches_summation_formula() {
        for n in 2..=7usize {
            for c in HatConfig::all(n) {
                let b = c.bits();
                for i in 1..=n {
                    let mut s = 0u32;
                    for k in 1..i {
                        s += u32::from(b[k - 1]) << (n - k - 1);
                    }
                    for k in i + 1..=n {
                        s += u32::from(b[k - 1]) << (n - k);
                    }
                    assert_eq!(c.score(i), s, "n={n} code={} i={i}", c.code());
                }
            }
        }
    }

    #[test]
    fn flip_examples() {
        assert_eq!(cfg(4, 3).flip(3).unwrap(), cfg(5, 3));
        assert_eq!(cfg(0, 4).flip(1).unwrap(), cfg(8, 4));
        assert!(cfg(0, 4).flip(0).is_err());
        assert!(cfg(0, 4).flip(5).is_err());
    }

    #[test]
    fn reconstruction_and_counterpart_exhaustive() {
        for n in 2..=6usize {
            for c in HatConfig::all(n) {
                for i in 1..=n {
                    let s = c.score(i);
                    let back = HatConfig::from_score(i, s, c.bit(i), n).unwrap();
                    assert_eq!(back, c);
                    let f = c.flip(i).unwrap();
                    assert_eq!(f.score(i), s);
                    assert_eq!((f.code() ^ c.code()).count_ones(), 1);
                    assert_eq!(f.flip(i).unwrap(), c);
                    assert!(s < 1 << (n - 1));
                }
            }
        }
    }

    #[test]
    fn probabilities() {
        let half = GameParams::with_ratio(3, 1, 2).unwrap();
        assert_eq!(
            cfg(0, 3).probability(&half).unwrap(),
            BigRational::new(1.into(), 8.into())
        );
        let g = GameParams::with_ratio(3, 9, 10).unwrap();
        assert_eq!(
            cfg(1, 3).probability(&g).unwrap(),
            BigRational::new(81.into(), 1000.into())
        );
        assert!(cfg(1, 3)
            .probability(&GameParams::with_ratio(4, 1, 2).unwrap())
            .is_err());
    }

    #[test]
    fn probabilities_normalize() {
        for n in 2..=10usize {
            for (a, b) in [(1, 2), (9, 10), (11, 20), (1, 7), (13, 17)] {
                let g = GameParams::with_ratio(n, a, b).unwrap();
                let total = HatConfig::all(n)
                    .map(|c| c.probability(&g).unwrap())
                    .fold(BigRational::zero(), |acc, x| acc + x);
                assert_eq!(total, BigRational::one());
            }
        }
    }

    #[test]
    fn rejects_out_of_range_code() {
        assert!(HatConfig::new(8, 3).is_err());
        assert!(HatConfig::new(0, 1).is_err());
        assert!(HatConfig::from_score(1, 4, 0, 3).is_err());
    }
}
