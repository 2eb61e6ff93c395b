use crate::hatcore::HatConfig;

/// Bitset over all `2^N` configurations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverageMask {
    n_players: usize,
    words: Vec<u64>,
}

impl CoverageMask {
    pub fn empty(n_players: usize) -> Self {
        let bits = 1usize << n_players;
        Self {
            n_players,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    fn len(&self) -> usize {
        1 << self.n_players
    }

    pub fn insert(&mut self, code: u32) {
        self.words[code as usize / 64] |= 1 << (code % 64);
    }

    pub fn contains(&self, code: u32) -> bool {
        self.words[code as usize / 64] >> (code % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &CoverageMask) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// `self = a | b` without reallocating.
    pub(crate) fn assign_union(&mut self, a: &CoverageMask, b: &CoverageMask) {
        for ((o, x), y) in self.words.iter_mut().zip(&a.words).zip(&b.words) {
            *o = x | y;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len()
    }

    /// Lowest configuration code not in the mask.
    pub fn first_missing(&self) -> Option<u32> {
        let len = self.len();
        for (k, w) in self.words.iter().enumerate() {
            if *w != u64::MAX {
                let bit = (!w).trailing_zeros() as usize + 64 * k;
                return (bit < len).then_some(bit as u32);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len() as u32).filter(|&c| self.contains(c))
    }
}

/// The configuration together with its N single-flip neighbours.
pub fn ball_mask(config: HatConfig) -> CoverageMask {
    let n = config.n_players();
    let mut m = CoverageMask::empty(n);
    m.insert(config.code());
    for bit in 0..n {
        m.insert(config.code() ^ (1 << bit));
    }
    m
}

/// Codes of the radius-1 ball around `code`, ascending.
pub(crate) fn ball_codes(code: u32, n_players: usize) -> Vec<u32> {
    let mut v: Vec<u32> = std::iter::once(code)
        .chain((0..n_players).map(|b| code ^ (1 << b)))
        .collect();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_balls() {
        let m = ball_mask(HatConfig::new(0, 3).unwrap());
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![0, 1, 2, 4]);
        let m = ball_mask(HatConfig::new(7, 3).unwrap());
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![3, 5, 6, 7]);
        for n in 2..=8 {
            for c in HatConfig::all(n) {
                assert_eq!(ball_mask(c).count(), n + 1);
            }
        }
    }

    #[test]
    fn first_missing_spans_words() {
        let mut m = CoverageMask::empty(7);
        for c in 0..100 {
            m.insert(c);
        }
        assert_eq!(m.first_missing(), Some(100));
        for c in 100..128 {
            m.insert(c);
        }
        assert!(m.is_full());
        assert_eq!(m.first_missing(), None);
        let mut small = CoverageMask::empty(2);
        for c in 0..4 {
            small.insert(c);
        }
        assert!(small.is_full());
        assert_eq!(small.first_missing(), None);
    }
}
