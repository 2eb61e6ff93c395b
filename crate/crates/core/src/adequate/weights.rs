use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::hatcore::GameParams;

/// Configuration weights scaled to integers: `p^z q^(N-z) = per_zero[z] / scale`.
#[derive(Debug, Clone)]
pub(crate) struct ScaledWeights {
    pub per_zero: Vec<BigUint>,
    pub scale: BigUint,
}

impl ScaledWeights {
    pub fn new(params: &GameParams) -> Self {
        let n = params.n_players();
        let p = params.p();
        let white = p.numer().to_biguint().expect("p > 0");
        let den = p.denom().to_biguint().expect("positive denominator");
        let black = &den - &white;
        let per_zero = (0..=n)
            .map(|z| num_traits::pow(white.clone(), z) * num_traits::pow(black.clone(), n - z))
            .collect();
        Self {
            per_zero,
            scale: num_traits::pow(den, n),
        }
    }

    pub fn to_rational(&self, scaled: &BigUint) -> BigRational {
        BigRational::new(
            BigInt::from(scaled.clone()),
            BigInt::from(self.scale.clone()),
        )
    }

    /// Sum for a signature histogram.
    pub fn signature_sum(&self, counts: &[u32]) -> BigUint {
        counts
            .iter()
            .zip(&self.per_zero)
            .filter(|(c, _)| **c > 0)
            .fold(BigUint::zero(), |acc, (c, w)| acc + w * *c)
    }

    /// Narrow to `u128` when any sum of up to `2^N` weights fits.
    pub fn as_u128(&self) -> Option<Vec<u128>> {
        let n = self.per_zero.len() - 1;
        let bound = &self.scale << n;
        bound.to_u128()?;
        self.per_zero.iter().map(ToPrimitive::to_u128).collect()
    }
}
