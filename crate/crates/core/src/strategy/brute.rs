use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::adequate::ScaledWeights;
use crate::error::{HatError, Result};
use crate::hatcore::{Decision, DecisionMatrix, GameParams, HatConfig};

/// Exact optimum over all Free-less strategies and every matrix attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceResult {
    pub max: BigRational,
    /// Ternary-counter order: player 1's row is the most significant, and
    /// within a row score 0 is the most significant digit (-1 < 0 < 1).
    pub matrices: Vec<DecisionMatrix>,
    /// Number of strategies examined, `3^(N 2^(N-1))`.
    pub examined: u64,
}

/// Largest N accepted by [`brute_force_optimal`].
pub const BRUTE_FORCE_MAX_N: usize = 3;

/// Examines every matrix over {-1, 0, 1}. Work is split by player 1's row.
pub fn brute_force_optimal(n_players: usize, params: &GameParams) -> Result<BruteForceResult> {
    if !(2..=BRUTE_FORCE_MAX_N).contains(&n_players) {
        return Err(HatError::Unsupported(format!(
            "brute force is limited to N in 2..={BRUTE_FORCE_MAX_N}, got {n_players}"
        )));
    }
    if params.n_players() != n_players {
        return Err(HatError::DimensionMismatch {
            matrix: n_players,
            config: params.n_players(),
        });
    }
    let width = 1usize << (n_players - 1);
    let entries = n_players * width;
    let rest_entries = entries - width;
    let weights = ScaledWeights::new(params);

    // configuration -> (entry index, own bit) for each player
    let touches: Vec<Vec<(usize, u8)>> = HatConfig::all(n_players)
        .map(|c| {
            (1..=n_players)
                .map(|i| ((i - 1) * width + c.score(i) as usize, c.bit(i)))
                .collect()
        })
        .collect();
    let zeros: Vec<usize> = HatConfig::all(n_players).map(|c| c.zeros()).collect();
    let mask_value = |mask: u32| -> BigUint {
        (0..zeros.len())
            .filter(|k| mask >> k & 1 == 1)
            .fold(BigUint::zero(), |acc, k| acc + &weights.per_zero[zeros[k]])
    };
    let mask_values: Vec<BigUint> = (0..1u32 << (1 << n_players)).map(mask_value).collect();

    let first_rows = 3u64.pow(width as u32);
    let rest = 3u64.pow(rest_entries as u32);
    let chunks: Vec<(usize, Vec<u64>)> = (0..first_rows)
        .into_par_iter()
        .map(|head| {
            let mut digits = vec![0i8; entries];
            let mut best = 0usize;
            let mut hits = Vec::new();
            for tail in 0..rest {
                let code = head * rest + tail;
                decode(code, &mut digits);
                let mut mask = 0u32;
                for (k, t) in touches.iter().enumerate() {
                    if wins(&digits, t) {
                        mask |= 1 << k;
                    }
                }
                let m = mask as usize;
                if hits.is_empty() || mask_values[m] > mask_values[best] {
                    best = m;
                    hits.clear();
                    hits.push(code);
                } else if mask_values[m] == mask_values[best] {
                    hits.push(code);
                }
            }
            (best, hits)
        })
        .collect();

    let top = chunks
        .iter()
        .map(|(m, _)| &mask_values[*m])
        .max()
        .expect("nonempty strategy space")
        .clone();
    let mut digits = vec![0i8; entries];
    let matrices = chunks
        .into_iter()
        .filter(|(m, _)| mask_values[*m] == top)
        .flat_map(|(_, codes)| codes)
        .map(|code| {
            decode(code, &mut digits);
            let rows: Vec<Vec<Decision>> = digits
                .chunks(width)
                .map(|r| {
                    r.iter()
                        .map(|d| Decision::CONCRETE[(*d + 1) as usize])
                        .collect()
                })
                .collect();
            DecisionMatrix::from_rows(rows).expect("rectangular")
        })
        .collect();
    Ok(BruteForceResult {
        max: weights.to_rational(&top),
        matrices,
        examined: first_rows * rest,
    })
}

/// Ternary digits of `code`, most significant first, mapped to -1/0/1.
fn decode(mut code: u64, digits: &mut [i8]) {
    for d in digits.iter_mut().rev() {
        *d = (code % 3) as i8 - 1;
        code /= 3;
    }
}

fn wins(digits: &[i8], touches: &[(usize, u8)]) -> bool {
    let mut guessed = false;
    for &(k, bit) in touches {
        let d = digits[k];
        // white hat (0) needs -1 avoided, black hat (1) needs +1 avoided
        if (bit == 0 && d < 0) || (bit == 1 && d > 0) {
            return false;
        }
        guessed |= d != 0;
    }
    guessed
}
