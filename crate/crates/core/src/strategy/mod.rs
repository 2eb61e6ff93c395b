//! Decision matrices from adequate sets, brute-force oracles for small N, and
//! reduction modulo relabelling of the players.

mod brute;
mod extended;

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::adequate::AdequateSet;
use crate::hatcore::{evaluate_matrix, Decision, DecisionMatrix, FreeRule, GameParams};

pub use brute::{brute_force_optimal, BruteForceResult};
pub use extended::{all_matrices_for_set, DEFAULT_SOLUTION_LIMIT};

/// Strategy whose losing configurations are the members of `set`.
///
/// Each member writes the wrong guess `2b - 1` into the entry its players
/// observe; an entry written with both signs becomes [`Decision::Free`].
pub fn matrix_from_set(set: &AdequateSet) -> DecisionMatrix {
    let n = set.n_players();
    let mut m = DecisionMatrix::new(n).expect("set size already validated");
    for c in set.configs() {
        for i in 1..=n {
            let s = c.score(i);
            let guess = Decision::wrong_guess(c.bit(i));
            let d = if m.get(i, s) == Decision::Pass {
                guess
            } else {
                Decision::Free
            };
            m.set(i, s, d);
        }
    }
    m
}

/// Every permutation of `1..=n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                prefix.push(k + 1);
                go(prefix, used, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Smallest image of `m` under all player relabellings.
pub fn canonical_form(m: &DecisionMatrix) -> DecisionMatrix {
    permutations(m.n_players())
        .iter()
        .map(|p| m.permute_players(p))
        .min()
        .expect("at least the identity")
}

/// Groups `matrices` into classes that differ only by relabelling players and
/// returns the smallest input member of each class, in order of first appearance.
pub fn dedupe_player_permutation(matrices: &[DecisionMatrix]) -> Vec<DecisionMatrix> {
    let mut class_of: HashMap<DecisionMatrix, usize> = HashMap::new();
    let mut reps: Vec<DecisionMatrix> = Vec::new();
    for m in matrices {
        let key = canonical_form(m);
        match class_of.get(&key) {
            Some(&k) => {
                if *m < reps[k] {
                    reps[k] = m.clone();
                }
            }
            None => {
                class_of.insert(key, reps.len());
                reps.push(m.clone());
            }
        }
    }
    reps
}

/// Largest number of Free entries checked by full enumeration of substitutions.
pub const FREE_EXHAUSTIVE_MAX: usize = 12;
const FREE_RANDOM_SAMPLES: usize = 2000;

/// True when the value of `matrix` is the same for every concrete substitution
/// of its Free entries.
///
/// Up to [`FREE_EXHAUSTIVE_MAX`] Free entries every substitution is tried;
/// beyond that each entry is varied alone and a fixed-seed sample of joint
/// substitutions is checked.
pub fn free_invariance_check(matrix: &DecisionMatrix, params: &GameParams) -> bool {
    let frees = matrix.free_positions().len();
    if frees == 0 {
        return true;
    }
    let Ok(base) = evaluate_matrix(matrix, params, FreeRule::AsPass) else {
        return false;
    };
    let same = |values: &[Decision]| {
        evaluate_matrix(&matrix.substitute_free(values), params, FreeRule::AsPass)
            .is_ok_and(|v| v == base)
    };
    if frees <= FREE_EXHAUSTIVE_MAX {
        let mut values = vec![Decision::GuessBlack; frees];
        let total = 3usize.pow(frees as u32);
        return (0..total).all(|mut t| {
            for v in values.iter_mut() {
                *v = Decision::CONCRETE[t % 3];
                t /= 3;
            }
            same(&values)
        });
    }
    for k in 0..frees {
        for d in [Decision::GuessBlack, Decision::GuessWhite] {
            let mut values = vec![Decision::Pass; frees];
            values[k] = d;
            if !same(&values) {
                return false;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed);
    (0..FREE_RANDOM_SAMPLES).all(|_| {
        let values: Vec<Decision> = (0..frees)
            .map(|_| Decision::CONCRETE[rng.gen_range(0..3)])
            .collect();
        same(&values)
    })
}
