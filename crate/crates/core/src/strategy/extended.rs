use crate::adequate::AdequateSet;
use crate::error::{HatError, Result};
use crate::hatcore::{Decision, DecisionMatrix, HatConfig};

/// Cap on the number of matrices [`all_matrices_for_set`] will produce.
pub const DEFAULT_SOLUTION_LIMIT: usize = 1_000_000;

/// Every Free-less matrix that wins exactly on the configurations outside `set`.
///
/// Each entry is seen by two configurations that differ in the observing
/// player's hat; whether those are winning or losing fixes the entry's domain.
/// Winning configurations additionally need one non-pass entry and losing ones
/// must not win. Solutions come out in ternary order (-1 < 0 < 1, row-major).
pub fn all_matrices_for_set(set: &AdequateSet, limit: usize) -> Result<Vec<DecisionMatrix>> {
    let n = set.n_players();
    let width = 1usize << (n - 1);
    let entries = n * width;
    let bad: Vec<bool> = HatConfig::all(n).map(|c| set.contains(c.code())).collect();

    let mut domains: Vec<Vec<Decision>> = Vec::with_capacity(entries);
    for i in 1..=n {
        for s in 0..width as u32 {
            let white = HatConfig::from_score(i, s, 0, n)?;
            let black = white.flipped(i);
            let dom = match (bad[white.code() as usize], bad[black.code() as usize]) {
                (false, false) => vec![Decision::Pass],
                (false, true) => vec![Decision::Pass, Decision::GuessWhite],
                (true, false) => vec![Decision::GuessBlack, Decision::Pass],
                (true, true) => Decision::CONCRETE.to_vec(),
            };
            domains.push(dom);
        }
    }

    // configurations become checkable once their last entry is assigned
    let mut ready: Vec<Vec<HatConfig>> = vec![Vec::new(); entries];
    for c in HatConfig::all(n) {
        let last = (1..=n)
            .map(|i| (i - 1) * width + c.score(i) as usize)
            .max()
            .expect("n >= 2");
        ready[last].push(c);
    }

    let mut solver = Solver {
        n,
        width,
        domains,
        ready,
        bad,
        limit,
        current: vec![Decision::Pass; entries],
        out: Vec::new(),
    };
    solver.assign(0)?;
    Ok(solver.out)
}

struct Solver {
    n: usize,
    width: usize,
    domains: Vec<Vec<Decision>>,
    ready: Vec<Vec<HatConfig>>,
    bad: Vec<bool>,
    limit: usize,
    current: Vec<Decision>,
    out: Vec<DecisionMatrix>,
}

impl Solver {
    fn assign(&mut self, k: usize) -> Result<()> {
        if k == self.current.len() {
            if self.out.len() == self.limit {
                return Err(HatError::ResourceLimit(format!(
                    "more than {} matrices",
                    self.limit
                )));
            }
            let rows = self
                .current
                .chunks(self.width)
                .map(<[Decision]>::to_vec)
                .collect();
            self.out.push(DecisionMatrix::from_rows(rows)?);
            return Ok(());
        }
        for d in self.domains[k].clone() {
            self.current[k] = d;
            if self.ready[k].iter().all(|c| self.consistent(*c)) {
                self.assign(k + 1)?;
            }
        }
        Ok(())
    }

    fn consistent(&self, c: HatConfig) -> bool {
        let mut guessed = false;
        let mut wrong = false;
        for i in 1..=self.n {
            let d = self.current[(i - 1) * self.width + c.score(i) as usize];
            wrong |= d == Decision::wrong_guess(c.bit(i));
            guessed |= d != Decision::Pass;
        }
        let wins = guessed && !wrong;
        wins != self.bad[c.code() as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adequate::enumerate_adequate;

    #[test]
    fn two_player_counts() {
        let counts: Vec<(Vec<u32>, usize)> = enumerate_adequate(2, 2)
            .unwrap()
            .iter()
            .map(|s| {
                (
                    s.elements().to_vec(),
                    all_matrices_for_set(s, DEFAULT_SOLUTION_LIMIT)
                        .unwrap()
                        .len(),
                )
            })
            .collect();
        assert_eq!(
            counts,
            vec![
                (vec![0, 1], 3),
                (vec![0, 2], 3),
                (vec![0, 3], 9),
                (vec![1, 2], 9),
                (vec![1, 3], 3),
                (vec![2, 3], 3),
            ]
        );
    }

    #[test]
    fn three_player_sets_have_one_matrix_each() {
        for s in enumerate_adequate(3, 2).unwrap() {
            let ms = all_matrices_for_set(&s, DEFAULT_SOLUTION_LIMIT).unwrap();
            assert_eq!(ms, vec![super::super::matrix_from_set(&s)]);
        }
    }

    #[test]
    fn limit_is_enforced() {
        let s = AdequateSet::new(vec![0, 3], 2).unwrap();
        assert!(matches!(
            all_matrices_for_set(&s, 4),
            Err(HatError::ResourceLimit(_))
        ));
    }
}
