use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::config::{insert_bit, HatConfig};
use super::params::{check_players, GameParams};
use crate::error::{HatError, Result};

/// A player's action for one observed score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Decision {
    GuessBlack,
    Pass,
    GuessWhite,
    /// Unconstrained entry produced by matrix synthesis; rendered `*` (3 in JSON).
    Free,
}

impl Decision {
    pub const CONCRETE: [Decision; 3] =
        [Decision::GuessBlack, Decision::Pass, Decision::GuessWhite];

    /// -1, 0, 1, or 3 for [`Decision::Free`].
    pub fn code(self) -> i8 {
        match self {
            Decision::GuessBlack => -1,
            Decision::Pass => 0,
            Decision::GuessWhite => 1,
            Decision::Free => 3,
        }
    }

    pub fn from_code(code: i64) -> Option<Self> {
        match code {
            -1 => Some(Decision::GuessBlack),
            0 => Some(Decision::Pass),
            1 => Some(Decision::GuessWhite),
            3 => Some(Decision::Free),
            _ => None,
        }
    }

    /// The (wrong) guess that a player holding hat `bit` makes in a losing configuration.
    pub fn wrong_guess(bit: u8) -> Self {
        if bit == 0 {
            Decision::GuessBlack
        } else {
            Decision::GuessWhite
        }
    }

    /// True when this decision does not guess wrong against hat `bit`.
    fn allows(self, bit: u8) -> bool {
        self == Decision::Pass || self == Self::wrong_guess(1 - bit)
    }
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decision::Free => f.write_str("*"),
            d => write!(f, "{}", d.code()),
        }
    }
}

impl FromStr for Decision {
    type Err = HatError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "*" => Ok(Decision::Free),
            "-1" => Ok(Decision::GuessBlack),
            "0" => Ok(Decision::Pass),
            "1" | "+1" => Ok(Decision::GuessWhite),
            "3" => Ok(Decision::Free),
            other => Err(HatError::MatrixFormat(format!(
                "unknown decision token {other:?}"
            ))),
        }
    }
}

/// How [`Decision::Free`] entries are read during evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FreeRule {
    #[default]
    AsPass,
    AsBlack,
    AsWhite,
}

impl FreeRule {
    pub const ALL: [FreeRule; 3] = [FreeRule::AsPass, FreeRule::AsBlack, FreeRule::AsWhite];

    fn resolve(self, d: Decision) -> Decision {
        match (d, self) {
            (Decision::Free, FreeRule::AsPass) => Decision::Pass,
            (Decision::Free, FreeRule::AsBlack) => Decision::GuessBlack,
            (Decision::Free, FreeRule::AsWhite) => Decision::GuessWhite,
            (d, _) => d,
        }
    }
}

/// `N x 2^(N-1)` grid of decisions; row = player, column = observed score.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecisionMatrix {
    n_players: usize,
    entries: Vec<Decision>,
}

impl DecisionMatrix {
    /// All-pass matrix.
    pub fn new(n_players: usize) -> Result<Self> {
        check_players(n_players)?;
        Ok(Self {
            n_players,
            entries: vec![Decision::Pass; n_players << (n_players - 1)],
        })
    }

    pub fn from_rows(rows: Vec<Vec<Decision>>) -> Result<Self> {
        let n = rows.len();
        check_players(n)?;
        let width = 1usize << (n - 1);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(HatError::MatrixFormat(format!(
                    "row {} has {} entries, expected {width} for {n} players",
                    i + 1,
                    row.len()
                )));
            }
        }
        Ok(Self {
            n_players: n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from -1/0/1/3 codes, one slice per player.
    pub fn from_codes(rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&c| {
                        Decision::from_code(c)
                            .ok_or_else(|| HatError::MatrixFormat(format!("bad code {c}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    /// Number of columns, `2^(N-1)`.
    pub fn width(&self) -> usize {
        1 << (self.n_players - 1)
    }

    pub fn get(&self, player: usize, score: u32) -> Decision {
        self.entries[(player - 1) * self.width() + score as usize]
    }

    pub fn set(&mut self, player: usize, score: u32, d: Decision) {
        let w = self.width();
        self.entries[(player - 1) * w + score as usize] = d;
    }

    pub fn row(&self, player: usize) -> &[Decision] {
        let w = self.width();
        &self.entries[(player - 1) * w..player * w]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Decision]> {
        self.entries.chunks(self.width())
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Decision] {
        &self.entries
    }

    /// `(player, score)` of every Free entry, row-major.
    pub fn free_positions(&self) -> Vec<(usize, u32)> {
        let w = self.width();
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == Decision::Free)
            .map(|(k, _)| (k / w + 1, (k % w) as u32))
            .collect()
    }

    /// Replaces Free entries (row-major order) with `values`.
    pub fn substitute_free(&self, values: &[Decision]) -> Self {
        let mut out = self.clone();
        let mut it = values.iter();
        for e in out.entries.iter_mut().filter(|e| **e == Decision::Free) {
            *e = *it.next().expect("one substitute per free entry");
        }
        out
    }

    /// Parses the whitespace text format (`#` comment lines allowed).
    pub fn parse_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| {
                l.split_whitespace()
                    .map(str::parse)
                    .collect::<Result<Vec<Decision>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.is_empty() {
            return Err(HatError::MatrixFormat("no rows".into()));
        }
        Self::from_rows(rows)
    }

    /// Text form: one line per player, tokens separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            n_players: self.n_players,
            rows: self
                .rows()
                .enumerate()
                .map(|(i, r)| PlayerRow {
                    player: i + 1,
                    decisions: r.iter().map(|d| d.code()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let mut rows: Vec<&PlayerRow> = json.rows.iter().collect();
        rows.sort_by_key(|r| r.player);
        if rows.iter().enumerate().any(|(i, r)| r.player != i + 1) || rows.len() != json.n_players {
            return Err(HatError::MatrixFormat(
                "rows must cover players 1..=N exactly once".into(),
            ));
        }
        let codes: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.decisions.iter().map(|&c| i64::from(c)).collect())
            .collect();
        let slices: Vec<&[i64]> = codes.iter().map(Vec::as_slice).collect();
        Self::from_codes(&slices)
    }

    /// Applies a player permutation: `perm[i-1]` is the new label of player `i`.
    ///
    /// The result plays on `perm . c` exactly as `self` plays on `c`.
    pub fn permute_players(&self, perm: &[usize]) -> Self {
        let n = self.n_players;
        debug_assert_eq!(perm.len(), n);
        let mut out = self.clone();
        for i in 1..=n {
            for s in 0..self.width() as u32 {
                // any configuration observed by player i as s
                let c = HatConfig::raw(insert_bit(s, n - i, 0), n);
                let moved = permute_config(c, perm);
                let j = perm[i - 1];
                out.set(j, moved.score(j), self.get(i, s));
            }
        }
        out
    }
}

/// `(perm . c)_{perm(i)} = c_i`.
pub(crate) fn permute_config(c: HatConfig, perm: &[usize]) -> HatConfig {
    let n = c.n_players();
    let mut code = 0u32;
    for i in 1..=n {
        code |= u32::from(c.bit(i)) << (n - perm[i - 1]);
    }
    HatConfig::raw(code, n)
}

impl fmt::Display for DecisionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// JSON interchange form of a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n_players: usize,
    pub rows: Vec<PlayerRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerRow {
    pub player: usize,
    pub decisions: Vec<i8>,
}

/// True iff nobody guesses wrong and at least one player guesses.
pub fn wins(matrix: &DecisionMatrix, config: HatConfig, rule: FreeRule) -> Result<bool> {
    if matrix.n_players() != config.n_players() {
        return Err(HatError::DimensionMismatch {
            matrix: matrix.n_players(),
            config: config.n_players(),
        });
    }
    Ok(wins_unchecked(matrix, config, rule))
}

fn wins_unchecked(matrix: &DecisionMatrix, config: HatConfig, rule: FreeRule) -> bool {
    let mut guessed = false;
    for i in 1..=config.n_players() {
        let d = rule.resolve(matrix.get(i, config.score(i)));
        if !d.allows(config.bit(i)) {
            return false;
        }
        guessed |= d != Decision::Pass;
    }
    guessed
}

/// `result[code]` is true when the team wins on that configuration.
pub fn winning_configs(matrix: &DecisionMatrix, rule: FreeRule) -> Vec<bool> {
    HatConfig::all(matrix.n_players())
        .map(|c| wins_unchecked(matrix, c, rule))
        .collect()
}

/// Exact winning probability of `matrix`.
pub fn evaluate_matrix(
    matrix: &DecisionMatrix,
    params: &GameParams,
    rule: FreeRule,
) -> Result<BigRational> {
    let n = matrix.n_players();
    if params.n_players() != n {
        return Err(HatError::DimensionMismatch {
            matrix: n,
            config: params.n_players(),
        });
    }
    let mut by_zeros = vec![0u64; n + 1];
    for c in HatConfig::all(n) {
        if wins_unchecked(matrix, c, rule) {
            by_zeros[c.zeros()] += 1;
        }
    }
    let weights = params.zero_weights();
    Ok(by_zeros
        .iter()
        .zip(&weights)
        .filter(|(k, _)| **k > 0)
        .fold(BigRational::zero(), |acc, (k, w)| {
            acc + w * BigRational::from_integer((*k).into())
        }))
}
