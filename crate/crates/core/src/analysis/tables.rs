use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::adequate::min_das;
use crate::error::{HatError, Result};
use crate::exact::{round_half_even, serde_rational};

/// Known minimum sizes K(N, 1) of binary radius-one covering codes.
pub const K_TABLE: [(usize, usize); 8] = [
    (2, 2),
    (3, 2),
    (4, 4),
    (5, 7),
    (6, 12),
    (7, 16),
    (8, 32),
    (9, 62),
];

/// Largest player count for which the covering check recomputes the minimum size.
pub const COVERING_COMPUTE_MAX_N: usize = 5;

pub fn k_value(n_players: usize) -> Option<usize> {
    K_TABLE
        .iter()
        .find(|(n, _)| *n == n_players)
        .map(|(_, k)| *k)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    pub n_players: usize,
    pub k_table: usize,
    /// Recomputed minimum adequate-set size, when feasible.
    pub computed: Option<usize>,
    /// Optimal win probability of the symmetric game, 1 - K/2^N.
    #[serde(with = "serde_rational")]
    pub symmetric_psi: BigRational,
}

impl CoveringReport {
    pub fn agrees(&self) -> Option<bool> {
        self.computed.map(|c| c == self.k_table)
    }
}

pub fn covering_check(n_players: usize) -> Result<CoveringReport> {
    let k = k_value(n_players).ok_or_else(|| {
        HatError::Unsupported(format!(
            "no covering-code size on record for {n_players} players"
        ))
    })?;
    let computed = if n_players <= COVERING_COMPUTE_MAX_N {
        Some(min_das(n_players)?)
    } else {
        None
    };
    let symmetric_psi =
        BigRational::one() - BigRational::new(BigInt::from(k), BigInt::one() << n_players);
    Ok(CoveringReport {
        n_players,
        k_table: k,
        computed,
        symmetric_psi,
    })
}

/// Strategy-space sizes for one player count.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexityRow {
    pub n_players: usize,
    pub das: usize,
    /// All decision matrices, 3^(N 2^(N-1)).
    #[serde(serialize_with = "decimal_string")]
    pub brute_force: BigUint,
    /// Reduced matrix space, 3^(N (2^(N-1) - 2)).
    #[serde(serialize_with = "decimal_string")]
    pub reduced: BigUint,
    /// Candidate sets, C(2^N, das).
    #[serde(serialize_with = "decimal_string")]
    pub adequate_sets: BigUint,
}

impl ComplexityRow {
    /// Columns as printed: exact below ten million, otherwise two significant digits.
    pub fn display_cells(&self) -> [String; 3] {
        [
            display_count(&self.brute_force),
            display_count(&self.reduced),
            display_count(&self.adequate_sets),
        ]
    }
}

fn decimal_string<S: serde::Serializer>(
    value: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(value)
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

pub fn complexity_row(n_players: usize) -> Result<ComplexityRow> {
    let das = k_value(n_players).ok_or_else(|| {
        HatError::Unsupported(format!(
            "no covering-code size on record for {n_players} players"
        ))
    })?;
    let half = 1u64 << (n_players - 1);
    let three = BigUint::from(3u8);
    Ok(ComplexityRow {
        n_players,
        das,
        brute_force: Pow::pow(&three, half * n_players as u64),
        reduced: Pow::pow(&three, (half - 2) * n_players as u64),
        adequate_sets: binomial(1 << n_players, das as u64),
    })
}

/// Rows for every player count in `range` (each must have a known covering size).
pub fn complexity_table(range: std::ops::RangeInclusive<usize>) -> Result<Vec<ComplexityRow>> {
    range.map(complexity_row).collect()
}

/// `d.dE+X` with the mantissa rounded half to even.
pub fn scientific(value: &BigUint, digits: usize) -> String {
    assert!(digits >= 1);
    if value.is_zero() {
        return format!("{:.*}E+0", digits - 1, 0.0);
    }
    let mut exp = value.to_string().len() - 1;
    let ten = BigInt::from(10);
    let scale = Pow::pow(&ten, exp);
    let mut mantissa = round_half_even(
        &(BigRational::new(
            BigInt::from(value.clone()) * Pow::pow(&ten, digits - 1),
            scale,
        )),
    );
    if mantissa >= Pow::pow(&ten, digits) {
        mantissa = mantissa.div_floor(&ten);
        exp += 1;
    }
    let m = mantissa.to_string();
    if digits == 1 {
        format!("{m}E+{exp}")
    } else {
        format!("{}.{}E+{exp}", &m[..1], &m[1..])
    }
}

const EXACT_DISPLAY_LIMIT: u64 = 10_000_000;

pub fn display_count(value: &BigUint) -> String {
    if *value < BigUint::from(EXACT_DISPLAY_LIMIT) {
        value.to_string()
    } else {
        scientific(value, 2)
    }
}
