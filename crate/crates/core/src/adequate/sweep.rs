use num_rational::BigRational;
use serde::Serialize;

use super::enumerate::minimal_by_weight;
use super::{
    enumerate_adequate, min_cover_with_size, signature, AdequateSet, ScaledWeights, SearchLimits,
    Signature,
};
use crate::error::{HatError, Result};
use crate::exact::serde_rational;
use crate::hatcore::GameParams;

/// How [`das_sweep`] may search each row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Exhaustive enumeration where feasible, branch and bound elsewhere.
    Auto,
    /// Exhaustive enumeration only; rows outside the feasible regime are an error.
    ExhaustiveOnly,
    /// Cardinality-constrained branch and bound for every row.
    BranchAndBound,
}

/// Minimum-probability adequate set of one fixed size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub das: usize,
    pub signature: Signature,
    #[serde(with = "serde_rational")]
    pub sum: BigRational,
    pub witness: AdequateSet,
}

/// True when `C(2^N, das)` subsets can be enumerated at desk scale.
pub fn exhaustive_feasible(n_players: usize, das: usize) -> bool {
    n_players <= 4 || (n_players == 5 && das <= 9)
}

/// One row per size in `das_range`: the signature and sum of the cheapest
/// adequate set of exactly that size. Sizes below the minimum are skipped.
///
/// With exhaustive search the witness is the lexicographically first optimum.
pub fn das_sweep(
    n_players: usize,
    das_range: std::ops::RangeInclusive<usize>,
    params: &GameParams,
    mode: SweepMode,
    limits: &SearchLimits,
) -> Result<Vec<SweepRow>> {
    if params.n_players() != n_players {
        return Err(HatError::DimensionMismatch {
            matrix: n_players,
            config: params.n_players(),
        });
    }
    let weights = ScaledWeights::new(params);
    let mut rows = Vec::new();
    for das in das_range {
        let exhaustive = match mode {
            SweepMode::BranchAndBound => false,
            SweepMode::Auto => exhaustive_feasible(n_players, das),
            SweepMode::ExhaustiveOnly if exhaustive_feasible(n_players, das) => true,
            SweepMode::ExhaustiveOnly => {
                return Err(HatError::ResourceLimit(format!(
                    "das={das} for N={n_players} is beyond exhaustive enumeration; allow branch and bound"
                )))
            }
        };
        let found = if exhaustive {
            let (best, sum) = minimal_by_weight(enumerate_adequate(n_players, das)?, &weights);
            best.into_iter().next().map(|w| (w, sum))
        } else {
            match min_cover_with_size(n_players, params, das, limits) {
                Ok(hit) => Some(hit),
                Err(HatError::NoAdequateSet { .. }) => None,
                Err(e) => return Err(e),
            }
        };
        if let Some((witness, sum)) = found {
            rows.push(SweepRow {
                das,
                signature: signature(&witness),
                sum,
                witness,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigs(rows: &[SweepRow]) -> Vec<String> {
        rows.iter().map(|r| r.signature.to_string()).collect()
    }

    #[test]
    fn n3_table() {
        let g = GameParams::with_ratio(3, 9, 10).unwrap();
        let rows = das_sweep(3, 1..=8, &g, SweepMode::Auto, &SearchLimits::default()).unwrap();
        assert_eq!(rows[0].das, 2);
        // columns are zero counts 0..3, i.e. q^3, q^2 p, q p^2, p^3
        assert_eq!(
            sigs(&rows),
            ["0110", "1110", "1210", "1310", "1320", "1330", "1331"]
        );
    }

    #[test]
    fn n2_table() {
        let g = GameParams::with_ratio(2, 9, 10).unwrap();
        let rows = das_sweep(2, 2..=4, &g, SweepMode::Auto, &SearchLimits::default()).unwrap();
        assert_eq!(sigs(&rows), ["110", "120", "121"]);
    }

    #[test]
    fn modes_agree() {
        let g = GameParams::with_ratio(4, 7, 10).unwrap();
        let lim = SearchLimits::default();
        let a = das_sweep(4, 4..=16, &g, SweepMode::ExhaustiveOnly, &lim).unwrap();
        let b = das_sweep(4, 4..=16, &g, SweepMode::BranchAndBound, &lim).unwrap();
        let sums = |rows: &[SweepRow]| rows.iter().map(|r| r.sum.clone()).collect::<Vec<_>>();
        assert_eq!(sums(&a), sums(&b));
        assert_eq!(sigs(&a), sigs(&b));
    }

    #[test]
    fn exhaustive_only_refuses_large_rows() {
        let g = GameParams::with_ratio(5, 9, 10).unwrap();
        let err = das_sweep(
            5,
            10..=10,
            &g,
            SweepMode::ExhaustiveOnly,
            &SearchLimits::default(),
        );
        assert!(matches!(err, Err(HatError::ResourceLimit(_))));
    }
}
