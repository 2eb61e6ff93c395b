use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::algebraic::AlgebraicNumber;
use super::poly::ProbPoly;
use crate::adequate::{
    enumerate_adequate, min_cover_optimize, min_das, signature, SearchLimits, Signature,
};
use crate::error::{HatError, Result};
use crate::exact::to_decimal;
use crate::hatcore::GameParams;

fn rat(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// One polynomial piece of the optimal win probability, valid on `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct PsiPiece {
    pub lo: AlgebraicNumber,
    pub hi: AlgebraicNumber,
    pub poly: ProbPoly,
}

/// Optimal win probability as a function of p, piecewise polynomial on `[0, 1]`.
#[derive(Debug, Clone)]
pub struct PiecewisePsi {
    n_players: usize,
    pieces: Vec<PsiPiece>,
}

impl PiecewisePsi {
    pub fn new(
        n_players: usize,
        breakpoints: Vec<AlgebraicNumber>,
        polys: Vec<ProbPoly>,
    ) -> Result<Self> {
        if breakpoints.len() != polys.len() + 1 || polys.is_empty() {
            return Err(HatError::Unsupported(
                "need one more breakpoint than pieces".into(),
            ));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HatError::Unsupported("breakpoints must increase".into()));
        }
        let pieces = polys
            .into_iter()
            .enumerate()
            .map(|(k, poly)| PsiPiece {
                lo: breakpoints[k].clone(),
                hi: breakpoints[k + 1].clone(),
                poly,
            })
            .collect();
        Ok(Self { n_players, pieces })
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn pieces(&self) -> &[PsiPiece] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> Vec<AlgebraicNumber> {
        let mut out: Vec<_> = self.pieces.iter().map(|pc| pc.lo.clone()).collect();
        out.push(self.pieces.last().expect("nonempty").hi.clone());
        out
    }

    /// Index of the first piece whose closed interval contains `p`.
    pub fn piece_index(&self, p: &BigRational) -> Option<usize> {
        let x = AlgebraicNumber::rational(p.clone());
        self.pieces.iter().position(|pc| pc.lo <= x && x <= pc.hi)
    }

    pub fn eval(&self, p: &BigRational) -> Option<BigRational> {
        self.piece_index(p).map(|k| self.pieces[k].poly.eval(p))
    }

    /// Adjacent pieces agree exactly at every interior breakpoint.
    pub fn is_continuous(&self) -> bool {
        self.pieces
            .windows(2)
            .all(|w| w[0].hi.sign_of(&(&w[0].poly - &w[1].poly)) == Ordering::Equal)
    }

    /// Value at p equals value at 1 - p.
    pub fn is_colour_symmetric(&self) -> bool {
        let k = self.pieces.len();
        (0..k).all(|i| {
            let (a, b) = (&self.pieces[i], &self.pieces[k - 1 - i]);
            a.poly.reflect() == b.poly && mirrored(&a.lo, &b.hi)
        })
    }
}

// a == 1 - b
fn mirrored(a: &AlgebraicNumber, b: &AlgebraicNumber) -> bool {
    let image = match b.as_rational() {
        Some(r) => AlgebraicNumber::rational(BigRational::one() - r),
        None => {
            let reflected = b.defining_poly().reflect();
            match AlgebraicNumber::from_isolating(
                &reflected,
                BigRational::one() - b.hi(),
                BigRational::one() - b.lo(),
            ) {
                Some(x) => x,
                None => return false,
            }
        }
    };
    *a == image
}

/// Closed form of the optimal win probability for 2 to 5 players.
pub fn psi_closed_form(n_players: usize) -> Result<PiecewisePsi> {
    let zero = AlgebraicNumber::rational(BigRational::zero());
    let one = AlgebraicNumber::rational(BigRational::one());
    let half = AlgebraicNumber::rational(rat(1, 2));
    match n_players {
        2 => PiecewisePsi::new(2, vec![zero, half, one], vec![ProbPoly::q(), ProbPoly::p()]),
        3 | 4 => PiecewisePsi::new(
            n_players,
            vec![zero, one],
            vec![ProbPoly::from_ints(&[1, -1, 1])],
        ),
        5 => PiecewisePsi::new(
            5,
            vec![
                zero,
                AlgebraicNumber::sqrt2_minus_1(),
                half,
                AlgebraicNumber::two_minus_sqrt2(),
                one,
            ],
            vec![
                ProbPoly::from_ints(&[1, -1, 2, -2, 0, 1]),
                ProbPoly::from_ints(&[0, 5, -10, 6, 1, -1]),
                ProbPoly::from_ints(&[1, -2, 4, 0, -4, 1]),
                ProbPoly::from_ints(&[1, -2, 6, -8, 5, -1]),
            ],
        ),
        n => Err(HatError::Unsupported(format!(
            "no closed form for {n} players"
        ))),
    }
}

/// Optimal win probability by exact global search.
pub fn psi_solver(
    n_players: usize,
    params: &GameParams,
    limits: &SearchLimits,
) -> Result<BigRational> {
    let (_, loss) = min_cover_optimize(n_players, params, None, limits)?;
    Ok(BigRational::one() - loss)
}

/// One row of a sampled curve.
#[derive(Debug, Clone, Serialize)]
pub struct PsiRow {
    pub p: String,
    pub psi: String,
    /// 1-based piece index; breakpoint rows carry the piece to their right.
    pub piece: usize,
    pub breakpoint: bool,
    /// Exact value when p is rational.
    pub p_exact: Option<String>,
    pub psi_exact: Option<String>,
}

const CURVE_DIGITS: usize = 12;

/// Closed-form values on `steps + 1` equally spaced points of `[p_min, p_max]`,
/// with an extra row at every interior breakpoint inside the range.
pub fn psi_curve(
    n_players: usize,
    p_min: &BigRational,
    p_max: &BigRational,
    steps: usize,
) -> Result<Vec<PsiRow>> {
    if !(p_min.is_positive_fraction() && p_max.is_positive_fraction() && p_min < p_max)
        || steps == 0
    {
        return Err(HatError::Unsupported(
            "need 0 < pmin < pmax < 1 and at least one step".into(),
        ));
    }
    let psi = psi_closed_form(n_players)?;
    let mut points: Vec<(AlgebraicNumber, bool)> = (0..=steps)
        .map(|k| {
            let p = p_min + (p_max - p_min) * rat(k as i64, steps as i64);
            (AlgebraicNumber::rational(p), false)
        })
        .collect();
    let (lo, hi) = (
        AlgebraicNumber::rational(p_min.clone()),
        AlgebraicNumber::rational(p_max.clone()),
    );
    let inner = psi.breakpoints();
    for b in &inner[1..inner.len() - 1] {
        if *b >= lo && *b <= hi && !points.iter().any(|(x, _)| x == b) {
            points.push((b.clone(), true));
        } else if let Some(entry) = points.iter_mut().find(|(x, _)| x == b) {
            entry.1 = true;
        }
    }
    points.sort_by(|a, b| a.0.cmp(&b.0));

    let tight = BigRational::new(BigInt::one(), BigInt::from(10).pow(30));
    Ok(points
        .into_iter()
        .map(|(x, breakpoint)| {
            let piece = psi
                .pieces
                .iter()
                .position(|pc| {
                    x >= pc.lo
                        && (x < pc.hi || pc.hi == *psi.breakpoints().last().expect("nonempty"))
                })
                .expect("p lies in [0, 1]");
            let poly = &psi.pieces[piece].poly;
            match x.as_rational() {
                Some(r) => {
                    let v = poly.eval(r);
                    PsiRow {
                        p: to_decimal(r, CURVE_DIGITS),
                        psi: to_decimal(&v, CURVE_DIGITS),
                        piece: piece + 1,
                        breakpoint,
                        p_exact: Some(crate::exact::to_fraction(r)),
                        psi_exact: Some(crate::exact::to_fraction(&v)),
                    }
                }
                None => {
                    let t = x.refined(&tight);
                    let mid = (t.lo() + t.hi()) / BigRational::from_integer(2.into());
                    PsiRow {
                        p: to_decimal(&mid, CURVE_DIGITS),
                        psi: to_decimal(&poly.eval(&mid), CURVE_DIGITS),
                        piece: piece + 1,
                        breakpoint,
                        p_exact: None,
                        psi_exact: None,
                    }
                }
            }
        })
        .collect())
}

trait UnitInterval {
    fn is_positive_fraction(&self) -> bool;
}

impl UnitInterval for BigRational {
    fn is_positive_fraction(&self) -> bool {
        *self > BigRational::zero() && *self < BigRational::one()
    }
}

/// Minimum-size adequate sets of least loss at an exact, possibly irrational, p.
#[derive(Debug, Clone, Serialize)]
pub struct NasoptReport {
    pub das: usize,
    pub count: usize,
    pub signatures: Vec<String>,
}

pub fn nasopt_at(n_players: usize, point: &AlgebraicNumber) -> Result<NasoptReport> {
    let zero = AlgebraicNumber::rational(BigRational::zero());
    let one = AlgebraicNumber::rational(BigRational::one());
    if *point <= zero || *point >= one {
        return Err(HatError::Probability(point.to_string()));
    }
    let das = min_das(n_players)?;
    let sets = enumerate_adequate(n_players, das)?;
    let mut classes: BTreeMap<Signature, usize> = BTreeMap::new();
    for set in &sets {
        *classes.entry(signature(set)).or_default() += 1;
    }
    let polys: Vec<(Signature, ProbPoly, usize)> = classes
        .into_iter()
        .map(|(s, c)| (s.clone(), ProbPoly::from_signature(&s), c))
        .collect();
    let mut best: Vec<usize> = Vec::new();
    for (k, (_, poly, _)) in polys.iter().enumerate() {
        match best.first() {
            None => best.push(k),
            Some(&b) => match point.sign_of(&(poly - &polys[b].1)) {
                Ordering::Less => best = vec![k],
                Ordering::Equal => best.push(k),
                Ordering::Greater => {}
            },
        }
    }
    Ok(NasoptReport {
        das,
        count: best.iter().map(|k| polys[*k].2).sum(),
        signatures: best.iter().map(|k| polys[*k].0.to_string()).collect(),
    })
}

/// Number of probability-optimal adequate sets of minimum size.
pub fn nasopt_count(n_players: usize, point: &AlgebraicNumber) -> Result<usize> {
    Ok(nasopt_at(n_players, point)?.count)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        for n in 2..=5 {
            let psi = psi_closed_form(n).unwrap();
            assert!(psi.is_continuous(), "n={n}");
            assert!(psi.is_colour_symmetric(), "n={n}");
        }
        assert!(psi_closed_form(6).is_err());
        let psi3 = psi_closed_form(3).unwrap();
        let psi4 = psi_closed_form(4).unwrap();
        for k in 1..100 {
            let p = rat(k, 100);
            let alt = rat(3, 4) + (&p - rat(1, 2)) * (&p - rat(1, 2));
            assert_eq!(psi3.eval(&p).unwrap(), alt);
            assert_eq!(psi4.eval(&p), psi3.eval(&p));
        }
        let psi5 = psi_closed_form(5).unwrap();
        assert_eq!(psi5.eval(&rat(1, 2)).unwrap(), rat(25, 32));
        assert_eq!(psi5.eval(&rat(9, 10)).unwrap(), rat(91801, 100000));
        assert_eq!(
            psi_closed_form(2).unwrap().eval(&rat(9, 10)).unwrap(),
            rat(9, 10)
        );
        assert_eq!(psi5.piece_index(&rat(2, 5)), Some(0));
        assert_eq!(psi5.piece_index(&rat(11, 20)), Some(2));
    }

    #[test]
    fn broken_continuity_is_detected() {
        let psi = PiecewisePsi::new(
            2,
            vec![
                AlgebraicNumber::rational(BigRational::zero()),
                AlgebraicNumber::sqrt2_minus_1(),
                AlgebraicNumber::rational(BigRational::one()),
            ],
            vec![ProbPoly::q(), ProbPoly::p()],
        )
        .unwrap();
        assert!(!psi.is_continuous());
        assert!(!psi.is_colour_symmetric());
    }

    #[test]
    fn curve_marks_breakpoints() {
        let rows = psi_curve(5, &rat(1, 100), &rat(99, 100), 98).unwrap();
        assert_eq!(rows.len(), 99 + 2);
        let marked: Vec<_> = rows
            .iter()
            .filter(|r| r.breakpoint)
            .map(|r| r.p.clone())
            .collect();
        assert_eq!(marked, ["0.414213562373", "0.5", "0.585786437627"]);
        let min = rows
            .iter()
            .filter(|r| r.psi_exact.is_some())
            .min_by(|a, b| {
                a.psi
                    .parse::<f64>()
                    .unwrap()
                    .total_cmp(&b.psi.parse::<f64>().unwrap())
            })
            .unwrap();
        assert_eq!((min.p.as_str(), min.psi.as_str()), ("0.5", "0.78125"));
        for k in 0..=98 {
            let (a, b) = (
                &rows.iter().filter(|r| r.p_exact.is_some()).nth(k).unwrap(),
                &rows
                    .iter()
                    .filter(|r| r.p_exact.is_some())
                    .nth(98 - k)
                    .unwrap(),
            );
            assert_eq!(a.psi_exact, b.psi_exact);
        }
        assert!(psi_curve(5, &rat(1, 2), &rat(1, 2), 3).is_err());
    }

    #[test]
    fn nasopt_small() {
        let at = |a, b| nasopt_count(3, &AlgebraicNumber::rational(rat(a, b))).unwrap();
        assert_eq!(at(1, 2), 4);
        assert_eq!(at(9, 10), 3);
        let n4 = nasopt_at(4, &AlgebraicNumber::rational(rat(9, 10))).unwrap();
        assert_eq!(
            (n4.das, n4.count, n4.signatures.as_slice()),
            (4, 24, ["01210".to_string()].as_slice())
        );
    }
}
