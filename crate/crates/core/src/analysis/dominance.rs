use std::cmp::Ordering;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::algebraic::{real_roots, AlgebraicNumber};
use super::poly::ProbPoly;
use crate::adequate::Signature;
use crate::error::{HatError, Result};

/// The twelve signature classes of minimum-size adequate sets for five players.
pub const FIVE_PLAYER_CLASSES: [&str; 12] = [
    "022210", "013210", "111310", "102310", "012310", "012220", "100420", "120130", "024001",
    "013201", "013111", "031021",
];

/// Crossing points are refined below this width.
pub fn crossing_width() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10).pow(13))
}

/// How the loss polynomial of one class compares with another over an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dominance {
    Equal,
    AlwaysLess,
    AlwaysGreater,
    /// Interior roots of the difference, ascending.
    Crossing(Vec<AlgebraicNumber>),
}

/// Compares `a` and `b` on the open interval `(1/2, 1)`.
pub fn dominance(a: &Signature, b: &Signature) -> Result<Dominance> {
    let half = AlgebraicNumber::rational(BigRational::new(1.into(), 2.into()));
    let one = AlgebraicNumber::rational(BigRational::from_integer(1.into()));
    dominance_on(a, b, &half, &one)
}

/// Compares `a` and `b` on the open interval `(lo, hi)`.
pub fn dominance_on(
    a: &Signature,
    b: &Signature,
    lo: &AlgebraicNumber,
    hi: &AlgebraicNumber,
) -> Result<Dominance> {
    if a.n_players() != b.n_players() {
        return Err(HatError::Unsupported(format!(
            "signatures {a} and {b} have different player counts"
        )));
    }
    if lo >= hi {
        return Err(HatError::Unsupported(format!(
            "empty interval ({lo}, {hi})"
        )));
    }
    let diff = &ProbPoly::from_signature(a) - &ProbPoly::from_signature(b);
    Ok(sign_on(&diff, lo, hi))
}

/// Sign pattern of `diff` on the open interval `(lo, hi)`: `AlwaysLess` means negative throughout.
pub fn sign_on(diff: &ProbPoly, lo: &AlgebraicNumber, hi: &AlgebraicNumber) -> Dominance {
    if diff.is_zero() {
        return Dominance::Equal;
    }
    let width = crossing_width();
    let roots: Vec<AlgebraicNumber> = real_roots(diff, lo.lo(), hi.hi())
        .into_iter()
        .filter(|x| x > lo && x < hi)
        .map(|x| x.refined(&width))
        .collect();
    if !roots.is_empty() {
        return Dominance::Crossing(roots);
    }
    let inside = lo.rational_between(hi);
    match diff.eval(&inside).cmp(&BigRational::from_integer(0.into())) {
        Ordering::Less => Dominance::AlwaysLess,
        Ordering::Greater => Dominance::AlwaysGreater,
        Ordering::Equal => unreachable!("no roots inside the interval"),
    }
}

/// Dominance relations among signature classes over one interval.
#[derive(Debug, Clone)]
pub struct DominanceGraph {
    pub nodes: Vec<Signature>,
    /// `(a, b)`: class `a` has strictly smaller loss than class `b` everywhere.
    pub edges: Vec<(usize, usize)>,
    pub crossings: Vec<(usize, usize, Vec<AlgebraicNumber>)>,
    pub equal: Vec<(usize, usize)>,
}

impl DominanceGraph {
    pub fn build(
        nodes: Vec<Signature>,
        lo: &AlgebraicNumber,
        hi: &AlgebraicNumber,
    ) -> Result<Self> {
        let mut edges = Vec::new();
        let mut crossings = Vec::new();
        let mut equal = Vec::new();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                match dominance_on(&nodes[i], &nodes[j], lo, hi)? {
                    Dominance::AlwaysLess => edges.push((i, j)),
                    Dominance::AlwaysGreater => edges.push((j, i)),
                    Dominance::Crossing(roots) => crossings.push((i, j, roots)),
                    Dominance::Equal => equal.push((i, j)),
                }
            }
        }
        edges.sort_unstable();
        Ok(Self {
            nodes,
            edges,
            crossings,
            equal,
        })
    }

    /// Classes not dominated by any other class.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|v| !self.edges.iter().any(|(_, b)| b == v))
            .collect()
    }

    /// Crossing pairs whose members are both undominated.
    pub fn frontier_crossings(&self) -> Vec<(usize, usize, &[AlgebraicNumber])> {
        let minimal = self.minimal();
        self.crossings
            .iter()
            .filter(|(a, b, _)| minimal.contains(a) && minimal.contains(b))
            .map(|(a, b, r)| (*a, *b, r.as_slice()))
            .collect()
    }

    /// Graphviz rendering; crossing pairs among undominated classes are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph dominance {\n");
        for sig in &self.nodes {
            let _ = writeln!(out, "  \"{sig}\";");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", self.nodes[*a], self.nodes[*b]);
        }
        for (a, b, roots) in self.frontier_crossings() {
            let at: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [dir=none, style=dashed, label=\"{}\"];",
                self.nodes[a],
                self.nodes[b],
                at.join(" ")
            );
        }
        out.push_str("}\n");
        out
    }
}

/// The five-player class graph on `(1/2, 1)`.
pub fn dominance_graph() -> DominanceGraph {
    let nodes = FIVE_PLAYER_CLASSES
        .iter()
        .map(|s| s.parse().expect("class literal"))
        .collect();
    let half = AlgebraicNumber::rational(BigRational::new(1.into(), 2.into()));
    let one = AlgebraicNumber::rational(BigRational::from_integer(1.into()));
    DominanceGraph::build(nodes, &half, &one).expect("classes share a player count")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn factorised_differences() {
        let (p, q) = (ProbPoly::p(), ProbPoly::q());
        let pq = &p - &q;
        let d1 =
            &ProbPoly::from_signature(&sig("022210")) - &ProbPoly::from_signature(&sig("111310"));
        assert_eq!(d1, -&(&q.pow(2) * &pq.pow(2)));
        let d2 =
            &ProbPoly::from_signature(&sig("102310")) - &ProbPoly::from_signature(&sig("120130"));
        let minus_two = BigRational::from_integer((-2).into());
        assert_eq!(d2, (&(&p * &q) * &pq.pow(2)).scale(&minus_two));
        assert_ne!(d2, (&(&p * &q) * &pq.pow(3)).scale(&minus_two));
    }

    #[test]
    fn examples() {
        assert_eq!(
            dominance(&sig("022210"), &sig("111310")).unwrap(),
            Dominance::AlwaysLess
        );
        assert_eq!(
            dominance(&sig("111310"), &sig("022210")).unwrap(),
            Dominance::AlwaysGreater
        );
        assert_eq!(
            dominance(&sig("102310"), &sig("120130")).unwrap(),
            Dominance::AlwaysLess
        );
        assert_eq!(
            dominance(&sig("022210"), &sig("022210")).unwrap(),
            Dominance::Equal
        );
        assert!(dominance(&sig("0110"), &sig("01210")).is_err());
        match dominance(&sig("022210"), &sig("024001")).unwrap() {
            Dominance::Crossing(roots) => {
                assert_eq!(roots.len(), 1);
                assert!(roots[0].width() < crossing_width());
                assert_eq!(roots[0], AlgebraicNumber::two_minus_sqrt2());
            }
            other => panic!("expected a crossing, got {other:?}"),
        }
    }

    #[test]
    fn five_player_graph() {
        let g = dominance_graph();
        assert_eq!(g.nodes.len(), 12);
        assert!(g.equal.is_empty());
        assert_eq!(g.crossings.len(), 19);
        assert_eq!(g.edges.len() + g.crossings.len(), 66);
        let names = |ids: Vec<usize>| {
            ids.into_iter()
                .map(|i| g.nodes[i].to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(g.minimal()), ["022210", "024001"]);
        let frontier = g.frontier_crossings();
        assert_eq!(frontier.len(), 1);
        assert_eq!(
            (
                g.nodes[frontier[0].0].to_string(),
                g.nodes[frontier[0].1].to_string()
            ),
            ("022210".into(), "024001".into())
        );
        let dot = g.to_dot();
        assert!(dot.contains("\"022210\" -> \"111310\";"));
        assert!(dot.contains("style=dashed"));

        let upper = DominanceGraph::build(
            g.nodes.clone(),
            &AlgebraicNumber::two_minus_sqrt2(),
            &AlgebraicNumber::rational(BigRational::from_integer(1.into())),
        )
        .unwrap();
        assert_eq!(names(upper.minimal()), ["022210"]);
        let lower = DominanceGraph::build(
            g.nodes.clone(),
            &AlgebraicNumber::rational(BigRational::new(1.into(), 2.into())),
            &AlgebraicNumber::two_minus_sqrt2(),
        )
        .unwrap();
        assert_eq!(names(lower.minimal()), ["024001"]);
    }
}
