use hatgame::adequate::{
    ball_mask, is_adequate, min_cover_with_size, signature, SearchLimits, Signature,
};
use hatgame::analysis::{
    nasopt_at, psi_closed_form, psi_solver, sign_on, AlgebraicNumber, Dominance, ProbPoly,
};
use hatgame::hatcore::{GameParams, HatConfig};
use num_rational::BigRational;

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn rational(a: i64, b: i64) -> AlgebraicNumber {
    AlgebraicNumber::rational(r(a, b))
}

#[test]
fn solver_matches_closed_form_on_grid() {
    let limits = SearchLimits::default();
    for n in 2..=5 {
        let psi = psi_closed_form(n).unwrap();
        for k in 1..100 {
            let p = r(k, 100);
            let params = GameParams::new(n, p.clone()).unwrap();
            assert_eq!(
                psi_solver(n, &params, &limits).unwrap(),
                psi.eval(&p).unwrap(),
                "n={n} p={p}"
            );
        }
    }
}

type Regime<'a> = (&'a [(i64, i64)], &'a [&'a str]);

#[test]
fn optimal_classes_are_constant_on_each_regime() {
    let regimes: [Regime; 4] = [
        (&[(1, 10), (1, 4), (2, 5)], &["012220"]),
        (&[(21, 50), (9, 20), (49, 100)], &["100420"]),
        (&[(51, 100), (11, 20), (29, 50)], &["024001"]),
        (&[(3, 5), (3, 4), (9, 10)], &["022210"]),
    ];
    let psi = psi_closed_form(5).unwrap();
    for (k, (points, expected)) in regimes.iter().enumerate() {
        let mut seen = Vec::new();
        for (a, b) in points.iter() {
            let report = nasopt_at(5, &rational(*a, *b)).unwrap();
            assert_eq!(psi.piece_index(&r(*a, *b)), Some(k));
            seen.push((report.count, report.signatures));
        }
        assert!(
            seen.windows(2).all(|w| w[0] == w[1]),
            "regime {k}: {seen:?}"
        );
        assert_eq!(seen[0].1, *expected);
    }
}

#[test]
fn nasopt_at_breakpoints() {
    assert_eq!(nasopt_at(5, &rational(11, 20)).unwrap().count, 10);
    assert_eq!(nasopt_at(5, &rational(9, 10)).unwrap().count, 30);
    let at = nasopt_at(5, &AlgebraicNumber::two_minus_sqrt2()).unwrap();
    assert_eq!(
        (at.count, at.signatures),
        (40, vec!["022210".to_string(), "024001".to_string()])
    );
    // colour-swapped counterparts below one half
    assert_eq!(nasopt_at(5, &rational(9, 20)).unwrap().count, 10);
    assert_eq!(nasopt_at(5, &rational(1, 10)).unwrap().count, 30);
    assert_eq!(
        nasopt_at(5, &AlgebraicNumber::sqrt2_minus_1())
            .unwrap()
            .count,
        40
    );
    assert_eq!(nasopt_at(5, &rational(1, 2)).unwrap().count, 320);
}

#[test]
fn step_from_17_to_18_is_positive() {
    let (p, q) = (ProbPoly::p(), ProbPoly::q());
    let lo = rational(1, 2);
    let hi = AlgebraicNumber::two_minus_sqrt2();
    let step = &(&q.pow(2) * &p.pow(3)).scale(&r(2, 1)) - &p.pow(5);
    assert_eq!(sign_on(&step, &lo, &hi), Dominance::AlwaysGreater);
    // the step sits below q^2p^3 but not above q^3p^2: the two meet at 1/2 and
    // the step falls faster
    assert_eq!(
        sign_on(&(&(&q.pow(3) * &p.pow(2)) - &step), &lo, &hi),
        Dominance::AlwaysGreater
    );
    assert_eq!(
        sign_on(&(&step - &(&q.pow(2) * &p.pow(3))), &lo, &hi),
        Dominance::AlwaysLess
    );
    // the inequality fails once p passes 2 - sqrt2 by a margin
    assert!(matches!(
        sign_on(&step, &lo, &rational(9, 10)),
        Dominance::Crossing(_)
    ));
}

#[test]
fn printed_high_das_rows_cannot_cover_all_white() {
    // all-white is only covered by configurations with at least four white hats
    let all_white = HatConfig::new(0, 5).unwrap();
    assert!(ball_mask(all_white)
        .iter()
        .all(|c| HatConfig::new(c, 5).unwrap().zeros() >= 4));
    let params = GameParams::with_ratio(5, 11, 20).unwrap();
    let limits = SearchLimits::default();
    for (das, printed) in [
        (18, "1-5-10-2-0-0"),
        (22, "1-5-10-6-0-0"),
        (26, "1-5-10-10-0-0"),
    ] {
        let printed: Signature = printed.parse().unwrap();
        assert_eq!(printed.total() as usize, das);
        assert_eq!(printed.counts()[4] + printed.counts()[5], 0);
        let (set, _) = min_cover_with_size(5, &params, das, &limits).unwrap();
        assert!(is_adequate(set.elements(), 5).unwrap());
        assert_ne!(signature(&set), printed);
    }
}
