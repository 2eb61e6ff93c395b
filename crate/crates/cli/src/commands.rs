use std::fmt::Write as _;
use std::ops::RangeInclusive;

use hatgame::adequate::{
    das_sweep, enumerate_adequate, min_cover_optimize, min_das, optimal_sets, set_probability,
    signature, AdequateSet, SearchLimits, SweepMode,
};
use hatgame::analysis::{
    complexity_table, covering_check, dominance_on, nasopt_at, psi_curve, AlgebraicNumber,
    Dominance, DominanceGraph, FIVE_PLAYER_CLASSES,
};
use hatgame::exact::parse_rational;
use hatgame::hatcore::{evaluate_matrix, DecisionMatrix, FreeRule, GameParams, MatrixJson};
use hatgame::strategy::{
    all_matrices_for_set, brute_force_optimal, dedupe_player_permutation, free_invariance_check,
    matrix_from_set, DEFAULT_SOLUTION_LIMIT,
};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::output::{both, csv, decimal, fraction, json, parse_point, point_label};
use crate::{CliError, Command, Format, FreeRuleArg, SortKey, SweepModeArg};

/// Largest N for which `solve` guarantees a global optimum.
const SOLVE_MAX_N: usize = 5;
/// Largest N for which `solve --all-matrices` runs.
const ALL_MATRICES_MAX_N: usize = 3;

pub fn run(command: &Command, format: Format) -> Result<String, CliError> {
    if format == Format::Dot && !matches!(command, Command::Dominance { pair: None, .. }) {
        return Err(CliError::Usage(
            "--format dot is only available for the dominance graph".into(),
        ));
    }
    match command {
        Command::Enumerate { n, das, p, sort } => enumerate(*n, *das, p, *sort, format),
        Command::Solve {
            n,
            p,
            all_matrices,
            max_nodes,
        } => solve(*n, p, *all_matrices, limits(*max_nodes), format),
        Command::Evaluate {
            n,
            p,
            matrix,
            free_rule,
        } => {
            let text = std::fs::read_to_string(matrix)
                .map_err(|e| CliError::Usage(format!("{}: {e}", matrix.display())))?;
            evaluate(*n, p, &text, *free_rule, format)
        }
        Command::Brute { n, p } => brute(*n, p, format),
        Command::Psi {
            n,
            pmin,
            pmax,
            steps,
        } => psi(*n, pmin, pmax, *steps, format),
        Command::Dominance { from, to, pair } => dominance(from, to, pair.as_deref(), format),
        Command::Nasopt { n, p } => nasopt(*n, p, format),
        Command::Complexity { from, to } => complexity(*from..=*to, format),
        Command::Covering { n } => covering(*n, format),
        Command::Sweep {
            n,
            das_range,
            p,
            mode,
            max_nodes,
        } => sweep(*n, das_range, p, *mode, limits(*max_nodes), format),
    }
}

fn limits(max_nodes: Option<u64>) -> SearchLimits {
    max_nodes.map_or_else(SearchLimits::default, |max_nodes| SearchLimits {
        max_nodes,
    })
}

fn elements_text(set: &AdequateSet, sep: &str) -> String {
    set.elements()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn matrix_inline(m: &DecisionMatrix) -> String {
    m.to_text().lines().collect::<Vec<_>>().join("/")
}

#[derive(Serialize)]
struct SetEntry {
    elements: Vec<u32>,
    sum: String,
    sum_exact: String,
    zeros: Vec<usize>,
}

#[derive(Serialize)]
struct EnumerateJson {
    n_players: usize,
    das: usize,
    p: String,
    p_exact: String,
    nas: usize,
    nasopt: usize,
    sets: Vec<SetEntry>,
}

fn enumerate(
    n: usize,
    das: usize,
    p: &str,
    sort: SortKey,
    format: Format,
) -> Result<String, CliError> {
    let params = GameParams::parse(n, p)?;
    let sets = enumerate_adequate(n, das)?;
    let mut rows: Vec<(AdequateSet, BigRational)> = sets
        .into_iter()
        .map(|s| {
            let v = set_probability(&s, &params)?;
            Ok((s, v))
        })
        .collect::<hatgame::Result<_>>()?;
    if sort == SortKey::Sum {
        rows.sort_by(|a, b| a.1.cmp(&b.1));
    }
    let nasopt = match rows.iter().map(|r| &r.1).min() {
        Some(min) => rows.iter().filter(|r| r.1 == *min).count(),
        None => 0,
    };
    match format {
        Format::Text => {
            let mut out = format!(
                "N={n}, das={das}, p={}, nas={}, nasopt={nasopt}\n\n",
                decimal(params.p()),
                rows.len()
            );
            let idx: Vec<String> = (1..=das).map(|k| format!("i{k}")).collect();
            let zeros: Vec<String> = (1..=das).map(|k| format!("0,bin.i{k}")).collect();
            let _ = writeln!(out, "{}\tsum\t{}", idx.join("\t"), zeros.join("\t"));
            for (set, sum) in &rows {
                let z: Vec<String> = set.zero_counts().iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}",
                    elements_text(set, "\t"),
                    decimal(sum),
                    z.join("\t")
                );
            }
            Ok(out)
        }
        Format::Csv => {
            let mut header: Vec<String> = (1..=das).map(|k| format!("i{k}")).collect();
            header.push("sum".into());
            header.push("sum_exact".into());
            header.extend((1..=das).map(|k| format!("zeros_i{k}")));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv(
                &header,
                rows.iter().map(|(set, sum)| {
                    let mut rec: Vec<String> = set.elements().iter().map(u32::to_string).collect();
                    rec.push(decimal(sum));
                    rec.push(fraction(sum));
                    rec.extend(set.zero_counts().iter().map(usize::to_string));
                    rec
                }),
            )
        }
        _ => json(&EnumerateJson {
            n_players: n,
            das,
            p: decimal(params.p()),
            p_exact: fraction(params.p()),
            nas: rows.len(),
            nasopt,
            sets: rows
                .iter()
                .map(|(set, sum)| SetEntry {
                    elements: set.elements().to_vec(),
                    sum: decimal(sum),
                    sum_exact: fraction(sum),
                    zeros: set.zero_counts(),
                })
                .collect(),
        }),
    }
}

#[derive(Serialize)]
struct SolvedSet {
    elements: Vec<u32>,
    signature: String,
    loss: String,
    loss_exact: String,
    matrix: MatrixJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    all_matrices: Option<Vec<MatrixJson>>,
}

#[derive(Serialize)]
struct SolveJson {
    n_players: usize,
    p: String,
    p_exact: String,
    psi: String,
    psi_exact: String,
    das: usize,
    nasopt: usize,
    sets: Vec<SolvedSet>,
}

fn solve(
    n: usize,
    p: &str,
    all: bool,
    limits: SearchLimits,
    format: Format,
) -> Result<String, CliError> {
    let params = GameParams::parse(n, p)?;
    if n > SOLVE_MAX_N {
        return Err(CliError::Limit(format!(
            "solve guarantees optimality only up to N={SOLVE_MAX_N}"
        )));
    }
    if all && n > ALL_MATRICES_MAX_N {
        return Err(CliError::Limit(format!(
            "--all-matrices is limited to N <= {ALL_MATRICES_MAX_N}"
        )));
    }
    let (witness, loss) = min_cover_optimize(n, &params, None, &limits)?;
    let das = min_das(n)?;
    let (at_min, min) = optimal_sets(n, &params, das)?;
    let sets = if min == loss { at_min } else { vec![witness] };
    let psi = BigRational::one() - &loss;

    let mut solved = Vec::with_capacity(sets.len());
    for set in &sets {
        let matrix = matrix_from_set(set);
        let every = if all {
            Some(all_matrices_for_set(set, DEFAULT_SOLUTION_LIMIT)?)
        } else {
            None
        };
        solved.push((set, signature(set), matrix, every));
    }

    match format {
        Format::Text => {
            let mut out = format!("N={n} p={}\n", decimal(params.p()));
            let _ = writeln!(out, "psi {}", both(&psi));
            let _ = writeln!(out, "loss {}", both(&loss));
            let _ = writeln!(out, "das {}", sets[0].len());
            let _ = writeln!(out, "nasopt {}", sets.len());
            for (set, sig, matrix, every) in &solved {
                let _ = writeln!(out, "\n# set {set} signature {sig} loss {}", decimal(&loss));
                out.push_str(&matrix.to_text());
                if let Some(every) = every {
                    let _ = writeln!(out, "# {} matrices realise {set}", every.len());
                    for (k, m) in every.iter().enumerate() {
                        let _ = writeln!(out, "# {set} matrix {}", k + 1);
                        out.push_str(&m.to_text());
                    }
                }
            }
            Ok(out)
        }
        Format::Csv => csv(
            &[
                "elements",
                "signature",
                "loss",
                "loss_exact",
                "psi",
                "psi_exact",
                "matrix",
            ],
            solved.iter().map(|(set, sig, matrix, _)| {
                vec![
                    elements_text(set, " "),
                    sig.to_string(),
                    decimal(&loss),
                    fraction(&loss),
                    decimal(&psi),
                    fraction(&psi),
                    matrix_inline(matrix),
                ]
            }),
        ),
        _ => json(&SolveJson {
            n_players: n,
            p: decimal(params.p()),
            p_exact: fraction(params.p()),
            psi: decimal(&psi),
            psi_exact: fraction(&psi),
            das: sets[0].len(),
            nasopt: sets.len(),
            sets: solved
                .iter()
                .map(|(set, sig, matrix, every)| SolvedSet {
                    elements: set.elements().to_vec(),
                    signature: sig.to_string(),
                    loss: decimal(&loss),
                    loss_exact: fraction(&loss),
                    matrix: matrix.to_json(),
                    all_matrices: every
                        .as_ref()
                        .map(|v| v.iter().map(DecisionMatrix::to_json).collect()),
                })
                .collect(),
        }),
    }
}

#[derive(Serialize)]
struct EvaluateJson {
    n_players: usize,
    p: String,
    p_exact: String,
    win: String,
    win_exact: String,
    free_entries: usize,
    free_invariant: bool,
}

pub fn parse_matrix(text: &str) -> Result<DecisionMatrix, CliError> {
    if text.trim_start().starts_with('{') {
        let parsed: MatrixJson =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("matrix JSON: {e}")))?;
        Ok(DecisionMatrix::from_json(&parsed)?)
    } else {
        Ok(DecisionMatrix::parse_text(text)?)
    }
}

fn evaluate(
    n: Option<usize>,
    p: &str,
    text: &str,
    rule: FreeRuleArg,
    format: Format,
) -> Result<String, CliError> {
    let matrix = parse_matrix(text)?;
    if let Some(n) = n {
        if n != matrix.n_players() {
            return Err(CliError::Usage(format!(
                "--n {n} but the matrix has {} rows",
                matrix.n_players()
            )));
        }
    }
    let params = GameParams::parse(matrix.n_players(), p)?;
    let rule = match rule {
        FreeRuleArg::Pass => FreeRule::AsPass,
        FreeRuleArg::Black => FreeRule::AsBlack,
        FreeRuleArg::White => FreeRule::AsWhite,
    };
    let win = evaluate_matrix(&matrix, &params, rule)?;
    let free = matrix.free_positions().len();
    let invariant = free_invariance_check(&matrix, &params);
    match format {
        Format::Text => Ok(format!(
            "win {}\nfree_entries {free}\nfree_invariant {invariant}\n",
            both(&win)
        )),
        Format::Csv => csv(
            &["win", "win_exact", "free_entries", "free_invariant"],
            [vec![
                decimal(&win),
                fraction(&win),
                free.to_string(),
                invariant.to_string(),
            ]],
        ),
        _ => json(&EvaluateJson {
            n_players: matrix.n_players(),
            p: decimal(params.p()),
            p_exact: fraction(params.p()),
            win: decimal(&win),
            win_exact: fraction(&win),
            free_entries: free,
            free_invariant: invariant,
        }),
    }
}

#[derive(Serialize)]
struct BruteJson {
    n_players: usize,
    p: String,
    p_exact: String,
    max: String,
    max_exact: String,
    examined: u64,
    optimal: usize,
    non_isomorphic: usize,
    matrices: Vec<MatrixJson>,
}

fn brute(n: usize, p: &str, format: Format) -> Result<String, CliError> {
    let params = GameParams::parse(n, p)?;
    let result = brute_force_optimal(n, &params)?;
    let classes = dedupe_player_permutation(&result.matrices).len();
    match format {
        Format::Text => {
            let mut out = format!("max {}\nexamined {}\n", both(&result.max), result.examined);
            let _ = writeln!(
                out,
                "{} optimal matrices, {classes} non-isomorphic",
                result.matrices.len()
            );
            for (k, m) in result.matrices.iter().enumerate() {
                let _ = writeln!(out, "\n# matrix {}", k + 1);
                out.push_str(&m.to_text());
            }
            Ok(out)
        }
        Format::Csv => csv(
            &["index", "max", "max_exact", "matrix"],
            result.matrices.iter().enumerate().map(|(k, m)| {
                vec![
                    (k + 1).to_string(),
                    decimal(&result.max),
                    fraction(&result.max),
                    matrix_inline(m),
                ]
            }),
        ),
        _ => json(&BruteJson {
            n_players: n,
            p: decimal(params.p()),
            p_exact: fraction(params.p()),
            max: decimal(&result.max),
            max_exact: fraction(&result.max),
            examined: result.examined,
            optimal: result.matrices.len(),
            non_isomorphic: classes,
            matrices: result
                .matrices
                .iter()
                .map(DecisionMatrix::to_json)
                .collect(),
        }),
    }
}

fn psi(n: usize, pmin: &str, pmax: &str, steps: usize, format: Format) -> Result<String, CliError> {
    let rows = psi_curve(n, &parse_rational(pmin)?, &parse_rational(pmax)?, steps)?;
    let opt = |v: &Option<String>| v.clone().unwrap_or_default();
    match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut out = String::from("p\tpsi\tpiece\tbreakpoint\n");
            for r in &rows {
                let _ = writeln!(out, "{}\t{}\t{}\t{}", r.p, r.psi, r.piece, r.breakpoint);
            }
            Ok(out)
        }
        _ => csv(
            &["p", "psi", "piece", "breakpoint", "p_exact", "psi_exact"],
            rows.iter().map(|r| {
                vec![
                    r.p.clone(),
                    r.psi.clone(),
                    r.piece.to_string(),
                    r.breakpoint.to_string(),
                    opt(&r.p_exact),
                    opt(&r.psi_exact),
                ]
            }),
        ),
    }
}

fn relation(d: &Dominance) -> (&'static str, Vec<AlgebraicNumber>) {
    match d {
        Dominance::Equal => ("equal", Vec::new()),
        Dominance::AlwaysLess => ("less", Vec::new()),
        Dominance::AlwaysGreater => ("greater", Vec::new()),
        Dominance::Crossing(roots) => ("crossing", roots.clone()),
    }
}

#[derive(Serialize)]
struct Root {
    approx: String,
    lo: String,
    hi: String,
}

fn roots_json(roots: &[AlgebraicNumber]) -> Vec<Root> {
    roots
        .iter()
        .map(|r| Root {
            approx: point_label(r),
            lo: fraction(r.lo()),
            hi: fraction(r.hi()),
        })
        .collect()
}

#[derive(Serialize)]
struct PairJson {
    a: String,
    b: String,
    relation: &'static str,
    roots: Vec<Root>,
}

#[derive(Serialize)]
struct GraphJson {
    from: String,
    to: String,
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
    crossings: Vec<PairJson>,
    minimal: Vec<String>,
    frontier_crossings: Vec<PairJson>,
}

fn dominance(
    from: &str,
    to: &str,
    pair: Option<&[String]>,
    format: Format,
) -> Result<String, CliError> {
    let (lo, hi) = (parse_point(from)?, parse_point(to)?);
    if let Some([a, b]) = pair {
        let (sa, sb) = (a.parse()?, b.parse()?);
        let (rel, roots) = relation(&dominance_on(&sa, &sb, &lo, &hi)?);
        return match format {
            Format::Text => {
                let mut out = format!("{a} {rel} {b}\n");
                for r in &roots {
                    let _ = writeln!(
                        out,
                        "root {} in [{}, {}]",
                        point_label(r),
                        fraction(r.lo()),
                        fraction(r.hi())
                    );
                }
                Ok(out)
            }
            Format::Csv => csv(
                &["a", "b", "relation", "roots"],
                [vec![
                    a.clone(),
                    b.clone(),
                    rel.to_string(),
                    roots.iter().map(point_label).collect::<Vec<_>>().join(" "),
                ]],
            ),
            _ => json(&PairJson {
                a: a.clone(),
                b: b.clone(),
                relation: rel,
                roots: roots_json(&roots),
            }),
        };
    }
    let nodes = FIVE_PLAYER_CLASSES
        .iter()
        .map(|s| s.parse())
        .collect::<hatgame::Result<Vec<_>>>()?;
    let graph = DominanceGraph::build(nodes, &lo, &hi)?;
    let name = |i: usize| graph.nodes[i].to_string();
    let minimal: Vec<String> = graph.minimal().into_iter().map(name).collect();
    let frontier: Vec<PairJson> = graph
        .frontier_crossings()
        .into_iter()
        .map(|(a, b, roots)| PairJson {
            a: name(a),
            b: name(b),
            relation: "crossing",
            roots: roots_json(roots),
        })
        .collect();
    match format {
        Format::Dot => Ok(graph.to_dot()),
        Format::Text => {
            let mut out = format!(
                "interval ({}, {})\nnodes {}\n",
                point_label(&lo),
                point_label(&hi),
                graph.nodes.len()
            );
            let _ = writeln!(
                out,
                "edges {}\ncrossings {}",
                graph.edges.len(),
                graph.crossings.len()
            );
            let _ = writeln!(out, "minimal {}", minimal.join(" "));
            for f in &frontier {
                let at: Vec<&str> = f.roots.iter().map(|r| r.approx.as_str()).collect();
                let _ = writeln!(out, "frontier crossing {} {} at {}", f.a, f.b, at.join(" "));
            }
            for (a, b) in &graph.edges {
                let _ = writeln!(out, "{} < {}", name(*a), name(*b));
            }
            for (a, b, roots) in &graph.crossings {
                let at: Vec<String> = roots.iter().map(point_label).collect();
                let _ = writeln!(out, "{} x {} at {}", name(*a), name(*b), at.join(" "));
            }
            Ok(out)
        }
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = graph
                .edges
                .iter()
                .map(|(a, b)| vec![name(*a), name(*b), "less".into(), String::new()])
                .collect();
            rows.extend(graph.crossings.iter().map(|(a, b, roots)| {
                vec![
                    name(*a),
                    name(*b),
                    "crossing".into(),
                    roots.iter().map(point_label).collect::<Vec<_>>().join(" "),
                ]
            }));
            csv(&["a", "b", "relation", "roots"], rows)
        }
        Format::Json => json(&GraphJson {
            from: point_label(&lo),
            to: point_label(&hi),
            nodes: graph.nodes.iter().map(ToString::to_string).collect(),
            edges: graph
                .edges
                .iter()
                .map(|(a, b)| (name(*a), name(*b)))
                .collect(),
            crossings: graph
                .crossings
                .iter()
                .map(|(a, b, roots)| PairJson {
                    a: name(*a),
                    b: name(*b),
                    relation: "crossing",
                    roots: roots_json(roots),
                })
                .collect(),
            minimal,
            frontier_crossings: frontier,
        }),
    }
}

fn nasopt(n: usize, p: &str, format: Format) -> Result<String, CliError> {
    let point = parse_point(p)?;
    let report = nasopt_at(n, &point)?;
    match format {
        Format::Text => Ok(format!(
            "p {}\ndas {}\nnasopt {}\nsignatures {}\n",
            point_label(&point),
            report.das,
            report.count,
            report.signatures.join(" ")
        )),
        Format::Csv => csv(
            &["p", "das", "nasopt", "signatures"],
            [vec![
                point_label(&point),
                report.das.to_string(),
                report.count.to_string(),
                report.signatures.join(" "),
            ]],
        ),
        _ => json(&report),
    }
}

fn complexity(range: RangeInclusive<usize>, format: Format) -> Result<String, CliError> {
    let rows = complexity_table(range)?;
    match format {
        Format::Json => json(&rows),
        Format::Text => {
            let mut out = String::from("N\tdas\tbrute_force\treduced\tadequate_sets\n");
            for r in &rows {
                let [a, b, c] = r.display_cells();
                let _ = writeln!(out, "{}\t{}\t{a}\t{b}\t{c}", r.n_players, r.das);
            }
            Ok(out)
        }
        _ => csv(
            &[
                "n",
                "das",
                "brute_force",
                "reduced",
                "adequate_sets",
                "brute_force_exact",
                "reduced_exact",
                "adequate_sets_exact",
            ],
            rows.iter().map(|r| {
                let [a, b, c] = r.display_cells();
                vec![
                    r.n_players.to_string(),
                    r.das.to_string(),
                    a,
                    b,
                    c,
                    r.brute_force.to_string(),
                    r.reduced.to_string(),
                    r.adequate_sets.to_string(),
                ]
            }),
        ),
    }
}

fn covering(n: Option<usize>, format: Format) -> Result<String, CliError> {
    let ns: Vec<usize> = match n {
        Some(n) => vec![n],
        None => hatgame::analysis::K_TABLE.iter().map(|(n, _)| *n).collect(),
    };
    let reports = ns
        .into_iter()
        .map(covering_check)
        .collect::<hatgame::Result<Vec<_>>>()?;
    let computed = |c: Option<usize>| c.map_or_else(|| "-".to_string(), |v| v.to_string());
    let agrees = |a: Option<bool>| a.map_or_else(|| "-".to_string(), |v| v.to_string());
    match format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut out = String::from("N\tK(N,1)\tcomputed\tagrees\tsymmetric_psi\n");
            for r in &reports {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    r.n_players,
                    r.k_table,
                    computed(r.computed),
                    agrees(r.agrees()),
                    both(&r.symmetric_psi)
                );
            }
            Ok(out)
        }
        _ => csv(
            &[
                "n",
                "k",
                "computed",
                "agrees",
                "symmetric_psi",
                "symmetric_psi_exact",
            ],
            reports.iter().map(|r| {
                vec![
                    r.n_players.to_string(),
                    r.k_table.to_string(),
                    computed(r.computed),
                    agrees(r.agrees()),
                    decimal(&r.symmetric_psi),
                    fraction(&r.symmetric_psi),
                ]
            }),
        ),
    }
}

pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse range {text:?}; expected a..b"));
    let (a, b) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .or_else(|| text.split_once('-'))
        .or_else(|| text.split_once(':'))
        .unwrap_or((text, text));
    let lo: usize = a.trim().parse().map_err(|_| bad())?;
    let hi: usize = b.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

#[derive(Serialize)]
struct SweepJson {
    das: usize,
    signature: String,
    sum: String,
    sum_exact: String,
    witness: Vec<u32>,
}

fn sweep(
    n: usize,
    range: &str,
    p: &str,
    mode: SweepModeArg,
    limits: SearchLimits,
    format: Format,
) -> Result<String, CliError> {
    let params = GameParams::parse(n, p)?;
    let mode = match mode {
        SweepModeArg::Auto => SweepMode::Auto,
        SweepModeArg::Exhaustive => SweepMode::ExhaustiveOnly,
        SweepModeArg::Bnb => SweepMode::BranchAndBound,
    };
    let rows = das_sweep(n, parse_range(range)?, &params, mode, &limits)?;
    match format {
        Format::Text => {
            let mut out = String::from("das\tsignature\tsum\twitness\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    r.das,
                    r.signature,
                    decimal(&r.sum),
                    r.witness
                );
            }
            Ok(out)
        }
        Format::Csv => csv(
            &["das", "signature", "sum", "sum_exact", "witness"],
            rows.iter().map(|r| {
                vec![
                    r.das.to_string(),
                    r.signature.to_string(),
                    decimal(&r.sum),
                    fraction(&r.sum),
                    elements_text(&r.witness, " "),
                ]
            }),
        ),
        _ => json(
            &rows
                .iter()
                .map(|r| SweepJson {
                    das: r.das,
                    signature: r.signature.to_string(),
                    sum: decimal(&r.sum),
                    sum_exact: fraction(&r.sum),
                    witness: r.witness.elements().to_vec(),
                })
                .collect::<Vec<_>>(),
        ),
    }
}
