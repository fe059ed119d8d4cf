//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::time::{Duration, Instant};

use mtoh::algorithms::{enumerate_routes, execute_and_verify, generate, time_reverse};
use mtoh::counts::{self, CountFamily, ROUNDING_LIMIT};
use mtoh::model::{CountVector, FaceColor, Post, TowerState};
use mtoh::oracle::{
    bfs_shortest, certify_algorithm, enumerate_forward_solutions,
    enumerate_forward_solutions_bounded,
};
use mtoh::{AlgorithmId, PreColoring, RoutePolicy};
use num_bigint::BigUint;
use proptest::sample::Index;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;
type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn table_columns(table: u32) -> Result<usize, String> {
    let t = common::count_table(table);
    let mut checked = 0;
    for (index, values) in &t.rows {
        for (f, printed) in t.families.iter().zip(values) {
            let ours = match (table, f.is_optimal()) {
                (2 | 4, true) => counts::p_recurrence(*f, *index),
                (3 | 5, true) => counts::s_recurrence(*f, *index),
                (2, false) => counts::nonoptimal_p(*f, *index),
                (_, _) => counts::nonoptimal_s(*f, *index),
            }
            .map_err(|e| e.to_string())?;
            ensure(&ours == printed, || {
                format!("table {table}, {f} at {index}: {ours} vs printed {printed}")
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn ac1_disk_moves() -> Outcome {
    let checked = table_columns(4)?;
    ensure(checked == 100, || format!("{checked} cells"))?;
    for alg in AlgorithmId::ALL {
        let r = execute_and_verify(alg, 12).map_err(|e| format!("{alg}: {e}"))?;
        for k in 1..=12 {
            let want = counts::p_recurrence(alg.family(), k).unwrap();
            ensure(big(r.per_disk_moves[&k]) == want, || {
                format!("{alg} disk {k}")
            })?;
        }
    }
    Ok("100 printed P values; per-disk moves of all 10 solvers at n=12".into())
}

fn ac2_totals() -> Outcome {
    let checked = table_columns(5)?;
    ensure(checked == 100, || format!("{checked} cells"))?;
    let s606 = counts::s_recurrence(CountFamily::F606, 20).unwrap();
    ensure(s606 == big(1_056_607_454), || format!("S606(20) = {s606}"))?;
    for alg in AlgorithmId::ALL {
        for n in 1..=12 {
            let r = execute_and_verify(alg, n).map_err(|e| format!("{alg} n={n}: {e}"))?;
            let want = counts::s_recurrence(alg.family(), n).unwrap();
            ensure(big(r.total_moves) == want, || format!("{alg} n={n}"))?;
        }
    }
    Ok("100 printed S values; executor totals for n<=12".into())
}

fn ac3_non_optimal() -> Outcome {
    let p = table_columns(2)?;
    let s = table_columns(3)?;
    ensure(p == 120 && s == 120, || format!("{p}+{s} cells"))?;
    let s61 = counts::nonoptimal_s(CountFamily::F61, 20).unwrap();
    ensure(s61 == big(1_060_025_806), || format!("S61(20) = {s61}"))?;
    let p64 = counts::nonoptimal_p(CountFamily::F64, 20).unwrap();
    ensure(p64 == big(742_555_955), || format!("P64(20) = {p64}"))?;
    Ok("240 printed values incl. S61(20), P64(20)".into())
}

fn ac4_closed_forms() -> Outcome {
    let roots = counts::cubic_roots();
    let residual = roots.max_residual();
    ensure(residual < 1e-12, || format!("residual {residual:e}"))?;
    let mut worst: f64 = 0.0;
    for f in CountFamily::OPTIMAL {
        for n in 1..=30 {
            for (label, eval, rec) in [
                ("S", counts::s_closed_eval(f, n), counts::s_recurrence(f, n)),
                ("P", counts::p_closed_eval(f, n), counts::p_recurrence(f, n)),
            ] {
                let e = eval.map_err(|e| format!("{label}{f}({n}): {e}"))?;
                ensure(e.margin < ROUNDING_LIMIT, || {
                    format!("{label}{f}({n}) margin")
                })?;
                ensure(e.value == rec.unwrap(), || format!("{label}{f}({n}) value"))?;
                worst = worst.max(e.margin);
            }
        }
    }
    Ok(format!(
        "300 closed-form values; worst margin {worst:.2e}; residual {residual:.1e}"
    ))
}

fn ac5_optimality() -> Outcome {
    let mut equalities = 0;
    for f in CountFamily::OPTIMAL {
        let pc = f.pre_coloring().unwrap();
        for n in 1..=7 {
            let r = bfs_shortest(n, pc).map_err(|e| e.to_string())?;
            let want = counts::s_recurrence(f, n).unwrap();
            ensure(big(r.shortest_length as u64) == want, || {
                format!("{pc} n={n}: search {} vs {want}", r.shortest_length)
            })?;
            equalities += 1;
        }
    }
    for alg in AlgorithmId::ALL {
        for n in 1..=7 {
            ensure(
                certify_algorithm(alg, n).map_err(|e| e.to_string())?,
                || format!("{alg} n={n} not certified"),
            )?;
        }
    }
    Ok(format!(
        "{equalities} search minima; 10 solvers certified for n<=7"
    ))
}

fn ac6_durations() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for printed in common::printed_t20() {
        if printed.table != 3 && printed.table != 5 {
            continue;
        }
        let f = printed.family;
        let limit = f.duration_limit();
        let limit = num_traits::ToPrimitive::to_f64(&limit).unwrap();
        let gap = counts::duration(f, 20).unwrap() - limit;
        let printed_gap = printed.value - limit;
        let diff = (gap - printed_gap).abs();
        ensure(diff <= 1e-9, || {
            format!("{f}: gap {gap:e} vs printed {printed_gap:e}")
        })?;
        worst = worst.max(diff);
        checked += 1;
    }
    ensure(checked == 11, || format!("{checked} printed ratios"))?;
    for n in 1..=20 {
        let s: Vec<BigUint> = CountFamily::OPTIMAL
            .iter()
            .map(|f| counts::s_recurrence(*f, n).unwrap())
            .collect();
        ensure(s.windows(2).all(|w| w[0] >= w[1]), || {
            format!("dominance at n={n}")
        })?;
    }
    Ok(format!(
        "{checked} T(20) ratios within {worst:.1e}; dominance chain n<=20"
    ))
}

fn ac7_traces() -> Outcome {
    let printed = common::traces();
    ensure(printed.len() == 10, || "fixture columns".into())?;
    for alg in AlgorithmId::ALL {
        let seq = generate(alg, 3).map_err(|e| e.to_string())?;
        let t = seq.trace().map_err(|e| e.to_string())?;
        ensure(t == printed[&alg], || format!("{alg} trace"))?;
        let back = time_reverse(&seq).map_err(|e| e.to_string())?;
        let bt = back.trace().map_err(|e| e.to_string())?;
        ensure(bt == printed[&alg.brother()], || format!("reversed {alg}"))?;
    }
    Ok("10 printed columns; each reversal lands on its brother".into())
}

fn ac8_routes() -> Outcome {
    let named = RoutePolicy::table16();
    let policies: Vec<RoutePolicy> = named.iter().map(|(_, p)| p.clone()).collect();
    let routes = enumerate_routes(7, &policies).map_err(|e| e.to_string())?;
    let distinct: HashSet<Vec<mtoh::Move>> = routes.iter().map(|(_, s)| s.moves.clone()).collect();
    ensure(distinct.len() == 8, || {
        format!("{} distinct", distinct.len())
    })?;
    let traces: Vec<Vec<CountVector>> = routes
        .iter()
        .map(|(_, s)| s.trace().map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    for ((name, _), t) in named.iter().zip(&traces) {
        ensure(t.len() == 688, || format!("{name}: {} moves", t.len() - 1))?;
        ensure(t[687] == CountVector::new(0, 0, 7), || {
            format!("{name} end")
        })?;
    }
    let (names, rows) = common::routes7();
    let mut cells = 0;
    for (step, row) in &rows {
        for (col, want) in row.iter().enumerate() {
            ensure(traces[col][*step] == *want, || {
                format!(
                    "{} step {step}: {} vs {want}",
                    names[col], traces[col][*step]
                )
            })?;
            cells += 1;
        }
    }
    Ok(format!("8 distinct 687-move routes; {cells} printed cells"))
}

fn ac9_determinism() -> Outcome {
    let rbb =
        enumerate_forward_solutions(3, "RBB".parse().unwrap(), 1_000).map_err(|e| e.to_string())?;
    ensure(
        rbb.lengths == BTreeMap::from([(13, 1)]) && !rbb.cap_reached,
        || format!("RBB n=3: {:?}", rbb.lengths),
    )?;
    let nnn = enumerate_forward_solutions_bounded(3, "NNN".parse().unwrap(), 1_000, Some(11))
        .map_err(|e| e.to_string())?;
    let shortest = nnn.lengths.get(&11).copied().unwrap_or(0);
    ensure(shortest >= 4 && nnn.shortest() == Some(11), || {
        format!("NNN n=3: {:?}", nnn.lengths)
    })?;
    let rbb4 =
        enumerate_forward_solutions(4, "RBB".parse().unwrap(), 1_000).map_err(|e| e.to_string())?;
    let note = if rbb4.solutions == 1 {
        "unique".to_string()
    } else {
        format!("{} solutions {:?}", rbb4.solutions, rbb4.lengths)
    };
    Ok(format!(
        "RBB n=3 unique (13); NNN n=3 has {shortest} routes of 11; RBB n=4 {note}"
    ))
}

fn ac10_rules() -> Outcome {
    let mut runner = TestRunner::deterministic();
    let configs: Vec<PreColoring> = PreColoring::all()
        .filter(PreColoring::is_solvable)
        .collect();
    let walk = proptest::collection::vec(proptest::arbitrary::any::<Index>(), 10_000);
    let mut steps = 0u64;
    for n in 1..=6u32 {
        for &pc in &configs {
            let picks = walk
                .new_tree(&mut runner)
                .map_err(|e| e.to_string())?
                .current();
            let mut state = TowerState::new(n, pc).map_err(|e| e.to_string())?;
            let mut faces = vec![FaceColor::Red; n as usize + 1];
            for pick in picks {
                let legal = state.legal_moves();
                let mv = legal[pick.index(legal.len())];
                let next = state.apply_move(mv).map_err(|e| e.to_string())?;
                faces[mv.disk as usize] = faces[mv.disk as usize].opposite();
                for post in Post::ALL {
                    let stack = next.stack(post);
                    ensure(stack.windows(2).all(|w| w[0] < w[1]), || {
                        format!("{pc} n={n}: size order on {post}")
                    })?;
                    if let Some(up) = next.up_color(post) {
                        ensure(stack.iter().all(|&d| faces[d as usize] == up), || {
                            format!("{pc} n={n}: mixed faces on {post}")
                        })?;
                        if let Some(pre) = pc.get(post).face() {
                            ensure(up == pre, || format!("{pc} n={n}: pre-colour of {post}"))?;
                        }
                    }
                }
                let undone = next.apply_move(mv.reversed()).map_err(|e| e.to_string())?;
                ensure(undone == state, || format!("{pc} n={n}: undo of {mv}"))?;
                state = next;
                steps += 1;
            }
        }
    }
    Ok(format!("{steps} random legal moves over 72 walks"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "Table 4 disk moves",
            Some(Duration::from_secs(5)),
            ac1_disk_moves,
        ),
        ("Table 5 total moves", None, ac2_totals),
        ("Tables 2-3 non-optimal counts", None, ac3_non_optimal),
        (
            "closed-form certification",
            Some(Duration::from_secs(1)),
            ac4_closed_forms,
        ),
        (
            "optimality at desk scale",
            Some(Duration::from_secs(30)),
            ac5_optimality,
        ),
        ("duration ratios", None, ac6_durations),
        ("three-disk traces", None, ac7_traces),
        ("route multiplicity", None, ac8_routes),
        ("determinism experiment", None, ac9_determinism),
        ("rules engine walks", None, ac10_rules),
    ];
    let mut failed = 0;
    for (i, (title, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, budget) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.2?}, budget {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!("PASS AC{:<2} {title} ({elapsed:.2?}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL AC{:<2} {title} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
