//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use interval_coloring::coloring::is_interval;
use interval_coloring::gadgets::{build_boldf, build_f, explicit_coloring_f, pendant_color_law, predicted_spectrum, realize_t};
use interval_coloring::scheduler::{check_no_wait, schedule_no_wait, validate_timetable, ScheduleOutcome};
use interval_coloring::thickness::{color_forest, color_regular_bipartite, decompose, degeneracy, exact_theta_small, Theta};
use interval_coloring::{compute_spectrum, enumerate_colorings, find_coloring, Budget, ConferenceInstance, Decision, EdgeColoring, Graph, Timetable};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn naive_ok(g: &Graph, c: &EdgeColoring) -> bool {
    let edges: Vec<(usize, usize)> = g.edges().to_vec();
    is_interval_naive(g.vertex_count(), &edges, c.colors())
}

fn pendant_colors(g: &Graph, c: &EdgeColoring) -> BTreeSet<i64> {
    g.edges_with_tag("pendant").into_iter().map(|e| c.color(e)).collect()
}

/// Explicit colorings of F(b, D + 25) for even D in 2..=30.
fn criterion_1() -> Outcome {
    let mut count = 0;
    for d in (2usize..=30).step_by(2) {
        for b in BTreeSet::from([1, d.div_ceil(2), d]) {
            let top = d + 25;
            let (g, bp) = build_f(b, top).map_err(|e| e.to_string())?;
            ensure!(g.vertex_count() == 2 * d + 37, "F({b},{top}) has {} vertices", g.vertex_count());
            ensure!(g.edge_count() == 4 * d - b + 63, "F({b},{top}) has {} edges", g.edge_count());
            let c = explicit_coloring_f(&g, &bp).map_err(|e| e.to_string())?;
            ensure!(is_interval(&g, &c) && naive_ok(&g, &c), "F({b},{top}) coloring is not interval");
            ensure!(c.palette().len() == top + 1, "F({b},{top}) uses {} colors", c.palette().len());
            count += 1;
        }
    }
    Ok(format!("{count} gadgets, each with T+1 colors"))
}

/// Pendant colors of F(2, 37) shifted to start at 3, and mirrored.
fn criterion_2() -> Outcome {
    let (g, bp) = build_f(2, 37).map_err(|e| e.to_string())?;
    let c = explicit_coloring_f(&g, &bp).map_err(|e| e.to_string())?;
    let shifted = c.shift(3 - c.min_color().unwrap());
    let mirrored = shifted.mirror();
    ensure!(naive_ok(&g, &shifted) && naive_ok(&g, &mirrored), "colorings do not verify");
    let low = pendant_colors(&g, &shifted);
    let high = pendant_colors(&g, &mirrored);
    ensure!(low == BTreeSet::from([15, 16]), "shifted pendant colors {low:?}");
    ensure!(high == BTreeSet::from([27, 28]), "mirrored pendant colors {high:?}");
    Ok("pendants {15,16} and mirrored {27,28}".into())
}

/// Sampled colorings of F(1, 27) with 28 colors obey the pendant law.
fn criterion_3() -> Outcome {
    let (g, bp) = build_f(1, 27).map_err(|e| e.to_string())?;
    let e = enumerate_colorings(&g, 28, 50, Budget::millis(60_000)).map_err(|e| e.to_string())?;
    ensure!(!e.colorings.is_empty(), "no coloring found (timed out: {})", e.timed_out);
    let wl_vl = g.edge(&bp.w_l, &bp.v_l).unwrap();
    let mut seen = BTreeSet::new();
    for c in &e.colorings {
        ensure!(naive_ok(&g, c), "enumerated coloring is not interval");
        pendant_color_law(&g, &bp, c).map_err(|e| e.to_string())?;
        let x = c.color(wl_vl);
        ensure!(x == 9 || x == 20, "c(w_l v_l) = {x}");
        seen.insert(x);
    }
    Ok(format!("{} colorings, c(w_l v_l) values {seen:?}", e.colorings.len()))
}

/// compute_spectrum against brute force on every connected graph with at
/// most 7 edges.
fn criterion_4() -> Outcome {
    let graphs = connected_graphs(7);
    for (n, edges) in &graphs {
        let g = to_graph(*n, edges);
        let got: BTreeSet<usize> = compute_spectrum(&g, None, Budget::unlimited())
            .map_err(|e| e.to_string())?
            .achievable
            .into_iter()
            .collect();
        let want = brute_spectrum(*n, edges);
        ensure!(got == want, "graph {edges:?}: solver {got:?}, brute force {want:?}");
    }
    let named = [
        ("triangle", 3, vec![(0, 1), (0, 2), (1, 2)], vec![]),
        ("P4", 4, vec![(0, 1), (1, 2), (2, 3)], vec![2, 3]),
        ("C4", 4, vec![(0, 1), (0, 3), (1, 2), (2, 3)], vec![2, 3]),
        ("K1,5", 6, vec![(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)], vec![5]),
    ];
    for (name, n, edges, want) in named {
        let s = compute_spectrum(&to_graph(n, &edges), None, Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure!(s.achievable == want, "{name}: {:?}", s.achievable);
    }
    Ok(format!("{} graphs", graphs.len()))
}

/// Every predicted spectrum value of F(k, d) is realized.
fn criterion_5() -> Outcome {
    let mut total = 0;
    for (k, d) in [(1, 24), (2, 24), (3, 26)] {
        let t0 = 3 * k * k * d + 1;
        let mut want = BTreeSet::from([t0 + 1]);
        for j in 1..=k {
            let tj = 2 * j * d * k + 1;
            want.extend(t0 + tj - 22 - k..=t0 + tj - 23);
        }
        let predicted = predicted_spectrum(k, d).map_err(|e| e.to_string())?;
        let got: BTreeSet<usize> = predicted.achievable.iter().copied().collect();
        ensure!(got == want, "({k},{d}) predicted {got:?}, expected {want:?}");
        let sorted: Vec<usize> = want.iter().copied().collect();
        let gaps: Vec<usize> = sorted.windows(2).filter(|w| w[1] > w[0] + 1).map(|w| w[1] - w[0] - 1).collect();
        ensure!(gaps.len() == k && gaps.iter().all(|&s| s >= d), "({k},{d}) gaps {gaps:?}");
        ensure!(predicted.gaps.iter().map(|g| g.size).collect::<Vec<_>>() == gaps, "({k},{d}) reported gaps differ");
        let (g, bp) = build_boldf(k, d).map_err(|e| e.to_string())?;
        for &t in &sorted {
            let r = realize_t(&g, &bp, t).map_err(|e| format!("({k},{d}) t={t}: {e}"))?;
            ensure!(naive_ok(&g, &r.coloring), "({k},{d}) t={t} not interval");
            ensure!(r.coloring.palette().len() == t, "({k},{d}) t={t} uses {} colors", r.coloring.palette().len());
            total += 1;
        }
    }
    Ok(format!("{total} realizations over 3 gadgets"))
}

/// König colorings of random regular bipartite graphs.
fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..50 {
        let delta = 2 + i % 5;
        let half = rng.gen_range(delta.max(3)..=100);
        let (n, edges) = random_regular_bipartite(&mut rng, half, delta);
        let g = to_graph(n, &edges);
        let c = color_regular_bipartite(&g).map_err(|e| e.to_string())?;
        ensure!(naive_ok(&g, &c), "graph {i} not interval");
        let want: BTreeSet<i64> = (1..=delta as i64).collect();
        for v in 0..n {
            let at: BTreeSet<i64> = g.incident(v).iter().map(|&(_, e)| c.color(e)).collect();
            ensure!(at == want, "graph {i}, vertex {v} sees {at:?}");
        }
    }
    Ok("50 graphs, Δ in 2..=6, up to 200 vertices".into())
}

/// Forest colorings.
fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut largest = 0;
    for i in 0..1000 {
        let n = rng.gen_range(1..=5001);
        let attach = rng.gen_range(0.5..=1.0);
        let (n, edges) = random_forest(&mut rng, n, attach);
        largest = largest.max(edges.len());
        let g = to_graph(n, &edges);
        let c = color_forest(&g).map_err(|e| e.to_string())?;
        ensure!(is_interval_naive(n, &edges, c.colors()), "forest {i} not interval");
    }
    Ok(format!("1000 forests, largest {largest} edges"))
}

/// Decomposition guarantee on random graphs.
fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0;
    for i in 0..100 {
        let n = rng.gen_range(2..=100);
        let p = [0.02, 0.05, 0.1, 0.3, 0.6, 0.9][i % 6];
        let (n, edges) = random_graph(&mut rng, n, p);
        let g = to_graph(n, &edges);
        let dec = decompose(&g, Budget::millis(50));
        dec.verify(&g).map_err(|e| format!("graph {i}: {e}"))?;
        let covered: usize = dec.parts.iter().map(|p| p.edges.len()).sum();
        ensure!(covered == edges.len(), "graph {i}: parts cover {covered} of {} edges", edges.len());
        for part in &dec.parts {
            let sub: Vec<(usize, usize)> = part.edges.iter().map(|&e| edges[e]).collect();
            ensure!(is_interval_naive(n, &sub, part.coloring.colors()), "graph {i}: part not interval");
        }
        let deg = degeneracy(&g);
        ensure!(deg == naive_degeneracy(n, &edges), "graph {i}: degeneracy {deg}");
        let bound = ((2 * edges.len()) as f64).sqrt().ceil() as usize;
        ensure!(deg <= bound, "graph {i}: degeneracy {deg} > {bound}");
        ensure!(dec.part_count() <= 2 * deg, "graph {i}: {} parts, degeneracy {deg}", dec.part_count());
        worst = worst.max(dec.part_count());
    }
    Ok(format!("100 graphs, at most {worst} parts"))
}

/// Exact thickness of connected graphs on at most 5 vertices.
fn criterion_9() -> Outcome {
    let graphs = connected_graphs_on(5);
    let mut twos = 0;
    for (n, edges) in &graphs {
        let g = to_graph(*n, edges);
        let theta = match exact_theta_small(&g, 2, Budget::unlimited()).map_err(|e| e.to_string())? {
            Theta::Exact(k) => k,
            other => return Err(format!("graph {edges:?}: {other:?}")),
        };
        ensure!((1..=2).contains(&theta), "graph {edges:?}: θ = {theta}");
        let colorable = !brute_spectrum(*n, edges).is_empty();
        ensure!((theta == 1) == colorable, "graph {edges:?}: θ = {theta} but brute force colorable = {colorable}");
        twos += usize::from(theta == 2);
    }
    let triangle = to_graph(3, &[(0, 1), (0, 2), (1, 2)]);
    ensure!(exact_theta_small(&triangle, 3, Budget::unlimited()).unwrap() == Theta::Exact(2), "θ(triangle) ≠ 2");
    Ok(format!("{} graphs, {twos} with θ = 2", graphs.len()))
}

/// Scheduler round trip and timetable/coloring equivalence.
fn criterion_10() -> Outcome {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/conference12.csv");
    let inst = ConferenceInstance::load(&path).map_err(|e| e.to_string())?;
    ensure!(inst.meetings.len() == 12, "sample has {} meetings", inst.meetings.len());
    let ScheduleOutcome::Scheduled { timetable, .. } = schedule_no_wait(&inst, None, Budget::millis(10_000)).map_err(|e| e.to_string())? else {
        return Err("sample instance was not scheduled".into());
    };
    ensure!(check_no_wait(&timetable).is_empty(), "sample timetable fails the checker");
    validate_timetable(&inst, &timetable).map_err(|e| e.to_string())?;

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut yes, mut no) = (0, 0);
    for i in 0..200 {
        let (parents, teachers) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let mut pairs = BTreeSet::new();
        for _ in 0..rng.gen_range(1..=parents * teachers) {
            pairs.insert((rng.gen_range(0..parents), rng.gen_range(0..teachers)));
        }
        let inst = ConferenceInstance::new(pairs.iter().map(|&(p, t)| (format!("p{p}"), format!("t{t}"))), [], [])
            .map_err(|e| e.to_string())?;
        let g = inst.graph();
        let coloring = if i % 2 == 0 {
            EdgeColoring::new((0..g.edge_count()).map(|_| rng.gen_range(1..=4)).collect())
        } else {
            // A solver coloring per component, so the "yes" direction is exercised.
            let mut colors = vec![1; g.edge_count()];
            for comp in g.components() {
                let (sub, origin) = g.induced_subgraph(&comp);
                if sub.edge_count() == 0 {
                    continue;
                }
                if let Decision::Found(c) = find_coloring(&sub, sub.max_degree(), Budget::unlimited()).unwrap() {
                    for (j, &e) in origin.iter().enumerate() {
                        colors[e] = c.color(j);
                    }
                }
            }
            EdgeColoring::new(colors)
        };
        let tt = Timetable::from_coloring(&inst, &g, &coloring, 1).map_err(|e| e.to_string())?;
        let checker = check_no_wait(&tt).is_empty();
        let edges: Vec<(usize, usize)> = g.edges().to_vec();
        let interval = is_interval(&g, &coloring);
        ensure!(interval == is_interval_naive(g.vertex_count(), &edges, coloring.colors()), "instance {i}: verifiers disagree");
        ensure!(checker == interval, "instance {i}: checker {checker}, coloring interval {interval}");
        ensure!(tt.to_coloring(&inst, &g) == coloring, "instance {i}: round trip changed slots");
        if checker {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("sample horizon {}; 200 instances ({yes} no-wait, {no} not)", timetable.horizon()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("explicit-coloring certification", criterion_1, Duration::from_secs(1)),
        ("pendant colors of F(2,37)", criterion_2, Duration::from_secs(1)),
        ("rigidity sampling", criterion_3, Duration::from_secs(60)),
        ("spectrum oracle equivalence", criterion_4, Duration::from_secs(300)),
        ("gadget spectrum realization", criterion_5, Duration::from_secs(30)),
        ("König coloring", criterion_6, Duration::from_secs(30)),
        ("forest coloring", criterion_7, Duration::from_secs(30)),
        ("decomposition guarantee", criterion_8, Duration::from_secs(60)),
        ("small-θ oracle", criterion_9, Duration::from_secs(120)),
        ("scheduler round trip", criterion_10, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
