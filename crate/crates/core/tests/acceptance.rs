//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use forestpoly_core::canon::are_isomorphic;
use forestpoly_core::closed_forms::{
    bipartite_distribution, bipartite_q, bipartite_q_symmetric, complete_distribution,
    gnm_expectation_lower_bound, gnm_expected_components, path_distribution,
    path_series_coefficients, SERIES_RELATIVE_TOLERANCE,
};
use forestpoly_core::distribution::to_f64;
use forestpoly_core::graph6::parse_graph6;
use forestpoly_core::monte_carlo::{estimate_distribution, single_component_decay};
use forestpoly_core::search::{
    check_conjecture, connected_graphs_with_at_most, enumerate_connected_graphs,
    find_equal_polynomial_pairs, find_tree_pairs, sweep_log_concavity,
};
use forestpoly_core::{
    brute_force_distribution, expected_components, generate, EdgeId, ForestDistribution,
    ForestEngine, GeneratorSpec, Graph, Rational,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn r(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn family(spec: GeneratorSpec) -> Graph {
    generate(&spec).expect("valid family")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k333_exact() -> Outcome {
    let g = family(GeneratorSpec::CompleteMultipartite(vec![3, 3, 3]));
    let got = ForestEngine::new()
        .forest_polynomial(&g)
        .map_err(|e| e.to_string())?;
    let want: BTreeMap<usize, Rational> = [(1, 1992), (2, 11724), (3, 10951), (4, 1458)]
        .into_iter()
        .map(|(k, c)| (k, r(c, 26125)))
        .collect();
    ensure(got.probs == want, || format!("got {:?}", got.probs))?;
    Ok(format!("n = {}, m = {}", g.n(), g.m()))
}

fn closed_form_agreement() -> Outcome {
    let mut engine = ForestEngine::new();
    for n in 2..=5 {
        let exact = engine
            .forest_polynomial(&family(GeneratorSpec::Complete(n)))
            .unwrap();
        ensure(exact == complete_distribution(n).unwrap(), || {
            format!("K_{n} differs")
        })?;
    }
    let mut checked = 0;
    for s in 1..=6 {
        for t in 1..=7 - s {
            let exact = engine
                .forest_polynomial(&family(GeneratorSpec::CompleteBipartite(s, t)))
                .unwrap();
            ensure(exact == bipartite_distribution(s, t).unwrap(), || {
                format!("K_{s},{t} differs")
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "4 complete graphs, {checked} complete bipartite graphs"
    ))
}

fn oracle_equivalence() -> Outcome {
    let graphs = connected_graphs_with_at_most(7).map_err(|e| e.to_string())?;
    let mut engine = ForestEngine::new();
    for g in &graphs {
        let brute = brute_force_distribution(g).unwrap();
        let fast = engine.forest_polynomial(g).unwrap();
        ensure(brute == fast, || format!("mismatch on {:?}", g.edges()))?;
    }
    let trees8 = graphs.iter().filter(|g| g.n() == 8).count();
    Ok(format!(
        "{} classes, {trees8} of them trees on 8 vertices",
        graphs.len()
    ))
}

fn q_function() -> Outcome {
    let mut checked = 0;
    for s in 1..=8usize {
        for t in 1..=8usize {
            for a in 0..=s as i64 {
                for b in 0..=t as i64 {
                    for l in -1..=(s + t) as i64 {
                        let q = bipartite_q(s, t, a, b, l).unwrap();
                        ensure(q == bipartite_q_symmetric(s, t, a, b, l).unwrap(), || {
                            format!("two forms differ at s={s} t={t} a={a} b={b} l={l}")
                        })?;
                        let want = if a == 0 || b == 0 {
                            // one side saturated: the tree count is frozen
                            if l == 0 {
                                Rational::one()
                            } else {
                                Rational::zero()
                            }
                        } else if l == -1 {
                            Rational::zero()
                        } else {
                            let (si, ti) = (s as i64, t as i64);
                            let d = a * ti + b * si - a * b;
                            r(a * (ti - b), d) * bipartite_q(s, t, a - 1, b, l).unwrap()
                                + r((si - a) * b, d) * bipartite_q(s, t, a, b - 1, l).unwrap()
                                + r(a * b, d) * bipartite_q(s, t, a - 1, b - 1, l - 1).unwrap()
                        };
                        ensure(q == want, || {
                            format!("recurrence fails at s={s} t={t} a={a} b={b} l={l}")
                        })?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{checked} states"))
}

fn expectation_consistency() -> Outcome {
    let mut engine = ForestEngine::new();
    let mut checked = 0;
    for n in 2..=6 {
        for g in enumerate_connected_graphs(n).unwrap() {
            let mean = engine.forest_polynomial(&g).unwrap().mean();
            ensure(mean == expected_components(&g).unwrap(), || {
                format!("mismatch on {:?}", g.edges())
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} graphs"))
}

fn gnm_expectation() -> Outcome {
    let pairs: Vec<(usize, usize)> = (0..4)
        .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
        .collect();
    let mut engine = ForestEngine::new();
    for m in 1..=6usize {
        let mut sum = Rational::zero();
        let mut graphs = 0i64;
        for mask in 0u32..1 << 6 {
            if mask.count_ones() as usize != m {
                continue;
            }
            let edges: Vec<_> = (0..6)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = Graph::from_edge_list(4, &edges).unwrap();
            sum += engine.forest_polynomial(&g).unwrap().mean();
            graphs += 1;
        }
        let average = sum / Rational::from_integer(BigInt::from(graphs));
        let closed = gnm_expected_components(4, m).unwrap();
        ensure(average == closed, || {
            format!("m = {m}: average {average}, closed form {closed}")
        })?;
    }
    let mut bounds = 0;
    for n in 2..=8usize {
        for m in 1..=n * (n - 1) / 2 {
            let bound = gnm_expectation_lower_bound(n, m).unwrap();
            let exact = gnm_expected_components(n, m).unwrap();
            ensure(bound <= exact, || {
                format!("bound {bound} > {exact} at n={n} m={m}")
            })?;
            bounds += 1;
        }
    }
    Ok(format!(
        "n = 4 exhaustive for m = 1..6, {bounds} bound checks"
    ))
}

fn path_series() -> Outcome {
    let mut worst = 0.0f64;
    for x in [2i64, 5] {
        let series = path_series_coefficients(x as f64, 11).map_err(|e| e.to_string())?;
        for n in 1..=10 {
            let exact = to_f64(&path_distribution(n).unwrap().evaluate(&r(x, 1)));
            let rel = (series.coeffs[n] - exact).abs() / exact.abs();
            worst = worst.max(rel);
            ensure(rel <= SERIES_RELATIVE_TOLERANCE, || {
                format!("x={x} n={n}: relative error {rel:e}")
            })?;
        }
    }
    Ok(format!("worst relative error {worst:.1e}"))
}

fn pair_phenomena() -> Outcome {
    let mut engine = ForestEngine::new();
    for n in 3..=7 {
        let c = engine
            .forest_polynomial(&family(GeneratorSpec::Cycle(n)))
            .unwrap();
        let p = engine
            .forest_polynomial(&family(GeneratorSpec::Path(n)))
            .unwrap();
        ensure(c.same_polynomial(&p), || format!("C_{n} and P_{n} differ"))?;
    }
    for n in 3..=5 {
        let k = family(GeneratorSpec::Complete(n));
        let a = engine.forest_polynomial(&k).unwrap();
        let b = engine
            .forest_polynomial(&k.without_edge(EdgeId(0)))
            .unwrap();
        ensure(a.same_polynomial(&b), || {
            format!("K_{n} and K_{n} - e differ")
        })?;
    }
    let top = 4;
    for k in 1..=top {
        let check = check_conjecture(&mut engine, k).map_err(|e| e.to_string())?;
        ensure(check.holds, || format!("conjecture fails at k = {k}"))?;
    }
    Ok(format!("conjecture checked for k = 1..={top}"))
}

fn one_component() -> Outcome {
    let mut engine = ForestEngine::new();
    for s in 1..=8 {
        let p = engine
            .single_component_probability(&family(GeneratorSpec::Star(s)))
            .unwrap();
        ensure(p.is_one(), || format!("P(K_1,{s}, 1) = {p}"))?;
    }
    for n in 3..=8u32 {
        let p = engine
            .single_component_probability(&family(GeneratorSpec::Cycle(n as usize)))
            .unwrap();
        let fact: u64 = (1..=n as u64).product();
        let want = r(n as i64 * (1i64 << (n - 2)), fact as i64);
        ensure(p == want, || format!("P(C_{n}, 1) = {p}, want {want}"))?;
    }
    let mut checked = 0;
    for n in 2..=6 {
        for g in enumerate_connected_graphs(n).unwrap() {
            let pruned = engine.single_component_probability(&g).unwrap();
            let full = engine.forest_polynomial(&g).unwrap().prob(1);
            ensure(pruned == full, || format!("mismatch on {:?}", g.edges()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} connected graphs"))
}

fn monte_carlo_calibration() -> Outcome {
    const TRIALS: u64 = 100_000;
    const SEED: u64 = 20240601;
    let graphs = [
        ("K_2,2", family(GeneratorSpec::CompleteBipartite(2, 2))),
        ("K_2,3", family(GeneratorSpec::CompleteBipartite(2, 3))),
        ("C_5", family(GeneratorSpec::Cycle(5))),
        ("P_5", family(GeneratorSpec::Path(5))),
    ];
    let mut worst = 0.0f64;
    for (name, g) in &graphs {
        let exact: ForestDistribution = ForestEngine::new().forest_polynomial(g).unwrap();
        let est = estimate_distribution(g, TRIALS, SEED).unwrap();
        let rerun = estimate_distribution(g, TRIALS, SEED).unwrap();
        ensure(est == rerun, || format!("{name}: rerun differs"))?;
        let support: std::collections::BTreeSet<usize> = exact
            .probs
            .keys()
            .chain(est.counts.keys())
            .copied()
            .collect();
        for k in support {
            let p = to_f64(&exact.prob(k));
            let freq = est.frequency(k);
            let sigma = (p * (1.0 - p) / TRIALS as f64).sqrt();
            if sigma == 0.0 {
                ensure(freq == p, || {
                    format!("{name}: k={k} frequency {freq}, exact {p}")
                })?;
                continue;
            }
            let z = (freq - p).abs() / sigma;
            worst = worst.max(z);
            ensure(z <= 4.0, || format!("{name}: k={k} off by {z:.2} sigma"))?;
        }
    }
    Ok(format!("largest deviation {worst:.2} sigma"))
}

fn property_sweeps() -> Outcome {
    let mut engine = ForestEngine::new();
    let bad = sweep_log_concavity(&mut engine, 7).map_err(|e| e.to_string())?;
    ensure(bad.is_empty(), || {
        format!("not log-concave: {}", bad[0].graph6)
    })?;
    for n in 1..=10 {
        let pairs = find_tree_pairs(&mut engine, n).map_err(|e| e.to_string())?;
        ensure(pairs.is_empty(), || {
            format!(
                "tree pair at n = {n}: {} {}",
                pairs[0].graph6_a, pairs[0].graph6_b
            )
        })?;
    }
    Ok("log-concave through 7 vertices, no tree pairs through 10".into())
}

fn substitutes() -> Outcome {
    let rows = single_component_decay(3, &[8, 12, 16], 100_000, 7).map_err(|e| e.to_string())?;
    for row in &rows {
        let v = row.neg_log_p1_over_n;
        ensure(v.is_finite() && v > 0.0, || {
            format!("n = {}: -ln(p1)/n = {v}", row.n)
        })?;
    }
    let decay: Vec<String> = rows
        .iter()
        .map(|r| format!("{}:{:.3}", r.n, r.neg_log_p1_over_n))
        .collect();
    let mut census = Vec::new();
    for n in 2..=6 {
        let pairs =
            find_equal_polynomial_pairs(&mut ForestEngine::new(), n).map_err(|e| e.to_string())?;
        let again = find_equal_polynomial_pairs(&mut ForestEngine::new(), n).unwrap();
        ensure(pairs == again, || {
            format!("census at n = {n} not reproducible")
        })?;
        let mut fresh = ForestEngine::without_memo();
        for pair in &pairs {
            let a = parse_graph6(&pair.graph6_a).unwrap();
            let b = parse_graph6(&pair.graph6_b).unwrap();
            ensure(!are_isomorphic(&a, &b).unwrap(), || {
                format!("{} and {} are isomorphic", pair.graph6_a, pair.graph6_b)
            })?;
            let (pa, pb) = if a.m() <= 9 && b.m() <= 9 {
                (
                    fresh.forest_polynomial(&a).unwrap(),
                    fresh.forest_polynomial(&b).unwrap(),
                )
            } else {
                (
                    ForestEngine::new().forest_polynomial(&a).unwrap(),
                    ForestEngine::new().forest_polynomial(&b).unwrap(),
                )
            };
            ensure(
                pa.same_polynomial(&pb) && pa.same_polynomial(&pair.shared_polynomial),
                || format!("{} and {} do not replay", pair.graph6_a, pair.graph6_b),
            )?;
        }
        census.push(format!("n={n}:{}", pairs.len()));
    }
    Ok(format!(
        "decay {}; pair census {}",
        decay.join(" "),
        census.join(" ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("K_3,3,3 exact polynomial", k333_exact),
        ("closed forms for K_n and K_s,t", closed_form_agreement),
        (
            "brute force equals engine, all connected graphs with <= 7 edges",
            oracle_equivalence,
        ),
        (
            "bipartite Q: initial conditions, recurrence, symmetric form",
            q_function,
        ),
        ("expected tree count formula", expectation_consistency),
        ("G(n, m) expectation and lower bound", gnm_expectation),
        ("path series coefficients", path_series),
        ("equal-polynomial families and conjecture", pair_phenomena),
        ("single-tree probabilities", one_component),
        (
            "Monte Carlo calibration and reruns",
            monte_carlo_calibration,
        ),
        ("log-concavity and tree pair sweeps", property_sweeps),
        ("decay experiment and pair census", substitutes),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
