//! The `forestpoly` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use forestpoly_core::cheeger::cheeger_constant;
use forestpoly_core::closed_forms::{
    bipartite_distribution, bipartite_q, complete_distribution, cycle_single_component,
    gnm_expectation_lower_bound, gnm_expected_components, matching_identity_lhs, path_distribution,
    path_series_coefficients,
};
use forestpoly_core::distribution::format_rational;
use forestpoly_core::graph6::{parse_graph6, serialize_graph6};
use forestpoly_core::search::{
    check_conjecture, enumerate_connected_graphs, enumerate_trees, find_edge_degree_twins,
    find_equal_polynomial_pairs, find_tree_pairs, sweep_log_concavity,
};
use forestpoly_core::{
    brute_force_distribution, expected_components, generate, ForestDistribution, ForestEngine,
    GeneratorSpec, Graph, Rational,
};
use serde_json::{json, Value};

use crate::formats::{
    decay_csv, decay_row_json, degree_twin_json, distribution_json, estimate_json,
    pair_report_json, parse_edge_list,
};
use crate::{parallel, Error};

#[derive(Parser, Debug)]
#[command(
    name = "forestpoly",
    version,
    about = "Exact and sampled laws of the forest-building process"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Progress messages on standard error.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Complete graph, --n.
    Kn,
    /// Complete bipartite graph, --s --t.
    Kst,
    /// Complete multipartite graph, --parts 3,3,3.
    Multipartite,
    /// Path on --n vertices.
    Path,
    /// Cycle on --n vertices.
    Cycle,
    /// Star with --s leaves.
    Star,
    /// K_{k,k+1} plus one edge inside the larger part, --k.
    BipartitePlusEdge,
    /// Uniform graph with --n vertices and --m edges, --graph-seed.
    Gnm,
    /// Random --d-regular graph on --n vertices, --graph-seed.
    Regular,
}

/// Where the input graph comes from: exactly one of --g6, --edges, --family.
#[derive(Args, Debug, Clone)]
pub struct GraphSource {
    #[arg(long, conflicts_with_all = ["edges", "family"], required_unless_present_any = ["edges", "family"])]
    pub g6: Option<String>,
    /// File with `n m` and then one `u v` line per edge.
    #[arg(long, conflicts_with = "family")]
    pub edges: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub s: Option<usize>,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub parts: Option<Vec<usize>>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Memoized recurrence.
    Exact,
    /// Every ordering, at most 10 edges.
    Brute,
    /// Closed form; kn, kst and path families only.
    Closed,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchKind {
    /// Non-isomorphic connected graphs with equal polynomials.
    Pairs,
    /// Equal edge-degree-sum multisets, different polynomials.
    Twins,
    /// Non-isomorphic trees with equal polynomials.
    Trees,
    /// Graphs whose coefficients are not log-concave, on 2..=n vertices.
    Logconcave,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableKind {
    /// Every connected graph on 2..=max-n vertices (default 5).
    SmallGraphs,
    /// Every tree on 2..=max-n vertices (default 7).
    Trees,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact law of the tree count.
    Poly {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Exact expected tree count.
    Expect {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Exact probability of ending with a single tree (connected graphs).
    OneComp {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Closed-form values.
    Closed {
        #[command(subcommand)]
        which: Closed,
    },
    /// Monte Carlo estimate of the law.
    Simulate {
        #[command(flatten)]
        graph: GraphSource,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Monte Carlo estimate of the expected tree count over G(n, m).
    GnmSim {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        graphs: u64,
        #[arg(long, default_value_t = 10)]
        orderings: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Estimated single-tree probability for random regular graphs.
    Decay {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_delimiter = ',', default_value = "8,12,16")]
        n_values: Vec<usize>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive searches over small graphs.
    Search {
        #[arg(value_enum)]
        kind: SearchKind,
        #[arg(long)]
        n: usize,
    },
    /// Compares K_{k,k+1} plus an edge with K_{k,k+1}.
    Conjecture {
        #[arg(long)]
        k: usize,
    },
    /// Exact Cheeger constant.
    Cheeger {
        #[command(flatten)]
        graph: GraphSource,
    },
    /// Polynomials of every small connected graph or tree.
    Table {
        #[arg(value_enum)]
        kind: TableKind,
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum Closed {
    Kn {
        #[arg(long)]
        n: usize,
    },
    Kst {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Path with --n edges.
    Path {
        #[arg(long)]
        n: usize,
    },
    /// Single-tree probability of the cycle on --n vertices.
    Cycle1 {
        #[arg(long)]
        n: usize,
    },
    GnmExpect {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    GnmBound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Bipartite finishing probability from an intermediate state.
    Q {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Taylor coefficients of the path generating function.
    PathSeries {
        #[arg(long)]
        x: f64,
        #[arg(long, default_value_t = 11)]
        count: usize,
    },
    /// Left side of the matching identity for --n.
    Matching {
        #[arg(long)]
        n: u64,
    },
}

/// Parses `args` (program name first), runs the command and returns the exit code:
/// 0 on success, 1 when the computation fails, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    2
                }
            };
            return code;
        }
    };
    match execute(&cli, err) {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            0
        }
        Err(Error::Usage(msg)) => {
            let e = Cli::command().error(ErrorKind::ArgumentConflict, msg);
            let _ = write!(err, "{}", e.render());
            2
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: Family) -> Result<T, Error> {
    value.ok_or_else(|| Error::Usage(format!("--family {family:?} needs --{flag}").to_lowercase()))
}

/// Builds the graph named by `src`.
pub fn load_graph(src: &GraphSource) -> Result<Graph, Error> {
    if let Some(text) = &src.g6 {
        return Ok(parse_graph6(text)?);
    }
    if let Some(path) = &src.edges {
        return parse_edge_list(&std::fs::read_to_string(path)?);
    }
    let family = src
        .family
        .ok_or_else(|| Error::Usage("one of --g6, --edges or --family is required".into()))?;
    use Family::*;
    let spec = match family {
        Kn => GeneratorSpec::Complete(need(src.n, "n", family)?),
        Kst => {
            GeneratorSpec::CompleteBipartite(need(src.s, "s", family)?, need(src.t, "t", family)?)
        }
        Multipartite => GeneratorSpec::CompleteMultipartite(
            src.parts
                .clone()
                .ok_or_else(|| Error::Usage("--family multipartite needs --parts".into()))?,
        ),
        Path => GeneratorSpec::Path(need(src.n, "n", family)?),
        Cycle => GeneratorSpec::Cycle(need(src.n, "n", family)?),
        Star => GeneratorSpec::Star(need(src.s, "s", family)?),
        BipartitePlusEdge => GeneratorSpec::BalancedBipartitePlusEdge(need(src.k, "k", family)?),
        Gnm => GeneratorSpec::Gnm {
            n: need(src.n, "n", family)?,
            m: need(src.m, "m", family)?,
            seed: src.graph_seed,
        },
        Regular => GeneratorSpec::RandomRegular {
            n: need(src.n, "n", family)?,
            d: need(src.d, "d", family)?,
            seed: src.graph_seed,
        },
    };
    Ok(generate(&spec)?)
}

fn closed_poly(src: &GraphSource) -> Result<ForestDistribution, Error> {
    let family = src
        .family
        .filter(|_| src.g6.is_none() && src.edges.is_none());
    Ok(match family {
        Some(f @ Family::Kn) => complete_distribution(need(src.n, "n", f)?)?,
        Some(f @ Family::Kst) => {
            bipartite_distribution(need(src.s, "s", f)?, need(src.t, "t", f)?)?
        }
        Some(f @ Family::Path) => {
            let n = need(src.n, "n", f)?;
            if n < 2 {
                return Err(Error::Core(forestpoly_core::Error::InvalidSize(
                    "path needs n >= 2".into(),
                )));
            }
            path_distribution(n - 1)?
        }
        _ => {
            return Err(Error::Usage(
                "--method closed needs --family kn, kst or path".into(),
            ))
        }
    })
}

fn distribution_text(d: &ForestDistribution) -> String {
    d.probs
        .iter()
        .map(|(k, p)| format!("{k} {}\n", format_rational(p)))
        .collect()
}

fn distribution_csv(d: &ForestDistribution) -> String {
    let mut s = String::from("k,probability\n");
    s.push_str(
        &d.probs
            .iter()
            .map(|(k, p)| format!("{k},{}\n", format_rational(p)))
            .collect::<String>(),
    );
    s
}

fn render_distribution(d: &ForestDistribution, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", distribution_json(d)),
        Format::Text => distribution_text(d),
        Format::Csv => distribution_csv(d),
    }
}

fn render_rational(name: &str, r: &Rational, format: Format) -> String {
    let value = format_rational(r);
    match format {
        Format::Json => format!("{}\n", json!({ name: value })),
        Format::Text => format!("{value}\n"),
        Format::Csv => format!("{name}\n{value}\n"),
    }
}

fn json_lines(items: impl IntoIterator<Item = Value>) -> String {
    items.into_iter().map(|v| format!("{v}\n")).collect()
}

fn execute(cli: &Cli, log: &mut dyn Write) -> Result<String, Error> {
    let format = cli.format;
    let mut progress = |msg: String| {
        if cli.verbose {
            let _ = writeln!(log, "{msg}");
        }
    };
    Ok(match &cli.command {
        Command::Poly { graph, method } => {
            let d = match method {
                Method::Exact => ForestEngine::new().forest_polynomial(&load_graph(graph)?)?,
                Method::Brute => brute_force_distribution(&load_graph(graph)?)?,
                Method::Closed => closed_poly(graph)?,
            };
            render_distribution(&d, format)
        }
        Command::Expect { graph } => render_rational(
            "expected_components",
            &expected_components(&load_graph(graph)?)?,
            format,
        ),
        Command::OneComp { graph } => {
            let p = ForestEngine::new().single_component_probability(&load_graph(graph)?)?;
            render_rational("p1", &p, format)
        }
        Command::Closed { which } => closed(which, format)?,
        Command::Simulate {
            graph,
            trials,
            seed,
        } => {
            let g = load_graph(graph)?;
            progress(format!(
                "simulating {trials} orderings of a graph with {} edges",
                g.m()
            ));
            let est = parallel::estimate_distribution(&g, *trials, *seed)?;
            match format {
                Format::Json => format!("{}\n", estimate_json(&est)),
                Format::Text => {
                    let mut s = format!(
                        "trials {}\nseed {}\nmean {}\nstderr {}\n",
                        est.trials, est.seed, est.mean_kappa, est.stderr_kappa
                    );
                    for (k, c) in &est.counts {
                        s.push_str(&format!("{k} {c}\n"));
                    }
                    s
                }
                Format::Csv => {
                    let mut s = String::from("k,count,frequency\n");
                    for (k, c) in &est.counts {
                        s.push_str(&format!("{k},{c},{}\n", est.frequency(*k)));
                    }
                    s
                }
            }
        }
        Command::GnmSim {
            n,
            m,
            graphs,
            orderings,
            seed,
        } => {
            let est = parallel::estimate_gnm_expectation(*n, *m, *graphs, *orderings, *seed)?;
            let exact = gnm_expected_components(*n, *m)?;
            match format {
                Format::Json => format!(
                    "{}\n",
                    json!({"n": n, "m": m, "mean": est.mean, "stderr": est.stderr, "exact": format_rational(&exact)})
                ),
                Format::Text => format!(
                    "mean {}\nstderr {}\nexact {}\n",
                    est.mean,
                    est.stderr,
                    format_rational(&exact)
                ),
                Format::Csv => format!(
                    "n,m,mean,stderr,exact\n{n},{m},{},{},{}\n",
                    est.mean,
                    est.stderr,
                    format_rational(&exact)
                ),
            }
        }
        Command::Decay {
            d,
            n_values,
            trials,
            seed,
        } => {
            progress(format!(
                "decay: d = {d}, n in {n_values:?}, {trials} trials each"
            ));
            let rows = parallel::single_component_decay(*d, n_values, *trials, *seed)?;
            match format {
                Format::Json => json_lines(rows.iter().map(decay_row_json)),
                Format::Csv => decay_csv(&rows)?,
                Format::Text => rows
                    .iter()
                    .map(|r| {
                        let cheeger = r
                            .cheeger
                            .as_ref()
                            .map(format_rational)
                            .unwrap_or_else(|| "-".into());
                        format!(
                            "{:>4} {:>10.6} {:>10.6} {cheeger}\n",
                            r.n, r.p1_hat, r.neg_log_p1_over_n
                        )
                    })
                    .collect(),
            }
        }
        Command::Search { kind, n } => {
            let mut engine = ForestEngine::new();
            progress(format!("search {kind:?} at n = {n}"));
            match kind {
                SearchKind::Pairs | SearchKind::Trees => {
                    let pairs = if *kind == SearchKind::Pairs {
                        find_equal_polynomial_pairs(&mut engine, *n)?
                    } else {
                        find_tree_pairs(&mut engine, *n)?
                    };
                    match format {
                        Format::Json => json_lines(pairs.iter().map(pair_report_json)),
                        Format::Text => pairs
                            .iter()
                            .map(|p| {
                                let tag = if p.explained_by_edge_transitivity {
                                    " edge-transitive deletion"
                                } else {
                                    ""
                                };
                                format!("{} {}{tag}\n", p.graph6_a, p.graph6_b)
                            })
                            .collect(),
                        Format::Csv => {
                            let mut s =
                                String::from("graph6_a,graph6_b,explained_by_edge_transitivity\n");
                            for p in &pairs {
                                s.push_str(&format!(
                                    "{},{},{}\n",
                                    p.graph6_a, p.graph6_b, p.explained_by_edge_transitivity
                                ));
                            }
                            s
                        }
                    }
                }
                SearchKind::Twins => {
                    let twins = find_edge_degree_twins(&mut engine, *n)?;
                    match format {
                        Format::Json => json_lines(twins.iter().map(degree_twin_json)),
                        _ => twins
                            .iter()
                            .map(|t| {
                                format!(
                                    "{} {} {}\n",
                                    t.graph6_a,
                                    t.graph6_b,
                                    format_rational(&t.expectation)
                                )
                            })
                            .collect(),
                    }
                }
                SearchKind::Logconcave => {
                    let bad = sweep_log_concavity(&mut engine, *n)?;
                    match format {
                        Format::Json => json_lines(bad.iter().map(
                            |v| json!({"graph6": v.graph6, "poly": distribution_json(&v.poly)}),
                        )),
                        _ => {
                            let mut s: String =
                                bad.iter().map(|v| format!("{}\n", v.graph6)).collect();
                            s.push_str(&format!("{} violations\n", bad.len()));
                            s
                        }
                    }
                }
            }
        }
        Command::Conjecture { k } => {
            let check = check_conjecture(&mut ForestEngine::new(), *k)?;
            match format {
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "k": check.k,
                        "holds": check.holds,
                        "augmented": distribution_json(&check.p_augmented),
                        "bipartite": distribution_json(&check.p_bipartite),
                    })
                ),
                _ => format!("k {} holds {}\n", check.k, check.holds),
            }
        }
        Command::Cheeger { graph } => {
            render_rational("cheeger", &cheeger_constant(&load_graph(graph)?)?, format)
        }
        Command::Table { kind, max_n } => table(*kind, *max_n, format, &mut progress)?,
    })
}

fn closed(which: &Closed, format: Format) -> Result<String, Error> {
    let rational = |name, r: Rational| render_rational(name, &r, format);
    Ok(match *which {
        Closed::Kn { n } => render_distribution(&complete_distribution(n)?, format),
        Closed::Kst { s, t } => render_distribution(&bipartite_distribution(s, t)?, format),
        Closed::Path { n } => render_distribution(&path_distribution(n)?, format),
        Closed::Cycle1 { n } => rational("p1", cycle_single_component(n)?),
        Closed::GnmExpect { n, m } => {
            rational("expected_components", gnm_expected_components(n, m)?)
        }
        Closed::GnmBound { n, m } => rational("lower_bound", gnm_expectation_lower_bound(n, m)?),
        Closed::Q { s, t, a, b, l } => rational("q", bipartite_q(s, t, a, b, l)?),
        Closed::PathSeries { x, count } => {
            let series = path_series_coefficients(x, count)?;
            match format {
                Format::Json => format!("{}\n", json!({"x": series.x, "coeffs": series.coeffs})),
                Format::Text => series
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{i} {c:e}\n"))
                    .collect(),
                Format::Csv => {
                    let mut s = String::from("n,coefficient\n");
                    for (i, c) in series.coeffs.iter().enumerate() {
                        s.push_str(&format!("{i},{c:e}\n"));
                    }
                    s
                }
            }
        }
        Closed::Matching { n } => {
            let v = matching_identity_lhs(n).to_string();
            match format {
                Format::Json => format!("{}\n", json!({ "value": v })),
                Format::Text => format!("{v}\n"),
                Format::Csv => format!("value\n{v}\n"),
            }
        }
    })
}

/// One row per graph: graph6 plus its polynomial.
fn table(
    kind: TableKind,
    max_n: Option<usize>,
    format: Format,
    progress: &mut dyn FnMut(String),
) -> Result<String, Error> {
    let mut engine = ForestEngine::new();
    let mut rows = Vec::new();
    let (first, last) = match kind {
        TableKind::SmallGraphs => (2, max_n.unwrap_or(5)),
        TableKind::Trees => (2, max_n.unwrap_or(7)),
    };
    for n in first..=last {
        let graphs = match kind {
            TableKind::SmallGraphs => enumerate_connected_graphs(n)?,
            TableKind::Trees => enumerate_trees(n)?,
        };
        progress(format!("table: {} graphs on {n} vertices", graphs.len()));
        for g in graphs {
            rows.push((serialize_graph6(&g)?, engine.forest_polynomial(&g)?));
        }
    }
    Ok(match format {
        Format::Json => json_lines(rows.iter().map(|(g6, d)| {
            let mut v = distribution_json(d);
            v.as_object_mut()
                .expect("distribution is an object")
                .insert("graph6".into(), Value::String(g6.clone()));
            v
        })),
        Format::Csv => {
            let mut s = String::from("graph6,n,m,k,probability\n");
            for (g6, d) in &rows {
                for (k, p) in &d.probs {
                    s.push_str(&format!(
                        "{g6},{},{},{k},{}\n",
                        d.n,
                        d.m,
                        format_rational(p)
                    ));
                }
            }
            s
        }
        Format::Text => rows
            .iter()
            .map(|(g6, d)| {
                let terms: Vec<String> = d
                    .probs
                    .iter()
                    .map(|(k, p)| format!("{} x^{k}", format_rational(p)))
                    .collect();
                format!("{g6:<10} n={} m={:<3} {}\n", d.n, d.m, terms.join(" + "))
            })
            .collect(),
    })
}
