//! Text formats: edge lists, JSON records and the decay CSV.

use std::collections::BTreeMap;

use forestpoly_core::distribution::{format_rational, parse_rational};
use forestpoly_core::monte_carlo::{DecayRow, EstimatedDistribution};
use forestpoly_core::search::{DegreeTwin, PairReport};
use forestpoly_core::{CanonicalKey, ForestDistribution, Graph};
use serde_json::{json, Map, Value};

use crate::Error;

/// Parses `n m` followed by `m` lines `u v`. Blank lines are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph, Error> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Format("empty edge list".into()))?;
    let [n, m] = numbers::<2>(header)?;
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let [u, v] = numbers::<2>(line)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Format(format!(
            "header promises {m} edges, found {}",
            edges.len()
        )));
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

fn numbers<const N: usize>(line: &str) -> Result<[usize; N], Error> {
    let parsed: Vec<usize> = line
        .split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| Error::Format(format!("not a vertex index: {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    parsed
        .try_into()
        .map_err(|_| Error::Format(format!("expected {N} numbers in line {line:?}")))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

fn probs_object<V>(items: impl IntoIterator<Item = (usize, V)>, f: impl Fn(V) -> Value) -> Value {
    // keys go in numeric order: "2" before "10"
    let mut map = Map::new();
    for (k, v) in items {
        map.insert(k.to_string(), f(v));
    }
    Value::Object(map)
}

/// `{"n":..,"m":..,"probs":{"1":"num/den",..}}`, keys in numeric order.
pub fn distribution_json(d: &ForestDistribution) -> Value {
    json!({
        "n": d.n,
        "m": d.m,
        "probs": probs_object(d.probs.iter().map(|(&k, p)| (k, p)), |p| Value::String(format_rational(p))),
    })
}

pub fn parse_distribution_json(value: &Value) -> Result<ForestDistribution, Error> {
    let bad = |what: &str| Error::Format(format!("distribution JSON: {what}"));
    let field = |name: &str| {
        value
            .get(name)
            .and_then(Value::as_u64)
            .map(|x| x as usize)
            .ok_or_else(|| bad(name))
    };
    let (n, m) = (field("n")?, field("m")?);
    let probs = value
        .get("probs")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("probs"))?;
    let mut parsed = BTreeMap::new();
    for (k, p) in probs {
        let k: usize = k.parse().map_err(|_| bad("key"))?;
        let p = p.as_str().ok_or_else(|| bad("probability"))?;
        parsed.insert(k, parse_rational(p)?);
    }
    Ok(ForestDistribution::new(n, m, parsed))
}

pub fn key_hex(key: &CanonicalKey) -> String {
    key.as_bytes().iter().map(|b| format!("{b:02x}")).collect()
}

pub fn pair_report_json(p: &PairReport) -> Value {
    json!({
        "graph6_a": p.graph6_a,
        "graph6_b": p.graph6_b,
        "key_a": key_hex(&p.key_a),
        "key_b": key_hex(&p.key_b),
        "explained_by_edge_transitivity": p.explained_by_edge_transitivity,
        "shared_polynomial": distribution_json(&p.shared_polynomial),
    })
}

pub fn degree_twin_json(t: &DegreeTwin) -> Value {
    json!({
        "graph6_a": t.graph6_a,
        "graph6_b": t.graph6_b,
        "expectation": format_rational(&t.expectation),
        "poly_a": distribution_json(&t.poly_a),
        "poly_b": distribution_json(&t.poly_b),
    })
}

pub fn estimate_json(e: &EstimatedDistribution) -> Value {
    json!({
        "trials": e.trials,
        "seed": e.seed,
        "mean_kappa": e.mean_kappa,
        "stderr_kappa": e.stderr_kappa,
        "counts": probs_object(e.counts.iter().map(|(&k, &c)| (k, c)), Value::from),
    })
}

/// JSON has no infinity; a row with no single-tree trial reports `null`.
pub fn decay_row_json(r: &DecayRow) -> Value {
    let finite = |x: f64| if x.is_finite() { json!(x) } else { Value::Null };
    json!({
        "n": r.n,
        "trials": r.trials,
        "single_tree_trials": r.single_tree_trials,
        "p1_hat": r.p1_hat,
        "neg_log_p1_over_n": finite(r.neg_log_p1_over_n),
        "cheeger": r.cheeger.as_ref().map(format_rational),
    })
}

pub const DECAY_CSV_HEADER: [&str; 4] = ["n", "p1_hat", "neg_log_p1_over_n", "cheeger"];

/// CSV with header `n,p1_hat,neg_log_p1_over_n,cheeger`; a missing Cheeger value is an empty field.
pub fn decay_csv(rows: &[DecayRow]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(DECAY_CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.p1_hat.to_string(),
            r.neg_log_p1_over_n.to_string(),
            r.cheeger.as_ref().map(format_rational).unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
