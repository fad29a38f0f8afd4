//! Rauzy graphs: vertices are the length-`k` factors, edges the length-`k+1`
//! factors, joining a factor's `k`-prefix to its `k`-suffix.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{count_simple_cycles, strongly_connected_components};
use crate::words::{factors, Alphabet, BiInfiniteSpec, FactorSet, Symbol, Word};

pub const DEFAULT_CYCLE_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RauzyGraph {
    pub k: usize,
    /// Sorted length-lex.
    pub vertices: Vec<Word>,
    pub edges: Vec<Edge>,
}

/// Builds the `k`-graph from the factor sets of lengths `k` and `k + 1`.
pub fn rauzy_graph(f_k: &FactorSet, f_k1: &FactorSet) -> Result<RauzyGraph> {
    let k = f_k.n;
    if f_k1.n != k + 1 {
        return Err(Error::arg(format!("need factor sets of lengths {k} and {}, got {}", k + 1, f_k1.n)));
    }
    let vertices: Vec<Word> = f_k.words.iter().cloned().collect();
    let position: BTreeMap<&[Symbol], usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let lookup = |part: &[Symbol], label: &Word| {
        position.get(part).copied().ok_or_else(|| {
            Error::data(format!("{}-factor {label} has a {k}-prefix or suffix missing from the vertex set", k + 1))
        })
    };
    let edges = f_k1
        .words
        .iter()
        .map(|label| {
            Ok(Edge { source: lookup(&label[..k], label)?, target: lookup(&label[1..], label)?, label: label.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RauzyGraph { k, vertices, edges })
}

impl RauzyGraph {
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.source].push(e.target);
        }
        adj
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.source == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.target == v).count()
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = format!("digraph rauzy_{} {{\n", self.k);
        self.write_body(&mut out, alphabet, "  ", "");
        out.push_str("}\n");
        out
    }

    fn write_body(&self, out: &mut String, alphabet: &Alphabet, indent: &str, prefix: &str) {
        let quoted = |w: &Word| alphabet.render(w).replace('"', "\\\"");
        let name = |w: &Word| format!("\"{prefix}{}\"", quoted(w));
        for v in &self.vertices {
            let _ = writeln!(out, "{indent}{};", name(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "{indent}{} -> {} [label=\"{}\"];",
                name(&self.vertices[e.source]),
                name(&self.vertices[e.target]),
                quoted(&e.label)
            );
        }
    }
}

/// One file holding every graph as a cluster subgraph.
pub fn combined_dot(graphs: &[RauzyGraph], alphabet: &Alphabet) -> String {
    let mut out = String::from("digraph rauzy {\n");
    for g in graphs {
        let _ = writeln!(out, "  subgraph cluster_k{} {{\n    label=\"k = {}\";", g.k, g.k);
        // vertex names repeat across k, so prefix them
        g.write_body(&mut out, alphabet, "    ", &format!("k{}:", g.k));
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub k: usize,
    pub n_vertices: usize,
    pub n_edges: usize,
    pub strongly_connected: bool,
    /// Vertices with out-degree at least 2.
    pub right_forks: Vec<Word>,
    /// Vertices with in-degree at least 2.
    pub left_forks: Vec<Word>,
    pub n_simple_cycles: usize,
    pub cycles_capped: bool,
}

impl GraphStats {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let render = |ws: &[Word]| ws.iter().map(|w| alphabet.render(w)).collect::<Vec<_>>();
        json!({
            "k": self.k,
            "n_vertices": self.n_vertices,
            "n_edges": self.n_edges,
            "strongly_connected": self.strongly_connected,
            "right_forks": render(&self.right_forks),
            "left_forks": render(&self.left_forks),
            "n_simple_cycles": self.n_simple_cycles,
            "cycles_capped": self.cycles_capped,
        })
    }
}

pub fn graph_stats(g: &RauzyGraph, cycle_cap: usize) -> GraphStats {
    let adj = g.adjacency();
    let comps = strongly_connected_components(&adj);
    let (n_simple_cycles, cycles_capped) = count_simple_cycles(&adj, cycle_cap);
    let forks = |deg: &dyn Fn(usize) -> usize| -> Vec<Word> {
        (0..g.vertices.len()).filter(|&v| deg(v) >= 2).map(|v| g.vertices[v].clone()).collect()
    };
    GraphStats {
        k: g.k,
        n_vertices: g.vertices.len(),
        n_edges: g.edges.len(),
        strongly_connected: comps.len() == 1,
        right_forks: forks(&|v| g.out_degree(v)),
        left_forks: forks(&|v| g.in_degree(v)),
        n_simple_cycles,
        cycles_capped,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    LosesStrongConnectivity { at_k: usize },
    StronglyConnectedThroughout,
    Inconclusive { first_uncertain_k: usize },
}

impl Verdict {
    pub fn describe(&self) -> String {
        match self {
            Verdict::LosesStrongConnectivity { at_k } => format!("loses strong connectivity at k={at_k}"),
            Verdict::StronglyConnectedThroughout => "strongly connected throughout".into(),
            Verdict::Inconclusive { first_uncertain_k } => {
                format!("inconclusive: factor sets not exact from k={first_uncertain_k}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evolution {
    pub stats: Vec<GraphStats>,
    pub verdict: Verdict,
}

impl Evolution {
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        json!({
            "verdict": self.verdict.describe(),
            "stats": self.stats.iter().map(|s| s.to_json(alphabet)).collect::<Vec<_>>(),
        })
    }
}

/// Where factor sets come from.
#[derive(Clone, Copy, Debug)]
pub enum Source<'a> {
    /// Exact factor sets of a symbolic infinite word.
    Spec(&'a BiInfiniteSpec),
    /// A finite prefix of an infinite word; length `n` is trusted for `2n <= |w|`.
    Prefix(&'a [Symbol]),
}

impl Source<'_> {
    fn factors(&self, n: usize) -> Result<FactorSet> {
        match self {
            Source::Spec(spec) => spec.factors(n),
            Source::Prefix(w) => Ok(factors(w, n)),
        }
    }

    fn exact_upto(&self) -> usize {
        match self {
            Source::Spec(_) => usize::MAX,
            Source::Prefix(w) => w.len() / 2,
        }
    }
}

/// Stats of the `k`-graphs for `k = 1..=k_max` and the connectivity verdict.
pub fn evolution(source: Source<'_>, k_max: usize, cycle_cap: usize) -> Result<Evolution> {
    let exact_upto = source.exact_upto();
    let mut stats = Vec::new();
    let mut lower = source.factors(1)?;
    for k in 1..=k_max {
        if k + 1 > exact_upto {
            let verdict = Verdict::Inconclusive { first_uncertain_k: k };
            return Ok(Evolution { stats, verdict });
        }
        let upper = source.factors(k + 1)?;
        let s = graph_stats(&rauzy_graph(&lower, &upper)?, cycle_cap);
        let connected = s.strongly_connected;
        stats.push(s);
        if !connected {
            return Ok(Evolution { stats, verdict: Verdict::LosesStrongConnectivity { at_k: k } });
        }
        lower = upper;
    }
    Ok(Evolution { stats, verdict: Verdict::StronglyConnectedThroughout })
}
