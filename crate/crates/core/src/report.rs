//! Serializable summaries of a graph's ideal structure, and Graphviz
//! renderings of the graph, its lattices and the specialization order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::Result;
use crate::graph::Graph;
use crate::ideals::{enumerate_gi_ideals, gi_contains, GaugeInvariantIdeal, IdealJson, PrimIdeal, PrimSpace};
use crate::parse::JsonMultiplicity;
use crate::subsets::hereditary_saturated_sets;
use crate::topology::{closure, is_simple, specialization_order, ParamRule, PrimNode, PrimSubset, PrimSubsetJson};
use crate::Cardinality;

pub const SCHEMA: &str = "primspec/1";

/// Everything the crate computes about one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub graph: GraphSummary,
    pub tails: Vec<TailReport>,
    pub breaking_vertices: Vec<String>,
    pub hereditary_saturated: Lattice<Vec<String>>,
    pub ideals: Lattice<IdealJson>,
    pub prim: PrimReport,
    /// Every loop has an exit in every maximal tail it lies in, so no
    /// circle families occur and every ideal is gauge-invariant.
    pub condition_k: bool,
    pub simple: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closure: Option<ClosureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<OrderEdge>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, JsonMultiplicity)>,
    pub row_finite: bool,
    pub sinks: Vec<String>,
    pub infinite_emitters: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailReport {
    pub id: String,
    pub root: String,
    pub kind: String,
    pub vertices: Vec<String>,
    /// The exit-free loop, starting at its least vertex.
    #[serde(rename = "loop", default, skip_serializing_if = "Option::is_none")]
    pub exit_free_loop: Option<Vec<String>>,
    #[serde(rename = "K_M", default, skip_serializing_if = "Option::is_none")]
    pub finite_entry: Option<Vec<String>>,
    #[serde(rename = "B_M", default, skip_serializing_if = "Option::is_none")]
    pub upper_breaking: Option<Vec<String>>,
    pub ideal: IdealJson,
}

/// Elements of a finite poset with the covering pairs `[lower, upper]`
/// as indices into `elements`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lattice<T> {
    pub elements: Vec<T>,
    pub hasse: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimReport {
    pub gamma: Vec<GammaEntry>,
    pub bv: Vec<BreakingEntry>,
    pub tau: Vec<TauEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEntry {
    pub id: String,
    pub tail: Vec<String>,
    pub ideal: IdealJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakingEntry {
    pub vertex: String,
    pub ideal: IdealJson,
}

/// A circle of primitive ideals with the gauge-invariant ideals directly
/// below and above all of them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauEntry {
    pub id: String,
    pub tail: Vec<String>,
    pub lower: IdealJson,
    pub upper: IdealJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub set: PrimSubsetJson,
    pub closure: PrimSubsetJson,
}

/// A primitive ideal, or a whole circle family when `t` is absent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PrimElementJson {
    Gamma {
        tail: String,
    },
    Bv {
        vertex: String,
    },
    Circle {
        tail: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        t: Option<CirclePoint>,
    },
}

impl PrimElementJson {
    pub fn from_ideal(space: &PrimSpace, p: &PrimIdeal, label_by_root: bool) -> Self {
        match *p {
            PrimIdeal::GaugeTail(i) => PrimElementJson::Gamma { tail: tail_label(space, i, label_by_root) },
            PrimIdeal::BreakingVertex(v) => PrimElementJson::Bv { vertex: space.graph().name(v).to_string() },
            PrimIdeal::Circle(i, t) => PrimElementJson::Circle { tail: tail_label(space, i, label_by_root), t: Some(t) },
        }
    }

    pub fn from_node(space: &PrimSpace, node: PrimNode, label_by_root: bool) -> Self {
        match node {
            PrimNode::Gamma(i) => PrimElementJson::Gamma { tail: tail_label(space, i, label_by_root) },
            PrimNode::Breaking(v) => PrimElementJson::Bv { vertex: space.graph().name(v).to_string() },
            PrimNode::CircleFamily(i) => PrimElementJson::Circle { tail: tail_label(space, i, label_by_root), t: None },
        }
    }

    /// Resolves to a primitive ideal; circle entries need a parameter.
    pub fn to_ideal(&self, space: &PrimSpace) -> Result<PrimIdeal> {
        let p = match self {
            PrimElementJson::Gamma { tail } => PrimIdeal::GaugeTail(space.tail_index(tail)?),
            PrimElementJson::Bv { vertex } => PrimIdeal::BreakingVertex(space.graph().vertex(vertex)?),
            PrimElementJson::Circle { tail, t } => {
                let t = t.ok_or_else(|| crate::Error::InvalidSubset(format!("circle element {tail} needs a parameter")))?;
                PrimIdeal::Circle(space.tail_index(tail)?, t)
            }
        };
        space.validate(&p)?;
        Ok(p)
    }
}

/// `upper` lies in the closure of `{lower}`; circle parameters pair up as
/// `param` says.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderEdge {
    pub lower: PrimElementJson,
    pub upper: PrimElementJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub param: Option<ParamRule>,
}

pub fn tail_label(space: &PrimSpace, index: usize, label_by_root: bool) -> String {
    if label_by_root {
        space.tail_root_label(index)
    } else {
        space.tail_id(index)
    }
}

impl Report {
    pub fn build(space: &PrimSpace, label_by_root: bool) -> Result<Report> {
        let g = space.graph();
        Ok(Report {
            schema: SCHEMA.to_string(),
            graph: graph_summary(g),
            tails: tail_reports(space, label_by_root),
            breaking_vertices: g.set_names(space.breaking_vertices()),
            hereditary_saturated: hs_lattice(g),
            ideals: ideal_lattice(g),
            prim: prim_report(space, label_by_root),
            condition_k: space.tau_indices().next().is_none(),
            simple: is_simple(space)?,
            closure: None,
            order: None,
        })
    }

    pub fn with_closure(mut self, space: &PrimSpace, set: &PrimSubset, label_by_root: bool) -> Result<Report> {
        let closed = closure(space, set)?;
        self.closure = Some(ClosureReport {
            set: set.to_json(space, label_by_root),
            closure: closed.to_json(space, label_by_root),
        });
        Ok(self)
    }

    pub fn with_order(mut self, space: &PrimSpace, label_by_root: bool) -> Result<Report> {
        self.order = Some(order_edges(space, label_by_root)?);
        Ok(self)
    }
}

pub fn graph_summary(g: &Graph) -> GraphSummary {
    let json = crate::parse::GraphJson::from_graph(g);
    GraphSummary {
        vertices: json.vertices,
        edges: json.edges,
        row_finite: g.is_row_finite(),
        sinks: g.vertices().filter(|&v| g.out_cardinality(v).is_zero()).map(|v| g.name(v).to_string()).collect(),
        infinite_emitters: g
            .vertices()
            .filter(|&v| g.out_cardinality(v).is_infinite())
            .map(|v| g.name(v).to_string())
            .collect(),
    }
}

pub fn tail_reports(space: &PrimSpace, label_by_root: bool) -> Vec<TailReport> {
    let g = space.graph();
    space
        .tails()
        .iter()
        .enumerate()
        .map(|(i, data)| TailReport {
            id: tail_label(space, i, label_by_root),
            root: space.tail_root_label(i),
            kind: if data.tail.is_tau() { "tau" } else { "gamma" }.to_string(),
            vertices: g.set_names(data.tail.vertices()),
            exit_free_loop: data
                .tail
                .exit_free_loop()
                .map(|l| l.vertices().iter().map(|&v| g.name(v).to_string()).collect()),
            finite_entry: data.finite_entry.as_ref().map(|k| g.set_names(k)),
            upper_breaking: data.upper_breaking.as_ref().map(|b| g.set_names(b)),
            ideal: space.tail_ideal(i).to_json(g),
        })
        .collect()
}

pub fn prim_report(space: &PrimSpace, label_by_root: bool) -> PrimReport {
    let g = space.graph();
    let listing = space.prim_elements();
    PrimReport {
        gamma: listing
            .gamma
            .iter()
            .map(|(i, j)| GammaEntry {
                id: tail_label(space, *i, label_by_root),
                tail: g.set_names(space.tail(*i).vertices()),
                ideal: j.to_json(g),
            })
            .collect(),
        bv: listing
            .breaking
            .iter()
            .map(|(v, j)| BreakingEntry { vertex: g.name(*v).to_string(), ideal: j.to_json(g) })
            .collect(),
        tau: listing
            .tau
            .iter()
            .map(|&i| {
                let (lower, upper) = space.sandwich(i).expect("listed tails are tau tails");
                TauEntry {
                    id: tail_label(space, i, label_by_root),
                    tail: g.set_names(space.tail(i).vertices()),
                    lower: lower.to_json(g),
                    upper: upper.to_json(g),
                }
            })
            .collect(),
    }
}

/// Covering pairs of the order `le` on `items`.
pub fn hasse_edges<T>(items: &[T], le: impl Fn(&T, &T) -> bool) -> Vec<[usize; 2]> {
    let n = items.len();
    let below: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i != j && le(&items[i], &items[j])).collect()).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if below[i][j] && !(0..n).any(|k| below[i][k] && below[k][j]) {
                out.push([i, j]);
            }
        }
    }
    out
}

/// Hereditary saturated sets ordered by inclusion.
pub fn hs_lattice(g: &Graph) -> Lattice<Vec<String>> {
    let sets = hereditary_saturated_sets(g);
    let hasse = hasse_edges(&sets, |a, b| a.is_subset(b));
    Lattice { elements: sets.iter().map(|s| g.set_names(s)).collect(), hasse }
}

/// Gauge-invariant ideals ordered by containment.
pub fn ideal_lattice(g: &Graph) -> Lattice<IdealJson> {
    let ideals: Vec<GaugeInvariantIdeal> = enumerate_gi_ideals(g);
    let hasse = hasse_edges(&ideals, gi_contains);
    Lattice { elements: ideals.iter().map(|j| j.to_json(g)).collect(), hasse }
}

pub fn order_edges(space: &PrimSpace, label_by_root: bool) -> Result<Vec<OrderEdge>> {
    Ok(specialization_order(space)?
        .into_iter()
        .map(|s| OrderEdge {
            lower: PrimElementJson::from_node(space, s.lower, label_by_root),
            upper: PrimElementJson::from_node(space, s.upper, label_by_root),
            param: s.param,
        })
        .collect())
}

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

fn set_label(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

pub fn ideal_label(j: &IdealJson) -> String {
    format!("({}, {})", set_label(&j.k), set_label(&j.b))
}

/// The graph, with multiplicities other than one written on the edges.
pub fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("digraph graph_E {\n");
    for name in g.names() {
        let _ = writeln!(out, "  {};", quote(name.as_str()));
    }
    for e in g.edges() {
        let label = match e.multiplicity {
            Cardinality::Finite(1) => String::new(),
            Cardinality::Finite(m) => format!(" [label=\"{m}\"]"),
            Cardinality::Omega => " [label=\"∞\"]".to_string(),
        };
        let _ = writeln!(out, "  {} -> {}{label};", quote(g.name(e.src).as_str()), quote(g.name(e.dst).as_str()));
    }
    out.push_str("}\n");
    out
}

/// A Hasse diagram drawn bottom to top.
pub fn lattice_dot(name: &str, labels: &[String], hasse: &[[usize; 2]]) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, label) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(label));
    }
    for [lo, hi] in hasse {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

/// The specialization order with each circle family drawn as one node.
/// Arrows run from a point to the points in its closure, covering pairs
/// only; a dashed self-loop on a circle family records that `(N, t)` lies
/// in the closure of `(N, z)` exactly when `t = z`.
pub fn order_dot(space: &PrimSpace, label_by_root: bool) -> Result<String> {
    let order = specialization_order(space)?;
    let nodes = crate::topology::prim_nodes(space);
    let index = |n: PrimNode| nodes.iter().position(|&m| m == n).expect("node listed");
    let strict: BTreeSet<(usize, usize)> =
        order.iter().filter(|s| s.lower != s.upper).map(|s| (index(s.lower), index(s.upper))).collect();
    let mut out = String::from("digraph specialization {\n  rankdir=BT;\n");
    for (i, &node) in nodes.iter().enumerate() {
        let (label, shape) = match node {
            PrimNode::Gamma(t) => (tail_label(space, t, label_by_root), "ellipse"),
            PrimNode::Breaking(v) => (format!("bv {}", space.graph().name(v)), "diamond"),
            PrimNode::CircleFamily(t) => (format!("{} ×𝕋", tail_label(space, t, label_by_root)), "doublecircle"),
        };
        let _ = writeln!(out, "  n{i} [label={}, shape={shape}];", quote(&label));
    }
    for s in &order {
        let (lo, hi) = (index(s.lower), index(s.upper));
        if lo == hi {
            if s.param == Some(ParamRule::Equal) {
                let _ = writeln!(out, "  n{lo} -> n{hi} [style=dashed, label=\"t = z\"];");
            }
            continue;
        }
        if strict.iter().any(|&(a, b)| a == lo && b != hi && strict.contains(&(b, hi))) {
            continue;
        }
        let label = if matches!(s.lower, PrimNode::CircleFamily(_)) { " [label=\"all t\"]" } else { "" };
        let _ = writeln!(out, "  n{lo} -> n{hi}{label};");
    }
    out.push_str("}\n");
    Ok(out)
}

/// One line per circle family of a closed subset, for text output.
pub fn circle_lines(space: &PrimSpace, set: &PrimSubset, label_by_root: bool) -> Vec<String> {
    set.circle()
        .iter()
        .map(|(&i, d)| format!("{} × {}", tail_label(space, i, label_by_root), d))
        .collect()
}
