//! Gauge-invariant ideals as admissible pairs `(K, B)`, the primitive ideal
//! index set, and quotient graphs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cardinality::Cardinality;
use crate::circle::CirclePoint;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subsets::{
    finitely_leaking_emitters_unchecked, hereditary_saturated_sets, is_hereditary, is_saturated,
    vertices_not_reaching,
};
use crate::tails::{breaking_vertices, maximal_tails, tail_data, MaximalTail, TailData};
use crate::vertex_set::{Vertex, VertexSet};

/// Prefix of the sink added to a quotient graph for each emitter that
/// leaks finitely and is not in `B`.
pub const BETA_PREFIX: &str = "beta_";

/// An admissible pair: `K` hereditary saturated and `B` a subset of the
/// infinite emitters leaking finitely out of `K`.
///
/// `(∅, ∅)` is the zero ideal and `(E⁰, ∅)` the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaugeInvariantIdeal {
    k: VertexSet,
    b: VertexSet,
}

impl GaugeInvariantIdeal {
    pub fn new(g: &Graph, k: VertexSet, b: VertexSet) -> Result<Self> {
        check_admissible(g, &k, &b)?;
        Ok(GaugeInvariantIdeal { k, b })
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(k: VertexSet, b: VertexSet) -> Self {
        GaugeInvariantIdeal { k, b }
    }

    pub fn zero() -> Self {
        GaugeInvariantIdeal { k: VertexSet::new(), b: VertexSet::new() }
    }

    pub fn whole(g: &Graph) -> Self {
        GaugeInvariantIdeal { k: g.all_vertices(), b: VertexSet::new() }
    }

    pub fn k(&self) -> &VertexSet {
        &self.k
    }

    pub fn b(&self) -> &VertexSet {
        &self.b
    }

    /// Whether the pair is admissible for `g`.
    pub fn is_admissible(&self, g: &Graph) -> bool {
        check_admissible(g, &self.k, &self.b).is_ok()
    }

    pub fn to_json(&self, g: &Graph) -> IdealJson {
        IdealJson { k: g.set_names(&self.k), b: g.set_names(&self.b) }
    }
}

fn check_admissible(g: &Graph, k: &VertexSet, b: &VertexSet) -> Result<()> {
    if let Some(v) = k.iter().chain(b.iter()).find(|v| v.index() >= g.vertex_count()) {
        return Err(Error::InadmissibleIdeal(format!("vertex {v} is not in the graph")));
    }
    if !is_hereditary(g, k) {
        return Err(Error::InadmissibleIdeal("K is not hereditary".into()));
    }
    if !is_saturated(g, k) {
        return Err(Error::InadmissibleIdeal("K is not saturated".into()));
    }
    let allowed = finitely_leaking_emitters_unchecked(g, k);
    if let Some(v) = b.iter().find(|v| !allowed.contains(*v)) {
        return Err(Error::InadmissibleIdeal(format!(
            "{} is not an infinite emitter leaking finitely out of K",
            g.name(v)
        )));
    }
    Ok(())
}

/// JSON form of an ideal: `{"K":[...],"B":[...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(rename = "B")]
    pub b: Vec<String>,
}

impl IdealJson {
    pub fn into_ideal(self, g: &Graph) -> Result<GaugeInvariantIdeal> {
        GaugeInvariantIdeal::new(g, g.vertex_set(&self.k)?, g.vertex_set(&self.b)?)
    }
}

/// Every admissible pair, sorted by `K` then `B`.
pub fn enumerate_gi_ideals(g: &Graph) -> Vec<GaugeInvariantIdeal> {
    let mut out = Vec::new();
    for k in hereditary_saturated_sets(g) {
        let leaking: Vec<Vertex> = finitely_leaking_emitters_unchecked(g, &k).iter().collect();
        assert!(leaking.len() < 64, "too many finitely leaking emitters to enumerate");
        for mask in 0..1u64 << leaking.len() {
            let b = leaking.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            out.push(GaugeInvariantIdeal { k: k.clone(), b });
        }
    }
    out.sort();
    out
}

/// `J(K1,B1) ⊆ J(K2,B2)` iff `K1 ⊆ K2` and `B1 ⊆ K2 ∪ B2`.
pub fn gi_contains(smaller: &GaugeInvariantIdeal, larger: &GaugeInvariantIdeal) -> bool {
    smaller.k.is_subset(&larger.k) && smaller.b.iter().all(|v| larger.k.contains(v) || larger.b.contains(v))
}

/// Greatest lower bound: `K = ∩ Kᵢ` and `B = ∩ (Kᵢ ∪ Bᵢ)` cut down to the
/// emitters admissible for `K`.
pub fn gi_meet<'a>(
    g: &Graph,
    family: impl IntoIterator<Item = &'a GaugeInvariantIdeal>,
) -> Result<GaugeInvariantIdeal> {
    let mut iter = family.into_iter();
    let first = iter.next().ok_or(Error::EmptyFamily)?;
    let mut k = first.k.clone();
    let mut covered = first.k.union(&first.b);
    for j in iter {
        k = k.intersection(&j.k);
        covered = covered.intersection(&j.k.union(&j.b));
    }
    let b = covered.intersection(&finitely_leaking_emitters_unchecked(g, &k));
    Ok(GaugeInvariantIdeal { k, b })
}

/// Meet of the lower sandwich ideals of a family of tau tails, computed as
/// `(K, all finitely leaking emitters of K)` with `K` the intersection of
/// the tail complements.
pub fn mt_intersection_special<'a>(
    g: &Graph,
    tails: impl IntoIterator<Item = &'a MaximalTail>,
) -> Result<GaugeInvariantIdeal> {
    let mut k: Option<VertexSet> = None;
    for t in tails {
        if !t.is_tau() {
            return Err(Error::NotTauTail);
        }
        let complement = t.vertices().complement(g.vertex_count());
        k = Some(match k {
            Some(acc) => acc.intersection(&complement),
            None => complement,
        });
    }
    let k = k.ok_or(Error::EmptyFamily)?;
    let b = finitely_leaking_emitters_unchecked(g, &k);
    Ok(GaugeInvariantIdeal { k, b })
}

/// Quotient graph by `J(K,B)`: vertices outside `K` plus a sink
/// `beta_v` for every finitely leaking emitter `v` not in `B`; edges into
/// `K` are dropped and each edge into such a `v` gains a parallel copy into
/// `beta_v`.
pub fn quotient_graph(g: &Graph, ideal: &GaugeInvariantIdeal) -> Result<Graph> {
    check_admissible(g, &ideal.k, &ideal.b)?;
    let kept: VertexSet = ideal.k.complement(g.vertex_count());
    let betas = finitely_leaking_emitters_unchecked(g, &ideal.k).difference(&ideal.b);
    let beta_name = |v: Vertex| format!("{BETA_PREFIX}{}", g.name(v));
    let mut names: Vec<String> = kept.iter().map(|v| g.name(v).to_string()).collect();
    for v in &betas {
        let name = beta_name(v);
        if g.vertex(&name).is_ok() {
            return Err(Error::NameCollision(name));
        }
        names.push(name);
    }
    let mut edges: Vec<(String, String, Cardinality)> = Vec::new();
    for e in g.edges() {
        if !kept.contains(e.dst) {
            continue;
        }
        edges.push((g.name(e.src).to_string(), g.name(e.dst).to_string(), e.multiplicity));
        if betas.contains(e.dst) {
            edges.push((g.name(e.src).to_string(), beta_name(e.dst), e.multiplicity));
        }
    }
    Graph::new(names, edges)
}

/// A primitive ideal, with tails referred to by their index in
/// [`PrimSpace::tails`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimIdeal {
    GaugeTail(usize),
    BreakingVertex(Vertex),
    Circle(usize, CirclePoint),
}

/// The primitive ideal space of a graph: maximal tails with their data,
/// breaking vertices, and the ideals they index.
#[derive(Debug, Clone)]
pub struct PrimSpace {
    graph: Graph,
    tails: Vec<TailData>,
    breaking: VertexSet,
}

/// Gauge-invariant primitive ideals keyed by what indexes them, and the
/// tau tails each carrying a circle of primitive ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimListing {
    pub gamma: Vec<(usize, GaugeInvariantIdeal)>,
    pub breaking: Vec<(Vertex, GaugeInvariantIdeal)>,
    pub tau: Vec<usize>,
}

impl PrimSpace {
    pub fn new(g: &Graph) -> Result<PrimSpace> {
        let tails = maximal_tails(g)?.iter().map(|t| tail_data(g, t)).collect();
        Ok(PrimSpace { graph: g.clone(), tails, breaking: breaking_vertices(g) })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tails(&self) -> &[TailData] {
        &self.tails
    }

    pub fn tail(&self, index: usize) -> &MaximalTail {
        &self.tails[index].tail
    }

    pub fn breaking_vertices(&self) -> &VertexSet {
        &self.breaking
    }

    pub fn gamma_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.tails.len()).filter(|&i| self.tail(i).is_gamma())
    }

    pub fn tau_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.tails.len()).filter(|&i| self.tail(i).is_tau())
    }

    /// Default tail identifier: `M` followed by the 1-based canonical index.
    pub fn tail_id(&self, index: usize) -> String {
        format!("M{}", index + 1)
    }

    /// Identifier naming a tail by its least root, the first vertex `x` with
    /// the tail equal to `{v : v ≥ x}`.
    pub fn tail_root_label(&self, index: usize) -> String {
        let tail = self.tail(index).vertices();
        let root = tail
            .iter()
            .find(|&x| self.graph.tail_of_vertex(x) == *tail)
            .expect("every maximal tail of a finite graph has a root");
        format!("T({})", self.graph.name(root))
    }

    /// Resolves either identifier form back to a tail index.
    pub fn tail_index(&self, id: &str) -> Result<usize> {
        (0..self.tails.len())
            .find(|&i| self.tail_id(i) == id || self.tail_root_label(i) == id)
            .ok_or_else(|| Error::InvalidSubset(format!("unknown tail {id:?}")))
    }

    /// `(Ω(M), Ω(M)^fin)` for a tail `M`.
    pub fn tail_ideal(&self, index: usize) -> GaugeInvariantIdeal {
        let k = self.tails[index].complement.clone();
        let b = finitely_leaking_emitters_unchecked(&self.graph, &k);
        GaugeInvariantIdeal { k, b }
    }

    /// `(Ω(v), Ω(v)^fin \ {v})` for a breaking vertex `v`.
    pub fn breaking_ideal(&self, v: Vertex) -> GaugeInvariantIdeal {
        let k = vertices_not_reaching(&self.graph, &VertexSet::singleton(v));
        let mut b = finitely_leaking_emitters_unchecked(&self.graph, &k);
        b.remove(v);
        GaugeInvariantIdeal { k, b }
    }

    /// The largest gauge-invariant ideal below every circle ideal of a tau
    /// tail and the smallest one above all of them.
    pub fn sandwich(&self, index: usize) -> Result<(GaugeInvariantIdeal, GaugeInvariantIdeal)> {
        let data = &self.tails[index];
        match (&data.finite_entry, &data.upper_breaking) {
            (Some(k), Some(b)) => Ok((self.tail_ideal(index), GaugeInvariantIdeal { k: k.clone(), b: b.clone() })),
            _ => Err(Error::NotTauTail),
        }
    }

    /// The ideal of a gauge-invariant primitive ideal, or the lower sandwich
    /// bound of a circle ideal.
    pub fn shadow(&self, p: &PrimIdeal) -> GaugeInvariantIdeal {
        match *p {
            PrimIdeal::GaugeTail(i) | PrimIdeal::Circle(i, _) => self.tail_ideal(i),
            PrimIdeal::BreakingVertex(v) => self.breaking_ideal(v),
        }
    }

    pub fn prim_elements(&self) -> PrimListing {
        PrimListing {
            gamma: self.gamma_indices().map(|i| (i, self.tail_ideal(i))).collect(),
            breaking: self.breaking.iter().map(|v| (v, self.breaking_ideal(v))).collect(),
            tau: self.tau_indices().collect(),
        }
    }

    /// Checks that `p` names a primitive ideal of this space.
    pub fn validate(&self, p: &PrimIdeal) -> Result<()> {
        let ok = match *p {
            PrimIdeal::GaugeTail(i) => i < self.tails.len() && self.tail(i).is_gamma(),
            PrimIdeal::BreakingVertex(v) => self.breaking.contains(v),
            PrimIdeal::Circle(i, _) => i < self.tails.len() && self.tail(i).is_tau(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidSubset(format!("{p:?} is not a primitive ideal of this graph")))
        }
    }

    /// Gauge-invariant ideals that are primitive.
    pub fn gauge_primitive_ideals(&self) -> BTreeSet<GaugeInvariantIdeal> {
        let listing = self.prim_elements();
        listing.gamma.into_iter().map(|(_, j)| j).chain(listing.breaking.into_iter().map(|(_, j)| j)).collect()
    }
}
