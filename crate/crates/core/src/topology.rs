//! The hull-kernel closure on the primitive ideal space, the
//! specialization preorder it induces, and a simplicity test.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::circle::{CirclePoint, CircleSet};
use crate::error::{Error, Result};
use crate::ideals::{gi_contains, gi_meet, GaugeInvariantIdeal, PrimIdeal, PrimSpace};
use crate::subsets::finitely_leaking_emitters_unchecked;
use crate::vertex_set::{Vertex, VertexSet};

/// A finitely described set of primitive ideals: gamma tails, breaking
/// vertices, and for each tau tail a subset of its circle.
///
/// Tau tails mapped to the empty set are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrimSubset {
    gamma: BTreeSet<usize>,
    breaking: VertexSet,
    circle: BTreeMap<usize, CircleSet>,
}

impl PrimSubset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(p: &PrimIdeal) -> Self {
        let mut s = Self::new();
        s.insert(p);
        s
    }

    pub fn gamma(&self) -> &BTreeSet<usize> {
        &self.gamma
    }

    pub fn breaking(&self) -> &VertexSet {
        &self.breaking
    }

    pub fn circle(&self) -> &BTreeMap<usize, CircleSet> {
        &self.circle
    }

    /// Circle part of one tau tail, empty when absent.
    pub fn circle_of(&self, tail: usize) -> CircleSet {
        self.circle.get(&tail).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty() && self.breaking.is_empty() && self.circle.is_empty()
    }

    pub fn insert(&mut self, p: &PrimIdeal) {
        match *p {
            PrimIdeal::GaugeTail(i) => {
                self.gamma.insert(i);
            }
            PrimIdeal::BreakingVertex(v) => {
                self.breaking.insert(v);
            }
            PrimIdeal::Circle(i, t) => self.insert_circle(i, &CircleSet::point(t)),
        }
    }

    pub fn insert_gamma(&mut self, tail: usize) {
        self.gamma.insert(tail);
    }

    pub fn insert_breaking(&mut self, v: Vertex) {
        self.breaking.insert(v);
    }

    pub fn insert_circle(&mut self, tail: usize, set: &CircleSet) {
        if set.is_empty() {
            return;
        }
        let merged = self.circle_of(tail).union(set);
        self.circle.insert(tail, merged);
    }

    pub fn contains(&self, p: &PrimIdeal) -> bool {
        match *p {
            PrimIdeal::GaugeTail(i) => self.gamma.contains(&i),
            PrimIdeal::BreakingVertex(v) => self.breaking.contains(v),
            PrimIdeal::Circle(i, t) => self.circle.get(&i).is_some_and(|d| d.contains(t)),
        }
    }

    pub fn union(&self, other: &PrimSubset) -> PrimSubset {
        let mut out = self.clone();
        out.gamma.extend(other.gamma.iter().copied());
        out.breaking.extend(other.breaking.iter());
        for (&i, d) in &other.circle {
            out.insert_circle(i, d);
        }
        out
    }

    pub fn is_subset(&self, other: &PrimSubset) -> bool {
        self.union(other) == *other
    }

    /// Checks every member against the tails and breaking vertices of
    /// `space`.
    pub fn validate(&self, space: &PrimSpace) -> Result<()> {
        let n_tails = space.tails().len();
        if let Some(&i) = self.gamma.iter().find(|&&i| i >= n_tails || !space.tail(i).is_gamma()) {
            return Err(Error::InvalidSubset(format!("tail #{i} is not a gamma tail")));
        }
        if let Some(v) = self.breaking.iter().find(|&v| !space.breaking_vertices().contains(v)) {
            let name = if v.index() < space.graph().vertex_count() {
                space.graph().name(v).to_string()
            } else {
                v.to_string()
            };
            return Err(Error::InvalidSubset(format!("{name} is not a breaking vertex")));
        }
        if let Some(&i) = self.circle.keys().find(|&&i| i >= n_tails || !space.tail(i).is_tau()) {
            return Err(Error::InvalidSubset(format!("tail #{i} is not a tau tail")));
        }
        Ok(())
    }

    pub fn to_json(&self, space: &PrimSpace, label_by_root: bool) -> PrimSubsetJson {
        let label = |i: usize| if label_by_root { space.tail_root_label(i) } else { space.tail_id(i) };
        PrimSubsetJson {
            gamma: self.gamma.iter().map(|&i| label(i)).collect(),
            bv: space.graph().set_names(&self.breaking),
            circle: self.circle.iter().map(|(&i, d)| (label(i), d.clone())).collect(),
        }
    }

    pub fn from_json(space: &PrimSpace, json: &PrimSubsetJson) -> Result<PrimSubset> {
        let mut out = PrimSubset::new();
        for id in &json.gamma {
            out.insert_gamma(space.tail_index(id)?);
        }
        for name in &json.bv {
            out.insert_breaking(space.graph().vertex(name)?);
        }
        for (id, d) in &json.circle {
            out.insert_circle(space.tail_index(id)?, d);
        }
        out.validate(space)?;
        Ok(out)
    }

    /// Parses either the JSON form or an inline list of `;`-separated
    /// items: `gamma:<tail>`, `bv:<vertex>`, `circle:<tail>=<circle set>`.
    pub fn parse(space: &PrimSpace, text: &str) -> Result<PrimSubset> {
        let text = text.trim();
        if text.starts_with('{') {
            let json: PrimSubsetJson =
                serde_json::from_str(text).map_err(|e| Error::InvalidSubset(e.to_string()))?;
            return PrimSubset::from_json(space, &json);
        }
        let mut json = PrimSubsetJson::default();
        for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || Error::InvalidSubset(format!("bad item {item:?}"));
            let (kind, rest) = item.split_once(':').ok_or_else(bad)?;
            match kind.trim() {
                "gamma" => json.gamma.push(rest.trim().to_string()),
                "bv" => json.bv.push(rest.trim().to_string()),
                "circle" => {
                    let (tail, set) = rest.split_once('=').ok_or_else(bad)?;
                    let set: CircleSet = set.parse()?;
                    let entry = json.circle.entry(tail.trim().to_string()).or_default();
                    *entry = entry.union(&set);
                }
                _ => return Err(bad()),
            }
        }
        PrimSubset::from_json(space, &json)
    }
}

/// JSON form of a [`PrimSubset`]; empty parts are omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrimSubsetJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bv: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub circle: BTreeMap<String, CircleSet>,
}

/// The two distinguished subfamilies of a set `Y` of tau tails.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TauOrder {
    /// Tails whose loop reaches the loop of no other tail in `Y`.
    pub y_min: BTreeSet<usize>,
    /// Tails whose loop reaches the loop of no tail in `y_min`.
    pub y_inf: BTreeSet<usize>,
}

fn loop_reaches(space: &PrimSpace, from: usize, to: usize) -> bool {
    let lp = |i: usize| space.tail(i).exit_free_loop().expect("tau tail").vertex_set();
    space.graph().set_reaches(&lp(from), &lp(to))
}

pub fn tau_order(space: &PrimSpace, y: &BTreeSet<usize>) -> Result<TauOrder> {
    if let Some(&i) = y.iter().find(|&&i| i >= space.tails().len() || !space.tail(i).is_tau()) {
        return Err(Error::InvalidSubset(format!("tail #{i} is not a tau tail")));
    }
    let y_min: BTreeSet<usize> =
        y.iter().copied().filter(|&u| y.iter().all(|&other| other == u || !loop_reaches(space, u, other))).collect();
    let y_inf = y.iter().copied().filter(|&u| y_min.iter().all(|&v| !loop_reaches(space, u, v))).collect();
    Ok(TauOrder { y_min, y_inf })
}

/// Adds what a non-empty family of tails or breaking vertices forces into
/// the closure, given `cover`, the union of the family's tails. `K` is the
/// complement of `cover`, the intersection of the family's ideals' `K`.
///
/// A gamma tail `M ⊆ cover` is forced unless its sealed emitter leaks
/// finitely out of `K`; a breaking vertex in `cover` is forced unless it
/// leaks finitely out of `K`.
fn add_forced_by_cover(space: &PrimSpace, cover: &VertexSet, forces_tau: bool, out: &mut PrimSubset) {
    let g = space.graph();
    let k = cover.complement(g.vertex_count());
    let leaking = finitely_leaking_emitters_unchecked(g, &k);
    for i in space.gamma_indices() {
        let data = &space.tails()[i];
        if data.tail.vertices().is_subset(cover) && data.sealed.is_disjoint(&leaking) {
            out.insert_gamma(i);
        }
    }
    for v in space.breaking_vertices() {
        if cover.contains(v) && !leaking.contains(v) {
            out.insert_breaking(v);
        }
    }
    if forces_tau {
        for i in space.tau_indices() {
            if space.tail(i).vertices().is_subset(cover) {
                out.insert_circle(i, &CircleSet::all());
            }
        }
    }
}

fn tail_union<'a>(space: &PrimSpace, tails: impl IntoIterator<Item = &'a usize>) -> VertexSet {
    tails.into_iter().fold(VertexSet::new(), |acc, &i| acc.union(space.tail(i).vertices()))
}

/// Closure of `s` in the hull-kernel topology, as the union of the
/// closures of its gamma, breaking-vertex and circle parts.
pub fn closure(space: &PrimSpace, s: &PrimSubset) -> Result<PrimSubset> {
    s.validate(space)?;
    let g = space.graph();
    let mut out = s.clone();

    if !s.gamma.is_empty() {
        add_forced_by_cover(space, &tail_union(space, &s.gamma), true, &mut out);
    }

    if !s.breaking.is_empty() {
        let cover = s.breaking.iter().fold(VertexSet::new(), |acc, w| acc.union(&g.tail_of_vertex(w)));
        add_forced_by_cover(space, &cover, true, &mut out);
    }

    let y: BTreeSet<usize> = s.circle.keys().copied().collect();
    if !y.is_empty() {
        let order = tau_order(space, &y)?;
        if !order.y_inf.is_empty() {
            add_forced_by_cover(space, &tail_union(space, &order.y_inf), true, &mut out);
        }
        let min_cover = tail_union(space, &order.y_min);
        add_forced_by_cover(space, &min_cover, false, &mut out);
        for i in space.tau_indices() {
            if order.y_min.contains(&i) {
                out.insert_circle(i, &s.circle_of(i).closure());
            } else if space.tail(i).vertices().is_subset(&min_cover) {
                out.insert_circle(i, &CircleSet::all());
            }
        }
    }
    Ok(out)
}

/// Decides `p ∈ closure(s)` by testing whether the intersection of `s`
/// lies in `p`, without the case analysis used by [`closure`].
///
/// Primitive ideals are prime, so the intersection lies in `p` iff the
/// meet of the gauge-invariant members does, or some circle family does.
/// A gauge-invariant ideal lies in a circle ideal iff it lies in the lower
/// bound of its sandwich. A circle family over `U` lies in a gauge-invariant
/// ideal iff the upper bound for `U` does, in a circle ideal over another
/// tail iff that upper bound lies below the other tail's lower bound, and in
/// a circle ideal over `U` itself iff the parameter is in the closure of
/// the family's parameter set.
pub fn oracle_closure_member(space: &PrimSpace, s: &PrimSubset, p: &PrimIdeal) -> Result<bool> {
    s.validate(space)?;
    space.validate(p)?;
    let g = space.graph();
    let target = space.shadow(p);

    let gauge_members: Vec<GaugeInvariantIdeal> = s
        .gamma
        .iter()
        .map(|&i| space.tail_ideal(i))
        .chain(s.breaking.iter().map(|v| space.breaking_ideal(v)))
        .collect();
    if !gauge_members.is_empty() && gi_contains(&gi_meet(g, &gauge_members)?, &target) {
        return Ok(true);
    }

    for (&u, d) in &s.circle {
        let (_, upper) = space.sandwich(u)?;
        let member = match *p {
            PrimIdeal::Circle(n, z) if n == u => d.closure().contains(z),
            _ => gi_contains(&upper, &target),
        };
        if member {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A node of the specialization diagram; circle families stand for all
/// their parameters at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimNode {
    Gamma(usize),
    Breaking(Vertex),
    CircleFamily(usize),
}

/// How circle parameters pair up along a specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamRule {
    /// `(N, t) ≤ (N, z)` exactly when `t = z`.
    Equal,
    /// Holds for every parameter involved.
    Any,
}

/// `upper` lies in the closure of `{lower}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Specialization {
    pub lower: PrimNode,
    pub upper: PrimNode,
    /// Present when either end is a circle family.
    pub param: Option<ParamRule>,
}

pub fn prim_nodes(space: &PrimSpace) -> Vec<PrimNode> {
    let mut nodes = Vec::new();
    for i in 0..space.tails().len() {
        nodes.push(if space.tail(i).is_tau() { PrimNode::CircleFamily(i) } else { PrimNode::Gamma(i) });
    }
    nodes.extend(space.breaking_vertices().iter().map(PrimNode::Breaking));
    nodes.sort();
    nodes
}

/// All specializations, read off the closures of singletons. A circle
/// family is represented by its point at turn `0`; rotating the parameter
/// is a symmetry, so the answer is the same for every point.
pub fn specialization_order(space: &PrimSpace) -> Result<Vec<Specialization>> {
    let mut out = Vec::new();
    for lower in prim_nodes(space) {
        let seed = match lower {
            PrimNode::Gamma(i) => PrimIdeal::GaugeTail(i),
            PrimNode::Breaking(v) => PrimIdeal::BreakingVertex(v),
            PrimNode::CircleFamily(i) => PrimIdeal::Circle(i, CirclePoint::ZERO),
        };
        let closed = closure(space, &PrimSubset::singleton(&seed))?;
        for &i in closed.gamma() {
            let param = matches!(lower, PrimNode::CircleFamily(_)).then_some(ParamRule::Any);
            out.push(Specialization { lower, upper: PrimNode::Gamma(i), param });
        }
        for v in closed.breaking() {
            let param = matches!(lower, PrimNode::CircleFamily(_)).then_some(ParamRule::Any);
            out.push(Specialization { lower, upper: PrimNode::Breaking(v), param });
        }
        for (&i, d) in closed.circle() {
            let param = if lower == PrimNode::CircleFamily(i) {
                if *d != CircleSet::point(CirclePoint::ZERO) {
                    return Err(Error::Inconsistent(format!("closure of a circle point is {d}")));
                }
                ParamRule::Equal
            } else if d.is_all() {
                ParamRule::Any
            } else {
                return Err(Error::Inconsistent(format!("closure of a singleton meets another circle in {d}")));
            };
            out.push(Specialization { lower, upper: PrimNode::CircleFamily(i), param: Some(param) });
        }
    }
    out.sort();
    Ok(out)
}

/// The algebra is simple iff its only primitive ideal is zero: the whole
/// vertex set is the only maximal tail, it is a gamma tail, and there are
/// no breaking vertices.
pub fn is_simple(space: &PrimSpace) -> Result<bool> {
    let g = space.graph();
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let tails = space.tails();
    Ok(tails.len() == 1
        && tails[0].tail.is_gamma()
        && *tails[0].tail.vertices() == g.all_vertices()
        && space.breaking_vertices().is_empty())
}
