//! Finitely presented directed graphs.
//!
//! A [`Graph`] has finitely many named vertices and aggregates parallel
//! edges into a single record carrying a [`Cardinality`]. An edge of
//! multiplicity `ω` stands for countably many parallel edges.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cardinality::Cardinality;
use crate::error::{Error, Result};
use crate::vertex_set::{Vertex, VertexSet};

/// Largest finite multiplicity accepted on an edge.
pub const MAX_MULTIPLICITY: u64 = i64::MAX as u64;

/// Vertex name: non-empty, over `[A-Za-z0-9_]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VertexId(String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if Self::is_valid(&name) {
            Ok(VertexId(name))
        } else {
            Err(Error::InvalidVertexName(name))
        }
    }

    pub fn is_valid(name: &str) -> bool {
        !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for VertexId {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        VertexId::new(value)
    }
}

impl From<VertexId> for String {
    fn from(value: VertexId) -> String {
        value.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An aggregated edge record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub src: Vertex,
    pub dst: Vertex,
    pub multiplicity: Cardinality,
}

/// A directed graph with a finite vertex set and edge multiplicities in
/// `{1, 2, …} ∪ {ω}`.
///
/// Immutable after construction. Reachability is precomputed.
#[derive(Clone)]
pub struct Graph {
    names: Vec<VertexId>,
    index: HashMap<VertexId, Vertex>,
    edges: BTreeMap<(Vertex, Vertex), Cardinality>,
    out: Vec<Vec<(Vertex, Cardinality)>>,
    out_total: Vec<Cardinality>,
    reach: Vec<Vec<bool>>,
}

impl Graph {
    /// Builds a graph from vertex names and `(src, dst, multiplicity)` triples.
    ///
    /// Repeated `(src, dst)` pairs are summed.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        S: Into<String>,
        E: IntoIterator<Item = (String, String, Cardinality)>,
    {
        let mut names = vertices.into_iter().map(VertexId::new).collect::<Result<Vec<_>>>()?;
        names.sort();
        for pair in names.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(pair[0].to_string()));
            }
        }
        let index: HashMap<VertexId, Vertex> =
            names.iter().enumerate().map(|(i, name)| (name.clone(), Vertex(i))).collect();
        let lookup = |name: &str| -> Result<Vertex> {
            VertexId::new(name)
                .ok()
                .and_then(|id| index.get(&id).copied())
                .ok_or_else(|| Error::UnknownVertex(name.to_string()))
        };

        let mut agg: BTreeMap<(Vertex, Vertex), Cardinality> = BTreeMap::new();
        for (src, dst, mult) in edges {
            if mult.is_zero() {
                return Err(Error::ZeroMultiplicity { src, dst });
            }
            let key = (lookup(&src)?, lookup(&dst)?);
            let entry = agg.entry(key).or_insert(Cardinality::ZERO);
            *entry = match entry.checked_add(mult) {
                Some(Cardinality::Finite(m)) if m > MAX_MULTIPLICITY => None,
                other => other,
            }
            .ok_or(Error::MultiplicityOverflow { src, dst })?;
        }
        Ok(Self::from_parts(names, index, agg))
    }

    fn from_parts(
        names: Vec<VertexId>,
        index: HashMap<VertexId, Vertex>,
        edges: BTreeMap<(Vertex, Vertex), Cardinality>,
    ) -> Graph {
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        for (&(s, d), &m) in &edges {
            out[s.0].push((d, m));
        }
        let out_total = out.iter().map(|es| es.iter().map(|&(_, m)| m).sum()).collect();
        let reach = (0..n)
            .map(|start| {
                let mut seen = vec![false; n];
                seen[start] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(u) = queue.pop_front() {
                    for &(d, _) in &out[u] {
                        if !seen[d.0] {
                            seen[d.0] = true;
                            queue.push_back(d.0);
                        }
                    }
                }
                seen
            })
            .collect();
        Graph { names, index, edges, out, out_total, reach }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = Vertex> + DoubleEndedIterator {
        (0..self.names.len()).map(Vertex)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    pub fn name(&self, v: Vertex) -> &VertexId {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    /// Looks a vertex up by name.
    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        VertexId::new(name)
            .ok()
            .and_then(|id| self.index.get(&id).copied())
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    /// Resolves a list of names into a vertex set.
    pub fn vertex_set<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<VertexSet> {
        names.into_iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|v| self.name(v).to_string()).collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().map(|(&(src, dst), &multiplicity)| Edge { src, dst, multiplicity })
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Multiplicity of `src -> dst`, zero when absent.
    pub fn multiplicity(&self, src: Vertex, dst: Vertex) -> Cardinality {
        self.edges.get(&(src, dst)).copied().unwrap_or(Cardinality::ZERO)
    }

    /// Out-neighbours of `v` with multiplicities.
    pub fn successors(&self, v: Vertex) -> &[(Vertex, Cardinality)] {
        &self.out[v.0]
    }

    /// `|s⁻¹(v)|`.
    pub fn out_cardinality(&self, v: Vertex) -> Cardinality {
        self.out_total[v.0]
    }

    /// `|s⁻¹(v) ∩ r⁻¹(targets)|`.
    pub fn out_cardinality_into(&self, v: Vertex, targets: &VertexSet) -> Cardinality {
        self.out[v.0].iter().filter(|(d, _)| targets.contains(*d)).map(|&(_, m)| m).sum()
    }

    /// `|s⁻¹(v) ∩ r⁻¹(E⁰ \ excluded)|`.
    pub fn out_cardinality_outside(&self, v: Vertex, excluded: &VertexSet) -> Cardinality {
        self.out[v.0].iter().filter(|(d, _)| !excluded.contains(*d)).map(|&(_, m)| m).sum()
    }

    /// `a ≥ b`: a path (possibly of length zero) leads from `a` to `b`.
    pub fn reaches(&self, a: Vertex, b: Vertex) -> bool {
        self.reach[a.0][b.0]
    }

    /// Whether some vertex of `from` reaches some vertex of `to`.
    pub fn set_reaches(&self, from: &VertexSet, to: &VertexSet) -> bool {
        from.iter().any(|a| to.iter().any(|b| self.reaches(a, b)))
    }

    /// `{v : v ≥ x}`.
    pub fn tail_of_vertex(&self, x: Vertex) -> VertexSet {
        self.vertices().filter(|&v| self.reaches(v, x)).collect()
    }

    /// Vertices reachable from some member of `set`, members included.
    pub fn forward_closure(&self, set: &VertexSet) -> VertexSet {
        self.vertices().filter(|&w| set.iter().any(|v| self.reaches(v, w))).collect()
    }

    pub fn is_row_finite(&self) -> bool {
        self.out_total.iter().all(|c| c.is_finite())
    }

    /// All vertex-simple loops with every vertex in `within`, each rotated to
    /// start at its least vertex, sorted by vertex sequence.
    pub fn vertex_simple_loops(&self, within: &VertexSet) -> Vec<Loop> {
        let mut loops = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.vertex_count()];
        for start in within.iter() {
            path.push(start);
            on_path[start.0] = true;
            self.extend_cycles(start, within, &mut path, &mut on_path, &mut loops);
            on_path[start.0] = false;
            path.pop();
        }
        loops.sort();
        loops
    }

    fn extend_cycles(
        &self,
        start: Vertex,
        within: &VertexSet,
        path: &mut Vec<Vertex>,
        on_path: &mut [bool],
        loops: &mut Vec<Loop>,
    ) {
        let last = *path.last().expect("non-empty path");
        for &(next, _) in self.successors(last) {
            if next == start {
                loops.push(Loop { vertices: path.clone() });
            } else if next > start && within.contains(next) && !on_path[next.0] {
                path.push(next);
                on_path[next.0] = true;
                self.extend_cycles(start, within, path, on_path, loops);
                on_path[next.0] = false;
                path.pop();
            }
        }
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.names.iter().map(VertexId::as_str).collect::<Vec<_>>())
            .field(
                "edges",
                &self
                    .edges()
                    .map(|e| format!("{}->{}x{}", self.name(e.src), self.name(e.dst), e.multiplicity))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A vertex-simple loop, stored as its cyclic vertex sequence rotated to
/// start at the least vertex. Consecutive vertices (and last to first) are
/// joined by edges of the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loop {
    vertices: Vec<Vertex>,
}

impl Loop {
    /// Canonicalizes a cyclic vertex sequence. Returns `None` if the sequence
    /// is empty, repeats a vertex, or misses an edge of `g`.
    pub fn from_cycle(g: &Graph, cycle: &[Vertex]) -> Option<Loop> {
        if cycle.is_empty() {
            return None;
        }
        let set: VertexSet = cycle.iter().copied().collect();
        if set.len() != cycle.len() {
            return None;
        }
        let n = cycle.len();
        if (0..n).any(|i| g.multiplicity(cycle[i], cycle[(i + 1) % n]).is_zero()) {
            return None;
        }
        let pivot = (0..n).min_by_key(|&i| cycle[i]).expect("non-empty");
        let vertices = cycle[pivot..].iter().chain(&cycle[..pivot]).copied().collect();
        Some(Loop { vertices })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The `(src, dst)` pairs closing the cycle.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Whether the loop has an exit landing in `within`: some loop vertex
    /// emits an edge into `within` besides its single loop edge. Extra
    /// parallel copies of a loop edge count as exits.
    pub fn has_exit_in(&self, g: &Graph, within: &VertexSet) -> bool {
        self.vertices.iter().any(|&v| {
            let into = g.out_cardinality_into(v, within);
            !matches!(into, Cardinality::Finite(n) if n <= 1)
        })
    }

    pub fn display(&self, g: &Graph) -> String {
        self.vertices.iter().map(|&v| g.name(v).as_str()).collect::<Vec<_>>().join("->")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn e1_cardinalities() {
        let g = fixtures::e1();
        let v = g.vertex("v").unwrap();
        let w = g.vertex("w").unwrap();
        assert_eq!(g.out_cardinality(v), Cardinality::Omega);
        assert_eq!(g.out_cardinality(w), Cardinality::Finite(0));
        assert_eq!(g.out_cardinality_into(v, &VertexSet::singleton(w)), Cardinality::Omega);
        assert_eq!(g.out_cardinality_into(v, &VertexSet::new()), Cardinality::Finite(0));
    }

    #[test]
    fn e2_cardinalities() {
        let g = fixtures::e2();
        let u = g.vertex("u").unwrap();
        let v = g.vertex("v").unwrap();
        let w = g.vertex("w").unwrap();
        assert_eq!(g.out_cardinality(u), Cardinality::Finite(2));
        assert_eq!(g.out_cardinality_into(v, &VertexSet::singleton(w)), Cardinality::Omega);
    }

    #[test]
    fn unknown_vertex_is_an_error() {
        let g = fixtures::e1();
        assert_eq!(g.vertex("zz"), Err(Error::UnknownVertex("zz".into())));
        assert!(g.vertex("not valid").is_err());
    }

    #[test]
    fn reachability_examples() {
        let g = fixtures::e2();
        let [u, v, w] = ["u", "v", "w"].map(|n| g.vertex(n).unwrap());
        assert!(g.reaches(u, w));
        assert!(!g.reaches(w, u));
        let e1 = fixtures::e1();
        let v1 = e1.vertex("v").unwrap();
        assert!(e1.reaches(v1, v1));
        let _ = v;
    }

    #[test]
    fn tails_of_vertices() {
        let g = fixtures::e2();
        let names = |s: &VertexSet| g.set_names(s);
        assert_eq!(names(&g.tail_of_vertex(g.vertex("v").unwrap())), ["u", "v"]);
        assert_eq!(names(&g.tail_of_vertex(g.vertex("u").unwrap())), ["u"]);
        let e1 = fixtures::e1();
        assert_eq!(e1.set_names(&e1.tail_of_vertex(e1.vertex("w").unwrap())), ["v", "w"]);
    }

    #[test]
    fn loop_examples() {
        let g = fixtures::e2();
        let loops = g.vertex_simple_loops(&g.all_vertices());
        let shown: Vec<_> = loops.iter().map(|l| l.display(&g)).collect();
        assert_eq!(shown, ["u", "w"]);

        let e1 = fixtures::e1();
        let w = e1.vertex("w").unwrap();
        assert!(e1.vertex_simple_loops(&VertexSet::singleton(w)).is_empty());
        let shown: Vec<_> = e1.vertex_simple_loops(&e1.all_vertices()).iter().map(|l| l.display(&e1)).collect();
        assert_eq!(shown, ["v"]);
    }

    #[test]
    fn parallel_edges_do_not_multiply_loops() {
        let g = Graph::new(
            ["a", "b"],
            [
                ("a".into(), "b".into(), Cardinality::Finite(3)),
                ("b".into(), "a".into(), Cardinality::Omega),
            ],
        )
        .unwrap();
        let loops = g.vertex_simple_loops(&g.all_vertices());
        assert_eq!(loops.len(), 1);
        assert_eq!(loops[0].display(&g), "a->b");
        assert!(loops[0].has_exit_in(&g, &g.all_vertices()));
    }

    #[test]
    fn canonical_rotation() {
        let g = Graph::new(
            ["a", "b", "c"],
            [
                ("a".into(), "b".into(), Cardinality::Finite(1)),
                ("b".into(), "c".into(), Cardinality::Finite(1)),
                ("c".into(), "a".into(), Cardinality::Finite(1)),
            ],
        )
        .unwrap();
        let [a, b, c] = ["a", "b", "c"].map(|n| g.vertex(n).unwrap());
        let l1 = Loop::from_cycle(&g, &[b, c, a]).unwrap();
        let l2 = Loop::from_cycle(&g, &[c, a, b]).unwrap();
        assert_eq!(l1, l2);
        assert_eq!(l1.vertices(), &[a, b, c]);
        assert!(Loop::from_cycle(&g, &[a, c, b]).is_none());
        assert!(!l1.has_exit_in(&g, &g.all_vertices()));
    }

    #[test]
    fn row_finiteness() {
        assert!(!fixtures::e1().is_row_finite());
        assert!(!fixtures::e2().is_row_finite());
        let g = Graph::new(["a"], Vec::new()).unwrap();
        assert!(g.is_row_finite());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::new(["a"], [("a".into(), "a".into(), Cardinality::Finite(0))]),
            Err(Error::ZeroMultiplicity { .. })
        ));
        assert!(matches!(
            Graph::new(["a"], [("a".into(), "b".into(), Cardinality::Finite(1))]),
            Err(Error::UnknownVertex(_))
        ));
        assert!(matches!(Graph::new(["a", "a"], Vec::new()), Err(Error::DuplicateVertex(_))));
        assert!(matches!(
            Graph::new(
                ["a"],
                [
                    ("a".into(), "a".into(), Cardinality::Finite(MAX_MULTIPLICITY)),
                    ("a".into(), "a".into(), Cardinality::Finite(1)),
                ]
            ),
            Err(Error::MultiplicityOverflow { .. })
        ));
    }
}
