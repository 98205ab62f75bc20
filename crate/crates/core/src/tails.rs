//! Maximal tails, their exit-free loops, and breaking vertices.

use std::collections::VecDeque;

use crate::cardinality::Cardinality;
use crate::error::{Error, Result};
use crate::graph::{Graph, Loop};
use crate::subsets::{finitely_leaking_emitters_unchecked, sealed_emitters, vertices_not_reaching};
use crate::vertex_set::{Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TailKind {
    /// Every loop in the tail has an exit in the tail.
    Gamma,
    /// The tail carries a loop with no exit in it, unique up to rotation.
    Tau(Loop),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaximalTail {
    vertices: VertexSet,
    kind: TailKind,
}

impl MaximalTail {
    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn kind(&self) -> &TailKind {
        &self.kind
    }

    pub fn is_tau(&self) -> bool {
        matches!(self.kind, TailKind::Tau(_))
    }

    pub fn is_gamma(&self) -> bool {
        self.kind == TailKind::Gamma
    }

    pub fn exit_free_loop(&self) -> Option<&Loop> {
        match &self.kind {
            TailKind::Tau(l) => Some(l),
            TailKind::Gamma => None,
        }
    }
}

/// Literal check of the three maximal tail conditions: upward closure under
/// `≥`, every finite non-sink emitter keeps an edge inside, and any two
/// members share a common lower bound inside.
pub fn is_maximal_tail(g: &Graph, m: &VertexSet) -> bool {
    if m.is_empty() {
        return false;
    }
    let upward = g.vertices().all(|v| m.contains(v) || !m.iter().any(|w| g.reaches(v, w)));
    let keeps_edge = m.iter().all(|v| {
        !g.out_cardinality(v).is_finite_positive() || !g.out_cardinality_into(v, m).is_zero()
    });
    let directed = m
        .iter()
        .all(|v| m.iter().all(|w| m.iter().any(|y| g.reaches(v, y) && g.reaches(w, y))));
    upward && keeps_edge && directed
}

/// All maximal tails, sorted canonically and classified.
///
/// With finitely many vertices every maximal tail is `{v : v ≥ x}` for some
/// `x`: pairwise common lower bounds chain into one for the whole tail.
pub fn maximal_tails(g: &Graph) -> Result<Vec<MaximalTail>> {
    let mut candidates: Vec<VertexSet> = g
        .vertices()
        .map(|x| g.tail_of_vertex(x))
        .filter(|m| m.iter().all(|v| !g.out_cardinality(v).is_finite_positive() || !g.out_cardinality_into(v, m).is_zero()))
        .collect();
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .map(|vertices| {
            let kind = match find_exit_free_loop(g, &vertices)? {
                Some(l) => TailKind::Tau(l),
                None => TailKind::Gamma,
            };
            Ok(MaximalTail { vertices, kind })
        })
        .collect()
}

/// The loop inside `m` with no exit in `m`, in canonical rotation, or `None`
/// when every loop in `m` has an exit there.
pub fn no_exit_loop(g: &Graph, m: &VertexSet) -> Result<Option<Loop>> {
    if !is_maximal_tail(g, m) {
        return Err(Error::NotMaximalTail);
    }
    find_exit_free_loop(g, m)
}

fn find_exit_free_loop(g: &Graph, m: &VertexSet) -> Result<Option<Loop>> {
    let mut found = g.vertex_simple_loops(m).into_iter().filter(|l| !l.has_exit_in(g, m));
    let first = found.next();
    if let Some(second) = found.next() {
        return Err(Error::Inconsistent(format!(
            "two exit-free loops {} and {} in one maximal tail",
            first.expect("first precedes second").display(g),
            second.display(g)
        )));
    }
    Ok(first)
}

/// Vertices relevant to first-entry paths from `v` into the loop: reachable
/// from `v` without passing through the loop, able to reach the loop, and
/// off the loop.
fn entry_region(g: &Graph, on_loop: &VertexSet, v: Vertex) -> VertexSet {
    let n = g.vertex_count();
    let mut forward = vec![false; n];
    forward[v.index()] = true;
    let mut queue = VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        if on_loop.contains(x) {
            continue;
        }
        for &(y, _) in g.successors(x) {
            if !forward[y.index()] {
                forward[y.index()] = true;
                queue.push_back(y);
            }
        }
    }
    // backward search from the loop over edges leaving off-loop vertices
    let mut backward = vec![false; n];
    let mut changed = true;
    while changed {
        changed = false;
        for x in g.vertices() {
            if on_loop.contains(x) || backward[x.index()] {
                continue;
            }
            if g.successors(x).iter().any(|(y, _)| on_loop.contains(*y) || backward[y.index()]) {
                backward[x.index()] = true;
                changed = true;
            }
        }
    }
    g.vertices().filter(|x| !on_loop.contains(*x) && forward[x.index()] && backward[x.index()]).collect()
}

fn has_cycle_within(g: &Graph, region: &VertexSet) -> bool {
    // Kahn's algorithm on the induced subgraph
    let mut indegree: Vec<usize> = vec![0; g.vertex_count()];
    for x in region {
        for &(y, _) in g.successors(x) {
            if region.contains(y) {
                indegree[y.index()] += 1;
            }
        }
    }
    let mut ready: Vec<Vertex> = region.iter().filter(|y| indegree[y.index()] == 0).collect();
    let mut removed = 0;
    while let Some(x) = ready.pop() {
        removed += 1;
        for &(y, _) in g.successors(x) {
            if region.contains(y) {
                indegree[y.index()] -= 1;
                if indegree[y.index()] == 0 {
                    ready.push(y);
                }
            }
        }
    }
    removed < region.len()
}

fn loop_of(tail: &MaximalTail) -> Result<&Loop> {
    tail.exit_free_loop().ok_or(Error::NotTauTail)
}

fn check_off_loop(g: &Graph, on_loop: &VertexSet, v: Vertex) -> Result<()> {
    if on_loop.contains(v) {
        Err(Error::VertexOnLoop(g.name(v).to_string()))
    } else {
        Ok(())
    }
}

/// Whether finitely many paths leave `v` and first meet the tail's loop at
/// their final vertex.
///
/// Decided structurally: the count is infinite exactly when such a path can
/// use an `ω` edge or pass through a cycle avoiding the loop.
pub fn entry_paths_finite(g: &Graph, tail: &MaximalTail, v: Vertex) -> Result<bool> {
    let on_loop = loop_of(tail)?.vertex_set();
    check_off_loop(g, &on_loop, v)?;
    Ok(entry_paths_finite_unchecked(g, &on_loop, v))
}

fn entry_paths_finite_unchecked(g: &Graph, on_loop: &VertexSet, v: Vertex) -> bool {
    let region = entry_region(g, on_loop, v);
    if region.is_empty() {
        return true;
    }
    let omega_step = region.iter().any(|x| {
        g.successors(x)
            .iter()
            .any(|&(y, m)| m.is_infinite() && (region.contains(y) || on_loop.contains(y)))
    });
    !omega_step && !has_cycle_within(g, &region)
}

/// Number of first-entry paths from `v` into the tail's loop, `Omega` when
/// infinite. Finite counts saturate at `u64::MAX`.
pub fn entry_path_count(g: &Graph, tail: &MaximalTail, v: Vertex) -> Result<Cardinality> {
    let on_loop = loop_of(tail)?.vertex_set();
    check_off_loop(g, &on_loop, v)?;
    if !entry_paths_finite_unchecked(g, &on_loop, v) {
        return Ok(Cardinality::Omega);
    }
    let region = entry_region(g, &on_loop, v);
    let mut memo = vec![None; g.vertex_count()];
    Ok(Cardinality::Finite(count_from(g, &on_loop, &region, v, &mut memo)))
}

fn count_from(g: &Graph, on_loop: &VertexSet, region: &VertexSet, x: Vertex, memo: &mut [Option<u64>]) -> u64 {
    if let Some(c) = memo[x.index()] {
        return c;
    }
    let mut total: u64 = 0;
    for &(y, m) in g.successors(x) {
        let Cardinality::Finite(m) = m else { continue };
        let tail_paths = if on_loop.contains(y) {
            1
        } else if region.contains(y) {
            count_from(g, on_loop, region, y, memo)
        } else {
            0
        };
        total = total.saturating_add(m.saturating_mul(tail_paths));
    }
    memo[x.index()] = Some(total);
    total
}

/// Per-tail data feeding the ideal calculus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailData {
    pub tail: MaximalTail,
    /// Complement of the tail, i.e. vertices not reaching it.
    pub complement: VertexSet,
    /// Loop vertices together with every vertex having finitely many
    /// first-entry paths into the loop. Tau tails only.
    pub finite_entry: Option<VertexSet>,
    /// Infinite emitters leaking finitely out of both `finite_entry` and
    /// `complement`. Tau tails only.
    pub upper_breaking: Option<VertexSet>,
    /// Infinite emitters in the tail whose edges all leave it. At most one.
    pub sealed: VertexSet,
}

pub fn tail_data(g: &Graph, tail: &MaximalTail) -> TailData {
    let complement = tail.vertices().complement(g.vertex_count());
    let sealed = sealed_emitters(g, &complement);
    let (finite_entry, upper_breaking) = match tail.exit_free_loop() {
        Some(l) => {
            let on_loop = l.vertex_set();
            let k: VertexSet = g
                .vertices()
                .filter(|&v| on_loop.contains(v) || entry_paths_finite_unchecked(g, &on_loop, v))
                .collect();
            let b = finitely_leaking_emitters_unchecked(g, &k)
                .intersection(&finitely_leaking_emitters_unchecked(g, &complement));
            (Some(k), Some(b))
        }
        None => (None, None),
    };
    TailData { tail: tail.clone(), complement, finite_entry, upper_breaking, sealed }
}

/// Infinite emitters `v` sending finitely many edges, at least one, to
/// vertices that reach `v`.
pub fn breaking_vertices(g: &Graph) -> VertexSet {
    g.vertices()
        .filter(|&v| {
            g.out_cardinality(v).is_infinite()
                && g.out_cardinality_outside(v, &vertices_not_reaching(g, &VertexSet::singleton(v))).is_finite_positive()
        })
        .collect()
}
