//! Hereditary and saturated vertex sets and the closure operators on them.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::{Vertex, VertexSet};

/// Above this many vertices the lattice is generated by closures instead of
/// scanning all subsets.
pub const SCAN_LIMIT: usize = 20;

/// `v ∈ K` and `v ≥ w` imply `w ∈ K`.
pub fn is_hereditary(g: &Graph, k: &VertexSet) -> bool {
    k.iter().all(|v| g.successors(v).iter().all(|(w, _)| k.contains(*w)))
}

/// Whether `v ∉ K` would be forced into `K` by saturation: `v` emits finitely
/// many edges, at least one, and all of them land in `K`.
fn saturation_forces(g: &Graph, k: &VertexSet, v: Vertex) -> bool {
    !k.contains(v) && g.out_cardinality(v).is_finite_positive() && g.out_cardinality_outside(v, k).is_zero()
}

/// Every vertex of finite positive out-degree whose edges all land in `K`
/// belongs to `K`. Sinks and infinite emitters are exempt.
pub fn is_saturated(g: &Graph, k: &VertexSet) -> bool {
    !g.vertices().any(|v| saturation_forces(g, k, v))
}

/// Smallest saturated superset of `x`.
pub fn saturate(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut k = x.clone();
    loop {
        let forced: Vec<Vertex> = g.vertices().filter(|&v| saturation_forces(g, &k, v)).collect();
        if forced.is_empty() {
            return k;
        }
        k.extend(forced);
    }
}

/// Smallest hereditary saturated superset of `x`.
pub fn hereditary_saturated_closure(g: &Graph, x: &VertexSet) -> VertexSet {
    let mut k = g.forward_closure(x);
    loop {
        let next = g.forward_closure(&saturate(g, &k));
        if next == k {
            return k;
        }
        k = next;
    }
}

/// `{w ∉ X : w reaches no vertex of X}`.
pub fn vertices_not_reaching(g: &Graph, x: &VertexSet) -> VertexSet {
    g.vertices().filter(|&w| !x.contains(w) && !x.iter().any(|v| g.reaches(w, v))).collect()
}

fn require_hereditary_saturated(g: &Graph, k: &VertexSet) -> Result<()> {
    if is_hereditary(g, k) && is_saturated(g, k) {
        Ok(())
    } else {
        Err(Error::NotHereditarySaturated)
    }
}

/// Infinite emitters outside `K` sending finitely many edges, but at least
/// one, out of `K`. For hereditary saturated `K` these index the extra
/// generators `p_v - p_{v,K}` of gauge-invariant ideals.
pub fn finitely_leaking_emitters(g: &Graph, k: &VertexSet) -> Result<VertexSet> {
    require_hereditary_saturated(g, k)?;
    Ok(finitely_leaking_emitters_unchecked(g, k))
}

/// [`finitely_leaking_emitters`] without the hereditary saturated check.
pub fn finitely_leaking_emitters_unchecked(g: &Graph, k: &VertexSet) -> VertexSet {
    g.vertices()
        .filter(|&v| {
            !k.contains(v) && g.out_cardinality(v).is_infinite() && g.out_cardinality_outside(v, k).is_finite_positive()
        })
        .collect()
}

/// Infinite emitters outside `K` whose edges all land in `K`.
pub fn sealed_emitters(g: &Graph, k: &VertexSet) -> VertexSet {
    g.vertices()
        .filter(|&v| !k.contains(v) && g.out_cardinality(v).is_infinite() && g.out_cardinality_outside(v, k).is_zero())
        .collect()
}

/// All hereditary saturated sets in canonical order. Always contains `∅`
/// and the full vertex set.
pub fn hereditary_saturated_sets(g: &Graph) -> Vec<VertexSet> {
    if g.vertex_count() <= SCAN_LIMIT {
        hereditary_saturated_sets_by_scan(g)
    } else {
        hereditary_saturated_sets_by_closure(g)
    }
}

/// Checks every subset; limited to graphs of at most 63 vertices.
pub fn hereditary_saturated_sets_by_scan(g: &Graph) -> Vec<VertexSet> {
    let n = g.vertex_count();
    assert!(n < 64, "subset scan needs fewer than 64 vertices");
    let mut out: Vec<VertexSet> = (0..1u64 << n)
        .map(|mask| VertexSet::from_mask(mask, n))
        .filter(|k| is_hereditary(g, k) && is_saturated(g, k))
        .collect();
    out.sort();
    out
}

/// Generates the lattice from `∅` by repeatedly closing `K ∪ {v}`.
///
/// Every hereditary saturated `K` is reached: a chain
/// `∅ ⊂ cl(K₀ ∪ {v₁}) ⊂ …` with each `vᵢ ∈ K` stays inside `K` and grows.
pub fn hereditary_saturated_sets_by_closure(g: &Graph) -> Vec<VertexSet> {
    let bottom = hereditary_saturated_closure(g, &VertexSet::new());
    let mut seen = BTreeSet::from([bottom.clone()]);
    let mut frontier = vec![bottom];
    while let Some(k) = frontier.pop() {
        for v in g.vertices().filter(|&v| !k.contains(v)) {
            let mut grown = k.clone();
            grown.insert(v);
            let next = hereditary_saturated_closure(g, &grown);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cardinality::Cardinality;
    use crate::fixtures;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        g.vertex_set(names).unwrap()
    }

    fn path_ab() -> Graph {
        Graph::new(["a", "b"], [("a".into(), "b".into(), Cardinality::Finite(1))]).unwrap()
    }

    #[test]
    fn hereditary_examples() {
        let e1 = fixtures::e1();
        assert!(is_hereditary(&e1, &set(&e1, &["w"])));
        assert!(is_hereditary(&e1, &VertexSet::new()));
        let e2 = fixtures::e2();
        assert!(!is_hereditary(&e2, &set(&e2, &["v"])));
    }

    #[test]
    fn saturated_examples() {
        let e1 = fixtures::e1();
        assert!(is_saturated(&e1, &set(&e1, &["w"])));
        let e2 = fixtures::e2();
        assert!(is_saturated(&e2, &VertexSet::new()));
        let ab = path_ab();
        assert!(!is_saturated(&ab, &set(&ab, &["b"])));
    }

    #[test]
    fn saturation_examples() {
        let e1 = fixtures::e1();
        assert!(saturate(&e1, &VertexSet::new()).is_empty());
        let ab = path_ab();
        assert_eq!(saturate(&ab, &set(&ab, &["b"])), set(&ab, &["a", "b"]));
        let e2 = fixtures::e2();
        assert_eq!(saturate(&e2, &set(&e2, &["w"])), set(&e2, &["w"]));
    }

    #[test]
    fn closure_examples() {
        let e2 = fixtures::e2();
        assert_eq!(hereditary_saturated_closure(&e2, &set(&e2, &["u"])), e2.all_vertices());
        assert!(hereditary_saturated_closure(&e2, &VertexSet::new()).is_empty());
        let e1 = fixtures::e1();
        assert_eq!(hereditary_saturated_closure(&e1, &set(&e1, &["w"])), set(&e1, &["w"]));
    }

    #[test]
    fn not_reaching_examples() {
        let e1 = fixtures::e1();
        assert_eq!(vertices_not_reaching(&e1, &set(&e1, &["v"])), set(&e1, &["w"]));
        assert!(vertices_not_reaching(&e1, &e1.all_vertices()).is_empty());
        let e2 = fixtures::e2();
        assert!(vertices_not_reaching(&e2, &set(&e2, &["w"])).is_empty());
    }

    #[test]
    fn leaking_emitters_examples() {
        let e1 = fixtures::e1();
        assert_eq!(finitely_leaking_emitters(&e1, &set(&e1, &["w"])).unwrap(), set(&e1, &["v"]));
        assert!(finitely_leaking_emitters(&e1, &VertexSet::new()).unwrap().is_empty());
        let e2 = fixtures::e2();
        assert!(finitely_leaking_emitters(&e2, &set(&e2, &["w"])).unwrap().is_empty());
        assert_eq!(finitely_leaking_emitters(&e2, &set(&e2, &["v"])), Err(Error::NotHereditarySaturated));
    }

    #[test]
    fn sealed_emitters_examples() {
        let e2 = fixtures::e2();
        assert_eq!(sealed_emitters(&e2, &set(&e2, &["w"])), set(&e2, &["v"]));
        let e1 = fixtures::e1();
        assert!(sealed_emitters(&e1, &set(&e1, &["w"])).is_empty());
        assert!(sealed_emitters(&e1, &VertexSet::new()).is_empty());
    }

    #[test]
    fn lattice_examples() {
        let e1 = fixtures::e1();
        let names: Vec<Vec<String>> = hereditary_saturated_sets(&e1).iter().map(|k| e1.set_names(k)).collect();
        assert_eq!(names, vec![vec![], vec!["w".to_string()], vec!["v".into(), "w".into()]]);

        let a = Graph::new(["a"], Vec::new()).unwrap();
        assert_eq!(hereditary_saturated_sets(&a), vec![VertexSet::new(), a.all_vertices()]);

        let e2 = fixtures::e2();
        let lattice = hereditary_saturated_sets(&e2);
        assert_eq!(lattice, vec![VertexSet::new(), set(&e2, &["w"]), set(&e2, &["v", "w"]), e2.all_vertices()]);
        assert_eq!(hereditary_saturated_sets_by_closure(&e2), lattice);
    }

    #[test]
    fn empty_graph_lattice() {
        let g = Graph::new(Vec::<String>::new(), Vec::new()).unwrap();
        assert_eq!(hereditary_saturated_sets(&g), vec![VertexSet::new()]);
        assert_eq!(hereditary_saturated_sets_by_closure(&g), vec![VertexSet::new()]);
    }
}
