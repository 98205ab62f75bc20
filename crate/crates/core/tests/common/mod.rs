//! Brute-force oracles and random generators shared by the integration
//! tests. Everything here works on bitmasks over at most 16 vertices and
//! uses only the graph's edge list from the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use primspec::circle::{CirclePoint, CircleSet};
use primspec::ideals::{PrimIdeal, PrimSpace};
use primspec::topology::PrimSubset;
use primspec::{Cardinality, Graph, VertexSet};
use rand::Rng;

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

/// Multiplicity of an edge: 0 (absent), finite, or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mult {
    Finite(u64),
    Inf,
}

impl Mult {
    fn card(self) -> Cardinality {
        match self {
            Mult::Finite(m) => Cardinality::Finite(m),
            Mult::Inf => Cardinality::Omega,
        }
    }
}

pub fn build_graph(n: usize, edges: &[(usize, usize, Mult)]) -> Graph {
    Graph::new(
        NAMES[..n].iter().copied(),
        edges.iter().filter(|e| e.2 != Mult::Finite(0)).map(|&(s, d, m)| (NAMES[s].to_string(), NAMES[d].to_string(), m.card())),
    )
    .unwrap()
}

/// Graph whose edge `(i, j)` takes `choices[code digit]`, digits in base
/// `choices.len()` over the `n * n` ordered pairs.
pub fn graph_from_code(n: usize, mut code: u64, choices: &[Option<Mult>]) -> Graph {
    let base = choices.len() as u64;
    let mut edges = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if let Some(m) = choices[(code % base) as usize] {
                edges.push((s, d, m));
            }
            code /= base;
        }
    }
    build_graph(n, &edges)
}

pub fn random_graph(rng: &mut impl Rng, sizes: std::ops::RangeInclusive<usize>, density: f64, mults: &[Mult]) -> Graph {
    let n = rng.gen_range(sizes);
    let mut edges = Vec::new();
    for s in 0..n {
        for d in 0..n {
            if rng.gen_bool(density) {
                edges.push((s, d, mults[rng.gen_range(0..mults.len())]));
            }
        }
    }
    build_graph(n, &edges)
}

/// Edge counts `|s⁻¹(v) ∩ r⁻¹(S)|` with `u64::MAX` standing for infinity.
#[derive(Debug, Clone)]
pub struct Brute {
    pub n: usize,
    pub mult: Vec<Vec<u64>>,
    /// `reach[v]` has bit `w` set iff there is a path from `v` to `w`.
    pub reach: Vec<u32>,
}

pub const INF: u64 = u64::MAX;

impl Brute {
    pub fn new(g: &Graph) -> Brute {
        let n = g.vertex_count();
        assert!(n <= 16);
        let mut mult = vec![vec![0u64; n]; n];
        for e in g.edges() {
            mult[e.src.index()][e.dst.index()] = match e.multiplicity {
                Cardinality::Finite(m) => m,
                Cardinality::Omega => INF,
            };
        }
        let mut reach: Vec<u32> = (0..n).map(|v| 1 << v).collect();
        // Warshall on bit rows
        for (v, row) in mult.iter().enumerate() {
            for (w, &m) in row.iter().enumerate() {
                if m > 0 {
                    reach[v] |= 1 << w;
                }
            }
        }
        for k in 0..n {
            for v in 0..n {
                if reach[v] >> k & 1 == 1 {
                    reach[v] |= reach[k];
                }
            }
        }
        Brute { n, mult, reach }
    }

    pub fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    pub fn reaches(&self, v: usize, w: usize) -> bool {
        self.reach[v] >> w & 1 == 1
    }

    pub fn out_into(&self, v: usize, mask: u32) -> u64 {
        let mut total = 0u64;
        for w in 0..self.n {
            if mask >> w & 1 == 1 {
                let m = self.mult[v][w];
                if m == INF {
                    return INF;
                }
                total = total.saturating_add(m);
            }
        }
        total
    }

    pub fn out(&self, v: usize) -> u64 {
        self.out_into(v, self.full())
    }

    pub fn finite_positive(x: u64) -> bool {
        x > 0 && x != INF
    }

    pub fn is_hereditary(&self, k: u32) -> bool {
        (0..self.n).all(|v| k >> v & 1 == 0 || self.reach[v] & !k == 0)
    }

    pub fn is_saturated(&self, k: u32) -> bool {
        (0..self.n).all(|v| k >> v & 1 == 1 || !Self::finite_positive(self.out(v)) || self.out_into(v, !k & self.full()) > 0)
    }

    pub fn hereditary_saturated(&self) -> Vec<u32> {
        (0..=self.full()).filter(|&k| self.is_hereditary(k) && self.is_saturated(k)).collect()
    }

    /// Smallest hereditary saturated superset, as the intersection of all.
    pub fn shc(&self, x: u32) -> u32 {
        self.hereditary_saturated().into_iter().filter(|&k| k & x == x).fold(self.full(), |acc, k| acc & k)
    }

    pub fn is_maximal_tail(&self, m: u32) -> bool {
        if m == 0 {
            return false;
        }
        let members: Vec<usize> = (0..self.n).filter(|&v| m >> v & 1 == 1).collect();
        let upward = (0..self.n).all(|v| m >> v & 1 == 1 || self.reach[v] & m == 0);
        let keeps = members.iter().all(|&v| !Self::finite_positive(self.out(v)) || self.out_into(v, m) > 0);
        let directed = members
            .iter()
            .all(|&v| members.iter().all(|&w| members.iter().any(|&y| self.reaches(v, y) && self.reaches(w, y))));
        upward && keeps && directed
    }

    pub fn maximal_tails(&self) -> Vec<u32> {
        (1..=self.full()).filter(|&m| self.is_maximal_tail(m)).collect()
    }

    /// Every vertex-simple cycle as a sequence starting at its least vertex.
    pub fn cycles(&self, within: u32) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for start in 0..self.n {
            if within >> start & 1 == 1 {
                let mut path = vec![start];
                self.extend_cycles(start, within, &mut path, &mut out);
            }
        }
        out
    }

    fn extend_cycles(&self, start: usize, within: u32, path: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let last = *path.last().unwrap();
        if self.mult[last][start] > 0 {
            out.insert(path.clone());
        }
        for next in start + 1..self.n {
            if within >> next & 1 == 1 && !path.contains(&next) && self.mult[last][next] > 0 {
                path.push(next);
                self.extend_cycles(start, within, path, out);
                path.pop();
            }
        }
    }

    /// Cycles inside `m` none of whose vertices sends two or more edges
    /// into `m`.
    pub fn exit_free_cycles(&self, m: u32) -> Vec<Vec<usize>> {
        self.cycles(m).into_iter().filter(|c| c.iter().all(|&v| self.out_into(v, m) == 1)).collect()
    }

    /// Vertices outside `x` reaching no vertex of `x`.
    pub fn omega(&self, x: u32) -> u32 {
        (0..self.n).filter(|&w| x >> w & 1 == 0 && self.reach[w] & x == 0).fold(0, |acc, w| acc | 1 << w)
    }

    /// Infinite emitters outside `k` with finitely many, at least one,
    /// edges leaving `k`.
    pub fn leaking(&self, k: u32) -> u32 {
        (0..self.n)
            .filter(|&v| k >> v & 1 == 0 && self.out(v) == INF && Self::finite_positive(self.out_into(v, !k & self.full())))
            .fold(0, |acc, v| acc | 1 << v)
    }

    pub fn is_row_finite(&self) -> bool {
        (0..self.n).all(|v| self.out(v) != INF)
    }
}

pub fn mask_of(set: &VertexSet) -> u32 {
    set.iter().fold(0, |acc, v| acc | 1 << v.index())
}

fn random_circle_set(rng: &mut impl Rng) -> CircleSet {
    let turn = |rng: &mut dyn rand::RngCore| num_rational::Rational64::new(rng.gen_range(0..=12), 12);
    let mut out = CircleSet::empty();
    for _ in 0..rng.gen_range(1..=2) {
        let item = match rng.gen_range(0..10) {
            0 => CircleSet::all(),
            1..=3 => CircleSet::point(CirclePoint::new(turn(rng))),
            _ => CircleSet::arc(turn(rng), turn(rng), rng.gen_bool(0.5), rng.gen_bool(0.5)).unwrap(),
        };
        out = out.union(&item);
    }
    out
}

pub fn random_subset(space: &PrimSpace, rng: &mut impl Rng) -> PrimSubset {
    let mut s = PrimSubset::new();
    let p = rng.gen_range(0.1..0.6);
    for i in space.gamma_indices() {
        if rng.gen_bool(p) {
            s.insert_gamma(i);
        }
    }
    for v in space.breaking_vertices() {
        if rng.gen_bool(p) {
            s.insert_breaking(v);
        }
    }
    let taus: Vec<usize> = space.tau_indices().collect();
    for i in taus {
        if rng.gen_bool(p) {
            s.insert_circle(i, &random_circle_set(rng));
        }
    }
    s
}

/// Circle points worth testing for a set: every endpoint, points just
/// beside each endpoint, and a fixed spread of rationals.
pub fn probe_points(sets: &[&PrimSubset]) -> Vec<CirclePoint> {
    let eps = num_rational::Rational64::new(1, 1000);
    let mut out: BTreeSet<CirclePoint> = (0..12).map(|k| CirclePoint::from_fraction(2 * k + 1, 24)).collect();
    out.insert(CirclePoint::ZERO);
    out.insert(CirclePoint::from_fraction(1, 7));
    for s in sets {
        for d in s.circle().values() {
            for e in d.endpoints() {
                out.insert(e);
                out.insert(CirclePoint::new(e.turn() + eps));
                out.insert(CirclePoint::new(e.turn() - eps + num_rational::Rational64::from_integer(1)));
            }
        }
    }
    out.into_iter().collect()
}

/// Every primitive ideal of the space, with circle families sampled at
/// `probes`.
pub fn candidates(space: &PrimSpace, probes: &[CirclePoint]) -> Vec<PrimIdeal> {
    let mut out: Vec<PrimIdeal> = space.gamma_indices().map(PrimIdeal::GaugeTail).collect();
    out.extend(space.breaking_vertices().iter().map(PrimIdeal::BreakingVertex));
    for i in space.tau_indices() {
        out.extend(probes.iter().map(|&t| PrimIdeal::Circle(i, t)));
    }
    out
}
