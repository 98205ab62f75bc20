//! Exact subsets of the unit circle with rational turn coordinates.
//!
//! A point `t` stands for `e^{2πi·t}` with `t ∈ [0, 1)`. Sets are finite
//! unions of points and arcs; this class is closed under union and closure.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A point of the circle, stored as a reduced turn in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(Rational64);

impl CirclePoint {
    pub const ZERO: CirclePoint = CirclePoint(Rational64::new_raw(0, 1));

    /// Reduces `turn` modulo one.
    pub fn new(turn: Rational64) -> CirclePoint {
        let frac = turn - turn.floor();
        CirclePoint(frac)
    }

    pub fn from_fraction(numer: i64, denom: i64) -> CirclePoint {
        CirclePoint::new(Rational64::new(numer, denom))
    }

    pub fn turn(self) -> Rational64 {
        self.0
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn parse_turn(s: &str) -> Result<Rational64> {
    let r: Rational64 = s
        .trim()
        .parse()
        .map_err(|_| Error::CircleSyntax(format!("bad turn value {s:?}")))?;
    if r < Rational64::zero() || r > Rational64::one() {
        return Err(Error::CircleSyntax(format!("turn {s:?} outside [0,1]")));
    }
    Ok(r)
}

impl FromStr for CirclePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(CirclePoint::new(parse_turn(s)?))
    }
}

impl Serialize for CirclePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CirclePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A connected piece of `[0, 1)`. `lo == hi` is a single point with both
/// ends closed; `hi == 1` is never closed since `1` is the point `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Piece {
    lo: Rational64,
    hi: Rational64,
    lo_closed: bool,
    hi_closed: bool,
}

impl Piece {
    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    fn contains(&self, t: Rational64) -> bool {
        let above = t > self.lo || (t == self.lo && self.lo_closed);
        let below = t < self.hi || (t == self.hi && self.hi_closed);
        above && below
    }

    fn point(t: Rational64) -> Piece {
        Piece { lo: t, hi: t, lo_closed: true, hi_closed: true }
    }
}

/// A finite union of points and arcs on the circle, kept in a unique
/// normal form so that equality is set equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CircleSet {
    pieces: Vec<Piece>,
}

impl CircleSet {
    pub fn empty() -> CircleSet {
        CircleSet::default()
    }

    pub fn all() -> CircleSet {
        CircleSet {
            pieces: vec![Piece { lo: Rational64::zero(), hi: Rational64::one(), lo_closed: true, hi_closed: false }],
        }
    }

    pub fn point(p: CirclePoint) -> CircleSet {
        CircleSet { pieces: vec![Piece::point(p.turn())] }
    }

    /// The arc running counterclockwise from `lo` to `hi`, both turns in
    /// `[0, 1]`. When `lo > hi` the arc wraps through `0`. Equal endpoints
    /// give a point if both ends are closed and a full turn otherwise.
    pub fn arc(lo: Rational64, hi: Rational64, lo_closed: bool, hi_closed: bool) -> Result<CircleSet> {
        let unit = Rational64::one();
        for r in [lo, hi] {
            if r < Rational64::zero() || r > unit {
                return Err(Error::CircleSyntax(format!("arc endpoint {r} outside [0,1]")));
            }
        }
        if lo == hi && lo_closed && hi_closed {
            return Ok(CircleSet::point(CirclePoint::new(lo)));
        }
        let length = if lo == hi {
            unit
        } else if hi > lo {
            hi - lo
        } else {
            hi - lo + unit
        };
        if length == unit && (lo_closed || hi_closed) {
            return Ok(CircleSet::all());
        }
        let start = CirclePoint::new(lo).turn();
        let end = start + length;
        let mut pieces = Vec::new();
        if end <= unit {
            pieces.push(Piece { lo: start, hi: end, lo_closed, hi_closed: hi_closed && end < unit });
            if end == unit && hi_closed {
                pieces.push(Piece::point(Rational64::zero()));
            }
        } else {
            pieces.push(Piece { lo: start, hi: unit, lo_closed, hi_closed: false });
            pieces.push(Piece { lo: Rational64::zero(), hi: end - unit, lo_closed: true, hi_closed });
        }
        Ok(CircleSet::normalized(pieces))
    }

    fn normalized(mut pieces: Vec<Piece>) -> CircleSet {
        pieces.retain(|p| !p.is_empty());
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(cur) = out.last_mut() {
                let touches = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
                if touches {
                    if p.lo == cur.lo {
                        cur.lo_closed |= p.lo_closed;
                    }
                    if p.hi > cur.hi {
                        cur.hi = p.hi;
                        cur.hi_closed = p.hi_closed;
                    } else if p.hi == cur.hi {
                        cur.hi_closed |= p.hi_closed;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        CircleSet { pieces: out }
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_all(&self) -> bool {
        *self == CircleSet::all()
    }

    pub fn contains(&self, p: CirclePoint) -> bool {
        self.pieces.iter().any(|piece| piece.contains(p.turn()))
    }

    pub fn union(&self, other: &CircleSet) -> CircleSet {
        CircleSet::normalized(self.pieces.iter().chain(&other.pieces).copied().collect())
    }

    pub fn is_subset(&self, other: &CircleSet) -> bool {
        self.union(other) == *other
    }

    /// Topological closure on the circle: every end becomes closed and an
    /// end at turn `1` contributes the point `0`.
    pub fn closure(&self) -> CircleSet {
        let mut pieces = Vec::with_capacity(self.pieces.len() + 1);
        for p in &self.pieces {
            let unit_end = p.hi == Rational64::one();
            pieces.push(Piece { lo: p.lo, hi: p.hi, lo_closed: true, hi_closed: !unit_end });
            if unit_end {
                pieces.push(Piece::point(Rational64::zero()));
            }
        }
        CircleSet::normalized(pieces)
    }

    pub fn is_closed(&self) -> bool {
        self.closure() == *self
    }

    /// Endpoints of every piece, reduced into `[0, 1)`, without repeats.
    pub fn endpoints(&self) -> Vec<CirclePoint> {
        let mut out: Vec<CirclePoint> =
            self.pieces.iter().flat_map(|p| [CirclePoint::new(p.lo), CirclePoint::new(p.hi)]).collect();
        out.sort();
        out.dedup();
        out
    }

    /// Display items: pieces, with the piece ending at `1` joined to a
    /// piece starting closed at `0` into one wrapping arc.
    fn items(&self) -> Vec<Piece> {
        let mut items = self.pieces.clone();
        if items.len() >= 2 {
            let first = items[0];
            let last = items[items.len() - 1];
            if first.lo.is_zero() && first.lo_closed && last.hi == Rational64::one() {
                items.remove(0);
                let n = items.len();
                items[n - 1] = Piece { lo: last.lo, hi: first.hi, lo_closed: last.lo_closed, hi_closed: first.hi_closed };
            }
        }
        items
    }
}

impl fmt::Display for CircleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_all() {
            return f.write_str("T");
        }
        let items = self.items();
        for (i, p) in items.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if p.lo == p.hi && p.lo_closed && p.hi_closed {
                write!(f, "point:{}", p.lo)?;
            } else {
                let open = if p.lo_closed { '[' } else { '(' };
                let close = if p.hi_closed { ']' } else { ')' };
                write!(f, "arc:{open}{},{}{close}", p.lo, p.hi)?;
            }
        }
        Ok(())
    }
}

impl FromStr for CircleSet {
    type Err = Error;

    /// Comma-joined items: `T`, `point:p/q`, `arc:(a,b]` with any bracket
    /// mix. The empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let mut out = CircleSet::empty();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let (item, tail) = split_item(rest)?;
            out = out.union(&parse_item(item.trim())?);
            rest = tail.trim();
        }
        Ok(out)
    }
}

/// Splits off the first item, skipping the comma inside an arc.
fn split_item(s: &str) -> Result<(&str, &str)> {
    let end_of_item = if s.starts_with("arc:") {
        s.find([')', ']']).map(|i| i + 1).ok_or_else(|| Error::CircleSyntax(format!("unterminated arc in {s:?}")))?
    } else {
        s.find(',').unwrap_or(s.len())
    };
    let (item, rest) = s.split_at(end_of_item);
    let rest = rest.trim_start();
    match rest.strip_prefix(',') {
        Some(r) if r.trim().is_empty() => Err(Error::CircleSyntax("trailing comma".into())),
        Some(r) => Ok((item, r)),
        None if rest.is_empty() => Ok((item, rest)),
        None => Err(Error::CircleSyntax(format!("expected ',' before {rest:?}"))),
    }
}

fn parse_item(item: &str) -> Result<CircleSet> {
    if item == "T" {
        return Ok(CircleSet::all());
    }
    if let Some(p) = item.strip_prefix("point:") {
        return Ok(CircleSet::point(p.parse()?));
    }
    if let Some(body) = item.strip_prefix("arc:") {
        let bad = || Error::CircleSyntax(format!("bad arc {item:?}"));
        let mut chars = body.chars();
        let lo_closed = match chars.next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match chars.next_back() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let (lo, hi) = chars.as_str().split_once(',').ok_or_else(bad)?;
        return CircleSet::arc(parse_turn(lo)?, parse_turn(hi)?, lo_closed, hi_closed);
    }
    Err(Error::CircleSyntax(format!("unknown item {item:?}")))
}

impl Serialize for CircleSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CircleSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn set(s: &str) -> CircleSet {
        s.parse().unwrap()
    }

    #[test]
    fn closure_of_open_arc() {
        assert_eq!(set("arc:(0,1/2)").closure(), set("arc:[0,1/2]"));
        assert_eq!(set("arc:(0,1/2)").closure().to_string(), "arc:[0,1/2]");
    }

    #[test]
    fn points_are_closed() {
        let p = set("point:1/4");
        assert_eq!(p.closure(), p);
        assert_eq!(p.to_string(), "point:1/4");
    }

    #[test]
    fn closure_of_wrapping_arc() {
        let d = set("arc:(3/4,1/4],point:1/2");
        assert_eq!(d.closure(), set("arc:[3/4,1/4],point:1/2"));
        assert_eq!(d.closure().to_string(), "point:1/2,arc:[3/4,1/4]");
    }

    #[test]
    fn full_circle_forms() {
        for s in ["T", "arc:[0,1)", "arc:[0,1]", "arc:[1/3,1/3)", "arc:(0,1/2],arc:(1/2,1]"] {
            assert!(set(s).is_all(), "{s}");
        }
        assert_eq!(CircleSet::all().closure(), CircleSet::all());
        assert_eq!(CircleSet::all().to_string(), "T");
    }

    #[test]
    fn punctured_circle() {
        let d = set("arc:(1/3,1/3)");
        assert!(!d.contains(CirclePoint::from_fraction(1, 3)));
        assert!(d.contains(CirclePoint::ZERO));
        assert_eq!(d.to_string(), "arc:(1/3,1/3)");
        assert!(d.closure().is_all());
        assert_eq!(set("arc:(0,1)").to_string(), "arc:(0,1)");
    }

    #[test]
    fn arc_ending_at_one() {
        let d = set("arc:[1/2,1]");
        assert!(d.contains(CirclePoint::ZERO));
        assert_eq!(d.to_string(), "arc:[1/2,0]");
        assert_eq!(set("arc:(1/2,1)").closure(), d);
    }

    #[test]
    fn membership() {
        let d = set("arc:(1/4,1/2]");
        assert!(!d.contains(CirclePoint::from_fraction(1, 4)));
        assert!(d.contains(CirclePoint::from_fraction(1, 2)));
        assert!(d.contains(CirclePoint::from_fraction(1, 3)));
        assert!(!d.contains(CirclePoint::from_fraction(3, 4)));
    }

    #[test]
    fn union_merges_touching_pieces() {
        assert_eq!(set("arc:[0,1/4),arc:[1/4,1/2]"), set("arc:[0,1/2]"));
        assert_ne!(set("arc:[0,1/4),arc:(1/4,1/2]"), set("arc:[0,1/2]"));
        assert_eq!(set("point:1/4,arc:(1/4,1/2)"), set("arc:[1/4,1/2)"));
        assert_eq!(set("point:1/3,point:1/3"), set("point:1/3"));
    }

    #[test]
    fn empty_string_is_empty_set() {
        assert!(set("").is_empty());
        assert_eq!(CircleSet::empty().to_string(), "");
    }

    #[test]
    fn syntax_errors() {
        for s in ["arc:(0,1/2", "circle", "point:2", "point:-1/2", "arc:[0;1]", "point:1/2,", "arc:<0,1>"] {
            assert!(matches!(s.parse::<CircleSet>(), Err(Error::CircleSyntax(_))), "{s}");
        }
    }

    #[test]
    fn point_reduction() {
        assert_eq!(CirclePoint::from_fraction(5, 4), CirclePoint::from_fraction(1, 4));
        assert_eq!(CirclePoint::new(r(1, 1)), CirclePoint::ZERO);
        assert_eq!("2/4".parse::<CirclePoint>().unwrap().to_string(), "1/2");
    }

    fn arb_turn() -> impl Strategy<Value = Rational64> {
        (0i64..=8).prop_map(|n| r(n, 8))
    }

    fn arb_item() -> impl Strategy<Value = CircleSet> {
        prop_oneof![
            1 => Just(CircleSet::all()),
            3 => arb_turn().prop_map(|t| CircleSet::point(CirclePoint::new(t))),
            6 => (arb_turn(), arb_turn(), any::<bool>(), any::<bool>())
                .prop_map(|(a, b, lc, hc)| CircleSet::arc(a, b, lc, hc).unwrap()),
        ]
    }

    fn arb_set() -> impl Strategy<Value = CircleSet> {
        proptest::collection::vec(arb_item(), 0..4)
            .prop_map(|items| items.iter().fold(CircleSet::empty(), |acc, s| acc.union(s)))
    }

    fn probes() -> Vec<CirclePoint> {
        (0..32).map(|n| CirclePoint::from_fraction(n, 32)).collect()
    }

    proptest! {
        #[test]
        fn display_round_trips(d in arb_set()) {
            prop_assert_eq!(d.to_string().parse::<CircleSet>().unwrap(), d);
        }

        #[test]
        fn union_is_pointwise(a in arb_set(), b in arb_set()) {
            let u = a.union(&b);
            for p in probes() {
                prop_assert_eq!(u.contains(p), a.contains(p) || b.contains(p));
            }
        }

        #[test]
        fn closure_is_extensive_and_idempotent(d in arb_set()) {
            let c = d.closure();
            prop_assert!(d.is_subset(&c));
            prop_assert_eq!(c.closure(), c.clone());
            prop_assert!(c.is_closed());
        }

        #[test]
        fn closure_adds_only_limit_points(d in arb_set()) {
            // a probe in the closure but not in the set must be an endpoint
            let c = d.closure();
            let ends = d.endpoints();
            for p in probes() {
                if c.contains(p) && !d.contains(p) {
                    prop_assert!(ends.contains(&p));
                }
            }
        }
    }
}
