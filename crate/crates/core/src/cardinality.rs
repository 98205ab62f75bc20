use std::fmt;
use std::iter::Sum;
use std::ops::Add;

/// A count of edges: a finite number or countably infinite (`Omega`).
///
/// Finite addition saturates at `u64::MAX`; every query in this crate only
/// distinguishes zero, finite and infinite, which saturation preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinality {
    Finite(u64),
    Omega,
}

impl Cardinality {
    pub const ZERO: Cardinality = Cardinality::Finite(0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Cardinality::Finite(_))
    }

    pub fn is_infinite(self) -> bool {
        self == Cardinality::Omega
    }

    /// `0 < self < ω`.
    pub fn is_finite_positive(self) -> bool {
        matches!(self, Cardinality::Finite(n) if n > 0)
    }

    pub fn checked_add(self, rhs: Cardinality) -> Option<Cardinality> {
        match (self, rhs) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => a.checked_add(b).map(Cardinality::Finite),
            _ => Some(Cardinality::Omega),
        }
    }
}

impl Add for Cardinality {
    type Output = Cardinality;

    fn add(self, rhs: Cardinality) -> Cardinality {
        match (self, rhs) {
            (Cardinality::Finite(a), Cardinality::Finite(b)) => Cardinality::Finite(a.saturating_add(b)),
            _ => Cardinality::Omega,
        }
    }
}

impl Sum for Cardinality {
    fn sum<I: Iterator<Item = Cardinality>>(iter: I) -> Cardinality {
        iter.fold(Cardinality::ZERO, Add::add)
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Omega => f.write_str("inf"),
        }
    }
}
