//! Extended naturals `ℕ ∪ {ω}` with saturating arithmetic.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};

/// A non-negative integer or the countable infinity `ω`.
///
/// The derived order puts every finite value below `ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum XNat {
    Fin(u64),
    Omega,
}

impl XNat {
    pub const ZERO: XNat = XNat::Fin(0);
    pub const ONE: XNat = XNat::Fin(1);

    pub fn is_zero(self) -> bool {
        self == XNat::ZERO
    }

    pub fn is_finite(self) -> bool {
        matches!(self, XNat::Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            XNat::Fin(n) => Some(n),
            XNat::Omega => None,
        }
    }

    /// `None` on overflow of the finite part.
    pub fn checked_add(self, rhs: XNat) -> Option<XNat> {
        match (self, rhs) {
            (XNat::Fin(a), XNat::Fin(b)) => a.checked_add(b).map(XNat::Fin),
            _ => Some(XNat::Omega),
        }
    }

    /// `None` on overflow of the finite part. `ω · 0 = 0`.
    pub fn checked_mul(self, rhs: XNat) -> Option<XNat> {
        match (self, rhs) {
            (XNat::Fin(0), _) | (_, XNat::Fin(0)) => Some(XNat::ZERO),
            (XNat::Fin(a), XNat::Fin(b)) => a.checked_mul(b).map(XNat::Fin),
            _ => Some(XNat::Omega),
        }
    }

    /// Clamp to `cap` (finite values above it and `ω` become `cap`).
    pub fn min_with(self, cap: XNat) -> XNat {
        self.min(cap)
    }
}

impl From<u64> for XNat {
    fn from(n: u64) -> Self {
        XNat::Fin(n)
    }
}

impl Add for XNat {
    type Output = XNat;

    fn add(self, rhs: XNat) -> XNat {
        self.checked_add(rhs).expect("XNat addition overflowed u64")
    }
}

impl Mul for XNat {
    type Output = XNat;

    fn mul(self, rhs: XNat) -> XNat {
        self.checked_mul(rhs).expect("XNat multiplication overflowed u64")
    }
}

impl Sum for XNat {
    fn sum<I: Iterator<Item = XNat>>(iter: I) -> XNat {
        iter.fold(XNat::ZERO, Add::add)
    }
}

impl fmt::Display for XNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XNat::Fin(n) => write!(f, "{n}"),
            XNat::Omega => f.write_str("ω"),
        }
    }
}
