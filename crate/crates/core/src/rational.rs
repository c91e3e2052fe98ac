//! Exact rational scalars and the extended (possibly infinite) distance type.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every coordinate, length and distance.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn int(n: i128) -> Q {
    Q::from_integer(n)
}

/// Parses `p`, `p/q`, or `-p/q` (sign rejected by callers that need nonnegative values).
pub fn parse_q(text: &str) -> Result<Q> {
    let bad = || Error::syntax(0, 0, format!("malformed rational `{text}`"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let n: i128 = num.parse().map_err(|_| bad())?;
    let d: i128 = den.parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub(crate) fn abs_diff(a: Q, b: Q) -> Q {
    (a - b).abs()
}

/// Lossy conversion for display and plotting only.
pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// A nonnegative rational or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedDistance {
    Finite(Q),
    Infinite,
}

impl ExtendedDistance {
    pub const ZERO: ExtendedDistance = ExtendedDistance::Finite(Ratio::new_raw(0, 1));

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedDistance::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtendedDistance::Finite(v) if v.is_zero())
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            ExtendedDistance::Finite(v) => Some(*v),
            ExtendedDistance::Infinite => None,
        }
    }

    /// `self * factor` with `0 * inf = 0` avoided: callers only scale finite bounds.
    pub fn scale(&self, factor: Q) -> ExtendedDistance {
        match self {
            ExtendedDistance::Finite(v) => ExtendedDistance::Finite(*v * factor),
            ExtendedDistance::Infinite if factor.is_zero() => ExtendedDistance::ZERO,
            ExtendedDistance::Infinite => ExtendedDistance::Infinite,
        }
    }
}

impl From<Q> for ExtendedDistance {
    fn from(v: Q) -> Self {
        ExtendedDistance::Finite(v)
    }
}

impl PartialOrd for ExtendedDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedDistance::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

impl Add for ExtendedDistance {
    type Output = ExtendedDistance;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (ExtendedDistance::Finite(a), ExtendedDistance::Finite(b)) => ExtendedDistance::Finite(a + b),
            _ => ExtendedDistance::Infinite,
        }
    }
}

impl fmt::Display for ExtendedDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedDistance::Finite(v) => f.write_str(&fmt_q(v)),
            ExtendedDistance::Infinite => f.write_str("inf"),
        }
    }
}
