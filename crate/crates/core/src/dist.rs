//! Extended non-negative distances.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// Default tolerance for deciding ties between binary64 distances.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A non-negative distance that may be infinite.
///
/// `INF` is absorbing under addition and compares greater than every finite
/// value. There is no subtraction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtDist(f64);

impl ExtDist {
    pub const ZERO: ExtDist = ExtDist(0.0);
    pub const INF: ExtDist = ExtDist(f64::INFINITY);

    /// Returns `None` for negative values and NaN.
    pub fn new(value: f64) -> Option<Self> {
        (value >= 0.0).then_some(ExtDist(value))
    }

    /// Panics on negative values or NaN.
    pub fn finite(value: f64) -> Self {
        assert!(
            value >= 0.0 && value.is_finite(),
            "finite distance expected, got {value}"
        );
        ExtDist(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_inf(self) -> bool {
        !self.0.is_finite()
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `self ≤ other` up to `tol`.
    pub fn le_tol(self, other: Self, tol: f64) -> bool {
        le(self.0, other.0, tol)
    }

    pub fn scale(self, factor: f64) -> Self {
        ExtDist::new(self.0 * factor).expect("non-negative scale factor")
    }
}

/// `a ≤ b` up to `tol`, with infinities handled exactly.
pub(crate) fn le(a: f64, b: f64, tol: f64) -> bool {
    if b.is_infinite() {
        return true;
    }
    if a.is_infinite() {
        return false;
    }
    a <= b + tol
}

impl Eq for ExtDist {}

impl PartialOrd for ExtDist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtDist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for ExtDist {
    type Output = ExtDist;
    fn add(self, rhs: Self) -> Self {
        ExtDist(self.0 + rhs.0)
    }
}

impl From<u32> for ExtDist {
    fn from(v: u32) -> Self {
        ExtDist(f64::from(v))
    }
}

impl fmt::Display for ExtDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_inf() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl std::str::FromStr for ExtDist {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(ExtDist::INF);
        }
        let v: f64 = s.parse().map_err(|_| format!("not a distance: `{s}`"))?;
        ExtDist::new(v).ok_or_else(|| format!("negative distance `{s}`"))
    }
}

impl Serialize for ExtDist {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.is_inf() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtDist {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DistVisitor;
        impl Visitor<'_> for DistVisitor {
            type Value = ExtDist;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative number or \"inf\"")
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtDist, E> {
                ExtDist::new(v).ok_or_else(|| E::custom("negative distance"))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtDist, E> {
                Ok(ExtDist(v as f64))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtDist, E> {
                self.visit_f64(v as f64)
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtDist, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(DistVisitor)
    }
}
