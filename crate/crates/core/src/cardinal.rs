use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A cardinal bound as it occurs for finite posets: a natural number or `ω`.
///
/// `Omega` sits above every finite value. On a finite carrier "size < ω" just
/// means "any finite size", so `Omega` imposes no restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cardinal {
    Finite(usize),
    Omega,
}

impl Cardinal {
    /// Whether a set of size `size` is strictly smaller than this bound.
    #[inline]
    pub fn exceeds(self, size: usize) -> bool {
        match self {
            Cardinal::Finite(n) => size < n,
            Cardinal::Omega => true,
        }
    }

    /// Largest admissible set size when the carrier has `n` elements.
    pub fn max_size_within(self, n: usize) -> usize {
        match self {
            Cardinal::Finite(k) => k.saturating_sub(1).min(n),
            Cardinal::Omega => n,
        }
    }

    pub fn require_at_least(self, min: usize) -> crate::Result<Self> {
        match self {
            Cardinal::Finite(n) if n < min => Err(crate::Error::CardinalTooSmall {
                min,
                got: n.to_string(),
            }),
            _ => Ok(self),
        }
    }
}

impl From<usize> for Cardinal {
    fn from(n: usize) -> Self {
        Cardinal::Finite(n)
    }
}

impl fmt::Display for Cardinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinal::Finite(n) => write!(f, "{n}"),
            Cardinal::Omega => f.write_str("omega"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("expected a natural number or `omega`, got `{0}`")]
pub struct ParseCardinalError(String);

impl FromStr for Cardinal {
    type Err = ParseCardinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "omega" | "ω" | "w" => Ok(Cardinal::Omega),
            t => t
                .parse::<usize>()
                .map(Cardinal::Finite)
                .map_err(|_| ParseCardinalError(s.to_string())),
        }
    }
}

impl Serialize for Cardinal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Cardinal::Finite(n) => serializer.serialize_u64(*n as u64),
            Cardinal::Omega => serializer.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Cardinal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Num(n) => Ok(Cardinal::Finite(n as usize)),
            Raw::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
