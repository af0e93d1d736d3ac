//! 2-bridge knots `S(p, q)` in Schubert normal form.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("S({p},{q}): p must be odd (even p gives a 2-component link)")]
    EvenP { p: i64, q: i64 },
    #[error("S({p},{q}): p must be at least 3")]
    SmallP { p: i64, q: i64 },
    #[error("S({p},{q}): p and q must be coprime")]
    NotCoprime { p: i64, q: i64 },
    #[error("cannot parse knot from {0:?} (expected S(p,q), p/q or a table name)")]
    Parse(String),
}

/// Table names resolved to Schubert pairs.
const ALIASES: &[(&str, i64, i64)] = &[("9_27", 49, 19)];

/// The 2-bridge knot `S(p, q)` with `p` odd, `0 < q < p` and `gcd(p, q) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwoBridgeKnot {
    p: i64,
    q: i64,
}

impl TwoBridgeKnot {
    /// Builds `S(p, q)`, reducing `q` into `(0, p)`.
    pub fn new(p: i64, q: i64) -> Result<Self, KnotError> {
        if p < 3 {
            return Err(KnotError::SmallP { p, q });
        }
        if p % 2 == 0 {
            return Err(KnotError::EvenP { p, q });
        }
        if q.gcd(&p) != 1 {
            return Err(KnotError::NotCoprime { p, q });
        }
        Ok(TwoBridgeKnot { p, q: q.mod_floor(&p) })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `q^{-1} mod p`, in `(0, p)`.
    pub fn q_inverse(&self) -> i64 {
        let e = self.q.extended_gcd(&self.p);
        e.x.mod_floor(&self.p)
    }

    /// Unoriented equivalence: same `p` and `q' = q^{±1} mod p`.
    pub fn same_knot(&self, other: &TwoBridgeKnot) -> bool {
        self.p == other.p
            && (self.q == other.q || (self.q as i128 * other.q as i128) % self.p as i128 == 1)
    }

    pub fn mirror(&self) -> TwoBridgeKnot {
        TwoBridgeKnot { p: self.p, q: self.p - self.q }
    }

    pub fn is_amphicheiral(&self) -> bool {
        self.same_knot(&self.mirror())
    }

    /// The representative of the equivalence class with the smallest `q`.
    pub fn canonical(&self) -> TwoBridgeKnot {
        TwoBridgeKnot { p: self.p, q: self.q.min(self.q_inverse()) }
    }

    /// The table name of this knot, if it has an alias.
    pub fn alias(&self) -> Option<&'static str> {
        ALIASES
            .iter()
            .find(|(_, p, q)| *p == self.p && *q == self.canonical().q)
            .map(|(name, _, _)| *name)
    }
}

impl fmt::Display for TwoBridgeKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.p, self.q)
    }
}

impl FromStr for TwoBridgeKnot {
    type Err = KnotError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((_, p, q)) = ALIASES.iter().find(|(name, _, _)| *name == s) {
            return TwoBridgeKnot::new(*p, *q);
        }
        let bad = || KnotError::Parse(s.to_string());
        let (p, q) = if let Some(inner) = s
            .strip_prefix("S(")
            .or_else(|| s.strip_prefix("s("))
            .and_then(|r| r.strip_suffix(')'))
        {
            inner.split_once(',').ok_or_else(bad)?
        } else {
            s.split_once('/').ok_or_else(bad)?
        };
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        TwoBridgeKnot::new(p, q)
    }
}

impl Serialize for TwoBridgeKnot {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TwoBridgeKnot {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One row of a knot catalogue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub knot: TwoBridgeKnot,
    /// Canonical representative of the mirror image.
    pub mirror: TwoBridgeKnot,
    pub amphicheiral: bool,
    /// Set when this entry is the mirror image of an earlier entry.
    pub mirror_of_earlier: bool,
}

/// One canonical representative per knot type with `p <= p_max`, ordered by
/// `(p, q)`. Mirror images are listed separately and flagged.
pub fn enumerate_knots(p_max: i64) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for p in (3..=p_max).step_by(2) {
        for q in 1..p {
            let Ok(k) = TwoBridgeKnot::new(p, q) else { continue };
            if k.canonical() != k {
                continue;
            }
            let mirror = k.mirror().canonical();
            out.push(CatalogEntry {
                knot: k,
                mirror,
                amphicheiral: mirror == k,
                mirror_of_earlier: mirror.q < k.q,
            });
        }
    }
    out
}
