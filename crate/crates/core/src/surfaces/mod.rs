//! Essential spanning surfaces of 2-bridge knot exteriors.
//!
//! Every continued-fraction expansion
//!
//! ```text
//! 1 / (a1 - 1 / (a2 - ... - 1 / an)),   |ai| >= 2
//! ```
//!
//! of a representative of `q/p mod 1` determines a surface built by plumbing
//! `n` twisted bands, band `i` carrying `ai` half-twists. These are the
//! single-sheeted candidates of the classification of incompressible,
//! boundary-incompressible surfaces in 2-bridge knot exteriors. The unique
//! all-even expansion is the minimal-genus Seifert surface and serves as the
//! origin for boundary slopes.
//!
//! Slopes are computed from the fraction `q/p` for `S(p, q)`. With this
//! choice the genus 4 and 5 non-orientable slope sets of `S(49,19)` come out
//! as `{-8, -4, 0}` and `{-2, 2, 6, 10}`.

mod walk;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::knot::TwoBridgeKnot;
use crate::slope::Slope;

pub type Fraction = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("empty continued fraction")]
    Empty,
    #[error("continued fraction {0:?} divides by zero")]
    Degenerate(Vec<i64>),
    #[error("entry {entry} in {entries:?} has absolute value below 2")]
    SmallEntry { entries: Vec<i64>, entry: i64 },
    #[error("{knot} has {count} all-even expansions, expected exactly one")]
    EvenExpansion { knot: TwoBridgeKnot, count: usize },
}

/// Evaluates `1 / (a1 - 1 / (a2 - ... - 1 / an))` exactly.
pub fn cf_value(entries: &[i64]) -> Result<Fraction, CfError> {
    if entries.is_empty() {
        return Err(CfError::Empty);
    }
    let mut x = Fraction::from_integer(0);
    for &a in entries.iter().rev() {
        let d = Fraction::from_integer(a) - x;
        if d == Fraction::from_integer(0) {
            return Err(CfError::Degenerate(entries.to_vec()));
        }
        x = d.recip();
    }
    Ok(x)
}

/// The two representatives `q/p` and `(q - p)/p` of the knot's fraction
/// that lie strictly between -1 and 1.
pub fn representatives(k: &TwoBridgeKnot) -> [Fraction; 2] {
    [Fraction::new(k.q(), k.p()), Fraction::new(k.q() - k.p(), k.p())]
}

/// An expansion with every entry of absolute value at least 2, together with
/// the fraction it evaluates to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CfExpansion {
    entries: Vec<i64>,
    target: Fraction,
}

impl CfExpansion {
    pub fn new(entries: Vec<i64>) -> Result<Self, CfError> {
        if let Some(&entry) = entries.iter().find(|a| a.abs() < 2) {
            return Err(CfError::SmallEntry { entries, entry });
        }
        let target = cf_value(&entries)?;
        Ok(CfExpansion { entries, target })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn target(&self) -> Fraction {
        self.target
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.entries.iter().all(|a| a % 2 == 0)
    }

    /// Positive entries minus negative entries.
    fn sign_balance(&self) -> i64 {
        self.entries.iter().map(|a| a.signum()).sum()
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for CfExpansion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CfExpansion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Vec::<i64>::deserialize(deserializer)?;
        CfExpansion::new(entries).map_err(serde::de::Error::custom)
    }
}

/// All expansions of `num/den` (`0 < |num| < den`); `even_only` restricts
/// every entry to be even.
fn expand(num: i64, den: i64, even_only: bool, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    debug_assert!(num != 0 && num.abs() < den);
    // x = num/den, 1/x = den/num = a - rest with |rest| < 1.
    let lo = num_integer::Integer::div_floor(&den, &num);
    for a in [lo, lo + 1] {
        if a.abs() < 2 || (even_only && a % 2 != 0) {
            continue;
        }
        // rest = a - den/num = (a*num - den)/num
        let rest_num = a * num - den;
        if rest_num == 0 {
            prefix.push(a);
            out.push(prefix.clone());
            prefix.pop();
        } else if rest_num.abs() < num.abs() {
            prefix.push(a);
            let (n, d) = if num < 0 { (-rest_num, -num) } else { (rest_num, num) };
            expand(n, d, even_only, prefix, out);
            prefix.pop();
        }
    }
}

fn expansions_of(x: Fraction, even_only: bool) -> Vec<CfExpansion> {
    let mut raw = Vec::new();
    expand(*x.numer(), *x.denom(), even_only, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|entries| CfExpansion { entries, target: x })
        .collect()
}

/// Every expansion with `|ai| >= 2` of either representative of the knot's
/// fraction, ordered by length and then lexicographically.
pub fn enumerate_expansions(k: &TwoBridgeKnot) -> Vec<CfExpansion> {
    let mut all: Vec<CfExpansion> = representatives(k)
        .into_iter()
        .flat_map(|x| expansions_of(x, false))
        .collect();
    all.sort_by(|a, b| (a.len(), &a.entries).cmp(&(b.len(), &b.entries)));
    all.dedup();
    all
}

/// The unique expansion with all entries even. Exactly one representative
/// (the one with even numerator) admits it.
pub fn even_expansion(k: &TwoBridgeKnot) -> Result<CfExpansion, CfError> {
    let mut found: Vec<CfExpansion> = representatives(k)
        .into_iter()
        .flat_map(|x| expansions_of(x, true))
        .collect();
    if found.len() != 1 {
        return Err(CfError::EvenExpansion { knot: *k, count: found.len() });
    }
    Ok(found.pop().unwrap())
}

/// Boundary slope `2[(n+ - n-) - (e+ - e-)]` of the surface for `e`,
/// measured against the Seifert surface of the all-even expansion.
pub fn boundary_slope(e: &CfExpansion, even: &CfExpansion) -> Slope {
    Slope::integer(2 * (e.sign_balance() - even.sign_balance()))
}

pub fn boundary_count(e: &CfExpansion) -> usize {
    walk::boundary_components(&e.entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceDescriptor {
    pub expansion: CfExpansion,
    #[serde(rename = "slope")]
    pub boundary_slope: Slope,
    #[serde(rename = "chi")]
    pub euler: i64,
    pub orientable: bool,
    #[serde(rename = "boundary_components")]
    pub boundary_count: usize,
    /// Orientable genus, or the number of crosscaps when non-orientable.
    pub genus: i64,
}

impl SurfaceDescriptor {
    pub fn from_expansion(e: CfExpansion, even: &CfExpansion) -> Self {
        let euler = 1 - e.len() as i64;
        let orientable = e.is_even();
        let boundary_count = boundary_count(&e);
        let b = boundary_count as i64;
        let genus = if orientable { (2 - euler - b) / 2 } else { 2 - euler - b };
        SurfaceDescriptor {
            boundary_slope: boundary_slope(&e, even),
            expansion: e,
            euler,
            orientable,
            boundary_count,
            genus,
        }
    }

    fn sort_key(&self) -> (i64, Slope, bool, usize, &[i64]) {
        (
            self.genus,
            self.boundary_slope,
            self.orientable,
            self.expansion.len(),
            self.expansion.entries(),
        )
    }
}

/// Surfaces of one knot, split by boundary count.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceTable {
    pub knot: TwoBridgeKnot,
    pub even: CfExpansion,
    pub spanning: Vec<SurfaceDescriptor>,
    /// Descriptors whose boundary has two circles; never spanning surfaces.
    pub multi_boundary: Vec<SurfaceDescriptor>,
}

impl SurfaceTable {
    pub fn build(k: &TwoBridgeKnot) -> Result<Self, CfError> {
        let even = even_expansion(k)?;
        let mut all: Vec<SurfaceDescriptor> = enumerate_expansions(k)
            .into_iter()
            .map(|e| SurfaceDescriptor::from_expansion(e, &even))
            .collect();
        all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let (spanning, multi_boundary) = all.into_iter().partition(|d| d.boundary_count == 1);
        Ok(SurfaceTable { knot: *k, even, spanning, multi_boundary })
    }

    pub fn nonorientable(&self) -> impl Iterator<Item = &SurfaceDescriptor> {
        self.spanning.iter().filter(|d| !d.orientable)
    }

    /// Boundary slopes of the non-orientable spanning surfaces of genus `g`.
    pub fn nonorientable_slopes(&self, genus: i64) -> Vec<Slope> {
        let mut v: Vec<Slope> = self
            .nonorientable()
            .filter(|d| d.genus == genus)
            .map(|d| d.boundary_slope)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// `(orientable, genus) -> count` over spanning surfaces.
    pub fn counts_by_genus(&self) -> BTreeMap<(bool, i64), usize> {
        let mut m = BTreeMap::new();
        for d in &self.spanning {
            *m.entry((d.orientable, d.genus)).or_insert(0) += 1;
        }
        m
    }

    /// Number of spanning surfaces of genus at least `min_genus` under the
    /// counting conventions reported by the `surfaces` command.
    pub fn candidate_counts(&self, min_genus: i64) -> Vec<CandidateCount> {
        let all = self.spanning.iter().filter(|d| d.genus >= min_genus);
        let nonor: Vec<_> = self.nonorientable().filter(|d| d.genus >= min_genus).collect();
        let mut classes: Vec<(i64, Slope)> =
            nonor.iter().map(|d| (d.genus, d.boundary_slope)).collect();
        classes.sort();
        classes.dedup();
        vec![
            CandidateCount { convention: "all spanning surfaces", count: all.count() },
            CandidateCount { convention: "non-orientable", count: nonor.len() },
            CandidateCount {
                convention: "non-orientable, distinct (genus, slope)",
                count: classes.len(),
            },
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateCount {
    pub convention: &'static str,
    pub count: usize,
}

pub fn spanning_surfaces(k: &TwoBridgeKnot) -> Result<Vec<SurfaceDescriptor>, CfError> {
    SurfaceTable::build(k).map(|t| t.spanning)
}
