//! Distinguishing `K(r1)` from `K(r2)` by the minimal genus of closed
//! non-orientable surfaces they contain.
//!
//! * A slope with even numerator yields a manifold containing a closed
//!   non-orientable surface; an odd numerator yields none.
//! * Upper bound: a non-orientable spanning surface with boundary slope `s`
//!   caps off with a meridian disk of the attached solid torus, and one at
//!   distance 2 from `s` caps off after attaching a single Möbius band.
//! * Exclusion: a closed incompressible non-orientable surface of genus `g`
//!   meets the exterior in an essential surface `F` and the solid torus in a
//!   disk (`g(F) = g`, slope of `F` equal to `s`) or a Möbius band
//!   (`g(F) = g - 1`, slope of `F` at distance 2 from `s`). Ruling out every
//!   spanning surface for both cases excludes all genera up to the bound.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::TwoBridgeKnot;
use crate::slope::Slope;
use crate::surfaces::{CfError, SurfaceDescriptor, SurfaceTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("surgery along the meridian 1/0 is trivial")]
    Meridian,
    #[error("the two slopes are equal ({0})")]
    EqualSlopes(Slope),
    #[error("slope {0} has odd numerator")]
    OddNumerator(Slope),
    #[error("genus bound must be at least 1, got {0}")]
    GenusBound(i64),
    #[error(transparent)]
    Surfaces(#[from] CfError),
}

fn require_surgery_slope(s: &Slope) -> Result<(), ObstructionError> {
    if s.is_meridian() {
        Err(ObstructionError::Meridian)
    } else {
        Ok(())
    }
}

fn require_even(s: &Slope) -> Result<(), ObstructionError> {
    require_surgery_slope(s)?;
    if s.numerator_is_even() {
        Ok(())
    } else {
        Err(ObstructionError::OddNumerator(*s))
    }
}

/// Whether `K(s)` contains a closed non-orientable surface.
pub fn admits_closed_nonorientable(s: &Slope) -> Result<bool, ObstructionError> {
    require_surgery_slope(s)?;
    Ok(s.numerator_is_even())
}

/// A closed non-orientable surface in `K(target)` built from a spanning
/// surface plus `attachments` Möbius bands, then capped by a meridian disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperBoundCertificate {
    pub target_slope: Slope,
    pub base_surface: SurfaceDescriptor,
    /// Distance between the base surface's slope and the target.
    pub distance: u64,
    pub attachments: i64,
    pub resulting_genus: i64,
}

pub fn upper_bound_genus(
    k: &TwoBridgeKnot,
    s: &Slope,
) -> Result<Option<UpperBoundCertificate>, ObstructionError> {
    upper_bound_in(&SurfaceTable::build(k)?, s)
}

/// Smallest closed genus reachable from a non-orientable spanning surface at
/// distance 0 or 2; ties go to the first surface in table order.
pub fn upper_bound_in(
    table: &SurfaceTable,
    s: &Slope,
) -> Result<Option<UpperBoundCertificate>, ObstructionError> {
    require_even(s)?;
    let best = table
        .nonorientable()
        .filter_map(|f| {
            let d = f.boundary_slope.distance(s);
            (d == 0 || d == 2).then(|| (f.genus + d as i64 / 2, d, f))
        })
        .min_by_key(|(g, _, _)| *g);
    Ok(best.map(|(g, d, f)| UpperBoundCertificate {
        target_slope: *s,
        base_surface: f.clone(),
        distance: d,
        attachments: d as i64 / 2,
        resulting_genus: g,
    }))
}

/// How the closed surface meets the attached solid torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceCase {
    /// A meridian disk; needs slope equal to the target.
    Disk,
    /// A Möbius band; needs slope at distance 2 from the target.
    MobiusBand,
    /// A Möbius band on an orientable spanning surface. Never certified.
    MobiusBandOnOrientable,
}

impl PieceCase {
    pub fn required_distance(self) -> u64 {
        match self {
            PieceCase::Disk => 0,
            PieceCase::MobiusBand | PieceCase::MobiusBandOnOrientable => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ruling {
    pub case: PieceCase,
    /// Genus of the closed surface this case would produce.
    pub closed_genus: i64,
    pub distance: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExcludedCandidate {
    pub surface: SurfaceDescriptor,
    pub rulings: Vec<Ruling>,
}

/// `K(target)` contains no closed non-orientable surface of genus at most
/// `excluded_genus_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExclusionCertificate {
    pub target_slope: Slope,
    pub excluded_genus_max: i64,
    pub candidates: Vec<ExcludedCandidate>,
    /// Orientable spanning surfaces that were checked for the Möbius case.
    pub orientable_checks: Vec<ExcludedCandidate>,
}

/// The first candidate a case analysis could not rule out.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Unruled {
    pub surface: SurfaceDescriptor,
    /// `None` when the candidate has two boundary components.
    pub case: Option<PieceCase>,
    pub closed_genus: i64,
    pub distance: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ExclusionOutcome {
    Certified(ExclusionCertificate),
    Failed(Unruled),
}

pub fn exclusion_bound(
    k: &TwoBridgeKnot,
    s: &Slope,
    genus_max: i64,
) -> Result<ExclusionOutcome, ObstructionError> {
    exclusion_in(&SurfaceTable::build(k)?, s, genus_max)
}

fn rule(case: PieceCase, closed_genus: i64, f: &SurfaceDescriptor, s: &Slope) -> Result<Ruling, Unruled> {
    let distance = f.boundary_slope.distance(s);
    if distance == case.required_distance() {
        return Err(Unruled { surface: f.clone(), case: Some(case), closed_genus, distance });
    }
    let reason = match case {
        PieceCase::Disk if !s.is_integral() => {
            format!("slope {} is integral, target {} is not", f.boundary_slope, s)
        }
        PieceCase::Disk => format!("slope {} differs from target {}", f.boundary_slope, s),
        _ => format!("distance({}, {}) = {} is not 2", f.boundary_slope, s, distance),
    };
    Ok(Ruling { case, closed_genus, distance, reason })
}

pub fn exclusion_in(
    table: &SurfaceTable,
    s: &Slope,
    genus_max: i64,
) -> Result<ExclusionOutcome, ObstructionError> {
    require_even(s)?;
    if genus_max < 1 {
        return Err(ObstructionError::GenusBound(genus_max));
    }
    if let Some(f) = table.multi_boundary.iter().find(|f| f.genus <= genus_max) {
        return Ok(ExclusionOutcome::Failed(Unruled {
            surface: f.clone(),
            case: None,
            closed_genus: f.genus,
            distance: f.boundary_slope.distance(s),
        }));
    }

    let run = || -> Result<ExclusionCertificate, Unruled> {
        let mut candidates = Vec::new();
        for f in table.nonorientable().filter(|f| f.genus <= genus_max) {
            let mut rulings = vec![rule(PieceCase::Disk, f.genus, f, s)?];
            if f.genus < genus_max {
                rulings.push(rule(PieceCase::MobiusBand, f.genus + 1, f, s)?);
            }
            candidates.push(ExcludedCandidate { surface: f.clone(), rulings });
        }
        let mut orientable_checks = Vec::new();
        for f in table.spanning.iter().filter(|f| f.orientable && f.genus < genus_max) {
            let ruling = rule(PieceCase::MobiusBandOnOrientable, 2 * f.genus + 1, f, s)?;
            orientable_checks.push(ExcludedCandidate { surface: f.clone(), rulings: vec![ruling] });
        }
        Ok(ExclusionCertificate {
            target_slope: *s,
            excluded_genus_max: genus_max,
            candidates,
            orientable_checks,
        })
    };
    Ok(match run() {
        Ok(c) => ExclusionOutcome::Certified(c),
        Err(u) => ExclusionOutcome::Failed(u),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Distinguished,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// `K(upper.target_slope)` contains a closed non-orientable surface of
    /// genus `upper.resulting_genus`; `K(exclusion.target_slope)` contains
    /// none of genus up to `exclusion.excluded_genus_max`.
    GenusGap { upper: UpperBoundCertificate, exclusion: ExclusionCertificate },
    /// Only `K(even_slope)` contains a closed non-orientable surface.
    Parity { even_slope: Slope, odd_slope: Slope },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub knot: TwoBridgeKnot,
    pub r1: Slope,
    pub r2: Slope,
    pub verdict: VerdictKind,
    pub evidence: Option<Evidence>,
    pub reasons: Vec<String>,
}

pub fn distinguish(k: &TwoBridgeKnot, r1: &Slope, r2: &Slope) -> Result<Verdict, ObstructionError> {
    check_pair(r1, r2)?;
    distinguish_in(&SurfaceTable::build(k)?, r1, r2)
}

fn check_pair(r1: &Slope, r2: &Slope) -> Result<(), ObstructionError> {
    require_surgery_slope(r1)?;
    require_surgery_slope(r2)?;
    if r1 == r2 {
        return Err(ObstructionError::EqualSlopes(*r1));
    }
    Ok(())
}

pub fn distinguish_in(table: &SurfaceTable, r1: &Slope, r2: &Slope) -> Result<Verdict, ObstructionError> {
    check_pair(r1, r2)?;
    let verdict = |kind, evidence, reasons| Verdict {
        knot: table.knot,
        r1: *r1,
        r2: *r2,
        verdict: kind,
        evidence,
        reasons,
    };

    match (r1.numerator_is_even(), r2.numerator_is_even()) {
        (false, false) => {
            return Ok(verdict(
                VerdictKind::Inconclusive,
                None,
                vec!["method inapplicable: both slopes have odd numerator".to_string()],
            ))
        }
        (true, false) | (false, true) => {
            let (even_slope, odd_slope) = if r1.numerator_is_even() { (*r1, *r2) } else { (*r2, *r1) };
            return Ok(verdict(
                VerdictKind::Distinguished,
                Some(Evidence::Parity { even_slope, odd_slope }),
                vec![format!(
                    "K({even_slope}) contains a closed non-orientable surface, K({odd_slope}) does not"
                )],
            ));
        }
        (true, true) => {}
    }

    let mut reasons = Vec::new();
    for (a, b) in [(r1, r2), (r2, r1)] {
        let Some(upper) = upper_bound_in(table, a)? else {
            reasons.push(format!("no spanning surface at distance 0 or 2 from {a}"));
            continue;
        };
        match exclusion_in(table, b, upper.resulting_genus)? {
            ExclusionOutcome::Certified(exclusion) => {
                reasons.push(format!(
                    "K({a}) has a closed non-orientable surface of genus {}; K({b}) has none of genus <= {}",
                    upper.resulting_genus, exclusion.excluded_genus_max
                ));
                return Ok(verdict(
                    VerdictKind::Distinguished,
                    Some(Evidence::GenusGap { upper, exclusion }),
                    reasons,
                ));
            }
            ExclusionOutcome::Failed(u) => reasons.push(format!(
                "genus {} on K({a}) not excluded on K({b}): surface {} (slope {}, genus {}) at distance {}",
                upper.resulting_genus,
                u.surface.expansion,
                u.surface.boundary_slope,
                u.surface.genus,
                u.distance
            )),
        }
    }
    Ok(verdict(VerdictKind::Inconclusive, None, reasons))
}
