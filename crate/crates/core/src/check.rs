//! Independent re-verification of obstruction verdicts.
//!
//! Nothing here calls into the enumeration, the boundary walk or the slope
//! type's arithmetic: expansions are re-enumerated by a separate search,
//! boundary components are read off the parity of the value's denominator,
//! and all slope distances are recomputed from raw numerators and
//! denominators.

use num_integer::Integer;
use thiserror::Error;

use crate::knot::TwoBridgeKnot;
use crate::obstruction::{Evidence, ExcludedCandidate, PieceCase, Verdict, VerdictKind};
use crate::slope::Slope;
use crate::surfaces::SurfaceDescriptor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate rejected: {0}")]
pub struct CheckError(pub String);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(CheckError(format!($($fmt)+)));
        }
    };
}

type Raw = (i128, i128);

fn raw(s: &Slope) -> Raw {
    (s.num() as i128, s.den() as i128)
}

fn dist(a: Raw, b: Raw) -> i128 {
    (a.0 * b.1 - a.1 * b.0).abs()
}

/// Reduced `(num, den)` with `den > 0` of `1/(a1 - 1/(a2 - ...))`.
fn evaluate(entries: &[i64]) -> Option<Raw> {
    let (mut u, mut v) = (0i128, 1i128);
    for &a in entries.iter().rev() {
        let d = a as i128 * v - u;
        if d == 0 {
            return None;
        }
        (u, v) = (v, d);
    }
    if entries.is_empty() {
        return None;
    }
    let g = u.gcd(&v);
    let (u, v) = (u / g, v / g);
    Some(if v < 0 { (-u, -v) } else { (u, v) })
}

/// All sequences with `|a| >= 2` evaluating to `num/den`, found by scanning
/// every integer `a` with `|a den' - num'| < |num'|` at each level.
fn expansions(num: i128, den: i128, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    // x = num/den with 0 < |num| < den; 1/x = den/num = a - rest.
    let bound = den / num.abs() + 1;
    for a in -bound..=bound {
        if a.abs() < 2 {
            continue;
        }
        let rest = a * num - den;
        if rest == 0 {
            prefix.push(a as i64);
            out.push(prefix.clone());
            prefix.pop();
        } else if rest.abs() < num.abs() {
            prefix.push(a as i64);
            let (n, d) = if num < 0 { (-rest, -num) } else { (rest, num) };
            expansions(n, d, prefix, out);
            prefix.pop();
        }
    }
}

struct Reference {
    knot: TwoBridgeKnot,
    all: Vec<Vec<i64>>,
    even_balance: i64,
}

fn balance(e: &[i64]) -> i64 {
    e.iter().filter(|a| **a > 0).count() as i64 - e.iter().filter(|a| **a < 0).count() as i64
}

impl Reference {
    fn new(knot: &TwoBridgeKnot) -> Result<Self, CheckError> {
        let (p, q) = (knot.p() as i128, knot.q() as i128);
        let mut all = Vec::new();
        expansions(q, p, &mut Vec::new(), &mut all);
        expansions(q - p, p, &mut Vec::new(), &mut all);
        let evens: Vec<_> = all.iter().filter(|e| e.iter().all(|a| a % 2 == 0)).collect();
        ensure!(evens.len() == 1, "{knot}: found {} all-even expansions", evens.len());
        let even_balance = balance(evens[0]);
        Ok(Reference { knot: *knot, all, even_balance })
    }

    /// Re-derives every field of a descriptor from its expansion.
    fn check_descriptor(&self, d: &SurfaceDescriptor) -> Result<(), CheckError> {
        let e = d.expansion.entries();
        ensure!(self.all.iter().any(|x| x == e), "{:?} is not an expansion for {}", e, self.knot);
        let (_, den) = evaluate(e).ok_or_else(|| CheckError(format!("{e:?} is degenerate")))?;
        let n = e.len() as i64;
        let chi = 1 - n;
        let orientable = e.iter().all(|a| a % 2 == 0);
        let b = if den % 2 == 1 { 1 } else { 2 };
        let genus = if orientable { (2 - chi - b) / 2 } else { 2 - chi - b };
        let slope = 2 * (balance(e) - self.even_balance);
        ensure!(d.euler == chi, "{e:?}: chi {} != {chi}", d.euler);
        ensure!(d.orientable == orientable, "{e:?}: orientability mismatch");
        ensure!(d.boundary_count as i64 == b, "{e:?}: boundary count {} != {b}", d.boundary_count);
        ensure!(d.genus == genus, "{e:?}: genus {} != {genus}", d.genus);
        ensure!(raw(&d.boundary_slope) == (slope as i128, 1), "{e:?}: slope {} != {slope}", d.boundary_slope);
        Ok(())
    }

    fn spanning(&self) -> impl Iterator<Item = (&Vec<i64>, bool, i64)> {
        self.all.iter().filter_map(|e| {
            let (_, den) = evaluate(e)?;
            if den % 2 == 0 {
                return None;
            }
            let n = e.len() as i64;
            let orientable = e.iter().all(|a| a % 2 == 0);
            Some((e, orientable, if orientable { n / 2 } else { n }))
        })
    }
}

fn check_rulings(
    entry: &ExcludedCandidate,
    target: Raw,
    expected: &[(PieceCase, i64)],
) -> Result<(), CheckError> {
    let e = entry.surface.expansion.entries();
    ensure!(
        entry.rulings.len() == expected.len(),
        "{e:?}: {} rulings, expected {}",
        entry.rulings.len(),
        expected.len()
    );
    let d = dist(raw(&entry.surface.boundary_slope), target);
    for (r, &(case, closed)) in entry.rulings.iter().zip(expected) {
        let required = match case {
            PieceCase::Disk => 0,
            PieceCase::MobiusBand | PieceCase::MobiusBandOnOrientable => 2,
        };
        ensure!(r.case == case, "{e:?}: case {:?}, expected {case:?}", r.case);
        ensure!(r.closed_genus == closed, "{e:?}: closed genus {} != {closed}", r.closed_genus);
        ensure!(r.distance as i128 == d, "{e:?}: recorded distance {} != {d}", r.distance);
        ensure!(d != required, "{e:?}: {case:?} case is not ruled out (distance {d})");
    }
    Ok(())
}

/// Re-verifies a verdict for `knot` from scratch.
pub fn verify_verdict(knot: &TwoBridgeKnot, v: &Verdict) -> Result<(), CheckError> {
    ensure!(v.knot == *knot, "verdict is for {}, not {knot}", v.knot);
    let (r1, r2) = (raw(&v.r1), raw(&v.r2));
    ensure!(r1.1 != 0 && r2.1 != 0, "meridian slope in pair");
    ensure!(r1 != r2, "slopes are equal");

    let evidence = match (&v.verdict, &v.evidence) {
        (VerdictKind::Inconclusive, None) => return Ok(()),
        (VerdictKind::Inconclusive, Some(_)) => {
            return Err(CheckError("inconclusive verdict carries evidence".into()))
        }
        (VerdictKind::Distinguished, None) => {
            return Err(CheckError("distinguished verdict without evidence".into()))
        }
        (VerdictKind::Distinguished, Some(e)) => e,
    };

    match evidence {
        Evidence::Parity { even_slope, odd_slope } => {
            let (e, o) = (raw(even_slope), raw(odd_slope));
            ensure!((e == r1 && o == r2) || (e == r2 && o == r1), "parity slopes are not the pair");
            ensure!(e.0 % 2 == 0, "{even_slope} has odd numerator");
            ensure!(o.0 % 2 != 0, "{odd_slope} has even numerator");
            Ok(())
        }
        Evidence::GenusGap { upper, exclusion } => {
            let (a, b) = (raw(&upper.target_slope), raw(&exclusion.target_slope));
            ensure!((a == r1 && b == r2) || (a == r2 && b == r1), "certificate slopes are not the pair");
            ensure!(a.0 % 2 == 0 && b.0 % 2 == 0, "genus comparison needs even numerators");

            let reference = Reference::new(knot)?;

            let base = &upper.base_surface;
            reference.check_descriptor(base)?;
            ensure!(!base.orientable, "upper bound base surface is orientable");
            ensure!(base.boundary_count == 1, "upper bound base surface is not spanning");
            let d = dist(raw(&base.boundary_slope), a);
            ensure!(d == upper.distance as i128, "upper bound distance {} != {d}", upper.distance);
            ensure!(d == 0 || d == 2, "base slope at distance {d} from target");
            ensure!(upper.attachments as i128 == d / 2, "attachments {} != {}", upper.attachments, d / 2);
            ensure!(
                upper.resulting_genus == base.genus + upper.attachments,
                "resulting genus {} != {} + {}",
                upper.resulting_genus,
                base.genus,
                upper.attachments
            );

            let g = exclusion.excluded_genus_max;
            ensure!(g >= upper.resulting_genus, "exclusion bound {g} below upper bound {}", upper.resulting_genus);
            ensure!(
                reference.all.iter().all(|e| evaluate(e).map(|(_, d)| d % 2 == 1).unwrap_or(false)),
                "a candidate has two boundary components"
            );

            let mut want_nonor: Vec<&Vec<i64>> = reference
                .spanning()
                .filter(|(_, o, genus)| !o && *genus <= g)
                .map(|(e, _, _)| e)
                .collect();
            let mut got_nonor: Vec<&[i64]> =
                exclusion.candidates.iter().map(|c| c.surface.expansion.entries()).collect();
            want_nonor.sort();
            got_nonor.sort();
            ensure!(
                want_nonor.iter().map(|e| e.as_slice()).eq(got_nonor.iter().copied()),
                "non-orientable candidates of genus <= {g} are incomplete or repeated"
            );
            for c in &exclusion.candidates {
                reference.check_descriptor(&c.surface)?;
                let genus = c.surface.genus;
                let mut expected = vec![(PieceCase::Disk, genus)];
                if genus < g {
                    expected.push((PieceCase::MobiusBand, genus + 1));
                }
                check_rulings(c, b, &expected)?;
            }

            let mut want_or: Vec<&Vec<i64>> = reference
                .spanning()
                .filter(|(_, o, genus)| *o && *genus < g)
                .map(|(e, _, _)| e)
                .collect();
            let mut got_or: Vec<&[i64]> =
                exclusion.orientable_checks.iter().map(|c| c.surface.expansion.entries()).collect();
            want_or.sort();
            got_or.sort();
            ensure!(
                want_or.iter().map(|e| e.as_slice()).eq(got_or.iter().copied()),
                "orientable checks of genus < {g} are incomplete or repeated"
            );
            for c in &exclusion.orientable_checks {
                reference.check_descriptor(&c.surface)?;
                check_rulings(c, b, &[(PieceCase::MobiusBandOnOrientable, 2 * c.surface.genus + 1)])?;
            }
            Ok(())
        }
    }
}

/// Parses a verdict from JSON and verifies it.
pub fn verify_json(knot: &TwoBridgeKnot, json: &str) -> Result<Verdict, CheckError> {
    let v: Verdict = serde_json::from_str(json).map_err(|e| CheckError(format!("bad JSON: {e}")))?;
    verify_verdict(knot, &v)?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstruction::distinguish;

    fn k(p: i64, q: i64) -> TwoBridgeKnot {
        TwoBridgeKnot::new(p, q).unwrap()
    }

    fn s(n: i64, d: i64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    #[test]
    fn evaluation() {
        assert_eq!(evaluate(&[2, 2]), Some((2, 3)));
        assert_eq!(evaluate(&[2, -2]), Some((2, 5)));
        assert_eq!(evaluate(&[-2, -2]), Some((-2, 3)));
        assert_eq!(evaluate(&[1, 1]), None);
    }

    #[test]
    fn accepts_theorem_certificate() {
        let kn = k(49, 19);
        let v = distinguish(&kn, &s(10, 3), &s(-10, 3)).unwrap();
        verify_verdict(&kn, &v).unwrap();
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(verify_json(&kn, &json).unwrap(), v);
    }

    #[test]
    fn rejects_tampering() {
        let kn = k(49, 19);
        let v = distinguish(&kn, &s(10, 3), &s(-10, 3)).unwrap();

        let mut bad = v.clone();
        if let Some(Evidence::GenusGap { exclusion, .. }) = &mut bad.evidence {
            exclusion.candidates.pop();
        }
        assert!(verify_verdict(&kn, &bad).is_err());

        let mut bad = v.clone();
        if let Some(Evidence::GenusGap { upper, .. }) = &mut bad.evidence {
            upper.resulting_genus = 4;
        }
        assert!(verify_verdict(&kn, &bad).is_err());

        let mut bad = v.clone();
        if let Some(Evidence::GenusGap { exclusion, .. }) = &mut bad.evidence {
            exclusion.excluded_genus_max = 6;
        }
        assert!(verify_verdict(&kn, &bad).is_err());

        let mut bad = v.clone();
        if let Some(Evidence::GenusGap { upper, .. }) = &mut bad.evidence {
            upper.base_surface.boundary_slope = Slope::integer(-6);
        }
        assert!(verify_verdict(&kn, &bad).is_err());

        // Claiming the pair the other way round cannot be certified.
        let mut bad = v.clone();
        if let Some(Evidence::GenusGap { upper, exclusion }) = &mut bad.evidence {
            upper.target_slope = s(10, 3);
            exclusion.target_slope = s(-10, 3);
        }
        assert!(verify_verdict(&kn, &bad).is_err());

        assert!(verify_verdict(&k(49, 30), &v).is_err());
    }
}
