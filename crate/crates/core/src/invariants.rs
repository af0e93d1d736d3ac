//! Classical invariants used to filter cosmetic surgery candidates.
//!
//! The Seifert form comes from the all-even expansion `[2c1, ..., 2cn]` as
//! the chain-plumbing matrix with `ci` on the diagonal and ones on the
//! superdiagonal. The Alexander polynomial is computed from it and checked
//! against Fox calculus on the 2-bridge group presentation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::TwoBridgeKnot;
use crate::laurent::LaurentPolynomial;
use crate::slope::Slope;
use crate::surfaces::{even_expansion, CfError, CfExpansion};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("Seifert matrix needs an all-even expansion, got {0}")]
    OddEntry(CfExpansion),
    #[error(transparent)]
    Expansion(#[from] CfError),
    #[error("Alexander polynomial of {0} cannot be normalized")]
    Normalization(TwoBridgeKnot),
}

/// A Seifert matrix `V` in chain-plumbing form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeifertForm {
    pub matrix: Vec<Vec<i64>>,
}

impl SeifertForm {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// `V + V^T`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[i][j] + self.matrix[j][i]).collect())
            .collect()
    }

    fn is_tridiagonal(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| i.abs_diff(j) <= 1 || self.matrix[i][j] == 0))
    }

    /// `det(V - t V^T)` by the three-term continuant recurrence.
    pub fn alexander_determinant(&self) -> LaurentPolynomial {
        debug_assert!(self.is_tridiagonal());
        let v = &self.matrix;
        let t = LaurentPolynomial::t();
        let entry = |i: usize, j: usize| {
            &LaurentPolynomial::constant(v[i][j]) - &t.scale(v[j][i])
        };
        let mut prev = LaurentPolynomial::constant(1);
        let mut cur = entry(0, 0);
        for k in 1..self.size() {
            let next = &(&entry(k, k) * &cur) - &(&(&entry(k - 1, k) * &entry(k, k - 1)) * &prev);
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }

    /// Leading principal minors `1, m1, ..., mn` of `V + V^T`.
    fn leading_minors(&self) -> Vec<i128> {
        debug_assert!(self.is_tridiagonal());
        let s = self.symmetrized();
        let mut minors = vec![1i128, s[0][0] as i128];
        for k in 1..s.len() {
            let b = s[k][k - 1] as i128;
            let m = s[k][k] as i128 * minors[k] - b * b * minors[k - 1];
            minors.push(m);
        }
        minors
    }

    /// `det(V + V^T)`.
    pub fn symmetrized_determinant(&self) -> i128 {
        *self.leading_minors().last().unwrap()
    }

    /// Signature of `V + V^T`.
    ///
    /// With nonzero off-diagonal entries the number of negative eigenvalues
    /// equals the number of sign changes in the leading principal minors; a
    /// vanishing inner minor sits between minors of opposite sign and
    /// contributes exactly one change whichever sign it is given.
    pub fn signature(&self) -> i64 {
        let minors = self.leading_minors();
        debug_assert!(*minors.last().unwrap() != 0);
        let mut changes = 0i64;
        let mut last_sign = 1i128;
        for &m in &minors[1..] {
            if m == 0 {
                continue;
            }
            if m.signum() != last_sign {
                changes += 1;
            }
            last_sign = m.signum();
        }
        self.size() as i64 - 2 * changes
    }
}

pub fn seifert_matrix(even: &CfExpansion) -> Result<SeifertForm, InvariantError> {
    if !even.is_even() {
        return Err(InvariantError::OddEntry(even.clone()));
    }
    let n = even.len();
    let mut matrix = vec![vec![0i64; n]; n];
    for (i, a) in even.entries().iter().enumerate() {
        matrix[i][i] = a / 2;
        if i + 1 < n {
            matrix[i][i + 1] = 1;
        }
    }
    Ok(SeifertForm { matrix })
}

pub fn seifert_form(k: &TwoBridgeKnot) -> Result<SeifertForm, InvariantError> {
    seifert_matrix(&even_expansion(k)?)
}

pub fn alexander(k: &TwoBridgeKnot) -> Result<LaurentPolynomial, InvariantError> {
    seifert_form(k)?
        .alexander_determinant()
        .alexander_normalized()
        .ok_or(InvariantError::Normalization(*k))
}

/// The Alexander polynomial by Fox calculus on `<a, b | a w = w b>`, where
/// `w = b^e1 a^e2 b^e3 ... a^e(p-1)` and `ei = (-1)^floor(i q / p)` for an
/// odd representative `q`.
pub fn alexander_fox_oracle(k: &TwoBridgeKnot) -> LaurentPolynomial {
    let (p, q) = (k.p(), k.q());
    let q = if q % 2 == 0 { q + p } else { q };

    #[derive(Clone, Copy, PartialEq)]
    enum Gen {
        A,
        B,
    }
    let word: Vec<(Gen, i32)> = (1..p)
        .map(|i| {
            let g = if i % 2 == 1 { Gen::B } else { Gen::A };
            let e = if (i * q / p) % 2 == 0 { 1 } else { -1 };
            (g, e)
        })
        .collect();

    // r = a w b^-1 w^-1
    let relator = std::iter::once((Gen::A, 1))
        .chain(word.iter().copied())
        .chain(std::iter::once((Gen::B, -1)))
        .chain(word.iter().rev().map(|&(g, e)| (g, -e)));

    // d(r)/da with a, b -> t: each a contributes t^(prefix), each a^-1
    // contributes -t^(prefix - 1).
    let mut d = LaurentPolynomial::zero();
    let mut prefix = 0i32;
    for (g, e) in relator {
        if g == Gen::A {
            if e == 1 {
                d.add_term(prefix, 1);
            } else {
                d.add_term(prefix - 1, -1);
            }
        }
        prefix += e;
    }
    d.alexander_normalized()
        .expect("Fox derivative of a 2-bridge relator is a nonzero symmetric associate")
}

/// `Δ''(1)` of the normalized Alexander polynomial.
pub fn delta2_at_1(k: &TwoBridgeKnot) -> Result<i128, InvariantError> {
    Ok(alexander(k)?.second_derivative_at_one())
}

/// `|Δ(-1)|`.
pub fn determinant(k: &TwoBridgeKnot) -> Result<i128, InvariantError> {
    Ok(alexander(k)?.eval(-1).abs())
}

pub fn signature(k: &TwoBridgeKnot) -> Result<i64, InvariantError> {
    Ok(seifert_form(k)?.signature())
}

/// `τ = -σ/2`, valid because 2-bridge knots are alternating.
pub fn tau_alternating(k: &TwoBridgeKnot) -> Result<i64, InvariantError> {
    let sigma = signature(k)?;
    debug_assert!(sigma % 2 == 0);
    Ok(-sigma / 2)
}

/// Nonvanishing `Δ''(1)` rules out cosmetic surgeries altogether.
pub fn boyer_lines_obstructs(k: &TwoBridgeKnot) -> Result<bool, InvariantError> {
    Ok(delta2_at_1(k)? != 0)
}

/// All invariants of one knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSummary {
    pub alexander: LaurentPolynomial,
    pub delta2: i128,
    pub det: i128,
    pub signature: i64,
    pub tau: i64,
}

impl InvariantSummary {
    pub fn compute(k: &TwoBridgeKnot) -> Result<Self, InvariantError> {
        let form = seifert_form(k)?;
        let alexander = form
            .alexander_determinant()
            .alexander_normalized()
            .ok_or(InvariantError::Normalization(*k))?;
        let signature = form.signature();
        Ok(InvariantSummary {
            delta2: alexander.second_derivative_at_one(),
            det: alexander.eval(-1).abs(),
            alexander,
            signature,
            tau: -signature / 2,
        })
    }

    pub fn boyer_lines_obstructs(&self) -> bool {
        self.delta2 != 0
    }
}

/// The necessary conditions for a purely cosmetic pair `r1, r2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiWuReport {
    pub r1: Slope,
    pub r2: Slope,
    /// `r1 = -r2`.
    pub opposite: bool,
    /// `q^2 = -1 mod p` for `r1 = p/q`, `p > 0`.
    pub q_squared_minus_one: bool,
    pub tau_zero: bool,
    pub survives: bool,
}

/// `q^2 ≡ -1 (mod p)` for the slope `p/q`, with `p` taken positive.
pub fn q_squared_is_minus_one(r: &Slope) -> bool {
    let p = r.num().unsigned_abs() as u128;
    let q = r.den().unsigned_abs() as u128;
    p != 0 && (q * q + 1) % p == 0
}

pub fn niwu_filter(k: &TwoBridgeKnot, r1: &Slope, r2: &Slope) -> Result<NiWuReport, InvariantError> {
    let tau = tau_alternating(k)?;
    Ok(niwu_with_tau(tau, r1, r2))
}

pub fn niwu_with_tau(tau: i64, r1: &Slope, r2: &Slope) -> NiWuReport {
    let opposite = *r1 == r2.negate() && r1 != r2;
    let q_squared_minus_one = q_squared_is_minus_one(r1);
    let tau_zero = tau == 0;
    NiWuReport {
        r1: *r1,
        r2: *r2,
        opposite,
        q_squared_minus_one,
        tau_zero,
        survives: opposite && q_squared_minus_one && tau_zero,
    }
}
