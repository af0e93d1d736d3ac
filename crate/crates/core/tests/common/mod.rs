#![allow(dead_code)]

use std::collections::BTreeMap;

use cosmetic::TwoBridgeKnot;

/// Every sequence with `|a| >= 2` whose value `1/(a1 - 1/(a2 - ...))` has
/// denominator at most `max_den`, grouped by value `(num, den)`.
///
/// Built bottom-up by prepending entries to tails. Prepending strictly
/// increases the denominator, so the search is complete and finite.
pub fn expansions_by_value(max_den: i64) -> BTreeMap<(i64, i64), Vec<Vec<i64>>> {
    let mut by_value: BTreeMap<(i64, i64), Vec<Vec<i64>>> = BTreeMap::new();
    // (tail, value num, value den) with the empty tail worth 0/1.
    let mut frontier: Vec<(Vec<i64>, i64, i64)> = vec![(Vec::new(), 0, 1)];
    while let Some((tail, u, v)) = frontier.pop() {
        for sign in [1i64, -1] {
            for mag in 2.. {
                let a = sign * mag;
                // 1/(a - u/v) = v/(a v - u)
                let d = a * v - u;
                let (num, den) = if d < 0 { (-v, -d) } else { (v, d) };
                if den > max_den {
                    break;
                }
                let g = gcd(num.abs(), den);
                let mut seq = vec![a];
                seq.extend_from_slice(&tail);
                by_value.entry((num / g, den / g)).or_default().push(seq.clone());
                frontier.push((seq, num, den));
            }
        }
    }
    for v in by_value.values_mut() {
        v.sort();
    }
    by_value
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All knots `S(p, q)` with `3 <= p <= p_max`, every `q` in `(0, p)`.
pub fn all_knots(p_max: i64) -> Vec<TwoBridgeKnot> {
    (3..=p_max)
        .step_by(2)
        .flat_map(|p| (1..p).filter_map(move |q| TwoBridgeKnot::new(p, q).ok()))
        .collect()
}

/// Determinant of an integer matrix by fraction-free Bareiss elimination.
pub fn bareiss_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Signature of a symmetric integer matrix by congruence diagonalization
/// over the rationals.
pub fn signature_by_congruence(m: &[Vec<i64>]) -> i64 {
    use num_rational::Ratio;
    type Q = Ratio<i128>;
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| Q::from_integer(x as i128)).collect()).collect();
    let zero = Q::from_integer(0);
    let mut sig = 0i64;
    let mut k = 0;
    let mut size = n;
    while k < size {
        if a[k][k] == zero {
            // Find a nonzero diagonal entry below, or create one.
            if let Some(i) = (k + 1..size).find(|&i| a[i][i] != zero) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..size).find(|&j| a[k][j] != zero) {
                // Replace e_k by e_k + e_j: diagonal becomes 2 a_kj.
                for c in 0..size {
                    let v = a[j][c];
                    a[k][c] += v;
                }
                for r in 0..size {
                    let v = a[r][j];
                    a[r][k] += v;
                }
            } else {
                // Row and column k are zero.
                a.swap(k, size - 1);
                for row in a.iter_mut() {
                    row.swap(k, size - 1);
                }
                size -= 1;
                continue;
            }
        }
        let pivot = a[k][k];
        sig += if pivot > zero { 1 } else { -1 };
        for i in k + 1..size {
            let f = a[i][k] / pivot;
            for j in k..size {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
            for r in 0..size {
                let v = a[r][k];
                a[r][i] -= f * v;
            }
        }
        k += 1;
    }
    sig
}

/// Runs one acceptance criterion, printing a PASS/FAIL line. Panics count
/// as FAIL.
pub fn criterion(id: &str, title: &str, f: impl FnOnce() -> Result<String, String>) -> bool {
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err("panicked".to_string()));
    match result {
        Ok(detail) => {
            println!("[PASS] {id} {title}: {detail}");
            true
        }
        Err(why) => {
            println!("[FAIL] {id} {title}: {why}");
            false
        }
    }
}
