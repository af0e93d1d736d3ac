//! Surgery slopes on the peripheral torus, written `p/q` in the
//! meridian-longitude basis.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("0/0 is not a slope")]
    Degenerate,
    #[error("cannot parse slope from {0:?}")]
    Parse(String),
}

/// A primitive slope `num/den` with `den >= 0` and `gcd(|num|, den) = 1`.
///
/// The meridian is `1/0` and the zero slope is `0/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub const MERIDIAN: Slope = Slope { num: 1, den: 0 };
    pub const ZERO: Slope = Slope { num: 0, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self, SlopeError> {
        if num == 0 && den == 0 {
            return Err(SlopeError::Degenerate);
        }
        if den == 0 {
            return Ok(Self::MERIDIAN);
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        Ok(Slope { num, den })
    }

    /// The integral slope `n/1`.
    pub fn integer(n: i64) -> Self {
        Slope { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_meridian(&self) -> bool {
        self.den == 0
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// `|num|` even; the zero slope counts as even.
    pub fn numerator_is_even(&self) -> bool {
        self.num % 2 == 0
    }

    /// Minimal geometric intersection number `|p s - q r|` of `p/q` and `r/s`.
    pub fn distance(&self, other: &Slope) -> u64 {
        let d = self.num as i128 * other.den as i128 - self.den as i128 * other.num as i128;
        d.unsigned_abs() as u64
    }

    /// The slope `-p/q`; the meridian is fixed.
    pub fn negate(&self) -> Slope {
        if self.is_meridian() {
            *self
        } else {
            Slope { num: -self.num, den: self.den }
        }
    }
}

pub fn distance(a: &Slope, b: &Slope) -> u64 {
    a.distance(b)
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || SlopeError::Parse(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                Slope::new(n, d)
            }
            None => s.parse::<i64>().map(Slope::integer).map_err(|_| bad()),
        }
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(s(-20, 6), s(-10, 3));
        assert_eq!((s(-20, 6).num(), s(-20, 6).den()), (-10, 3));
        assert_eq!((s(3, -1).num(), s(3, -1).den()), (-3, 1));
        assert_eq!(s(5, 0), Slope::MERIDIAN);
        assert_eq!(s(-7, 0), Slope::MERIDIAN);
        assert_eq!(s(0, -4), Slope::ZERO);
        assert_eq!(Slope::new(0, 0), Err(SlopeError::Degenerate));
    }

    #[test]
    fn distances() {
        assert_eq!(s(-4, 1).distance(&s(-10, 3)), 2);
        assert_eq!(Slope::MERIDIAN.distance(&s(3, 5)), 5);
        assert_eq!(s(10, 3).distance(&s(-10, 3)), 60);
        assert_eq!(s(7, 2).distance(&s(7, 2)), 0);
    }

    #[test]
    fn parity() {
        assert!(s(10, 3).numerator_is_even());
        assert!(!s(7, 2).numerator_is_even());
        assert!(Slope::ZERO.numerator_is_even());
        assert!(s(-10, 3).numerator_is_even());
    }

    #[test]
    fn parse_and_print() {
        assert_eq!("-10/3".parse::<Slope>().unwrap(), s(-10, 3));
        assert_eq!("4".parse::<Slope>().unwrap(), s(4, 1));
        assert_eq!("1/0".parse::<Slope>().unwrap(), Slope::MERIDIAN);
        assert_eq!("6/-4".parse::<Slope>().unwrap().to_string(), "-3/2");
        assert!("0/0".parse::<Slope>().is_err());
        assert!("x/2".parse::<Slope>().is_err());
        assert_eq!(serde_json::to_string(&s(-4, 1)).unwrap(), "\"-4/1\"");
    }

    #[test]
    fn exhaustive_symmetry_and_identity() {
        let mut slopes = Vec::new();
        for p in -30..=30 {
            for q in 0..=30 {
                if let Ok(x) = Slope::new(p, q) {
                    slopes.push(x);
                }
            }
        }
        slopes.sort();
        slopes.dedup();
        for a in &slopes {
            for b in &slopes {
                assert_eq!(a.distance(b), b.distance(a));
                assert_eq!(a.distance(b) == 0, a == b);
            }
        }
    }
}
