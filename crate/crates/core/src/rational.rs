//! Exact nonnegative fractions in lowest terms.
//!
//! Similarity values are rationals, never floats: the containment reading of
//! a matrix hinges on exact `SIM = 1` and `SIM = 0` tests.

use std::cmp::Ordering;
use std::fmt;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A nonnegative fraction kept in lowest terms. Zero is `0/1`, one is `1/1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    numerator: u64,
    denominator: u64,
}

impl Rational {
    pub const ZERO: Rational = Rational { numerator: 0, denominator: 1 };
    pub const ONE: Rational = Rational { numerator: 1, denominator: 1 };

    /// Builds `numerator/denominator` reduced to lowest terms.
    ///
    /// Panics if `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Rational {
        assert!(denominator != 0, "zero denominator");
        let g = gcd(numerator, denominator);
        Rational { numerator: numerator / g, denominator: denominator / g }
    }

    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    pub fn denominator(&self) -> u64 {
        self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }

    /// `num/den` as parsed from the rational CSV cells, e.g. `3/11`.
    pub fn parse(text: &str) -> Option<Rational> {
        let (n, d) = text.split_once('/')?;
        let n: u64 = n.parse().ok()?;
        let d: u64 = d.parse().ok()?;
        if d == 0 {
            return None;
        }
        Some(Rational::new(n, d))
    }

    /// Decimal expansion with exactly six fractional digits, rounding half
    /// away from zero. `3/11` renders as `0.272727`, `1/6` as `0.166667`.
    pub fn to_decimal6(&self) -> String {
        let n = self.numerator as u128;
        let d = self.denominator as u128;
        let scaled = (2 * n * 1_000_000 + d) / (2 * d);
        format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
    }

    /// The value scaled into `0..=max` and rounded half away from zero.
    /// Used for gray levels, where `max` is 255.
    pub fn scale_rounded(&self, max: u64) -> u64 {
        let n = self.numerator as u128;
        let d = self.denominator as u128;
        ((2 * n * max as u128 + d) / (2 * d)) as u64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.numerator as u128 * other.denominator as u128;
        let rhs = other.numerator as u128 * self.denominator as u128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.denominator)
    }
}
