//! Exact angles of the form `num * pi / 2^log2_den`.
//!
//! Every diagonal entry, rotation angle and Walsh–Hadamard coefficient in the
//! crate is a [`DyadicPhase`]. Values are kept reduced and taken modulo `2*pi`,
//! with the representative chosen in `(-pi, pi]`, so structural equality is
//! angle equality.

use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported denominator exponent.
pub const MAX_LOG2_DEN: u32 = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PhaseRepr")]
pub struct DyadicPhase {
    num: i64,
    log2_den: u32,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PhaseRepr {
    Text(String),
    Fraction { num: i64, log2_den: u32 },
}

impl TryFrom<PhaseRepr> for DyadicPhase {
    type Error = Error;

    fn try_from(repr: PhaseRepr) -> Result<Self> {
        match repr {
            PhaseRepr::Text(s) => s.parse(),
            PhaseRepr::Fraction { num, log2_den } => {
                if log2_den > MAX_LOG2_DEN {
                    return Err(Error::Parse(format!("log2_den {log2_den} exceeds {MAX_LOG2_DEN}")));
                }
                Ok(DyadicPhase::new(num, log2_den))
            }
        }
    }
}

impl DyadicPhase {
    pub const ZERO: DyadicPhase = DyadicPhase { num: 0, log2_den: 0 };
    pub const PI: DyadicPhase = DyadicPhase { num: 1, log2_den: 0 };

    /// Builds the canonical representative of `num * pi / 2^log2_den`.
    pub fn new(num: i64, log2_den: u32) -> Self {
        Self::reduce_i128(num as i128, log2_den)
    }

    /// `pi / 2^k`.
    pub fn pi_over_pow2(k: u32) -> Self {
        Self::new(1, k)
    }

    fn reduce_i128(mut num: i128, mut k: u32) -> Self {
        assert!(k <= MAX_LOG2_DEN + 1, "phase denominator 2^{k} too large");
        if num == 0 {
            return Self::ZERO;
        }
        while k > 0 && num % 2 == 0 {
            num /= 2;
            k -= 1;
        }
        let period: i128 = 1 << (k + 1);
        let half: i128 = 1 << k;
        num = num.rem_euclid(period);
        if num > half {
            num -= period;
        }
        if num == 0 {
            return Self::ZERO;
        }
        assert!(k <= MAX_LOG2_DEN, "phase denominator 2^{k} too large");
        DyadicPhase { num: num as i64, log2_den: k }
    }

    /// Reduces an arbitrary-precision numerator.
    pub fn from_bigint(num: &BigInt, log2_den: u32) -> Self {
        let period = BigInt::from(1) << (log2_den + 1);
        let mut r = num % &period;
        if r.is_negative() {
            r += &period;
        }
        // r < 2^(log2_den+1) fits in i128 for supported denominators
        Self::reduce_i128(r.to_i128().expect("reduced numerator fits"), log2_den)
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn log2_den(&self) -> u32 {
        self.log2_den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Hierarchy level contributed by a Z-rotation through this angle.
    pub fn level(&self) -> u32 {
        self.log2_den
    }

    pub fn double(self) -> Self {
        self + self
    }

    pub fn mul_int(self, m: i64) -> Self {
        Self::reduce_i128(self.num as i128 * m as i128, self.log2_den)
    }

    /// Numerator over the fixed denominator `2^k`, taken in `[0, 2^(k+1))`.
    ///
    /// Panics if the phase needs a finer denominator than `2^k`.
    pub fn units(&self, k: u32) -> u64 {
        assert!(self.log2_den <= k, "phase {self} is finer than pi/2^{k}");
        let period: i128 = 1 << (k + 1);
        ((self.num as i128) << (k - self.log2_den)).rem_euclid(period) as u64
    }

    pub fn from_units(units: u64, k: u32) -> Self {
        Self::reduce_i128(units as i128, k)
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 * std::f64::consts::PI / (1u64 << self.log2_den) as f64
    }
}

/// Hierarchy level of a rotation angle: the reduced denominator exponent.
pub fn level_of_phase(a: DyadicPhase) -> u32 {
    a.level()
}

impl Add for DyadicPhase {
    type Output = DyadicPhase;

    fn add(self, rhs: DyadicPhase) -> DyadicPhase {
        let k = self.log2_den.max(rhs.log2_den);
        let a = (self.num as i128) << (k - self.log2_den);
        let b = (rhs.num as i128) << (k - rhs.log2_den);
        Self::reduce_i128(a + b, k)
    }
}

impl AddAssign for DyadicPhase {
    fn add_assign(&mut self, rhs: DyadicPhase) {
        *self = *self + rhs;
    }
}

impl Neg for DyadicPhase {
    type Output = DyadicPhase;

    fn neg(self) -> DyadicPhase {
        Self::reduce_i128(-(self.num as i128), self.log2_den)
    }
}

impl Sub for DyadicPhase {
    type Output = DyadicPhase;

    fn sub(self, rhs: DyadicPhase) -> DyadicPhase {
        self + (-rhs)
    }
}

impl SubAssign for DyadicPhase {
    fn sub_assign(&mut self, rhs: DyadicPhase) {
        *self = *self - rhs;
    }
}

impl std::iter::Sum for DyadicPhase {
    fn sum<I: Iterator<Item = DyadicPhase>>(iter: I) -> Self {
        iter.fold(DyadicPhase::ZERO, |acc, x| acc + x)
    }
}

impl Default for DyadicPhase {
    fn default() -> Self {
        Self::ZERO
    }
}

impl fmt::Display for DyadicPhase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.log2_den) {
            (0, _) => write!(f, "0"),
            (1, 0) => write!(f, "pi"),
            (n, k) => write!(f, "{n}/2^{k} * pi"),
        }
    }
}

fn parse_int(s: &str) -> Result<i64> {
    s.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer `{s}` in angle")))
}

/// Parses `2^k` or a plain positive integer.
fn parse_den(s: &str) -> Result<i64> {
    if let Some(exp) = s.strip_prefix("2^") {
        let k: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent `{exp}`")))?;
        if k > MAX_LOG2_DEN {
            return Err(Error::Parse(format!("denominator 2^{k} too large")));
        }
        Ok(1i64 << k)
    } else {
        let d = parse_int(s)?;
        if d <= 0 {
            return Err(Error::Parse(format!("non-positive denominator `{s}`")));
        }
        Ok(d)
    }
}

/// Parses a coefficient like `3`, `-1`, `3/8`, `1/2^3`.
fn parse_fraction(s: &str) -> Result<(i64, i64)> {
    match s.split_once('/') {
        Some((n, d)) => Ok((parse_int(n)?, parse_den(d)?)),
        None => Ok((parse_int(s)?, 1)),
    }
}

/// Parses a rational multiple of pi, returning `(num, den)` without checking
/// that `den` is a power of two.
pub fn parse_rational_pi(text: &str) -> Result<(i64, i64)> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
    if s.is_empty() {
        return Err(Error::Parse("empty angle".into()));
    }
    let Some((pre, post)) = s.split_once("pi") else {
        let (n, _) = parse_fraction(&s)?;
        if n == 0 {
            return Ok((0, 1));
        }
        return Err(Error::Parse(format!("angle `{text}` must be a multiple of pi")));
    };
    let pre = pre.strip_suffix('*').unwrap_or(pre);
    let (mut num, mut den) = match pre {
        "" | "+" => (1, 1),
        "-" => (-1, 1),
        p => parse_fraction(p)?,
    };
    if !post.is_empty() {
        let d = post.strip_prefix('/').ok_or_else(|| Error::Parse(format!("unexpected `{post}` after pi")))?;
        den = den.checked_mul(parse_den(d)?).ok_or_else(|| Error::Parse("denominator overflow".into()))?;
    }
    let g = num_integer::gcd(num, den);
    if g > 1 {
        num /= g;
        den /= g;
    }
    Ok((num, den))
}

impl FromStr for DyadicPhase {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (num, den) = parse_rational_pi(text)?;
        if den.count_ones() != 1 {
            return Err(Error::NonDyadic { num, den });
        }
        Ok(DyadicPhase::new(num, den.trailing_zeros()))
    }
}
