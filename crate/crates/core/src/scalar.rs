//! Exact elements of `Z[zeta, 1/sqrt2]` where `zeta` is a primitive `2^m`-th root of unity.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::phase::DyadicPhase;

/// Smallest root-of-unity order exponent kept in a canonical value. Eighth
/// roots are always available so that `sqrt2 = zeta_8 + zeta_8^-1` is
/// expressible.
pub const MIN_ROOT_EXP: u32 = 3;

/// Default root-of-unity order exponent (32nd roots of unity).
pub const DEFAULT_ROOT_EXP: u32 = 5;

/// `(sum_i coeffs[i] * zeta^i) / sqrt2^t` with `zeta = exp(i*pi/2^(m-1))`.
///
/// The coefficient vector has length `2^(m-1)` and is reduced with
/// `zeta^(2^(m-1)) = -1`. Values are kept canonical: `t` is minimal and `m` is
/// the smallest exponent (at least [`MIN_ROOT_EXP`]) that represents the value,
/// so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactScalar {
    m: u32,
    t: u32,
    coeffs: Vec<i64>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { m: MIN_ROOT_EXP, t: 0, coeffs: vec![0; 1 << (MIN_ROOT_EXP - 1)] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        let mut s = Self::zero();
        s.coeffs[0] = v;
        s
    }

    /// `zeta_{2^m}^k`.
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let (m, k) = if m < MIN_ROOT_EXP { (MIN_ROOT_EXP, k << (MIN_ROOT_EXP - m)) } else { (m, k) };
        let order = 1i64 << m;
        let half = (order / 2) as usize;
        let k = k.rem_euclid(order) as usize;
        let mut coeffs = vec![0; half];
        if k < half {
            coeffs[k] = 1;
        } else {
            coeffs[k - half] = -1;
        }
        ExactScalar { m, t: 0, coeffs }.canonical()
    }

    /// `exp(i * phase)`.
    pub fn from_phase(phase: DyadicPhase) -> Self {
        Self::root_of_unity(phase.log2_den() + 1, phase.num())
    }

    /// `1/sqrt2`.
    pub fn inv_sqrt2() -> Self {
        ExactScalar { m: MIN_ROOT_EXP, t: 1, coeffs: vec![1, 0, 0, 0] }
    }

    pub fn imag_unit() -> Self {
        Self::root_of_unity(2, 1)
    }

    pub fn root_exp(&self) -> u32 {
        self.m
    }

    pub fn sqrt2_log_den(&self) -> u32 {
        self.t
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn half(&self) -> usize {
        self.coeffs.len()
    }

    /// Re-expresses the value over `2^m`-th roots (`m >= self.m`).
    fn promoted(&self, m: u32) -> Vec<i64> {
        if m == self.m {
            return self.coeffs.clone();
        }
        let stride = 1usize << (m - self.m);
        let mut out = vec![0; self.half() * stride];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i * stride] = c;
        }
        out
    }

    /// Multiplies a coefficient vector by `sqrt2 = zeta^(M/8) - zeta^(3M/8)`.
    fn times_sqrt2(coeffs: &[i64]) -> Vec<i64> {
        let half = coeffs.len();
        let a = half / 4;
        let b = 3 * half / 4;
        let mut out = vec![0i64; half];
        for (i, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (shift, sign) in [(a, 1i64), (b, -1i64)] {
                let j = i + shift;
                if j < half {
                    out[j] += sign * c;
                } else {
                    out[j - half] -= sign * c;
                }
            }
        }
        out
    }

    fn canonical(mut self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        while self.t > 0 {
            let doubled = Self::times_sqrt2(&self.coeffs);
            if doubled.iter().any(|c| c % 2 != 0) {
                break;
            }
            self.coeffs = doubled.into_iter().map(|c| c / 2).collect();
            self.t -= 1;
        }
        while self.m > MIN_ROOT_EXP && self.coeffs.iter().skip(1).step_by(2).all(|&c| c == 0) {
            self.coeffs = self.coeffs.iter().step_by(2).copied().collect();
            self.m -= 1;
        }
        self
    }

    /// Brings both operands to a common root order and `sqrt2` denominator.
    fn aligned(a: &Self, b: &Self) -> (u32, u32, Vec<i64>, Vec<i64>) {
        let m = a.m.max(b.m);
        let t = a.t.max(b.t);
        let mut ca = a.promoted(m);
        let mut cb = b.promoted(m);
        for _ in a.t..t {
            ca = Self::times_sqrt2(&ca);
        }
        for _ in b.t..t {
            cb = Self::times_sqrt2(&cb);
        }
        (m, t, ca, cb)
    }

    pub fn conj(&self) -> Self {
        let half = self.half();
        let mut out = vec![0; half];
        out[0] = self.coeffs[0];
        for i in 1..half {
            // zeta^-i = -zeta^(half - i)
            out[half - i] = -self.coeffs[i];
        }
        ExactScalar { m: self.m, t: self.t, coeffs: out }.canonical()
    }

    /// `|x|^2`, exact.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Returns `phi` when the value equals `exp(i*phi)`.
    pub fn as_root_of_unity(&self) -> Option<DyadicPhase> {
        if self.t != 0 {
            return None;
        }
        let mut found = None;
        for (i, &c) in self.coeffs.iter().enumerate() {
            match c {
                0 => {}
                1 | -1 if found.is_none() => found = Some((i as i64, c)),
                _ => return None,
            }
        }
        let (i, c) = found?;
        // zeta^i = exp(i*pi*i/2^(m-1))
        let base = DyadicPhase::new(i, self.m - 1);
        Some(if c == 1 { base } else { base + DyadicPhase::PI })
    }

    /// Floating approximation, for display and debugging only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let half = self.half() as f64;
        let scale = 2f64.powf(-(self.t as f64) / 2.0);
        let (mut re, mut im) = (0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            let ang = std::f64::consts::PI * i as f64 / half;
            re += c as f64 * ang.cos();
            im += c as f64 * ang.sin();
        }
        (re * scale, im * scale)
    }
}

impl Default for ExactScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;

    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        let (m, t, a, b) = ExactScalar::aligned(self, rhs);
        let coeffs = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        ExactScalar { m, t, coeffs }.canonical()
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;

    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;

    fn neg(self) -> ExactScalar {
        ExactScalar { m: self.m, t: self.t, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;

    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        let m = self.m.max(rhs.m);
        let a = self.promoted(m);
        let b = rhs.promoted(m);
        let half = a.len();
        let mut out = vec![0i64; half];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                let k = i + j;
                if k < half {
                    out[k] += x * y;
                } else {
                    out[k - half] -= x * y;
                }
            }
        }
        ExactScalar { m, t: self.t + rhs.t, coeffs: out }.canonical()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $f(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                _ => format!("{c}*w^{i}"),
            });
        }
        let body = terms.join(" + ").replace("+ -", "- ");
        let root = 1u64 << self.m;
        match self.t {
            0 => write!(f, "({body})[w=e^(2pi i/{root})]"),
            t => write!(f, "({body})/sqrt2^{t}[w=e^(2pi i/{root})]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(s: &ExactScalar, re: f64, im: f64) -> bool {
        let (a, b) = s.to_complex_f64();
        (a - re).abs() < 1e-9 && (b - im).abs() < 1e-9
    }

    #[test]
    fn sqrt2_arithmetic() {
        let h = ExactScalar::inv_sqrt2();
        let half = &h * &h;
        assert_eq!(half.sqrt2_log_den(), 2);
        let two_halves = &half + &half;
        assert_eq!(two_halves, ExactScalar::one());
        assert!(close(&h, std::f64::consts::FRAC_1_SQRT_2, 0.0));
    }

    #[test]
    fn eighth_root_from_sqrt2() {
        // (1 + i)/sqrt2 = zeta_8
        let v = &(&ExactScalar::one() + &ExactScalar::imag_unit()) * &ExactScalar::inv_sqrt2();
        assert_eq!(v, ExactScalar::root_of_unity(3, 1));
        assert_eq!(v.as_root_of_unity(), Some(DyadicPhase::new(1, 2)));
    }

    #[test]
    fn roots_multiply() {
        let a = ExactScalar::root_of_unity(5, 3);
        let b = ExactScalar::root_of_unity(4, 5);
        assert_eq!(&a * &b, ExactScalar::root_of_unity(5, 13));
        assert_eq!(&a * &a.conj(), ExactScalar::one());
        assert_eq!(ExactScalar::root_of_unity(3, 4), ExactScalar::from_int(-1));
    }

    #[test]
    fn phase_round_trip() {
        for k in 0..7u32 {
            for n in -20i64..20 {
                let p = DyadicPhase::new(n, k);
                assert_eq!(ExactScalar::from_phase(p).as_root_of_unity(), Some(p));
            }
        }
    }

    #[test]
    fn canonical_m_shrinks() {
        let i = ExactScalar::root_of_unity(6, 16);
        assert_eq!(i.root_exp(), MIN_ROOT_EXP);
        assert_eq!(i, ExactScalar::imag_unit());
    }

    #[test]
    fn not_a_root() {
        assert_eq!(ExactScalar::from_int(2).as_root_of_unity(), None);
        assert_eq!(ExactScalar::inv_sqrt2().as_root_of_unity(), None);
        assert_eq!(ExactScalar::zero().as_root_of_unity(), None);
    }
}
