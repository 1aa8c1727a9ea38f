//! Diagonal gates: Z-rotation decomposition, hierarchy level and the
//! `D_k` / `Diag_l` families.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hierarchy::{LevelVerdict, Status};
use crate::monomial::MonomialGate;
use crate::pauli::PauliString;
use crate::phase::DyadicPhase;

/// `diag(exp(i*phases[x]))`, gauge-fixed so `phases[0] = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagonalRepr", into = "DiagonalRepr")]
pub struct DiagonalGate {
    n: usize,
    phases: Vec<DyadicPhase>,
}

#[derive(Serialize, Deserialize)]
struct DiagonalRepr {
    n: usize,
    phases: Vec<DyadicPhase>,
}

impl TryFrom<DiagonalRepr> for DiagonalGate {
    type Error = Error;

    fn try_from(r: DiagonalRepr) -> Result<Self> {
        DiagonalGate::new(r.n, r.phases)
    }
}

impl From<DiagonalGate> for DiagonalRepr {
    fn from(d: DiagonalGate) -> Self {
        DiagonalRepr { n: d.n, phases: d.phases }
    }
}

impl DiagonalGate {
    pub fn new(n: usize, mut phases: Vec<DyadicPhase>) -> Result<Self> {
        if n > crate::monomial::MAX_MONOMIAL_QUBITS {
            return Err(Error::TooManyQubits { qubits: n, limit: crate::monomial::MAX_MONOMIAL_QUBITS });
        }
        if phases.len() != 1 << n {
            return Err(Error::DimensionMismatch { left: 1 << n, right: phases.len() });
        }
        let g = phases[0];
        for p in &mut phases {
            *p -= g;
        }
        Ok(DiagonalGate { n, phases })
    }

    pub fn identity(n: usize) -> Self {
        DiagonalGate { n, phases: vec![DyadicPhase::ZERO; 1 << n] }
    }

    /// Controlled phase: `phase` on every basis state where all qubits in
    /// `mask` are 1.
    pub fn controlled_phase(n: usize, mask: u64, phase: DyadicPhase) -> Self {
        let phases = (0..1u64 << n).map(|x| if x & mask == mask { phase } else { DyadicPhase::ZERO }).collect();
        DiagonalGate::new(n, phases).expect("valid length")
    }

    /// `exp(i * theta * Z_mask)`, global phase removed.
    pub fn z_rotation(n: usize, mask: u64, theta: DyadicPhase) -> Self {
        let phases = (0..1u64 << n).map(|x| if (x & mask).count_ones() % 2 == 0 { theta } else { -theta }).collect();
        DiagonalGate::new(n, phases).expect("valid length")
    }

    pub fn from_monomial(g: &MonomialGate) -> Option<Self> {
        g.is_diagonal().then(|| DiagonalGate::new(g.num_qubits(), g.phases().to_vec()).expect("valid length"))
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn phases(&self) -> &[DyadicPhase] {
        &self.phases
    }

    pub fn is_identity(&self) -> bool {
        self.phases.iter().all(DyadicPhase::is_zero)
    }

    pub fn to_monomial(&self) -> MonomialGate {
        MonomialGate::from_diagonal(self.n, self.phases.clone()).expect("valid length")
    }

    /// Pointwise product.
    pub fn mul(&self, other: &DiagonalGate) -> DiagonalGate {
        assert_eq!(self.n, other.n);
        let phases = self.phases.iter().zip(&other.phases).map(|(a, b)| *a + *b).collect();
        DiagonalGate { n: self.n, phases }
    }

    pub fn inverse(&self) -> DiagonalGate {
        DiagonalGate { n: self.n, phases: self.phases.iter().map(|&p| -p).collect() }
    }

    pub fn square(&self) -> DiagonalGate {
        self.mul(self)
    }

    pub fn max_log2_den(&self) -> u32 {
        self.phases.iter().map(DyadicPhase::log2_den).max().unwrap_or(0)
    }
}

/// Coefficients `theta_j` with `phase(x) = sum_j theta_j * (-1)^(x.j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZRotationDecomposition {
    pub n: usize,
    /// Indexed by Z-string mask; entry 0 is the global-phase term.
    pub coeffs: Vec<DyadicPhase>,
}

impl ZRotationDecomposition {
    /// Rebuilds the phase function, exact modulo `2*pi`.
    pub fn reconstruct(&self) -> Vec<DyadicPhase> {
        (0..self.coeffs.len() as u64)
            .map(|x| {
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, &t)| if (x & j as u64).count_ones() % 2 == 0 { t } else { -t })
                    .sum()
            })
            .collect()
    }

    /// Non-zero rotations, excluding the global term.
    pub fn rotations(&self) -> impl Iterator<Item = (PauliString, DyadicPhase)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(_, t)| !t.is_zero())
            .map(|(j, &t)| (PauliString::z_string(self.n, j as u64), t))
    }
}

/// Walsh–Hadamard transform of the phase function, computed exactly on the
/// canonical representatives in `(-pi, pi]`.
pub fn z_rotation_coeffs(d: &DiagonalGate) -> ZRotationDecomposition {
    let k = d.max_log2_den();
    let mut v: Vec<BigInt> = d.phases.iter().map(|p| BigInt::from(p.num()) << (k - p.log2_den())).collect();
    let len = v.len();
    let mut h = 1;
    while h < len {
        for i in (0..len).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (v[j].clone(), v[j + h].clone());
                v[j] = &a + &b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
    let coeffs = v.iter().map(|s| DyadicPhase::from_bigint(s, k + d.n as u32)).collect();
    ZRotationDecomposition { n: d.n, coeffs }
}

/// Algebraic-normal-form coefficients `c_S` with
/// `phase(x) = sum over S contained in x of c_S`, unique modulo `2*pi`.
pub fn phase_polynomial(d: &DiagonalGate) -> Vec<DyadicPhase> {
    let mut a = d.phases.clone();
    let len = a.len();
    let mut h = 1;
    while h < len {
        for x in 0..len {
            if x & h != 0 {
                a[x] = a[x] - a[x ^ h];
            }
        }
        h *= 2;
    }
    a
}

/// Hierarchy level of a diagonal gate.
///
/// A monomial term `c_S * prod_{q in S} x_q` of the phase polynomial is a
/// multi-controlled phase on `|S|` qubits and sits at level
/// `log2_den(c_S) + |S|`; the gate's level is the largest term level. The
/// witness is the Z-string on the deciding support `S`. The identity is
/// reported at level 1.
pub fn ch_level_diag(d: &DiagonalGate) -> LevelVerdict {
    let anf = phase_polynomial(d);
    let mut best: Option<(u32, usize)> = None;
    for (s, c) in anf.iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        let lvl = c.log2_den() + (s as u64).count_ones();
        if best.map_or(true, |(b, _)| lvl > b) {
            best = Some((lvl, s));
        }
    }
    match best {
        Some((level, s)) => LevelVerdict {
            status: Status::InCh { level },
            witness: Some(PauliString::z_string(d.n, s as u64)),
            closure_size: 1,
        },
        None => LevelVerdict { status: Status::InCh { level: 1 }, witness: None, closure_size: 1 },
    }
}

/// Level bound read directly off the Walsh–Hadamard coefficients. This is
/// exact for one and two qubits; for more qubits the choice of phase lifts
/// can inflate it, so [`ch_level_diag`] is the reference.
pub fn wht_level_bound(d: &DiagonalGate) -> u32 {
    z_rotation_coeffs(d).coeffs.iter().skip(1).map(DyadicPhase::log2_den).max().unwrap_or(0).max(1)
}

pub fn diag_level(d: &DiagonalGate) -> u32 {
    match ch_level_diag(d).status {
        Status::InCh { level } => level,
        _ => unreachable!("diagonal dyadic gates are always in the hierarchy"),
    }
}

/// Membership in `D_k`: the diagonal gates at hierarchy level at most `k`.
pub fn in_dk(d: &DiagonalGate, k: u32) -> bool {
    diag_level(d) <= k
}

/// Membership in `Diag_l`: every entry is a `2^l`-th root of unity.
pub fn in_diag_l(d: &DiagonalGate, l: u32) -> bool {
    l >= 1 && d.phases.iter().all(|p| p.log2_den() < l)
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|D_k^n| = prod_{j=0}^{min(k,n)-1} (2^(k-j))^C(n, j+1)`.
pub fn order_dk(n: u32, k: u32) -> BigUint {
    assert!(n >= 1 && k >= 1);
    let mut acc = BigUint::one();
    for j in 0..k.min(n) {
        let exp = binomial(n as u64, (j + 1) as u64) * BigUint::from(k - j);
        let exp: u64 = exp.try_into().expect("exponent fits in u64");
        acc <<= exp;
    }
    acc
}

/// Generators of `D_k^n`: for every support of size `j + 1 <= min(k, n)`, the
/// `j`-controlled phase `diag(1, exp(i*pi/2^(k-1-j)))`.
pub fn generators_dk(n: usize, k: u32) -> Vec<DiagonalGate> {
    assert!(n >= 1 && k >= 1);
    let mut out = Vec::new();
    for j in 0..(k as usize).min(n) {
        let phase = DyadicPhase::pi_over_pow2(k - 1 - j as u32);
        let mut masks: Vec<u64> = (1..1u64 << n).filter(|m| m.count_ones() as usize == j + 1).collect();
        masks.sort_by_key(|m| std::cmp::Reverse(*m));
        for m in masks {
            out.push(DiagonalGate::controlled_phase(n, m, phase));
        }
    }
    out
}
