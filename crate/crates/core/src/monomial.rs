//! Monomial (generalized permutation) gates.
//!
//! A [`MonomialGate`] maps basis state `j` to `perm[j]` with phase
//! `exp(i * phases[j])`. Phases are indexed by the source column. Every value
//! is gauge-fixed so that the column landing on row 0 carries phase zero,
//! which makes structural equality coincide with equality up to global phase.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::pauli::PauliString;
use crate::phase::DyadicPhase;
use crate::scalar::ExactScalar;

/// Largest qubit count a monomial gate may have.
pub const MAX_MONOMIAL_QUBITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MonomialRepr", into = "MonomialRepr")]
pub struct MonomialGate {
    n: usize,
    perm: Vec<u32>,
    phases: Vec<DyadicPhase>,
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    perm: Vec<u32>,
    phases: Vec<DyadicPhase>,
}

impl TryFrom<MonomialRepr> for MonomialGate {
    type Error = Error;

    fn try_from(r: MonomialRepr) -> Result<Self> {
        let d = r.perm.len();
        if !d.is_power_of_two() {
            return Err(Error::InvalidPermutation(format!("length {d} is not a power of two")));
        }
        MonomialGate::new(d.trailing_zeros() as usize, r.perm, r.phases)
    }
}

impl From<MonomialGate> for MonomialRepr {
    fn from(g: MonomialGate) -> Self {
        MonomialRepr { perm: g.perm, phases: g.phases }
    }
}

fn check_perm(n: usize, perm: &[u32]) -> Result<()> {
    let d = 1usize << n;
    if perm.len() != d {
        return Err(Error::DimensionMismatch { left: d, right: perm.len() });
    }
    let mut seen = vec![false; d];
    for &p in perm {
        let p = p as usize;
        if p >= d || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection on 0..{d}")));
        }
    }
    Ok(())
}

impl MonomialGate {
    pub fn new(n: usize, perm: Vec<u32>, phases: Vec<DyadicPhase>) -> Result<Self> {
        if n > MAX_MONOMIAL_QUBITS {
            return Err(Error::TooManyQubits { qubits: n, limit: MAX_MONOMIAL_QUBITS });
        }
        check_perm(n, &perm)?;
        if phases.len() != perm.len() {
            return Err(Error::DimensionMismatch { left: perm.len(), right: phases.len() });
        }
        let mut g = MonomialGate { n, perm, phases };
        g.gauge();
        Ok(g)
    }

    pub fn identity(n: usize) -> Self {
        let d = 1u32 << n;
        MonomialGate { n, perm: (0..d).collect(), phases: vec![DyadicPhase::ZERO; d as usize] }
    }

    pub fn from_perm(n: usize, perm: Vec<u32>) -> Result<Self> {
        let d = 1usize << n;
        Self::new(n, perm, vec![DyadicPhase::ZERO; d])
    }

    pub fn from_diagonal(n: usize, phases: Vec<DyadicPhase>) -> Result<Self> {
        let d = 1u32 << n;
        Self::new(n, (0..d).collect(), phases)
    }

    /// The Pauli string as a monomial, global phase dropped.
    pub fn from_pauli(p: &PauliString) -> Self {
        let n = p.num_qubits();
        let d = 1u64 << n;
        let mut perm = Vec::with_capacity(d as usize);
        let mut phases = Vec::with_capacity(d as usize);
        for j in 0..d {
            let (img, e) = p.apply_to_basis(j);
            perm.push(img as u32);
            phases.push(DyadicPhase::new(e as i64, 1));
        }
        let mut g = MonomialGate { n, perm, phases };
        g.gauge();
        g
    }

    fn gauge(&mut self) {
        let j0 = self.perm.iter().position(|&p| p == 0).expect("bijection hits 0");
        let g0 = self.phases[j0];
        if !g0.is_zero() {
            for p in &mut self.phases {
                *p -= g0;
            }
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[u32] {
        &self.perm
    }

    pub fn phases(&self) -> &[DyadicPhase] {
        &self.phases
    }

    /// Phase attached to each target row instead of each source column.
    pub fn row_phases(&self) -> Vec<DyadicPhase> {
        let mut out = vec![DyadicPhase::ZERO; self.dim()];
        for (j, &r) in self.perm.iter().enumerate() {
            out[r as usize] = self.phases[j];
        }
        out
    }

    pub fn is_permutation(&self) -> bool {
        self.phases.iter().all(DyadicPhase::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &p)| p as usize == j)
    }

    pub fn is_identity(&self) -> bool {
        self.is_diagonal() && self.is_permutation()
    }

    /// Largest phase denominator exponent.
    pub fn max_log2_den(&self) -> u32 {
        self.phases.iter().map(DyadicPhase::log2_den).max().unwrap_or(0)
    }

    /// Matrix product `self * other` (apply `other` first).
    pub fn mul(&self, other: &MonomialGate) -> MonomialGate {
        assert_eq!(self.n, other.n, "monomial gates on different qubit counts");
        let mut perm = Vec::with_capacity(self.dim());
        let mut phases = Vec::with_capacity(self.dim());
        for x in 0..self.dim() {
            let mid = other.perm[x] as usize;
            perm.push(self.perm[mid]);
            phases.push(other.phases[x] + self.phases[mid]);
        }
        let mut g = MonomialGate { n: self.n, perm, phases };
        g.gauge();
        g
    }

    pub fn inverse(&self) -> MonomialGate {
        let mut perm = vec![0u32; self.dim()];
        let mut phases = vec![DyadicPhase::ZERO; self.dim()];
        for (j, &r) in self.perm.iter().enumerate() {
            perm[r as usize] = j as u32;
            phases[r as usize] = -self.phases[j];
        }
        let mut g = MonomialGate { n: self.n, perm, phases };
        g.gauge();
        g
    }

    /// Splits `self = perm_part * diag_part` (up to global phase).
    pub fn split(&self) -> (MonomialGate, MonomialGate) {
        let perm_part =
            MonomialGate { n: self.n, perm: self.perm.clone(), phases: vec![DyadicPhase::ZERO; self.dim()] };
        let mut diag_part =
            MonomialGate { n: self.n, perm: (0..self.dim() as u32).collect(), phases: self.phases.clone() };
        diag_part.gauge();
        (perm_part, diag_part)
    }

    /// `self * p * self^dagger`.
    pub fn conjugate_pauli(&self, p: &PauliString) -> MonomialGate {
        self.mul(&MonomialGate::from_pauli(p)).mul(&self.inverse())
    }

    /// Returns the Pauli string this gate equals up to global phase.
    pub fn as_pauli(&self) -> Option<PauliString> {
        let a = self.perm[0];
        if self.perm.iter().enumerate().any(|(j, &p)| p != j as u32 ^ a) {
            return None;
        }
        let base = self.phases[0];
        let mut b = 0u64;
        for q in 0..self.n {
            let bit = 1usize << q;
            let d = self.phases[bit] - base;
            if d == DyadicPhase::PI {
                b |= bit as u64;
            } else if !d.is_zero() {
                return None;
            }
        }
        for (j, &ph) in self.phases.iter().enumerate() {
            let parity = (j as u64 & b).count_ones() % 2 == 1;
            let expect = if parity { base + DyadicPhase::PI } else { base };
            if ph != expect {
                return None;
            }
        }
        Some(PauliString::from_xz_product(self.n, a as u64, b, 0).unsigned())
    }

    pub fn is_pauli(&self) -> bool {
        self.as_pauli().is_some()
    }

    /// True iff conjugating every single-qubit Pauli generator yields a Pauli.
    pub fn is_clifford(&self) -> bool {
        is_clifford_monomial(self)
    }

    pub fn to_matrix(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim());
        for (j, (&r, &p)) in self.perm.iter().zip(&self.phases).enumerate() {
            m.set(r as usize, j, ExactScalar::from_phase(p));
        }
        m
    }
}

/// Clifford test for monomials: the `2n` generator conjugates must be Paulis.
pub fn is_clifford_monomial(g: &MonomialGate) -> bool {
    let n = g.num_qubits();
    (0..n).all(|q| ['X', 'Z'].iter().all(|&l| g.conjugate_pauli(&PauliString::single(n, q, l)).is_pauli()))
}
