//! Clifford gates stored as their conjugation action on Pauli generators.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate, GateKind};
use crate::error::{Error, Result};
use crate::pauli::{multiply, PauliString};
use crate::phase::DyadicPhase;
use crate::stabilizer::StabilizerTableau;

/// Images `C X_q C^dagger` and `C Z_q C^dagger` for every qubit `q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CliffordTableau {
    n: usize,
    x_images: Vec<PauliString>,
    z_images: Vec<PauliString>,
}

impl CliffordTableau {
    pub fn identity(n: usize) -> Self {
        CliffordTableau {
            n,
            x_images: (0..n).map(|q| PauliString::single(n, q, 'X')).collect(),
            z_images: (0..n).map(|q| PauliString::single(n, q, 'Z')).collect(),
        }
    }

    /// Builds a tableau from explicit images, checking that they are Hermitian
    /// and satisfy the Pauli commutation relations.
    pub fn from_images(n: usize, x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self> {
        if x_images.len() != n || z_images.len() != n {
            return Err(Error::InvalidTableau(format!("expected {n} X and {n} Z images")));
        }
        let all: Vec<&PauliString> = x_images.iter().chain(&z_images).collect();
        for p in &all {
            if p.num_qubits() != n {
                return Err(Error::QubitMismatch { left: n, right: p.num_qubits() });
            }
            if !p.is_hermitian() {
                return Err(Error::InvalidTableau(format!("image {p} is not Hermitian")));
            }
        }
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                // X_q and Z_q anticommute; every other pair commutes
                let should_commute = !(j == i + n);
                if all[i].commutes(all[j]) != should_commute {
                    return Err(Error::InvalidTableau(format!(
                        "images {} and {} break the symplectic form",
                        all[i], all[j]
                    )));
                }
            }
        }
        Ok(CliffordTableau { n, x_images, z_images })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_image(&self, q: usize) -> &PauliString {
        &self.x_images[q]
    }

    pub fn z_image(&self, q: usize) -> &PauliString {
        &self.z_images[q]
    }

    /// Tableau of a single Clifford gate acting on `n` qubits.
    pub fn from_gate(n: usize, g: &Gate) -> Result<Self> {
        let mut t = Self::identity(n);
        let sp = |s: &str| -> PauliString {
            // two-qubit images are written on the gate's wires then embedded
            s.parse().expect("literal Pauli")
        };
        let place = |local: PauliString, wires: &[usize]| -> PauliString {
            let mut x = 0u64;
            let mut z = 0u64;
            for (i, &w) in wires.iter().enumerate() {
                let lb = 1u64 << (local.num_qubits() - 1 - i);
                let gb = 1u64 << (n - 1 - w);
                if local.x_bits() & lb != 0 {
                    x |= gb;
                }
                if local.z_bits() & lb != 0 {
                    z |= gb;
                }
            }
            PauliString::from_masks(n, x, z, local.phase_exp())
        };
        let kind = clifford_kind(g).ok_or_else(|| Error::NonClifford(g.to_string()))?;
        let q = *g.targets.first().expect("gate has a target");
        match kind {
            CliffordKind::Single(xi, zi) => {
                t.x_images[q] = place(sp(xi), &[q]);
                t.z_images[q] = place(sp(zi), &[q]);
            }
            CliffordKind::Cnot(c) => {
                t.x_images[c] = place(sp("XX"), &[c, q]);
                t.z_images[q] = place(sp("ZZ"), &[c, q]);
            }
            CliffordKind::Cz(c) => {
                t.x_images[c] = place(sp("XZ"), &[c, q]);
                t.x_images[q] = place(sp("ZX"), &[c, q]);
            }
            CliffordKind::Swap(a, b) => {
                t.x_images.swap(a, b);
                t.z_images.swap(a, b);
            }
        }
        Ok(t)
    }

    /// Tableau of `exp(i*theta*P)` for a Hermitian Pauli `P` and an angle that
    /// is a multiple of `pi/4`.
    pub fn pauli_rotation(axis: &PauliString, theta: DyadicPhase) -> Result<Self> {
        if theta.log2_den() > 2 {
            return Err(Error::NonClifford(format!("rotation by {theta}")));
        }
        let n = axis.num_qubits();
        let axis = axis.unsigned();
        let quarter_turns = theta.units(2) as u8; // theta = quarter_turns * pi/4
        let rot = |p: PauliString| -> PauliString {
            if p.commutes(&axis) {
                return p;
            }
            // exp(i t P) Q exp(-i t P) = exp(2 i t P) Q for anticommuting Q
            match quarter_turns % 4 {
                0 => p,
                1 => multiply(&axis.with_phase_exp(1), &p),
                2 => p.with_phase_exp(p.phase_exp() + 2),
                _ => multiply(&axis.with_phase_exp(3), &p),
            }
        };
        let id = Self::identity(n);
        Ok(CliffordTableau {
            n,
            x_images: id.x_images.into_iter().map(rot).collect(),
            z_images: id.z_images.into_iter().map(rot).collect(),
        })
    }

    /// Composed tableau of a circuit of Clifford gates.
    pub fn from_circuit(c: &Circuit) -> Result<Self> {
        let mut t = Self::identity(c.num_qubits());
        for g in c.gates() {
            t = t.then(&Self::from_gate(c.num_qubits(), g)?);
        }
        Ok(t)
    }

    /// `C p C^dagger`, exact including sign.
    pub fn apply(&self, p: &PauliString) -> PauliString {
        assert_eq!(p.num_qubits(), self.n, "qubit count mismatch");
        let n = self.n;
        // p = i^e X^x Z^z with the products ordered by qubit
        let mut acc = PauliString::identity(n).with_phase_exp(p.xz_phase_exp());
        for q in 0..n {
            if p.x_bits() & (1 << (n - 1 - q)) != 0 {
                acc = multiply(&acc, &self.x_images[q]);
            }
        }
        for q in 0..n {
            if p.z_bits() & (1 << (n - 1 - q)) != 0 {
                acc = multiply(&acc, &self.z_images[q]);
            }
        }
        acc
    }

    /// The Clifford that applies `self` first and `next` second.
    pub fn then(&self, next: &CliffordTableau) -> CliffordTableau {
        assert_eq!(self.n, next.n, "qubit count mismatch");
        CliffordTableau {
            n: self.n,
            x_images: self.x_images.iter().map(|p| next.apply(p)).collect(),
            z_images: self.z_images.iter().map(|p| next.apply(p)).collect(),
        }
    }

    /// Circuit-order composition: `compose(a, b)` runs `a` and then `b`.
    pub fn compose(a: &CliffordTableau, b: &CliffordTableau) -> CliffordTableau {
        a.then(b)
    }

    pub fn inverse(&self) -> CliffordTableau {
        let n = self.n;
        let m = 2 * n;
        // rows are the symplectic vectors of the images of X_0..X_{n-1}, Z_0..Z_{n-1}
        let rows: Vec<u128> = self.x_images.iter().chain(&self.z_images).map(|p| p.symplectic()).collect();
        let inv = invert_gf2(&rows, m).expect("tableau images are independent");
        let id = Self::identity(n);
        let generators: Vec<PauliString> = id.x_images.iter().chain(&id.z_images).copied().collect();
        let mut out = Vec::with_capacity(m);
        for (r, target) in generators.iter().enumerate() {
            // target = sum_k inv[r][k] * image_k, so the preimage is the matching product of generators
            let mut pre = PauliString::identity(n);
            for (k, g) in generators.iter().enumerate() {
                if inv[r] >> (m - 1 - k) & 1 == 1 {
                    pre = multiply(&pre, g);
                }
            }
            let img = self.apply(&pre);
            debug_assert_eq!(img.unsigned(), target.unsigned());
            // fix the phase so the preimage maps exactly onto the target
            let fix = (target.phase_exp() + 4 - img.phase_exp()) % 4;
            out.push(pre.with_phase_exp(pre.phase_exp() + fix));
        }
        let z_images = out.split_off(n);
        CliffordTableau { n, x_images: out, z_images }
    }

    /// True iff every generator of `s` maps into `<s>` up to sign.
    pub fn normalizes(&self, s: &StabilizerTableau) -> bool {
        normalizes(self, s)
    }

    /// True iff X-strings map to X-strings and Z-strings to Z-strings, the
    /// signature of the Clifford permutations generated by CNOT and X.
    pub fn is_clifford_permutation(&self) -> bool {
        self.x_images.iter().all(PauliString::is_x_only) && self.z_images.iter().all(PauliString::is_z_only)
    }

    /// True iff the Clifford is a Pauli up to global phase.
    pub fn is_pauli(&self) -> bool {
        let id = Self::identity(self.n);
        self.x_images.iter().zip(&id.x_images).all(|(a, b)| a.unsigned() == *b)
            && self.z_images.iter().zip(&id.z_images).all(|(a, b)| a.unsigned() == *b)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }
}

/// True iff `c` maps every generator of `s` into `<s>`, ignoring signs.
pub fn normalizes(c: &CliffordTableau, s: &StabilizerTableau) -> bool {
    s.generators().iter().all(|g| s.contains_up_to_sign(&c.apply(g)))
}

enum CliffordKind {
    /// Images of X and Z for a single-qubit gate.
    Single(&'static str, &'static str),
    Cnot(usize),
    Cz(usize),
    Swap(usize, usize),
}

fn clifford_kind(g: &Gate) -> Option<CliffordKind> {
    use CliffordKind::*;
    let single_phase = |a: DyadicPhase| -> Option<CliffordKind> {
        // diag(1, exp(i a)) for a multiple of pi/2
        if a.log2_den() > 1 {
            return None;
        }
        Some(match a.units(1) {
            0 => Single("X", "Z"),
            1 => Single("Y", "Z"),
            2 => Single("-X", "Z"),
            _ => Single("-Y", "Z"),
        })
    };
    match (g.kind, g.controls.len()) {
        (GateKind::I, 0) => Some(Single("X", "Z")),
        (GateKind::H, 0) => Some(Single("Z", "X")),
        (GateKind::S, 0) => Some(Single("Y", "Z")),
        (GateKind::Sdg, 0) => Some(Single("-Y", "Z")),
        (GateKind::X, 0) => Some(Single("X", "-Z")),
        (GateKind::Y, 0) => Some(Single("-X", "-Z")),
        (GateKind::Z, 0) => Some(Single("-X", "Z")),
        (GateKind::Swap, 0) => Some(Swap(g.targets[0], g.targets[1])),
        (GateKind::X, 1) => Some(Cnot(g.controls[0])),
        (GateKind::Z, 1) => Some(Cz(g.controls[0])),
        (GateKind::Phase, 0) => single_phase(g.angle?),
        (GateKind::Phase, 1) if g.angle? == DyadicPhase::PI => Some(Cz(g.controls[0])),
        (GateKind::Rz, 0) => {
            // exp(i a Z) equals diag(1, exp(-2 i a)) up to global phase
            let a = g.angle?;
            single_phase((-a).double())
        }
        _ => None,
    }
}

/// True iff the gate has a Clifford tableau.
pub fn is_clifford_gate(g: &Gate) -> bool {
    clifford_kind(g).is_some()
}

/// Inverts a square GF(2) matrix given as bit rows (bit `m-1-k` is column `k`).
fn invert_gf2(rows: &[u128], m: usize) -> Option<Vec<u128>> {
    let mut a = rows.to_vec();
    let mut inv: Vec<u128> = (0..m).map(|i| 1u128 << (m - 1 - i)).collect();
    for col in 0..m {
        let bitc = 1u128 << (m - 1 - col);
        let pivot = (col..m).find(|&r| a[r] & bitc != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        for r in 0..m {
            if r != col && a[r] & bitc != 0 {
                a[r] ^= a[col];
                inv[r] ^= inv[col];
            }
        }
    }
    // rows of inv express the unit vectors in terms of the original rows
    Some(inv)
}

impl fmt::Display for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            writeln!(f, "X{q} -> {}    Z{q} -> {}", self.x_images[q], self.z_images[q])?;
        }
        Ok(())
    }
}
