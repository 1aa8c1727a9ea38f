//! Dense exact matrices over [`ExactScalar`].

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::MonomialGate;
use crate::pauli::PauliString;
use crate::phase::DyadicPhase;
use crate::scalar::ExactScalar;

/// Largest supported dimension exponent for dense matrices.
pub const MAX_MATRIX_QUBITS: usize = 6;

/// Row-major square matrix of exact scalars.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim <= 1 << MAX_MATRIX_QUBITS, "matrix dimension {dim} too large");
        ExactMatrix { dim, entries: vec![ExactScalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, ExactScalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactScalar>>) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { left: dim, right: row.len() });
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Diagonal matrix `diag(exp(i*phases[j]))`.
    pub fn diagonal(phases: &[DyadicPhase]) -> Self {
        let mut m = Self::zeros(phases.len());
        for (i, &p) in phases.iter().enumerate() {
            m.set(i, i, ExactScalar::from_phase(p));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits, when the dimension is a power of two.
    pub fn num_qubits(&self) -> Option<usize> {
        self.dim.is_power_of_two().then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn get(&self, row: usize, col: usize) -> &ExactScalar {
        &self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: ExactScalar) {
        self.entries[row * self.dim + col] = v;
    }

    pub fn row(&self, row: usize) -> &[ExactScalar] {
        &self.entries[row * self.dim..(row + 1) * self.dim]
    }

    pub fn row_mut(&mut self, row: usize) -> &mut [ExactScalar] {
        let d = self.dim;
        &mut self.entries[row * d..(row + 1) * d]
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        mat_mul(self, other)
    }

    pub fn scale(&self, s: &ExactScalar) -> ExactMatrix {
        ExactMatrix { dim: self.dim, entries: self.entries.iter().map(|e| e * s).collect() }
    }

    pub fn adjoint(&self) -> ExactMatrix {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn kron(&self, other: &ExactMatrix) -> ExactMatrix {
        let d = self.dim * other.dim;
        let mut out = Self::zeros(d);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.dim {
                    for l in 0..other.dim {
                        out.set(i * other.dim + k, j * other.dim + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn is_unitary(&self) -> bool {
        self.mul(&self.adjoint()).map(|p| p == Self::identity(self.dim)).unwrap_or(false)
    }

    /// First nonzero entry in row-major order.
    fn pivot(&self) -> Option<usize> {
        self.entries.iter().position(|e| !e.is_zero())
    }

    /// A representative of the projective class: the matrix scaled by the
    /// conjugate of its first nonzero entry. Two unitaries that differ by a
    /// global phase map to the same value. The result is only a hash key: it
    /// is not unitary unless that entry has modulus one.
    pub fn projective_key(&self) -> ExactMatrix {
        match self.pivot() {
            Some(p) => self.scale(&self.entries[p].conj()),
            None => self.clone(),
        }
    }

    /// Extracts the monomial gate, gauge-fixed so the entry in row 0 is 1.
    pub fn as_monomial(&self) -> Option<MonomialGate> {
        as_monomial(self)
    }
}

/// Exact product `a * b`.
pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { left: a.dim, right: b.dim });
    }
    let d = a.dim;
    let mut out = ExactMatrix::zeros(d);
    for i in 0..d {
        for k in 0..d {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..d {
                let y = b.get(k, j);
                if y.is_zero() {
                    continue;
                }
                let cur = &out.entries[i * d + j];
                out.entries[i * d + j] = cur + &(x * y);
            }
        }
    }
    Ok(out)
}

/// True iff `a = lambda * b` for a scalar of modulus one.
pub fn equal_up_to_global_phase(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    if a.dim != b.dim {
        return false;
    }
    let Some(p) = a.pivot() else {
        return b.pivot().is_none();
    };
    let (ap, bp) = (&a.entries[p], &b.entries[p]);
    if bp.is_zero() {
        return false;
    }
    let cross_equal = a.entries.iter().zip(&b.entries).all(|(x, y)| (x * bp) == (y * ap));
    cross_equal && ap.norm_sqr() == bp.norm_sqr()
}

/// Reads off a monomial gate when the matrix has one root-of-unity entry per
/// column, after rotating the row-0 entry to 1.
pub fn as_monomial(a: &ExactMatrix) -> Option<MonomialGate> {
    let n = a.num_qubits()?;
    let d = a.dim;
    let mut perm = vec![0u32; d];
    let mut seen = vec![false; d];
    for (j, slot) in perm.iter_mut().enumerate() {
        let mut row = None;
        for i in 0..d {
            if !a.get(i, j).is_zero() {
                if row.is_some() {
                    return None;
                }
                row = Some(i);
            }
        }
        let i = row?;
        if std::mem::replace(&mut seen[i], true) {
            return None;
        }
        *slot = i as u32;
    }
    let j0 = perm.iter().position(|&r| r == 0)?;
    let gauge = a.get(0, j0).conj();
    let mut phases = Vec::with_capacity(d);
    for (j, &r) in perm.iter().enumerate() {
        let v = a.get(r as usize, j) * &gauge;
        phases.push(v.as_root_of_unity()?);
    }
    MonomialGate::new(n, perm, phases).ok()
}

impl PauliString {
    /// Dense matrix including the `i`-power phase.
    pub fn to_matrix(&self) -> ExactMatrix {
        let n = self.num_qubits();
        assert!(n <= MAX_MATRIX_QUBITS);
        let d = 1usize << n;
        let mut m = ExactMatrix::zeros(d);
        for col in 0..d as u64 {
            let (row, e) = self.apply_to_basis(col);
            m.set(row as usize, col as usize, ExactScalar::root_of_unity(2, e as i64));
        }
        m
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
