//! Stabilizer groups and encoding-circuit synthesis.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::clifford::CliffordTableau;
use crate::error::{Error, Result};
use crate::pauli::{multiply, PauliString};

/// An independent, commuting list of Hermitian Pauli generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<PauliString>", into = "Vec<PauliString>")]
pub struct StabilizerTableau {
    n: usize,
    generators: Vec<PauliString>,
    /// Row-reduced copies used for membership tests, each with a distinct
    /// leading symplectic bit.
    #[serde(skip)]
    reduced: Vec<(u32, PauliString)>,
}

impl TryFrom<Vec<PauliString>> for StabilizerTableau {
    type Error = Error;

    fn try_from(v: Vec<PauliString>) -> Result<Self> {
        StabilizerTableau::new(v)
    }
}

impl From<StabilizerTableau> for Vec<PauliString> {
    fn from(s: StabilizerTableau) -> Self {
        s.generators
    }
}

/// Outcome of reducing a Pauli against the rows of a tableau.
enum Reduction {
    /// The Pauli is in the group up to the returned phase power of `i`.
    Member(u8),
    /// Residual with a nonzero symplectic part.
    Outside(PauliString),
}

fn leading_bit(p: &PauliString) -> Option<u32> {
    let v = p.symplectic();
    (v != 0).then(|| 127 - v.leading_zeros())
}

impl StabilizerTableau {
    /// Validates generators: same width, Hermitian, pairwise commuting and
    /// independent. Independence also rules out `-I` in the group.
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let n = generators.first().map(PauliString::num_qubits).unwrap_or(0);
        Self::with_qubits(n, generators)
    }

    /// Like [`StabilizerTableau::new`] but allows an empty generator list.
    pub fn with_qubits(n: usize, generators: Vec<PauliString>) -> Result<Self> {
        let mut s = StabilizerTableau { n, generators: Vec::new(), reduced: Vec::new() };
        for g in generators {
            if g.num_qubits() != n {
                return Err(Error::QubitMismatch { left: n, right: g.num_qubits() });
            }
            if !g.is_hermitian() {
                return Err(Error::InvalidTableau(format!("generator {g} is not Hermitian")));
            }
            if let Some(h) = s.generators.iter().find(|h| !h.commutes(&g)) {
                return Err(Error::InvalidTableau(format!("generators {h} and {g} anticommute")));
            }
            match s.reduce(&g) {
                Reduction::Member(_) => {
                    return Err(Error::InvalidTableau(format!("generator {g} is dependent on the others")))
                }
                Reduction::Outside(r) => s.push(g, r),
            }
        }
        Ok(s)
    }

    fn push(&mut self, g: PauliString, residual: PauliString) {
        let lead = leading_bit(&residual).expect("nonzero residual");
        self.generators.push(g);
        self.reduced.push((lead, residual));
    }

    fn reduce(&self, p: &PauliString) -> Reduction {
        let mut r = *p;
        for (lead, row) in &self.reduced {
            if r.symplectic() >> lead & 1 == 1 {
                r = multiply(&r, row);
            }
        }
        if r.is_identity_up_to_phase() {
            Reduction::Member(r.phase_exp())
        } else {
            Reduction::Outside(r)
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// True iff `p` equals an element of the group up to sign.
    pub fn contains_up_to_sign(&self, p: &PauliString) -> bool {
        matches!(self.reduce(p), Reduction::Member(_))
    }

    /// True iff `p` is exactly an element of the group, sign included.
    pub fn contains(&self, p: &PauliString) -> bool {
        // p * (product of rows) = i^e I, and p is in the group iff e = 0
        matches!(self.reduce(p), Reduction::Member(0))
    }

    /// Adds a generator if it is independent and commutes with the group.
    /// Returns `Ok(false)` when it is already a member up to sign.
    pub fn try_extend(&mut self, p: PauliString) -> Result<bool> {
        let p = p.unsigned();
        if let Some(h) = self.generators.iter().find(|h| !h.commutes(&p)) {
            return Err(Error::InvalidTableau(format!("{p} anticommutes with {h}")));
        }
        match self.reduce(&p) {
            Reduction::Member(_) => Ok(false),
            Reduction::Outside(r) => {
                self.push(p, r);
                Ok(true)
            }
        }
    }

    /// Synthesizes a Clifford circuit whose conjugation maps every generator
    /// to a Z-string on the first `rank` qubits.
    pub fn encode_to_z(&self) -> Result<Circuit> {
        encode_to_z(self)
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Parses newline-separated Pauli strings; blank lines and `#` comments are skipped.
pub fn parse_stabilizer_text(text: &str) -> Result<StabilizerTableau> {
    let gens = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<PauliString>>>()?;
    StabilizerTableau::new(gens)
}

/// A stabilizer tableau for the group generated by `axes`, keeping their signs.
///
/// Returns `None` if some pair anticommutes, an axis is not Hermitian, or a
/// signed product of axes equals `-I`. Redundant axes are dropped.
pub fn common_stabilizer(axes: &[PauliString]) -> Option<StabilizerTableau> {
    let n = axes.first()?.num_qubits();
    let mut s = StabilizerTableau::with_qubits(n, Vec::new()).ok()?;
    for (i, a) in axes.iter().enumerate() {
        if a.num_qubits() != n || !a.is_hermitian() {
            return None;
        }
        if axes[..i].iter().any(|b| !a.commutes(b)) {
            return None;
        }
        match s.reduce(a) {
            Reduction::Member(0) => {}
            Reduction::Member(_) => return None,
            Reduction::Outside(r) => s.push(*a, r),
        }
    }
    Some(s)
}

/// As [`common_stabilizer`], but every axis sign is absorbed into its
/// rotation angle first, so only commutation matters.
pub fn common_stabilizer_unsigned(
    n: usize,
    axes: &[PauliString],
) -> std::result::Result<StabilizerTableau, (PauliString, PauliString)> {
    let mut s = StabilizerTableau::with_qubits(n, Vec::new()).expect("empty tableau");
    for (i, a) in axes.iter().enumerate() {
        if let Some(b) = axes[..i].iter().find(|b| !a.commutes(b)) {
            return Err((*b, *a));
        }
        if !a.is_identity_up_to_phase() {
            s.try_extend(a.unsigned()).expect("commutation checked above");
        }
    }
    Ok(s)
}

/// Symplectic Gaussian elimination with lowest-index pivots. Each generator
/// is driven to `Z` on its own qubit, then X gates fix the signs.
pub fn encode_to_z(s: &StabilizerTableau) -> Result<Circuit> {
    let n = s.num_qubits();
    let l = s.rank();
    if l > n {
        return Err(Error::InvalidTableau(format!("rank {l} exceeds {n} qubits")));
    }
    let mut rows: Vec<PauliString> = s.generators().to_vec();
    let mut circuit = Circuit::empty(n.max(1));
    let bitq = |q: usize| 1u64 << (n - 1 - q);

    let emit = |g: Gate, rows: &mut Vec<PauliString>, circuit: &mut Circuit| -> Result<()> {
        let t = CliffordTableau::from_gate(n, &g)?;
        for r in rows.iter_mut() {
            *r = t.apply(r);
        }
        circuit.push(g)
    };

    for i in 0..l {
        // clear Z components on already-encoded qubits using rows 0..i (each is +-Z_k)
        for k in 0..i {
            if rows[i].z_bits() & bitq(k) != 0 {
                rows[i] = multiply(&rows[i], &rows[k]);
            }
        }
        let row = rows[i];
        let free = |m: u64| (i..n).filter(move |&q| m & bitq(q) != 0);
        let j = if row.x_bits() == 0 && free(row.z_bits()).count() == 1 {
            // already a single Z; at most a relabeling is needed
            free(row.z_bits()).next().expect("one free Z")
        } else {
            if row.x_bits() == 0 {
                let j = free(row.z_bits()).next().ok_or_else(|| {
                    Error::InvalidTableau(format!("generator {i} is dependent on earlier generators"))
                })?;
                emit(Gate::h(j), &mut rows, &mut circuit)?;
            }
            let j = free(rows[i].x_bits()).next().expect("row has an X component");
            let others: Vec<usize> = free(rows[i].x_bits()).filter(|&q| q != j).collect();
            for k in others {
                emit(Gate::cnot(j, k), &mut rows, &mut circuit)?;
            }
            if rows[i].z_bits() & bitq(j) != 0 {
                // Y -> -X
                emit(Gate::s(j), &mut rows, &mut circuit)?;
            }
            let zs: Vec<usize> = free(rows[i].z_bits()).filter(|&q| q != j).collect();
            for k in zs {
                // X_j Z_k -> X_j X_k -> X_j
                emit(Gate::h(k), &mut rows, &mut circuit)?;
                emit(Gate::cnot(j, k), &mut rows, &mut circuit)?;
            }
            emit(Gate::h(j), &mut rows, &mut circuit)?;
            j
        };
        if j != i {
            emit(Gate::cnot(i, j), &mut rows, &mut circuit)?;
            emit(Gate::cnot(j, i), &mut rows, &mut circuit)?;
            emit(Gate::cnot(i, j), &mut rows, &mut circuit)?;
        }
        debug_assert_eq!(rows[i].unsigned(), PauliString::single(n, i, 'Z'));
        for r in i + 1..l {
            if rows[r].z_bits() & bitq(i) != 0 {
                rows[r] = multiply(&rows[r], &rows[i]);
            }
        }
    }
    // conjugation by X_i flips the sign of Z_i, leaving every group element with a + sign
    for (i, row) in rows.iter().enumerate().take(l) {
        if row.phase_exp() == 2 {
            circuit.push(Gate::x(i))?;
        }
    }
    Ok(circuit)
}

/// Samples a stabilizer group of the given rank by applying a random Clifford
/// circuit to `<Z_0, ..., Z_{rank-1}>` and randomizing signs.
pub fn random_stabilizer<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> StabilizerTableau {
    assert!(rank <= n);
    let mut gens: Vec<PauliString> = (0..rank).map(|q| PauliString::single(n, q, 'Z')).collect();
    for _ in 0..6 * n + 4 {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let g = match rng.gen_range(0..3) {
            0 => Gate::h(a),
            1 => Gate::s(a),
            _ if a != b => Gate::cnot(a, b),
            _ => Gate::h(a),
        };
        let t = CliffordTableau::from_gate(n, &g).expect("Clifford gate");
        for p in gens.iter_mut() {
            *p = t.apply(p);
        }
    }
    for p in gens.iter_mut() {
        if rng.gen_bool(0.5) {
            *p = p.with_phase_exp(p.phase_exp() + 2);
        }
    }
    StabilizerTableau::new(gens).expect("image of a valid group")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::normalizes;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn check_encoding(s: &StabilizerTableau) {
        let c = encode_to_z(s).unwrap();
        let t = CliffordTableau::from_circuit(&c).unwrap();
        let n = s.num_qubits();
        let allowed = if s.rank() == 0 { 0 } else { ((1u64 << s.rank()) - 1) << (n - s.rank()) };
        for g in s.generators() {
            let img = t.apply(g);
            assert!(img.is_z_only(), "{g} -> {img} via {c}");
            assert_eq!(img.z_bits() & !allowed, 0, "{g} -> {img} outside the first {} qubits", s.rank());
        }
        // the encoded group is fixed by diagonal Cliffords, so its image is normalized by S gates
        let image = StabilizerTableau::new(s.generators().iter().map(|g| t.apply(g)).collect()).unwrap();
        let diag = CliffordTableau::from_circuit(&Circuit::new(n, (0..n).map(Gate::s).collect()).unwrap()).unwrap();
        assert!(normalizes(&diag, &image));
    }

    #[test]
    fn commuting_examples() {
        assert!(common_stabilizer(&[p("ZI"), p("IZ")]).map(|s| s.rank()) == Some(2));
        assert!(common_stabilizer(&[p("XX"), p("ZZ")]).map(|s| s.rank()) == Some(2));
        assert!(common_stabilizer(&[p("X"), p("Z")]).is_none());
        assert!(common_stabilizer(&[p("Z"), p("-Z")]).is_none());
        assert_eq!(common_stabilizer(&[p("ZZ"), p("ZI"), p("IZ")]).unwrap().rank(), 2);
        assert!(common_stabilizer(&[p("XX"), p("YY"), p("ZZ")]).is_none(), "XX*YY*ZZ = -II");
    }

    #[test]
    fn membership() {
        let s = StabilizerTableau::new(vec![p("XX"), p("ZZ")]).unwrap();
        assert!(s.contains(&p("-YY")));
        assert!(!s.contains(&p("YY")));
        assert!(s.contains_up_to_sign(&p("YY")));
        assert!(!s.contains_up_to_sign(&p("XI")));
        assert!(StabilizerTableau::new(vec![p("XX"), p("XX")]).is_err());
        assert!(StabilizerTableau::new(vec![p("XI"), p("ZI")]).is_err());
        assert!(StabilizerTableau::new(vec![p("iZ")]).is_err());
    }

    #[test]
    fn encoding_examples() {
        let z = StabilizerTableau::new(vec![p("Z")]).unwrap();
        assert!(encode_to_z(&z).unwrap().is_empty());
        let x = StabilizerTableau::new(vec![p("X")]).unwrap();
        assert_eq!(encode_to_z(&x).unwrap().gates(), &[Gate::h(0)]);
        check_encoding(&StabilizerTableau::new(vec![p("XX"), p("ZZ")]).unwrap());
        check_encoding(&StabilizerTableau::new(vec![p("-YZX")]).unwrap());
        check_encoding(&StabilizerTableau::new(vec![p("IIZ"), p("IXI")]).unwrap());
        check_encoding(&StabilizerTableau::with_qubits(3, vec![]).unwrap());
    }

    #[test]
    fn text_format() {
        let s = parse_stabilizer_text("XX\n# comment\n-ZZ\n\n").unwrap();
        assert_eq!(s.generators(), &[p("XX"), p("-ZZ")]);
    }

    #[test]
    fn random_groups_encode() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let s = crate::stabilizer::random_stabilizer(&mut rng, 4, 2);
            check_encoding(&s);
        }
    }
}
