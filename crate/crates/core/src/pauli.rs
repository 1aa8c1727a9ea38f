//! Bit-packed Pauli strings.
//!
//! Qubit `q` of an `n`-qubit string lives at bit `n - 1 - q` of the `x` and `z`
//! masks, matching the computational-basis index convention used everywhere
//! else (qubit 0 is the most significant bit). The operator is
//! `i^phase_exp * (P_0 ⊗ P_1 ⊗ ... )` with each `P_q` one of `I, X, Y, Z`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit imposed by the `u64` masks.
pub const MAX_PAULI_QUBITS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
    phase_exp: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_PAULI_QUBITS);
        PauliString { n, x: 0, z: 0, phase_exp: 0 }
    }

    /// Builds `i^phase_exp * P` where the letters of `P` are given by the masks.
    pub fn from_masks(n: usize, x: u64, z: u64, phase_exp: u8) -> Self {
        assert!(n <= MAX_PAULI_QUBITS);
        let full = mask_for(n);
        assert!(x & !full == 0 && z & !full == 0, "mask wider than {n} qubits");
        PauliString { n, x, z, phase_exp: phase_exp % 4 }
    }

    /// `X^x Z^z` as an operator product, converted to the letter convention.
    pub fn from_xz_product(n: usize, x: u64, z: u64, phase_exp: u8) -> Self {
        let ys = (x & z).count_ones() as u8;
        // X Z = -i Y on each qubit holding both bits
        Self::from_masks(n, x, z, (phase_exp + 4 - ys % 4) % 4)
    }

    /// A single-qubit operator on qubit `q`; `letter` is one of `I, X, Y, Z`.
    pub fn single(n: usize, q: usize, letter: char) -> Self {
        assert!(q < n);
        let bit = 1u64 << (n - 1 - q);
        let (x, z) = match letter {
            'I' => (0, 0),
            'X' => (bit, 0),
            'Y' => (bit, bit),
            'Z' => (0, bit),
            other => panic!("not a Pauli letter: {other}"),
        };
        Self::from_masks(n, x, z, 0)
    }

    pub fn x_string(n: usize, mask: u64) -> Self {
        Self::from_masks(n, mask, 0, 0)
    }

    pub fn z_string(n: usize, mask: u64) -> Self {
        Self::from_masks(n, 0, mask, 0)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase_exp
    }

    /// Exponent `e` with `self = i^e X^x Z^z`.
    pub fn xz_phase_exp(&self) -> u8 {
        (self.phase_exp + (self.x & self.z).count_ones() as u8) % 4
    }

    pub fn with_phase_exp(mut self, e: u8) -> Self {
        self.phase_exp = e % 4;
        self
    }

    /// The same letters with a `+` sign.
    pub fn unsigned(self) -> Self {
        self.with_phase_exp(0)
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase_exp % 2 == 0
    }

    /// True when every letter is `I`, regardless of phase.
    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn is_identity(&self) -> bool {
        self.is_identity_up_to_phase() && self.phase_exp == 0
    }

    pub fn is_z_only(&self) -> bool {
        self.x == 0
    }

    pub fn is_x_only(&self) -> bool {
        self.z == 0
    }

    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    /// Mask of qubits on which the string acts non-trivially.
    pub fn support(&self) -> u64 {
        self.x | self.z
    }

    pub fn letter(&self, q: usize) -> char {
        let bit = 1u64 << (self.n - 1 - q);
        match (self.x & bit != 0, self.z & bit != 0) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    /// Symplectic vector packed as `x << n | z`.
    pub fn symplectic(&self) -> u128 {
        ((self.x as u128) << self.n) | self.z as u128
    }

    pub fn commutes(&self, other: &PauliString) -> bool {
        commutes(self, other)
    }

    pub fn mul(&self, other: &PauliString) -> PauliString {
        multiply(self, other)
    }

    /// Applies the operator to a computational basis state, returning the
    /// image index and the phase as a power of `i`.
    pub fn apply_to_basis(&self, index: u64) -> (u64, u8) {
        let sign = ((self.z & index).count_ones() % 2) as u8 * 2;
        (index ^ self.x, (self.xz_phase_exp() + sign) % 4)
    }
}

fn mask_for(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// True iff the symplectic inner product of `p` and `q` vanishes.
pub fn commutes(p: &PauliString, q: &PauliString) -> bool {
    assert_eq!(p.n, q.n, "Pauli strings on different qubit counts");
    ((p.x & q.z) ^ (p.z & q.x)).count_ones() % 2 == 0
}

/// Exact product `p * q` with the `i`-power tracked.
pub fn multiply(p: &PauliString, q: &PauliString) -> PauliString {
    assert_eq!(p.n, q.n, "Pauli strings on different qubit counts");
    // X^a Z^b X^c Z^d = (-1)^{|b & c|} X^{a^c} Z^{b^d}
    let swap_sign = 2 * ((p.z & q.x).count_ones() % 2) as u8;
    let e = p.xz_phase_exp() + q.xz_phase_exp() + swap_sign;
    PauliString::from_xz_product(p.n, p.x ^ q.x, p.z ^ q.z, e % 4)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase_exp {
            0 => "+",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}")?;
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s = text.trim();
        let (phase_exp, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        let n = body.chars().count();
        if n == 0 {
            return Err(Error::Parse(format!("empty Pauli string `{text}`")));
        }
        if n > MAX_PAULI_QUBITS {
            return Err(Error::Parse(format!("Pauli string longer than {MAX_PAULI_QUBITS}")));
        }
        let mut p = PauliString::identity(n);
        for (q, c) in body.chars().enumerate() {
            let bit = 1u64 << (n - 1 - q);
            match c.to_ascii_uppercase() {
                'I' => {}
                'X' => p.x |= bit,
                'Y' => {
                    p.x |= bit;
                    p.z |= bit;
                }
                'Z' => p.z |= bit,
                other => return Err(Error::Parse(format!("bad Pauli letter `{other}` in `{text}`"))),
            }
        }
        p.phase_exp = phase_exp;
        Ok(p)
    }
}

impl TryFrom<String> for PauliString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<PauliString> for String {
    fn from(p: PauliString) -> String {
        p.to_string()
    }
}

/// All `4^n` unsigned Pauli strings, ordered X-strings first, then by weight,
/// then by masks.
pub fn all_paulis(n: usize) -> Vec<PauliString> {
    assert!(n <= 16, "4^{n} Pauli strings is too many to enumerate");
    let dim = 1u64 << n;
    let mut out: Vec<PauliString> =
        (0..dim).flat_map(|x| (0..dim).map(move |z| PauliString::from_masks(n, x, z, 0))).collect();
    out.sort_by_key(|p| (p.z != 0, p.weight(), p.z, p.x));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn commutation_examples() {
        assert!(!commutes(&p("X"), &p("Z")));
        assert!(commutes(&p("XX"), &p("ZZ")));
        assert!(commutes(&p("XI"), &p("IZ")));
    }

    #[test]
    fn product_examples() {
        assert_eq!(multiply(&p("X"), &p("Z")), p("-iY"));
        assert_eq!(multiply(&p("XX"), &p("ZZ")), p("-YY"));
        for s in ["X", "Y", "Z", "-XZY", "YYI"] {
            let q = p(s);
            let sq = multiply(&q, &q);
            assert!(sq.is_identity_up_to_phase());
            assert_eq!(sq.phase_exp(), 0, "{s}");
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["+XZI", "-XZI", "iY", "-iZZ", "+IIII"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("XZ"), p("+XZ"));
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        let q = p("XI");
        assert_eq!(q.x_bits(), 0b10);
        assert_eq!(q.apply_to_basis(0), (2, 0));
    }

    #[test]
    fn multiply_matches_matrices_exhaustively() {
        for n in 1..=2usize {
            let all = all_paulis(n);
            for a in &all {
                for b in &all {
                    let lhs = a.to_matrix();
                    let rhs = b.to_matrix();
                    assert_eq!(lhs.mul(&rhs).unwrap(), multiply(a, b).to_matrix(), "{a} * {b}");
                }
            }
        }
    }

    #[test]
    fn multiply_matches_matrices_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(3..=5);
            let mask = (1u64 << n) - 1;
            let a = PauliString::from_masks(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask, rng.gen_range(0..4));
            let b = PauliString::from_masks(n, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask, rng.gen_range(0..4));
            let prod: ExactMatrix = a.to_matrix().mul(&b.to_matrix()).unwrap();
            assert_eq!(prod, multiply(&a, &b).to_matrix());
        }
    }

    #[test]
    fn enumeration_order() {
        let all = all_paulis(2);
        assert_eq!(all.len(), 16);
        assert!(all[0].is_identity());
        assert!(all[..4].iter().all(|q| q.is_x_only()));
    }
}
