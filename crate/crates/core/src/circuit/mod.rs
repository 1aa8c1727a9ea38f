//! Gate-list circuits, their JSON form and exact evaluation.

pub mod ct;
pub mod identities;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, MAX_MATRIX_QUBITS};
use crate::monomial::MonomialGate;
use crate::phase::DyadicPhase;
use crate::scalar::ExactScalar;

pub use ct::{
    ct_mismatch, ct_mismatch_pairwise, mm0_level_certificate, push_x_through, time_slices, zero_mismatch_slicing,
    SlicePartition,
};

/// Base operation of a gate before controls are added.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    I,
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Y,
    Z,
    Swap,
    /// `diag(1, exp(i*angle))`.
    Phase,
    /// `exp(i*angle*Z)`.
    Rz,
}

impl GateKind {
    fn from_base_name(name: &str) -> Option<GateKind> {
        Some(match name {
            "I" | "ID" => GateKind::I,
            "H" => GateKind::H,
            "S" => GateKind::S,
            "SDG" | "SDAG" => GateKind::Sdg,
            "T" => GateKind::T,
            "TDG" | "TDAG" => GateKind::Tdg,
            "X" | "NOT" => GateKind::X,
            "Y" => GateKind::Y,
            "Z" => GateKind::Z,
            "SWAP" => GateKind::Swap,
            "P" | "PHASE" => GateKind::Phase,
            "RZ" => GateKind::Rz,
            _ => return None,
        })
    }

    pub fn base_name(self) -> &'static str {
        match self {
            GateKind::I => "I",
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::Sdg => "SDG",
            GateKind::T => "T",
            GateKind::Tdg => "TDG",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::Swap => "SWAP",
            GateKind::Phase => "P",
            GateKind::Rz => "RZ",
        }
    }

    fn num_targets(self) -> usize {
        if self == GateKind::Swap {
            2
        } else {
            1
        }
    }

    fn takes_angle(self) -> bool {
        matches!(self, GateKind::Phase | GateKind::Rz)
    }
}

/// One gate: a base operation on `targets`, applied when every control is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GateRepr", into = "GateRepr")]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<usize>,
    pub targets: Vec<usize>,
    pub angle: Option<DyadicPhase>,
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    controls: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    targets: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    qubits: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<DyadicPhase>,
}

/// Splits a gate name into its base kind and the number of controls the name
/// implies (`None` for the variadic `MC` prefix).
fn parse_gate_name(name: &str) -> Result<(GateKind, Option<usize>)> {
    let upper = name.trim().to_ascii_uppercase();
    match upper.as_str() {
        "CNOT" | "CX" => return Ok((GateKind::X, Some(1))),
        "TOFFOLI" => return Ok((GateKind::X, Some(2))),
        "FREDKIN" => return Ok((GateKind::Swap, Some(1))),
        _ => {}
    }
    if let Some(base) = upper.strip_prefix("MC") {
        if let Some(kind) = GateKind::from_base_name(base) {
            return Ok((kind, None));
        }
    }
    let stripped = upper.trim_start_matches('C');
    let k = upper.len() - stripped.len();
    GateKind::from_base_name(stripped).map(|kind| (kind, Some(k))).ok_or_else(|| Error::UnknownGate(name.to_string()))
}

impl TryFrom<GateRepr> for Gate {
    type Error = Error;

    fn try_from(r: GateRepr) -> Result<Self> {
        let (kind, implied) = parse_gate_name(&r.name)?;
        let (controls, targets) = match (r.controls, r.targets, r.qubits) {
            (c, Some(t), None) => (c.unwrap_or_default(), t),
            (None, None, Some(q)) => {
                let nt = kind.num_targets();
                if q.len() < nt {
                    return Err(Error::InvalidGate(format!("`{}` needs at least {nt} qubits", r.name)));
                }
                let split = q.len() - nt;
                (q[..split].to_vec(), q[split..].to_vec())
            }
            _ => {
                return Err(Error::InvalidGate(format!(
                    "`{}` must give either `targets` (with optional `controls`) or `qubits`",
                    r.name
                )))
            }
        };
        if let Some(k) = implied {
            if controls.len() != k {
                return Err(Error::InvalidGate(format!("`{}` expects {k} control(s), got {}", r.name, controls.len())));
            }
        }
        Gate::new(kind, controls, targets, r.angle)
    }
}

impl From<Gate> for GateRepr {
    fn from(g: Gate) -> Self {
        GateRepr {
            name: g.name(),
            controls: (!g.controls.is_empty()).then_some(g.controls),
            targets: Some(g.targets),
            qubits: None,
            angle: g.angle,
        }
    }
}

impl Gate {
    pub fn new(kind: GateKind, controls: Vec<usize>, targets: Vec<usize>, angle: Option<DyadicPhase>) -> Result<Gate> {
        if targets.len() != kind.num_targets() {
            return Err(Error::InvalidGate(format!(
                "{} takes {} target(s), got {}",
                kind.base_name(),
                kind.num_targets(),
                targets.len()
            )));
        }
        if kind.takes_angle() != angle.is_some() {
            return Err(Error::InvalidGate(match angle {
                Some(_) => format!("{} takes no angle", kind.base_name()),
                None => format!("{} requires an angle", kind.base_name()),
            }));
        }
        let mut wires: Vec<usize> = controls.iter().chain(&targets).copied().collect();
        wires.sort_unstable();
        if wires.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGate(format!(
                "{}: controls {controls:?} and targets {targets:?} must be distinct",
                kind.base_name()
            )));
        }
        Ok(Gate { kind, controls, targets, angle })
    }

    fn fixed(kind: GateKind, controls: &[usize], targets: &[usize]) -> Gate {
        Gate::new(kind, controls.to_vec(), targets.to_vec(), None).expect("well-formed gate")
    }

    pub fn h(q: usize) -> Gate {
        Self::fixed(GateKind::H, &[], &[q])
    }
    pub fn s(q: usize) -> Gate {
        Self::fixed(GateKind::S, &[], &[q])
    }
    pub fn sdg(q: usize) -> Gate {
        Self::fixed(GateKind::Sdg, &[], &[q])
    }
    pub fn t(q: usize) -> Gate {
        Self::fixed(GateKind::T, &[], &[q])
    }
    pub fn tdg(q: usize) -> Gate {
        Self::fixed(GateKind::Tdg, &[], &[q])
    }
    pub fn x(q: usize) -> Gate {
        Self::fixed(GateKind::X, &[], &[q])
    }
    pub fn y(q: usize) -> Gate {
        Self::fixed(GateKind::Y, &[], &[q])
    }
    pub fn z(q: usize) -> Gate {
        Self::fixed(GateKind::Z, &[], &[q])
    }
    pub fn cnot(c: usize, t: usize) -> Gate {
        Self::fixed(GateKind::X, &[c], &[t])
    }
    pub fn cz(a: usize, b: usize) -> Gate {
        Self::fixed(GateKind::Z, &[a], &[b])
    }
    pub fn ccx(c1: usize, c2: usize, t: usize) -> Gate {
        Self::fixed(GateKind::X, &[c1, c2], &[t])
    }
    pub fn ccz(a: usize, b: usize, c: usize) -> Gate {
        Self::fixed(GateKind::Z, &[a, b], &[c])
    }
    pub fn mcx(controls: &[usize], t: usize) -> Gate {
        Self::fixed(GateKind::X, controls, &[t])
    }
    pub fn swap(a: usize, b: usize) -> Gate {
        Self::fixed(GateKind::Swap, &[], &[a, b])
    }
    pub fn cswap(c: usize, a: usize, b: usize) -> Gate {
        Self::fixed(GateKind::Swap, &[c], &[a, b])
    }
    pub fn cs(c: usize, t: usize) -> Gate {
        Self::fixed(GateKind::S, &[c], &[t])
    }
    pub fn csdg(c: usize, t: usize) -> Gate {
        Self::fixed(GateKind::Sdg, &[c], &[t])
    }
    pub fn phase(q: usize, angle: DyadicPhase) -> Gate {
        Gate::new(GateKind::Phase, vec![], vec![q], Some(angle)).expect("well-formed gate")
    }
    pub fn rz(q: usize, angle: DyadicPhase) -> Gate {
        Gate::new(GateKind::Rz, vec![], vec![q], Some(angle)).expect("well-formed gate")
    }

    /// Adds controls to a gate.
    pub fn controlled(mut self, controls: &[usize]) -> Result<Gate> {
        self.controls.extend_from_slice(controls);
        Gate::new(self.kind, self.controls, self.targets, self.angle)
    }

    /// Canonical display name, for example `CNOT`, `CCX`, `CS` or `MCX`.
    pub fn name(&self) -> String {
        let base = self.kind.base_name();
        match (self.kind, self.controls.len()) {
            (_, 0) => base.to_string(),
            (GateKind::X, 1) => "CNOT".to_string(),
            (_, k) if k <= 2 => format!("{}{base}", "C".repeat(k)),
            _ => format!("MC{base}"),
        }
    }

    /// Every wire the gate touches.
    pub fn wires(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls.iter().chain(&self.targets).copied()
    }

    pub fn max_wire(&self) -> usize {
        self.wires().max().unwrap_or(0)
    }

    /// True for X gates with any number of controls.
    pub fn is_mcx(&self) -> bool {
        self.kind == GateKind::X
    }

    pub fn is_monomial(&self) -> bool {
        self.kind != GateKind::H
    }

    /// Rotation angle of the phase gate equivalent to the base operation, for
    /// diagonal kinds, as `diag(exp(i*a0), exp(i*a1))`.
    fn diagonal_phases(&self) -> Option<(DyadicPhase, DyadicPhase)> {
        let z = DyadicPhase::ZERO;
        Some(match self.kind {
            GateKind::I => (z, z),
            GateKind::Z => (z, DyadicPhase::PI),
            GateKind::S => (z, DyadicPhase::new(1, 1)),
            GateKind::Sdg => (z, DyadicPhase::new(-1, 1)),
            GateKind::T => (z, DyadicPhase::new(1, 2)),
            GateKind::Tdg => (z, DyadicPhase::new(-1, 2)),
            GateKind::Phase => (z, self.angle.expect("phase gate angle")),
            GateKind::Rz => {
                let a = self.angle.expect("rz angle");
                (a, -a)
            }
            _ => return None,
        })
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal_phases().is_some()
    }

    /// The 2x2 base matrix of single-target gates, row-major.
    fn base_matrix(&self) -> Option<[ExactScalar; 4]> {
        let zero = ExactScalar::zero;
        let one = ExactScalar::one;
        if let Some((a, b)) = self.diagonal_phases() {
            return Some([ExactScalar::from_phase(a), zero(), zero(), ExactScalar::from_phase(b)]);
        }
        Some(match self.kind {
            GateKind::X => [zero(), one(), one(), zero()],
            GateKind::Y => {
                let i = ExactScalar::imag_unit();
                [zero(), -&i, i, zero()]
            }
            GateKind::H => {
                let s = ExactScalar::inv_sqrt2();
                [s.clone(), s.clone(), s.clone(), -&s]
            }
            _ => return None,
        })
    }

    /// Bit mask of the controls in an `n`-qubit basis index.
    fn control_mask(&self, n: usize) -> u64 {
        self.controls.iter().fold(0, |m, &c| m | bit(n, c))
    }

    /// The gate as an `n`-qubit monomial; fails for Hadamard.
    pub fn to_monomial(&self, n: usize) -> Result<MonomialGate> {
        if !self.is_monomial() {
            return Err(Error::NonMonomial(self.name()));
        }
        let d = 1u64 << n;
        let cmask = self.control_mask(n);
        let mut perm = Vec::with_capacity(d as usize);
        let mut phases = Vec::with_capacity(d as usize);
        let diag = self.diagonal_phases();
        for x in 0..d {
            if x & cmask != cmask {
                perm.push(x as u32);
                phases.push(DyadicPhase::ZERO);
                continue;
            }
            let t0 = bit(n, self.targets[0]);
            let (img, ph) = match (self.kind, diag) {
                (_, Some((a, b))) => (x, if x & t0 == 0 { a } else { b }),
                (GateKind::X, _) => (x ^ t0, DyadicPhase::ZERO),
                // Y|0> = i|1>, Y|1> = -i|0>
                (GateKind::Y, _) => (x ^ t0, DyadicPhase::new(if x & t0 == 0 { 1 } else { -1 }, 1)),
                (GateKind::Swap, _) => {
                    let t1 = bit(n, self.targets[1]);
                    let differ = ((x & t0) != 0) != ((x & t1) != 0);
                    (if differ { x ^ t0 ^ t1 } else { x }, DyadicPhase::ZERO)
                }
                _ => unreachable!("non-monomial kinds rejected above"),
            };
            perm.push(img as u32);
            phases.push(ph);
        }
        MonomialGate::new(n, perm, phases)
    }

    /// Left-multiplies `m` by this gate acting on `n` qubits.
    pub fn apply_left(&self, n: usize, m: &mut ExactMatrix) {
        let d = 1u64 << n;
        let cmask = self.control_mask(n);
        let t0 = bit(n, self.targets[0]);
        if self.kind == GateKind::Swap {
            let t1 = bit(n, self.targets[1]);
            for r in 0..d {
                // visit each swapped pair once, from the member with t0 set
                if r & cmask == cmask && r & t0 != 0 && r & t1 == 0 {
                    let s = r ^ t0 ^ t1;
                    swap_rows(m, r as usize, s as usize);
                }
            }
            return;
        }
        let u = self.base_matrix().expect("single-target gate");
        for r0 in 0..d {
            if r0 & t0 != 0 || r0 & cmask != cmask {
                continue;
            }
            let r1 = r0 | t0;
            let (a, b): (Vec<ExactScalar>, Vec<ExactScalar>) = {
                let row0 = m.row(r0 as usize);
                let row1 = m.row(r1 as usize);
                row0.iter().zip(row1).map(|(x, y)| (combine(&u[0], x, &u[1], y), combine(&u[2], x, &u[3], y))).unzip()
            };
            m.row_mut(r0 as usize).clone_from_slice(&a);
            m.row_mut(r1 as usize).clone_from_slice(&b);
        }
    }

    /// The gate's exact matrix on `n` qubits.
    pub fn to_matrix(&self, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::identity(1 << n);
        self.apply_left(n, &mut m);
        m
    }
}

fn swap_rows(m: &mut ExactMatrix, a: usize, b: usize) {
    let ra = m.row(a).to_vec();
    let rb = m.row(b).to_vec();
    m.row_mut(a).clone_from_slice(&rb);
    m.row_mut(b).clone_from_slice(&ra);
}

/// `u * x + v * y`, skipping zero coefficients.
fn combine(u: &ExactScalar, x: &ExactScalar, v: &ExactScalar, y: &ExactScalar) -> ExactScalar {
    let left = if u.is_zero() || x.is_zero() { None } else { Some(u * x) };
    let right = if v.is_zero() || y.is_zero() { None } else { Some(v * y) };
    match (left, right) {
        (None, None) => ExactScalar::zero(),
        (Some(l), None) => l,
        (None, Some(r)) => r,
        (Some(l), Some(r)) => &l + &r,
    }
}

/// Basis-index bit of qubit `q`; qubit 0 is the most significant bit.
pub fn bit(n: usize, q: usize) -> u64 {
    1u64 << (n - 1 - q)
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        if let Some(a) = self.angle {
            write!(f, "({a})")?;
        }
        let wires: Vec<String> = self.wires().map(|w| w.to_string()).collect();
        write!(f, " {}", wires.join(","))
    }
}

/// An ordered gate list on `n` qubits. Gates are listed in time order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CircuitRepr", into = "CircuitRepr")]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

#[derive(Serialize, Deserialize)]
struct CircuitRepr {
    #[serde(alias = "n")]
    qubits: usize,
    #[serde(default)]
    gates: Vec<Gate>,
}

impl TryFrom<CircuitRepr> for Circuit {
    type Error = Error;

    fn try_from(r: CircuitRepr) -> Result<Self> {
        Circuit::new(r.qubits, r.gates)
    }
}

impl From<Circuit> for CircuitRepr {
    fn from(c: Circuit) -> Self {
        CircuitRepr { qubits: c.n, gates: c.gates }
    }
}

impl Circuit {
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Circuit> {
        if n == 0 {
            return Err(Error::InvalidGate("a circuit needs at least one qubit".into()));
        }
        for (i, g) in gates.iter().enumerate() {
            if g.max_wire() >= n {
                return Err(Error::InvalidGate(format!("gate {i} ({g}) uses a wire outside 0..{n}")));
            }
        }
        Ok(Circuit { n, gates })
    }

    pub fn empty(n: usize) -> Circuit {
        Circuit { n, gates: Vec::new() }
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("circuit serializes")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<()> {
        if g.max_wire() >= self.n {
            return Err(Error::InvalidGate(format!("{g} uses a wire outside 0..{}", self.n)));
        }
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, other: &Circuit) -> Result<()> {
        if other.n != self.n {
            return Err(Error::QubitMismatch { left: self.n, right: other.n });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// Fails unless every gate is an X with any number of controls.
    pub fn require_mcx(&self) -> Result<()> {
        match self.gates.iter().position(|g| !g.is_mcx()) {
            Some(index) => Err(Error::NotPermutationCircuit { index, name: self.gates[index].name() }),
            None => Ok(()),
        }
    }

    /// Exact unitary: the product of the gate matrices in circuit order.
    pub fn evaluate_exact(&self) -> Result<ExactMatrix> {
        evaluate_exact(self)
    }

    /// The circuit as a monomial gate; fails on any Hadamard.
    pub fn to_monomial(&self) -> Result<MonomialGate> {
        let mut acc = MonomialGate::identity(self.n);
        for g in &self.gates {
            acc = g.to_monomial(self.n)?.mul(&acc);
        }
        Ok(acc)
    }
}

/// Exact unitary of a circuit on at most six qubits.
pub fn evaluate_exact(c: &Circuit) -> Result<ExactMatrix> {
    if c.n > MAX_MATRIX_QUBITS {
        return Err(Error::TooManyQubits { qubits: c.n, limit: MAX_MATRIX_QUBITS });
    }
    let mut m = ExactMatrix::identity(1 << c.n);
    for g in &c.gates {
        g.apply_left(c.n, &mut m);
    }
    Ok(m)
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gates: Vec<String> = self.gates.iter().map(|g| g.to_string()).collect();
        write!(f, "[{}] on {} qubits", gates.join("; "), self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::equal_up_to_global_phase;

    #[test]
    fn parse_forms() {
        let c = Circuit::from_json(
            r#"{"qubits": 3, "gates": [
                {"name": "CNOT", "qubits": [0, 1]},
                {"name": "ccx", "controls": [0, 1], "targets": [2]},
                {"name": "P", "targets": [2], "angle": "pi/8"},
                {"name": "MCX", "qubits": [0, 1, 2]},
                {"name": "CSWAP", "qubits": [0, 1, 2]}
            ]}"#,
        )
        .unwrap();
        assert_eq!(c.gates()[0], Gate::cnot(0, 1));
        assert_eq!(c.gates()[1], Gate::ccx(0, 1, 2));
        assert_eq!(c.gates()[3], Gate::ccx(0, 1, 2));
        assert_eq!(c.gates()[4], Gate::cswap(0, 1, 2));
        let back = Circuit::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        let n_alias = Circuit::from_json(r#"{"n": 1, "gates": [{"name": "H", "targets": [0]}]}"#).unwrap();
        assert_eq!(n_alias.gates()[0], Gate::h(0));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Circuit::from_json(r#"{"qubits": 1, "gates": [{"name": "FOO", "targets": [0]}]}"#),
            Err(Error::Parse(_))
        ));
        assert!(Circuit::from_json(r#"{"qubits": 2, "gates": [{"name": "CNOT", "qubits": [0, 0]}]}"#).is_err());
        assert!(Circuit::from_json(r#"{"qubits": 2, "gates": [{"name": "X", "targets": [2]}]}"#).is_err());
        assert!(
            Circuit::from_json(r#"{"qubits": 1, "gates": [{"name": "P", "targets": [0], "angle": "pi/3"}]}"#).is_err()
        );
        assert!(Circuit::from_json(r#"{"qubits": 1, "gates": [{"name": "RZ", "targets": [0]}]}"#).is_err());
    }

    #[test]
    fn evaluation_examples() {
        let ccx2 = Circuit::new(3, vec![Gate::ccx(0, 1, 2), Gate::ccx(0, 1, 2)]).unwrap();
        assert_eq!(ccx2.evaluate_exact().unwrap(), ExactMatrix::identity(8));
        let a = Circuit::new(1, vec![Gate::h(0), Gate::t(0), Gate::t(0), Gate::h(0)]).unwrap();
        let b = Circuit::new(1, vec![Gate::h(0), Gate::s(0), Gate::h(0)]).unwrap();
        assert!(equal_up_to_global_phase(&a.evaluate_exact().unwrap(), &b.evaluate_exact().unwrap()));
        let h = Circuit::new(1, vec![Gate::h(0), Gate::h(0)]).unwrap();
        assert_eq!(h.evaluate_exact().unwrap(), ExactMatrix::identity(2));
    }

    #[test]
    fn gate_conventions() {
        // CNOT(0 -> 1) on |10> gives |11>: qubit 0 is the high bit
        let m = Gate::cnot(0, 1).to_monomial(2).unwrap();
        assert_eq!(m.perm(), &[0, 1, 3, 2]);
        let rz = Gate::rz(0, DyadicPhase::new(-1, 3)).to_matrix(1);
        assert!(equal_up_to_global_phase(&rz, &Gate::t(0).to_matrix(1)));
        let y = Gate::y(0).to_matrix(1);
        assert_eq!(y, "Y".parse::<crate::pauli::PauliString>().unwrap().to_matrix());
    }

    #[test]
    fn monomial_matches_matrix() {
        let gates = vec![
            Gate::ccx(2, 0, 1),
            Gate::cs(1, 2),
            Gate::y(0),
            Gate::cswap(2, 0, 1),
            Gate::rz(1, DyadicPhase::new(3, 4)),
            Gate::ccz(0, 1, 2),
            Gate::tdg(2),
        ];
        for g in &gates {
            let m = g.to_monomial(3).unwrap();
            assert!(equal_up_to_global_phase(&m.to_matrix(), &g.to_matrix(3)), "{g}");
        }
        let c = Circuit::new(3, gates).unwrap();
        let direct = c.evaluate_exact().unwrap();
        assert!(equal_up_to_global_phase(&c.to_monomial().unwrap().to_matrix(), &direct));
        assert!(Gate::h(0).to_monomial(1).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(Gate::cnot(0, 1).name(), "CNOT");
        assert_eq!(Gate::ccx(0, 1, 2).name(), "CCX");
        assert_eq!(Gate::mcx(&[0, 1, 2], 3).name(), "MCX");
        assert_eq!(Gate::cs(0, 1).name(), "CS");
        assert_eq!(Gate::cswap(0, 1, 2).name(), "CSWAP");
    }
}
