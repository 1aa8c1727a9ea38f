//! Canonical form `U = C * P~ * Sigma` of Clifford-permutation-diagonal-Clifford products.

use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Gate};
use crate::clifford::{is_clifford_gate, CliffordTableau};
use crate::diagonal::{z_rotation_coeffs, DiagonalGate};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::monomial::MonomialGate;
use crate::pauli::PauliString;
use crate::phase::DyadicPhase;

/// A gate `U = c1 * P * D * c2` rewritten as `C * P~ * Sigma`, where
/// `Sigma = prod_j exp(i a_j S_j)` is a product of commuting non-Clifford Pauli
/// rotations and `P~ = frame^dagger * P * frame`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElementForm {
    pub name: String,
    /// `C = c1 * frame`.
    pub clifford: CliffordTableau,
    /// The left Clifford factor `c1` as given.
    pub left: CliffordTableau,
    /// The permutation factor `P` as given.
    pub perm: MonomialGate,
    /// `(S_j, a_j)` with Hermitian unsigned axes and angles in `(-pi, pi]`.
    pub rotations: Vec<(PauliString, DyadicPhase)>,
    /// `c2` with the Clifford-angle part of `D` folded in.
    pub frame: CliffordTableau,
}

impl GroupElementForm {
    pub fn num_qubits(&self) -> usize {
        self.clifford.num_qubits()
    }

    pub fn axes(&self) -> impl Iterator<Item = &PauliString> {
        self.rotations.iter().map(|(a, _)| a)
    }

    /// `U p U^dagger` up to sign when the permutation factor is Clifford.
    /// The rotations commute with every axis, so they drop out for members of
    /// a common stabilizer.
    pub fn act_unsigned(&self, p: &PauliString) -> Option<PauliString> {
        let q = self.frame.apply(p);
        let q = if self.perm.is_identity() { q } else { self.perm.conjugate_pauli(&q).as_pauli()? };
        Some(self.left.apply(&q).unsigned())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormSummary {
    pub name: String,
    pub clifford: Vec<String>,
    pub permutation: Vec<u32>,
    pub rotations: Vec<(String, String)>,
}

impl From<&GroupElementForm> for FormSummary {
    fn from(f: &GroupElementForm) -> Self {
        let n = f.num_qubits();
        let clifford = (0..n)
            .flat_map(|q| [format!("X{q} -> {}", f.clifford.x_image(q)), format!("Z{q} -> {}", f.clifford.z_image(q))])
            .collect();
        FormSummary {
            name: f.name.clone(),
            clifford,
            permutation: f.perm.perm().to_vec(),
            rotations: f.rotations.iter().map(|(a, t)| (a.unsigned().to_string(), t.to_string())).collect(),
        }
    }
}

/// Rewrites `c1 * p * d * c2` into canonical form.
///
/// Rotation terms of `d` at Clifford angles (multiples of `pi/4`) are folded
/// into the Clifford part, and each remaining axis `Z_S` is carried through
/// the frame; a negative image sign is moved into the angle.
pub fn canonicalize(
    c1: &CliffordTableau,
    p: &MonomialGate,
    d: &DiagonalGate,
    c2: &CliffordTableau,
) -> Result<GroupElementForm> {
    let n = c1.num_qubits();
    for m in [p.num_qubits(), d.num_qubits(), c2.num_qubits()] {
        if m != n {
            return Err(Error::QubitMismatch { left: n, right: m });
        }
    }
    if !p.is_permutation() {
        return Err(Error::InvalidPermutation("the permutation factor carries phases".into()));
    }
    let mut folded = CliffordTableau::identity(n);
    let mut kept = Vec::new();
    for (axis, theta) in z_rotation_coeffs(d).rotations() {
        if theta.log2_den() <= 2 {
            folded = folded.then(&CliffordTableau::pauli_rotation(&axis, theta)?);
        } else {
            kept.push((axis, theta));
        }
    }
    let frame = c2.then(&folded);
    let back = frame.inverse();
    let rotations = kept
        .into_iter()
        .map(|(axis, theta)| {
            let img = back.apply(&axis);
            let angle = if img.phase_exp() == 2 { -theta } else { theta };
            (img.unsigned(), angle)
        })
        .collect();
    Ok(GroupElementForm {
        name: String::new(),
        clifford: frame.then(c1),
        left: c1.clone(),
        perm: p.clone(),
        rotations,
        frame,
    })
}

/// A group element in a JSON generator file: either one gate, a gate list, or
/// explicit factors `clifford_left * permutation * diagonal * clifford_right`
/// (each a gate list in time order).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Factored(FactoredSpec),
    Single(Gate),
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactoredSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gates: Option<Vec<Gate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford_left: Option<Vec<Gate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<Vec<Gate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagonal: Option<Vec<Gate>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clifford_right: Option<Vec<Gate>>,
}

fn circuit_of(n: usize, gates: &Option<Vec<Gate>>) -> Result<Circuit> {
    Circuit::new(n, gates.clone().unwrap_or_default())
}

fn clifford_of(n: usize, gates: &Option<Vec<Gate>>, what: &str) -> Result<CliffordTableau> {
    let c = circuit_of(n, gates)?;
    if let Some(g) = c.gates().iter().find(|g| !is_clifford_gate(g)) {
        return Err(Error::NonClifford(format!("{g} in {what}")));
    }
    CliffordTableau::from_circuit(&c)
}

impl ElementSpec {
    pub fn name(&self) -> Option<&str> {
        match self {
            ElementSpec::Factored(f) => f.name.as_deref(),
            ElementSpec::Single(_) => None,
        }
    }

    /// The whole element as one circuit in time order.
    pub fn circuit(&self, n: usize) -> Result<Circuit> {
        match self {
            ElementSpec::Single(g) => Circuit::new(n, vec![g.clone()]),
            ElementSpec::Factored(f) => {
                if let Some(gates) = &f.gates {
                    if f.clifford_left.is_some()
                        || f.permutation.is_some()
                        || f.diagonal.is_some()
                        || f.clifford_right.is_some()
                    {
                        return Err(Error::Parse("give either `gates` or explicit factors, not both".into()));
                    }
                    return Circuit::new(n, gates.clone());
                }
                let mut c = circuit_of(n, &f.clifford_right)?;
                for part in [&f.diagonal, &f.permutation, &f.clifford_left] {
                    c.extend(&circuit_of(n, part)?)?;
                }
                Ok(c)
            }
        }
    }

    pub fn monomial(&self, n: usize) -> Result<MonomialGate> {
        self.circuit(n)?.to_monomial()
    }

    pub fn matrix(&self, n: usize) -> Result<ExactMatrix> {
        self.circuit(n)?.evaluate_exact()
    }

    /// Canonical form. A plain gate list must be monomial, which splits into
    /// a permutation and a diagonal, or else consist of Clifford gates only.
    pub fn form(&self, n: usize, default_name: &str) -> Result<GroupElementForm> {
        let name = self.name().unwrap_or(default_name).to_string();
        let id = CliffordTableau::identity(n);
        let explicit = match self {
            ElementSpec::Factored(f) if f.gates.is_none() => Some(f),
            _ => None,
        };
        let mut form = match explicit {
            Some(f) => {
                let c1 = clifford_of(n, &f.clifford_left, "clifford_left")?;
                let c2 = clifford_of(n, &f.clifford_right, "clifford_right")?;
                let p = circuit_of(n, &f.permutation)?.to_monomial()?;
                if !p.is_permutation() {
                    return Err(Error::InvalidPermutation(format!("permutation factor of `{name}` carries phases")));
                }
                let d = DiagonalGate::from_monomial(&circuit_of(n, &f.diagonal)?.to_monomial()?)
                    .ok_or_else(|| Error::InvalidGate(format!("diagonal factor of `{name}` is not diagonal")))?;
                canonicalize(&c1, &p, &d, &c2)?
            }
            None => {
                let c = self.circuit(n)?;
                if let Ok(m) = c.to_monomial() {
                    let (p, d) = m.split();
                    let d = DiagonalGate::from_monomial(&d).expect("split gives a diagonal");
                    canonicalize(&id, &p, &d, &id)?
                } else if c.gates().iter().all(is_clifford_gate) {
                    let t = CliffordTableau::from_circuit(&c)?;
                    canonicalize(&t, &MonomialGate::identity(n), &DiagonalGate::identity(n), &id)?
                } else {
                    return Err(Error::InvalidGate(format!(
                        "element `{name}` mixes Hadamards with non-Clifford gates; give explicit factors"
                    )));
                }
            }
        };
        form.name = name;
        Ok(form)
    }
}

/// Default display names: `a`, `b`, ... for up to 26 elements, else `g0`, `g1`, ...
pub fn default_names(count: usize) -> Vec<String> {
    if count <= 26 {
        (0..count).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..count).map(|i| format!("g{i}")).collect()
    }
}

/// Names for a list of specs, falling back to [`default_names`].
pub fn element_names(specs: &[ElementSpec]) -> Vec<String> {
    let defaults = default_names(specs.len());
    specs.iter().zip(defaults).map(|(s, d)| s.name().map_or(d, str::to_string)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(gates: Vec<Gate>, n: usize) -> DiagonalGate {
        DiagonalGate::from_monomial(&Circuit::new(n, gates).unwrap().to_monomial().unwrap()).unwrap()
    }

    fn tab(gates: Vec<Gate>, n: usize) -> CliffordTableau {
        CliffordTableau::from_circuit(&Circuit::new(n, gates).unwrap()).unwrap()
    }

    #[test]
    fn t_gate_form() {
        let id = CliffordTableau::identity(1);
        let f = canonicalize(&id, &MonomialGate::identity(1), &diag(vec![Gate::t(0)], 1), &id).unwrap();
        assert_eq!(f.rotations, vec![("+Z".parse().unwrap(), DyadicPhase::new(-1, 3))]);
        assert!(f.clifford.is_identity());
    }

    #[test]
    fn clifford_angles_fold() {
        let id = CliffordTableau::identity(1);
        let f = canonicalize(&id, &MonomialGate::identity(1), &diag(vec![Gate::s(0)], 1), &id).unwrap();
        assert!(f.rotations.is_empty());
        let s = tab(vec![Gate::s(0)], 1);
        for q in ["X", "Z"] {
            let p: PauliString = q.parse().unwrap();
            assert_eq!(f.clifford.apply(&p), s.apply(&p));
        }
    }

    #[test]
    fn frame_moves_axes() {
        let id = CliffordTableau::identity(1);
        let h = tab(vec![Gate::h(0)], 1);
        let f = canonicalize(&id, &MonomialGate::identity(1), &diag(vec![Gate::t(0)], 1), &h).unwrap();
        assert_eq!(f.rotations, vec![("+X".parse().unwrap(), DyadicPhase::new(-1, 3))]);
        assert_eq!(f.clifford, h);
    }

    #[test]
    fn negative_images_flip_angles() {
        let id = CliffordTableau::identity(1);
        let x = tab(vec![Gate::x(0)], 1);
        let f = canonicalize(&id, &MonomialGate::identity(1), &diag(vec![Gate::t(0)], 1), &x).unwrap();
        assert_eq!(f.rotations, vec![("+Z".parse().unwrap(), DyadicPhase::new(1, 3))]);
    }

    /// `exp(i theta S) = (e^{i theta} (I + S) + e^{-i theta} (I - S)) / 2`.
    fn rotation_matrix(axis: &PauliString, theta: DyadicPhase) -> ExactMatrix {
        use crate::scalar::ExactScalar;
        let s = axis.to_matrix();
        let dim = s.dim();
        let half = &ExactScalar::inv_sqrt2() * &ExactScalar::inv_sqrt2();
        let (ep, em) = (ExactScalar::from_phase(theta), ExactScalar::from_phase(-theta));
        let mut out = ExactMatrix::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                let id = if i == j { ExactScalar::one() } else { ExactScalar::zero() };
                let plus = &id + s.get(i, j);
                let minus = &id - s.get(i, j);
                let v = &(&(&ep * &plus) + &(&em * &minus)) * &half;
                out.set(i, j, v);
            }
        }
        out
    }

    #[test]
    fn form_reproduces_the_gate() {
        let n = 2;
        let spec: ElementSpec = serde_json::from_str(
            r#"{"clifford_left": [{"name": "H", "qubits": [1]}],
                "permutation": [{"name": "CNOT", "qubits": [0, 1]}],
                "diagonal": [{"name": "T", "qubits": [0]}, {"name": "CS", "qubits": [0, 1]}],
                "clifford_right": [{"name": "S", "qubits": [1]}, {"name": "H", "qubits": [0]}]}"#,
        )
        .unwrap();
        let f = spec.form(n, "u").unwrap();
        let ElementSpec::Factored(parts) = &spec else { unreachable!() };
        let mat = |gates: &Option<Vec<Gate>>| circuit_of(n, gates).unwrap().evaluate_exact().unwrap();
        let d = DiagonalGate::from_monomial(&circuit_of(n, &parts.diagonal).unwrap().to_monomial().unwrap()).unwrap();
        // frame = D_c * c2, with D_c the Clifford-angle rotations of d
        let mut frame = mat(&parts.clifford_right);
        for (axis, theta) in z_rotation_coeffs(&d).rotations().filter(|(_, t)| t.log2_den() <= 2) {
            frame = rotation_matrix(&axis, theta).mul(&frame).unwrap();
        }
        let sigma =
            f.rotations.iter().fold(ExactMatrix::identity(4), |acc, (a, t)| rotation_matrix(a, *t).mul(&acc).unwrap());
        let p = mat(&parts.permutation);
        let p_tilde = frame.adjoint().mul(&p).unwrap().mul(&frame).unwrap();
        let rebuilt = mat(&parts.clifford_left).mul(&frame).unwrap().mul(&p_tilde).unwrap().mul(&sigma).unwrap();
        assert!(crate::matrix::equal_up_to_global_phase(&rebuilt, &spec.matrix(n).unwrap()));
        assert!(!f.rotations.is_empty());
    }

    #[test]
    fn element_json_forms() {
        let single: ElementSpec = serde_json::from_str(r#"{"name": "CCX", "qubits": [0, 1, 2]}"#).unwrap();
        assert!(matches!(single, ElementSpec::Single(_)));
        let listed: ElementSpec =
            serde_json::from_str(r#"{"name": "a", "gates": [{"name": "CCX", "qubits": [1, 2, 0]}]}"#).unwrap();
        assert_eq!(listed.name(), Some("a"));
        assert!(listed.form(3, "x").unwrap().rotations.is_empty());
        let mixed: ElementSpec =
            serde_json::from_str(r#"{"gates": [{"name": "H", "qubits": [0]}, {"name": "T", "qubits": [0]}]}"#).unwrap();
        assert!(mixed.form(1, "m").is_err());
    }
}
