//! Structural lint for group constructions that split the qubits into a
//! Clifford block, carrying an unrestricted Clifford group, and a
//! non-Clifford block, carrying diagonal gates and permutations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateKind};
use crate::clifford::is_clifford_gate;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecipeSpec {
    pub qubits: usize,
    /// Qubits that carry the full Clifford group.
    pub clifford_qubits: Vec<usize>,
    /// When false the Clifford block is a proper subgroup of the Clifford
    /// group, and rules that rely on a full Clifford block only warn.
    #[serde(default = "default_true")]
    pub full_clifford: bool,
    /// Generators and factors of the construction, one gate each.
    pub gates: Vec<Gate>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub severity: Severity,
    pub rule: &'static str,
    pub gate: usize,
    pub message: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecipeReport {
    pub ok: bool,
    pub clifford_qubits: Vec<usize>,
    pub non_clifford_qubits: Vec<usize>,
    pub findings: Vec<Finding>,
}

impl RecipeReport {
    pub fn errors(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Error)
    }

    pub fn warnings(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.severity == Severity::Warning)
    }
}

impl RecipeSpec {
    pub fn from_json(text: &str) -> Result<RecipeSpec> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn is_permutation_gate(g: &Gate) -> bool {
    matches!(g.kind, GateKind::X | GateKind::Swap)
}

pub fn validate_recipe(spec: &RecipeSpec) -> Result<RecipeReport> {
    let n = spec.qubits;
    let cliff: BTreeSet<usize> = spec.clifford_qubits.iter().copied().collect();
    if let Some(&q) = cliff.iter().find(|&&q| q >= n) {
        return Err(Error::InvalidGate(format!("Clifford qubit {q} outside 0..{n}")));
    }
    for g in &spec.gates {
        if g.max_wire() >= n {
            return Err(Error::InvalidGate(format!("{g} uses a wire outside 0..{n}")));
        }
    }
    let on_cliff = |q: &usize| cliff.contains(q);
    let non_clifford_diagonals = spec.gates.iter().any(|g| g.is_diagonal() && !is_clifford_gate(g));
    let mut findings = Vec::new();
    let mut push = |severity, rule, gate, message: String| findings.push(Finding { severity, rule, gate, message });

    for (i, g) in spec.gates.iter().enumerate() {
        let wires: Vec<usize> = g.wires().collect();
        let clifford = is_clifford_gate(g);
        if g.is_diagonal() {
            if !clifford && wires.iter().any(on_cliff) {
                push(
                    Severity::Error,
                    "non-clifford-diagonal-on-clifford-qubit",
                    i,
                    format!("{g} is a non-Clifford diagonal touching a Clifford qubit"),
                );
            }
            continue;
        }
        if !is_permutation_gate(g) {
            if !clifford {
                push(
                    Severity::Error,
                    "unsupported-non-clifford-gate",
                    i,
                    format!("{g} is neither diagonal nor a permutation"),
                );
            } else if !wires.iter().all(on_cliff) {
                push(
                    Severity::Error,
                    "non-monomial-clifford-on-non-clifford-qubit",
                    i,
                    format!("{g} mixes the computational basis of a non-Clifford qubit"),
                );
            }
            continue;
        }
        let targets_non_cliff = g.targets.iter().any(|q| !on_cliff(q));
        let controls_on_cliff = g.controls.iter().any(on_cliff);
        if targets_non_cliff {
            if controls_on_cliff {
                let (severity, why) = if non_clifford_diagonals {
                    (Severity::Error, "spreads the non-Clifford diagonals onto the controlling Clifford qubit")
                } else {
                    (Severity::Warning, "would spread any non-Clifford diagonal onto the controlling Clifford qubit")
                };
                push(severity, "clifford-control-on-non-clifford-target", i, format!("{g} {why}"));
            }
            continue;
        }
        let support_on_cliff = wires.iter().filter(|q| on_cliff(q)).count();
        if clifford && wires.iter().all(on_cliff) {
            continue;
        }
        if support_on_cliff != 1 {
            let severity = if spec.full_clifford { Severity::Error } else { Severity::Warning };
            push(
                severity,
                "cross-block-permutation-with-wide-clifford-support",
                i,
                format!(
                    "{g} touches {support_on_cliff} Clifford qubits; together with Hadamards there it generates permutations outside the hierarchy"
                ),
            );
        }
    }

    let ok = !findings.iter().any(|f| f.severity == Severity::Error);
    Ok(RecipeReport {
        ok,
        clifford_qubits: cliff.iter().copied().collect(),
        non_clifford_qubits: (0..n).filter(|q| !cliff.contains(q)).collect(),
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, cliff: &[usize], gates: Vec<Gate>) -> RecipeSpec {
        RecipeSpec { qubits: n, clifford_qubits: cliff.to_vec(), full_clifford: true, gates }
    }

    fn rules(r: &RecipeReport) -> Vec<(Severity, &'static str)> {
        r.findings.iter().map(|f| (f.severity, f.rule)).collect()
    }

    #[test]
    fn cnot_from_non_clifford_control_passes() {
        let r = validate_recipe(&spec(2, &[1], vec![Gate::t(0), Gate::cnot(0, 1), Gate::h(1)])).unwrap();
        assert!(r.ok);
        assert!(r.findings.is_empty());
        assert_eq!(r.non_clifford_qubits, vec![0]);
    }

    #[test]
    fn cnot_into_non_clifford_target() {
        let r = validate_recipe(&spec(2, &[1], vec![Gate::t(0), Gate::cnot(1, 0)])).unwrap();
        assert!(!r.ok);
        assert_eq!(rules(&r), vec![(Severity::Error, "clifford-control-on-non-clifford-target")]);
        let r = validate_recipe(&spec(2, &[1], vec![Gate::cnot(1, 0)])).unwrap();
        assert!(r.ok);
        assert_eq!(r.warnings().count(), 1);
    }

    #[test]
    fn toffoli_with_two_clifford_wires() {
        let r = validate_recipe(&spec(3, &[1, 2], vec![Gate::ccx(0, 1, 2)])).unwrap();
        assert_eq!(rules(&r), vec![(Severity::Error, "cross-block-permutation-with-wide-clifford-support")]);
        let mut relaxed = spec(3, &[1, 2], vec![Gate::ccx(0, 1, 2)]);
        relaxed.full_clifford = false;
        let r = validate_recipe(&relaxed).unwrap();
        assert!(r.ok);
        assert_eq!(r.warnings().count(), 1);
        // a single Clifford wire as target is fine
        assert!(validate_recipe(&spec(3, &[2], vec![Gate::ccx(0, 1, 2), Gate::t(0)])).unwrap().ok);
    }

    #[test]
    fn gates_in_the_wrong_block() {
        let r = validate_recipe(&spec(2, &[1], vec![Gate::t(1), Gate::h(0), Gate::s(1)])).unwrap();
        assert_eq!(
            rules(&r),
            vec![
                (Severity::Error, "non-clifford-diagonal-on-clifford-qubit"),
                (Severity::Error, "non-monomial-clifford-on-non-clifford-qubit"),
            ]
        );
        assert!(validate_recipe(&spec(1, &[3], vec![])).is_err());
    }

    #[test]
    fn json_form() {
        let s = RecipeSpec::from_json(
            r#"{"qubits":2,"clifford_qubits":[1],"gates":[{"name":"CNOT","controls":[0],"targets":[1]}]}"#,
        )
        .unwrap();
        assert!(s.full_clifford);
        assert!(validate_recipe(&s).unwrap().ok);
    }
}
