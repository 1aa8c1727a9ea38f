//! Exact circuit identities among Toffoli words and the Toffoli-T composite.
//!
//! Each identity is a pair of circuits on the same wires that must agree as
//! unitaries up to a global phase. The three Toffolis are
//! `a = CCX(1,2 -> 0)`, `b = CCX(0,2 -> 1)` and `c = CCX(0,1 -> 2)`, and every
//! word is read in time order.

use serde::Serialize;

use super::{Circuit, Gate};
use crate::error::Result;
use crate::matrix::equal_up_to_global_phase;

#[derive(Debug, Clone)]
pub struct Identity {
    pub name: &'static str,
    pub left: Circuit,
    pub right: Circuit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub qubits: usize,
    pub left_gates: usize,
    pub right_gates: usize,
    pub holds: bool,
}

impl Identity {
    fn new(name: &'static str, n: usize, left: Vec<Gate>, right: Vec<Gate>) -> Self {
        Identity {
            name,
            left: Circuit::new(n, left).expect("identity wires are in range"),
            right: Circuit::new(n, right).expect("identity wires are in range"),
        }
    }

    pub fn check(&self) -> Result<IdentityCheck> {
        let l = self.left.evaluate_exact()?;
        let r = self.right.evaluate_exact()?;
        Ok(IdentityCheck {
            name: self.name.to_string(),
            qubits: self.left.num_qubits(),
            left_gates: self.left.len(),
            right_gates: self.right.len(),
            holds: equal_up_to_global_phase(&l, &r),
        })
    }
}

fn a() -> Gate {
    Gate::ccx(1, 2, 0)
}

fn b() -> Gate {
    Gate::ccx(0, 2, 1)
}

fn c() -> Gate {
    Gate::ccx(0, 1, 2)
}

/// Toffoli words that reduce to shorter forms modulo Clifford gates.
pub fn toffoli_word_identities() -> Vec<Identity> {
    let x0 = Gate::x(0);
    let x2 = Gate::x(2);
    let cx = Gate::cnot;
    vec![
        Identity::new("aba", 3, vec![cx(1, 2), b(), cx(1, 2)], vec![Gate::cswap(0, 1, 2)]),
        Identity::new("ab", 3, vec![b(), c(), x0.clone(), c(), b()], vec![x0.clone(), cx(2, 1), cx(1, 2), b(), c()]),
        Identity::new(
            "abc",
            3,
            vec![a(), b(), c(), x0.clone(), c(), b(), a()],
            vec![cx(2, 1), cx(2, 0), cx(1, 2), cx(2, 0), b(), c(), cx(2, 0), cx(1, 0), x0.clone()],
        ),
        Identity::new(
            "abca",
            3,
            vec![a(), b(), c(), a(), x0.clone(), a(), c(), b(), a()],
            vec![a(), b(), c(), x0.clone(), c(), b(), a()],
        ),
        Identity::new(
            "abac",
            3,
            vec![b(), a(), b(), c(), x0.clone(), c(), b(), a(), b()],
            vec![x0.clone(), cx(1, 2), cx(2, 1), Gate::swap(0, 2), a(), b(), c(), a(), Gate::swap(0, 2), cx(2, 0)],
        ),
        Identity::new(
            "abcab",
            3,
            vec![a(), b(), c(), a(), b(), x2.clone(), b(), a(), c(), b(), a()],
            vec![
                cx(0, 1),
                x2.clone(),
                cx(1, 0),
                cx(1, 2),
                Gate::swap(1, 2),
                b(),
                a(),
                b(),
                c(),
                Gate::swap(1, 2),
                cx(1, 2),
                cx(1, 0),
            ],
        ),
        Identity::new(
            "abcabc",
            3,
            vec![a(), b(), c(), a(), b(), c(), x2.clone(), c(), b(), a(), c(), b(), a()],
            vec![a(), b(), c(), a(), b(), x2.clone(), b(), a(), c(), b(), a()],
        ),
    ]
}

/// The Toffoli-T composite and its two rewritings.
pub fn toffoli_t_identities() -> Vec<Identity> {
    let composite = vec![c(), Gate::t(2), Gate::x(2), Gate::tdg(2), c()];
    vec![
        Identity::new("toffoli-t composite, S form", 3, composite.clone(), vec![c(), Gate::s(2), c(), Gate::x(2)]),
        Identity::new(
            "toffoli-t composite, controlled-phase form",
            3,
            composite,
            vec![Gate::cs(0, 1), Gate::s(2), Gate::ccz(0, 1, 2), Gate::x(2)],
        ),
    ]
}

/// Smaller identities used by the splitting and pass-through arguments.
pub fn auxiliary_identities() -> Vec<Identity> {
    vec![
        Identity::new(
            "T propagation through CNOT",
            2,
            vec![Gate::cnot(1, 0), Gate::t(0), Gate::cnot(1, 0)],
            vec![Gate::t(0), Gate::t(1), Gate::csdg(0, 1)],
        ),
        Identity::new(
            "Hadamard-conjugated Toffoli",
            3,
            vec![c(), Gate::h(1), Gate::h(2), c(), Gate::h(1), Gate::h(2)],
            vec![c(), b()],
        ),
        Identity::new("X through a Toffoli control", 3, vec![Gate::x(0), c()], vec![c(), Gate::cnot(1, 2), Gate::x(0)]),
    ]
}

/// The whole identity suite.
pub fn all_identities() -> Vec<Identity> {
    let mut v = toffoli_word_identities();
    v.extend(toffoli_t_identities());
    v.extend(auxiliary_identities());
    v
}

/// Checks every identity in the suite.
pub fn verify_identities() -> Result<Vec<IdentityCheck>> {
    all_identities().iter().map(Identity::check).collect()
}
