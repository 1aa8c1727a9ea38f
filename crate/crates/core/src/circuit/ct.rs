//! Time slicing and control/target mismatch of multi-controlled-X circuits.
//!
//! Only gates with at least one control take part in mismatch counting. A
//! bare X is a Pauli and can be moved to the end of any such circuit with
//! [`push_x_through`] without changing which wires carry controls or targets.
//!
//! Two gates in the same slice never share a wire, so every control/target
//! collision lies between two different slices whatever slicing is chosen.
//! Both mismatch counts below therefore depend only on the gate list, and the
//! greedy slicing is a zero-mismatch slicing exactly when one exists.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{bit, Circuit, Gate};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlicePartition {
    /// Gate indices of each slice, in circuit order.
    pub slices: Vec<Vec<usize>>,
}

impl SlicePartition {
    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }
}

/// Greedy left-to-right slicing: a gate joins the current slice unless it
/// shares a wire with a gate already there.
pub fn time_slices(c: &Circuit) -> Result<SlicePartition> {
    c.require_mcx()?;
    let mut slices: Vec<Vec<usize>> = Vec::new();
    let mut used = 0u64;
    for (i, g) in c.gates().iter().enumerate() {
        let wires = wire_mask(c.num_qubits(), g);
        match slices.last_mut() {
            Some(s) if used & wires == 0 => s.push(i),
            _ => {
                slices.push(vec![i]);
                used = 0;
            }
        }
        used |= wires;
    }
    Ok(SlicePartition { slices })
}

fn wire_mask(n: usize, g: &Gate) -> u64 {
    g.wires().fold(0, |m, w| m | bit(n, w))
}

/// Number of wires that carry a control of some controlled gate and the
/// target of another.
pub fn ct_mismatch(c: &Circuit) -> Result<usize> {
    c.require_mcx()?;
    let mut controls = BTreeSet::new();
    let mut targets = BTreeSet::new();
    for g in c.gates().iter().filter(|g| !g.controls.is_empty()) {
        controls.extend(g.controls.iter().copied());
        targets.extend(g.targets.iter().copied());
    }
    Ok(controls.intersection(&targets).count())
}

/// Collisions counted with multiplicity: for every pair of slices, the
/// controls of one landing on targets of the other, plus the reverse.
pub fn ct_mismatch_pairwise(c: &Circuit) -> Result<usize> {
    let slices = time_slices(c)?;
    let n = c.num_qubits();
    let masks: Vec<(u64, u64)> = slices
        .slices
        .iter()
        .map(|s| {
            s.iter().map(|&i| &c.gates()[i]).filter(|g| !g.controls.is_empty()).fold((0, 0), |(cm, tm), g| {
                (
                    cm | g.controls.iter().fold(0, |m, &w| m | bit(n, w)),
                    tm | g.targets.iter().fold(0, |m, &w| m | bit(n, w)),
                )
            })
        })
        .collect();
    let mut total = 0;
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            total += (masks[i].0 & masks[j].1).count_ones() as usize;
            total += (masks[i].1 & masks[j].0).count_ones() as usize;
        }
    }
    Ok(total)
}

/// The greedy slicing when it has zero mismatch, otherwise `None`.
pub fn zero_mismatch_slicing(c: &Circuit) -> Result<Option<SlicePartition>> {
    if ct_mismatch(c)? == 0 {
        time_slices(c).map(Some)
    } else {
        Ok(None)
    }
}

/// Level bound for zero-mismatch circuits: one more than the largest control
/// count. `None` when the mismatch is nonzero, where no claim is made.
pub fn mm0_level_certificate(c: &Circuit) -> Result<Option<u32>> {
    if ct_mismatch(c)? != 0 {
        return Ok(None);
    }
    Ok(Some(c.gates().iter().map(|g| g.controls.len() as u32 + 1).max().unwrap_or(1)))
}

/// Rewrites `X(x_wires) * c` as `c' * X(x_wires)`: the X string is moved from
/// the front of the circuit to the back.
///
/// An X on a control wire `w` of a gate `G` leaves `G` in place followed by a
/// copy of `G` without the control `w`. X on a target or an untouched wire
/// commutes with the gate.
pub fn push_x_through(c: &Circuit, x_wires: &[usize]) -> Result<Circuit> {
    c.require_mcx()?;
    let n = c.num_qubits();
    let mut gates: Vec<Gate> = c.gates().to_vec();
    let mut seen = BTreeSet::new();
    for &w in x_wires {
        if w >= n {
            return Err(crate::error::Error::InvalidGate(format!("X wire {w} outside 0..{n}")));
        }
        if !seen.insert(w) {
            // X twice on one wire cancels
            seen.remove(&w);
        }
    }
    for &w in &seen {
        let mut out = Vec::with_capacity(gates.len());
        for g in gates {
            let hit = g.controls.contains(&w);
            out.push(g.clone());
            if hit {
                let rest: Vec<usize> = g.controls.iter().copied().filter(|&q| q != w).collect();
                out.push(Gate::mcx(&rest, g.targets[0]));
            }
        }
        gates = out;
    }
    gates.extend(seen.iter().map(|&w| Gate::x(w)));
    Circuit::new(n, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::equal_up_to_global_phase;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::new(n, gates).unwrap()
    }

    #[test]
    fn slicing_examples() {
        let two = circ(3, vec![Gate::ccx(0, 1, 2), Gate::ccx(0, 1, 2)]);
        assert_eq!(time_slices(&two).unwrap().slices, vec![vec![0], vec![1]]);
        let xs = circ(2, vec![Gate::x(0), Gate::x(1)]);
        assert_eq!(time_slices(&xs).unwrap().slices, vec![vec![0, 1]]);
        let disjoint = circ(5, vec![Gate::ccx(0, 1, 2), Gate::cnot(3, 4)]);
        assert_eq!(time_slices(&disjoint).unwrap().len(), 1);
        assert!(time_slices(&circ(1, vec![Gate::h(0)])).is_err());
    }

    #[test]
    fn mismatch_examples() {
        let same = circ(3, vec![Gate::ccx(0, 1, 2), Gate::ccx(0, 1, 2)]);
        assert_eq!(ct_mismatch(&same).unwrap(), 0);
        let crossed = circ(4, vec![Gate::ccx(1, 2, 3), Gate::ccx(1, 3, 2)]);
        assert_eq!(ct_mismatch(&crossed).unwrap(), 2);
        assert_eq!(ct_mismatch_pairwise(&crossed).unwrap(), 2);
        let single = circ(5, vec![Gate::ccx(0, 1, 2), Gate::cnot(3, 4)]);
        assert_eq!(ct_mismatch(&single).unwrap(), 0);
        assert_eq!(ct_mismatch_pairwise(&single).unwrap(), 0);
    }

    #[test]
    fn pairwise_counts_multiplicity() {
        // wire 2 is a control once and a target twice
        let c = circ(4, vec![Gate::cnot(2, 3), Gate::ccx(0, 1, 2), Gate::cnot(0, 2)]);
        assert_eq!(ct_mismatch(&c).unwrap(), 1);
        assert_eq!(ct_mismatch_pairwise(&c).unwrap(), 2);
    }

    #[test]
    fn certificates() {
        let network = circ(4, vec![Gate::ccx(0, 1, 3), Gate::ccx(1, 2, 3), Gate::ccx(0, 2, 3)]);
        assert_eq!(mm0_level_certificate(&network).unwrap(), Some(3));
        let with_c3x = circ(5, vec![Gate::ccx(0, 1, 4), Gate::mcx(&[0, 1, 2], 4), Gate::cnot(3, 4)]);
        assert_eq!(mm0_level_certificate(&with_c3x).unwrap(), Some(4));
        let pair = circ(3, vec![Gate::ccx(1, 2, 0), Gate::ccx(0, 2, 1)]);
        assert_eq!(mm0_level_certificate(&pair).unwrap(), None);
        assert_eq!(mm0_level_certificate(&Circuit::empty(2)).unwrap(), Some(1));
        assert!(zero_mismatch_slicing(&pair).unwrap().is_none());
        assert_eq!(zero_mismatch_slicing(&network).unwrap().unwrap().len(), 3);
    }

    #[test]
    fn pass_through_examples() {
        let c = circ(3, vec![Gate::ccx(0, 1, 2)]);
        let out = push_x_through(&c, &[0]).unwrap();
        assert_eq!(out.gates(), &[Gate::ccx(0, 1, 2), Gate::cnot(1, 2), Gate::x(0)]);
        let out = push_x_through(&c, &[2]).unwrap();
        assert_eq!(out.gates(), &[Gate::ccx(0, 1, 2), Gate::x(2)]);
        let wide = circ(4, vec![Gate::ccx(0, 1, 2)]);
        assert_eq!(push_x_through(&wide, &[3]).unwrap().gates(), &[Gate::ccx(0, 1, 2), Gate::x(3)]);
    }

    fn random_mcx(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Circuit {
        let gates = (0..len)
            .map(|_| {
                let t = rng.gen_range(0..n);
                let controls: Vec<usize> = (0..n).filter(|&q| q != t && rng.gen_bool(0.4)).collect();
                Gate::mcx(&controls, t)
            })
            .collect();
        circ(n, gates)
    }

    #[test]
    fn pass_through_preserves_unitary_and_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=4);
            let len = rng.gen_range(0..6);
            let c = random_mcx(&mut rng, n, len);
            let xs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let out = push_x_through(&c, &xs).unwrap();
            let mut before = circ(n, xs.iter().map(|&w| Gate::x(w)).collect());
            before.extend(&c).unwrap();
            assert!(equal_up_to_global_phase(&before.evaluate_exact().unwrap(), &out.evaluate_exact().unwrap()));
            assert!(ct_mismatch(&out).unwrap() <= ct_mismatch(&c).unwrap());
        }
    }

    #[test]
    fn slices_partition_gates() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let c = random_mcx(&mut rng, 5, 10);
            let s = time_slices(&c).unwrap();
            let flat: Vec<usize> = s.slices.concat();
            assert_eq!(flat, (0..c.len()).collect::<Vec<_>>());
            for slice in &s.slices {
                let mut used = 0u64;
                for &i in slice {
                    let m = wire_mask(5, &c.gates()[i]);
                    assert_eq!(used & m, 0);
                    used |= m;
                }
            }
        }
    }
}
