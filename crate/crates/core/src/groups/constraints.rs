//! Structure checks for groups of semi-Clifford and generalized semi-Clifford gates.
//!
//! A group of semi-Clifford elements `C_l * Sigma_l` is well formed when all
//! rotation axes sit in one stabilizer group `S` normalized by every `C_l`.
//! The smallest candidate is the group generated by the axes and closed under
//! the element actions, so the check builds exactly that group and fails as
//! soon as it stops being abelian.
//!
//! The generalized check also closes the permutation parts into a group and
//! requires every member of it to be in the hierarchy.

#![allow(clippy::result_large_err)] // the early-exit reports are built once per check

use std::collections::BTreeMap;

use serde::Serialize;

use super::canonical::GroupElementForm;
use super::closure::{closure, render_word};
use crate::clifford::CliffordTableau;
use crate::error::Result;
use crate::hierarchy::{Engine, Status};
use crate::monomial::MonomialGate;
use crate::pauli::PauliString;
use crate::stabilizer::{common_stabilizer_unsigned, StabilizerTableau};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Aborted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConstraintWitness {
    /// Two rotation axes anticommute, so no common stabilizer exists.
    AnticommutingAxes { first: String, second: String },
    /// An element maps a stabilizer element outside any abelian extension.
    NotNormalized { element: String, stabilizer: String, image: String, anticommutes_with: String },
    /// An element maps a stabilizer element to a non-Pauli operator.
    NonPauliImage { element: String, stabilizer: String },
    /// A semi-Clifford check met a non-Clifford permutation factor.
    NonCliffordPermutation { element: String },
    /// A product of permutation parts is outside the hierarchy.
    PermutationOutsideHierarchy { word: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub verdict: Verdict,
    pub message: String,
    /// Generators of the common stabilizer on success.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stabilizer: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ConstraintWitness>,
    /// Order of the group generated by the permutation parts.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutation_group_order: Option<usize>,
    /// Number of permutation-group members at each hierarchy level.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub permutation_levels: BTreeMap<u32, usize>,
}

impl ConstraintReport {
    fn pass(message: impl Into<String>, s: &StabilizerTableau) -> Self {
        ConstraintReport {
            verdict: Verdict::Pass,
            message: message.into(),
            stabilizer: Some(s.generators().iter().map(|g| g.to_string()).collect()),
            witness: None,
            permutation_group_order: None,
            permutation_levels: BTreeMap::new(),
        }
    }

    fn fail(message: impl Into<String>, witness: ConstraintWitness) -> Self {
        ConstraintReport {
            verdict: Verdict::Fail,
            message: message.into(),
            stabilizer: None,
            witness: Some(witness),
            permutation_group_order: None,
            permutation_levels: BTreeMap::new(),
        }
    }

    fn aborted(message: impl Into<String>) -> Self {
        ConstraintReport {
            verdict: Verdict::Aborted,
            message: message.into(),
            stabilizer: None,
            witness: None,
            permutation_group_order: None,
            permutation_levels: BTreeMap::new(),
        }
    }
}

fn num_qubits(elements: &[GroupElementForm]) -> usize {
    elements.first().map_or(1, GroupElementForm::num_qubits)
}

fn seed_stabilizer(n: usize, axes: &[PauliString]) -> std::result::Result<StabilizerTableau, ConstraintReport> {
    common_stabilizer_unsigned(n, axes).map_err(|(a, b)| {
        ConstraintReport::fail(
            format!("rotation axes {a} and {b} anticommute"),
            ConstraintWitness::AnticommutingAxes { first: a.to_string(), second: b.to_string() },
        )
    })
}

/// One way an element acts on Pauli strings by conjugation, up to sign.
enum Action<'a> {
    /// The full element, usable when its permutation factor is Clifford.
    Whole(&'a GroupElementForm),
    /// Only the Clifford part `C`; used when the permutation factor is
    /// non-Clifford and the stabilizer is diagonal in the element's frame.
    CliffordOnly(&'a GroupElementForm),
}

impl Action<'_> {
    fn element(&self) -> &GroupElementForm {
        match self {
            Action::Whole(e) | Action::CliffordOnly(e) => e,
        }
    }

    fn apply(&self, p: &PauliString) -> Option<PauliString> {
        match self {
            Action::Whole(e) => e.act_unsigned(p),
            Action::CliffordOnly(e) => Some(e.clifford.apply(p).unsigned()),
        }
    }
}

/// Extends `s` until every action maps it into itself up to sign.
fn invariant_closure(
    mut s: StabilizerTableau,
    actions: &[Action<'_>],
) -> std::result::Result<StabilizerTableau, ConstraintReport> {
    loop {
        let mut grew = false;
        for act in actions {
            let name = &act.element().name;
            for g in s.generators().to_vec() {
                let Some(img) = act.apply(&g) else {
                    return Err(ConstraintReport::fail(
                        format!("element {name} maps {g} outside the Pauli group"),
                        ConstraintWitness::NonPauliImage { element: name.clone(), stabilizer: g.to_string() },
                    ));
                };
                if s.contains_up_to_sign(&img) {
                    continue;
                }
                if let Some(h) = s.generators().iter().find(|h| !h.commutes(&img)) {
                    return Err(ConstraintReport::fail(
                        format!("element {name} maps {g} to {img}, which anticommutes with {h}"),
                        ConstraintWitness::NotNormalized {
                            element: name.clone(),
                            stabilizer: g.to_string(),
                            image: img.to_string(),
                            anticommutes_with: h.to_string(),
                        },
                    ));
                }
                s.try_extend(img).expect("commuting Hermitian extension");
                grew = true;
            }
        }
        if !grew {
            return Ok(s);
        }
    }
}

/// Checks that the elements share a stabilizer group containing every
/// rotation axis and normalized by every Clifford part.
pub fn check_semi_clifford_group(elements: &[GroupElementForm]) -> ConstraintReport {
    let n = num_qubits(elements);
    if let Some(e) = elements.iter().find(|e| !e.perm.is_clifford()) {
        return ConstraintReport::fail(
            format!("element {} has a non-Clifford permutation factor", e.name),
            ConstraintWitness::NonCliffordPermutation { element: e.name.clone() },
        );
    }
    let axes: Vec<PauliString> = elements.iter().flat_map(|e| e.axes().copied()).collect();
    let s = match seed_stabilizer(n, &axes) {
        Ok(s) => s,
        Err(r) => return r,
    };
    let actions: Vec<Action> = elements.iter().map(Action::Whole).collect();
    match invariant_closure(s, &actions) {
        Ok(s) => ConstraintReport::pass(format!("common stabilizer of rank {}", s.rank()), &s),
        Err(r) => r,
    }
}

/// Basis-state map `x -> m(x)` of a Clifford that sends every `Z_q` to a
/// signed Z-string, or `None` when some image has an X part.
fn basis_map(frame: &CliffordTableau) -> Option<Vec<u32>> {
    let n = frame.num_qubits();
    let images: Vec<&PauliString> = (0..n).map(|q| frame.z_image(q)).collect();
    if images.iter().any(|p| !p.is_z_only()) {
        return None;
    }
    let dim = 1u64 << n;
    let mut map = vec![0u32; dim as usize];
    for x in 0..dim {
        // |m(x)> is the common eigenvector with C Z_q C^dag = (-1)^{x_q}
        let y = (0..dim).find(|&y| {
            images.iter().enumerate().all(|(q, img)| {
                let xq = (x >> (n - 1 - q)) & 1;
                let sign = u64::from(img.phase_exp() == 2);
                let parity = u64::from((img.z_bits() & y).count_ones() % 2 == 1);
                parity ^ sign == xq
            })
        })?;
        map[x as usize] = y as u32;
    }
    Some(map)
}

/// `m^-1 * sigma * m` as a permutation gate.
fn framed_permutation(p: &MonomialGate, m: &[u32]) -> MonomialGate {
    let mut inv = vec![0u32; m.len()];
    for (x, &y) in m.iter().enumerate() {
        inv[y as usize] = x as u32;
    }
    let perm = (0..m.len()).map(|x| inv[p.perm()[m[x] as usize] as usize]).collect();
    MonomialGate::from_perm(p.num_qubits(), perm).expect("conjugate of a permutation")
}

/// Qubits a permutation reads or writes, as a basis-index mask.
fn permutation_support(p: &MonomialGate) -> u64 {
    let n = p.num_qubits();
    let sigma = p.perm();
    let mut mask = 0u64;
    for x in 0..sigma.len() {
        mask |= (sigma[x] as u64) ^ x as u64;
        for q in 0..n {
            let b = 1usize << q;
            if (sigma[x ^ b] as u64) != (sigma[x] as u64 ^ b as u64) {
                mask |= b as u64;
            }
        }
    }
    mask
}

/// Generalized semi-Clifford group check.
///
/// Runs the stabilizer conditions with each element's permutation in the
/// normalizer role. A non-Clifford permutation is handled in the
/// computational frame: every frame must fix the Z-strings up to sign, every
/// axis must be a Z-string, and the Z operators on the permutation support
/// join the stabilizer. The permutation parts are then closed into a group and
/// each member is checked with `perm_level`.
pub fn check_gsc_group(
    elements: &[GroupElementForm],
    perm_closure_cap: usize,
    engine: &mut Engine,
) -> Result<ConstraintReport> {
    let n = num_qubits(elements);
    let axes: Vec<PauliString> = elements.iter().flat_map(|e| e.axes().copied()).collect();
    let mut s = match seed_stabilizer(n, &axes) {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let non_clifford: Vec<&GroupElementForm> = elements.iter().filter(|e| !e.perm.is_clifford()).collect();
    if non_clifford.is_empty() {
        let mut r = check_semi_clifford_group(elements);
        if r.verdict == Verdict::Pass {
            r.message = format!("{}; every permutation factor is Clifford", r.message);
        }
        return Ok(r);
    }
    let mut maps = Vec::with_capacity(elements.len());
    for e in elements {
        match basis_map(&e.frame) {
            Some(m) => maps.push(m),
            None => {
                return Ok(ConstraintReport::aborted(format!(
                    "element {} has a frame that mixes the computational basis; non-Clifford permutations are \
                     checked only in computational frames",
                    e.name
                )))
            }
        }
    }
    if let Some(a) = axes.iter().find(|a| !a.is_z_only()) {
        return Ok(ConstraintReport::aborted(format!(
            "axis {a} is not a Z-string; non-Clifford permutations are checked only with diagonal axes"
        )));
    }
    let perms: Vec<MonomialGate> = elements.iter().zip(&maps).map(|(e, m)| framed_permutation(&e.perm, m)).collect();
    let support = elements
        .iter()
        .zip(&perms)
        .filter(|(e, _)| !e.perm.is_clifford())
        .fold(0u64, |acc, (_, p)| acc | permutation_support(p));
    for q in 0..n {
        let bit = 1u64 << (n - 1 - q);
        if support & bit != 0 {
            let z = PauliString::z_string(n, bit);
            if !s.contains_up_to_sign(&z) {
                s.try_extend(z).expect("Z-strings commute");
            }
        }
    }
    let actions: Vec<Action> = elements
        .iter()
        .map(|e| if e.perm.is_clifford() { Action::Whole(e) } else { Action::CliffordOnly(e) })
        .collect();
    let s = match invariant_closure(s, &actions) {
        Ok(s) => s,
        Err(r) => return Ok(r),
    };
    let group = closure(n, &perms, perm_closure_cap)?;
    if group.truncated {
        let mut r =
            ConstraintReport::aborted(format!("permutation closure reached the cap of {perm_closure_cap} elements"));
        r.permutation_group_order = Some(group.order());
        return Ok(r);
    }
    let names: Vec<String> = elements.iter().map(|e| e.name.clone()).collect();
    let mut levels = BTreeMap::new();
    for (i, p) in group.elements.iter().enumerate() {
        let v = engine.perm_level(p)?;
        match v.status {
            Status::InCh { level } => *levels.entry(level).or_insert(0) += 1,
            Status::NotInCh => {
                let word = render_word(&group.words[i], &names);
                let mut r = ConstraintReport::fail(
                    format!("permutation product {word} is outside the hierarchy"),
                    ConstraintWitness::PermutationOutsideHierarchy { word },
                );
                r.permutation_group_order = Some(group.order());
                return Ok(r);
            }
            Status::Aborted { reason } => {
                let mut r = ConstraintReport::aborted(format!(
                    "level of permutation {} undecided: {reason}",
                    render_word(&group.words[i], &names)
                ));
                r.permutation_group_order = Some(group.order());
                return Ok(r);
            }
        }
    }
    let mut r = ConstraintReport::pass(
        format!(
            "common stabilizer of rank {}; all {} permutations in the generated group are in the hierarchy",
            s.rank(),
            group.order()
        ),
        &s,
    );
    r.permutation_group_order = Some(group.order());
    r.permutation_levels = levels;
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};
    use crate::diagonal::DiagonalGate;
    use crate::groups::canonical::canonicalize;

    fn tab(n: usize, gates: Vec<Gate>) -> CliffordTableau {
        CliffordTableau::from_circuit(&Circuit::new(n, gates).unwrap()).unwrap()
    }

    fn diag(n: usize, gates: Vec<Gate>) -> DiagonalGate {
        DiagonalGate::from_monomial(&Circuit::new(n, gates).unwrap().to_monomial().unwrap()).unwrap()
    }

    fn form(name: &str, c: CliffordTableau, p: MonomialGate, d: DiagonalGate) -> GroupElementForm {
        let n = c.num_qubits();
        let mut f = canonicalize(&c, &p, &d, &CliffordTableau::identity(n)).unwrap();
        f.name = name.into();
        f
    }

    fn perm(n: usize, gates: Vec<Gate>) -> MonomialGate {
        Circuit::new(n, gates).unwrap().to_monomial().unwrap()
    }

    #[test]
    fn semi_clifford_examples() {
        let id2 = MonomialGate::identity(2);
        let pi8 = |gates| diag(2, gates);
        let a = form("a", CliffordTableau::identity(2), id2.clone(), pi8(vec![Gate::t(0)]));
        // a Z0 Z1 rotation by pi/8, with CNOT as the Clifford part
        let zz = DiagonalGate::z_rotation(2, 0b11, crate::phase::DyadicPhase::new(1, 3));
        let b = form("b", tab(2, vec![Gate::cnot(0, 1)]), id2, zz);
        let r = check_semi_clifford_group(&[a, b]);
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.message);
        assert_eq!(r.stabilizer.unwrap().len(), 2);

        let h = form("h", tab(1, vec![Gate::h(0)]), MonomialGate::identity(1), diag(1, vec![Gate::t(0)]));
        let r = check_semi_clifford_group(&[h]);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.witness, Some(ConstraintWitness::NotNormalized { .. })));
    }

    #[test]
    fn anticommuting_axes_fail() {
        let id = CliffordTableau::identity(1);
        let z = form("z", id.clone(), MonomialGate::identity(1), diag(1, vec![Gate::t(0)]));
        let mut x =
            canonicalize(&id, &MonomialGate::identity(1), &diag(1, vec![Gate::t(0)]), &tab(1, vec![Gate::h(0)]))
                .unwrap();
        x.name = "x".into();
        let r = check_semi_clifford_group(&[x, z]);
        assert_eq!(r.verdict, Verdict::Fail);
        assert!(matches!(r.witness, Some(ConstraintWitness::AnticommutingAxes { .. })));
    }

    #[test]
    fn toffoli_pair_fails_with_a_word() {
        let id = CliffordTableau::identity(3);
        let d = DiagonalGate::identity(3);
        let a = form("a", id.clone(), perm(3, vec![Gate::ccx(1, 2, 0)]), d.clone());
        let b = form("b", id, perm(3, vec![Gate::ccx(0, 2, 1)]), d);
        let r = check_gsc_group(&[a, b], 1000, &mut Engine::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        assert_eq!(r.witness, Some(ConstraintWitness::PermutationOutsideHierarchy { word: "ab".into() }));
        assert_eq!(r.permutation_group_order, Some(6));
    }

    #[test]
    fn toffoli_with_diagonals_passes() {
        let id = CliffordTableau::identity(3);
        let none = DiagonalGate::identity(3);
        let elems = vec![
            form("c", id.clone(), perm(3, vec![Gate::ccx(0, 1, 2)]), none.clone()),
            form("t", id.clone(), MonomialGate::identity(3), diag(3, vec![Gate::t(2)])),
            form("x", tab(3, vec![Gate::x(0)]), MonomialGate::identity(3), none),
        ];
        let r = check_gsc_group(&elems, 1000, &mut Engine::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{}", r.message);
        assert_eq!(r.stabilizer.unwrap().len(), 3);
    }

    #[test]
    fn basis_maps() {
        let cx = tab(2, vec![Gate::cnot(0, 1), Gate::x(1)]);
        assert_eq!(basis_map(&cx).unwrap(), vec![1, 0, 2, 3]);
        assert!(basis_map(&tab(1, vec![Gate::h(0)])).is_none());
        let s = tab(1, vec![Gate::s(0)]);
        assert_eq!(basis_map(&s).unwrap(), vec![0, 1]);
    }
}
