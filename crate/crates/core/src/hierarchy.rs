//! Exact Clifford-hierarchy levels of monomial gates.
//!
//! A monomial `g` is at level 1 when it is a Pauli, at level 2 when every
//! generator conjugate `g P g^dagger` is a Pauli, and otherwise at level
//! `1 + max_P level(g P g^dagger)` over all Pauli strings `P`. Conjugates of
//! monomials are monomials with no finer phases, so the conjugation graph is
//! finite. [`Engine`] walks it depth first: reaching a node that is still on
//! the stack closes a cycle of non-Clifford nodes, which no finite level can
//! label, so every node on the stack is outside the hierarchy.
//!
//! The breadth-first closure plus fixpoint labeling is kept as an independent
//! cross-check for small inputs.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::BuildHasherDefault;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::clifford::CliffordTableau;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::monomial::MonomialGate;
use crate::pauli::{all_paulis, PauliString};
use crate::phase::DyadicPhase;

/// Deterministic hasher so memo tables behave identically run to run.
type FixedState = BuildHasherDefault<DefaultHasher>;

/// Finest phase `pi/2^K` the packed engine accepts.
pub const MAX_ENGINE_LOG2_DEN: u32 = 14;

/// Largest qubit count the packed engine can represent.
pub const MAX_ENGINE_QUBITS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    InCh { level: u32 },
    NotInCh,
    Aborted { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelVerdict {
    pub status: Status,
    /// Pauli whose conjugate decides the verdict.
    pub witness: Option<PauliString>,
    /// Number of distinct elements examined.
    pub closure_size: usize,
}

impl LevelVerdict {
    pub fn level(&self) -> Option<u32> {
        match self.status {
            Status::InCh { level } => Some(level),
            _ => None,
        }
    }

    pub fn is_in_ch(&self) -> bool {
        matches!(self.status, Status::InCh { .. })
    }

    pub fn is_not_in_ch(&self) -> bool {
        self.status == Status::NotInCh
    }

    pub fn is_aborted(&self) -> bool {
        matches!(self.status, Status::Aborted { .. })
    }

    fn aborted(reason: impl Into<String>, closure_size: usize) -> Self {
        LevelVerdict { status: Status::Aborted { reason: reason.into() }, witness: None, closure_size }
    }
}

impl Serialize for LevelVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match &self.status {
            Status::InCh { level } => {
                m.serialize_entry("status", "in_ch")?;
                m.serialize_entry("level", level)?;
            }
            Status::NotInCh => m.serialize_entry("status", "not_in_ch")?,
            Status::Aborted { reason } => {
                m.serialize_entry("status", "aborted")?;
                m.serialize_entry("reason", reason)?;
            }
        }
        m.serialize_entry("closure_size", &self.closure_size)?;
        m.serialize_entry("witness", &self.witness.map(|w| w.to_string()))?;
        m.end()
    }
}

impl fmt::Display for LevelVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::InCh { level } => write!(f, "IN_CH({level})")?,
            Status::NotInCh => write!(f, "NOT_IN_CH")?,
            Status::Aborted { reason } => write!(f, "ABORTED({reason})")?,
        }
        if let Some(w) = self.witness {
            write!(f, " witness {w}")?;
        }
        write!(f, " closure {}", self.closure_size)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    pub max_qubits: usize,
    /// Largest number of elements a single query may examine.
    pub closure_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { max_qubits: 5, closure_cap: 10_000_000 }
    }
}

/// A monomial packed with phases in units of `pi/2^K` modulo `2^(K+1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Packed {
    perm: Box<[u8]>,
    phase: Box<[u16]>,
}

/// Fixed arithmetic context of one query family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Ctx {
    n: usize,
    k: u32,
}

impl Ctx {
    fn dim(self) -> usize {
        1 << self.n
    }

    fn modulus(self) -> u32 {
        1 << (self.k + 1)
    }

    fn half(self) -> u32 {
        1 << self.k
    }

    fn pack(self, g: &MonomialGate) -> Packed {
        Packed {
            perm: g.perm().iter().map(|&p| p as u8).collect(),
            phase: g.phases().iter().map(|p| p.units(self.k) as u16).collect(),
        }
    }

    fn unpack(self, p: &Packed) -> MonomialGate {
        MonomialGate::new(
            self.n,
            p.perm.iter().map(|&x| x as u32).collect(),
            p.phase.iter().map(|&u| DyadicPhase::from_units(u as u64, self.k)).collect(),
        )
        .expect("packed element is a valid monomial")
    }

    /// `g (X^a Z^b) g^dagger`, gauge-fixed.
    fn conjugate(self, g: &Packed, inv: &[u8], a: u64, b: u64) -> Packed {
        let d = self.dim();
        let m = self.modulus();
        let half = self.half();
        let mut perm = vec![0u8; d];
        let mut phase = vec![0u16; d];
        let mut zero_src = 0usize;
        for y in 0..d {
            let x = inv[y] as usize;
            let xa = x ^ a as usize;
            let img = g.perm[xa];
            perm[y] = img;
            if img == 0 {
                zero_src = y;
            }
            let mut v = g.phase[xa] as u32 + m - g.phase[x] as u32;
            if (x as u64 & b).count_ones() % 2 == 1 {
                v += half;
            }
            phase[y] = (v % m) as u16;
        }
        let g0 = phase[zero_src] as u32;
        if g0 != 0 {
            for p in &mut phase {
                *p = ((*p as u32 + m - g0) % m) as u16;
            }
        }
        Packed { perm: perm.into(), phase: phase.into() }
    }

    fn inverse_perm(self, g: &Packed) -> Vec<u8> {
        let mut inv = vec![0u8; self.dim()];
        for (x, &y) in g.perm.iter().enumerate() {
            inv[y as usize] = x as u8;
        }
        inv
    }

    /// The masks `(a, b)` when `g` is `X^a Z^b` up to phase.
    fn pauli_masks(self, g: &Packed) -> Option<(u64, u64)> {
        let c = g.perm[0];
        if g.perm.iter().enumerate().any(|(y, &p)| p != y as u8 ^ c) {
            return None;
        }
        let m = self.modulus();
        let base = g.phase[0] as u32;
        let rel = |y: usize| (g.phase[y] as u32 + m - base) % m;
        let mut bmask = 0usize;
        for q in 0..self.n {
            match rel(1 << q) {
                0 => {}
                r if r == self.half() => bmask |= 1 << q,
                _ => return None,
            }
        }
        let linear = (0..self.dim()).all(|y| {
            let expect = if (y & bmask).count_ones() % 2 == 1 { self.half() } else { 0 };
            rel(y) == expect
        });
        linear.then_some((c as u64, bmask as u64))
    }

    fn is_pauli(self, g: &Packed) -> bool {
        self.pauli_masks(g).is_some()
    }

    fn generators(self) -> impl Iterator<Item = (u64, u64)> {
        (0..self.n).flat_map(move |q| {
            let bit = 1u64 << (self.n - 1 - q);
            [(bit, 0), (0, bit)]
        })
    }

    /// The first generator whose conjugate is not a Pauli.
    fn first_non_pauli_generator(self, g: &Packed) -> Option<(u64, u64)> {
        let inv = self.inverse_perm(g);
        self.generators().find(|&(a, b)| !self.is_pauli(&self.conjugate(g, &inv, a, b)))
    }

    /// The first generator not mapped to itself up to phase, which shows a
    /// Clifford is not a Pauli.
    fn first_moved_generator(self, g: &Packed) -> Option<(u64, u64)> {
        let inv = self.inverse_perm(g);
        self.generators().find(|&(a, b)| self.pauli_masks(&self.conjugate(g, &inv, a, b)) != Some((a, b)))
    }

    fn is_clifford(self, g: &Packed) -> bool {
        self.first_non_pauli_generator(g).is_none()
    }
}

/// Which conjugating Paulis the walk uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Mode {
    /// All `4^n - 1` non-identity Pauli strings.
    Full,
    /// Only the `2^n - 1` non-identity X-strings; valid for permutations.
    XOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mark {
    OnStack,
    Done(u32),
    Outside,
}

struct Memo {
    ctx: Ctx,
    conjugators: Vec<(u64, u64)>,
    marks: HashMap<Packed, Mark, FixedState>,
}

impl Memo {
    fn new(ctx: Ctx, mode: Mode) -> Self {
        let conjugators = all_paulis(ctx.n)
            .into_iter()
            .filter(|p| !p.is_identity_up_to_phase())
            .filter(|p| mode == Mode::Full || p.is_x_only())
            .map(|p| (p.x_bits(), p.z_bits()))
            .collect();
        Memo { ctx, conjugators, marks: HashMap::default() }
    }

    /// Level 1 or 2 when the element is Pauli or Clifford.
    fn base_level(&self, g: &Packed) -> Option<u32> {
        if self.ctx.is_pauli(g) {
            Some(1)
        } else if self.ctx.is_clifford(g) {
            Some(2)
        } else {
            None
        }
    }

    fn decide(&mut self, root: Packed, cap: usize) -> (Mark, usize) {
        let before = self.marks.len();
        if let Some(&m) = self.marks.get(&root) {
            return (m, 0);
        }
        if let Some(l) = self.base_level(&root) {
            self.marks.insert(root, Mark::Done(l));
            return (Mark::Done(l), 1);
        }
        struct Frame {
            elem: Packed,
            inv: Vec<u8>,
            next: usize,
            max_child: u32,
        }
        let ctx = self.ctx;
        let mut stack = vec![Frame { inv: ctx.inverse_perm(&root), elem: root.clone(), next: 0, max_child: 0 }];
        self.marks.insert(root.clone(), Mark::OnStack);
        loop {
            if self.marks.len() - before > cap {
                // drop the unfinished nodes so later queries start clean
                for f in &stack {
                    self.marks.remove(&f.elem);
                }
                return (Mark::OnStack, self.marks.len() - before);
            }
            let top = stack.last_mut().expect("stack holds the root until return");
            if top.next == self.conjugators.len() {
                let level = top.max_child + 1;
                let done = stack.pop().expect("non-empty");
                self.marks.insert(done.elem, Mark::Done(level));
                match stack.last_mut() {
                    Some(parent) => parent.max_child = parent.max_child.max(level),
                    None => return (Mark::Done(level), self.marks.len() - before),
                }
                continue;
            }
            let (a, b) = self.conjugators[top.next];
            top.next += 1;
            let child = ctx.conjugate(&top.elem, &top.inv, a, b);
            let mark = match self.marks.get(&child) {
                Some(&m) => m,
                None => match self.base_level(&child) {
                    Some(l) => {
                        self.marks.insert(child, Mark::Done(l));
                        Mark::Done(l)
                    }
                    None => {
                        self.marks.insert(child.clone(), Mark::OnStack);
                        stack.push(Frame { inv: ctx.inverse_perm(&child), elem: child, next: 0, max_child: 0 });
                        continue;
                    }
                },
            };
            match mark {
                Mark::Done(l) => {
                    let top = stack.last_mut().expect("non-empty");
                    top.max_child = top.max_child.max(l);
                }
                Mark::OnStack | Mark::Outside => {
                    for f in stack.drain(..) {
                        self.marks.insert(f.elem, Mark::Outside);
                    }
                    return (Mark::Outside, self.marks.len() - before);
                }
            }
        }
    }

    /// The first Pauli whose conjugate explains a settled verdict.
    fn witness(&self, g: &Packed, mark: Mark) -> Option<PauliString> {
        let ctx = self.ctx;
        let to_pauli = |(a, b): (u64, u64)| PauliString::from_masks(ctx.n, a, b, 0);
        match mark {
            Mark::Done(1) | Mark::OnStack => None,
            Mark::Done(2) => ctx.first_moved_generator(g).map(to_pauli),
            Mark::Done(k) => {
                let inv = ctx.inverse_perm(g);
                self.conjugators
                    .iter()
                    .copied()
                    .find(|&(a, b)| self.marks.get(&ctx.conjugate(g, &inv, a, b)) == Some(&Mark::Done(k - 1)))
                    .map(to_pauli)
            }
            Mark::Outside => {
                let inv = ctx.inverse_perm(g);
                self.conjugators
                    .iter()
                    .copied()
                    .find(|&(a, b)| self.marks.get(&ctx.conjugate(g, &inv, a, b)) == Some(&Mark::Outside))
                    .map(to_pauli)
            }
        }
    }
}

/// Memoizing level oracle. Verdicts for every element examined are kept and
/// reused by later queries with the same qubit count and phase precision.
pub struct Engine {
    cfg: EngineConfig,
    memos: HashMap<(Mode, Ctx), Memo, FixedState>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

impl Engine {
    pub fn new(cfg: EngineConfig) -> Self {
        Engine { cfg, memos: HashMap::default() }
    }

    pub fn config(&self) -> EngineConfig {
        self.cfg
    }

    fn check_qubits(&self, n: usize) -> Result<()> {
        let limit = self.cfg.max_qubits.min(MAX_ENGINE_QUBITS);
        if n > limit {
            return Err(Error::TooManyQubits { qubits: n, limit });
        }
        Ok(())
    }

    fn run(&mut self, g: &MonomialGate, mode: Mode) -> Result<LevelVerdict> {
        self.check_qubits(g.num_qubits())?;
        let k = g.max_log2_den();
        if k > MAX_ENGINE_LOG2_DEN {
            return Ok(LevelVerdict::aborted(
                format!("phase precision pi/2^{k} exceeds the engine limit pi/2^{MAX_ENGINE_LOG2_DEN}"),
                0,
            ));
        }
        let ctx = Ctx { n: g.num_qubits(), k };
        let memo = self.memos.entry((mode, ctx)).or_insert_with(|| Memo::new(ctx, mode));
        let packed = ctx.pack(g);
        let (mark, size) = memo.decide(packed.clone(), self.cfg.closure_cap);
        let status = match mark {
            Mark::Done(level) => Status::InCh { level },
            Mark::Outside => Status::NotInCh,
            Mark::OnStack => {
                return Ok(LevelVerdict::aborted(
                    format!("closure cap of {} elements reached", self.cfg.closure_cap),
                    size,
                ))
            }
        };
        Ok(LevelVerdict { status, witness: memo.witness(&packed, mark), closure_size: size })
    }

    /// Exact level of a monomial gate, or `NotInCh`.
    pub fn level(&mut self, g: &MonomialGate) -> Result<LevelVerdict> {
        self.run(g, Mode::Full)
    }

    /// Level of a permutation using only X-string conjugators.
    pub fn perm_level(&mut self, p: &MonomialGate) -> Result<LevelVerdict> {
        if !p.is_permutation() {
            return Err(Error::InvalidPermutation("perm_level needs a gate with all phases zero".into()));
        }
        self.run(p, Mode::XOnly)
    }

    /// `level(c1 * g * c2)`, which equals `level(g)` for Clifford `c1`, `c2`.
    pub fn level_with_clifford_wrap(
        &mut self,
        c1: &CliffordTableau,
        g: &MonomialGate,
        c2: &CliffordTableau,
    ) -> Result<LevelVerdict> {
        for c in [c1, c2] {
            if c.num_qubits() != g.num_qubits() {
                return Err(Error::QubitMismatch { left: g.num_qubits(), right: c.num_qubits() });
            }
        }
        self.level(g)
    }

    /// Number of memoized elements across all query families.
    pub fn memo_size(&self) -> usize {
        self.memos.values().map(|m| m.marks.len()).sum()
    }
}

/// [`Engine::level`] on a fresh engine with default limits.
pub fn level(g: &MonomialGate) -> Result<LevelVerdict> {
    Engine::default().level(g)
}

/// [`Engine::perm_level`] on a fresh engine with default limits.
pub fn perm_level(p: &MonomialGate) -> Result<LevelVerdict> {
    Engine::default().perm_level(p)
}

pub fn level_with_clifford_wrap(c1: &CliffordTableau, g: &MonomialGate, c2: &CliffordTableau) -> Result<LevelVerdict> {
    Engine::default().level_with_clifford_wrap(c1, g, c2)
}

/// All conjugates of a monomial under all Pauli strings, closed transitively.
#[derive(Debug, Clone)]
pub struct ConjugationClosure {
    /// Conjugating Paulis, in the order used by `edges`.
    pub paulis: Vec<PauliString>,
    pub elements: Vec<MonomialGate>,
    /// `edges[i][j]` is the index of `elements[i]` conjugated by `paulis[j]`.
    pub edges: Vec<Vec<u32>>,
}

/// Breadth-first conjugation closure, aborting past `cfg.closure_cap` elements.
pub fn conjugation_closure(
    g: &MonomialGate,
    cfg: EngineConfig,
) -> Result<std::result::Result<ConjugationClosure, usize>> {
    let n = g.num_qubits();
    if n > cfg.max_qubits.min(MAX_ENGINE_QUBITS) {
        return Err(Error::TooManyQubits { qubits: n, limit: cfg.max_qubits.min(MAX_ENGINE_QUBITS) });
    }
    let k = g.max_log2_den();
    if k > MAX_ENGINE_LOG2_DEN {
        return Ok(Err(0));
    }
    let ctx = Ctx { n, k };
    let paulis = all_paulis(n);
    let masks: Vec<(u64, u64)> = paulis.iter().map(|p| (p.x_bits(), p.z_bits())).collect();
    let mut elems: Vec<Packed> = vec![ctx.pack(g)];
    let mut index: HashMap<Packed, u32, FixedState> = HashMap::default();
    index.insert(elems[0].clone(), 0);
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut start = 0;
    while start < elems.len() {
        let end = elems.len();
        let children: Vec<Vec<Packed>> = elems[start..end]
            .par_iter()
            .map(|e| {
                let inv = ctx.inverse_perm(e);
                masks.iter().map(|&(a, b)| ctx.conjugate(e, &inv, a, b)).collect()
            })
            .collect();
        for row in children {
            let mut out = Vec::with_capacity(row.len());
            for c in row {
                let next = elems.len() as u32;
                let id = *index.entry(c.clone()).or_insert_with(|| {
                    elems.push(c);
                    next
                });
                out.push(id);
            }
            edges.push(out);
            if elems.len() > cfg.closure_cap {
                return Ok(Err(elems.len()));
            }
        }
        start = end;
    }
    Ok(Ok(ConjugationClosure { paulis, elements: elems.iter().map(|e| ctx.unpack(e)).collect(), edges }))
}

/// Fixpoint labeling of a closure: Paulis get 1, Cliffords 2 (generator
/// check), and an element gets `k` once all its conjugates carry labels below
/// `k`. Unlabeled elements are outside the hierarchy.
pub fn fixpoint_levels(c: &ConjugationClosure) -> Vec<Option<u32>> {
    let mut labels: Vec<Option<u32>> = c
        .elements
        .par_iter()
        .map(|g| {
            if g.is_pauli() {
                Some(1)
            } else if g.is_clifford() {
                Some(2)
            } else {
                None
            }
        })
        .collect();
    let mut k = 3;
    loop {
        let fresh: Vec<usize> = (0..c.elements.len())
            .into_par_iter()
            .filter(|&i| labels[i].is_none() && c.edges[i].iter().all(|&j| labels[j as usize].is_some_and(|l| l < k)))
            .collect();
        if fresh.is_empty() {
            return labels;
        }
        for i in fresh {
            labels[i] = Some(k);
        }
        k += 1;
    }
}

/// Level from the closure and fixpoint route, for cross-checking the engine.
pub fn level_by_fixpoint(g: &MonomialGate, cfg: EngineConfig) -> Result<LevelVerdict> {
    match conjugation_closure(g, cfg)? {
        Err(size) => Ok(LevelVerdict::aborted("closure cap reached", size)),
        Ok(c) => {
            let labels = fixpoint_levels(&c);
            let status = match labels[0] {
                Some(level) => Status::InCh { level },
                None => Status::NotInCh,
            };
            Ok(LevelVerdict { status, witness: None, closure_size: c.elements.len() })
        }
    }
}

/// Level of a dense unitary, searched up to `max_level`.
///
/// Works for any gate with exact entries, monomial or not, at a cost of
/// `(4^n)^(max_level - 2)` conjugations; intended for one or two qubits.
/// Returns `None` when the gate is not in the hierarchy up to `max_level`.
pub fn matrix_level(u: &ExactMatrix, max_level: u32) -> Option<u32> {
    let n = u.num_qubits()?;
    let paulis: Vec<ExactMatrix> = all_paulis(n).iter().map(PauliString::to_matrix).collect();
    let mut cache: HashMap<(ExactMatrix, u32), bool, FixedState> = HashMap::default();
    (1..=max_level).find(|&k| in_level(u, k, n, &paulis, &mut cache))
}

fn is_pauli_matrix(u: &ExactMatrix, paulis: &[ExactMatrix]) -> bool {
    paulis.iter().any(|p| crate::matrix::equal_up_to_global_phase(u, p))
}

fn in_level(
    u: &ExactMatrix,
    k: u32,
    n: usize,
    paulis: &[ExactMatrix],
    cache: &mut HashMap<(ExactMatrix, u32), bool, FixedState>,
) -> bool {
    let key = (u.projective_key(), k);
    if let Some(&v) = cache.get(&key) {
        return v;
    }
    let ud = u.adjoint();
    let conj = |p: &ExactMatrix| u.mul(p).and_then(|m| m.mul(&ud)).expect("same dimension");
    let result = match k {
        0 => false,
        1 => is_pauli_matrix(u, paulis),
        2 => (0..n).all(|q| {
            ['X', 'Z'].iter().all(|&l| is_pauli_matrix(&conj(&PauliString::single(n, q, l).to_matrix()), paulis))
        }),
        _ => paulis.iter().all(|p| in_level(&conj(p), k - 1, n, paulis, cache)),
    };
    cache.insert(key, result);
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Gate};

    fn mono(n: usize, gates: Vec<Gate>) -> MonomialGate {
        Circuit::new(n, gates).unwrap().to_monomial().unwrap()
    }

    fn lvl(g: &MonomialGate) -> Option<u32> {
        level(g).unwrap().level()
    }

    #[test]
    fn basic_levels() {
        assert_eq!(lvl(&mono(1, vec![Gate::x(0)])), Some(1));
        assert_eq!(lvl(&mono(2, vec![Gate::cnot(0, 1)])), Some(2));
        assert_eq!(lvl(&mono(1, vec![Gate::t(0)])), Some(3));
        assert_eq!(lvl(&mono(3, vec![Gate::ccx(0, 1, 2)])), Some(3));
        assert_eq!(lvl(&mono(4, vec![Gate::mcx(&[0, 1, 2], 3)])), Some(4));
        assert_eq!(lvl(&mono(1, vec![Gate::phase(0, DyadicPhase::new(1, 3))])), Some(4));
    }

    #[test]
    fn toffoli_pair_is_outside() {
        // CCX(1,2 -> 0) then CCX(0,2 -> 1): the 3-cycle on basis states 3, 5, 7
        let ab = mono(3, vec![Gate::ccx(1, 2, 0), Gate::ccx(0, 2, 1)]);
        let v = level(&ab).unwrap();
        assert!(v.is_not_in_ch());
        assert!(v.witness.is_some());
        assert!(perm_level(&ab).unwrap().is_not_in_ch());
    }

    #[test]
    fn toffoli_times_t() {
        let g = mono(3, vec![Gate::ccx(0, 1, 2), Gate::t(2)]);
        assert_eq!(lvl(&g), Some(4));
    }

    #[test]
    fn perm_level_examples() {
        assert_eq!(perm_level(&mono(2, vec![Gate::swap(0, 1)])).unwrap().level(), Some(2));
        assert_eq!(perm_level(&mono(3, vec![Gate::ccx(0, 1, 2)])).unwrap().level(), Some(3));
        assert!(perm_level(&mono(1, vec![Gate::t(0)])).is_err());
    }

    #[test]
    fn clifford_wrap_is_neutral() {
        let h = CliffordTableau::from_circuit(&Circuit::new(1, vec![Gate::h(0)]).unwrap()).unwrap();
        let t = mono(1, vec![Gate::t(0)]);
        assert_eq!(level_with_clifford_wrap(&h, &t, &h).unwrap().level(), Some(3));
        let id = CliffordTableau::identity(2);
        let cnot = mono(2, vec![Gate::cnot(0, 1)]);
        assert_eq!(level_with_clifford_wrap(&id, &cnot, &id).unwrap().level(), Some(2));
    }

    #[test]
    fn witnesses_explain_levels() {
        let ccx = mono(3, vec![Gate::ccx(0, 1, 2)]);
        let v = level(&ccx).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(lvl(&ccx.conjugate_pauli(&w)), Some(2));
        let cnot = mono(2, vec![Gate::cnot(0, 1)]);
        let w = level(&cnot).unwrap().witness.unwrap();
        assert_ne!(cnot.conjugate_pauli(&w).as_pauli().map(|p| p.unsigned()), Some(w.unsigned()));
    }

    #[test]
    fn caps_and_limits() {
        let cfg = EngineConfig { max_qubits: 2, closure_cap: 10_000_000 };
        let ccx = mono(3, vec![Gate::ccx(0, 1, 2)]);
        assert!(matches!(Engine::new(cfg).level(&ccx), Err(Error::TooManyQubits { .. })));
        let tiny = EngineConfig { max_qubits: 5, closure_cap: 2 };
        let t3 = mono(3, vec![Gate::ccx(0, 1, 2), Gate::t(2)]);
        let mut e = Engine::new(tiny);
        assert!(e.level(&t3).unwrap().is_aborted());
        // aborted queries leave no stale marks behind
        let mut big = Engine::default();
        assert_eq!(big.level(&t3).unwrap().level(), Some(4));
    }

    #[test]
    fn memo_is_reused() {
        let mut e = Engine::default();
        let g = mono(3, vec![Gate::ccx(0, 1, 2), Gate::t(1)]);
        let first = e.level(&g).unwrap();
        let second = e.level(&g).unwrap();
        assert_eq!(first.status, second.status);
        assert_eq!(second.closure_size, 0);
        assert_eq!(first.witness, second.witness);
    }

    #[test]
    fn fixpoint_agrees_on_small_inputs() {
        let cfg = EngineConfig::default();
        let cases = vec![
            mono(1, vec![Gate::t(0)]),
            mono(2, vec![Gate::cnot(0, 1), Gate::t(1)]),
            mono(2, vec![Gate::cs(0, 1)]),
            mono(2, vec![Gate::swap(0, 1), Gate::phase(0, DyadicPhase::new(1, 3))]),
            mono(3, vec![Gate::ccx(0, 1, 2)]),
            mono(3, vec![Gate::ccx(1, 2, 0), Gate::ccx(0, 2, 1)]),
        ];
        for g in cases {
            let a = level(&g).unwrap();
            let b = level_by_fixpoint(&g, cfg).unwrap();
            assert_eq!(a.status, b.status, "{g:?}");
        }
    }

    #[test]
    fn closure_is_closed() {
        let t = mono(1, vec![Gate::t(0)]);
        let c = conjugation_closure(&t, EngineConfig::default()).unwrap().unwrap();
        for (i, e) in c.elements.iter().enumerate() {
            assert!(e.is_diagonal() || e.perm() == [1, 0]);
            for (j, p) in c.paulis.iter().enumerate() {
                assert_eq!(c.elements[c.edges[i][j] as usize], e.conjugate_pauli(p));
            }
        }
        let ccx = mono(3, vec![Gate::ccx(0, 1, 2)]);
        let c = conjugation_closure(&ccx, EngineConfig::default()).unwrap().unwrap();
        assert!(c.elements.iter().all(|e| e.max_log2_den() == 0));
    }

    #[test]
    fn dense_oracle_matches_engine() {
        let cases = vec![
            mono(1, vec![Gate::t(0)]),
            mono(1, vec![Gate::s(0)]),
            mono(2, vec![Gate::cs(0, 1)]),
            mono(2, vec![Gate::cnot(0, 1), Gate::t(0)]),
        ];
        for g in cases {
            assert_eq!(matrix_level(&g.to_matrix(), 4), lvl(&g));
        }
        let ht = Circuit::new(1, vec![Gate::t(0), Gate::h(0)]).unwrap().evaluate_exact().unwrap();
        assert_eq!(matrix_level(&ht, 4), Some(3));
    }

    #[test]
    fn verdict_json() {
        let v = level(&mono(3, vec![Gate::ccx(0, 1, 2)])).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["status"], "in_ch");
        assert_eq!(j["level"], 3);
        let v = level(&mono(3, vec![Gate::ccx(1, 2, 0), Gate::ccx(0, 2, 1)])).unwrap();
        assert_eq!(serde_json::to_value(&v).unwrap()["status"], "not_in_ch");
    }
}
