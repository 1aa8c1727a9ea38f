use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use chx_core::circuit::identities::verify_identities;
use chx_core::circuit::{
    ct_mismatch, ct_mismatch_pairwise, mm0_level_certificate, push_x_through, time_slices, zero_mismatch_slicing,
};
use chx_core::clifford::is_clifford_gate;
use chx_core::diagonal::{
    ch_level_diag, generators_dk, order_dk, phase_polynomial, wht_level_bound, z_rotation_coeffs,
};
use chx_core::groups::{
    check_gsc_group, check_semi_clifford_group, classify_double_cosets, closure, matrix_closure, validate_recipe,
    word_count_check, FormSummary, GroupFile, RecipeSpec, Verdict,
};
use chx_core::hierarchy::matrix_level;
use chx_core::matrix::MAX_MATRIX_QUBITS;
use chx_core::pauli::PauliString;
use chx_core::{Circuit, CliffordTableau, DiagonalGate, Engine, EngineConfig, Error, Gate, LevelVerdict, MonomialGate};
use serde::Serialize;
use serde_json::{json, Value};

use crate::inputs::{format_ratio, parse_circuit, parse_diagonal, parse_stabilizer, DiagonalInput};
use crate::report::{CommandResult, RunConfig};

/// Resource limits reported as an aborted run rather than an input error.
fn resource_abort(e: &Error) -> bool {
    matches!(e, Error::TooManyQubits { .. } | Error::CapExceeded { .. })
}

fn abort_result(e: Error) -> Result<CommandResult> {
    CommandResult::aborted(format!("aborted: {e}"), json!({ "status": "aborted", "reason": e.to_string() }))
}

pub fn engine(cfg: &RunConfig) -> Engine {
    Engine::new(EngineConfig { max_qubits: cfg.max_qubits, closure_cap: cfg.closure_cap })
}

fn check_qubits(n: usize, cfg: &RunConfig) -> std::result::Result<(), Error> {
    if n > cfg.max_qubits {
        return Err(Error::TooManyQubits { qubits: n, limit: cfg.max_qubits });
    }
    Ok(())
}

fn verdict_result(summary_prefix: &str, v: &LevelVerdict, extra: Vec<(&str, Value)>) -> Result<CommandResult> {
    let mut obj = serde_json::to_value(v)?;
    let map = obj.as_object_mut().expect("verdict is an object");
    for (k, x) in extra {
        map.insert(k.to_string(), x);
    }
    let summary = format!("{summary_prefix}{v}");
    if v.is_aborted() {
        CommandResult::aborted(summary, obj)
    } else {
        CommandResult::decided(summary, obj)
    }
}

/// `level`: monomial circuits go straight to the engine; otherwise the
/// circuit must be Clifford gates around a monomial core.
pub fn level(text: &str, cfg: &RunConfig) -> Result<CommandResult> {
    let c = parse_circuit(text)?;
    let n = c.num_qubits();
    if let Err(e) = check_qubits(n, cfg) {
        return abort_result(e);
    }
    let mut eng = engine(cfg);
    if let Ok(m) = c.to_monomial() {
        return match eng.level(&m) {
            Ok(v) => verdict_result("", &v, vec![("structure", json!("monomial"))]),
            Err(e) if resource_abort(&e) => abort_result(e),
            Err(e) => Err(e.into()),
        };
    }
    let gates = c.gates();
    let non_clifford: Vec<usize> = (0..gates.len()).filter(|&i| !is_clifford_gate(&gates[i])).collect();
    let Some((&first, &last)) = non_clifford.first().zip(non_clifford.last()) else {
        let t = CliffordTableau::from_circuit(&c)?;
        let level = if t.is_pauli() { 1 } else { 2 };
        let v =
            json!({ "status": "in_ch", "level": level, "closure_size": 1, "witness": null, "structure": "clifford" });
        return CommandResult::decided(format!("IN_CH({level}) from the Clifford tableau"), v);
    };
    let core = Circuit::new(n, gates[first..=last].to_vec())?;
    let core = core.to_monomial().map_err(|_| {
        anyhow::anyhow!("unsupported circuit: the gates between the first and last non-Clifford gate must be monomial")
    })?;
    let before = CliffordTableau::from_circuit(&Circuit::new(n, gates[..first].to_vec())?)?;
    let after = CliffordTableau::from_circuit(&Circuit::new(n, gates[last + 1..].to_vec())?)?;
    match eng.level_with_clifford_wrap(&after, &core, &before) {
        Ok(v) => verdict_result("", &v, vec![("structure", json!("clifford-wrapped monomial"))]),
        Err(e) if resource_abort(&e) => abort_result(e),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct DiagReport {
    qubits: usize,
    status: &'static str,
    level: u32,
    trivial: bool,
    witness: Option<String>,
    phases: Vec<String>,
    /// Non-zero `theta_S` with `phase(x) = sum_S theta_S (-1)^(x.S)`.
    rotation_angles: Vec<(String, String)>,
    /// Non-zero coefficients `c_S` of `phase(x) = sum_{S in x} c_S`.
    phase_polynomial: Vec<(String, String)>,
    rotation_angle_bound: u32,
    engine_level: Option<u32>,
}

pub fn diag(text: &str, cfg: &RunConfig) -> Result<CommandResult> {
    let d = match parse_diagonal(text)? {
        DiagonalInput::NonDyadic(raw) => {
            let phases: Vec<String> = raw.phases.iter().map(format_ratio).collect();
            return CommandResult::decided(
                "NOT_IN_CH: non-dyadic eigenphase",
                json!({ "qubits": raw.n, "status": "not_in_ch", "reason": "not in CH: non-dyadic eigenphase", "phases": phases }),
            );
        }
        DiagonalInput::Dyadic(d) => d,
    };
    let n = d.num_qubits();
    let v = ch_level_diag(&d);
    let level = v.level().expect("diagonal gates with dyadic phases are in the hierarchy");
    let engine_level = if n <= cfg.max_qubits {
        match engine(cfg).level(&d.to_monomial()) {
            Ok(ev) => ev.level(),
            Err(e) if resource_abort(&e) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    if let Some(el) = engine_level {
        if el != level {
            bail!("internal disagreement: diagonal level {level} but engine level {el}");
        }
    }
    let zs = |mask: usize| PauliString::z_string(n, mask as u64).to_string();
    let rotation_angles = z_rotation_coeffs(&d).rotations().map(|(a, t)| (a.to_string(), t.to_string())).collect();
    let phase_polynomial = phase_polynomial(&d)
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.is_zero())
        .map(|(s, c)| (zs(s), c.to_string()))
        .collect();
    let trivial = d.is_identity();
    let report = DiagReport {
        qubits: n,
        status: "in_ch",
        level,
        trivial,
        witness: v.witness.map(|w| w.to_string()),
        phases: d.phases().iter().map(|p| p.to_string()).collect(),
        rotation_angles,
        phase_polynomial,
        rotation_angle_bound: wht_level_bound(&d),
        engine_level,
    };
    let summary = if trivial { "trivial: identity up to global phase, IN_CH(1)".to_string() } else { format!("{v}") };
    CommandResult::decided(summary, report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum GroupCommand {
    Closure,
    CheckSc,
    CheckGsc,
    Cosets,
    Recipe,
}

pub struct GroupOptions {
    pub levels: bool,
    pub words: bool,
    pub perm_cap: usize,
}

pub fn group(cmd: GroupCommand, text: &str, cfg: &RunConfig, opts: &GroupOptions) -> Result<CommandResult> {
    if cmd == GroupCommand::Recipe {
        let spec = RecipeSpec::from_json(text)?;
        let r = validate_recipe(&spec)?;
        let summary = format!(
            "{}: {} errors, {} warnings",
            if r.ok { "PASS" } else { "FAIL" },
            r.errors().count(),
            r.warnings().count()
        );
        return CommandResult::decided(summary, r);
    }
    let file = GroupFile::from_json(text)?;
    let n = file.qubits;
    if let Err(e) = check_qubits(n, cfg) {
        return abort_result(e);
    }
    match cmd {
        GroupCommand::Closure => group_closure(&file, cfg, opts),
        GroupCommand::CheckSc => {
            let forms = file.forms()?;
            let r = check_semi_clifford_group(&forms);
            constraint_result(r, &forms)
        }
        GroupCommand::CheckGsc => {
            let forms = file.forms()?;
            let mut eng = engine(cfg);
            match check_gsc_group(&forms, opts.perm_cap, &mut eng) {
                Ok(r) => constraint_result(r, &forms),
                Err(e) if resource_abort(&e) => abort_result(e),
                Err(e) => Err(e.into()),
            }
        }
        GroupCommand::Cosets => group_cosets(&file, cfg),
        GroupCommand::Recipe => unreachable!("handled above"),
    }
}

fn constraint_result(
    r: chx_core::groups::ConstraintReport,
    forms: &[chx_core::GroupElementForm],
) -> Result<CommandResult> {
    let label = match r.verdict {
        Verdict::Pass => "PASS",
        Verdict::Fail => "FAIL",
        Verdict::Aborted => "ABORTED",
    };
    let summary = format!("{label}: {}", r.message);
    let forms: Vec<FormSummary> = forms.iter().map(FormSummary::from).collect();
    let body = json!({ "report": r, "elements": forms });
    if r.verdict == Verdict::Aborted {
        CommandResult::aborted(summary, body)
    } else {
        CommandResult::decided(summary, body)
    }
}

fn group_closure(file: &GroupFile, cfg: &RunConfig, opts: &GroupOptions) -> Result<CommandResult> {
    let n = file.qubits;
    let names = file.names();
    let mut levels: BTreeMap<String, usize> = BTreeMap::new();
    let mut bump = |key: String| *levels.entry(key).or_default() += 1;
    let (order, truncated, representation, words) = match file.monomials()? {
        Some(gens) => {
            let c = closure(n, &gens, cfg.closure_cap)?;
            if opts.levels && !c.truncated {
                let mut eng = engine(cfg);
                for e in &c.elements {
                    bump(level_key(&eng.level(e)?));
                }
            }
            let words: Vec<String> = (0..c.order()).map(|i| c.word_string(i, &names)).collect();
            (c.order(), c.truncated, "monomial", words)
        }
        None => {
            if n > MAX_MATRIX_QUBITS {
                return abort_result(Error::TooManyQubits { qubits: n, limit: MAX_MATRIX_QUBITS });
            }
            let c = matrix_closure(n, &file.matrices()?, cfg.closure_cap)?;
            if opts.levels && !c.truncated {
                for e in &c.elements {
                    bump(matrix_level(e, 4).map_or("above_4_or_outside".to_string(), |l| format!("in_ch_{l}")));
                }
            }
            let words: Vec<String> = (0..c.order()).map(|i| c.word_string(i, &names)).collect();
            (c.order(), c.truncated, "dense", words)
        }
    };
    let mut body = json!({
        "order": order,
        "truncated": truncated,
        "representation": representation,
        "generators": names,
    });
    if opts.levels {
        body["levels"] = serde_json::to_value(&levels)?;
    }
    if opts.words {
        body["words"] = serde_json::to_value(&words)?;
    }
    if truncated {
        CommandResult::aborted(format!("closure stopped at the cap after {order} elements"), body)
    } else {
        CommandResult::decided(format!("closure order {order}"), body)
    }
}

fn level_key(v: &LevelVerdict) -> String {
    match v.level() {
        Some(l) => format!("in_ch_{l}"),
        None if v.is_not_in_ch() => "not_in_ch".into(),
        None => "aborted".into(),
    }
}

fn group_cosets(file: &GroupFile, cfg: &RunConfig) -> Result<CommandResult> {
    let n = file.qubits;
    let gens = file.monomials()?.context("coset generators must be monomial permutations")?;
    let sub = file.subgroup_monomials()?;
    let mut eng = engine(cfg);
    let r = match classify_double_cosets(n, &gens, &file.names(), &sub, &file.labels, cfg.closure_cap, &mut eng) {
        Ok(r) => r,
        Err(e) if resource_abort(&e) => return abort_result(e),
        Err(e) => return Err(e.into()),
    };
    let check = file.claimed_word_count.map(|c| word_count_check(c, r.word_group_order));
    let table: Vec<Value> = r
        .classes
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let labels: Vec<&str> = r.labels.iter().filter(|l| l.class == i).map(|l| l.word.as_str()).collect();
            json!({ "class": i, "word": c.word, "verdict": c.verdict.to_string(), "size": c.size, "labels": labels })
        })
        .collect();
    let mut summary = format!(
        "{} double cosets in a group of order {}; word group order {}",
        r.classes.len(),
        r.ambient_order,
        r.word_group_order
    );
    if let Some(c) = &check {
        if !c.consistent {
            summary.push_str(&format!("; word count flag: {}", c.note));
        }
    }
    let body = json!({ "table": table, "word_count_check": check, "cosets": r });
    CommandResult::decided(summary, body)
}

pub fn encode(text: &str) -> Result<CommandResult> {
    let s = parse_stabilizer(text)?;
    let c = s.encode_to_z()?;
    let t = CliffordTableau::from_circuit(&c)?;
    let rank = s.rank();
    let mask_first = (0..rank).fold(0u64, |m, q| m | chx_core::circuit::bit(s.num_qubits(), q));
    let images: Vec<PauliString> = s.generators().iter().map(|g| t.apply(g)).collect();
    let verified = images.iter().all(|p| p.x_bits() == 0 && p.z_bits() & !mask_first == 0);
    let body = json!({
        "qubits": s.num_qubits(),
        "rank": rank,
        "generators": s.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "circuit": c,
        "images": images.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "verified": verified,
    });
    if !verified {
        bail!("internal error: synthesized circuit does not map the generators to Z strings");
    }
    CommandResult::decided(format!("{}-gate encoding circuit for rank {rank}", c.len()), body)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CtCommand {
    Slices,
    Mismatch,
    Certify,
    Push,
}

pub fn ct(cmd: CtCommand, text: &str, x_wires: &[usize], cfg: &RunConfig) -> Result<CommandResult> {
    let c = parse_circuit(text)?;
    match cmd {
        CtCommand::Slices => {
            let s = time_slices(&c)?;
            CommandResult::decided(format!("{} slices", s.len()), s)
        }
        CtCommand::Mismatch => {
            let m = ct_mismatch(&c)?;
            let body = json!({
                "mismatch": m,
                "pairwise_mismatch": ct_mismatch_pairwise(&c)?,
                "zero_mismatch_slicing": zero_mismatch_slicing(&c)?,
            });
            CommandResult::decided(format!("mismatch {m}"), body)
        }
        CtCommand::Certify => {
            let m = ct_mismatch(&c)?;
            let cert = mm0_level_certificate(&c)?;
            let engine_level = if c.num_qubits() <= cfg.max_qubits {
                match engine(cfg).perm_level(&c.to_monomial()?) {
                    Ok(v) => Some(level_key(&v)),
                    Err(e) if resource_abort(&e) => None,
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            let summary = match cert {
                Some(l) => format!("zero mismatch: certified IN_CH at level at most {l}"),
                None => format!("mismatch {m}: no certificate"),
            };
            CommandResult::decided(summary, json!({ "mismatch": m, "certificate": cert, "engine_level": engine_level }))
        }
        CtCommand::Push => {
            let out = push_x_through(&c, x_wires)?;
            let body = json!({
                "x_wires": x_wires,
                "circuit": out,
                "mismatch_before": ct_mismatch(&c)?,
                "mismatch_after": ct_mismatch(&out)?,
            });
            CommandResult::decided(format!("{} gates after moving the X string to the end", out.len()), body)
        }
    }
}

pub fn count_dk(n: u32, k: u32, verify: bool, cfg: &RunConfig) -> Result<CommandResult> {
    if n == 0 || k == 0 {
        bail!("n and k must be positive");
    }
    let order = order_dk(n, k);
    let gens = generators_dk(n as usize, k);
    let mut body = json!({
        "n": n,
        "k": k,
        "formula_order": order.to_string(),
        "generators": gens.len(),
    });
    if !verify {
        return CommandResult::decided(format!("|D_{k}^{n}| = {order}"), body);
    }
    if n as usize > cfg.max_qubits {
        return abort_result(Error::TooManyQubits { qubits: n as usize, limit: cfg.max_qubits });
    }
    // Both sides count diagonals gauge-fixed to phase 0 on |0...0>.
    let monos: Vec<MonomialGate> = gens.iter().map(DiagonalGate::to_monomial).collect();
    let c = closure(n as usize, &monos, cfg.closure_cap)?;
    if c.truncated {
        body["closure_truncated"] = json!(true);
        return CommandResult::aborted("closure stopped at the cap", body);
    }
    let bfs = c.order().to_string();
    let agrees = bfs == order.to_string();
    body["closure_order"] = json!(c.order());
    body["agrees"] = json!(agrees);
    let summary = format!("|D_{k}^{n}| = {order}; closure {} ({})", bfs, if agrees { "agrees" } else { "DISAGREES" });
    CommandResult::decided(summary, body)
}

pub fn identities(cfg: &RunConfig) -> Result<CommandResult> {
    let checks = verify_identities()?;
    let all = checks.iter().all(|c| c.holds);
    let composite = Circuit::new(3, vec![Gate::ccx(0, 1, 2), Gate::t(2)])?.to_monomial()?;
    let composite_level = engine(cfg).level(&composite)?;
    let held = checks.iter().filter(|c| c.holds).count();
    let body = json!({
        "identities": checks,
        "all_hold": all,
        "toffoli_t_composite": composite_level,
    });
    CommandResult::decided(
        format!("{held}/{} identities hold; Toffoli-T composite {composite_level}", checks.len()),
        body,
    )
}
