//! File formats that need more than a plain serde parse.

use anyhow::{bail, Context, Result};
use chx_core::circuit::bit;
use chx_core::phase::parse_rational_pi;
use chx_core::{Circuit, DiagonalGate, DyadicPhase, Gate, GateKind, StabilizerTableau};
use num_rational::Ratio;
use serde::Deserialize;
use serde_json::Value;

/// Angles as rational multiples of pi, kept in `[0, 2)`.
type PiRatio = Ratio<i64>;

fn wrap(r: PiRatio) -> PiRatio {
    let two = PiRatio::from_integer(2);
    let q = (r / two).floor();
    r - q * two
}

fn parse_pi(v: &Value) -> Result<PiRatio> {
    match v {
        Value::String(s) => {
            let (num, den) = parse_rational_pi(s)?;
            Ok(PiRatio::new(num, den))
        }
        Value::Number(n) if n.as_i64() == Some(0) => Ok(PiRatio::from_integer(0)),
        Value::Object(m) => {
            let num = m.get("num").and_then(Value::as_i64).context("phase object needs `num`")?;
            let k = m.get("log2_den").and_then(Value::as_u64).context("phase object needs `log2_den`")?;
            if k > 62 {
                bail!("log2_den {k} too large");
            }
            Ok(PiRatio::new(num, 1i64 << k))
        }
        other => bail!("cannot read `{other}` as a multiple of pi"),
    }
}

/// A diagonal gate whose eigenphases may fail to be dyadic.
pub struct RationalDiagonal {
    pub n: usize,
    pub phases: Vec<PiRatio>,
}

pub enum DiagonalInput {
    Dyadic(DiagonalGate),
    /// Some eigenphase differs from the first by a non-dyadic multiple of pi.
    NonDyadic(RationalDiagonal),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGate {
    name: String,
    #[serde(default)]
    controls: Option<Vec<usize>>,
    #[serde(default)]
    targets: Option<Vec<usize>>,
    #[serde(default)]
    qubits: Option<Vec<usize>>,
    #[serde(default)]
    angle: Option<Value>,
}

fn diagonal_pair(kind: GateKind, angle: PiRatio) -> Option<(PiRatio, PiRatio)> {
    let r = |n: i64, d: i64| PiRatio::new(n, d);
    let z = r(0, 1);
    Some(match kind {
        GateKind::I => (z, z),
        GateKind::Z => (z, r(1, 1)),
        GateKind::S => (z, r(1, 2)),
        GateKind::Sdg => (z, r(-1, 2)),
        GateKind::T => (z, r(1, 4)),
        GateKind::Tdg => (z, r(-1, 4)),
        GateKind::Phase => (z, angle),
        GateKind::Rz => (angle, -angle),
        _ => return None,
    })
}

/// Evaluates a circuit of diagonal gates with rational angles.
fn rational_circuit(v: &Value) -> Result<RationalDiagonal> {
    let n = v.get("qubits").or_else(|| v.get("n")).and_then(Value::as_u64).context("circuit needs a `qubits` count")?
        as usize;
    if n == 0 || n > 20 {
        bail!("qubit count {n} out of range for a diagonal");
    }
    let gates: Vec<RawGate> = match v.get("gates") {
        Some(g) => serde_json::from_value(g.clone()).context("reading `gates`")?,
        None => Vec::new(),
    };
    let mut phases = vec![PiRatio::from_integer(0); 1 << n];
    for (i, raw) in gates.into_iter().enumerate() {
        let angle = raw.angle.as_ref().map(parse_pi).transpose().with_context(|| format!("gate {i}"))?;
        // Build the gate with a placeholder angle to reuse the name parser.
        let placeholder = angle.map(|_| DyadicPhase::ZERO);
        let shape = serde_json::json!({
            "name": raw.name, "controls": raw.controls, "targets": raw.targets, "qubits": raw.qubits,
        });
        let mut shape: serde_json::Map<String, Value> = shape.as_object().cloned().unwrap_or_default();
        shape.retain(|_, v| !v.is_null());
        if placeholder.is_some() {
            shape.insert("angle".into(), Value::String("0".into()));
        }
        let g: Gate = serde_json::from_value(Value::Object(shape)).with_context(|| format!("gate {i}"))?;
        if g.max_wire() >= n {
            bail!("gate {i} ({g}) uses a wire outside 0..{n}");
        }
        let (a0, a1) = diagonal_pair(g.kind, angle.unwrap_or_default())
            .with_context(|| format!("gate {i} ({}) is not diagonal", g.name()))?;
        let cmask = g.controls.iter().fold(0u64, |m, &c| m | bit(n, c));
        let t = bit(n, g.targets[0]);
        for (x, p) in phases.iter_mut().enumerate() {
            let x = x as u64;
            if x & cmask == cmask {
                *p = wrap(*p + if x & t == 0 { a0 } else { a1 });
            }
        }
    }
    Ok(RationalDiagonal { n, phases })
}

fn rational_table(v: &Value) -> Result<RationalDiagonal> {
    let list = v.get("phases").and_then(Value::as_array).context("`phases` must be a list")?;
    let len = list.len();
    if len < 2 || !len.is_power_of_two() {
        bail!("{len} phases is not a positive power of two");
    }
    let n = len.trailing_zeros() as usize;
    if let Some(declared) = v.get("n").or_else(|| v.get("qubits")).and_then(Value::as_u64) {
        if declared as usize != n {
            bail!("{len} phases do not match {declared} qubits");
        }
    }
    let phases = list.iter().map(|p| parse_pi(p).map(wrap)).collect::<Result<_>>()?;
    Ok(RationalDiagonal { n, phases })
}

pub fn parse_diagonal(text: &str) -> Result<DiagonalInput> {
    let v: Value = serde_json::from_str(text).context("parsing JSON")?;
    let raw = if v.get("phases").is_some() { rational_table(&v)? } else { rational_circuit(&v)? };
    let base = raw.phases[0];
    let mut dyadic = Vec::with_capacity(raw.phases.len());
    for p in &raw.phases {
        let rel = wrap(*p - base);
        let den = *rel.denom();
        if !(den as u64).is_power_of_two() {
            return Ok(DiagonalInput::NonDyadic(raw));
        }
        dyadic.push(DyadicPhase::new(*rel.numer(), den.trailing_zeros()));
    }
    Ok(DiagonalInput::Dyadic(DiagonalGate::new(raw.n, dyadic)?))
}

/// Stabilizer generators as a JSON list, `{"generators": [...]}`, or text
/// with one Pauli string per line.
pub fn parse_stabilizer(text: &str) -> Result<StabilizerTableau> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let v: Value = serde_json::from_str(text).context("parsing JSON")?;
        let list = if v.is_array() { v } else { v.get("generators").cloned().context("expected `generators`")? };
        Ok(serde_json::from_value(list).context("reading stabilizer generators")?)
    } else {
        Ok(chx_core::stabilizer::parse_stabilizer_text(text)?)
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    serde_json::from_str(text).context("parsing circuit")
}

pub fn format_ratio(r: &PiRatio) -> String {
    match (*r.numer(), *r.denom()) {
        (0, _) => "0".into(),
        (n, 1) => format!("{n}*pi"),
        (n, d) => format!("{n}/{d}*pi"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_table_and_circuit_agree() {
        let table = r#"{"n": 1, "phases": ["0", "pi/4"]}"#;
        let circ = r#"{"qubits": 1, "gates": [{"name": "T", "targets": [0]}]}"#;
        let (DiagonalInput::Dyadic(a), DiagonalInput::Dyadic(b)) =
            (parse_diagonal(table).unwrap(), parse_diagonal(circ).unwrap())
        else {
            panic!("both dyadic")
        };
        assert_eq!(a, b);
    }

    #[test]
    fn non_dyadic_detected_up_to_global_phase() {
        let odd = r#"{"qubits": 1, "gates": [{"name": "P", "targets": [0], "angle": "pi/3"}]}"#;
        assert!(matches!(parse_diagonal(odd).unwrap(), DiagonalInput::NonDyadic(_)));
        let global = r#"{"phases": ["pi/3", "pi/3"]}"#;
        assert!(matches!(parse_diagonal(global).unwrap(), DiagonalInput::Dyadic(_)));
        let cancel = r#"{"qubits": 1, "gates": [
            {"name": "P", "targets": [0], "angle": "pi/3"},
            {"name": "P", "targets": [0], "angle": "-pi/3"}]}"#;
        assert!(matches!(parse_diagonal(cancel).unwrap(), DiagonalInput::Dyadic(_)));
        assert!(parse_diagonal(r#"{"qubits": 1, "gates": [{"name": "H", "targets": [0]}]}"#).is_err());
    }

    #[test]
    fn stabilizer_forms() {
        assert_eq!(parse_stabilizer("[\"ZZ\", \"XX\"]").unwrap().rank(), 2);
        assert_eq!(parse_stabilizer("{\"generators\": [\"ZI\"]}").unwrap().rank(), 1);
        assert_eq!(parse_stabilizer("ZZ\n# comment\nXX\n").unwrap().rank(), 2);
    }
}
