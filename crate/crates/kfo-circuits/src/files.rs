//! Circuit text format and DOT export.
//!
//! ```text
//! semiring: nat
//! gate 0 input 0
//! gate 1 input 1
//! gate 2 const 5
//! gate 3 add <- 0 1 2
//! gate 4 eq <- 3 2
//! gate 5 output 0 <- 4
//! ```

use crate::circuit::{Circuit, CircuitError, Gate, GateKind, RelOp};
use crate::Result;
use kfo_semiring::SemiringSpec;

fn err(line: usize, msg: impl Into<String>) -> CircuitError {
    CircuitError::FileFormat {
        line,
        msg: msg.into(),
    }
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut spec: Option<SemiringSpec> = None;
    let mut gates = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("semiring:") {
            let name = name.trim();
            spec = Some(
                SemiringSpec::from_name(name)
                    .ok_or_else(|| err(line_no, format!("unknown semiring `{name}`")))?,
            );
            continue;
        }
        let spec = spec
            .as_ref()
            .ok_or_else(|| err(line_no, "gate before `semiring:` header"))?;
        let rest = line
            .strip_prefix("gate")
            .ok_or_else(|| err(line_no, format!("expected `gate ...`, got `{line}`")))?;
        let (head, preds_text) = match rest.split_once("<-") {
            Some((h, p)) => (h.trim(), Some(p.trim())),
            None => (rest.trim(), None),
        };
        let mut head_parts = head.split_whitespace();
        let id: usize = head_parts
            .next()
            .ok_or_else(|| err(line_no, "missing gate id"))?
            .parse()
            .map_err(|_| err(line_no, "bad gate id"))?;
        let kind_word = head_parts
            .next()
            .ok_or_else(|| err(line_no, "missing gate kind"))?;
        let param = head_parts.collect::<Vec<_>>().join(" ");
        let kind = match kind_word {
            "input" => GateKind::Input {
                index: param
                    .parse()
                    .map_err(|_| err(line_no, "input gate needs an index"))?,
            },
            "const" => GateKind::Constant(spec.parse_element(param.trim())?),
            "add" => GateKind::Add,
            "mul" => GateKind::Mul,
            "output" => GateKind::Output {
                index: param
                    .parse()
                    .map_err(|_| err(line_no, "output gate needs an index"))?,
            },
            "eq" => GateKind::Rel(RelOp::Eq),
            "neq" => GateKind::Rel(RelOp::Neq),
            "leq" => GateKind::Rel(RelOp::Leq),
            "nleq" => GateKind::Rel(RelOp::NotLeq),
            other => return Err(err(line_no, format!("unknown gate kind `{other}`"))),
        };
        let preds = match preds_text {
            None => Vec::new(),
            Some(t) => t
                .split_whitespace()
                .map(|p| {
                    p.parse::<usize>()
                        .map_err(|_| err(line_no, format!("bad predecessor `{p}`")))
                })
                .collect::<Result<Vec<_>>>()?,
        };
        gates.push(Gate { id, kind, preds });
    }
    let spec = spec.ok_or_else(|| err(0, "missing `semiring:` header"))?;
    Ok(Circuit::new(spec, gates))
}

pub fn serialize_circuit(circuit: &Circuit) -> String {
    let mut out = format!("semiring: {}\n", circuit.spec.id);
    for gate in &circuit.gates {
        let head = match &gate.kind {
            GateKind::Input { index } => format!("input {index}"),
            GateKind::Constant(c) => format!("const {c}"),
            GateKind::Add => "add".to_string(),
            GateKind::Mul => "mul".to_string(),
            GateKind::Output { index } => format!("output {index}"),
            GateKind::Rel(RelOp::Eq) => "eq".to_string(),
            GateKind::Rel(RelOp::Neq) => "neq".to_string(),
            GateKind::Rel(RelOp::Leq) => "leq".to_string(),
            GateKind::Rel(RelOp::NotLeq) => "nleq".to_string(),
        };
        if gate.preds.is_empty() {
            out.push_str(&format!("gate {} {head}\n", gate.id));
        } else {
            let preds: Vec<String> = gate.preds.iter().map(|p| p.to_string()).collect();
            out.push_str(&format!("gate {} {head} <- {}\n", gate.id, preds.join(" ")));
        }
    }
    out
}

/// Graphviz rendering for visual inspection.
pub fn to_dot(circuit: &Circuit) -> String {
    let mut out = String::from("digraph circuit {\n  rankdir=BT;\n");
    for gate in &circuit.gates {
        let label = match &gate.kind {
            GateKind::Input { index } => format!("in {index}"),
            GateKind::Constant(c) => format!("{c}"),
            GateKind::Add => "+".to_string(),
            GateKind::Mul => "*".to_string(),
            GateKind::Output { index } => format!("out {index}"),
            GateKind::Rel(RelOp::Eq) => "=".to_string(),
            GateKind::Rel(RelOp::Neq) => "!=".to_string(),
            GateKind::Rel(RelOp::Leq) => "<=".to_string(),
            GateKind::Rel(RelOp::NotLeq) => "!<=".to_string(),
        };
        let shape = if gate.kind.is_source() { "box" } else { "ellipse" };
        out.push_str(&format!(
            "  g{} [label=\"{}: {}\", shape={shape}];\n",
            gate.id, gate.id, label
        ));
        for &p in &gate.preds {
            out.push_str(&format!("  g{p} -> g{};\n", gate.id));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use kfo_semiring::Element;

    #[test]
    fn round_trip_preserves_gate_list() {
        let text = "\
semiring: tropical
gate 0 input 0
gate 1 input 1
gate 2 const inf
gate 3 add <- 0 1 2
gate 4 leq <- 3 2
gate 5 output 0 <- 4
";
        let c = parse_circuit(text).unwrap();
        assert_eq!(c.size(), 6);
        assert!(matches!(c.gates[2].kind, GateKind::Constant(ref v) if *v == Element::trop_inf()));
        let printed = serialize_circuit(&c);
        assert_eq!(printed, text);
        assert!(to_dot(&c).contains("g0 -> g3"));
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(parse_circuit("gate 0 input 0").is_err());
        assert!(parse_circuit("semiring: nope\n").is_err());
        assert!(parse_circuit("semiring: nat\ngate x input 0\n").is_err());
        assert!(parse_circuit("semiring: nat\ngate 0 widget\n").is_err());
    }
}
