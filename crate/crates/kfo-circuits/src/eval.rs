//! Topological circuit evaluation.

use crate::circuit::{Circuit, CircuitError, GateKind, RelOp};
use crate::validate::validate;
use crate::Result;
use kfo_semiring::Element;

/// Evaluates the circuit on an input vector (one element per input gate,
/// in input order) and returns the outputs in output order.
pub fn evaluate_circuit(circuit: &Circuit, inputs: &[Element]) -> Result<Vec<Element>> {
    let report = validate(circuit);
    if !report.is_clean() {
        return Err(CircuitError::Invalid(report.violations.join("; ")));
    }
    let expected = circuit.input_count();
    if inputs.len() != expected {
        return Err(CircuitError::InputArity {
            expected,
            got: inputs.len(),
        });
    }
    let spec = &circuit.spec;
    for v in inputs {
        if !spec.contains(v) {
            return Err(CircuitError::Semiring(
                kfo_semiring::SemiringError::InstanceMismatch {
                    expected: spec.id,
                    found: v.to_string(),
                },
            ));
        }
    }

    let positions = circuit.positions();
    let mut values: Vec<Option<Element>> = vec![None; circuit.gates.len()];
    // inputs are matched to gates by input index
    let input_ids = circuit.input_order();

    for (pos, gate) in circuit.gates.iter().enumerate() {
        let value = match &gate.kind {
            GateKind::Input { .. } => {
                let slot = input_ids
                    .iter()
                    .position(|&id| id == gate.id)
                    .expect("input gate listed");
                inputs[slot].clone()
            }
            GateKind::Constant(c) => c.clone(),
            GateKind::Add => {
                let mut acc = spec.zero();
                for &p in &gate.preds {
                    let v = values[positions[&p]].as_ref().expect("topological order");
                    acc = spec.add(&acc, v)?;
                }
                acc
            }
            GateKind::Mul => {
                let mut acc = spec.one();
                for &p in &gate.preds {
                    let v = values[positions[&p]].as_ref().expect("topological order");
                    acc = spec.mul(&acc, v)?;
                }
                acc
            }
            GateKind::Rel(op) => {
                if op.needs_order() && !spec.ordered {
                    return Err(CircuitError::UnorderedRelGate { gate: gate.id });
                }
                let a = values[positions[&gate.preds[0]]]
                    .as_ref()
                    .expect("topological order");
                let b = values[positions[&gate.preds[1]]]
                    .as_ref()
                    .expect("topological order");
                let truth = match op {
                    RelOp::Eq => a == b,
                    RelOp::Neq => a != b,
                    RelOp::Leq => spec.leq(a, b)?,
                    RelOp::NotLeq => !spec.leq(a, b)?,
                };
                if truth {
                    spec.one()
                } else {
                    spec.zero()
                }
            }
            GateKind::Output { .. } => values[positions[&gate.preds[0]]]
                .as_ref()
                .expect("topological order")
                .clone(),
        };
        values[pos] = Some(value);
    }

    Ok(circuit
        .output_order()
        .iter()
        .map(|id| values[positions[id]].clone().expect("evaluated"))
        .collect())
}
