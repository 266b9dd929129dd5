//! Structural validation.

use std::collections::{HashMap, HashSet};

use crate::circuit::{Circuit, GateKind};

/// Violations found by [`validate`]; empty means well-formed.
#[derive(Debug, Clone, Default)]
pub struct CircuitReport {
    pub violations: Vec<String>,
}

impl CircuitReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural invariant: unique ids, topological gate order,
/// per-kind indegrees, outdegree of outputs, connectedness (every
/// non-output gate lies on a path to an output), gap-free input/output
/// orders, and constants belonging to the semiring.
pub fn validate(circuit: &Circuit) -> CircuitReport {
    let mut report = CircuitReport::default();
    let mut complain = |msg: String| report.violations.push(msg);

    if circuit.gates.is_empty() {
        complain("circuit has no gates".to_string());
        return report;
    }

    let mut seen: HashMap<usize, usize> = HashMap::new();
    for (pos, gate) in circuit.gates.iter().enumerate() {
        if let Some(prev) = seen.insert(gate.id, pos) {
            complain(format!(
                "duplicate gate id {} at positions {prev} and {pos}",
                gate.id
            ));
        }
    }

    // topological order: predecessors must appear strictly earlier
    for (pos, gate) in circuit.gates.iter().enumerate() {
        for &p in &gate.preds {
            match seen.get(&p) {
                None => complain(format!("gate {}: unknown predecessor {p}", gate.id)),
                Some(&ppos) if ppos >= pos => complain(format!(
                    "gate {}: predecessor {p} does not precede it (order is not topological)",
                    gate.id
                )),
                _ => {}
            }
        }
    }

    for gate in &circuit.gates {
        let indegree = gate.preds.len();
        match &gate.kind {
            GateKind::Input { .. } | GateKind::Constant(_) => {
                if indegree != 0 {
                    complain(format!("gate {}: source gate with indegree {indegree}", gate.id));
                }
            }
            GateKind::Add | GateKind::Mul => {
                if indegree < 1 {
                    complain(format!("gate {}: arithmetic gate with no predecessors", gate.id));
                }
            }
            GateKind::Output { .. } => {
                if indegree != 1 {
                    complain(format!("gate {}: output gate with indegree {indegree}", gate.id));
                }
            }
            GateKind::Rel(_) => {
                if indegree != 2 {
                    complain(format!(
                        "gate {}: relation gate with indegree {indegree}, expected 2",
                        gate.id
                    ));
                }
            }
        }
        if let GateKind::Constant(value) = &gate.kind {
            if !circuit.spec.contains(value) {
                complain(format!(
                    "gate {}: constant `{value}` is not a {} element",
                    gate.id, circuit.spec.id
                ));
            }
        }
    }

    // outputs must have outdegree 0; everything else must reach an output
    let fanouts = circuit.fanouts();
    for gate in &circuit.gates {
        if matches!(gate.kind, GateKind::Output { .. })
            && fanouts.get(&gate.id).copied().unwrap_or(0) > 0
        {
            complain(format!("gate {}: output gate has successors", gate.id));
        }
    }
    let mut reaches_output: HashSet<usize> = HashSet::new();
    for gate in circuit.gates.iter().rev() {
        if matches!(gate.kind, GateKind::Output { .. }) || reaches_output.contains(&gate.id) {
            reaches_output.insert(gate.id);
            for &p in &gate.preds {
                reaches_output.insert(p);
            }
        }
    }
    for gate in &circuit.gates {
        if !reaches_output.contains(&gate.id) {
            complain(format!(
                "gate {}: no path to an output gate (disconnected)",
                gate.id
            ));
        }
    }

    // ordered, gap-free io indices
    for (what, indices) in [
        (
            "input",
            circuit
                .gates
                .iter()
                .filter_map(|g| match g.kind {
                    GateKind::Input { index } => Some(index),
                    _ => None,
                })
                .collect::<Vec<_>>(),
        ),
        (
            "output",
            circuit
                .gates
                .iter()
                .filter_map(|g| match g.kind {
                    GateKind::Output { index } => Some(index),
                    _ => None,
                })
                .collect::<Vec<_>>(),
        ),
    ] {
        let mut sorted = indices.clone();
        sorted.sort();
        for (expect, got) in sorted.iter().enumerate() {
            if *got != expect {
                complain(format!(
                    "{what} indices are not gap-free 0..{}: {sorted:?}",
                    indices.len()
                ));
                break;
            }
        }
    }

    if circuit.output_count() == 0 {
        complain("circuit has no output gate".to_string());
    }

    report
}
