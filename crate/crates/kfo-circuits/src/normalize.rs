//! Tree normalization: fan-out 1 for non-input gates and uniform
//! input-path lengths, preserving the computed function and the depth.

use std::collections::HashMap;

use crate::circuit::{Circuit, CircuitError, Gate, GateKind};
use crate::validate::validate;
use crate::Result;

/// Rebuilds the circuit so that every non-input gate has fan-out 1 (shared
/// subcircuits are duplicated per use) and, for every gate, all paths from
/// input gates to it have the same length (shorter branches are padded with
/// unary `+` gates, which are identities). Input gates stay shared;
/// constant gates impose no path-length constraint.
pub fn normalize_to_tree(circuit: &Circuit) -> Result<Circuit> {
    let report = validate(circuit);
    if !report.is_clean() {
        return Err(CircuitError::Invalid(report.violations.join("; ")));
    }
    let positions = circuit.positions();

    let mut out_gates: Vec<Gate> = Vec::new();
    let mut next_id = 0usize;

    // shared input gates come first, in input order
    let mut input_new_id: HashMap<usize, usize> = HashMap::new();
    for (slot, orig_id) in circuit.input_order().into_iter().enumerate() {
        let id = next_id;
        next_id += 1;
        out_gates.push(Gate {
            id,
            kind: GateKind::Input { index: slot },
            preds: vec![],
        });
        input_new_id.insert(orig_id, id);
    }

    fn emit(out_gates: &mut Vec<Gate>, next_id: &mut usize, kind: GateKind, preds: Vec<usize>) -> usize {
        let id = *next_id;
        *next_id += 1;
        out_gates.push(Gate { id, kind, preds });
        id
    }

    // recursive per-edge cloning; `level` is the uniform input-path length
    // (None for cones without input gates)
    fn clone_tree(
        circuit: &Circuit,
        positions: &HashMap<usize, usize>,
        input_new_id: &HashMap<usize, usize>,
        out_gates: &mut Vec<Gate>,
        next_id: &mut usize,
        orig_id: usize,
    ) -> (usize, Option<usize>) {
        let gate = &circuit.gates[positions[&orig_id]];
        match &gate.kind {
            GateKind::Input { .. } => (input_new_id[&orig_id], Some(0)),
            GateKind::Constant(c) => {
                let id = emit(out_gates, next_id, GateKind::Constant(c.clone()), vec![]);
                (id, None)
            }
            kind => {
                let children: Vec<(usize, Option<usize>)> = gate
                    .preds
                    .iter()
                    .map(|&p| {
                        clone_tree(circuit, positions, input_new_id, out_gates, next_id, p)
                    })
                    .collect();
                let target = children.iter().filter_map(|(_, l)| *l).max();
                let mut preds = Vec::with_capacity(children.len());
                for (mut child_id, level) in children {
                    if let (Some(l), Some(t)) = (level, target) {
                        for _ in l..t {
                            child_id = emit(out_gates, next_id, GateKind::Add, vec![child_id]);
                        }
                    }
                    preds.push(child_id);
                }
                let id = emit(out_gates, next_id, kind.clone(), preds);
                (id, target.map(|t| t + 1))
            }
        }
    }

    for (slot, orig_id) in circuit.output_order().into_iter().enumerate() {
        let out_gate = &circuit.gates[positions[&orig_id]];
        let (pred_id, _) = clone_tree(
            circuit,
            &positions,
            &input_new_id,
            &mut out_gates,
            &mut next_id,
            out_gate.preds[0],
        );
        let id = next_id;
        next_id += 1;
        out_gates.push(Gate {
            id,
            kind: GateKind::Output { index: slot },
            preds: vec![pred_id],
        });
    }

    Ok(Circuit::new(circuit.spec.clone(), out_gates))
}

/// The set of input-to-gate path lengths per gate id, computed exactly.
pub fn input_path_length_sets(circuit: &Circuit) -> HashMap<usize, Vec<usize>> {
    let positions = circuit.positions();
    let mut sets: Vec<std::collections::BTreeSet<usize>> =
        vec![Default::default(); circuit.gates.len()];
    for (pos, gate) in circuit.gates.iter().enumerate() {
        match gate.kind {
            GateKind::Input { .. } => {
                sets[pos].insert(0);
            }
            _ => {
                let mut acc = std::collections::BTreeSet::new();
                for &p in &gate.preds {
                    for &l in &sets[positions[&p]] {
                        acc.insert(l + 1);
                    }
                }
                sets[pos] = acc;
            }
        }
    }
    circuit
        .gates
        .iter()
        .enumerate()
        .map(|(pos, g)| (g.id, sets[pos].iter().copied().collect()))
        .collect()
}

/// Whether the circuit satisfies both tree-normal-form conditions.
pub fn is_tree_normalized(circuit: &Circuit) -> bool {
    let fanouts = circuit.fanouts();
    for gate in &circuit.gates {
        if matches!(gate.kind, GateKind::Input { .. }) {
            continue;
        }
        if fanouts.get(&gate.id).copied().unwrap_or(0) > 1 {
            return false;
        }
    }
    input_path_length_sets(circuit)
        .values()
        .all(|set| set.len() <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::RelOp;
    use crate::eval::evaluate_circuit;
    use kfo_semiring::{Element, SemiringSpec};

    fn gate(id: usize, kind: GateKind, preds: Vec<usize>) -> Gate {
        Gate { id, kind, preds }
    }

    #[test]
    fn shared_gate_is_duplicated_and_value_preserved() {
        // g = x + y used by two successors
        let c = Circuit::new(
            SemiringSpec::nat(),
            vec![
                gate(0, GateKind::Input { index: 0 }, vec![]),
                gate(1, GateKind::Input { index: 1 }, vec![]),
                gate(2, GateKind::Add, vec![0, 1]),
                gate(3, GateKind::Mul, vec![2, 2]),
                gate(4, GateKind::Output { index: 0 }, vec![3]),
            ],
        );
        let t = normalize_to_tree(&c).unwrap();
        assert!(validate(&t).is_clean());
        assert!(is_tree_normalized(&t));
        for (a, b) in [(2u64, 3u64), (0, 0), (7, 1)] {
            let x = vec![Element::nat(a), Element::nat(b)];
            assert_eq!(
                evaluate_circuit(&c, &x).unwrap(),
                evaluate_circuit(&t, &x).unwrap()
            );
        }
    }

    #[test]
    fn uneven_paths_get_padded_and_depth_is_kept() {
        // mul(x, add(x, y)): path lengths to mul are {1, 2}
        let c = Circuit::new(
            SemiringSpec::nat(),
            vec![
                gate(0, GateKind::Input { index: 0 }, vec![]),
                gate(1, GateKind::Input { index: 1 }, vec![]),
                gate(2, GateKind::Add, vec![0, 1]),
                gate(3, GateKind::Mul, vec![0, 2]),
                gate(4, GateKind::Output { index: 0 }, vec![3]),
            ],
        );
        let (_, depth_before) = c.measure();
        let t = normalize_to_tree(&c).unwrap();
        let (_, depth_after) = t.measure();
        assert_eq!(depth_before, depth_after);
        assert!(is_tree_normalized(&t));
        let x = vec![Element::nat(3), Element::nat(4)];
        assert_eq!(
            evaluate_circuit(&t, &x).unwrap(),
            vec![Element::nat(21)]
        );
    }

    #[test]
    fn already_tree_stays_functionally_identical() {
        let c = Circuit::new(
            SemiringSpec::tropical(),
            vec![
                gate(0, GateKind::Input { index: 0 }, vec![]),
                gate(1, GateKind::Input { index: 1 }, vec![]),
                gate(2, GateKind::Rel(RelOp::Leq), vec![0, 1]),
                gate(3, GateKind::Output { index: 0 }, vec![2]),
            ],
        );
        let t = normalize_to_tree(&c).unwrap();
        assert!(is_tree_normalized(&t));
        let x = vec![Element::trop(1), Element::trop_inf()];
        assert_eq!(
            evaluate_circuit(&c, &x).unwrap(),
            evaluate_circuit(&t, &x).unwrap()
        );
    }

    #[test]
    fn constants_do_not_force_padding() {
        // add(c, mul(x, x)): constant branch has no input paths
        let c = Circuit::new(
            SemiringSpec::nat(),
            vec![
                gate(0, GateKind::Input { index: 0 }, vec![]),
                gate(1, GateKind::Constant(Element::nat(5)), vec![]),
                gate(2, GateKind::Mul, vec![0, 0]),
                gate(3, GateKind::Add, vec![1, 2]),
                gate(4, GateKind::Output { index: 0 }, vec![3]),
            ],
        );
        let t = normalize_to_tree(&c).unwrap();
        assert!(is_tree_normalized(&t));
        assert_eq!(
            evaluate_circuit(&t, &[Element::nat(3)]).unwrap(),
            vec![Element::nat(14)]
        );
    }
}
