//! Oracle-backed checks: the production evaluator against a naive
//! recursive evaluator, normalization against exhaustive path enumeration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use kfo_circuits::generate::{random_circuit, random_inputs, CircuitGen};
use kfo_circuits::{
    evaluate_circuit, input_path_length_sets, is_tree_normalized, normalize_to_tree, validate,
    Circuit, Gate, GateKind, RelOp,
};
use kfo_semiring::{Element, SemiringSpec};

/// Memoization-free recursive evaluation, structured completely unlike the
/// topological pass in the library.
fn naive_eval(circuit: &Circuit, gate_id: usize, inputs: &[Element]) -> Element {
    let positions = circuit.positions();
    let gate = &circuit.gates[positions[&gate_id]];
    let spec = &circuit.spec;
    match &gate.kind {
        GateKind::Input { .. } => {
            let slot = circuit
                .input_order()
                .iter()
                .position(|&id| id == gate_id)
                .unwrap();
            inputs[slot].clone()
        }
        GateKind::Constant(c) => c.clone(),
        GateKind::Add => {
            let mut acc = spec.zero();
            for &p in &gate.preds {
                acc = spec.add(&acc, &naive_eval(circuit, p, inputs)).unwrap();
            }
            acc
        }
        GateKind::Mul => {
            let mut acc = spec.one();
            for &p in &gate.preds {
                acc = spec.mul(&acc, &naive_eval(circuit, p, inputs)).unwrap();
            }
            acc
        }
        GateKind::Rel(op) => {
            let a = naive_eval(circuit, gate.preds[0], inputs);
            let b = naive_eval(circuit, gate.preds[1], inputs);
            let truth = match op {
                RelOp::Eq => a == b,
                RelOp::Neq => a != b,
                RelOp::Leq => spec.leq(&a, &b).unwrap(),
                RelOp::NotLeq => !spec.leq(&a, &b).unwrap(),
            };
            if truth {
                spec.one()
            } else {
                spec.zero()
            }
        }
        GateKind::Output { .. } => naive_eval(circuit, gate.preds[0], inputs),
    }
}

fn naive_outputs(circuit: &Circuit, inputs: &[Element]) -> Vec<Element> {
    circuit
        .output_order()
        .iter()
        .map(|&id| naive_eval(circuit, id, inputs))
        .collect()
}

/// Exhaustive enumeration of all input-to-gate path lengths.
fn enumerate_path_lengths(circuit: &Circuit, target: usize) -> Vec<usize> {
    let positions = circuit.positions();
    fn walk(circuit: &Circuit, positions: &std::collections::HashMap<usize, usize>, id: usize) -> Vec<usize> {
        let gate = &circuit.gates[positions[&id]];
        match gate.kind {
            GateKind::Input { .. } => vec![0],
            _ => {
                let mut out = Vec::new();
                for &p in &gate.preds {
                    for l in walk(circuit, positions, p) {
                        out.push(l + 1);
                    }
                }
                out
            }
        }
    }
    let mut lengths = walk(circuit, &positions, target);
    lengths.sort();
    lengths.dedup();
    lengths
}

#[test]
fn evaluator_agrees_with_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for spec in [SemiringSpec::nat(), SemiringSpec::tropical()] {
        for _ in 0..100 {
            let cfg = CircuitGen {
                inputs: rng.gen_range(1..4),
                internal: rng.gen_range(0..10),
                relations: true,
                max_arity: 3,
            };
            let c = random_circuit(&mut rng, &spec, &cfg);
            assert!(c.size() <= 30);
            let inputs = random_inputs(&mut rng, &spec, c.input_count());
            let got = evaluate_circuit(&c, &inputs).unwrap();
            let expected = naive_outputs(&c, &inputs);
            assert_eq!(got, expected, "{}", kfo_circuits::serialize_circuit(&c));
        }
    }
}

#[test]
fn normalization_preserves_function_on_random_circuits() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for spec in [SemiringSpec::nat(), SemiringSpec::tropical()] {
        for _ in 0..25 {
            let cfg = CircuitGen {
                inputs: rng.gen_range(1..4),
                internal: rng.gen_range(0..8),
                relations: true,
                max_arity: 2,
            };
            let c = random_circuit(&mut rng, &spec, &cfg);
            let t = normalize_to_tree(&c).unwrap();
            assert!(validate(&t).is_clean());
            assert!(is_tree_normalized(&t));
            for _ in 0..20 {
                let inputs = random_inputs(&mut rng, &spec, c.input_count());
                assert_eq!(
                    evaluate_circuit(&c, &inputs).unwrap(),
                    evaluate_circuit(&t, &inputs).unwrap()
                );
            }
        }
    }
}

#[test]
fn normalized_path_lengths_are_singletons_by_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let spec = SemiringSpec::nat();
    for _ in 0..15 {
        let cfg = CircuitGen {
            inputs: rng.gen_range(1..3),
            internal: rng.gen_range(0..6),
            relations: false,
            max_arity: 2,
        };
        let c = random_circuit(&mut rng, &spec, &cfg);
        let t = normalize_to_tree(&c).unwrap();
        let sets = input_path_length_sets(&t);
        for gate in &t.gates {
            let by_enum = enumerate_path_lengths(&t, gate.id);
            assert!(by_enum.len() <= 1, "gate {} has paths {by_enum:?}", gate.id);
            assert_eq!(sets[&gate.id], by_enum);
        }
        // non-input fan-out is one
        let fanouts = t.fanouts();
        for gate in &t.gates {
            if !matches!(gate.kind, GateKind::Input { .. }) {
                assert!(fanouts.get(&gate.id).copied().unwrap_or(0) <= 1);
            }
        }
    }
}

#[test]
fn measured_depth_matches_path_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let spec = SemiringSpec::nat();
    for _ in 0..25 {
        let cfg = CircuitGen {
            inputs: rng.gen_range(1..4),
            internal: rng.gen_range(0..8),
            relations: true,
            max_arity: 3,
        };
        let c = random_circuit(&mut rng, &spec, &cfg);
        let (size, depth) = c.measure();
        assert_eq!(size, c.gates.len());
        let enumerated = c
            .output_order()
            .iter()
            .flat_map(|&o| enumerate_path_lengths(&c, o))
            .max()
            .unwrap_or(0);
        assert_eq!(depth, enumerated);
    }
}

#[test]
fn two_layer_depth_example() {
    // add over four inputs feeding a mul with an input: depth 2
    let spec = SemiringSpec::nat();
    let mut gates: Vec<Gate> = (0..4)
        .map(|i| Gate {
            id: i,
            kind: GateKind::Input { index: i },
            preds: vec![],
        })
        .collect();
    gates.push(Gate { id: 4, kind: GateKind::Add, preds: vec![0, 1, 2, 3] });
    gates.push(Gate { id: 5, kind: GateKind::Mul, preds: vec![4, 0] });
    gates.push(Gate { id: 6, kind: GateKind::Output { index: 0 }, preds: vec![5] });
    let c = Circuit::new(spec, gates);
    assert!(validate(&c).is_clean());
    let (size, depth) = c.measure();
    assert_eq!((size, depth), (7, 3));
    assert_eq!(
        evaluate_circuit(&c, &[1, 2, 3, 4].map(Element::nat)).unwrap(),
        vec![Element::nat(10)]
    );
}
