//! Seeded random circuit generation for test suites.

use rand::seq::SliceRandom;
use rand::Rng;

use kfo_semiring::{Element, SemiringId, SemiringSpec};

use crate::circuit::{Circuit, Gate, GateKind, RelOp};

/// Shape parameters for random circuits.
#[derive(Debug, Clone)]
pub struct CircuitGen {
    pub inputs: usize,
    /// Internal (non-input, non-output) gates to create.
    pub internal: usize,
    /// Whether relation gates may appear.
    pub relations: bool,
    /// Maximum arity of `+`/`*` gates.
    pub max_arity: usize,
}

fn random_constant<R: Rng>(rng: &mut R, spec: &SemiringSpec) -> Element {
    let texts: &[&str] = match spec.id {
        SemiringId::Boolean => &["false", "true"],
        SemiringId::Nat => &["0", "1", "2", "3"],
        SemiringId::Tropical => &["inf", "0", "1", "2", "-1"],
        SemiringId::Lukasiewicz => &["0", "1", "1/2"],
        SemiringId::Probability => &["0", "1", "1/2", "2"],
        SemiringId::NatPoly => &["0", "1", "x", "y"],
    };
    spec.parse_element(texts.choose(rng).expect("non-empty"))
        .expect("palette entries parse")
}

/// A random connected single-output circuit. Every input gate and every
/// generated internal gate ends up on a path to the output: gates that are
/// still unused at the end are folded into a final aggregation gate.
pub fn random_circuit<R: Rng>(rng: &mut R, spec: &SemiringSpec, cfg: &CircuitGen) -> Circuit {
    assert!(cfg.inputs > 0, "need at least one input gate");
    let mut gates: Vec<Gate> = Vec::new();
    for i in 0..cfg.inputs {
        gates.push(Gate {
            id: i,
            kind: GateKind::Input { index: i },
            preds: vec![],
        });
    }
    if rng.gen_bool(0.5) {
        gates.push(Gate {
            id: gates.len(),
            kind: GateKind::Constant(random_constant(rng, spec)),
            preds: vec![],
        });
    }

    // ids with no successors yet; they must all be absorbed eventually
    let mut uncovered: Vec<usize> = gates.iter().map(|g| g.id).collect();

    let pick_pred = |rng: &mut R, uncovered: &mut Vec<usize>, upper: usize| -> usize {
        // favor uncovered gates so the circuit stays connected
        if !uncovered.is_empty() && rng.gen_bool(0.7) {
            let k = rng.gen_range(0..uncovered.len());
            uncovered.swap_remove(k)
        } else {
            rng.gen_range(0..upper)
        }
    };

    for _ in 0..cfg.internal {
        let id = gates.len();
        let choice = rng.gen_range(0..if cfg.relations { 4 } else { 2 });
        let gate = match choice {
            0 | 1 => {
                let arity = rng.gen_range(1..=cfg.max_arity.max(1));
                let preds: Vec<usize> = (0..arity)
                    .map(|_| pick_pred(rng, &mut uncovered, id))
                    .collect();
                Gate {
                    id,
                    kind: if choice == 0 { GateKind::Add } else { GateKind::Mul },
                    preds,
                }
            }
            _ => {
                let a = pick_pred(rng, &mut uncovered, id);
                let b = pick_pred(rng, &mut uncovered, id);
                let op = *[RelOp::Eq, RelOp::Neq, RelOp::Leq, RelOp::NotLeq]
                    .choose(rng)
                    .expect("non-empty");
                Gate {
                    id,
                    kind: GateKind::Rel(op),
                    preds: vec![a, b],
                }
            }
        };
        uncovered.push(id);
        gates.push(gate);
    }

    // absorb everything still dangling into one final sum, then the output
    let final_pred = if uncovered.len() == 1 {
        uncovered[0]
    } else {
        let id = gates.len();
        gates.push(Gate {
            id,
            kind: GateKind::Add,
            preds: uncovered.clone(),
        });
        id
    };
    let out_id = gates.len();
    gates.push(Gate {
        id: out_id,
        kind: GateKind::Output { index: 0 },
        preds: vec![final_pred],
    });

    Circuit::new(spec.clone(), gates)
}

/// Random input vector for a circuit.
pub fn random_inputs<R: Rng>(rng: &mut R, spec: &SemiringSpec, count: usize) -> Vec<Element> {
    (0..count).map(|_| random_constant(rng, spec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate::validate;
    use rand::SeedableRng;

    #[test]
    fn random_circuits_validate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for spec in [SemiringSpec::nat(), SemiringSpec::tropical()] {
            for _ in 0..50 {
                let cfg = CircuitGen {
                    inputs: rng.gen_range(1..4),
                    internal: rng.gen_range(0..8),
                    relations: true,
                    max_arity: 3,
                };
                let c = random_circuit(&mut rng, &spec, &cfg);
                let report = validate(&c);
                assert!(report.is_clean(), "{:?}", report.violations);
            }
        }
    }
}
