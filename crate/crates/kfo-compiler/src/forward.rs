//! Sentence to circuit, by structural induction with explicit variable
//! substitutions.

use std::collections::HashMap;

use kfo_circuits::{Circuit, Gate, GateKind, RelOp};
use kfo_logic::{BuiltinInterpretation, CompareOp, EncLayout, Formula, Literal, Vocabulary};
use kfo_semiring::SemiringSpec;

use crate::error::CompileError;
use crate::Result;

struct Builder {
    gates: Vec<Gate>,
    input_by_slot: HashMap<usize, usize>,
}

impl Builder {
    fn gate(&mut self, kind: GateKind, preds: Vec<usize>) -> usize {
        let id = self.gates.len();
        self.gates.push(Gate { id, kind, preds });
        id
    }
}

/// Compiles a sentence into a single-output circuit for universe size `n`.
///
/// The circuit has one input gate per position of the encoded
/// interpretation for `vocab`'s input relations; feeding it `enc(pi)`
/// yields exactly the evaluation of the sentence under `pi`. Built-in atoms
/// become constant gates filled from `rho` at size `n`.
pub fn formula_to_circuit(
    formula: &Formula,
    vocab: &Vocabulary,
    rho: Option<&BuiltinInterpretation>,
    spec: &SemiringSpec,
    n: usize,
) -> Result<Circuit> {
    if n == 0 {
        return Err(CompileError::EmptyUniverse);
    }
    if !spec.positive || !spec.commutative {
        return Err(CompileError::UnsupportedSemiring(spec.id.to_string()));
    }
    let free = formula.free_vars();
    if !free.is_empty() {
        return Err(CompileError::NotSentence(free));
    }
    formula.validate(vocab)?;
    if formula.uses_builtins() && rho.is_none() {
        return Err(CompileError::MissingBuiltins);
    }

    let layout = EncLayout::new(&vocab.input, n);
    let mut builder = Builder {
        gates: Vec::new(),
        input_by_slot: HashMap::new(),
    };
    // the full encoding is the circuit interface, used or not
    for slot in 0..layout.len() {
        let id = builder.gate(GateKind::Input { index: slot }, vec![]);
        builder.input_by_slot.insert(slot, id);
    }

    let mut subst: Vec<(String, usize)> = Vec::new();
    let root = compile(
        formula,
        &mut builder,
        &mut subst,
        &layout,
        rho,
        spec,
        n,
    )?;

    // tether every input gate to the output through an annihilated term so
    // the circuit stays connected: root + 0 * (sum of all inputs)
    let top = if layout.len() > 0 {
        let all_inputs: Vec<usize> = (0..layout.len()).map(|s| builder.input_by_slot[&s]).collect();
        let sum = builder.gate(GateKind::Add, all_inputs);
        let zero = builder.gate(GateKind::Constant(spec.zero()), vec![]);
        let killed = builder.gate(GateKind::Mul, vec![zero, sum]);
        builder.gate(GateKind::Add, vec![root, killed])
    } else {
        root
    };
    builder.gate(GateKind::Output { index: 0 }, vec![top]);

    Ok(Circuit::new(spec.clone(), builder.gates))
}

fn lookup(subst: &[(String, usize)], var: &str) -> usize {
    subst
        .iter()
        .rev()
        .find(|(v, _)| v == var)
        .map(|(_, i)| *i)
        .expect("sentences bind every variable before use")
}

fn compile(
    formula: &Formula,
    builder: &mut Builder,
    subst: &mut Vec<(String, usize)>,
    layout: &EncLayout,
    rho: Option<&BuiltinInterpretation>,
    spec: &SemiringSpec,
    n: usize,
) -> Result<usize> {
    let id = match formula {
        Formula::VarEq(x, y) => {
            let truth = lookup(subst, x) == lookup(subst, y);
            builder.gate(
                GateKind::Constant(if truth { spec.one() } else { spec.zero() }),
                vec![],
            )
        }
        Formula::VarNeq(x, y) => {
            let truth = lookup(subst, x) != lookup(subst, y);
            builder.gate(
                GateKind::Constant(if truth { spec.one() } else { spec.zero() }),
                vec![],
            )
        }
        Formula::Atom(rel, vars) | Formula::NegAtom(rel, vars) => {
            let args: Vec<usize> = vars.iter().map(|v| lookup(subst, v)).collect();
            let lit = Literal {
                negated: matches!(formula, Formula::NegAtom(..)),
                rel: rel.clone(),
                args,
            };
            let slot = layout.index(&lit).expect("validated literal");
            builder.input_by_slot[&slot]
        }
        Formula::BuiltinAtom(name, vars) | Formula::NegBuiltinAtom(name, vars) => {
            let rho = rho.ok_or(CompileError::MissingBuiltins)?;
            let ranks: Vec<usize> = vars.iter().map(|v| lookup(subst, v) + 1).collect();
            let value = rho.value(
                spec,
                name,
                matches!(formula, Formula::NegBuiltinAtom(..)),
                n,
                &ranks,
            )?;
            builder.gate(GateKind::Constant(value), vec![])
        }
        Formula::And(a, b) => {
            let ga = compile(a, builder, subst, layout, rho, spec, n)?;
            let gb = compile(b, builder, subst, layout, rho, spec, n)?;
            builder.gate(GateKind::Mul, vec![ga, gb])
        }
        Formula::Or(a, b) => {
            let ga = compile(a, builder, subst, layout, rho, spec, n)?;
            let gb = compile(b, builder, subst, layout, rho, spec, n)?;
            builder.gate(GateKind::Add, vec![ga, gb])
        }
        Formula::Compare(op, a, b) => {
            let ga = compile(a, builder, subst, layout, rho, spec, n)?;
            let gb = compile(b, builder, subst, layout, rho, spec, n)?;
            let rel = match op {
                CompareOp::Eq => RelOp::Eq,
                CompareOp::Neq => RelOp::Neq,
                CompareOp::Leq => RelOp::Leq,
                CompareOp::NotLeq => RelOp::NotLeq,
            };
            builder.gate(GateKind::Rel(rel), vec![ga, gb])
        }
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            let mut children = Vec::with_capacity(n);
            for a in 0..n {
                subst.push((x.clone(), a));
                let g = compile(body, builder, subst, layout, rho, spec, n)?;
                subst.pop();
                children.push(g);
            }
            let kind = if matches!(formula, Formula::Exists(..)) {
                GateKind::Add
            } else {
                GateKind::Mul
            };
            builder.gate(kind, children)
        }
    };
    Ok(id)
}
