//! Circuit to sentence: emits a formula that walks the circuit level by
//! level, dispatching on gate types through built-in indicator families.
//!
//! The emitted signature is `({R/1}, {t1..t4, c, inp, inn, e, left})`:
//! `t1..t4` are the per-bit indicators of the 4-bit gate type code, `c`
//! returns constant-gate values, `inp`/`inn` locate the input gates that
//! carry the positive/negative halves of the encoded interpretation, `e` is
//! the edge indicator and `left` marks the ordered predecessor pairs of
//! relation gates. Gates are encoded as `q`-tuples over `{1..n}`.

use std::collections::HashMap;

use kfo_circuits::{is_tree_normalized, validate, Circuit, CircuitError, Gate, GateKind, RelOp};
use kfo_logic::{
    BuiltinFamily, BuiltinInterpretation, CompareOp, Formula, Interpretation, Literal, RelSymbol,
};
use kfo_semiring::{Element, SemiringSpec};

use crate::error::CompileError;
use crate::Result;

/// The structural built-ins accompanying an emitted sentence.
#[derive(Debug, Clone)]
pub struct StructureBuiltins {
    pub sigma: Vec<RelSymbol>,
    pub rho: BuiltinInterpretation,
    /// Universe size the families are defined at.
    pub universe_size: usize,
    /// Tuple width of the gate encoding.
    pub q: usize,
    /// The input vocabulary of the sentence: a single unary relation.
    pub tau: Vec<RelSymbol>,
}

impl StructureBuiltins {
    /// Builds the interpretation whose encoding starts with `inputs`
    /// (remaining positions are zero), suitable for evaluating the emitted
    /// sentence against a circuit run on `inputs`.
    pub fn interpretation_for_inputs(
        &self,
        spec: &SemiringSpec,
        inputs: &[Element],
    ) -> kfo_logic::Result<Interpretation> {
        let n = self.universe_size;
        assert!(inputs.len() <= 2 * n, "inputs exceed the encoding length");
        let universe: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        let zero = spec.zero();
        Interpretation::build(spec.clone(), universe, self.tau.clone(), |lit: &Literal| {
            let slot = if lit.negated {
                n + lit.args[0]
            } else {
                lit.args[0]
            };
            inputs.get(slot).cloned().unwrap_or_else(|| zero.clone())
        })
    }
}

/// Internal working form: the buffered, constant-folded circuit with
/// per-gate levels.
struct Layered {
    gates: Vec<Gate>,
    /// uniform input-path length per gate position, None for constants
    levels: Vec<Option<usize>>,
}

/// Collapses constant cones to single constant gates, inserts a buffer
/// (unary `+`) on every input-gate edge, verifies layering.
fn prepare(circuit: &Circuit) -> Result<Layered> {
    let spec = &circuit.spec;
    let positions = circuit.positions();

    // fold every gate that has no input-gate ancestry into a constant
    let mut constant_value: HashMap<usize, Element> = HashMap::new();
    for gate in &circuit.gates {
        match &gate.kind {
            GateKind::Input { .. } => {}
            GateKind::Constant(c) => {
                constant_value.insert(gate.id, c.clone());
            }
            GateKind::Add => {
                if gate.preds.iter().all(|p| constant_value.contains_key(p)) {
                    let mut acc = spec.zero();
                    for p in &gate.preds {
                        acc = spec.add(&acc, &constant_value[p])?;
                    }
                    constant_value.insert(gate.id, acc);
                }
            }
            GateKind::Mul => {
                if gate.preds.iter().all(|p| constant_value.contains_key(p)) {
                    let mut acc = spec.one();
                    for p in &gate.preds {
                        acc = spec.mul(&acc, &constant_value[p])?;
                    }
                    constant_value.insert(gate.id, acc);
                }
            }
            GateKind::Rel(op) => {
                if gate.preds.iter().all(|p| constant_value.contains_key(p)) {
                    let a = &constant_value[&gate.preds[0]];
                    let b = &constant_value[&gate.preds[1]];
                    let truth = match op {
                        RelOp::Eq => a == b,
                        RelOp::Neq => a != b,
                        RelOp::Leq => spec.leq(a, b)?,
                        RelOp::NotLeq => !spec.leq(a, b)?,
                    };
                    constant_value
                        .insert(gate.id, if truth { spec.one() } else { spec.zero() });
                }
            }
            GateKind::Output { .. } => {}
        }
    }

    let mut gates: Vec<Gate> = Vec::new();
    let mut next_id = 0usize;
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut emit = |gates: &mut Vec<Gate>, kind: GateKind, preds: Vec<usize>| {
        let id = next_id;
        next_id += 1;
        gates.push(Gate { id, kind, preds });
        id
    };

    for gate in &circuit.gates {
        if constant_value.contains_key(&gate.id) && !matches!(gate.kind, GateKind::Input { .. })
        {
            continue; // folded away; materialized per consuming edge
        }
        let mut preds = Vec::with_capacity(gate.preds.len());
        for p in &gate.preds {
            if let Some(value) = constant_value.get(p) {
                // fresh constant per edge keeps fan-out 1
                preds.push(emit(&mut gates, GateKind::Constant(value.clone()), vec![]));
            } else if matches!(
                circuit.gates[positions[p]].kind,
                GateKind::Input { .. }
            ) {
                let input_id = remap[p];
                let buffer = emit(&mut gates, GateKind::Add, vec![input_id]);
                preds.push(buffer);
            } else {
                preds.push(remap[p]);
            }
        }
        let id = emit(&mut gates, gate.kind.clone(), preds);
        remap.insert(gate.id, id);
    }

    // levels: inputs 0, buffers 1, constants free
    let mut levels: Vec<Option<usize>> = vec![None; gates.len()];
    for (pos, gate) in gates.iter().enumerate() {
        levels[pos] = match gate.kind {
            GateKind::Input { .. } => Some(0),
            GateKind::Constant(_) => None,
            _ => {
                let child_levels: Vec<usize> = gate
                    .preds
                    .iter()
                    .filter_map(|p| levels[*p])
                    .collect();
                match child_levels.as_slice() {
                    [] => None,
                    [first, rest @ ..] => {
                        if rest.iter().any(|l| l != first) {
                            return Err(CompileError::NotNormalized);
                        }
                        Some(first + 1)
                    }
                }
            }
        };
    }

    Ok(Layered { gates, levels })
}

fn type_bit(code: u8, bit: usize) -> bool {
    debug_assert!((1..=4).contains(&bit));
    (code >> (4 - bit)) & 1 == 1
}

fn bank_names(bank: usize, q: usize) -> Vec<String> {
    let prefix = ["x", "y", "z"][bank % 3];
    (1..=q).map(|i| format!("{prefix}{i}")).collect()
}

fn exists_chain(vars: &[String], body: Formula) -> Formula {
    vars.iter()
        .rev()
        .fold(body, |acc, v| Formula::Exists(v.clone(), Box::new(acc)))
}

fn forall_chain(vars: &[String], body: Formula) -> Formula {
    vars.iter()
        .rev()
        .fold(body, |acc, v| Formula::Forall(v.clone(), Box::new(acc)))
}

fn and_all(mut parts: Vec<Formula>) -> Formula {
    let first = parts.remove(0);
    parts.into_iter().fold(first, Formula::and)
}

fn or_all(mut parts: Vec<Formula>) -> Formula {
    let first = parts.remove(0);
    parts.into_iter().fold(first, Formula::or)
}

fn atom(name: &str, vars: &[String]) -> Formula {
    Formula::BuiltinAtom(name.to_string(), vars.to_vec())
}

fn neg_atom(name: &str, vars: &[String]) -> Formula {
    Formula::NegBuiltinAtom(name.to_string(), vars.to_vec())
}

/// Type-code guard: conjunction of the four per-bit indicators.
fn guard(code: u8, vars: &[String]) -> Formula {
    let parts: Vec<Formula> = (1..=4)
        .map(|i| {
            let name = format!("t{i}");
            if type_bit(code, i) {
                atom(&name, vars)
            } else {
                neg_atom(&name, vars)
            }
        })
        .collect();
    and_all(parts)
}

/// Emits the sentence and structure families for a normalized single-output
/// circuit. `q` is the gate-encoding tuple width; `n` overrides the
/// universe size (default: the number of input gates, or the smallest
/// feasible size for input-free circuits).
pub fn circuit_to_formula(
    circuit: &Circuit,
    q: usize,
    n_override: Option<usize>,
) -> Result<(Formula, StructureBuiltins)> {
    let report = validate(circuit);
    if !report.is_clean() {
        return Err(CompileError::Circuit(CircuitError::Invalid(
            report.violations.join("; "),
        )));
    }
    let spec = &circuit.spec;
    if !spec.positive || !spec.commutative {
        return Err(CompileError::UnsupportedSemiring(spec.id.to_string()));
    }
    if circuit.output_count() != 1 {
        return Err(CompileError::MultiOutput(circuit.output_count()));
    }
    if !is_tree_normalized(circuit) {
        return Err(CompileError::NotNormalized);
    }

    let layered = prepare(circuit)?;
    let size = layered.gates.len();
    let m = circuit.input_count();

    let n = match n_override {
        Some(n) => n,
        None if m >= 1 => m,
        None => (1..)
            .find(|n: &usize| n.checked_pow(q as u32).map_or(false, |b| b >= size))
            .expect("some size fits"),
    };
    if n == 0 {
        return Err(CompileError::EmptyUniverse);
    }
    if m > 2 * n {
        return Err(CompileError::TooManyInputs { inputs: m, n });
    }
    let budget = n.checked_pow(q as u32).unwrap_or(usize::MAX);
    if size > budget {
        let needed = (1..=64)
            .find(|&k| n.checked_pow(k).map_or(true, |b| b >= size))
            .unwrap_or(64);
        return Err(CompileError::SizeExceedsBudget {
            size,
            n,
            q,
            needed,
        });
    }

    // gate encoding: topological position, mixed radix, 1-based digits
    let encode = |pos: usize| -> Vec<usize> {
        let mut digits = vec![1usize; q];
        let mut rest = pos;
        for d in (0..q).rev() {
            digits[d] = rest % n + 1;
            rest /= n;
        }
        digits
    };

    let builtins = build_families(&layered, spec, n, q, m, &encode);

    // which type codes are pulled at each recursion level
    let output_pos = layered
        .gates
        .iter()
        .position(|g| matches!(g.kind, GateKind::Output { .. }))
        .expect("validated");
    let depth = layered.levels[output_pos].unwrap_or(1).max(1);
    let mut pulled: Vec<Vec<usize>> = vec![Vec::new(); depth + 1];
    pulled[depth].push(output_pos);
    for d in (1..=depth).rev() {
        let mut next: Vec<usize> = Vec::new();
        for &pos in &pulled[d] {
            let gate = &layered.gates[pos];
            if !gate.kind.is_source() {
                next.extend(gate.preds.iter().copied());
            }
        }
        next.sort();
        next.dedup();
        pulled[d - 1] = next;
    }
    let types_at: Vec<Vec<u8>> = pulled
        .iter()
        .map(|poss| {
            let mut codes: Vec<u8> = poss
                .iter()
                .map(|&p| layered.gates[p].kind.type_code())
                .collect();
            codes.sort();
            codes.dedup();
            codes
        })
        .collect();
    // level 0 must only hold sources
    if types_at[0].iter().any(|&c| c != 1 && c != 2) {
        return Err(CompileError::NotNormalized);
    }

    let phi_depth = build_phi(depth, 0, q, n, m, &types_at);
    let top_vars = bank_names(0, q);
    let sentence = exists_chain(
        &top_vars,
        Formula::and(guard(5, &top_vars), phi_depth),
    );

    Ok((sentence, builtins))
}

/// phi_d instantiated with the variable bank `bank`.
fn build_phi(
    d: usize,
    bank: usize,
    q: usize,
    n: usize,
    m: usize,
    types_at: &[Vec<u8>],
) -> Formula {
    let vars = bank_names(bank, q);
    if d == 0 {
        let mut parts: Vec<Formula> = Vec::new();
        if m >= 1 {
            let u = "u".to_string();
            let mut in_vars = vars.clone();
            in_vars.push(u.clone());
            parts.push(Formula::Exists(
                u.clone(),
                Box::new(Formula::and(
                    atom("inp", &in_vars),
                    Formula::Atom("R".to_string(), vec![u.clone()]),
                )),
            ));
            if m > n {
                parts.push(Formula::Exists(
                    u.clone(),
                    Box::new(Formula::and(
                        atom("inn", &in_vars),
                        Formula::NegAtom("R".to_string(), vec![u]),
                    )),
                ));
            }
        }
        if types_at[0].contains(&2) || parts.is_empty() {
            parts.push(atom("c", &vars));
        }
        return or_all(parts);
    }

    let child_bank = (bank + 1) % 3;
    let pair_bank = (bank + 2) % 3;
    let child_vars = bank_names(child_bank, q);
    let pair_vars = bank_names(pair_bank, q);
    let edge_to = |from: &[String]| {
        let mut args = from.to_vec();
        args.extend(vars.iter().cloned());
        args
    };

    let mut cases: Vec<Formula> = Vec::new();
    for &code in &types_at[d] {
        let body = match code {
            2 => atom("c", &vars),
            3 | 5 => exists_chain(
                &child_vars,
                Formula::and(
                    atom("e", &edge_to(&child_vars)),
                    build_phi(d - 1, child_bank, q, n, m, types_at),
                ),
            ),
            4 => forall_chain(
                &child_vars,
                Formula::or(
                    neg_atom("e", &edge_to(&child_vars)),
                    Formula::and(
                        atom("e", &edge_to(&child_vars)),
                        build_phi(d - 1, child_bank, q, n, m, types_at),
                    ),
                ),
            ),
            6 | 7 | 8 | 9 => {
                let op = match code {
                    6 => CompareOp::Eq,
                    7 => CompareOp::Neq,
                    8 => CompareOp::Leq,
                    _ => CompareOp::NotLeq,
                };
                let mut left_args = child_vars.clone();
                left_args.extend(pair_vars.iter().cloned());
                let compare = Formula::compare(
                    op,
                    build_phi(d - 1, child_bank, q, n, m, types_at),
                    build_phi(d - 1, pair_bank, q, n, m, types_at),
                );
                exists_chain(
                    &child_vars,
                    exists_chain(
                        &pair_vars,
                        and_all(vec![
                            atom("e", &edge_to(&child_vars)),
                            atom("e", &edge_to(&pair_vars)),
                            atom("left", &left_args),
                            compare,
                        ]),
                    ),
                )
            }
            other => unreachable!("type {other} cannot be pulled at level {d}"),
        };
        cases.push(Formula::and(guard(code, &vars), body));
    }
    or_all(cases)
}

fn build_families(
    layered: &Layered,
    spec: &SemiringSpec,
    n: usize,
    q: usize,
    m: usize,
    encode: &dyn Fn(usize) -> Vec<usize>,
) -> StructureBuiltins {
    let size = layered.gates.len();
    let zero = spec.zero();
    let one = spec.one();
    let indicator = |b: bool| if b { one.clone() } else { zero.clone() };

    // tuple -> gate position for all encoded gates
    let mut gate_at: HashMap<Vec<usize>, usize> = HashMap::new();
    for pos in 0..size {
        gate_at.insert(encode(pos), pos);
    }
    // ordered predecessor pairs of relation gates
    let mut left_pairs: std::collections::HashSet<(usize, usize)> = Default::default();
    // edges as (pred pos, succ pos)
    let mut edges: std::collections::HashSet<(usize, usize)> = Default::default();
    for (pos, gate) in layered.gates.iter().enumerate() {
        for &p in &gate.preds {
            edges.insert((p, pos));
        }
        if matches!(gate.kind, GateKind::Rel(_)) {
            left_pairs.insert((gate.preds[0], gate.preds[1]));
        }
    }
    // input slot per gate position
    let mut input_slot: HashMap<usize, usize> = HashMap::new();
    {
        let mut slots: Vec<(usize, usize)> = layered
            .gates
            .iter()
            .enumerate()
            .filter_map(|(pos, g)| match g.kind {
                GateKind::Input { index } => Some((index, pos)),
                _ => None,
            })
            .collect();
        slots.sort();
        for (slot, pos) in slots {
            input_slot.insert(pos, slot);
        }
    }

    let mut rho = BuiltinInterpretation::new();
    let mut sigma = Vec::new();

    let all_tuples = |arity: usize| kfo_logic::tuples(n, arity);
    // kfo_logic::tuples yields 0-based entries; shift to ranks
    let to_ranks = |t: &[usize]| -> Vec<usize> { t.iter().map(|x| x + 1).collect() };

    // an indicator family and its complement from a predicate on tuples
    let mut insert_indicator =
        |rho: &mut BuiltinInterpretation,
         sigma: &mut Vec<RelSymbol>,
         name: &str,
         arity: usize,
         pred: &dyn Fn(&[usize]) -> bool| {
            let mut pos_rows = Vec::new();
            let mut neg_rows = Vec::new();
            for t in all_tuples(arity) {
                let ranks = to_ranks(&t);
                let set = pred(&ranks);
                pos_rows.push((n, ranks.clone(), indicator(set)));
                neg_rows.push((n, ranks, indicator(!set)));
            }
            rho.insert(name, false, BuiltinFamily::table_from_rows(pos_rows));
            rho.insert(name, true, BuiltinFamily::table_from_rows(neg_rows));
            sigma.push(RelSymbol::new(name, arity));
        };

    // t1..t4: type-code bits
    for bit in 1..=4usize {
        let name = format!("t{bit}");
        insert_indicator(&mut rho, &mut sigma, &name, q, &|ranks| {
            gate_at
                .get(ranks)
                .map_or(false, |&p| type_bit(layered.gates[p].kind.type_code(), bit))
        });
    }

    // c: constant values (negative polarity: zero-ness indicator)
    {
        let mut pos_rows = Vec::new();
        let mut neg_rows = Vec::new();
        for t in all_tuples(q) {
            let ranks = to_ranks(&t);
            let value = gate_at
                .get(&ranks)
                .and_then(|&p| match &layered.gates[p].kind {
                    GateKind::Constant(c) => Some(c.clone()),
                    _ => None,
                })
                .unwrap_or_else(|| zero.clone());
            neg_rows.push((n, ranks.clone(), indicator(value == zero)));
            pos_rows.push((n, ranks, value));
        }
        rho.insert("c", false, BuiltinFamily::table_from_rows(pos_rows));
        rho.insert("c", true, BuiltinFamily::table_from_rows(neg_rows));
        sigma.push(RelSymbol::new("c", q));
    }

    // inp / inn: y-th input gate of the positive/negative block
    for (name, base) in [("inp", 0usize), ("inn", n)] {
        insert_indicator(&mut rho, &mut sigma, name, q + 1, &|ranks| {
            let (gate_part, y) = (&ranks[..q], ranks[q]);
            gate_at.get(gate_part).map_or(false, |&p| {
                input_slot
                    .get(&p)
                    .map_or(false, |&slot| slot < m && slot == base + y - 1)
            })
        });
    }

    // e / left over gate pairs
    for (name, set_of_pairs) in [("e", &edges), ("left", &left_pairs)] {
        insert_indicator(&mut rho, &mut sigma, name, 2 * q, &|ranks| {
            let (a, b) = (&ranks[..q], &ranks[q..]);
            match (gate_at.get(a), gate_at.get(b)) {
                (Some(&pa), Some(&pb)) => set_of_pairs.contains(&(pa, pb)),
                _ => false,
            }
        });
    }

    StructureBuiltins {
        sigma,
        rho,
        universe_size: n,
        q,
        tau: vec![RelSymbol::new("R", 1)],
    }
}
