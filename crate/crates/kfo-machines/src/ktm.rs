//! K-valued Turing machines: tape cells hold either alphabet symbols or
//! semiring values, branching on value cells goes through register
//! comparisons, and write actions may apply register arithmetic.

use std::collections::HashMap;

use kfo_semiring::{Element, SemiringSpec};

use crate::error::MachineError;
use crate::Result;

/// A tape cell content: an alphabet symbol or a semiring value.
#[derive(Debug, Clone, PartialEq)]
pub enum TapeSymbol {
    Mark(String),
    Value(Element),
}

impl std::fmt::Display for TapeSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TapeSymbol::Mark(s) => write!(f, "{s}"),
            TapeSymbol::Value(v) => write!(f, "{v}"),
        }
    }
}

/// Comparison operators available to branch predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BranchOp {
    Eq,
    Leq,
}

/// Lookup key of the transition function: an alphabet symbol, or the truth
/// value of the state's register comparison when the cell holds a value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DeltaKey {
    Sym(String),
    Truth(bool),
}

/// The write component of a transition.
#[derive(Debug, Clone, PartialEq)]
pub enum WriteOp {
    Sym(String),
    Value(Element),
    Id,
    /// Write `cell (+|*) register` onto the cell; only defined on value
    /// cells, otherwise the machine halts.
    Add(String),
    Mul(String),
}

/// Tape movement. `Left`/`Right` name the direction the *tape* slides, so
/// `Left` reads as the head stepping right.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    Left,
    Stay,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaAction {
    pub next: String,
    pub write: WriteOp,
    pub set_registers: Vec<String>,
    pub shift: Move,
}

#[derive(Debug, Clone)]
pub struct KtmProgram {
    pub spec: SemiringSpec,
    pub states: Vec<String>,
    pub initial: String,
    pub registers: Vec<String>,
    /// Tape alphabet (always contains the blank).
    pub alphabet: Vec<String>,
    pub blank: String,
    /// Alphabet symbols allowed in inputs; semiring values are always
    /// allowed when `value_inputs` is set.
    pub input_symbols: Vec<String>,
    pub value_inputs: bool,
    /// Branch predicate per state, used when reading a value cell.
    pub predicate: HashMap<String, (BranchOp, String)>,
    pub delta: HashMap<(String, DeltaKey), DeltaAction>,
}

impl KtmProgram {
    pub fn validate(&self) -> Result<()> {
        if !self.states.contains(&self.initial) {
            return Err(MachineError::UnknownState(self.initial.clone()));
        }
        if !self.alphabet.contains(&self.blank) {
            return Err(MachineError::UnknownSymbol(self.blank.clone()));
        }
        for s in &self.input_symbols {
            if !self.alphabet.contains(s) || s == &self.blank {
                return Err(MachineError::BadInputSymbol(s.clone()));
            }
        }
        for (state, (op, reg)) in &self.predicate {
            if !self.states.contains(state) {
                return Err(MachineError::UnknownState(state.clone()));
            }
            if !self.registers.contains(reg) {
                return Err(MachineError::UnknownRegister(reg.clone()));
            }
            if *op == BranchOp::Leq && !self.spec.ordered {
                return Err(MachineError::UnorderedBranch);
            }
        }
        for ((state, key), action) in &self.delta {
            if !self.states.contains(state) || !self.states.contains(&action.next) {
                return Err(MachineError::UnknownState(state.clone()));
            }
            if let DeltaKey::Sym(s) = key {
                if !self.alphabet.contains(s) {
                    return Err(MachineError::UnknownSymbol(s.clone()));
                }
            }
            match &action.write {
                WriteOp::Sym(s) if !self.alphabet.contains(s) => {
                    return Err(MachineError::UnknownSymbol(s.clone()));
                }
                WriteOp::Add(r) | WriteOp::Mul(r) if !self.registers.contains(r) => {
                    return Err(MachineError::UnknownRegister(r.clone()));
                }
                _ => {}
            }
            for r in &action.set_registers {
                if !self.registers.contains(r) {
                    return Err(MachineError::UnknownRegister(r.clone()));
                }
            }
        }
        Ok(())
    }
}

/// A machine configuration: tape, head, state, registers.
#[derive(Debug, Clone)]
pub struct KtmConfig {
    pub tape: HashMap<i64, TapeSymbol>,
    pub head: i64,
    pub state: String,
    pub registers: HashMap<String, Element>,
    min_head: i64,
    max_head: i64,
}

impl KtmConfig {
    pub fn cell(&self, position: i64, blank: &str) -> TapeSymbol {
        self.tape
            .get(&position)
            .cloned()
            .unwrap_or_else(|| TapeSymbol::Mark(blank.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KtmStats {
    pub steps: u64,
    pub span: u64,
}

/// Builds the starting configuration for an input.
pub fn ktm_initial_config(program: &KtmProgram, input: &[TapeSymbol]) -> Result<KtmConfig> {
    let mut tape = HashMap::new();
    for (i, sym) in input.iter().enumerate() {
        match sym {
            TapeSymbol::Mark(s) => {
                if !program.input_symbols.contains(s) {
                    return Err(MachineError::BadInputSymbol(s.clone()));
                }
            }
            TapeSymbol::Value(v) => {
                if !program.value_inputs {
                    return Err(MachineError::BadInputSymbol(v.to_string()));
                }
                if !program.spec.contains(v) {
                    return Err(MachineError::Semiring(
                        kfo_semiring::SemiringError::InstanceMismatch {
                            expected: program.spec.id,
                            found: v.to_string(),
                        },
                    ));
                }
            }
        }
        tape.insert(i as i64 + 1, sym.clone());
    }
    let registers = program
        .registers
        .iter()
        .map(|r| (r.clone(), program.spec.zero()))
        .collect();
    Ok(KtmConfig {
        tape,
        head: 1,
        state: program.initial.clone(),
        registers,
        min_head: 1,
        max_head: 1,
    })
}

/// Runs the machine until it halts, returning the final configuration.
pub fn ktm_run_config(
    program: &KtmProgram,
    mut config: KtmConfig,
    step_limit: u64,
) -> Result<(KtmConfig, KtmStats)> {
    program.validate()?;
    let spec = &program.spec;
    let mut steps = 0u64;
    loop {
        let cell = config.cell(config.head, &program.blank);
        let key = match &cell {
            TapeSymbol::Mark(s) => DeltaKey::Sym(s.clone()),
            TapeSymbol::Value(v) => {
                let (op, reg) = match program.predicate.get(&config.state) {
                    Some(p) => p,
                    // no predicate for a state reading a value cell: halt
                    None => break,
                };
                let x = &config.registers[reg];
                let truth = match op {
                    BranchOp::Eq => v == x,
                    BranchOp::Leq => spec.leq(v, x)?,
                };
                DeltaKey::Truth(truth)
            }
        };
        let action = match program.delta.get(&(config.state.clone(), key)) {
            Some(a) => a.clone(),
            None => break, // undefined transition: halt
        };
        // ill-typed combinations halt the machine without transitioning
        let is_value_cell = matches!(cell, TapeSymbol::Value(_));
        if matches!(action.write, WriteOp::Add(_) | WriteOp::Mul(_)) && !is_value_cell {
            break;
        }
        if !action.set_registers.is_empty() && !is_value_cell {
            break;
        }
        if steps >= step_limit {
            return Err(MachineError::StepLimit(step_limit));
        }
        steps += 1;

        // write (reads the original cell and the pre-transition register)
        match &action.write {
            WriteOp::Id => {}
            WriteOp::Sym(s) => {
                config
                    .tape
                    .insert(config.head, TapeSymbol::Mark(s.clone()));
            }
            WriteOp::Value(v) => {
                config
                    .tape
                    .insert(config.head, TapeSymbol::Value(v.clone()));
            }
            WriteOp::Add(r) | WriteOp::Mul(r) => {
                let a = match &cell {
                    TapeSymbol::Value(v) => v,
                    TapeSymbol::Mark(_) => unreachable!("checked above"),
                };
                let x = &config.registers[r];
                let v = match action.write {
                    WriteOp::Add(_) => spec.add(a, x)?,
                    _ => spec.mul(a, x)?,
                };
                config.tape.insert(config.head, TapeSymbol::Value(v));
            }
        }
        // register assignment from the original cell value
        if let TapeSymbol::Value(a) = &cell {
            for r in &action.set_registers {
                config.registers.insert(r.clone(), a.clone());
            }
        }
        // the tape slides; equivalently the head steps the other way
        match action.shift {
            Move::Left => config.head += 1,
            Move::Right => config.head -= 1,
            Move::Stay => {}
        }
        config.min_head = config.min_head.min(config.head);
        config.max_head = config.max_head.max(config.head);
        config.state = action.next;
    }
    let stats = KtmStats {
        steps,
        span: (config.max_head - config.min_head + 1) as u64,
    };
    Ok((config, stats))
}

/// Full run: input mapping, execution, output extraction (cells from the
/// head rightwards up to the first blank).
pub fn ktm_run(
    program: &KtmProgram,
    input: &[TapeSymbol],
    step_limit: u64,
) -> Result<(Vec<TapeSymbol>, KtmStats)> {
    let config = ktm_initial_config(program, input)?;
    let (config, stats) = ktm_run_config(program, config, step_limit)?;
    let mut out = Vec::new();
    let mut pos = config.head;
    loop {
        match config.cell(pos, &program.blank) {
            TapeSymbol::Mark(s) if s == program.blank => break,
            sym => out.push(sym),
        }
        pos += 1;
    }
    Ok((out, stats))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn values(xs: &[u64]) -> Vec<TapeSymbol> {
        xs.iter().map(|&x| TapeSymbol::Value(Element::nat(x))).collect()
    }

    /// Multiplies every input cell by the first value, which is stored in
    /// a register on the first step.
    pub(crate) fn register_multiplier(spec: SemiringSpec) -> KtmProgram {
        let mut delta = HashMap::new();
        // q0: store x1 into r, multiply the cell by r (so x1 becomes
        // x1 * x1? no: store first, then the multiply in q1 reads r)
        delta.insert(
            ("q0".to_string(), DeltaKey::Truth(true)),
            DeltaAction {
                next: "q1".to_string(),
                write: WriteOp::Id,
                set_registers: vec!["r".to_string()],
                shift: Move::Stay,
            },
        );
        delta.insert(
            ("q0".to_string(), DeltaKey::Truth(false)),
            DeltaAction {
                next: "q1".to_string(),
                write: WriteOp::Id,
                set_registers: vec!["r".to_string()],
                shift: Move::Stay,
            },
        );
        // q1: multiply cell by r and move right (tape slides left)
        delta.insert(
            ("q1".to_string(), DeltaKey::Truth(true)),
            DeltaAction {
                next: "q1".to_string(),
                write: WriteOp::Mul("r".to_string()),
                set_registers: vec![],
                shift: Move::Left,
            },
        );
        delta.insert(
            ("q1".to_string(), DeltaKey::Truth(false)),
            DeltaAction {
                next: "q1".to_string(),
                write: WriteOp::Mul("r".to_string()),
                set_registers: vec![],
                shift: Move::Left,
            },
        );
        // q1 on blank: walk back
        delta.insert(
            ("q1".to_string(), DeltaKey::Sym("b".to_string())),
            DeltaAction {
                next: "q2".to_string(),
                write: WriteOp::Id,
                set_registers: vec![],
                shift: Move::Right,
            },
        );
        // q2: walk left over values until blank, then step right and halt
        delta.insert(
            ("q2".to_string(), DeltaKey::Truth(true)),
            DeltaAction {
                next: "q2".to_string(),
                write: WriteOp::Id,
                set_registers: vec![],
                shift: Move::Right,
            },
        );
        delta.insert(
            ("q2".to_string(), DeltaKey::Truth(false)),
            DeltaAction {
                next: "q2".to_string(),
                write: WriteOp::Id,
                set_registers: vec![],
                shift: Move::Right,
            },
        );
        delta.insert(
            ("q2".to_string(), DeltaKey::Sym("b".to_string())),
            DeltaAction {
                next: "q3".to_string(),
                write: WriteOp::Id,
                set_registers: vec![],
                shift: Move::Left,
            },
        );
        let mut predicate = HashMap::new();
        for q in ["q0", "q1", "q2", "q3"] {
            predicate.insert(q.to_string(), (BranchOp::Eq, "r".to_string()));
        }
        KtmProgram {
            spec,
            states: ["q0", "q1", "q2", "q3"].map(String::from).to_vec(),
            initial: "q0".to_string(),
            registers: vec!["r".to_string()],
            alphabet: vec!["b".to_string()],
            blank: "b".to_string(),
            input_symbols: vec![],
            value_inputs: true,
            predicate,
            delta,
        }
    }

    #[test]
    fn empty_delta_halts_immediately_output_is_input() {
        let spec = SemiringSpec::nat();
        let program = KtmProgram {
            spec: spec.clone(),
            states: vec!["q0".to_string()],
            initial: "q0".to_string(),
            registers: vec!["r".to_string()],
            alphabet: vec!["b".to_string()],
            blank: "b".to_string(),
            input_symbols: vec![],
            value_inputs: true,
            predicate: HashMap::from([("q0".to_string(), (BranchOp::Eq, "r".to_string()))]),
            delta: HashMap::new(),
        };
        let input = values(&[2, 0, 5]);
        let (out, stats) = ktm_run(&program, &input, 100).unwrap();
        assert_eq!(out, input);
        assert_eq!(stats.steps, 0);
    }

    #[test]
    fn register_multiplier_scales_by_first_value() {
        // hand trace for (2, 3, 4): r := 2, each cell times 2, home, halt
        // with the head back on the first cell: output (4, 6, 8)
        let program = register_multiplier(SemiringSpec::nat());
        let (out, _) = ktm_run(&program, &values(&[2, 3, 4]), 1000).unwrap();
        assert_eq!(out, values(&[4, 6, 8]));
        // singleton: (3) -> (9)
        let (out, _) = ktm_run(&program, &values(&[3]), 1000).unwrap();
        assert_eq!(out, values(&[9]));
    }

    #[test]
    fn tropical_branch_dispatches_on_natural_order() {
        // state q0 with predicate (<=, r): register starts at 0_T = inf,
        // so the branch tests cell <= inf, true only for the cell inf
        let spec = SemiringSpec::tropical();
        let mut delta = HashMap::new();
        delta.insert(
            ("q0".to_string(), DeltaKey::Truth(true)),
            DeltaAction {
                next: "q0".to_string(),
                write: WriteOp::Value(Element::trop(0)),
                set_registers: vec![],
                shift: Move::Stay,
            },
        );
        // false: halt by having no transition
        let program = KtmProgram {
            spec: spec.clone(),
            states: vec!["q0".to_string()],
            initial: "q0".to_string(),
            registers: vec!["r".to_string()],
            alphabet: vec!["b".to_string()],
            blank: "b".to_string(),
            input_symbols: vec![],
            value_inputs: true,
            predicate: HashMap::from([("q0".to_string(), (BranchOp::Leq, "r".to_string()))]),
            delta,
        };
        // inf <= inf: rewrite to 0, then 0 <= inf is false: halt
        let (out, stats) = ktm_run(
            &program,
            &[TapeSymbol::Value(Element::trop_inf())],
            100,
        )
        .unwrap();
        assert_eq!(out, vec![TapeSymbol::Value(Element::trop(0))]);
        assert_eq!(stats.steps, 1);
        // 5 <= inf is false tropically (inf is least): halts at once
        let (out, stats) = ktm_run(&program, &[TapeSymbol::Value(Element::trop(5))], 100).unwrap();
        assert_eq!(out, vec![TapeSymbol::Value(Element::trop(5))]);
        assert_eq!(stats.steps, 0);
    }

    #[test]
    fn ill_typed_actions_halt() {
        // arithmetic write on an alphabet cell halts the machine
        let spec = SemiringSpec::nat();
        let mut delta = HashMap::new();
        delta.insert(
            ("q0".to_string(), DeltaKey::Sym("m".to_string())),
            DeltaAction {
                next: "q0".to_string(),
                write: WriteOp::Add("r".to_string()),
                set_registers: vec![],
                shift: Move::Left,
            },
        );
        let program = KtmProgram {
            spec,
            states: vec!["q0".to_string()],
            initial: "q0".to_string(),
            registers: vec!["r".to_string()],
            alphabet: vec!["b".to_string(), "m".to_string()],
            blank: "b".to_string(),
            input_symbols: vec!["m".to_string()],
            value_inputs: true,
            predicate: HashMap::new(),
            delta,
        };
        let input = vec![TapeSymbol::Mark("m".to_string())];
        let (out, stats) = ktm_run(&program, &input, 100).unwrap();
        assert_eq!(out, input);
        assert_eq!(stats.steps, 0);
    }

    #[test]
    fn step_limit_applies() {
        // endless stay-in-place rewrite
        let spec = SemiringSpec::nat();
        let mut delta = HashMap::new();
        for truth in [true, false] {
            delta.insert(
                ("q0".to_string(), DeltaKey::Truth(truth)),
                DeltaAction {
                    next: "q0".to_string(),
                    write: WriteOp::Id,
                    set_registers: vec![],
                    shift: Move::Stay,
                },
            );
        }
        let program = KtmProgram {
            spec,
            states: vec!["q0".to_string()],
            initial: "q0".to_string(),
            registers: vec!["r".to_string()],
            alphabet: vec!["b".to_string()],
            blank: "b".to_string(),
            input_symbols: vec![],
            value_inputs: true,
            predicate: HashMap::from([("q0".to_string(), (BranchOp::Eq, "r".to_string()))]),
            delta,
        };
        assert_eq!(
            ktm_run(&program, &values(&[1]), 50),
            Err(MachineError::StepLimit(50))
        );
    }
}
