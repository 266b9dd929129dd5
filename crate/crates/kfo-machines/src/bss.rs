//! Register machines over the bi-infinite K-valued state space.
//!
//! The state is a two-sided sequence of semiring values with finitely many
//! non-zeros, addressed by integer coordinates with a conceptual dot
//! between coordinates 0 and 1. Shift-left slides the whole state one
//! coordinate towards minus infinity (`new[i] = old[i+1]`); shift-right is
//! its inverse. Branch nodes compare coordinates 1 and 2.

use std::collections::HashMap;

use kfo_semiring::{Element, SemiringSpec};

use crate::error::MachineError;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchMode {
    Eq,
    Leq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDir {
    Left,
    Right,
}

/// Program nodes, labelled 1..=N by their position: node 1 is the input
/// node, node N the output node.
#[derive(Debug, Clone, PartialEq)]
pub enum BssNode {
    Input { next: usize },
    Output,
    Const { target: i64, value: Element, next: usize },
    Add { target: i64, lhs: i64, rhs: i64, next: usize },
    Mul { target: i64, lhs: i64, rhs: i64, next: usize },
    Branch { mode: BranchMode, yes: usize, no: usize },
    Shift { dir: ShiftDir, next: usize },
}

impl BssNode {
    fn targets(&self) -> Vec<usize> {
        match self {
            BssNode::Input { next }
            | BssNode::Const { next, .. }
            | BssNode::Add { next, .. }
            | BssNode::Mul { next, .. }
            | BssNode::Shift { next, .. } => vec![*next],
            BssNode::Branch { yes, no, .. } => vec![*yes, *no],
            BssNode::Output => vec![],
        }
    }
}

#[derive(Debug, Clone)]
pub struct BssProgram {
    pub spec: SemiringSpec,
    pub nodes: Vec<BssNode>,
}

impl BssProgram {
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if n < 2 {
            return Err(MachineError::Malformed(
                "a program needs at least an input and an output node".into(),
            ));
        }
        if !matches!(self.nodes[0], BssNode::Input { .. }) {
            return Err(MachineError::Malformed("node 1 must be the input node".into()));
        }
        if !matches!(self.nodes[n - 1], BssNode::Output) {
            return Err(MachineError::Malformed(format!(
                "node {n} must be the output node"
            )));
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if i > 0 && matches!(node, BssNode::Input { .. }) {
                return Err(MachineError::Malformed(format!(
                    "node {} is a second input node",
                    i + 1
                )));
            }
            if i + 1 < n && matches!(node, BssNode::Output) {
                return Err(MachineError::Malformed(format!(
                    "node {} is a second output node",
                    i + 1
                )));
            }
            for t in node.targets() {
                if t < 1 || t > n {
                    return Err(MachineError::DanglingTarget {
                        node: i + 1,
                        target: t,
                    });
                }
            }
        }
        Ok(())
    }
}

/// Sparse machine state. Shifts adjust an offset instead of rewriting the
/// map, so they cost O(1); touched-coordinate accounting uses absolute
/// (shift-independent) positions.
#[derive(Debug, Clone)]
pub struct BssState {
    cells: HashMap<i64, Element>,
    offset: i64,
    zero: Element,
    touched: Option<(i64, i64)>,
}

impl BssState {
    pub fn empty(spec: &SemiringSpec) -> BssState {
        BssState {
            cells: HashMap::new(),
            offset: 0,
            zero: spec.zero(),
            touched: None,
        }
    }

    fn touch(&mut self, physical: i64) {
        self.touched = Some(match self.touched {
            None => (physical, physical),
            Some((lo, hi)) => (lo.min(physical), hi.max(physical)),
        });
    }

    /// Value at logical coordinate `i` (default zero).
    pub fn get(&mut self, i: i64) -> Element {
        let physical = i + self.offset;
        self.touch(physical);
        self.cells.get(&physical).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Read without touching (for inspection in tests and traces).
    pub fn peek(&self, i: i64) -> Element {
        self.cells
            .get(&(i + self.offset))
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    pub fn set(&mut self, i: i64, value: Element) {
        let physical = i + self.offset;
        self.touch(physical);
        if value == self.zero {
            self.cells.remove(&physical);
        } else {
            self.cells.insert(physical, value);
        }
    }

    pub fn shift(&mut self, dir: ShiftDir) {
        match dir {
            ShiftDir::Left => self.offset += 1,
            ShiftDir::Right => self.offset -= 1,
        }
    }

    pub fn nonzero_count(&self) -> usize {
        self.cells.len()
    }

    /// Touched span in coordinates (0 when nothing was accessed).
    pub fn span(&self) -> u64 {
        match self.touched {
            None => 0,
            Some((lo, hi)) => (hi - lo + 1) as u64,
        }
    }

    /// Logical coordinates of all non-zero cells, sorted.
    pub fn nonzero_coords(&self) -> Vec<i64> {
        let mut coords: Vec<i64> = self.cells.keys().map(|p| p - self.offset).collect();
        coords.sort();
        coords
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BssStats {
    pub steps: u64,
    pub span: u64,
}

/// Places `input` in the machine's starting state: the input length in
/// unary on the negative side, the values on the positive side.
pub fn initial_state(spec: &SemiringSpec, input: &[Element]) -> BssState {
    let mut state = BssState::empty(spec);
    let one = spec.one();
    for (j, x) in input.iter().enumerate() {
        state.set(-(j as i64) - 1, one.clone());
        state.set(j as i64 + 1, x.clone());
    }
    state
}

/// Reads the output: the run of consecutive ones starting at coordinate -1
/// gives the length, the values sit at coordinates 1..=len.
pub fn extract_output(spec: &SemiringSpec, state: &BssState) -> Vec<Element> {
    let one = spec.one();
    let mut len = 0i64;
    while state.peek(-len - 1) == one {
        len += 1;
    }
    (1..=len).map(|i| state.peek(i)).collect()
}

pub type TraceFn<'a> = &'a mut dyn FnMut(u64, usize, &BssState);

/// Runs the program on a prepared state. Counts one step per executed
/// non-output node.
pub fn run_from_state(
    program: &BssProgram,
    mut state: BssState,
    step_limit: u64,
    mut trace: Option<TraceFn<'_>>,
) -> Result<(BssState, BssStats)> {
    program.validate()?;
    let spec = &program.spec;
    let mut node = 1usize;
    let mut steps: u64 = 0;
    loop {
        if let Some(t) = trace.as_deref_mut() {
            t(steps, node, &state);
        }
        match &program.nodes[node - 1] {
            BssNode::Output => {
                let stats = BssStats {
                    steps,
                    span: state.span(),
                };
                return Ok((state, stats));
            }
            other => {
                if steps >= step_limit {
                    return Err(MachineError::StepLimit(step_limit));
                }
                steps += 1;
                node = match other {
                    BssNode::Input { next } => *next,
                    BssNode::Const { target, value, next } => {
                        state.set(*target, value.clone());
                        *next
                    }
                    BssNode::Add { target, lhs, rhs, next } => {
                        let v = spec.add(&state.get(*lhs), &state.get(*rhs))?;
                        state.set(*target, v);
                        *next
                    }
                    BssNode::Mul { target, lhs, rhs, next } => {
                        let v = spec.mul(&state.get(*lhs), &state.get(*rhs))?;
                        state.set(*target, v);
                        *next
                    }
                    BssNode::Branch { mode, yes, no } => {
                        let a = state.get(1);
                        let b = state.get(2);
                        let holds = match mode {
                            BranchMode::Eq => a == b,
                            BranchMode::Leq => {
                                if !spec.ordered {
                                    return Err(MachineError::UnorderedBranch);
                                }
                                spec.leq(&a, &b)?
                            }
                        };
                        if holds {
                            *yes
                        } else {
                            *no
                        }
                    }
                    BssNode::Shift { dir, next } => {
                        state.shift(*dir);
                        *next
                    }
                    BssNode::Output => unreachable!(),
                };
            }
        }
    }
}

/// Full run: input mapping, program execution, output mapping.
pub fn bss_run(
    program: &BssProgram,
    input: &[Element],
    step_limit: u64,
    trace: Option<TraceFn<'_>>,
) -> Result<(Vec<Element>, BssStats)> {
    for x in input {
        if !program.spec.contains(x) {
            return Err(MachineError::Semiring(
                kfo_semiring::SemiringError::InstanceMismatch {
                    expected: program.spec.id,
                    found: x.to_string(),
                },
            ));
        }
    }
    let state = initial_state(&program.spec, input);
    let (state, stats) = run_from_state(program, state, step_limit, trace)?;
    Ok((extract_output(&program.spec, &state), stats))
}
