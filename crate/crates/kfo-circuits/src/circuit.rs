use std::collections::HashMap;

use thiserror::Error;

use kfo_semiring::{Element, SemiringError, SemiringSpec};

/// Relation gate operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelOp {
    Eq,
    Neq,
    Leq,
    NotLeq,
}

impl RelOp {
    pub fn needs_order(self) -> bool {
        matches!(self, RelOp::Leq | RelOp::NotLeq)
    }
}

/// Gate payloads. Type codes follow the standard association
/// input 1, constant 2, `+` 3, `*` 4, output 5, `=` 6, `!=` 7, `<=` 8,
/// `!<=` 9.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Input { index: usize },
    Constant(Element),
    Add,
    Mul,
    Output { index: usize },
    Rel(RelOp),
}

impl GateKind {
    pub fn type_code(&self) -> u8 {
        match self {
            GateKind::Input { .. } => 1,
            GateKind::Constant(_) => 2,
            GateKind::Add => 3,
            GateKind::Mul => 4,
            GateKind::Output { .. } => 5,
            GateKind::Rel(RelOp::Eq) => 6,
            GateKind::Rel(RelOp::Neq) => 7,
            GateKind::Rel(RelOp::Leq) => 8,
            GateKind::Rel(RelOp::NotLeq) => 9,
        }
    }

    pub fn is_source(&self) -> bool {
        matches!(self, GateKind::Input { .. } | GateKind::Constant(_))
    }
}

/// One gate: an id (unique within the circuit), a kind, and the ordered
/// predecessor list.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub id: usize,
    pub kind: GateKind,
    pub preds: Vec<usize>,
}

/// A circuit over a fixed semiring. The gate list must be topologically
/// ordered (predecessors first).
#[derive(Debug, Clone)]
pub struct Circuit {
    pub spec: SemiringSpec,
    pub gates: Vec<Gate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit is not well-formed: {0}")]
    Invalid(String),

    #[error("expected {expected} inputs, got {got}")]
    InputArity { expected: usize, got: usize },

    #[error("gate {gate}: order gate used over unordered semiring")]
    UnorderedRelGate { gate: usize },

    #[error("unknown gate id {0}")]
    UnknownGate(usize),

    #[error("bad circuit file at line {line}: {msg}")]
    FileFormat { line: usize, msg: String },

    #[error(transparent)]
    Semiring(#[from] SemiringError),
}

impl Circuit {
    pub fn new(spec: SemiringSpec, gates: Vec<Gate>) -> Circuit {
        Circuit { spec, gates }
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// Map from gate id to position in the gate list.
    pub fn positions(&self) -> HashMap<usize, usize> {
        self.gates
            .iter()
            .enumerate()
            .map(|(pos, g)| (g.id, pos))
            .collect()
    }

    /// Ids of input gates ordered by their input index.
    pub fn input_order(&self) -> Vec<usize> {
        let mut ins: Vec<(usize, usize)> = self
            .gates
            .iter()
            .filter_map(|g| match g.kind {
                GateKind::Input { index } => Some((index, g.id)),
                _ => None,
            })
            .collect();
        ins.sort();
        ins.into_iter().map(|(_, id)| id).collect()
    }

    /// Ids of output gates ordered by their output index.
    pub fn output_order(&self) -> Vec<usize> {
        let mut outs: Vec<(usize, usize)> = self
            .gates
            .iter()
            .filter_map(|g| match g.kind {
                GateKind::Output { index } => Some((index, g.id)),
                _ => None,
            })
            .collect();
        outs.sort();
        outs.into_iter().map(|(_, id)| id).collect()
    }

    pub fn input_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::Input { .. }))
            .count()
    }

    pub fn output_count(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g.kind, GateKind::Output { .. }))
            .count()
    }

    /// Fan-out (number of outgoing edges, counting multiplicity) per gate
    /// position.
    pub fn fanouts(&self) -> HashMap<usize, usize> {
        let mut out: HashMap<usize, usize> = HashMap::new();
        for g in &self.gates {
            for &p in &g.preds {
                *out.entry(p).or_insert(0) += 1;
            }
        }
        out
    }

    /// Size and depth, where depth is the longest input-to-output path in
    /// edges (0 when there are no input gates).
    pub fn measure(&self) -> (usize, usize) {
        let positions = self.positions();
        // longest path from any input gate, None when unreachable from inputs
        let mut from_input: Vec<Option<usize>> = vec![None; self.gates.len()];
        for (pos, gate) in self.gates.iter().enumerate() {
            from_input[pos] = match gate.kind {
                GateKind::Input { .. } => Some(0),
                _ => gate
                    .preds
                    .iter()
                    .filter_map(|p| from_input[positions[p]])
                    .max()
                    .map(|d| d + 1),
            };
        }
        let depth = self
            .gates
            .iter()
            .enumerate()
            .filter(|(_, g)| matches!(g.kind, GateKind::Output { .. }))
            .filter_map(|(pos, _)| from_input[pos])
            .max()
            .unwrap_or(0);
        (self.gates.len(), depth)
    }
}
