//! A small two-pass assembler for building register-machine programs with
//! forward labels.
//!
//! Node positions are assigned as nodes are emitted; labels are patched at
//! `finish` time. Copies are expanded into the two primitive nodes
//! `target := 0; target := target + source`, so no scratch coordinate is
//! ever needed for data movement.

use std::collections::HashMap;

use kfo_semiring::{Element, SemiringSpec};

use crate::bss::{BranchMode, BssNode, BssProgram, ShiftDir};
use crate::error::MachineError;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Label(usize);

#[derive(Debug, Clone, Copy)]
enum Target {
    Label(Label),
    Fallthrough,
}

#[derive(Debug, Clone)]
enum Draft {
    Input { next: Target },
    Output,
    Const { target: i64, value: Element, next: Target },
    Add { target: i64, lhs: i64, rhs: i64, next: Target },
    Mul { target: i64, lhs: i64, rhs: i64, next: Target },
    Branch { mode: BranchMode, yes: Target, no: Target },
    Shift { dir: ShiftDir, next: Target },
}

/// Program builder.
pub struct Asm {
    spec: SemiringSpec,
    drafts: Vec<Draft>,
    bound: HashMap<Label, usize>,
    next_label: usize,
}

impl Asm {
    pub fn new(spec: SemiringSpec) -> Asm {
        let mut asm = Asm {
            spec,
            drafts: Vec::new(),
            bound: HashMap::new(),
            next_label: 0,
        };
        asm.drafts.push(Draft::Input {
            next: Target::Fallthrough,
        });
        asm
    }

    pub fn spec(&self) -> &SemiringSpec {
        &self.spec
    }

    /// Number of nodes emitted so far (used for constant accounting).
    pub fn len(&self) -> usize {
        self.drafts.len()
    }

    pub fn fresh_label(&mut self) -> Label {
        let l = Label(self.next_label);
        self.next_label += 1;
        l
    }

    /// Binds `label` to the next emitted node.
    pub fn bind(&mut self, label: Label) {
        let pos = self.drafts.len();
        let prev = self.bound.insert(label, pos);
        assert!(prev.is_none(), "label bound twice");
    }

    pub fn here(&mut self) -> Label {
        let l = self.fresh_label();
        self.bind(l);
        l
    }

    pub fn set_const(&mut self, target: i64, value: Element) {
        self.drafts.push(Draft::Const {
            target,
            value,
            next: Target::Fallthrough,
        });
    }

    pub fn add(&mut self, target: i64, lhs: i64, rhs: i64) {
        self.drafts.push(Draft::Add {
            target,
            lhs,
            rhs,
            next: Target::Fallthrough,
        });
    }

    pub fn mul(&mut self, target: i64, lhs: i64, rhs: i64) {
        self.drafts.push(Draft::Mul {
            target,
            lhs,
            rhs,
            next: Target::Fallthrough,
        });
    }

    /// `target := source` via zero-then-accumulate.
    pub fn copy(&mut self, target: i64, source: i64) {
        assert_ne!(target, source, "self-copy would zero the value");
        self.set_const(target, self.spec.zero());
        self.add(target, target, source);
    }

    pub fn shift(&mut self, dir: ShiftDir) {
        self.drafts.push(Draft::Shift {
            dir,
            next: Target::Fallthrough,
        });
    }

    pub fn shift_many(&mut self, dir: ShiftDir, count: usize) {
        for _ in 0..count {
            self.shift(dir);
        }
    }

    /// Branch on coordinates 1 and 2.
    pub fn branch(&mut self, mode: BranchMode, yes: Label, no: Label) {
        self.drafts.push(Draft::Branch {
            mode,
            yes: Target::Label(yes),
            no: Target::Label(no),
        });
    }

    /// Branch whose no-side falls through to the next node.
    pub fn branch_yes(&mut self, mode: BranchMode, yes: Label) {
        let no = self.fresh_label();
        self.drafts.push(Draft::Branch {
            mode,
            yes: Target::Label(yes),
            no: Target::Label(no),
        });
        self.bind(no);
    }

    /// Branch whose yes-side falls through to the next node.
    pub fn branch_no(&mut self, mode: BranchMode, no: Label) {
        let yes = self.fresh_label();
        self.drafts.push(Draft::Branch {
            mode,
            yes: Target::Label(yes),
            no: Target::Label(no),
        });
        self.bind(yes);
    }

    /// Unconditional jump: a branch with both arms on the target. Reads
    /// coordinates 1 and 2 but writes nothing.
    pub fn goto(&mut self, label: Label) {
        self.drafts.push(Draft::Branch {
            mode: BranchMode::Eq,
            yes: Target::Label(label),
            no: Target::Label(label),
        });
    }

    /// Emits the output node and resolves labels.
    pub fn finish(mut self) -> Result<BssProgram> {
        self.drafts.push(Draft::Output);
        let n = self.drafts.len();
        let resolve = |t: &Target, pos: usize, bound: &HashMap<Label, usize>| -> Result<usize> {
            match t {
                Target::Fallthrough => Ok(pos + 2), // next node, 1-based
                Target::Label(l) => bound
                    .get(l)
                    .map(|p| p + 1)
                    .ok_or_else(|| MachineError::Malformed(format!(
                        "unbound label at node {}",
                        pos + 1
                    ))),
            }
        };
        let mut nodes = Vec::with_capacity(n);
        for (pos, draft) in self.drafts.iter().enumerate() {
            let node = match draft {
                Draft::Input { next } => BssNode::Input {
                    next: resolve(next, pos, &self.bound)?,
                },
                Draft::Output => BssNode::Output,
                Draft::Const { target, value, next } => BssNode::Const {
                    target: *target,
                    value: value.clone(),
                    next: resolve(next, pos, &self.bound)?,
                },
                Draft::Add { target, lhs, rhs, next } => BssNode::Add {
                    target: *target,
                    lhs: *lhs,
                    rhs: *rhs,
                    next: resolve(next, pos, &self.bound)?,
                },
                Draft::Mul { target, lhs, rhs, next } => BssNode::Mul {
                    target: *target,
                    lhs: *lhs,
                    rhs: *rhs,
                    next: resolve(next, pos, &self.bound)?,
                },
                Draft::Branch { mode, yes, no } => BssNode::Branch {
                    mode: *mode,
                    yes: resolve(yes, pos, &self.bound)?,
                    no: resolve(no, pos, &self.bound)?,
                },
                Draft::Shift { dir, next } => BssNode::Shift {
                    dir: *dir,
                    next: resolve(next, pos, &self.bound)?,
                },
            };
            nodes.push(node);
        }
        let program = BssProgram {
            spec: self.spec,
            nodes,
        };
        program.validate()?;
        Ok(program)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bss::bss_run;
    use kfo_semiring::Element;

    #[test]
    fn copy_and_loop_assemble() {
        let spec = SemiringSpec::nat();
        let mut asm = Asm::new(spec.clone());
        // y1 := x2 (copy), then done
        asm.copy(1, 2);
        asm.set_const(-2, spec.zero());
        let program = asm.finish().unwrap();
        let (out, _) = bss_run(&program, &[Element::nat(7), Element::nat(9)], 100, None).unwrap();
        assert_eq!(out, vec![Element::nat(9)]);
    }

    #[test]
    fn goto_jumps_forward() {
        let spec = SemiringSpec::nat();
        let mut asm = Asm::new(spec.clone());
        let skip = asm.fresh_label();
        asm.goto(skip);
        // skipped: would zero the whole input header
        asm.set_const(-1, spec.zero());
        asm.bind(skip);
        asm.set_const(-2, spec.zero());
        let program = asm.finish().unwrap();
        let (out, _) = bss_run(&program, &[Element::nat(4), Element::nat(6)], 100, None).unwrap();
        assert_eq!(out, vec![Element::nat(4)]);
    }
}
