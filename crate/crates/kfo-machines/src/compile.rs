//! Compilation of K-Turing machines to register-machine programs.
//!
//! Tape encoding: each cell is a pair of coordinates `(value, marker)` with
//! marker 1 for a value cell and `(0, 0)` for a blank - the gap normal
//! form, so phase 1 is exactly the Init conversion. The registers live in a
//! fixed zone next to the dot together with two scratch coordinates:
//!
//! ```text
//! ... [left cells] [r_BANKW .. r_1] [s2 s1] . [head cell] [right cells] ...
//!      <= -Z-1       -Z+1 .. -2      -1  0     1    2       3 ...
//! ```
//!
//! with `Z = |R| + 2`. A simulated head move shifts the whole state by one
//! cell and re-copies the bank (and the cell crossing the zone) back into
//! place, so every simulated step costs a bounded number of nodes.
//!
//! Only machines whose tape alphabet is just the blank are supported:
//! cells hold blanks or semiring values, which is the fragment that
//! computes functions from K-strings to K-strings.

use std::collections::HashMap;

use crate::asm::{Asm, Label};
use crate::bss::{BranchMode, BssProgram, ShiftDir};
use crate::error::MachineError;
use crate::gap::{emit_forward, emit_reverse};
use crate::ktm::{BranchOp, DeltaKey, KtmProgram, Move, WriteOp};
use crate::Result;

/// A compiled machine along with the reported constant for the time bound
/// `steps <= c * (t + n^2 + m^2 + 1)`.
#[derive(Debug, Clone)]
pub struct CompiledKtm {
    pub program: BssProgram,
    pub constant: u64,
    /// Width of the register-and-scratch zone at the dot.
    pub zone: usize,
}

struct Ctx {
    /// coordinate of register j (1-based)
    reg: HashMap<String, i64>,
    /// zone width |R| + 2
    z: i64,
}

impl Ctx {
    fn reg_coord(&self, name: &str) -> i64 {
        self.reg[name]
    }
}

const S1: i64 = 0;
const S2: i64 = -1;

pub fn ktm_to_bss(ktm: &KtmProgram) -> Result<CompiledKtm> {
    ktm.validate()?;
    if ktm.alphabet.iter().any(|s| s != &ktm.blank) {
        return Err(MachineError::Malformed(
            "the compiler supports tape alphabets consisting of the blank only".into(),
        ));
    }
    let spec = ktm.spec.clone();
    let zero = spec.zero();
    let one = spec.one();

    let bankw = ktm.registers.len() as i64;
    let z = bankw + 2;
    let ctx = Ctx {
        reg: ktm
            .registers
            .iter()
            .enumerate()
            .map(|(j, r)| (r.clone(), -2 - j as i64))
            .collect(),
        z,
    };

    let mut asm = Asm::new(spec.clone());
    let exit = asm.fresh_label();
    let phase3 = asm.fresh_label();

    // phase 1: the input pairs become the right cell train; the dot zone
    // is zero, which is exactly "all registers start at 0"
    let after_init = asm.fresh_label();
    let init_start = asm.len();
    emit_forward(&mut asm, after_init);
    let init_nodes = (asm.len() - init_start) as u64;
    asm.bind(after_init);

    // phase 2: one dispatch block per state
    let entries: HashMap<String, Label> = ktm
        .states
        .iter()
        .map(|q| (q.clone(), asm.fresh_label()))
        .collect();
    asm.goto(entries[&ktm.initial]);

    let mut max_arm_nodes = 0u64;
    for q in &ktm.states {
        asm.bind(entries[q]);
        let block_start = asm.len();

        let blank_arm = asm.fresh_label();
        let value_arm = asm.fresh_label();

        // blank test: marker (coordinate 2) equal to zero?
        asm.copy(S2, 1); // save the value half
        asm.set_const(1, zero.clone());
        {
            let not_blank = asm.fresh_label();
            asm.branch(BranchMode::Eq, blank_arm, not_blank);
            asm.bind(not_blank);
            asm.copy(1, S2);
            asm.set_const(S2, zero.clone());
            asm.goto(value_arm);
        }

        let dispatch_nodes = (asm.len() - block_start) as u64;

        // blank arm: restore, then delta(q, blank)
        {
            let arm_start = asm.len();
            asm.bind(blank_arm);
            asm.copy(1, S2);
            asm.set_const(S2, zero.clone());
            let key = (q.clone(), DeltaKey::Sym(ktm.blank.clone()));
            emit_action(&mut asm, ktm, &ctx, &entries, phase3, key, false);
            max_arm_nodes =
                max_arm_nodes.max((asm.len() - arm_start) as u64 + dispatch_nodes);
        }

        // value arm: evaluate the predicate, dispatch on its truth
        {
            let arm_start = asm.len();
            asm.bind(value_arm);
            match ktm.predicate.get(q) {
                None => {
                    // a state without a predicate halts on value cells
                    asm.goto(phase3);
                }
                Some((op, reg)) => {
                    let mode = match op {
                        BranchOp::Eq => BranchMode::Eq,
                        BranchOp::Leq => BranchMode::Leq,
                    };
                    let true_arm = asm.fresh_label();
                    let false_arm = asm.fresh_label();
                    // compare cell value (already at 1) with the register:
                    // stash the marker, put the register at 2
                    asm.copy(S2, 2);
                    asm.copy(2, ctx.reg_coord(reg));
                    asm.branch(mode, true_arm, false_arm);
                    for (label, truth) in [(true_arm, true), (false_arm, false)] {
                        asm.bind(label);
                        asm.copy(2, S2);
                        asm.set_const(S2, zero.clone());
                        let key = (q.clone(), DeltaKey::Truth(truth));
                        emit_action(&mut asm, ktm, &ctx, &entries, phase3, key, true);
                    }
                }
            }
            max_arm_nodes =
                max_arm_nodes.max((asm.len() - arm_start) as u64 + dispatch_nodes);
        }
    }

    // phase 3: zero the dot zone, rebuild the output header
    asm.bind(phase3);
    let phase3_start = asm.len();
    for c in (-z + 1)..=0 {
        asm.set_const(c, zero.clone());
    }
    let zone_nodes = (asm.len() - phase3_start) as u64;
    let rev_start = asm.len();
    emit_reverse(&mut asm, exit);
    let rev_nodes = (asm.len() - rev_start) as u64;

    asm.bind(exit);
    let program = asm.finish()?;

    // every conversion node runs at most (len+1)^2 times over nested
    // pairing loops; each simulated step runs one arm path
    let constant = 4 * init_nodes + 4 * rev_nodes + max_arm_nodes + zone_nodes + 4;
    let _ = one;
    Ok(CompiledKtm {
        program,
        constant,
        zone: z as usize,
    })
}

/// Emits the handler for one transition lookup: apply the action (write,
/// register assignment, head move) and jump to the next state, or fall
/// through to phase 3 when the machine halts.
fn emit_action(
    asm: &mut Asm,
    ktm: &KtmProgram,
    ctx: &Ctx,
    entries: &HashMap<String, Label>,
    phase3: Label,
    key: (String, DeltaKey),
    is_value_cell: bool,
) {
    let spec = asm.spec().clone();
    let zero = spec.zero();
    let one = spec.one();
    let action = match ktm.delta.get(&key) {
        None => {
            asm.goto(phase3);
            return;
        }
        Some(a) => a.clone(),
    };
    // ill-typed on an alphabet cell: halt
    if !is_value_cell
        && (matches!(action.write, WriteOp::Add(_) | WriteOp::Mul(_))
            || !action.set_registers.is_empty())
    {
        asm.goto(phase3);
        return;
    }

    // stash the original cell value when register assignment needs it
    let needs_stash = !action.set_registers.is_empty();
    if needs_stash {
        asm.copy(S2, 1);
    }

    match &action.write {
        WriteOp::Id => {}
        WriteOp::Sym(_) => {
            // the only symbol is the blank
            asm.set_const(1, zero.clone());
            asm.set_const(2, zero.clone());
        }
        WriteOp::Value(v) => {
            asm.set_const(1, v.clone());
            asm.set_const(2, one.clone());
        }
        WriteOp::Add(r) => asm.add(1, 1, ctx.reg_coord(r)),
        WriteOp::Mul(r) => asm.mul(1, 1, ctx.reg_coord(r)),
    }

    for r in &action.set_registers {
        asm.copy(ctx.reg_coord(r), S2);
    }
    if needs_stash {
        asm.set_const(S2, zero.clone());
    }

    let z = ctx.z;
    match action.shift {
        Move::Stay => {}
        Move::Left => {
            // head steps right: slide left one cell, move the old head
            // cell across the zone, pull the bank back into place
            asm.shift_many(ShiftDir::Left, 2);
            // old head cell now occupies the scratch slots (-1, 0)
            asm.copy(-z - 1, -1); // value to the left train's new end
            asm.copy(-z, 0); // marker
            asm.set_const(-1, zero.clone());
            asm.set_const(0, zero.clone());
            // registers slid two to the left; restore in ascending order
            for j in 1..=(ktm.registers.len() as i64) {
                asm.copy(-1 - j, -3 - j);
                asm.set_const(-3 - j, zero.clone());
            }
        }
        Move::Right => {
            // head steps left: slide right one cell, fetch the left
            // train's last cell as the new head, push the bank back
            asm.shift_many(ShiftDir::Right, 2);
            // restore registers first (deepest first), they slid right
            for j in (1..=(ktm.registers.len() as i64)).rev() {
                asm.copy(-1 - j, 1 - j);
                asm.set_const(1 - j, zero.clone());
            }
            // the old left-train end slid to (-z+1, -z+2); it becomes the
            // new head cell
            asm.copy(1, -z + 1);
            asm.copy(2, -z + 2);
            asm.set_const(-z + 1, zero.clone());
            asm.set_const(-z + 2, zero.clone());
        }
    }

    asm.goto(entries[&action.next]);
}
