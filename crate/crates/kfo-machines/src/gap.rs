//! Gap-normal-form conversion programs.
//!
//! The forward program turns the starting state
//! `(..., 0, 1,...,1, 0 . x1,...,xn, 0, ...)` into the interleaved form
//! `(..., 0 . x1, 1, x2, 1, ..., xn, 1, 0, ...)`; the reverse program
//! inverts it. Both run in O(n^2) steps. Assignments from the flowcharts
//! are expanded into zero-then-accumulate copies; branch tests never touch
//! the input values themselves, so values 0 and 1 are safe.
//!
//! An empty input would make the pairing loops diverge (an all-zero window
//! is indistinguishable from the header-done condition), so both programs
//! start with a guard that exits immediately when the input region is
//! empty, keeping them identities on the all-zero state.

use crate::asm::{Asm, Label};
use crate::bss::{BranchMode, BssProgram, ShiftDir};
use kfo_semiring::SemiringSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapDirection {
    Forward,
    Reverse,
}

/// Builds the conversion program for the given direction.
pub fn gap_init(spec: &SemiringSpec, direction: GapDirection) -> BssProgram {
    let mut asm = Asm::new(spec.clone());
    let exit = asm.fresh_label();
    match direction {
        GapDirection::Forward => emit_forward(&mut asm, exit),
        GapDirection::Reverse => emit_reverse(&mut asm, exit),
    }
    asm.bind(exit);
    asm.finish().expect("gap program assembles")
}

/// Emits the forward conversion; control reaches `exit` when done.
pub(crate) fn emit_forward(asm: &mut Asm, exit: Label) {
    let one = asm.spec().one();
    let zero = asm.spec().zero();

    // empty-input guard: after two right shifts, coordinate 1 holds the
    // first unary marker and coordinate 2 a guaranteed zero
    {
        let run = asm.fresh_label();
        let empty = asm.fresh_label();
        asm.shift_many(ShiftDir::Right, 2);
        asm.branch(BranchMode::Eq, empty, run);
        asm.bind(empty);
        asm.shift_many(ShiftDir::Left, 2);
        asm.goto(exit);
        asm.bind(run);
        asm.shift_many(ShiftDir::Left, 2);
    }

    let l4 = asm.fresh_label();
    let l7 = asm.fresh_label();
    let l10 = asm.fresh_label();
    let l13 = asm.fresh_label();
    let l14 = asm.fresh_label();
    let l17 = asm.fresh_label();
    let l21 = asm.fresh_label();

    asm.shift_many(ShiftDir::Right, 3);

    asm.bind(l4);
    asm.branch_no(BranchMode::Eq, l14);
    // l5: stash the next value, pair the previous one
    asm.copy(2, 4);
    asm.set_const(3, one.clone());
    asm.set_const(4, zero.clone());
    asm.shift(ShiftDir::Right);
    asm.bind(l7);
    asm.branch_no(BranchMode::Eq, l10);
    // l8: walk the header ones rightwards
    asm.copy(2, 3);
    asm.set_const(3, one.clone());
    asm.shift(ShiftDir::Right);
    asm.goto(l7);
    asm.bind(l10);
    asm.copy(1, 3);
    asm.set_const(3, zero.clone());
    asm.shift_many(ShiftDir::Left, 3);
    asm.bind(l13);
    {
        // yes: one more left shift, test again; no: step right, back to l4
        let no = asm.fresh_label();
        let yes = asm.fresh_label();
        asm.branch(BranchMode::Eq, yes, no);
        asm.bind(yes);
        asm.shift(ShiftDir::Left);
        asm.goto(l13);
        asm.bind(no);
        asm.shift(ShiftDir::Right);
        asm.goto(l4);
    }

    // l14: the last pair
    asm.bind(l14);
    asm.copy(1, 4);
    asm.set_const(3, one.clone());
    asm.set_const(4, zero.clone());
    asm.shift(ShiftDir::Left);
    asm.bind(l17);
    asm.branch_no(BranchMode::Eq, l21);
    // l18/l19/l20
    asm.shift(ShiftDir::Right);
    asm.copy(2, 1);
    asm.set_const(1, one.clone());
    asm.shift(ShiftDir::Right);
    asm.goto(l17);
    asm.bind(l21);
    asm.set_const(2, zero.clone());
    asm.shift_many(ShiftDir::Left, 2);
    asm.goto(exit);
}

/// Emits the reverse conversion; control reaches `exit` when done.
pub(crate) fn emit_reverse(asm: &mut Asm, exit: Label) {
    let one = asm.spec().one();
    let zero = asm.spec().zero();

    // empty-input guard: the pair marker lives at coordinate 2; coordinate
    // 0 is a guaranteed zero, usable as a stash
    {
        let empty = asm.fresh_label();
        let run = asm.fresh_label();
        asm.copy(0, 1); // save x1
        asm.copy(1, 2); // x1 := marker
        asm.set_const(2, zero.clone());
        asm.branch(BranchMode::Eq, empty, run);
        asm.bind(empty);
        asm.copy(1, 0);
        asm.set_const(0, zero.clone());
        asm.goto(exit);
        asm.bind(run);
        asm.copy(1, 0);
        asm.set_const(2, one.clone());
        asm.set_const(0, zero.clone());
    }

    let l1 = asm.fresh_label();
    let l9 = asm.fresh_label();
    let l16 = asm.fresh_label();
    let l21 = asm.fresh_label();
    let l23 = asm.fresh_label();

    asm.bind(l1);
    asm.copy(0, 1);
    asm.set_const(1, one.clone());
    {
        // l2: yes -> two left shifts and pair again; no -> three right
        let no = asm.fresh_label();
        let yes = asm.fresh_label();
        asm.branch(BranchMode::Eq, yes, no);
        asm.bind(yes);
        asm.shift_many(ShiftDir::Left, 2);
        asm.goto(l1);
        asm.bind(no);
        asm.shift_many(ShiftDir::Right, 3);
    }
    // l8
    asm.copy(4, 1);
    asm.set_const(1, zero.clone());
    asm.bind(l9);
    {
        let no = asm.fresh_label();
        let yes = asm.fresh_label();
        asm.branch(BranchMode::Eq, yes, no);
        asm.bind(yes);
        asm.shift(ShiftDir::Right);
        asm.goto(l9);
        asm.bind(no);
        asm.shift(ShiftDir::Right);
    }
    // l12
    {
        let no = asm.fresh_label();
        asm.branch(BranchMode::Eq, l21, no);
        asm.bind(no);
    }
    // l13
    asm.copy(2, 0);
    asm.set_const(0, zero.clone());
    asm.shift(ShiftDir::Left);
    {
        let l15 = asm.here();
        asm.shift(ShiftDir::Left);
        asm.bind(l16);
        let l18 = asm.fresh_label();
        asm.branch_no(BranchMode::Eq, l18);
        // l17
        asm.copy(1, 0);
        asm.set_const(0, one.clone());
        asm.goto(l15);
        asm.bind(l18);
        asm.copy(2, 0);
        asm.set_const(1, zero.clone());
        asm.set_const(0, one.clone());
        asm.shift_many(ShiftDir::Right, 2);
        asm.goto(l9);
    }
    asm.bind(l21);
    asm.shift_many(ShiftDir::Left, 2);
    asm.bind(l23);
    {
        let no = asm.fresh_label();
        let yes = asm.fresh_label();
        asm.branch(BranchMode::Eq, yes, no);
        asm.bind(yes);
        asm.shift(ShiftDir::Left);
        asm.goto(l23);
        asm.bind(no);
        asm.shift_many(ShiftDir::Left, 2);
        asm.goto(exit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bss::{initial_state, run_from_state, BssState};
    use kfo_semiring::Element;

    fn gap_state(spec: &SemiringSpec, values: &[Element]) -> BssState {
        let mut state = BssState::empty(spec);
        for (i, v) in values.iter().enumerate() {
            state.set(2 * i as i64 + 1, v.clone());
            state.set(2 * i as i64 + 2, spec.one());
        }
        state
    }

    fn window(state: &BssState, lo: i64, hi: i64) -> Vec<Element> {
        (lo..=hi).map(|i| state.peek(i)).collect()
    }

    #[test]
    fn forward_interleaves_small_inputs() {
        let spec = SemiringSpec::nat();
        let program = gap_init(&spec, GapDirection::Forward);
        for values in [
            vec![],
            vec![Element::nat(4)],
            vec![Element::nat(4), Element::nat(5)],
            vec![Element::nat(4), Element::nat(5), Element::nat(6)],
            vec![Element::nat(0), Element::nat(1), Element::nat(0), Element::nat(1)],
            vec![Element::nat(1), Element::nat(1), Element::nat(1), Element::nat(1), Element::nat(1)],
        ] {
            let n = values.len();
            let start = initial_state(&spec, &values);
            let (state, _) = run_from_state(&program, start, 1_000_000, None).unwrap();
            let expected = gap_state(&spec, &values);
            let lo = -(2 * n as i64 + 4);
            let hi = 2 * n as i64 + 4;
            assert_eq!(
                window(&state, lo, hi),
                window(&expected, lo, hi),
                "n = {n}"
            );
        }
    }

    #[test]
    fn reverse_restores_small_inputs() {
        let spec = SemiringSpec::nat();
        let program = gap_init(&spec, GapDirection::Reverse);
        for values in [
            vec![],
            vec![Element::nat(4)],
            vec![Element::nat(4), Element::nat(5)],
            vec![Element::nat(4), Element::nat(5), Element::nat(6)],
            vec![Element::nat(0), Element::nat(1), Element::nat(0)],
        ] {
            let n = values.len();
            let start = gap_state(&spec, &values);
            let (state, _) = run_from_state(&program, start, 1_000_000, None).unwrap();
            let expected = initial_state(&spec, &values);
            let lo = -(2 * n as i64 + 4);
            let hi = 2 * n as i64 + 4;
            assert_eq!(
                window(&state, lo, hi),
                window(&expected, lo, hi),
                "n = {n}"
            );
        }
    }
}
