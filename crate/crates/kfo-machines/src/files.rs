//! Text formats for machine programs.
//!
//! Register machine:
//!
//! ```text
//! semiring: nat
//! node 1 input next=2
//! node 2 add target=1 lhs=1 rhs=2 next=3
//! node 3 const target=-2 value=0 next=4
//! node 4 branch eq yes=5 no=2
//! node 5 shift left next=6
//! node 6 output
//! ```
//!
//! K-Turing machine:
//!
//! ```text
//! semiring: nat
//! states: q0 q1
//! initial: q0
//! registers: r
//! alphabet: b m
//! blank: b
//! inputs: K m
//! predicate: q0 = r
//! delta: q0 T -> q1 write=mul:r set=r shift=left
//! delta: q0 b -> q1 write=id set= shift=stay
//! ```
//!
//! Delta read keys are a symbol name or `T`/`F` for the comparison truth
//! on value cells; writes are `id`, `sym:NAME`, `val:ELEMENT`, `add:REG`
//! or `mul:REG`.

use std::collections::HashMap;

use kfo_semiring::SemiringSpec;

use crate::bss::{BranchMode, BssNode, BssProgram, ShiftDir};
use crate::error::MachineError;
use crate::ktm::{BranchOp, DeltaAction, DeltaKey, KtmProgram, Move, WriteOp};
use crate::Result;

fn err(line: usize, msg: impl Into<String>) -> MachineError {
    MachineError::FileFormat {
        line,
        msg: msg.into(),
    }
}

fn fields(text: &str) -> HashMap<String, String> {
    text.split_whitespace()
        .filter_map(|part| {
            part.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
        })
        .collect()
}

fn get<'a>(map: &'a HashMap<String, String>, key: &str, line: usize) -> Result<&'a str> {
    map.get(key)
        .map(|s| s.as_str())
        .ok_or_else(|| err(line, format!("missing `{key}=`")))
}

pub fn parse_bss_program(text: &str) -> Result<BssProgram> {
    let mut spec: Option<SemiringSpec> = None;
    let mut nodes: Vec<(usize, BssNode)> = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix("semiring:") {
            let name = name.trim();
            spec = Some(
                SemiringSpec::from_name(name)
                    .ok_or_else(|| err(line_no, format!("unknown semiring `{name}`")))?,
            );
            continue;
        }
        let spec = spec
            .as_ref()
            .ok_or_else(|| err(line_no, "node before `semiring:` header"))?;
        let rest = line
            .strip_prefix("node")
            .ok_or_else(|| err(line_no, format!("expected `node ...`, got `{line}`")))?;
        let mut words = rest.split_whitespace();
        let label: usize = words
            .next()
            .ok_or_else(|| err(line_no, "missing node label"))?
            .parse()
            .map_err(|_| err(line_no, "bad node label"))?;
        let kind = words.next().ok_or_else(|| err(line_no, "missing node kind"))?;
        let tail: Vec<&str> = words.collect();
        let map = fields(&tail.join(" "));
        let parse_coord = |key: &str| -> Result<i64> {
            get(&map, key, line_no)?
                .parse()
                .map_err(|_| err(line_no, format!("bad `{key}=`")))
        };
        let parse_target = |key: &str| -> Result<usize> {
            get(&map, key, line_no)?
                .parse()
                .map_err(|_| err(line_no, format!("bad `{key}=`")))
        };
        let node = match kind {
            "input" => BssNode::Input {
                next: parse_target("next")?,
            },
            "output" => BssNode::Output,
            "const" => BssNode::Const {
                target: parse_coord("target")?,
                value: spec.parse_element(get(&map, "value", line_no)?)?,
                next: parse_target("next")?,
            },
            "add" => BssNode::Add {
                target: parse_coord("target")?,
                lhs: parse_coord("lhs")?,
                rhs: parse_coord("rhs")?,
                next: parse_target("next")?,
            },
            "mul" => BssNode::Mul {
                target: parse_coord("target")?,
                lhs: parse_coord("lhs")?,
                rhs: parse_coord("rhs")?,
                next: parse_target("next")?,
            },
            "branch" => {
                let mode = match tail.first() {
                    Some(&"eq") => BranchMode::Eq,
                    Some(&"leq") => BranchMode::Leq,
                    other => {
                        return Err(err(
                            line_no,
                            format!("branch mode must be `eq` or `leq`, got {other:?}"),
                        ))
                    }
                };
                BssNode::Branch {
                    mode,
                    yes: parse_target("yes")?,
                    no: parse_target("no")?,
                }
            }
            "shift" => {
                let dir = match tail.first() {
                    Some(&"left") => ShiftDir::Left,
                    Some(&"right") => ShiftDir::Right,
                    other => {
                        return Err(err(
                            line_no,
                            format!("shift direction must be `left` or `right`, got {other:?}"),
                        ))
                    }
                };
                BssNode::Shift {
                    dir,
                    next: parse_target("next")?,
                }
            }
            other => return Err(err(line_no, format!("unknown node kind `{other}`"))),
        };
        nodes.push((label, node));
    }
    let spec = spec.ok_or_else(|| err(0, "missing `semiring:` header"))?;
    nodes.sort_by_key(|(label, _)| *label);
    for (expect, (label, _)) in nodes.iter().enumerate() {
        if *label != expect + 1 {
            return Err(MachineError::Malformed(format!(
                "node labels must be contiguous from 1; missing or duplicate label near {label}"
            )));
        }
    }
    let program = BssProgram {
        spec,
        nodes: nodes.into_iter().map(|(_, n)| n).collect(),
    };
    program.validate()?;
    Ok(program)
}

pub fn serialize_bss_program(program: &BssProgram) -> String {
    let mut out = format!("semiring: {}\n", program.spec.id);
    for (i, node) in program.nodes.iter().enumerate() {
        let label = i + 1;
        let line = match node {
            BssNode::Input { next } => format!("node {label} input next={next}"),
            BssNode::Output => format!("node {label} output"),
            BssNode::Const { target, value, next } => {
                format!("node {label} const target={target} value={value} next={next}")
            }
            BssNode::Add { target, lhs, rhs, next } => {
                format!("node {label} add target={target} lhs={lhs} rhs={rhs} next={next}")
            }
            BssNode::Mul { target, lhs, rhs, next } => {
                format!("node {label} mul target={target} lhs={lhs} rhs={rhs} next={next}")
            }
            BssNode::Branch { mode, yes, no } => {
                let mode = match mode {
                    BranchMode::Eq => "eq",
                    BranchMode::Leq => "leq",
                };
                format!("node {label} branch {mode} yes={yes} no={no}")
            }
            BssNode::Shift { dir, next } => {
                let dir = match dir {
                    ShiftDir::Left => "left",
                    ShiftDir::Right => "right",
                };
                format!("node {label} shift {dir} next={next}")
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

pub fn parse_ktm_program(text: &str) -> Result<KtmProgram> {
    let mut spec: Option<SemiringSpec> = None;
    let mut states = Vec::new();
    let mut initial = String::new();
    let mut registers = Vec::new();
    let mut alphabet = Vec::new();
    let mut blank = String::new();
    let mut input_symbols = Vec::new();
    let mut value_inputs = false;
    let mut predicate = HashMap::new();
    let mut delta = HashMap::new();

    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("semiring:") {
            let name = rest.trim();
            spec = Some(
                SemiringSpec::from_name(name)
                    .ok_or_else(|| err(line_no, format!("unknown semiring `{name}`")))?,
            );
        } else if let Some(rest) = line.strip_prefix("states:") {
            states = rest.split_whitespace().map(String::from).collect();
        } else if let Some(rest) = line.strip_prefix("initial:") {
            initial = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("registers:") {
            registers = rest.split_whitespace().map(String::from).collect();
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            alphabet = rest.split_whitespace().map(String::from).collect();
        } else if let Some(rest) = line.strip_prefix("blank:") {
            blank = rest.trim().to_string();
        } else if let Some(rest) = line.strip_prefix("inputs:") {
            for word in rest.split_whitespace() {
                if word == "K" {
                    value_inputs = true;
                } else {
                    input_symbols.push(word.to_string());
                }
            }
        } else if let Some(rest) = line.strip_prefix("predicate:") {
            let words: Vec<&str> = rest.split_whitespace().collect();
            match words.as_slice() {
                [state, op, reg] => {
                    let op = match *op {
                        "=" => BranchOp::Eq,
                        "<=" => BranchOp::Leq,
                        other => return Err(err(line_no, format!("bad predicate op `{other}`"))),
                    };
                    predicate.insert(state.to_string(), (op, reg.to_string()));
                }
                _ => return Err(err(line_no, "expected `predicate: STATE (=|<=) REGISTER`")),
            }
        } else if let Some(rest) = line.strip_prefix("delta:") {
            let spec = spec
                .as_ref()
                .ok_or_else(|| err(line_no, "delta before `semiring:` header"))?;
            let (lhs, rhs) = rest
                .split_once("->")
                .ok_or_else(|| err(line_no, "expected `->` in delta line"))?;
            let lhs_words: Vec<&str> = lhs.split_whitespace().collect();
            let (state, read) = match lhs_words.as_slice() {
                [state, read] => (state.to_string(), *read),
                _ => return Err(err(line_no, "expected `delta: STATE READ -> ...`")),
            };
            let key = match read {
                "T" => DeltaKey::Truth(true),
                "F" => DeltaKey::Truth(false),
                sym => DeltaKey::Sym(sym.to_string()),
            };
            let mut next = String::new();
            let mut write = WriteOp::Id;
            let mut set_registers = Vec::new();
            let mut shift = Move::Stay;
            let mut saw_next = false;
            for word in rhs.split_whitespace() {
                if let Some((k, v)) = word.split_once('=') {
                    match k {
                        "next" => {
                            next = v.to_string();
                            saw_next = true;
                        }
                        "write" => {
                            write = if v == "id" {
                                WriteOp::Id
                            } else if let Some(s) = v.strip_prefix("sym:") {
                                WriteOp::Sym(s.to_string())
                            } else if let Some(e) = v.strip_prefix("val:") {
                                WriteOp::Value(spec.parse_element(e)?)
                            } else if let Some(r) = v.strip_prefix("add:") {
                                WriteOp::Add(r.to_string())
                            } else if let Some(r) = v.strip_prefix("mul:") {
                                WriteOp::Mul(r.to_string())
                            } else {
                                return Err(err(line_no, format!("bad write `{v}`")));
                            };
                        }
                        "set" => {
                            set_registers = v
                                .split(',')
                                .filter(|s| !s.is_empty())
                                .map(String::from)
                                .collect();
                        }
                        "shift" => {
                            shift = match v {
                                "left" => Move::Left,
                                "right" => Move::Right,
                                "stay" => Move::Stay,
                                other => {
                                    return Err(err(line_no, format!("bad shift `{other}`")))
                                }
                            };
                        }
                        other => return Err(err(line_no, format!("unknown field `{other}=`"))),
                    }
                }
            }
            if !saw_next {
                return Err(err(line_no, "missing `next=`"));
            }
            delta.insert(
                (state, key),
                DeltaAction {
                    next,
                    write,
                    set_registers,
                    shift,
                },
            );
        } else {
            return Err(err(line_no, format!("unrecognized line `{line}`")));
        }
    }

    let program = KtmProgram {
        spec: spec.ok_or_else(|| err(0, "missing `semiring:` header"))?,
        states,
        initial,
        registers,
        alphabet,
        blank,
        input_symbols,
        value_inputs,
        predicate,
        delta,
    };
    program.validate()?;
    Ok(program)
}

pub fn serialize_ktm_program(program: &KtmProgram) -> String {
    let mut out = format!("semiring: {}\n", program.spec.id);
    out.push_str(&format!("states: {}\n", program.states.join(" ")));
    out.push_str(&format!("initial: {}\n", program.initial));
    out.push_str(&format!("registers: {}\n", program.registers.join(" ")));
    out.push_str(&format!("alphabet: {}\n", program.alphabet.join(" ")));
    out.push_str(&format!("blank: {}\n", program.blank));
    let mut inputs: Vec<String> = Vec::new();
    if program.value_inputs {
        inputs.push("K".to_string());
    }
    inputs.extend(program.input_symbols.iter().cloned());
    out.push_str(&format!("inputs: {}\n", inputs.join(" ")));
    let mut preds: Vec<(&String, &(BranchOp, String))> = program.predicate.iter().collect();
    preds.sort();
    for (state, (op, reg)) in preds {
        let op = match op {
            BranchOp::Eq => "=",
            BranchOp::Leq => "<=",
        };
        out.push_str(&format!("predicate: {state} {op} {reg}\n"));
    }
    let mut rules: Vec<(&(String, DeltaKey), &DeltaAction)> = program.delta.iter().collect();
    rules.sort_by_key(|((state, key), _)| {
        let key_text = match key {
            DeltaKey::Sym(s) => format!("0{s}"),
            DeltaKey::Truth(t) => format!("1{t}"),
        };
        (state.clone(), key_text)
    });
    for ((state, key), action) in rules {
        let read = match key {
            DeltaKey::Sym(s) => s.clone(),
            DeltaKey::Truth(true) => "T".to_string(),
            DeltaKey::Truth(false) => "F".to_string(),
        };
        let write = match &action.write {
            WriteOp::Id => "id".to_string(),
            WriteOp::Sym(s) => format!("sym:{s}"),
            WriteOp::Value(v) => format!("val:{v}"),
            WriteOp::Add(r) => format!("add:{r}"),
            WriteOp::Mul(r) => format!("mul:{r}"),
        };
        let shift = match action.shift {
            Move::Left => "left",
            Move::Stay => "stay",
            Move::Right => "right",
        };
        out.push_str(&format!(
            "delta: {state} {read} -> next={} write={write} set={} shift={shift}\n",
            action.next,
            action.set_registers.join(",")
        ));
    }
    out
}
