//! Classical finite structures and a naive first-order model checker.
//!
//! This evaluator works directly with truth values and never touches the
//! semiring machinery, so it can serve as an independent oracle for the
//! Boolean correspondence of the semiring evaluator.

use std::collections::{HashMap, HashSet};

use crate::ast::{Formula, RelSymbol};
use crate::error::LogicError;
use crate::Result;

/// A finite relational structure over named universe elements.
#[derive(Debug, Clone)]
pub struct Structure {
    pub universe: Vec<String>,
    pub tau: Vec<RelSymbol>,
    pub relations: HashMap<String, HashSet<Vec<usize>>>,
}

impl Structure {
    pub fn new(
        universe: Vec<String>,
        tau: Vec<RelSymbol>,
        relations: HashMap<String, HashSet<Vec<usize>>>,
    ) -> Result<Structure> {
        let s = Structure {
            universe,
            tau,
            relations,
        };
        s.check()?;
        Ok(s)
    }

    pub(crate) fn check(&self) -> Result<()> {
        for sym in &self.tau {
            if let Some(tuples) = self.relations.get(&sym.name) {
                for t in tuples {
                    if t.len() != sym.arity {
                        return Err(LogicError::ArityMismatch {
                            name: sym.name.clone(),
                            expected: sym.arity,
                            got: t.len(),
                        });
                    }
                    if t.iter().any(|&i| i >= self.universe.len()) {
                        return Err(LogicError::UnknownElement(format!("{t:?}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn holds_fact(&self, rel: &str, args: &[usize]) -> bool {
        self.relations
            .get(rel)
            .map_or(false, |tuples| tuples.contains(args))
    }

    /// Classical satisfaction for comparison-free formulas in negation
    /// normal form. `assignment` maps variables to universe indices.
    pub fn holds(&self, formula: &Formula, assignment: &HashMap<String, usize>) -> Result<bool> {
        let lookup = |env: &HashMap<String, usize>, v: &str| -> Result<usize> {
            env.get(v)
                .copied()
                .ok_or_else(|| LogicError::UnboundVariable(v.to_string()))
        };
        match formula {
            Formula::VarEq(x, y) => Ok(lookup(assignment, x)? == lookup(assignment, y)?),
            Formula::VarNeq(x, y) => Ok(lookup(assignment, x)? != lookup(assignment, y)?),
            Formula::Atom(rel, vars) => {
                let args: Vec<usize> = vars
                    .iter()
                    .map(|v| lookup(assignment, v))
                    .collect::<Result<_>>()?;
                Ok(self.holds_fact(rel, &args))
            }
            Formula::NegAtom(rel, vars) => {
                let args: Vec<usize> = vars
                    .iter()
                    .map(|v| lookup(assignment, v))
                    .collect::<Result<_>>()?;
                Ok(!self.holds_fact(rel, &args))
            }
            Formula::And(a, b) => Ok(self.holds(a, assignment)? && self.holds(b, assignment)?),
            Formula::Or(a, b) => Ok(self.holds(a, assignment)? || self.holds(b, assignment)?),
            Formula::Exists(x, body) => {
                for i in 0..self.universe.len() {
                    let mut env = assignment.clone();
                    env.insert(x.clone(), i);
                    if self.holds(body, &env)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Forall(x, body) => {
                for i in 0..self.universe.len() {
                    let mut env = assignment.clone();
                    env.insert(x.clone(), i);
                    if !self.holds(body, &env)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Compare(..) => Err(LogicError::NotComparisonFree(formula.to_string())),
            Formula::BuiltinAtom(..) | Formula::NegBuiltinAtom(..) => {
                Err(LogicError::UnknownSymbol(formula.to_string()))
            }
        }
    }
}
