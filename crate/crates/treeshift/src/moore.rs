//! Moore colorings: finite deterministic machines that assign a letter to
//! every vertex of the tree, giving a finite description of a single
//! configuration. The letter at a vertex is the output of the machine state
//! reached from the start state by following the vertex's directions.

use std::collections::BTreeMap;

use crate::alphabet::{Arity, Letter};
use crate::error::Error;
use crate::pattern::Pattern;
use crate::tree::{FullTree, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreColoring {
    arity: Arity,
    states: Vec<String>,
    start: usize,
    /// `step[state][direction]`
    step: Vec<Vec<usize>>,
    output: Vec<Letter>,
}

impl MooreColoring {
    pub fn new(
        arity: Arity,
        states: Vec<String>,
        start: usize,
        step: Vec<Vec<usize>>,
        output: Vec<Letter>,
    ) -> Result<Self, Error> {
        if states.is_empty() {
            return Err(Error::invalid("moore coloring", "needs at least one state"));
        }
        for (i, s) in states.iter().enumerate() {
            if s.is_empty() || s.chars().any(|c| c.is_whitespace() || c == '#') {
                return Err(Error::invalid(
                    "moore coloring",
                    format!("state name {s:?} is empty or contains reserved characters"),
                ));
            }
            if states[..i].contains(s) {
                return Err(Error::invalid(
                    "moore coloring",
                    format!("duplicate state {s:?}"),
                ));
            }
        }
        if start >= states.len() {
            return Err(Error::invalid("moore coloring", "start state out of range"));
        }
        if step.len() != states.len() || output.len() != states.len() {
            return Err(Error::invalid(
                "moore coloring",
                "step and output must be total on the states",
            ));
        }
        for row in &step {
            if row.len() != arity.get() {
                return Err(Error::invalid(
                    "moore coloring",
                    "step must be total on the directions",
                ));
            }
            if row.iter().any(|&s| s >= states.len()) {
                return Err(Error::invalid("moore coloring", "step target out of range"));
            }
        }
        Ok(MooreColoring {
            arity,
            states,
            start,
            step,
            output,
        })
    }

    /// A machine outputting the same letter everywhere.
    pub fn constant(arity: Arity, letter: Letter) -> Self {
        MooreColoring {
            arity,
            states: vec!["q".to_string()],
            start: 0,
            step: vec![vec![0; arity.get()]],
            output: vec![letter],
        }
    }

    pub fn arity(&self) -> Arity {
        self.arity
    }

    pub fn state_names(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn step(&self, state: usize, direction: u8) -> usize {
        self.step[state][direction as usize]
    }

    pub fn output(&self, state: usize) -> Letter {
        self.output[state]
    }

    pub fn max_letter(&self) -> Letter {
        self.output.iter().copied().max().unwrap()
    }

    /// The same machine with the outputs replaced state by state.
    pub fn with_outputs(&self, output: Vec<Letter>) -> Result<MooreColoring, Error> {
        if output.len() != self.states.len() {
            return Err(Error::invalid(
                "moore coloring",
                "output must be total on the states",
            ));
        }
        Ok(MooreColoring {
            output,
            ..self.clone()
        })
    }

    /// The machine state reached from `from` by following `w`.
    pub fn run_from(&self, from: usize, w: &Word) -> usize {
        w.directions()
            .iter()
            .fold(from, |q, &d| self.step[q][d as usize])
    }

    pub fn run(&self, w: &Word) -> usize {
        self.run_from(self.start, w)
    }

    /// The truncation of the described configuration to a finite full tree,
    /// starting at the machine state `from`.
    pub fn expand_from(&self, from: usize, tree: &FullTree) -> Result<Pattern, Error> {
        if tree.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity.get(),
                right: tree.arity().get(),
            });
        }
        let mut labels = BTreeMap::new();
        for w in tree.vertices() {
            labels.insert(w.clone(), self.output[self.run_from(from, w)]);
        }
        Ok(Pattern::from_parts(self.arity, labels))
    }

    pub fn expand(&self, tree: &FullTree) -> Result<Pattern, Error> {
        self.expand_from(self.start, tree)
    }

    pub fn expand_delta(&self, n: usize) -> Result<Pattern, Error> {
        self.expand(&FullTree::delta(self.arity, n)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn k2() -> Arity {
        Arity::new(2).unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    /// Output flips at each level: root 0, depth one 1, depth two 0, ...
    pub(crate) fn depth_parity() -> MooreColoring {
        MooreColoring::new(
            k2(),
            vec!["even".into(), "odd".into()],
            0,
            vec![vec![1, 1], vec![0, 0]],
            vec![Letter(0), Letter(1)],
        )
        .unwrap()
    }

    /// Label of a vertex is its last direction; the root is 0.
    pub(crate) fn direction_coloring() -> MooreColoring {
        MooreColoring::new(
            k2(),
            vec!["left".into(), "right".into()],
            0,
            vec![vec![0, 1], vec![0, 1]],
            vec![Letter(0), Letter(1)],
        )
        .unwrap()
    }

    #[test]
    fn constant_expansion() {
        let m = MooreColoring::constant(k2(), Letter(0));
        assert_eq!(m.expand_delta(2).unwrap().to_term(&ab()), "0(0,0)");
    }

    #[test]
    fn depth_parity_expansion() {
        assert_eq!(depth_parity().expand_delta(2).unwrap().to_term(&ab()), "0(1,1)");
        assert_eq!(
            depth_parity().expand_delta(3).unwrap().to_term(&ab()),
            "0(1(0,0),1(0,0))"
        );
    }

    #[test]
    fn direction_expansion() {
        assert_eq!(
            direction_coloring().expand_delta(2).unwrap().to_term(&ab()),
            "0(0,1)"
        );
    }

    #[test]
    fn expansion_restricts_consistently() {
        for m in [depth_parity(), direction_coloring()] {
            let deep = m.expand_delta(4).unwrap();
            for d in 1..=4 {
                assert_eq!(deep.restrict_delta(d).unwrap(), m.expand_delta(d).unwrap());
            }
        }
    }
}
