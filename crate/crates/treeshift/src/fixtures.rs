//! Shared fixtures for unit tests: the monochromatic-children shift and its
//! two-state presentation, the one-state full-shift automaton, and a few
//! Moore colorings.

use crate::alphabet::{Alphabet, Arity, Letter};
use crate::ca::CellularAutomaton;
use crate::error::Budget;
use crate::moore::MooreColoring;
use crate::pattern::Pattern;
use crate::rabin::{RabinAutomaton, StateId, TransitionBundle};
use crate::sft::SftDescription;

pub const ALPHA01: [&str; 2] = ["0", "1"];

pub fn k2() -> Arity {
    Arity::new(2).unwrap()
}

pub fn alpha01() -> Alphabet {
    Alphabet::new(ALPHA01).unwrap()
}

pub fn parse_pattern(term: &str) -> Pattern {
    Pattern::parse_term(term, &alpha01(), k2()).unwrap()
}

/// Two-state presentation of the monochromatic-children shift: state `s_a`
/// emits `a` and both children go to a common state.
pub fn mono_automaton() -> RabinAutomaton {
    let mut bundles = Vec::new();
    for a in 0..2 {
        for b in 0..2 {
            bundles.push(TransitionBundle::new(
                StateId(a),
                Letter(a),
                vec![StateId(b), StateId(b)],
            ));
        }
    }
    RabinAutomaton::new(k2(), alpha01(), vec!["s0".into(), "s1".into()], bundles).unwrap()
}

/// One-state automaton presenting the full shift over `{0,1}`.
pub fn u_automaton() -> RabinAutomaton {
    RabinAutomaton::full_shift(k2(), alpha01())
}

/// Output flips at each level: root 0, depth one 1, depth two 0, ...
pub fn depth_parity() -> MooreColoring {
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
pub fn direction_coloring() -> MooreColoring {
    MooreColoring::new(
        k2(),
        vec!["left".into(), "right".into()],
        0,
        vec![vec![0, 1], vec![0, 1]],
        vec![Letter(0), Letter(1)],
    )
    .unwrap()
}

/// The monochromatic-children shift of finite type: memory 2, forbidding
/// every block whose children differ.
pub fn mono_sft() -> SftDescription {
    let forbidden = ["0(0,1)", "0(1,0)", "1(0,1)", "1(1,0)"]
        .map(parse_pattern)
        .to_vec();
    SftDescription::new(alpha01(), k2(), 2, forbidden).unwrap()
}

/// Forbids every block rooted at 1: the children of a 1 cannot exist, so
/// only the constant-0 configuration survives even though 0(1,1) is
/// locally fine.
pub fn dead_end_sft() -> SftDescription {
    let forbidden = ["1(0,0)", "1(0,1)", "1(1,0)", "1(1,1)"]
        .map(parse_pattern)
        .to_vec();
    SftDescription::new(alpha01(), k2(), 2, forbidden).unwrap()
}

/// Memory-2 rule `a(b,c) ↦ b⊕c` over `{0,1}`.
pub fn xor_ca() -> CellularAutomaton {
    CellularAutomaton::from_fn(alpha01(), alpha01(), k2(), 2, &Budget::default(), |p| {
        let b = p.label(&crate::tree::Word::root().child(0)).unwrap();
        let c = p.label(&crate::tree::Word::root().child(1)).unwrap();
        Letter(b.0 ^ c.0)
    })
    .unwrap()
}
